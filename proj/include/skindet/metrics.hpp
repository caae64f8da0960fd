#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "skindet/image.hpp"

namespace skindet {

/// Pixel-level confusion counts of a predicted mask against ground truth.
struct ConfusionCounts {
    std::uint64_t tp{0};
    std::uint64_t tn{0};
    std::uint64_t fp{0};
    std::uint64_t fn{0};

    std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
    std::uint64_t positives() const noexcept { return tp + fn; }
    std::uint64_t negatives() const noexcept { return tn + fp; }

    ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept
    {
        tp += o.tp;
        tn += o.tn;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Percentage rates. A pair is empty (not applicable) when its class has no pixels:
/// tp/fn need ground-truth skin, tn/fp need ground-truth non-skin.
struct RateSummary {
    std::optional<double> tp_pct;
    std::optional<double> tn_pct;
    std::optional<double> fp_pct;
    std::optional<double> fn_pct;

    friend bool operator==(const RateSummary&, const RateSummary&) = default;
};

enum class Aggregation { micro, macro };

std::string_view aggregation_name(Aggregation a) noexcept;
Aggregation parse_aggregation(std::string_view name);

/// Throws ValidationError if the masks differ in size.
ConfusionCounts score_mask(const SkinMask& predicted, const SkinMask& truth);

RateSummary to_rates(const ConfusionCounts& c) noexcept;

/// micro pools the counts; macro averages per-image rates, skipping pairs that are not
/// applicable for an image. Throws ValidationError on an empty list.
RateSummary aggregate(std::span<const ConfusionCounts> counts, Aggregation mode = Aggregation::micro);

/// One decimal place, or "NA".
std::string format_rate(std::optional<double> pct);

}  // namespace skindet
