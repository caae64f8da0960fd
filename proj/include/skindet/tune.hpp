#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skindet/classify.hpp"
#include "skindet/errors.hpp"
#include "skindet/manifest.hpp"
#include "skindet/metrics.hpp"

namespace skindet {

/// Evenly spaced candidate values lo, lo + step, ... up to hi (inclusive, with a 1e-9 slack).
struct ParamRange {
    double lo{};
    double hi{};
    double step{1.0};

    std::size_t count() const noexcept;
    double value(std::size_t k) const noexcept;
};

inline constexpr std::uint64_t kDefaultGridCap = 10'000'000;

/// Candidate threshold tuples for one model: either the Cartesian product of one range per
/// parameter, or an explicit list of tuples.
struct GridSpec {
    Model model{Model::hsv};
    std::vector<ParamRange> ranges;
    std::vector<std::vector<double>> tuples;
    std::uint64_t cap{kDefaultGridCap};

    /// Raw candidate count before invalid tuples are dropped (saturates at UINT64_MAX).
    std::uint64_t candidate_count() const noexcept;
};

struct GridError : ValidationError {
    using ValidationError::ValidationError;
};

/// Parses a grid file. Lines are `name,lo,hi,step` for every parameter of the model
/// (names from threshold_names) or `tuple,v1,...,vn` for explicit candidates; the two
/// forms cannot be mixed. Blank and '#' lines are ignored.
GridSpec parse_grid(std::string_view text, Model model);

struct Objective {
    enum class Kind { youden, weighted };
    Kind kind{Kind::youden};
    double weight{0.5};

    /// "youden", "weighted" or "weighted:<w>" with w in [0, 1].
    static Objective parse(std::string_view text);
    std::string name() const;
};

/// youden: (tp + tn)/100 - 1. weighted: w*tp + (1-w)*tn, in percent.
/// Empty when tp or tn is not applicable.
std::optional<double> objective_score(const RateSummary& r, const Objective& objective) noexcept;

struct TuneRow {
    ModelThresholds thresholds;
    RateSummary rates;
    std::optional<double> objective;
};

struct TuneReport {
    Model model{Model::hsv};
    Objective objective;
    Aggregation aggregation{Aggregation::micro};
    std::string dataset_fingerprint;
    std::uint64_t evaluated{0};
    std::uint64_t skipped{0};
    /// Best first; ties broken by ascending threshold values; undefined objectives last.
    std::vector<TuneRow> rows;
};

/// Runs detect_mask on each image, scores against its truth, and aggregates.
RateSummary evaluate_thresholds(const Dataset& ds, Model model, const ModelThresholds& t,
                                Aggregation mode = Aggregation::micro, unsigned workers = 1);

/// Per-image confusion counts in dataset order.
std::vector<ConfusionCounts> score_dataset(const Dataset& ds, Model model, const ModelThresholds& t,
                                           unsigned workers = 1);

/// Loads the manifest's images, then evaluates. DatasetError names the failing path.
RateSummary evaluate_thresholds(const DatasetManifest& m, Model model, const ModelThresholds& t,
                                Aggregation mode = Aggregation::micro, unsigned workers = 1);

/// Exhaustive search over the grid using only the train images of `ds`.
/// Returns the best `top_k` rows (0 keeps all). Throws GridError when the grid exceeds its
/// cap or has no valid candidate, and ValidationError when `ds` has no train images.
TuneReport grid_search(const Dataset& ds, const GridSpec& grid, const Objective& objective, std::size_t top_k,
                       Aggregation mode = Aggregation::micro, unsigned workers = 1);

/// Orders rows best first (the TuneReport order).
bool row_precedes(const TuneRow& a, const TuneRow& b);

/// CSV with a '#' metadata line, then Range,True Positive,True Negative,False Positive,
/// False Negative,Objective.
std::string to_csv(const TuneReport& report);

}  // namespace skindet
