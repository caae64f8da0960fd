#include "skindet/metrics.hpp"

#include <fmt/format.h>

#include "skindet/errors.hpp"

namespace skindet {
namespace {

std::optional<double> percent(std::uint64_t part, std::uint64_t whole) noexcept
{
    if (whole == 0) {
        return std::nullopt;
    }
    return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

struct MeanAccumulator {
    double sum{0.0};
    std::size_t n{0};

    void add(const std::optional<double>& v) noexcept
    {
        if (v) {
            sum += *v;
            ++n;
        }
    }
    std::optional<double> mean() const noexcept
    {
        return n == 0 ? std::nullopt : std::optional<double>{sum / static_cast<double>(n)};
    }
};

}  // namespace

std::string_view aggregation_name(Aggregation a) noexcept
{
    return a == Aggregation::micro ? "micro" : "macro";
}

Aggregation parse_aggregation(std::string_view name)
{
    if (name == "micro") {
        return Aggregation::micro;
    }
    if (name == "macro") {
        return Aggregation::macro;
    }
    throw UsageError(fmt::format("unknown aggregation mode '{}' (expected micro or macro)", name));
}

ConfusionCounts score_mask(const SkinMask& predicted, const SkinMask& truth)
{
    if (!predicted.same_shape(truth)) {
        throw ValidationError(fmt::format("mask size mismatch: predicted {}x{}, truth {}x{}", predicted.width(),
                                          predicted.height(), truth.width(), truth.height()));
    }
    // Indexing by 2*truth + predicted keeps the loop branch-free.
    std::uint64_t tally[4] = {0, 0, 0, 0};
    const auto p = predicted.bits();
    const auto t = truth.bits();
    for (std::size_t i = 0; i < p.size(); ++i) {
        ++tally[(t[i] << 1) | p[i]];
    }
    return ConfusionCounts{.tp = tally[3], .tn = tally[0], .fp = tally[1], .fn = tally[2]};
}

RateSummary to_rates(const ConfusionCounts& c) noexcept
{
    return RateSummary{
        .tp_pct = percent(c.tp, c.positives()),
        .tn_pct = percent(c.tn, c.negatives()),
        .fp_pct = percent(c.fp, c.negatives()),
        .fn_pct = percent(c.fn, c.positives()),
    };
}

RateSummary aggregate(std::span<const ConfusionCounts> counts, Aggregation mode)
{
    if (counts.empty()) {
        throw ValidationError("cannot aggregate an empty list of counts");
    }
    if (mode == Aggregation::micro) {
        ConfusionCounts pooled;
        for (const auto& c : counts) {
            pooled += c;
        }
        return to_rates(pooled);
    }

    MeanAccumulator tp, tn, fp, fn;
    for (const auto& c : counts) {
        const RateSummary r = to_rates(c);
        tp.add(r.tp_pct);
        tn.add(r.tn_pct);
        fp.add(r.fp_pct);
        fn.add(r.fn_pct);
    }
    return RateSummary{.tp_pct = tp.mean(), .tn_pct = tn.mean(), .fp_pct = fp.mean(), .fn_pct = fn.mean()};
}

std::string format_rate(std::optional<double> pct)
{
    return pct ? fmt::format("{:.1f}", *pct) : std::string{"NA"};
}

}  // namespace skindet
