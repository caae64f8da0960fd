#include "skindet/tune.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "skindet/parallel.hpp"

namespace skindet {
namespace {

std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> to_double(std::string_view s) noexcept
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

// Candidate k of the grid in mixed-radix order (last parameter fastest).
std::vector<double> candidate_values(const GridSpec& g, std::uint64_t k)
{
    if (!g.tuples.empty()) {
        return g.tuples[k];
    }
    std::vector<double> v(g.ranges.size());
    for (std::size_t p = g.ranges.size(); p-- > 0;) {
        const std::size_t n = g.ranges[p].count();
        v[p] = g.ranges[p].value(k % n);
        k /= n;
    }
    return v;
}

void keep_best(std::vector<TuneRow>& rows, std::size_t top_k)
{
    if (top_k == 0 || rows.size() <= top_k) {
        std::sort(rows.begin(), rows.end(), row_precedes);
        return;
    }
    std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(top_k), rows.end(), row_precedes);
    rows.resize(top_k);
}

}  // namespace

std::size_t ParamRange::count() const noexcept
{
    if (!(step > 0.0) || hi < lo) {
        return 0;
    }
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

double ParamRange::value(std::size_t k) const noexcept
{
    // Snap to 1e-9 so decimal steps like 0.1 give clean values.
    const double v = lo + static_cast<double>(k) * step;
    return std::round(v * 1e9) / 1e9;
}

std::uint64_t GridSpec::candidate_count() const noexcept
{
    if (!tuples.empty()) {
        return tuples.size();
    }
    if (ranges.empty()) {
        return 0;
    }
    std::uint64_t n = 1;
    for (const auto& r : ranges) {
        n = saturating_mul(n, r.count());
    }
    return n;
}

GridSpec parse_grid(std::string_view text, Model model)
{
    GridSpec g;
    g.model = model;
    const auto names = threshold_names(model);
    std::vector<std::optional<ParamRange>> ranges(names.size());

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line = trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }

        std::vector<std::string_view> fields;
        for (std::size_t start = 0;;) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }

        std::vector<double> numbers;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            const auto v = to_double(fields[f]);
            if (!v) {
                throw GridError(fmt::format("grid line {}: '{}' is not a number", line_no, fields[f]));
            }
            numbers.push_back(*v);
        }

        if (fields[0] == "tuple") {
            if (numbers.size() != names.size()) {
                throw GridError(fmt::format("grid line {}: {} tuple needs {} values, got {}", line_no,
                                            model_name(model), names.size(), numbers.size()));
            }
            g.tuples.push_back(std::move(numbers));
            continue;
        }

        const auto it = std::find(names.begin(), names.end(), fields[0]);
        if (it == names.end()) {
            throw GridError(fmt::format("grid line {}: unknown parameter '{}' for model {}", line_no, fields[0],
                                        model_name(model)));
        }
        if (numbers.size() != 3) {
            throw GridError(fmt::format("grid line {}: expected {},lo,hi,step", line_no, fields[0]));
        }
        const ParamRange r{numbers[0], numbers[1], numbers[2]};
        if (!(r.step > 0.0) || r.lo > r.hi) {
            throw GridError(fmt::format("grid line {}: {} needs lo <= hi and step > 0", line_no, fields[0]));
        }
        auto& slot = ranges[static_cast<std::size_t>(it - names.begin())];
        if (slot) {
            throw GridError(fmt::format("grid line {}: parameter '{}' given twice", line_no, fields[0]));
        }
        slot = r;
    }

    const bool any_range = std::any_of(ranges.begin(), ranges.end(), [](const auto& r) { return r.has_value(); });
    if (any_range && !g.tuples.empty()) {
        throw GridError("grid mixes parameter ranges and explicit tuples");
    }
    if (any_range) {
        for (std::size_t p = 0; p < names.size(); ++p) {
            if (!ranges[p]) {
                throw GridError(fmt::format("grid has no range for parameter '{}'", names[p]));
            }
            g.ranges.push_back(*ranges[p]);
        }
    }
    std::sort(g.tuples.begin(), g.tuples.end());
    g.tuples.erase(std::unique(g.tuples.begin(), g.tuples.end()), g.tuples.end());
    return g;
}

Objective Objective::parse(std::string_view text)
{
    if (text == "youden") {
        return {Kind::youden, 0.5};
    }
    if (text == "weighted") {
        return {Kind::weighted, 0.5};
    }
    constexpr std::string_view prefix = "weighted:";
    if (text.starts_with(prefix)) {
        const auto w = to_double(text.substr(prefix.size()));
        if (!w || *w < 0.0 || *w > 1.0) {
            throw UsageError(fmt::format("objective weight in '{}' must be a number in [0, 1]", text));
        }
        return {Kind::weighted, *w};
    }
    throw UsageError(fmt::format("unknown objective '{}' (expected youden or weighted:<w>)", text));
}

std::string Objective::name() const
{
    return kind == Kind::youden ? std::string{"youden"} : fmt::format("weighted:{}", weight);
}

std::optional<double> objective_score(const RateSummary& r, const Objective& objective) noexcept
{
    if (!r.tp_pct || !r.tn_pct) {
        return std::nullopt;
    }
    if (objective.kind == Objective::Kind::youden) {
        return (*r.tp_pct + *r.tn_pct) / 100.0 - 1.0;
    }
    return objective.weight * *r.tp_pct + (1.0 - objective.weight) * *r.tn_pct;
}

std::vector<ConfusionCounts> score_dataset(const Dataset& ds, Model model, const ModelThresholds& t,
                                           unsigned workers)
{
    std::vector<ConfusionCounts> counts(ds.images.size());
    parallel_for(ds.images.size(), resolve_workers(workers), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto& li = ds.images[k];
            counts[k] = score_mask(detect_mask(li.image, model, t, 1), li.truth);
        }
    });
    return counts;
}

RateSummary evaluate_thresholds(const Dataset& ds, Model model, const ModelThresholds& t, Aggregation mode,
                                unsigned workers)
{
    if (ds.images.empty()) {
        throw ValidationError("cannot evaluate thresholds on an empty dataset");
    }
    validate(t);
    const auto counts = score_dataset(ds, model, t, workers);
    return aggregate(counts, mode);
}

RateSummary evaluate_thresholds(const DatasetManifest& m, Model model, const ModelThresholds& t, Aggregation mode,
                                unsigned workers)
{
    if (m.entries.empty()) {
        throw ValidationError("cannot evaluate thresholds on an empty manifest");
    }
    return evaluate_thresholds(load_dataset(m, workers), model, t, mode, workers);
}

bool row_precedes(const TuneRow& a, const TuneRow& b)
{
    if (a.objective.has_value() != b.objective.has_value()) {
        return a.objective.has_value();
    }
    if (a.objective && *a.objective != *b.objective) {
        return *a.objective > *b.objective;
    }
    return threshold_values(a.thresholds) < threshold_values(b.thresholds);
}

TuneReport grid_search(const Dataset& ds, const GridSpec& grid, const Objective& objective, std::size_t top_k,
                       Aggregation mode, unsigned workers)
{
    const std::uint64_t total = grid.candidate_count();
    if (total > grid.cap) {
        throw GridError(fmt::format("grid has {} candidates, above the cap of {}", total, grid.cap));
    }
    if (total == 0) {
        throw GridError("grid is empty");
    }

    Dataset train;
    for (const auto& li : ds.images) {
        if (li.split == Split::train) {
            train.images.push_back(li);
        }
    }
    if (train.images.empty()) {
        throw ValidationError("grid search needs at least one train image");
    }

    const unsigned n_workers = resolve_workers(workers);
    const std::size_t chunks = std::min<std::uint64_t>(n_workers, total);
    std::vector<std::vector<TuneRow>> best(chunks);
    std::vector<std::uint64_t> skipped(chunks, 0);

    parallel_for(chunks, n_workers, [&](std::size_t c0, std::size_t c1) {
        for (std::size_t c = c0; c < c1; ++c) {
            const std::uint64_t begin = total * c / chunks;
            const std::uint64_t end = total * (c + 1) / chunks;
            auto& rows = best[c];
            for (std::uint64_t k = begin; k < end; ++k) {
                ModelThresholds t = make_thresholds(grid.model, candidate_values(grid, k));
                if (!is_valid(t)) {
                    ++skipped[c];
                    continue;
                }
                const RateSummary rates = aggregate(score_dataset(train, grid.model, t, 1), mode);
                rows.push_back(TuneRow{t, rates, objective_score(rates, objective)});
                if (top_k != 0 && rows.size() >= 2 * top_k + 64) {
                    keep_best(rows, top_k);
                }
            }
        }
    });

    TuneReport report;
    report.model = grid.model;
    report.objective = objective;
    report.aggregation = mode;
    report.dataset_fingerprint = train.fingerprint();
    for (std::size_t c = 0; c < chunks; ++c) {
        report.skipped += skipped[c];
        report.rows.insert(report.rows.end(), best[c].begin(), best[c].end());
    }
    report.evaluated = total - report.skipped;
    if (report.evaluated == 0) {
        throw GridError(fmt::format("grid has no valid candidates ({} skipped)", report.skipped));
    }
    keep_best(report.rows, top_k);
    return report;
}

std::string to_csv(const TuneReport& report)
{
    std::string out = fmt::format("# model={} objective={} aggregation={} dataset={} evaluated={} skipped={}\n",
                                  model_name(report.model), report.objective.name(),
                                  aggregation_name(report.aggregation), report.dataset_fingerprint, report.evaluated,
                                  report.skipped);
    out += "Range,True Positive,True Negative,False Positive,False Negative,Objective\n";
    for (const auto& row : report.rows) {
        out += fmt::format("{},{},{},{},{},{}\n", format_range(row.thresholds), format_rate(row.rates.tp_pct),
                           format_rate(row.rates.tn_pct), format_rate(row.rates.fp_pct),
                           format_rate(row.rates.fn_pct),
                           row.objective ? fmt::format("{:.6f}", *row.objective) : std::string{"NA"});
    }
    return out;
}

}  // namespace skindet
