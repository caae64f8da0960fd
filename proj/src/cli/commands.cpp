#include "skindet/cli/commands.hpp"

#include <map>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "skindet/bmp.hpp"
#include "skindet/parallel.hpp"
#include "skindet/stats.hpp"

namespace skindet::cli {
namespace {

void write_text(const std::filesystem::path& path, std::string_view text)
{
    write_file_bytes(path, std::span{reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

void ensure_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    }
}

std::string_view display_name(Model m) noexcept
{
    switch (m) {
    case Model::hsv:
        return "HSV";
    case Model::yuv:
        return "YUV";
    case Model::yuv_yiq:
        return "YUV & YIQ";
    }
    return "?";
}

void print_rate_header(std::ostream& out, std::string_view first)
{
    fmt::print(out, "{:<24} {:>16} {:>16} {:>17} {:>17}\n", first, "True Positive(%)", "True Negative(%)",
               "False Positive(%)", "False Negative(%)");
}

void print_rate_row(std::ostream& out, std::string_view label, const RateSummary& r)
{
    fmt::print(out, "{:<24} {:>16} {:>16} {:>17} {:>17}\n", label, format_rate(r.tp_pct), format_rate(r.tn_pct),
               format_rate(r.fp_pct), format_rate(r.fn_pct));
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn)
{
    try {
        return fn();
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return exit_code_for(e);
    }
}

Dataset load_for(const RunConfig& config, const std::filesystem::path& manifest_path, std::optional<Split> split,
                 std::ostream& out)
{
    const DatasetManifest full = load_manifest(manifest_path);
    const ManifestCounts c = full.counts();
    fmt::print(out, "manifest: {} entries ({} train, {} test; {} all-skin, {} no-skin, {} mask)\n", c.entries,
               c.train, c.test, c.all_skin, c.no_skin, c.mask_backed);
    const DatasetManifest m = filter_split(full, split);
    if (m.entries.empty()) {
        throw ValidationError(
            fmt::format("no manifest entries in split '{}'", split ? split_name(*split) : std::string_view{"all"}));
    }
    return load_dataset(m, config.workers);
}

}  // namespace

ModelThresholds RunConfig::resolve_thresholds() const
{
    if (thresholds.has_value() == preset.has_value()) {
        throw UsageError("give exactly one of --thresholds or --preset");
    }
    if (preset) {
        if (*preset != kPaperPreset) {
            throw UsageError(fmt::format("unknown preset '{}' (expected {})", *preset, kPaperPreset));
        }
        return paper_optimized(model);
    }
    return parse_thresholds(model, *thresholds);
}

int exit_code_for(const std::exception& e) noexcept
{
    if (dynamic_cast<const UsageError*>(&e)) {
        return kExitUsage;
    }
    if (const auto* d = dynamic_cast<const DatasetError*>(&e)) {
        return d->io_failure ? kExitIo : kExitValidation;
    }
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const BmpError*>(&e)) {
        return kExitIo;
    }
    if (dynamic_cast<const ValidationError*>(&e)) {
        return kExitValidation;
    }
    return kExitFailure;
}

int cmd_detect(const RunConfig& config, const std::vector<std::filesystem::path>& images, std::ostream& out,
               std::ostream& err)
{
    return guarded(err, [&] {
        const ModelThresholds thresholds = config.resolve_thresholds();
        if (images.empty()) {
            throw UsageError("detect needs at least one input image");
        }
        ensure_dir(config.out_dir);

        struct Outcome {
            std::size_t skin{0};
            std::size_t total{0};
            std::string error;
            int code{kExitOk};
        };
        std::vector<Outcome> outcomes(images.size());

        // Two inputs with the same stem would write the same mask file.
        std::map<std::string, std::size_t> first_with_stem;
        for (std::size_t k = 0; k < images.size(); ++k) {
            const auto [it, inserted] = first_with_stem.emplace(images[k].stem().string(), k);
            if (!inserted) {
                outcomes[k].error = fmt::format("mask name clashes with input '{}'", images[it->second].string());
                outcomes[k].code = kExitUsage;
            }
        }

        parallel_for(images.size(), resolve_workers(config.workers), [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
                if (outcomes[k].code != kExitOk) {
                    continue;
                }
                try {
                    const ImageBuffer img = load_bmp(images[k]);
                    const SkinMask mask = detect_mask(img, config.model, thresholds, 1);
                    write_file_bytes(config.out_dir / (images[k].stem().string() + "_mask.bmp"), write_mask(mask));
                    outcomes[k].skin = mask.count();
                    outcomes[k].total = mask.size();
                } catch (const std::exception& e) {
                    outcomes[k].error = e.what();
                    outcomes[k].code = exit_code_for(e);
                }
            }
        });

        std::string csv = "image,skin_pixels,total_pixels,skin_fraction\n";
        int status = kExitOk;
        std::size_t failed = 0;
        for (std::size_t k = 0; k < images.size(); ++k) {
            const auto& o = outcomes[k];
            if (o.code != kExitOk) {
                fmt::print(err, "error: {}: {}\n", images[k].string(), o.error);
                if (status == kExitOk) {
                    status = o.code;
                }
                ++failed;
                continue;
            }
            const double fraction = static_cast<double>(o.skin) / static_cast<double>(o.total);
            csv += fmt::format("{},{},{},{:.6f}\n", images[k].string(), o.skin, o.total, fraction);
        }
        write_text(config.out_dir / "detect_summary.csv", csv);
        fmt::print(out, "detect ({} {}): {} of {} images processed, {} failed\n", model_name(config.model),
                   format_range(thresholds), images.size() - failed, images.size(), failed);
        return status;
    });
}

EvaluateResult evaluate_dataset(const Dataset& ds, const RunConfig& config)
{
    const ModelThresholds thresholds = config.resolve_thresholds();
    EvaluateResult r;
    r.counts = score_dataset(ds, config.model, thresholds, config.workers);
    for (const auto& li : ds.images) {
        r.paths.push_back(li.path);
        r.splits.push_back(li.split);
    }
    r.aggregate = aggregate(r.counts, config.mode);
    return r;
}

std::string evaluate_csv(const EvaluateResult& r, Aggregation mode)
{
    std::string csv = "image,split,tp,tn,fp,fn,True Positive,True Negative,False Positive,False Negative\n";
    ConfusionCounts pooled;
    for (std::size_t k = 0; k < r.counts.size(); ++k) {
        const auto& c = r.counts[k];
        const RateSummary rates = to_rates(c);
        pooled += c;
        csv += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.paths[k], split_name(r.splits[k]), c.tp, c.tn, c.fp,
                           c.fn, format_rate(rates.tp_pct), format_rate(rates.tn_pct), format_rate(rates.fp_pct),
                           format_rate(rates.fn_pct));
    }
    csv += fmt::format("AGGREGATE({}),all,{},{},{},{},{},{},{},{}\n", aggregation_name(mode), pooled.tp, pooled.tn,
                       pooled.fp, pooled.fn, format_rate(r.aggregate.tp_pct), format_rate(r.aggregate.tn_pct),
                       format_rate(r.aggregate.fp_pct), format_rate(r.aggregate.fn_pct));
    return csv;
}

int cmd_evaluate(const RunConfig& config, const std::filesystem::path& manifest, std::ostream& out,
                 std::ostream& err)
{
    return guarded(err, [&] {
        const ModelThresholds thresholds = config.resolve_thresholds();
        const Dataset ds = load_for(config, manifest, config.split, out);
        const EvaluateResult r = evaluate_dataset(ds, config);

        ensure_dir(config.out_dir);
        write_text(config.out_dir / fmt::format("evaluate_{}.csv", model_name(config.model)),
                   evaluate_csv(r, config.mode));

        fmt::print(out, "model {} thresholds {} split {} ({} images, {} aggregation)\n", model_name(config.model),
                   format_range(thresholds), config.split ? split_name(*config.split) : "all", ds.images.size(),
                   aggregation_name(config.mode));
        print_rate_header(out, "Image");
        for (std::size_t k = 0; k < r.counts.size(); ++k) {
            print_rate_row(out, r.paths[k], to_rates(r.counts[k]));
        }
        fmt::print(out, "\n");
        print_rate_header(out, "Algorithm");
        print_rate_row(out, display_name(config.model), r.aggregate);
        return int{kExitOk};
    });
}

int cmd_tune(const RunConfig& config, const std::filesystem::path& manifest, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (config.grid.empty()) {
            throw UsageError("tune needs --grid <file>");
        }
        const auto grid_bytes = read_file_bytes(config.grid);
        GridSpec grid = parse_grid(std::string_view{reinterpret_cast<const char*>(grid_bytes.data()),
                                                     grid_bytes.size()},
                                   config.model);
        grid.cap = config.grid_cap;
        const Objective objective = Objective::parse(config.objective);

        const Dataset ds = load_for(config, manifest, Split::train, out);
        const TuneReport report = grid_search(ds, grid, objective, config.top_k, config.mode, config.workers);

        ensure_dir(config.out_dir);
        write_text(config.out_dir / fmt::format("tune_{}.csv", model_name(config.model)), to_csv(report));

        fmt::print(out, "tune {}: {} candidates evaluated, {} skipped, objective {}\n", model_name(config.model),
                   report.evaluated, report.skipped, objective.name());
        print_rate_header(out, "Range");
        const TuneRow& top = report.rows.front();
        print_rate_row(out, format_range(top.thresholds), top.rates);
        fmt::print(out, "objective {}\n", top.objective ? fmt::format("{:.6f}", *top.objective) : "NA");
        return int{kExitOk};
    });
}

int cmd_stats(const RunConfig& config, const std::filesystem::path& manifest, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Dataset ds = load_for(config, manifest, config.split, out);
        const ClusterStats s = compute_cluster_stats(ds);

        ensure_dir(config.out_dir);
        write_text(config.out_dir / "hue_histogram.csv", hue_histogram_csv(s));
        write_text(config.out_dir / "uv_pairs.csv", uv_csv(s));
        write_text(config.out_dir / "i_theta_pairs.csv", i_theta_csv(s));

        fmt::print(out, "skin pixels: {}\nachromatic (excluded from hue histogram): {}\n", s.skin_pixels,
                   s.achromatic);
        return int{kExitOk};
    });
}

}  // namespace skindet::cli
