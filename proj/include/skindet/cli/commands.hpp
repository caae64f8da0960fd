#pragma once

#include <cstddef>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skindet/classify.hpp"
#include "skindet/manifest.hpp"
#include "skindet/metrics.hpp"
#include "skindet/tune.hpp"

namespace skindet::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitIo = 3,
    kExitValidation = 4,
};

inline constexpr std::string_view kPaperPreset = "paper-optimized";

struct RunConfig {
    Model model{Model::hsv};
    /// Exactly one of these is the threshold source.
    std::optional<std::string> thresholds;
    std::optional<std::string> preset;

    Aggregation mode{Aggregation::micro};
    std::optional<Split> split;
    std::filesystem::path out_dir{"."};
    /// 0 = all cores.
    unsigned workers{0};

    std::filesystem::path grid;
    std::string objective{"youden"};
    std::size_t top_k{10};
    std::uint64_t grid_cap{kDefaultGridCap};

    /// Throws UsageError unless exactly one source is set and it resolves for `model`.
    ModelThresholds resolve_thresholds() const;
};

/// Maps an exception to its exit code: usage 2, I/O 3, validation 4, anything else 1.
int exit_code_for(const std::exception& e) noexcept;

/// Writes <out>/<stem>_mask.bmp per image and <out>/detect_summary.csv.
/// Failed inputs are reported on `err` and do not stop the others.
int cmd_detect(const RunConfig& config, const std::vector<std::filesystem::path>& images, std::ostream& out,
               std::ostream& err);

/// Scores the manifest (filtered by config.split) and writes <out>/evaluate_<model>.csv.
int cmd_evaluate(const RunConfig& config, const std::filesystem::path& manifest, std::ostream& out,
                 std::ostream& err);

/// Grid search over the train entries; writes <out>/tune_<model>.csv.
int cmd_tune(const RunConfig& config, const std::filesystem::path& manifest, std::ostream& out, std::ostream& err);

/// Writes hue_histogram.csv, uv_pairs.csv and i_theta_pairs.csv for ground-truth skin pixels.
int cmd_stats(const RunConfig& config, const std::filesystem::path& manifest, std::ostream& out, std::ostream& err);

/// Table-style rows: one line per image plus the aggregate, rates to one decimal.
struct EvaluateResult {
    std::vector<std::string> paths;
    std::vector<Split> splits;
    std::vector<ConfusionCounts> counts;
    RateSummary aggregate;
};

EvaluateResult evaluate_dataset(const Dataset& ds, const RunConfig& config);
std::string evaluate_csv(const EvaluateResult& r, Aggregation mode);

}  // namespace skindet::cli
