// skindet: pixel-based skin detection with HSV, YUV and YUV-YIQ threshold models.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "skindet/cli/commands.hpp"

namespace {

using namespace skindet;

struct Flags {
    std::string model{"hsv"};
    std::string thresholds;
    std::string preset;
    std::string mode{"micro"};
    std::string split{"all"};
    std::string out{"."};
    unsigned workers{0};
    std::string grid;
    std::string objective{"youden"};
    std::size_t top_k{10};
    std::uint64_t grid_cap{kDefaultGridCap};
    std::string manifest;
    std::vector<std::string> images;
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
    cmd->add_option("--workers", f.workers, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_thresholds(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--model", f.model, "hsv | yuv | yuvyiq")->capture_default_str();
    cmd->add_option("--thresholds", f.thresholds, "Comma-separated bounds, e.g. \"5,35\" for hsv");
    cmd->add_option("--preset", f.preset, "Named threshold preset (paper-optimized)");
}

cli::RunConfig to_config(const Flags& f, bool with_thresholds)
{
    cli::RunConfig c;
    c.model = parse_model(f.model);
    if (with_thresholds) {
        if (!f.thresholds.empty()) {
            c.thresholds = f.thresholds;
        }
        if (!f.preset.empty()) {
            c.preset = f.preset;
        }
    }
    c.mode = parse_aggregation(f.mode);
    if (f.split == "train") {
        c.split = Split::train;
    } else if (f.split == "test") {
        c.split = Split::test;
    } else if (f.split != "all") {
        throw UsageError("--split must be train, test or all");
    }
    c.out_dir = f.out;
    c.workers = f.workers;
    c.grid = f.grid;
    c.objective = f.objective;
    c.top_k = f.top_k;
    c.grid_cap = f.grid_cap;
    return c;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pixel-based skin detection: detect, evaluate, tune, stats"};
    app.require_subcommand(1);
    Flags f;

    auto* detect = app.add_subcommand("detect", "Write a skin mask BMP per input image");
    add_thresholds(detect, f);
    add_common(detect, f);
    detect->add_option("images", f.images, "24-bit BMP images")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Score a labeled manifest against ground truth");
    add_thresholds(evaluate, f);
    add_common(evaluate, f);
    evaluate->add_option("manifest", f.manifest, "Manifest CSV")->required();
    evaluate->add_option("--mode", f.mode, "micro | macro")->capture_default_str();
    evaluate->add_option("--split", f.split, "train | test | all")->capture_default_str();

    auto* tune = app.add_subcommand("tune", "Grid-search thresholds on the train split");
    tune->add_option("--model", f.model, "hsv | yuv | yuvyiq")->capture_default_str();
    add_common(tune, f);
    tune->add_option("manifest", f.manifest, "Manifest CSV")->required();
    tune->add_option("--grid", f.grid, "Grid file")->required();
    tune->add_option("--objective", f.objective, "youden | weighted:<w>")->capture_default_str();
    tune->add_option("--top-k", f.top_k, "Rows to keep (0 = all)")->capture_default_str();
    tune->add_option("--grid-cap", f.grid_cap, "Maximum candidate count")->capture_default_str();
    tune->add_option("--mode", f.mode, "micro | macro")->capture_default_str();

    auto* stats = app.add_subcommand("stats", "Emit skin color cluster CSVs");
    add_common(stats, f);
    stats->add_option("manifest", f.manifest, "Manifest CSV")->required();
    stats->add_option("--split", f.split, "train | test | all")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kExitUsage;
    }

    cli::RunConfig config;
    try {
        config = to_config(f, detect->parsed() || evaluate->parsed());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code_for(e);
    }

    if (detect->parsed()) {
        std::vector<std::filesystem::path> paths(f.images.begin(), f.images.end());
        return cli::cmd_detect(config, paths, std::cout, std::cerr);
    }
    if (evaluate->parsed()) {
        return cli::cmd_evaluate(config, f.manifest, std::cout, std::cerr);
    }
    if (tune->parsed()) {
        return cli::cmd_tune(config, f.manifest, std::cout, std::cerr);
    }
    return cli::cmd_stats(config, f.manifest, std::cout, std::cerr);
}
