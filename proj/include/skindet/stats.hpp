#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skindet/manifest.hpp"

namespace skindet {

/// Color distribution of ground-truth skin pixels in the three classifier spaces.
struct ClusterStats {
    /// 1-degree hue bins; bin k holds hues in [k, k+1).
    std::array<std::uint64_t, 360> hue_histogram{};
    /// Centered chroma (u - 128, v - 128) per skin pixel.
    std::vector<std::pair<double, double>> uv;
    /// (I, theta) per skin pixel.
    std::vector<std::pair<double, double>> i_theta;
    std::uint64_t skin_pixels{0};
    /// Skin pixels with no defined hue; excluded from the histogram.
    std::uint64_t achromatic{0};
};

/// Throws ValidationError when the dataset has no ground-truth skin pixel.
ClusterStats compute_cluster_stats(const Dataset& ds);

std::string hue_histogram_csv(const ClusterStats& s);
std::string uv_csv(const ClusterStats& s);
std::string i_theta_csv(const ClusterStats& s);

}  // namespace skindet
