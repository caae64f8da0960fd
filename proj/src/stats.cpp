#include "skindet/stats.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "skindet/colorspace.hpp"

namespace skindet {

ClusterStats compute_cluster_stats(const Dataset& ds)
{
    ClusterStats s;
    for (const auto& li : ds.images) {
        const auto px = li.image.pixels();
        for (std::size_t i = 0; i < px.size(); ++i) {
            if (!li.truth[i]) {
                continue;
            }
            ++s.skin_pixels;
            const Hue h = rgb_to_hue(px[i]);
            if (h.is_defined()) {
                const auto bin = std::min<std::size_t>(static_cast<std::size_t>(std::floor(h.degrees())), 359);
                ++s.hue_histogram[bin];
            } else {
                ++s.achromatic;
            }
            const YuvTriple yuv = rgb_to_yuv(px[i]);
            s.uv.emplace_back(yuv.u - kChromaOffset, yuv.v - kChromaOffset);
            s.i_theta.emplace_back(rgb_to_yiq(px[i]).i, uv_to_polar(yuv).theta);
        }
    }
    if (s.skin_pixels == 0) {
        throw ValidationError("dataset has no ground-truth skin pixels");
    }
    return s;
}

std::string hue_histogram_csv(const ClusterStats& s)
{
    std::string out = "hue_bin,count\n";
    for (std::size_t k = 0; k < s.hue_histogram.size(); ++k) {
        out += fmt::format("{},{}\n", k, s.hue_histogram[k]);
    }
    return out;
}

std::string uv_csv(const ClusterStats& s)
{
    std::string out = "u,v\n";
    for (const auto& [u, v] : s.uv) {
        out += fmt::format("{:.4f},{:.4f}\n", u, v);
    }
    return out;
}

std::string i_theta_csv(const ClusterStats& s)
{
    std::string out = "i,theta\n";
    for (const auto& [i, theta] : s.i_theta) {
        out += fmt::format("{:.4f},{:.4f}\n", i, theta);
    }
    return out;
}

}  // namespace skindet
