#include "skindet/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace skindet {

Hue rgb_to_hue(Rgb8Pixel p) noexcept
{
    const int r = p.r;
    const int g = p.g;
    const int b = p.b;
    const int mx = std::max({r, g, b});
    const int mn = std::min({r, g, b});
    const int delta = mx - mn;
    if (delta == 0) {
        return Hue::achromatic();
    }

    const double d = static_cast<double>(delta);
    double h;
    if (mx == r) {
        h = (g - b) / d;
    } else if (mx == g) {
        h = 2.0 + (b - r) / d;
    } else {
        h = 4.0 + (r - g) / d;
    }
    h *= 60.0;
    if (h < 0.0) {
        h += 360.0;
    }
    return Hue::from_degrees(h);
}

// Every coefficient has three decimals, so each component is an exact integer count of
// thousandths; the single division by 1000 is correctly rounded. Threshold comparisons are
// therefore exact, and gray maps to u = v = 128 and i = q = 0.
YuvTriple rgb_to_yuv(Rgb8Pixel p) noexcept
{
    const int r = p.r;
    const int g = p.g;
    const int b = p.b;
    const int y = 257 * r + 504 * g + 98 * b + 16000;
    const int u = -148 * r - 291 * g + 439 * b + 128000;
    const int v = 439 * r - 368 * g - 71 * b + 128000;
    return {y / 1000.0, u / 1000.0, v / 1000.0};
}

YiqTriple rgb_to_yiq(Rgb8Pixel p) noexcept
{
    const int r = p.r;
    const int g = p.g;
    const int b = p.b;
    const int y = 299 * r + 587 * g + 114 * b;
    const int i = 596 * r - 274 * g - 322 * b;
    const int q = 211 * r - 523 * g + 312 * b;
    return {y / 1000.0, i / 1000.0, q / 1000.0};
}

ChromaPolar uv_to_polar(const YuvTriple& t) noexcept
{
    const double u = t.u - kChromaOffset;
    const double v = t.v - kChromaOffset;
    const double ch = std::hypot(u, v);
    if (ch == 0.0) {
        return {0.0, 0.0};
    }
    double theta = std::atan2(v, u) * (180.0 / std::numbers::pi);
    // atan2 can return -pi for a negative-zero V; fold it onto the closed end.
    if (theta <= -180.0) {
        theta = 180.0;
    }
    return {ch, theta};
}

}  // namespace skindet
