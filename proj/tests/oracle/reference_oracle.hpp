#pragma once

// Naive scalar reference implementations used only by tests. They are written directly from
// the published formulas (full matrix rows, literal branch structure) and share no code with
// the library beyond the plain pixel and image containers.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "skindet/image.hpp"

namespace oracle {

using Matrix3 = std::array<std::array<double, 3>, 3>;

inline constexpr Matrix3 kYuvMatrix{{{0.257, 0.504, 0.098}, {-0.148, -0.291, 0.439}, {0.439, -0.368, -0.071}}};
inline constexpr std::array<double, 3> kYuvOffset{16.0, 128.0, 128.0};
inline constexpr Matrix3 kYiqMatrix{{{0.299, 0.587, 0.114}, {0.596, -0.274, -0.322}, {0.211, -0.523, 0.312}}};

inline std::array<double, 3> apply(const Matrix3& m, const std::array<double, 3>& offset, skindet::Rgb8Pixel p)
{
    const double rgb[3] = {double(p.r), double(p.g), double(p.b)};
    std::array<double, 3> out{};
    for (int row = 0; row < 3; ++row) {
        out[row] = offset[row];
        for (int col = 0; col < 3; ++col) {
            out[row] += m[row][col] * rgb[col];
        }
    }
    return out;
}

inline std::array<double, 3> yuv(skindet::Rgb8Pixel p) { return apply(kYuvMatrix, kYuvOffset, p); }
inline std::array<double, 3> yiq(skindet::Rgb8Pixel p) { return apply(kYiqMatrix, {0, 0, 0}, p); }

// Exact evaluation in thousandths, for classification at integer threshold boundaries.
inline std::array<long, 3> apply_milli(const Matrix3& m, const std::array<double, 3>& offset, skindet::Rgb8Pixel p)
{
    const long rgb[3] = {p.r, p.g, p.b};
    std::array<long, 3> out{};
    for (int row = 0; row < 3; ++row) {
        out[row] = std::lround(offset[row] * 1000);
        for (int col = 0; col < 3; ++col) {
            out[row] += std::lround(m[row][col] * 1000) * rgb[col];
        }
    }
    return out;
}

inline std::array<double, 3> yuv_exact(skindet::Rgb8Pixel p)
{
    const auto n = apply_milli(kYuvMatrix, kYuvOffset, p);
    return {n[0] / 1000.0, n[1] / 1000.0, n[2] / 1000.0};
}

inline double i_exact(skindet::Rgb8Pixel p) { return apply_milli(kYiqMatrix, {0, 0, 0}, p)[1] / 1000.0; }

/// Literal max/min branch hue; empty when max == min.
inline std::optional<double> hue(skindet::Rgb8Pixel p)
{
    const double R = p.r, G = p.g, B = p.b;
    double mx = R, mn = R;
    if (G > mx) mx = G;
    if (B > mx) mx = B;
    if (G < mn) mn = G;
    if (B < mn) mn = B;
    const double delta = mx - mn;
    if (delta == 0) {
        return std::nullopt;
    }
    double h;
    if (mx == R) {
        h = (G - B) / delta;
    } else if (mx == G) {
        h = 2 + (B - R) / delta;
    } else {
        h = 4 + (R - G) / delta;
    }
    h = h * 60;
    if (h < 0) {
        h = h + 360;
    }
    return h;
}

/// Angle of the centered (U, V) chroma in degrees, (-180, 180]; 0 for gray.
inline double theta(skindet::Rgb8Pixel p)
{
    if (p.r == p.g && p.g == p.b) {
        return 0.0;
    }
    const auto c = yuv_exact(p);
    double t = std::atan2(c[2] - 128.0, c[1] - 128.0) * 180.0 / std::numbers::pi;
    return t == -180.0 ? 180.0 : t;
}

inline bool in(double x, double lo, double hi) { return lo <= x && x <= hi; }

inline bool skin_hsv(skindet::Rgb8Pixel p, double t1, double t2)
{
    const auto h = hue(p);
    return h && in(*h, t1, t2);
}

inline bool skin_yuv(skindet::Rgb8Pixel p, const std::array<double, 6>& t)
{
    const auto c = yuv_exact(p);
    return in(c[0], t[0], t[1]) && in(c[1], t[2], t[3]) && in(c[2], t[4], t[5]);
}

inline bool skin_yuv_yiq(skindet::Rgb8Pixel p, const std::array<double, 6>& t)
{
    if (p.r == p.g && p.g == p.b) {
        return false;
    }
    return in(yuv_exact(p)[0], t[0], t[1]) && in(i_exact(p), t[2], t[3]) && in(theta(p), t[4], t[5]);
}

/// model: 0 = hsv (uses t[0], t[1]), 1 = yuv, 2 = yuv-yiq.
inline bool skin(int model, skindet::Rgb8Pixel p, const std::array<double, 6>& t)
{
    switch (model) {
    case 0:
        return skin_hsv(p, t[0], t[1]);
    case 1:
        return skin_yuv(p, t);
    default:
        return skin_yuv_yiq(p, t);
    }
}

struct Counts {
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
};

/// Scores an image against its truth bits without building a mask.
inline Counts score(int model, const skindet::ImageBuffer& img, const skindet::SkinMask& truth,
                    const std::array<double, 6>& t)
{
    Counts c;
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const bool predicted = skin(model, img.at(x, y), t);
            const bool actual = truth.at(x, y);
            if (predicted && actual) ++c.tp;
            if (!predicted && actual) ++c.fn;
            if (predicted && !actual) ++c.fp;
            if (!predicted && !actual) ++c.tn;
        }
    }
    return c;
}

/// Tuned rows from the published optimization tables, entered independently of the library preset.
inline constexpr std::array<double, 6> kPaperHsv{5, 35, 0, 0, 0, 0};
inline constexpr std::array<double, 6> kPaperYuv{70, 175, 95, 145, 95, 170};
inline constexpr std::array<double, 6> kPaperYuvYiq{70, 175, 20, 102, -48, 150};

}  // namespace oracle
