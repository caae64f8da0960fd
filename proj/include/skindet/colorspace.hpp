#pragma once

#include <cstdint>

namespace skindet {

/// One 24-bit color sample.
struct Rgb8Pixel {
    std::uint8_t r{};
    std::uint8_t g{};
    std::uint8_t b{};

    friend constexpr bool operator==(const Rgb8Pixel&, const Rgb8Pixel&) = default;
};

/// Hue angle in degrees, or achromatic when max(r,g,b) == min(r,g,b).
class Hue {
public:
    static constexpr Hue achromatic() noexcept { return Hue{}; }
    static constexpr Hue from_degrees(double h) noexcept { return Hue{h}; }

    constexpr bool is_achromatic() const noexcept { return achromatic_; }
    constexpr bool is_defined() const noexcept { return !achromatic_; }

    /// Angle in [0, 360). Only meaningful when is_defined().
    constexpr double degrees() const noexcept { return degrees_; }

    friend constexpr bool operator==(const Hue&, const Hue&) = default;

private:
    constexpr Hue() noexcept = default;
    constexpr explicit Hue(double h) noexcept : degrees_{h}, achromatic_{false} {}

    double degrees_{0.0};
    bool achromatic_{true};
};

/// Offset-scaled YUV: y in [16, 235.045], u and v centered on 128.
struct YuvTriple {
    double y{};
    double u{};
    double v{};
};

struct YiqTriple {
    double y_luma{};
    double i{};
    double q{};
};

/// Polar form of the centered (U, V) chroma. theta is in degrees, (-180, 180].
struct ChromaPolar {
    double ch{};
    double theta{};
};

/// Chroma offset used by the YUV transform.
inline constexpr double kChromaOffset = 128.0;

Hue rgb_to_hue(Rgb8Pixel p) noexcept;
YuvTriple rgb_to_yuv(Rgb8Pixel p) noexcept;
YiqTriple rgb_to_yiq(Rgb8Pixel p) noexcept;

/// Converts to polar chroma over U = u - 128, V = v - 128. theta is 0 when ch is 0.
ChromaPolar uv_to_polar(const YuvTriple& t) noexcept;

}  // namespace skindet
