#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skindet/colorspace.hpp"
#include "skindet/image.hpp"

namespace skindet {

enum class Model { hsv, yuv, yuv_yiq };

/// "hsv", "yuv" or "yuvyiq".
std::string_view model_name(Model m) noexcept;
/// Inverse of model_name; throws UsageError on unknown names.
Model parse_model(std::string_view name);

/// Inclusive hue band [t1, t2] in degrees. Bands do not wrap through 0.
struct HsvThresholds {
    double t1{};
    double t2{};

    friend bool operator==(const HsvThresholds&, const HsvThresholds&) = default;
};

struct YuvThresholds {
    double y_lo{}, y_hi{};
    double u_lo{}, u_hi{};
    double v_lo{}, v_hi{};

    friend bool operator==(const YuvThresholds&, const YuvThresholds&) = default;
};

/// Luma from YUV, I from YIQ, theta (degrees) from the polar YUV chroma.
struct YuvYiqThresholds {
    double y_lo{}, y_hi{};
    double i_lo{}, i_hi{};
    double theta_lo{}, theta_hi{};

    friend bool operator==(const YuvYiqThresholds&, const YuvYiqThresholds&) = default;
};

using ModelThresholds = std::variant<HsvThresholds, YuvThresholds, YuvYiqThresholds>;

Model model_of(const ModelThresholds& t) noexcept;

/// Number of scalar bounds a model takes (2 for hsv, 6 otherwise).
std::size_t threshold_arity(Model m) noexcept;

/// Parameter names in positional order, e.g. {"t1", "t2"} for hsv.
std::span<const std::string_view> threshold_names(Model m) noexcept;

/// Flattens thresholds to their positional values (the order used by --thresholds and grids).
std::vector<double> threshold_values(const ModelThresholds& t);

/// Builds thresholds from positional values. Throws UsageError on wrong arity.
/// Does not validate ordering; see validate().
ModelThresholds make_thresholds(Model m, std::span<const double> values);

/// Parses "t1,t2,..." for a model, then validates.
ModelThresholds parse_thresholds(Model m, std::string_view text);

/// True when every interval has lo <= hi and bounds are in the model's domain.
bool is_valid(const ModelThresholds& t) noexcept;
/// Throws ValidationError describing the first violated bound.
void validate(const ModelThresholds& t);

/// The tuned rows shipped as the "paper-optimized" preset.
ModelThresholds paper_optimized(Model m);

bool classify_hsv(Rgb8Pixel p, const HsvThresholds& t) noexcept;
bool classify_yuv(Rgb8Pixel p, const YuvThresholds& t) noexcept;
bool classify_yuv_yiq(Rgb8Pixel p, const YuvYiqThresholds& t) noexcept;
bool classify(Rgb8Pixel p, const ModelThresholds& t) noexcept;

/// Classifies every pixel of `img`. Rows are split across `workers` threads (0 = all cores);
/// the result does not depend on the worker count.
/// Throws UsageError when `thresholds` is not a `model` threshold set, before touching pixels.
SkinMask detect_mask(const ImageBuffer& img, Model model, const ModelThresholds& thresholds,
                     unsigned workers = 1);

/// Human-readable inclusive range, e.g. "5 <= h <= 35".
std::string format_range(const ModelThresholds& t);

}  // namespace skindet
