#include "skindet/classify.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "skindet/errors.hpp"
#include "skindet/parallel.hpp"

namespace skindet {
namespace {

constexpr std::array<std::string_view, 2> kHsvNames{"t1", "t2"};
constexpr std::array<std::string_view, 6> kYuvNames{"y_lo", "y_hi", "u_lo", "u_hi", "v_lo", "v_hi"};
constexpr std::array<std::string_view, 6> kYuvYiqNames{"y_lo", "y_hi", "i_lo", "i_hi", "theta_lo", "theta_hi"};

constexpr bool within(double x, double lo, double hi) noexcept
{
    return lo <= x && x <= hi;
}

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

// Returns an empty string when valid, otherwise the reason.
std::string first_violation(const ModelThresholds& t)
{
    for (double v : threshold_values(t)) {
        if (!std::isfinite(v)) {
            return "threshold values must be finite";
        }
    }
    const auto interval = [](std::string_view name, double lo, double hi) -> std::string {
        if (lo > hi) {
            return fmt::format("{} lower bound {} exceeds upper bound {}", name, lo, hi);
        }
        return {};
    };
    return std::visit(
        [&](const auto& th) -> std::string {
            using T = std::decay_t<decltype(th)>;
            if constexpr (std::is_same_v<T, HsvThresholds>) {
                if (th.t1 < 0.0 || th.t2 >= 360.0) {
                    return fmt::format("hue band [{}, {}] must lie in [0, 360)", th.t1, th.t2);
                }
                return interval("hue", th.t1, th.t2);
            } else if constexpr (std::is_same_v<T, YuvThresholds>) {
                for (auto s : {interval("y", th.y_lo, th.y_hi), interval("u", th.u_lo, th.u_hi),
                               interval("v", th.v_lo, th.v_hi)}) {
                    if (!s.empty()) {
                        return s;
                    }
                }
                return {};
            } else {
                for (auto s : {interval("y", th.y_lo, th.y_hi), interval("I", th.i_lo, th.i_hi),
                               interval("theta", th.theta_lo, th.theta_hi)}) {
                    if (!s.empty()) {
                        return s;
                    }
                }
                if (th.theta_lo <= -180.0 || th.theta_hi > 180.0) {
                    return fmt::format("theta band [{}, {}] must lie in (-180, 180]", th.theta_lo, th.theta_hi);
                }
                return {};
            }
        },
        t);
}

template <typename Classifier>
void classify_rows(const ImageBuffer& img, SkinMask& mask, unsigned workers, Classifier&& is_skin)
{
    const std::size_t w = img.width();
    const auto px = img.pixels();
    auto bits = mask.bits();
    parallel_for(img.height(), resolve_workers(workers), [&](std::size_t y0, std::size_t y1) {
        for (std::size_t i = y0 * w; i < y1 * w; ++i) {
            bits[i] = is_skin(px[i]) ? 1 : 0;
        }
    });
}

}  // namespace

std::string_view model_name(Model m) noexcept
{
    switch (m) {
    case Model::hsv:
        return "hsv";
    case Model::yuv:
        return "yuv";
    case Model::yuv_yiq:
        return "yuvyiq";
    }
    return "?";
}

Model parse_model(std::string_view name)
{
    if (name == "hsv") {
        return Model::hsv;
    }
    if (name == "yuv") {
        return Model::yuv;
    }
    if (name == "yuvyiq" || name == "yuv-yiq" || name == "yuv_yiq") {
        return Model::yuv_yiq;
    }
    throw UsageError(fmt::format("unknown model '{}' (expected hsv, yuv or yuvyiq)", name));
}

Model model_of(const ModelThresholds& t) noexcept
{
    return static_cast<Model>(t.index());
}

std::size_t threshold_arity(Model m) noexcept
{
    return threshold_names(m).size();
}

std::span<const std::string_view> threshold_names(Model m) noexcept
{
    switch (m) {
    case Model::hsv:
        return kHsvNames;
    case Model::yuv:
        return kYuvNames;
    case Model::yuv_yiq:
        return kYuvYiqNames;
    }
    return {};
}

std::vector<double> threshold_values(const ModelThresholds& t)
{
    return std::visit(
        [](const auto& th) -> std::vector<double> {
            using T = std::decay_t<decltype(th)>;
            if constexpr (std::is_same_v<T, HsvThresholds>) {
                return {th.t1, th.t2};
            } else if constexpr (std::is_same_v<T, YuvThresholds>) {
                return {th.y_lo, th.y_hi, th.u_lo, th.u_hi, th.v_lo, th.v_hi};
            } else {
                return {th.y_lo, th.y_hi, th.i_lo, th.i_hi, th.theta_lo, th.theta_hi};
            }
        },
        t);
}

ModelThresholds make_thresholds(Model m, std::span<const double> v)
{
    if (v.size() != threshold_arity(m)) {
        throw UsageError(fmt::format("model {} takes {} threshold values, got {}", model_name(m),
                                     threshold_arity(m), v.size()));
    }
    switch (m) {
    case Model::hsv:
        return HsvThresholds{v[0], v[1]};
    case Model::yuv:
        return YuvThresholds{v[0], v[1], v[2], v[3], v[4], v[5]};
    case Model::yuv_yiq:
        return YuvYiqThresholds{v[0], v[1], v[2], v[3], v[4], v[5]};
    }
    throw UsageError("unknown model");
}

ModelThresholds parse_thresholds(Model m, std::string_view text)
{
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view field = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
            throw UsageError(fmt::format("bad threshold value '{}' in \"{}\"", field, text));
        }
        values.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    auto t = make_thresholds(m, values);
    validate(t);
    return t;
}

bool is_valid(const ModelThresholds& t) noexcept
{
    try {
        return first_violation(t).empty();
    } catch (...) {
        return false;
    }
}

void validate(const ModelThresholds& t)
{
    if (auto why = first_violation(t); !why.empty()) {
        throw ValidationError(fmt::format("invalid {} thresholds: {}", model_name(model_of(t)), why));
    }
}

ModelThresholds paper_optimized(Model m)
{
    switch (m) {
    case Model::hsv:
        return HsvThresholds{5, 35};
    case Model::yuv:
        return YuvThresholds{70, 175, 95, 145, 95, 170};
    case Model::yuv_yiq:
        return YuvYiqThresholds{70, 175, 20, 102, -48, 150};
    }
    throw UsageError("unknown model");
}

bool classify_hsv(Rgb8Pixel p, const HsvThresholds& t) noexcept
{
    const Hue h = rgb_to_hue(p);
    return h.is_defined() && within(h.degrees(), t.t1, t.t2);
}

bool classify_yuv(Rgb8Pixel p, const YuvThresholds& t) noexcept
{
    const YuvTriple c = rgb_to_yuv(p);
    return within(c.y, t.y_lo, t.y_hi) && within(c.u, t.u_lo, t.u_hi) && within(c.v, t.v_lo, t.v_hi);
}

bool classify_yuv_yiq(Rgb8Pixel p, const YuvYiqThresholds& t) noexcept
{
    // Achromatic pixels have no chroma direction and are never skin.
    if (p.r == p.g && p.g == p.b) {
        return false;
    }
    const YuvTriple yuv = rgb_to_yuv(p);
    if (!within(yuv.y, t.y_lo, t.y_hi)) {
        return false;
    }
    const YiqTriple yiq = rgb_to_yiq(p);
    if (!within(yiq.i, t.i_lo, t.i_hi)) {
        return false;
    }
    return within(uv_to_polar(yuv).theta, t.theta_lo, t.theta_hi);
}

bool classify(Rgb8Pixel p, const ModelThresholds& t) noexcept
{
    return std::visit(
        [p](const auto& th) {
            using T = std::decay_t<decltype(th)>;
            if constexpr (std::is_same_v<T, HsvThresholds>) {
                return classify_hsv(p, th);
            } else if constexpr (std::is_same_v<T, YuvThresholds>) {
                return classify_yuv(p, th);
            } else {
                return classify_yuv_yiq(p, th);
            }
        },
        t);
}

SkinMask detect_mask(const ImageBuffer& img, Model model, const ModelThresholds& thresholds, unsigned workers)
{
    if (model_of(thresholds) != model) {
        throw UsageError(fmt::format("thresholds for model {} passed with model {}", model_name(model_of(thresholds)),
                                     model_name(model)));
    }
    if (img.empty()) {
        throw UsageError("cannot detect skin in an empty image");
    }

    SkinMask mask(img.width(), img.height());
    std::visit(
        [&](const auto& th) {
            using T = std::decay_t<decltype(th)>;
            if constexpr (std::is_same_v<T, HsvThresholds>) {
                classify_rows(img, mask, workers, [&th](Rgb8Pixel p) { return classify_hsv(p, th); });
            } else if constexpr (std::is_same_v<T, YuvThresholds>) {
                classify_rows(img, mask, workers, [&th](Rgb8Pixel p) { return classify_yuv(p, th); });
            } else {
                classify_rows(img, mask, workers, [&th](Rgb8Pixel p) { return classify_yuv_yiq(p, th); });
            }
        },
        thresholds);
    return mask;
}

std::string format_range(const ModelThresholds& t)
{
    return std::visit(
        [](const auto& th) -> std::string {
            using T = std::decay_t<decltype(th)>;
            if constexpr (std::is_same_v<T, HsvThresholds>) {
                return fmt::format("{} <= h <= {}", th.t1, th.t2);
            } else if constexpr (std::is_same_v<T, YuvThresholds>) {
                return fmt::format("{} <= y <= {} & {} <= u <= {} & {} <= v <= {}", th.y_lo, th.y_hi, th.u_lo,
                                   th.u_hi, th.v_lo, th.v_hi);
            } else {
                return fmt::format("{} <= y <= {} & {} <= I <= {} & {} <= theta <= {}", th.y_lo, th.y_hi, th.i_lo,
                                   th.i_hi, th.theta_lo, th.theta_hi);
            }
        },
        t);
}

}  // namespace skindet
