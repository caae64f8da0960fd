#include "skindet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "skindet/bmp.hpp"
#include "skindet/colorspace.hpp"

namespace skindet {
namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_{seed} {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 eng_;
};

std::uint8_t to_byte(double unit)
{
    return static_cast<std::uint8_t>(std::clamp(std::lround(unit * 255.0), 0L, 255L));
}

Rgb8Pixel from_hsv(double h, double s, double v)
{
    h = std::fmod(h, 360.0);
    if (h < 0.0) {
        h += 360.0;
    }
    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
    }
    const double m = v - c;
    return {to_byte(r + m), to_byte(g + m), to_byte(b + m)};
}

Rgb8Pixel gray(Rng& rng)
{
    const auto level = static_cast<std::uint8_t>(rng.below(256));
    return {level, level, level};
}

Rgb8Pixel skin_pixel(Rng& rng, SynthProfile profile)
{
    if (profile == SynthProfile::clean) {
        for (;;) {
            const Rgb8Pixel p = from_hsv(rng.uniform(10, 30), rng.uniform(0.3, 0.6), rng.uniform(0.35, 0.95));
            const Hue h = rgb_to_hue(p);
            if (h.is_defined() && h.degrees() >= 10.0 && h.degrees() <= 30.0) {
                return p;
            }
        }
    }
    // Sum of four uniforms: bell-shaped hue around 18 degrees, support [-6, 42].
    const double spread = rng.uniform() + rng.uniform() + rng.uniform() + rng.uniform() - 2.0;
    return from_hsv(18.0 + 12.0 * spread, rng.uniform(0.15, 0.7), rng.uniform(0.2, 1.0));
}

Rgb8Pixel background_pixel(Rng& rng, SynthProfile profile)
{
    const double pick = rng.uniform();
    if (profile == SynthProfile::clean) {
        if (pick < 0.5) {
            return gray(rng);
        }
        return from_hsv(rng.uniform(200, 260), rng.uniform(0.3, 1.0), rng.uniform(0.2, 1.0));
    }
    if (pick < 0.30) {
        return gray(rng);
    }
    if (pick < 0.55) {
        return from_hsv(rng.uniform(190, 270), rng.uniform(0.2, 1.0), rng.uniform(0.1, 1.0));
    }
    if (pick < 0.70) {
        return from_hsv(rng.uniform(80, 160), rng.uniform(0.2, 0.9), rng.uniform(0.1, 0.9));
    }
    if (pick < 0.90) {
        return from_hsv(rng.uniform(20, 60), rng.uniform(0.05, 0.5), rng.uniform(0.3, 1.0));
    }
    return from_hsv(rng.uniform(320, 360), rng.uniform(0.3, 0.9), rng.uniform(0.2, 0.9));
}

enum class Coverage { all_skin, no_skin, partial };

}  // namespace

std::vector<SynthImage> generate_dataset(const SynthOptions& o)
{
    if (o.images == 0 || o.width == 0 || o.height == 0 || o.train > o.images) {
        throw ValidationError("synthetic dataset needs at least one image, nonzero size, and train <= images");
    }
    Rng rng{o.seed};

    const auto all_skin = static_cast<std::size_t>(std::lround(0.30 * static_cast<double>(o.images)));
    const auto no_skin = std::min(o.images - all_skin,
                                  static_cast<std::size_t>(std::lround(0.35 * static_cast<double>(o.images))));
    std::vector<Coverage> coverage(o.images, Coverage::partial);
    std::fill_n(coverage.begin(), all_skin, Coverage::all_skin);
    std::fill_n(coverage.begin() + static_cast<std::ptrdiff_t>(all_skin), no_skin, Coverage::no_skin);
    rng.shuffle(coverage);

    std::vector<std::size_t> order(o.images);
    for (std::size_t k = 0; k < o.images; ++k) {
        order[k] = k;
    }
    rng.shuffle(order);
    std::vector<Split> splits(o.images, Split::test);
    for (std::size_t k = 0; k < o.train; ++k) {
        splits[order[k]] = Split::train;
    }

    std::vector<SynthImage> out;
    out.reserve(o.images);
    for (std::size_t k = 0; k < o.images; ++k) {
        SynthImage si;
        si.name = fmt::format("img_{:03}", k);
        si.split = splits[k];
        si.image = ImageBuffer(o.width, o.height);
        si.truth = SkinMask(o.width, o.height, coverage[k] == Coverage::all_skin);

        if (coverage[k] == Coverage::partial) {
            const std::size_t blobs = 1 + rng.below(3);
            const double w = static_cast<double>(o.width);
            const double h = static_cast<double>(o.height);
            for (std::size_t b = 0; b < blobs; ++b) {
                const double cx = rng.uniform(0.2, 0.8) * w;
                const double cy = rng.uniform(0.2, 0.8) * h;
                const double rx = rng.uniform(0.1, 0.3) * w;
                const double ry = rng.uniform(0.1, 0.3) * h;
                for (std::size_t y = 0; y < o.height; ++y) {
                    for (std::size_t x = 0; x < o.width; ++x) {
                        const double dx = (static_cast<double>(x) + 0.5 - cx) / rx;
                        const double dy = (static_cast<double>(y) + 0.5 - cy) / ry;
                        if (dx * dx + dy * dy <= 1.0) {
                            si.truth.set(x, y, true);
                        }
                    }
                }
            }
        }

        auto px = si.image.pixels();
        for (std::size_t i = 0; i < px.size(); ++i) {
            px[i] = si.truth[i] ? skin_pixel(rng, o.profile) : background_pixel(rng, o.profile);
        }

        switch (coverage[k]) {
        case Coverage::all_skin: si.kind = AllSkin{}; break;
        case Coverage::no_skin: si.kind = NoSkin{}; break;
        case Coverage::partial: si.kind = MaskFile{fmt::format("masks/{}.bmp", si.name)}; break;
        }
        out.push_back(std::move(si));
    }
    return out;
}

Dataset to_dataset(const std::vector<SynthImage>& images)
{
    Dataset ds;
    for (const auto& si : images) {
        ds.images.push_back(LabeledImage{fmt::format("images/{}.bmp", si.name), si.split, si.image, si.truth});
    }
    return ds;
}

DatasetManifest write_dataset(const std::vector<SynthImage>& images, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir / "images");
    std::filesystem::create_directories(dir / "masks");
    DatasetManifest m;
    m.base_dir = dir;
    for (const auto& si : images) {
        ManifestEntry e;
        e.image_path = fmt::format("images/{}.bmp", si.name);
        e.truth = si.kind;
        e.split = si.split;
        e.line = m.entries.size() + 2;
        write_file_bytes(dir / e.image_path, write_bmp(si.image));
        if (const auto* f = std::get_if<MaskFile>(&si.kind)) {
            write_file_bytes(dir / f->path, write_mask(si.truth));
        }
        m.entries.push_back(std::move(e));
    }
    const std::string text = "# image,truth,split\n" + write_manifest(m);
    write_file_bytes(dir / "manifest.csv",
                     std::span{reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    return m;
}

}  // namespace skindet
