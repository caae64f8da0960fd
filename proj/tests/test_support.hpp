#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

#include "skindet/image.hpp"

namespace testing {

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir()
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("skindet_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline skindet::Rgb8Pixel random_pixel(std::mt19937_64& rng)
{
    const auto v = rng();
    return {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v >> 16)};
}

inline skindet::ImageBuffer random_image(std::mt19937_64& rng, std::size_t max_side = 64)
{
    const std::size_t w = 1 + rng() % max_side;
    const std::size_t h = 1 + rng() % max_side;
    skindet::ImageBuffer img(w, h);
    for (auto& p : img.pixels()) {
        p = random_pixel(rng);
        // Sprinkle exact grays so the achromatic path is exercised.
        if (rng() % 16 == 0) {
            p.g = p.b = p.r;
        }
    }
    return img;
}

inline skindet::SkinMask random_mask(std::mt19937_64& rng, std::size_t w, std::size_t h)
{
    skindet::SkinMask m(w, h);
    for (auto& b : m.bits()) {
        b = static_cast<std::uint8_t>(rng() & 1);
    }
    return m;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

}  // namespace testing
