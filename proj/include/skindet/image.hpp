#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "skindet/colorspace.hpp"

namespace skindet {

/// Row-major RGB image with a top-left origin.
class ImageBuffer {
public:
    ImageBuffer() = default;
    /// Throws ValidationError if either dimension is zero.
    ImageBuffer(std::size_t width, std::size_t height, Rgb8Pixel fill = {});
    ImageBuffer(std::size_t width, std::size_t height, std::vector<Rgb8Pixel> pixels);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }
    bool empty() const noexcept { return pixels_.empty(); }

    Rgb8Pixel& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
    const Rgb8Pixel& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

    std::span<Rgb8Pixel> pixels() noexcept { return pixels_; }
    std::span<const Rgb8Pixel> pixels() const noexcept { return pixels_; }
    std::span<const Rgb8Pixel> row(std::size_t y) const { return std::span{pixels_}.subspan(y * width_, width_); }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t width_{0};
    std::size_t height_{0};
    std::vector<Rgb8Pixel> pixels_;
};

/// One skin/non-skin bit per pixel, row-major, aligned to an ImageBuffer.
class SkinMask {
public:
    SkinMask() = default;
    SkinMask(std::size_t width, std::size_t height, bool fill = false);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return bits_.size(); }

    bool at(std::size_t x, std::size_t y) const { return bits_[y * width_ + x] != 0; }
    void set(std::size_t x, std::size_t y, bool skin) { bits_[y * width_ + x] = skin ? 1 : 0; }

    bool operator[](std::size_t i) const { return bits_[i] != 0; }

    /// Raw storage, one byte (0 or 1) per pixel.
    std::span<std::uint8_t> bits() noexcept { return bits_; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    std::size_t count() const noexcept;
    bool same_shape(const SkinMask& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const SkinMask&, const SkinMask&) = default;

private:
    std::size_t width_{0};
    std::size_t height_{0};
    std::vector<std::uint8_t> bits_;
};

}  // namespace skindet
