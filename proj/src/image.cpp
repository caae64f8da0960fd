#include "skindet/image.hpp"

#include <algorithm>
#include <string>

#include "skindet/errors.hpp"

namespace skindet {

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, Rgb8Pixel fill)
    : width_{width}, height_{height}, pixels_(width * height, fill)
{
    if (width == 0 || height == 0) {
        throw ValidationError("image dimensions must be at least 1x1");
    }
}

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::vector<Rgb8Pixel> pixels)
    : width_{width}, height_{height}, pixels_(std::move(pixels))
{
    if (width == 0 || height == 0) {
        throw ValidationError("image dimensions must be at least 1x1");
    }
    if (pixels_.size() != width * height) {
        throw ValidationError("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
}

SkinMask::SkinMask(std::size_t width, std::size_t height, bool fill)
    : width_{width}, height_{height}, bits_(width * height, fill ? 1 : 0)
{
}

std::size_t SkinMask::count() const noexcept
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

}  // namespace skindet
