#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "skindet/errors.hpp"
#include "skindet/image.hpp"

namespace skindet {

enum class BmpErrorKind {
    truncated_header,
    bad_magic,
    unsupported_header,
    unsupported_bit_depth,
    unsupported_compression,
    top_down_rows,
    bad_dimensions,
    bad_pixel_offset,
    truncated_pixels,
    size_mismatch,
};

struct BmpError : Error {
    BmpError(BmpErrorKind kind, const std::string& what) : Error(what), kind(kind) {}
    BmpErrorKind kind;
};

inline constexpr std::size_t kBmpFileHeaderSize = 14;
inline constexpr std::size_t kBmpInfoHeaderSize = 40;
inline constexpr std::size_t kBmpPixelOffset = kBmpFileHeaderSize + kBmpInfoHeaderSize;

/// Bytes per stored row of a 24-bit image, padded to a multiple of 4.
constexpr std::size_t bmp_row_stride(std::size_t width) noexcept
{
    return (width * 3 + 3) & ~std::size_t{3};
}

/// Decodes an uncompressed bottom-up 24-bit BMP with a BITMAPINFOHEADER.
ImageBuffer read_bmp(std::span<const std::uint8_t> bytes);

/// Encodes the canonical form: 54-byte header, zero reserved and resolution fields,
/// biSizeImage filled in, zero row padding.
std::vector<std::uint8_t> write_bmp(const ImageBuffer& img);

/// Mask files are 24-bit BMPs. Any nonzero channel reads as skin; writes are black/white.
SkinMask read_mask(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_mask(const SkinMask& mask);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

ImageBuffer load_bmp(const std::filesystem::path& path);
SkinMask load_mask(const std::filesystem::path& path);

}  // namespace skindet
