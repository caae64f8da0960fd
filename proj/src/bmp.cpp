#include "skindet/bmp.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include <fmt/format.h>

namespace skindet {
namespace {

// Decoded images are capped at 2^28 pixels.
constexpr std::uint64_t kMaxPixels = std::uint64_t{1} << 28;

std::uint16_t le16(const std::uint8_t* p)
{
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t le32(const std::uint8_t* p)
{
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put16(std::uint8_t* p, std::uint16_t v)
{
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
}

void put32(std::uint8_t* p, std::uint32_t v)
{
    for (int k = 0; k < 4; ++k) {
        p[k] = static_cast<std::uint8_t>(v >> (8 * k));
    }
}

}  // namespace

ImageBuffer read_bmp(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kBmpPixelOffset) {
        throw BmpError(BmpErrorKind::truncated_header,
                       fmt::format("truncated header: {} bytes, need at least {}", bytes.size(), kBmpPixelOffset));
    }
    const std::uint8_t* h = bytes.data();
    if (h[0] != 'B' || h[1] != 'M') {
        throw BmpError(BmpErrorKind::bad_magic, "bad magic: file does not start with \"BM\"");
    }
    const std::uint32_t file_size = le32(h + 2);
    const std::uint32_t pixel_offset = le32(h + 10);

    const std::uint8_t* info = h + kBmpFileHeaderSize;
    const std::uint32_t info_size = le32(info);
    if (info_size != kBmpInfoHeaderSize) {
        throw BmpError(BmpErrorKind::unsupported_header,
                       fmt::format("unsupported info header size {} (only 40-byte BITMAPINFOHEADER)", info_size));
    }
    const auto width = static_cast<std::int32_t>(le32(info + 4));
    const auto height = static_cast<std::int32_t>(le32(info + 8));
    const std::uint16_t planes = le16(info + 12);
    const std::uint16_t bit_count = le16(info + 14);
    const std::uint32_t compression = le32(info + 16);
    const std::uint32_t image_size = le32(info + 20);

    if (bit_count != 24) {
        throw BmpError(BmpErrorKind::unsupported_bit_depth,
                       fmt::format("unsupported bit depth {} (only 24-bit)", bit_count));
    }
    if (compression != 0) {
        throw BmpError(BmpErrorKind::unsupported_compression,
                       fmt::format("unsupported compression {} (only uncompressed)", compression));
    }
    if (height < 0) {
        throw BmpError(BmpErrorKind::top_down_rows, "top-down (negative height) bitmaps are not supported");
    }
    if (width <= 0 || height == 0 || planes != 1 ||
        static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height) > kMaxPixels) {
        throw BmpError(BmpErrorKind::bad_dimensions,
                       fmt::format("bad dimensions {}x{} (planes {})", width, height, planes));
    }

    const auto w = static_cast<std::size_t>(width);
    const auto ht = static_cast<std::size_t>(height);
    const std::size_t stride = bmp_row_stride(w);
    const std::uint64_t data_size = static_cast<std::uint64_t>(stride) * ht;

    if (pixel_offset < kBmpPixelOffset || pixel_offset > bytes.size()) {
        throw BmpError(BmpErrorKind::bad_pixel_offset,
                       fmt::format("pixel data offset {} outside file of {} bytes", pixel_offset, bytes.size()));
    }
    if (pixel_offset + data_size > bytes.size()) {
        throw BmpError(BmpErrorKind::truncated_pixels,
                       fmt::format("truncated pixel data: need {} bytes after offset {}, have {}", data_size,
                                   pixel_offset, bytes.size() - pixel_offset));
    }
    if (file_size > bytes.size() || (image_size != 0 && image_size < data_size)) {
        throw BmpError(BmpErrorKind::size_mismatch,
                       fmt::format("header/size inconsistency: bfSize {} biSizeImage {} for {} bytes of {}x{} data",
                                   file_size, image_size, data_size, w, ht));
    }

    std::vector<Rgb8Pixel> pixels(w * ht);
    for (std::size_t y = 0; y < ht; ++y) {
        const std::uint8_t* src = h + pixel_offset + (ht - 1 - y) * stride;
        Rgb8Pixel* dst = pixels.data() + y * w;
        for (std::size_t x = 0; x < w; ++x) {
            dst[x] = Rgb8Pixel{src[3 * x + 2], src[3 * x + 1], src[3 * x]};
        }
    }
    return ImageBuffer(w, ht, std::move(pixels));
}

std::vector<std::uint8_t> write_bmp(const ImageBuffer& img)
{
    const std::size_t w = img.width();
    const std::size_t ht = img.height();
    const std::size_t stride = bmp_row_stride(w);
    const std::size_t data_size = stride * ht;
    if (kBmpPixelOffset + data_size > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("image too large for a BMP file");
    }

    std::vector<std::uint8_t> out(kBmpPixelOffset + data_size, 0);
    std::uint8_t* h = out.data();
    h[0] = 'B';
    h[1] = 'M';
    put32(h + 2, static_cast<std::uint32_t>(out.size()));
    put32(h + 10, static_cast<std::uint32_t>(kBmpPixelOffset));

    std::uint8_t* info = h + kBmpFileHeaderSize;
    put32(info, static_cast<std::uint32_t>(kBmpInfoHeaderSize));
    put32(info + 4, static_cast<std::uint32_t>(w));
    put32(info + 8, static_cast<std::uint32_t>(ht));
    put16(info + 12, 1);
    put16(info + 14, 24);
    put32(info + 20, static_cast<std::uint32_t>(data_size));

    for (std::size_t y = 0; y < ht; ++y) {
        std::uint8_t* dst = h + kBmpPixelOffset + (ht - 1 - y) * stride;
        const auto row = img.row(y);
        for (std::size_t x = 0; x < w; ++x) {
            dst[3 * x] = row[x].b;
            dst[3 * x + 1] = row[x].g;
            dst[3 * x + 2] = row[x].r;
        }
    }
    return out;
}

SkinMask read_mask(std::span<const std::uint8_t> bytes)
{
    const ImageBuffer img = read_bmp(bytes);
    SkinMask mask(img.width(), img.height());
    auto bits = mask.bits();
    const auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        bits[i] = (px[i].r | px[i].g | px[i].b) != 0 ? 1 : 0;
    }
    return mask;
}

std::vector<std::uint8_t> write_mask(const SkinMask& mask)
{
    ImageBuffer img(mask.width(), mask.height());
    auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        px[i] = mask[i] ? Rgb8Pixel{255, 255, 255} : Rgb8Pixel{0, 0, 0};
    }
    return write_bmp(img);
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError(fmt::format("read error on '{}'", path.string()));
    }
    return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError(fmt::format("write error on '{}'", path.string()));
    }
}

ImageBuffer load_bmp(const std::filesystem::path& path)
{
    const auto bytes = read_file_bytes(path);
    try {
        return read_bmp(bytes);
    } catch (const BmpError& e) {
        throw BmpError(e.kind, fmt::format("{}: {}", path.string(), e.what()));
    }
}

SkinMask load_mask(const std::filesystem::path& path)
{
    const auto bytes = read_file_bytes(path);
    try {
        return read_mask(bytes);
    } catch (const BmpError& e) {
        throw BmpError(e.kind, fmt::format("{}: {}", path.string(), e.what()));
    }
}

}  // namespace skindet
