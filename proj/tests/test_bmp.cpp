#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "skindet/bmp.hpp"
#include "test_support.hpp"

using namespace skindet;

namespace {

using Bytes = std::vector<std::uint8_t>;

void le32(Bytes& b, std::uint32_t v)
{
    for (int k = 0; k < 4; ++k) {
        b.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
    }
}

void le16(Bytes& b, std::uint16_t v)
{
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
}

// Canonical 24-bit BMP header written field by field from the format definition.
Bytes header(std::int32_t width, std::int32_t height, std::uint32_t data_size)
{
    Bytes b{'B', 'M'};
    le32(b, 54 + data_size);  // bfSize
    le16(b, 0);               // bfReserved1
    le16(b, 0);               // bfReserved2
    le32(b, 54);              // bfOffBits
    le32(b, 40);              // biSize
    le32(b, static_cast<std::uint32_t>(width));
    le32(b, static_cast<std::uint32_t>(height));
    le16(b, 1);               // biPlanes
    le16(b, 24);              // biBitCount
    le32(b, 0);               // biCompression
    le32(b, data_size);       // biSizeImage
    le32(b, 0);               // biXPelsPerMeter
    le32(b, 0);               // biYPelsPerMeter
    le32(b, 0);               // biClrUsed
    le32(b, 0);               // biClrImportant
    return b;
}

Bytes red_1x1()
{
    Bytes b = header(1, 1, 4);
    b.insert(b.end(), {0, 0, 255, 0});
    return b;
}

BmpErrorKind error_kind(const Bytes& b)
{
    try {
        read_bmp(b);
    } catch (const BmpError& e) {
        return e.kind;
    }
    FAIL("expected a BmpError");
    return BmpErrorKind::truncated_header;
}

}  // namespace

TEST_CASE("1x1 red fixture")
{
    const Bytes fixture = red_1x1();
    REQUIRE(fixture.size() == 58);
    const ImageBuffer img = read_bmp(fixture);
    CHECK(img.width() == 1);
    CHECK(img.height() == 1);
    CHECK(img.at(0, 0) == Rgb8Pixel{255, 0, 0});
    CHECK(write_bmp(img) == fixture);
}

TEST_CASE("2x2 fixture is flipped bottom-up")
{
    // Top-left red, top-right green, bottom-left blue, bottom-right white.
    Bytes b = header(2, 2, 16);
    // File row 0 is the bottom image row.
    b.insert(b.end(), {255, 0, 0, 255, 255, 255, 0, 0});
    b.insert(b.end(), {0, 0, 255, 0, 255, 0, 0, 0});
    const ImageBuffer img = read_bmp(b);
    CHECK(img.at(0, 0) == Rgb8Pixel{255, 0, 0});
    CHECK(img.at(1, 0) == Rgb8Pixel{0, 255, 0});
    CHECK(img.at(0, 1) == Rgb8Pixel{0, 0, 255});
    CHECK(img.at(1, 1) == Rgb8Pixel{255, 255, 255});
    CHECK(write_bmp(img) == b);
}

TEST_CASE("row padding")
{
    CHECK(bmp_row_stride(1) == 4);
    CHECK(bmp_row_stride(2) == 8);
    CHECK(bmp_row_stride(3) == 12);
    CHECK(bmp_row_stride(4) == 12);
    CHECK(bmp_row_stride(5) == 16);

    const ImageBuffer img(3, 2, Rgb8Pixel{1, 2, 3});
    const Bytes out = write_bmp(img);
    CHECK(out.size() == 54 + 24);
    for (std::size_t row = 0; row < 2; ++row) {
        const std::size_t pad = 54 + row * 12 + 9;
        CHECK(out[pad] == 0);
        CHECK(out[pad + 1] == 0);
        CHECK(out[pad + 2] == 0);
    }
}

TEST_CASE("canonical files survive decode and re-encode for widths 1 to 5")
{
    std::mt19937_64 rng{12};
    for (std::int32_t w = 1; w <= 5; ++w) {
        for (std::int32_t h = 1; h <= 3; ++h) {
            const std::uint32_t stride = (static_cast<std::uint32_t>(w) * 3 + 3) & ~3u;
            Bytes b = header(w, h, stride * static_cast<std::uint32_t>(h));
            for (std::int32_t y = 0; y < h; ++y) {
                for (std::uint32_t k = 0; k < stride; ++k) {
                    b.push_back(k < static_cast<std::uint32_t>(w) * 3 ? static_cast<std::uint8_t>(rng()) : 0);
                }
            }
            CHECK(write_bmp(read_bmp(b)) == b);
        }
    }
}

TEST_CASE("random images round-trip")
{
    std::mt19937_64 rng{13};
    for (int k = 0; k < 100; ++k) {
        const ImageBuffer img = testing::random_image(rng, 17);
        CHECK(read_bmp(write_bmp(img)) == img);
    }
}

TEST_CASE("decode errors are distinct")
{
    CHECK(error_kind({}) == BmpErrorKind::truncated_header);
    try {
        read_bmp(Bytes{});
    } catch (const BmpError& e) {
        CHECK(std::string{e.what()}.starts_with("truncated header"));
    }

    Bytes bad_magic = red_1x1();
    bad_magic[0] = 'X';
    CHECK(error_kind(bad_magic) == BmpErrorKind::bad_magic);

    Bytes v5 = red_1x1();
    v5[14] = 124;
    CHECK(error_kind(v5) == BmpErrorKind::unsupported_header);

    Bytes depth = red_1x1();
    depth[28] = 32;
    CHECK(error_kind(depth) == BmpErrorKind::unsupported_bit_depth);

    Bytes rle = red_1x1();
    rle[30] = 1;
    CHECK(error_kind(rle) == BmpErrorKind::unsupported_compression);

    Bytes top_down = header(1, -1, 4);
    top_down.insert(top_down.end(), {0, 0, 255, 0});
    CHECK(error_kind(top_down) == BmpErrorKind::top_down_rows);

    Bytes zero_width = header(0, 1, 0);
    CHECK(error_kind(zero_width) == BmpErrorKind::bad_dimensions);

    Bytes offset = red_1x1();
    offset[10] = 200;
    CHECK(error_kind(offset) == BmpErrorKind::bad_pixel_offset);

    Bytes truncated = red_1x1();
    truncated.resize(56);
    CHECK(error_kind(truncated) == BmpErrorKind::truncated_pixels);

    Bytes size = red_1x1();
    size[2] = 200;  // bfSize larger than the data
    CHECK(error_kind(size) == BmpErrorKind::size_mismatch);
}

TEST_CASE("masks")
{
    SkinMask white(2, 2, true);
    CHECK(read_mask(write_mask(white)).count() == 4);

    std::mt19937_64 rng{14};
    for (int k = 0; k < 20; ++k) {
        const SkinMask m = testing::random_mask(rng, 1 + rng() % 9, 1 + rng() % 9);
        CHECK(read_mask(write_mask(m)) == m);
    }

    ImageBuffer img(2, 1, Rgb8Pixel{0, 0, 0});
    img.at(1, 0) = Rgb8Pixel{128, 128, 128};
    const SkinMask tolerant = read_mask(write_bmp(img));
    CHECK_FALSE(tolerant.at(0, 0));
    CHECK(tolerant.at(1, 0));

    const Bytes strict = write_mask(tolerant);
    CHECK(read_bmp(strict).at(1, 0) == Rgb8Pixel{255, 255, 255});
}

TEST_CASE("file helpers")
{
    testing::TempDir dir;
    const ImageBuffer img(4, 3, Rgb8Pixel{9, 8, 7});
    write_file_bytes(dir / "a.bmp", write_bmp(img));
    CHECK(load_bmp(dir / "a.bmp") == img);
    CHECK_THROWS_AS(load_bmp(dir / "missing.bmp"), IoError);
}
