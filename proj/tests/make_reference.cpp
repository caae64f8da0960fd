// Regenerates tests/reference/synthetic_reference.csv from the scalar oracle.
// Usage: make_reference <dataset_dir> <out_csv>
//
// Decoding, manifest parsing, scoring and rate rendering are all done here without the library,
// so the frozen table is an independent record of what the detector should produce.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracle/reference_oracle.hpp"

namespace {

std::vector<unsigned char> read_all(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return {std::istreambuf_iterator<char>(in), {}};
}

std::uint32_t u32(const std::vector<unsigned char>& b, std::size_t at)
{
    return b[at] | (b[at + 1] << 8) | (b[at + 2] << 16) | (std::uint32_t(b[at + 3]) << 24);
}

// Bottom-up 24-bit uncompressed only.
skindet::ImageBuffer decode(const std::string& path)
{
    const auto b = read_all(path);
    if (b.size() < 54 || b[0] != 'B' || b[1] != 'M' || b[28] != 24) {
        throw std::runtime_error("unexpected bitmap " + path);
    }
    const std::size_t offset = u32(b, 10);
    const std::size_t w = u32(b, 18);
    const std::size_t h = u32(b, 22);
    const std::size_t stride = (w * 3 + 3) / 4 * 4;
    skindet::ImageBuffer img(w, h);
    for (std::size_t y = 0; y < h; ++y) {
        const std::size_t row = offset + (h - 1 - y) * stride;
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t at = row + 3 * x;
            img.at(x, y) = skindet::Rgb8Pixel{b[at + 2], b[at + 1], b[at]};
        }
    }
    return img;
}

std::string pct(std::uint64_t num, std::uint64_t den)
{
    if (den == 0) {
        return "NA";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", 100.0 * double(num) / double(den));
    return buf;
}

std::string row(const std::string& model, const std::string& image, const std::string& split, const oracle::Counts& c)
{
    std::ostringstream s;
    s << model << ',' << image << ',' << split << ',' << c.tp << ',' << c.tn << ',' << c.fp << ',' << c.fn << ','
      << pct(c.tp, c.tp + c.fn) << ',' << pct(c.tn, c.tn + c.fp) << ',' << pct(c.fp, c.tn + c.fp) << ','
      << pct(c.fn, c.tp + c.fn) << '\n';
    return s.str();
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 3) {
        std::cerr << "usage: make_reference <dataset_dir> <out_csv>\n";
        return 2;
    }
    const std::string dir = argv[1];
    std::ifstream manifest(dir + "/manifest.csv");
    if (!manifest) {
        std::cerr << "cannot open manifest\n";
        return 3;
    }

    struct Entry {
        std::string image, truth, split;
    };
    std::vector<Entry> entries;
    for (std::string line; std::getline(manifest, line);) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::stringstream ss(line);
        Entry e;
        std::getline(ss, e.image, ',');
        std::getline(ss, e.truth, ',');
        std::getline(ss, e.split, ',');
        entries.push_back(e);
    }

    const struct {
        const char* name;
        int model;
        std::array<double, 6> t;
    } models[] = {{"hsv", 0, oracle::kPaperHsv}, {"yuv", 1, oracle::kPaperYuv}, {"yuvyiq", 2, oracle::kPaperYuvYiq}};

    std::string out = "model,image,split,tp,tn,fp,fn,True Positive,True Negative,False Positive,False Negative\n";
    try {
        for (const auto& m : models) {
            oracle::Counts pooled;
            for (const auto& e : entries) {
                const auto img = decode(dir + "/" + e.image);
                skindet::SkinMask truth(img.width(), img.height(), e.truth == "ALL_SKIN");
                if (e.truth != "ALL_SKIN" && e.truth != "NO_SKIN") {
                    const auto mask = decode(dir + "/" + e.truth);
                    for (std::size_t y = 0; y < img.height(); ++y) {
                        for (std::size_t x = 0; x < img.width(); ++x) {
                            const auto p = mask.at(x, y);
                            truth.set(x, y, p.r != 0 || p.g != 0 || p.b != 0);
                        }
                    }
                }
                const oracle::Counts c = oracle::score(m.model, img, truth, m.t);
                pooled.tp += c.tp;
                pooled.tn += c.tn;
                pooled.fp += c.fp;
                pooled.fn += c.fn;
                out += row(m.name, e.image, e.split, c);
            }
            out += row(m.name, "AGGREGATE(micro)", "all", pooled);
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 3;
    }
    std::ofstream(argv[2], std::ios::binary) << out;
    return 0;
}
