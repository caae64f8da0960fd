#include "skindet/manifest.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "skindet/bmp.hpp"
#include "skindet/parallel.hpp"

namespace skindet {
namespace {

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

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return fields;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

class Fnv1a {
public:
    void add(const void* data, std::size_t n) noexcept
    {
        const auto* p = static_cast<const std::uint8_t*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ = (hash_ ^ p[i]) * 0x100000001b3ULL;
        }
    }
    void add(std::string_view s) noexcept
    {
        add_u64(s.size());
        add(s.data(), s.size());
    }
    void add_u64(std::uint64_t v) noexcept
    {
        std::uint8_t b[8];
        for (int k = 0; k < 8; ++k) {
            b[k] = static_cast<std::uint8_t>(v >> (8 * k));
        }
        add(b, 8);
    }
    std::uint64_t value() const noexcept { return hash_; }

private:
    std::uint64_t hash_{0xcbf29ce484222325ULL};
};

}  // namespace

std::string_view split_name(Split s) noexcept
{
    return s == Split::train ? "train" : "test";
}

ManifestCounts DatasetManifest::counts() const noexcept
{
    ManifestCounts c;
    c.entries = entries.size();
    for (const auto& e : entries) {
        (e.split == Split::train ? c.train : c.test)++;
        if (std::holds_alternative<AllSkin>(e.truth)) {
            ++c.all_skin;
        } else if (std::holds_alternative<NoSkin>(e.truth)) {
            ++c.no_skin;
        } else {
            ++c.mask_backed;
        }
    }
    return c;
}

std::filesystem::path DatasetManifest::resolve(std::string_view path) const
{
    std::filesystem::path p{std::string{path}};
    if (p.is_absolute() || base_dir.empty()) {
        return p;
    }
    return base_dir / p;
}

DatasetManifest read_manifest(std::string_view text, std::filesystem::path base_dir)
{
    DatasetManifest m;
    m.base_dir = std::move(base_dir);
    std::vector<std::string> problems;
    std::unordered_map<std::string, std::size_t> first_line;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            problems.push_back(fmt::format("line {}: expected 3 fields (image,truth,split), got {}", line_no,
                                           fields.size()));
            continue;
        }
        if (fields[0].empty() || fields[1].empty()) {
            problems.push_back(fmt::format("line {}: empty image path or truth field", line_no));
            continue;
        }

        ManifestEntry e;
        e.line = line_no;
        e.image_path = std::string{fields[0]};
        if (fields[1] == "ALL_SKIN") {
            e.truth = AllSkin{};
        } else if (fields[1] == "NO_SKIN") {
            e.truth = NoSkin{};
        } else {
            e.truth = MaskFile{std::string{fields[1]}};
        }
        if (fields[2] == "train") {
            e.split = Split::train;
        } else if (fields[2] == "test") {
            e.split = Split::test;
        } else {
            problems.push_back(fmt::format("line {}: unknown split '{}' (expected train or test)", line_no, fields[2]));
            continue;
        }

        const auto [it, inserted] = first_line.emplace(e.image_path, line_no);
        if (!inserted) {
            problems.push_back(fmt::format("line {}: duplicate image path '{}' (first listed on line {})", line_no,
                                           e.image_path, it->second));
            continue;
        }
        m.entries.push_back(std::move(e));
    }

    if (!problems.empty()) {
        std::string msg = "invalid manifest:";
        for (const auto& p : problems) {
            msg += "\n  " + p;
        }
        throw ManifestError(msg);
    }
    return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open manifest '{}'", path.string()));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return read_manifest(ss.str(), path.parent_path());
    } catch (const ManifestError& e) {
        throw ManifestError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string write_manifest(const DatasetManifest& m)
{
    std::string out;
    for (const auto& e : m.entries) {
        std::string truth;
        if (const auto* f = std::get_if<MaskFile>(&e.truth)) {
            truth = f->path;
        } else {
            truth = std::holds_alternative<AllSkin>(e.truth) ? "ALL_SKIN" : "NO_SKIN";
        }
        out += fmt::format("{},{},{}\n", e.image_path, truth, split_name(e.split));
    }
    return out;
}

DatasetManifest filter_split(const DatasetManifest& m, std::optional<Split> split)
{
    DatasetManifest out;
    out.base_dir = m.base_dir;
    for (const auto& e : m.entries) {
        if (!split || e.split == *split) {
            out.entries.push_back(e);
        }
    }
    return out;
}

std::string Dataset::fingerprint() const
{
    Fnv1a h;
    h.add_u64(images.size());
    for (const auto& li : images) {
        h.add(li.path);
        h.add(split_name(li.split));
        h.add_u64(li.image.width());
        h.add_u64(li.image.height());
        for (const auto& p : li.image.pixels()) {
            const std::uint8_t rgb[3] = {p.r, p.g, p.b};
            h.add(rgb, 3);
        }
        const auto bits = li.truth.bits();
        h.add(bits.data(), bits.size());
    }
    return fmt::format("{:016x}", h.value());
}

SkinMask realize_truth(const GroundTruth& truth, const ImageBuffer& image, const DatasetManifest& m)
{
    if (std::holds_alternative<AllSkin>(truth)) {
        return SkinMask(image.width(), image.height(), true);
    }
    if (std::holds_alternative<NoSkin>(truth)) {
        return SkinMask(image.width(), image.height(), false);
    }
    const auto& file = std::get<MaskFile>(truth);
    SkinMask mask = load_mask(m.resolve(file.path));
    if (mask.width() != image.width() || mask.height() != image.height()) {
        throw ValidationError(fmt::format("mask '{}' is {}x{} but its image is {}x{}", file.path, mask.width(),
                                          mask.height(), image.width(), image.height()));
    }
    return mask;
}

Dataset load_dataset(const DatasetManifest& m, unsigned workers)
{
    Dataset ds;
    ds.images.resize(m.entries.size());
    parallel_for(m.entries.size(), resolve_workers(workers), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto& e = m.entries[k];
            try {
                LabeledImage li;
                li.path = e.image_path;
                li.split = e.split;
                li.image = load_bmp(m.resolve(e.image_path));
                li.truth = realize_truth(e.truth, li.image, m);
                ds.images[k] = std::move(li);
            } catch (const ValidationError& ex) {
                throw DatasetError(e.image_path,
                                   fmt::format("manifest line {} ({}): {}", e.line, e.image_path, ex.what()), false);
            } catch (const std::exception& ex) {
                throw DatasetError(e.image_path,
                                   fmt::format("manifest line {} ({}): {}", e.line, e.image_path, ex.what()), true);
            }
        }
    });
    return ds;
}

}  // namespace skindet
