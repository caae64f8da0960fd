#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skindet/errors.hpp"
#include "skindet/image.hpp"

namespace skindet {

enum class Split { train, test };

std::string_view split_name(Split s) noexcept;

/// Ground truth is a mask file, or a whole-image label synthesized on demand.
struct MaskFile {
    std::string path;
    friend bool operator==(const MaskFile&, const MaskFile&) = default;
};
struct AllSkin {
    friend bool operator==(const AllSkin&, const AllSkin&) = default;
};
struct NoSkin {
    friend bool operator==(const NoSkin&, const NoSkin&) = default;
};
using GroundTruth = std::variant<MaskFile, AllSkin, NoSkin>;

struct ManifestEntry {
    std::string image_path;
    GroundTruth truth;
    Split split{Split::train};
    std::size_t line{0};
};

struct ManifestCounts {
    std::size_t entries{0};
    std::size_t train{0};
    std::size_t test{0};
    std::size_t all_skin{0};
    std::size_t no_skin{0};
    std::size_t mask_backed{0};
};

/// Labeled image collection. Relative paths resolve against base_dir.
struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    std::filesystem::path base_dir;

    ManifestCounts counts() const noexcept;
    std::filesystem::path resolve(std::string_view path) const;
};

struct ManifestError : ValidationError {
    using ValidationError::ValidationError;
};

/// Parses manifest CSV: `image_path,truth,split` per line, where truth is a mask path,
/// ALL_SKIN or NO_SKIN, and split is train or test. Blank and '#' lines are ignored.
/// All problems are collected and thrown together as one ManifestError with line numbers.
DatasetManifest read_manifest(std::string_view text, std::filesystem::path base_dir = {});

/// Reads a manifest file; paths inside resolve relative to its directory.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Serializes back to the CSV form accepted by read_manifest.
std::string write_manifest(const DatasetManifest& m);

/// Restricts to one split; std::nullopt keeps everything.
DatasetManifest filter_split(const DatasetManifest& m, std::optional<Split> split);

/// An image and its realized ground-truth mask.
struct LabeledImage {
    std::string path;
    Split split{Split::train};
    ImageBuffer image;
    SkinMask truth;
};

/// Images and masks decoded once, ready for repeated scoring.
struct Dataset {
    std::vector<LabeledImage> images;

    /// FNV-1a over paths, splits, pixels and truth bits, as 16 hex digits.
    std::string fingerprint() const;
};

/// Raised when a dataset file is missing, unreadable, or its mask does not match its image.
struct DatasetError : Error {
    DatasetError(std::string path, const std::string& what, bool io_failure)
        : Error(what), path(std::move(path)), io_failure(io_failure)
    {
    }
    std::string path;
    /// False when the files were readable but inconsistent (e.g. mask size mismatch).
    bool io_failure;
};

/// Decodes every entry of the manifest. Entries load in parallel on `workers` threads.
Dataset load_dataset(const DatasetManifest& m, unsigned workers = 1);

/// Builds the ground-truth mask for an entry whose image is already decoded.
SkinMask realize_truth(const GroundTruth& truth, const ImageBuffer& image, const DatasetManifest& m);

}  // namespace skindet
