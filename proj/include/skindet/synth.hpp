#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skindet/image.hpp"
#include "skindet/manifest.hpp"

namespace skindet {

enum class SynthProfile {
    /// Skin hue uniform in [10, 30] at moderate saturation; background is exact gray or blue.
    clean,
    /// Wider skin hue spread with shadows; background mixes gray, blue, green, warm and red tones.
    realistic,
};

struct SynthOptions {
    std::size_t images{20};
    std::size_t width{64};
    std::size_t height{64};
    std::size_t train{12};
    std::uint64_t seed{2012};
    SynthProfile profile{SynthProfile::clean};
};

struct SynthImage {
    std::string name;
    ImageBuffer image;
    SkinMask truth;
    GroundTruth kind;
    Split split{Split::train};
};

/// Deterministic for given options on any platform (mt19937_64 plus integer/arith mapping only).
/// Class mix follows 30% all-skin, 35% no-skin, rest partially covered by skin ellipses.
std::vector<SynthImage> generate_dataset(const SynthOptions& options);

/// In-memory dataset with the same paths write_dataset would use.
Dataset to_dataset(const std::vector<SynthImage>& images);

/// Writes images/<name>.bmp, masks/<name>.bmp for partial images, and manifest.csv.
/// Returns the manifest as written.
DatasetManifest write_dataset(const std::vector<SynthImage>& images, const std::filesystem::path& dir);

}  // namespace skindet
