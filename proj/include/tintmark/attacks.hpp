#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tintmark/image.hpp"

namespace tintmark {

enum class AttackKind { Crop, JpegCompress, PillboxBlur, SaltPepper };

/// One attack cell: a kind, a single strength parameter and (for seeded
/// attacks) a seed.  Strength ranges: crop percent [0, 100], jpeg quality
/// [1, 100], blur radius > 0, salt-pepper density [0, 1].
struct AttackSpec {
    AttackKind kind = AttackKind::Crop;
    double strength = 0.0;
    std::uint64_t seed = 0;
};

/// Blacks out the top rows spanning the full width; the blacked row count is
/// round(percent/100 * height).  Dimensions are preserved.
RgbImage crop(const RgbImage& img, double percent);

/// Baseline JPEG encode at the given quality factor followed by decode, all
/// in memory.  Dimensions are preserved; pixel values generally are not.
RgbImage jpeg_compress(const RgbImage& img, int quality);

/// Circular averaging (pillbox) filter.  The kernel support is the square of
/// side 2*ceil(radius)+1; each cell's weight is the area of its unit square
/// covered by the disk of the given radius, normalized to sum 1.  Borders
/// are handled by edge replication; results round to nearest and clamp.
RgbImage pillbox_blur(const RgbImage& img, double radius);

/// Sets round(density * width * height) distinct pixels, chosen uniformly at
/// random from the seeded splitmix64 stream, to pure black or pure white
/// with equal probability.  Deterministic for a fixed seed.
RgbImage salt_pepper(const RgbImage& img, double density, std::uint64_t seed);

RgbImage apply_attack(const RgbImage& img, const AttackSpec& spec);

/// Normalized pillbox kernel weights, indexed [row][col].
std::vector<std::vector<double>> pillbox_kernel(double radius);

/// Unnormalized disk-coverage areas; their total is pi*radius^2.
std::vector<std::vector<double>> pillbox_kernel_raw(double radius);

/// CLI / grid-file names: "crop", "jpeg", "blur", "saltpepper".
std::string_view attack_kind_name(AttackKind kind);
AttackKind attack_kind_from_name(std::string_view name);

}  // namespace tintmark
