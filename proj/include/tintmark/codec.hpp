#pragma once

#include <cstddef>
#include <cstdint>

#include "tintmark/colorspace.hpp"
#include "tintmark/image.hpp"

namespace tintmark {

struct EmbedConfig {
    SelectionMode mode = SelectionMode::Stable;
};

/// Extraction must use the same selection mode as embedding for correct
/// recovery.  Multi-channel pixels decode by majority vote over the selected
/// LSBs; a tie is broken by fixed channel priority R > G > B.
struct ExtractConfig {
    SelectionMode mode = SelectionMode::Stable;
};

/// Deterministic pseudo-random key matrix from a 64-bit seed.
///
/// Cell i in row-major order takes bit (i mod 64), counting from the least
/// significant bit, of word floor(i / 64) of the splitmix64 stream seeded
/// with `seed`.  Marginal bit frequency is ~0.5.  Throws on non-positive
/// dimensions.
BitMatrix keygen(int rows, int cols, std::uint64_t seed);

/// Cell-wise XOR; its own inverse.  Dimensions must match.
BitMatrix mask_watermark(const BitMatrix& w, const BitMatrix& k);

/// Embeds watermark w, masked with key k, into the cover image.
///
/// Cover, watermark and key must all be the same square m x m size.  For
/// each pixel the channel mask is computed per cfg.mode and the masked bit
/// (w XOR k) replaces the LSB of every selected channel; unselected channels
/// and all seven high bits of every channel are untouched, so no sample
/// moves by more than 1.
RgbImage embed(const RgbImage& cover, const BitMatrix& w, const BitMatrix& k,
               EmbedConfig cfg = {});

/// Blind extraction: recovers the watermark from the marked image and the
/// key alone.  Recomputes each pixel's channel mask per cfg.mode, decodes
/// one bit from the selected LSBs (majority vote, ties to R > G > B) and
/// unmasks the result with k.
BitMatrix extract(const RgbImage& marked, const BitMatrix& k, ExtractConfig cfg = {});

/// Pixel counts by channel-mask size; one/two/three always sum to the pixel
/// count since the mask is never empty.
struct CapacityProfile {
    std::size_t one_channel = 0;
    std::size_t two_channels = 0;
    std::size_t three_channels = 0;
};

CapacityProfile capacity_profile(const RgbImage& cover, SelectionMode mode);

}  // namespace tintmark
