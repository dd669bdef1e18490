#pragma once

#include <cstdint>

#include "tintmark/image.hpp"

namespace tintmark {

/// How the per-pixel channel mask is computed.
///
/// PaperFaithful evaluates the intensity gate on the raw channel values, so
/// LSB substitution can flip the mask of a borderline pixel between embed
/// and extract.  Stable evaluates it with every LSB cleared first, which
/// makes the mask invariant under any LSB substitution and the embed/extract
/// round trip exact.
enum class SelectionMode { PaperFaithful, Stable };

/// Hue in degrees [0, 360), saturation in [0, 1], intensity in [0, 255].
struct HsiPixel {
    double h = 0.0;
    double s = 0.0;
    double i = 0.0;
};

/// RGB -> HSI decomposition.
///
/// I is the channel mean, S = 1 - 3*min(r,g,b)/(r+g+b), and H is the
/// arccos-based hue angle, mirrored to 360-theta when b > g.  Conventions:
/// h = 0 for achromatic pixels (the angle's denominator vanishes) and s = 0
/// when r+g+b = 0.
HsiPixel rgb_to_hsi(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Exact channel mean (r+g+b)/3, computed from the integer sum.
double intensity(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Channels whose value is >= the pixel intensity.
///
/// The comparison is done in integer form, 3*value >= r+g+b, so ties at the
/// boundary are deterministic.  In Stable mode the predicate is evaluated on
/// LSB-cleared values.  The result is never empty: the largest channel always
/// satisfies the gate.
ChannelMask select_channels(std::uint8_t r, std::uint8_t g, std::uint8_t b, SelectionMode mode);

inline ChannelMask select_channels(Rgb p, SelectionMode mode) {
    return select_channels(p.r, p.g, p.b, mode);
}

}  // namespace tintmark
