#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "tintmark/attacks.hpp"
#include "tintmark/codec.hpp"
#include "tintmark/image.hpp"

namespace tintmark {

/// One scored sweep cell.  nc/sc compare the original watermark with the
/// watermark extracted from the attacked image; mse/psnr compare the
/// watermarked image with the attacked image (attack-induced distortion).
struct SweepRow {
    std::string cover_id;
    std::string attack_kind;
    double strength = 0.0;
    std::uint64_t seed = 0;
    double nc = 0.0;
    double sc = 0.0;
    double mse = 0.0;
    double psnr = 0.0;
};

/// Parses a grid config: one attack per line,
///
///   <kind> strengths=v1,v2,... [seeds=s1,s2,...]
///
/// Blank lines and lines starting with '#' are skipped.  seeds defaults to
/// the single seed 0.  Cells expand in file order, strengths outer, seeds
/// inner.  Throws std::invalid_argument on an unknown kind, a malformed
/// line, or when the whole grid contains no attack cells.
std::vector<AttackSpec> parse_grid(std::istream& in);
std::vector<AttackSpec> parse_grid_file(const std::string& path);

/// Runs embed once, then attack/extract/score per cell, in grid order.  A
/// failing cell aborts the sweep with the cell identified in the error.
std::vector<SweepRow> run_sweep(const RgbImage& cover, const BitMatrix& watermark,
                                const BitMatrix& key, const std::vector<AttackSpec>& cells,
                                SelectionMode mode, const std::string& cover_id);

/// CSV with fixed header cover_id,attack_kind,strength,seed,nc,sc,mse,psnr;
/// psnr may be "inf".
std::string format_csv(const std::vector<SweepRow>& rows);

/// Writes the CSV atomically: a temporary file in the same directory is
/// renamed onto `path` only after the full contents are on disk.
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace tintmark
