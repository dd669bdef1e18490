#pragma once

#include <string>

#include "tintmark/image.hpp"

namespace tintmark {

struct QualityReport {
    double mse = 0.0;
    double psnr = 0.0;  // +inf when the images are identical
};

struct SimilarityReport {
    double nc = 0.0;
    double sc = 0.0;
};

/// Mean squared error over all three channels: sum of squared sample
/// differences divided by 3*M*N.  Dimensions must match.
double mse(const RgbImage& a, const RgbImage& b);

/// 10 * log10((2^8 - 1)^2 / MSE) in dB; +inf when MSE is zero.
double psnr(const RgbImage& a, const RgbImage& b);
double psnr_from_mse(double mse);

/// Normalized correlation: sum(orig * extracted) / sum(orig^2).  For binary
/// matrices this is the fraction of original 1-bits that survive as 1-bits.
/// Throws std::invalid_argument if the original is all-zero.
double nc(const BitMatrix& original, const BitMatrix& extracted);

/// Pearson correlation between the two bit matrices, in [-1, 1].  Throws
/// std::invalid_argument if either matrix is constant (zero variance).
double sc(const BitMatrix& original, const BitMatrix& extracted);

QualityReport quality(const RgbImage& a, const RgbImage& b);
SimilarityReport similarity(const BitMatrix& original, const BitMatrix& extracted);

/// Fixed-width "%.6g" rendering with infinity spelled "inf"; used for report
/// lines and CSV cells so output is stable across platforms.
std::string format_metric(double value);

}  // namespace tintmark
