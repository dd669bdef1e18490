#include "tintmark/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>

namespace tintmark {

namespace {

constexpr double kPeakSquared = 255.0 * 255.0;  // (2^8 - 1)^2

void check_image_dims(const RgbImage& a, const RgbImage& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("image sizes differ: " + std::to_string(a.width()) + "x" +
                                    std::to_string(a.height()) + " vs " +
                                    std::to_string(b.width()) + "x" + std::to_string(b.height()));
    }
}

void check_matrix_dims(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix sizes differ: " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                    "x" + std::to_string(b.cols()));
    }
}

std::int64_t squared_error(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t d = std::int64_t{a[i]} - std::int64_t{b[i]};
        sum += d * d;
    }
    return sum;
}

}  // namespace

double mse(const RgbImage& a, const RgbImage& b) {
    check_image_dims(a, b);
    const std::int64_t sum = squared_error(a.red(), b.red()) +
                             squared_error(a.green(), b.green()) +
                             squared_error(a.blue(), b.blue());
    return static_cast<double>(sum) / (3.0 * static_cast<double>(a.pixel_count()));
}

double psnr_from_mse(double mse) {
    if (mse < 0.0) throw std::invalid_argument("MSE cannot be negative");
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeakSquared / mse);
}

double psnr(const RgbImage& a, const RgbImage& b) {
    return psnr_from_mse(mse(a, b));
}

double nc(const BitMatrix& original, const BitMatrix& extracted) {
    check_matrix_dims(original, extracted);
    std::int64_t both = 0, orig = 0;
    const auto a = original.cells();
    const auto b = extracted.cells();
    for (std::size_t i = 0; i < a.size(); ++i) {
        orig += a[i];          // I^2 == I for bits
        both += a[i] & b[i];   // I * I'
    }
    if (orig == 0) {
        throw std::invalid_argument("NC is undefined for an all-zero original watermark");
    }
    return static_cast<double>(both) / static_cast<double>(orig);
}

double sc(const BitMatrix& original, const BitMatrix& extracted) {
    check_matrix_dims(original, extracted);
    const auto a = original.cells();
    const auto b = extracted.cells();
    const double n = static_cast<double>(a.size());

    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) {
        throw std::invalid_argument("SC is undefined for a constant matrix (zero variance)");
    }
    return cov / (std::sqrt(var_a) * std::sqrt(var_b));
}

QualityReport quality(const RgbImage& a, const RgbImage& b) {
    const double m = mse(a, b);
    return {m, psnr_from_mse(m)};
}

SimilarityReport similarity(const BitMatrix& original, const BitMatrix& extracted) {
    return {nc(original, extracted), sc(original, extracted)};
}

std::string format_metric(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

}  // namespace tintmark
