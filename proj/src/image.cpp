#include "tintmark/image.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tintmark {

namespace {

void check_dims(int width, int height, const char* what) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument(std::string(what) + " dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

RgbImage::RgbImage(int width, int height) : width_(width), height_(height) {
    check_dims(width, height, "image");
    const std::size_t n = pixel_count();
    red_.assign(n, 0);
    green_.assign(n, 0);
    blue_.assign(n, 0);
}

RgbImage::RgbImage(int width, int height,
                   std::vector<std::uint8_t> red,
                   std::vector<std::uint8_t> green,
                   std::vector<std::uint8_t> blue)
    : width_(width), height_(height),
      red_(std::move(red)), green_(std::move(green)), blue_(std::move(blue)) {
    check_dims(width, height, "image");
    const std::size_t n = pixel_count();
    if (red_.size() != n || green_.size() != n || blue_.size() != n) {
        throw std::invalid_argument("channel plane size does not match " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    check_dims(cols, rows, "bit matrix");
    cells_.assign(cell_count(), 0);
}

BitMatrix::BitMatrix(int rows, int cols, std::vector<std::uint8_t> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    check_dims(cols, rows, "bit matrix");
    if (cells_.size() != cell_count()) {
        throw std::invalid_argument("cell vector size does not match " + std::to_string(rows) +
                                    "x" + std::to_string(cols));
    }
    if (std::any_of(cells_.begin(), cells_.end(), [](std::uint8_t c) { return c > 1; })) {
        throw std::invalid_argument("bit matrix cells must be 0 or 1");
    }
}

std::size_t BitMatrix::ones_count() const {
    return std::accumulate(cells_.begin(), cells_.end(), std::size_t{0});
}

}  // namespace tintmark
