#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace tintmark {

/// One 24-bit color pixel.
struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

/// 8-bit RGB raster stored as three row-major channel planes.
///
/// Pixel (x, y) lives at plane index y * width + x.  Every sample is an
/// integer in [0, 255] by construction; the three planes always hold exactly
/// width * height samples each.
class RgbImage {
public:
    RgbImage() = default;

    /// All-black image of the given size.
    RgbImage(int width, int height);

    /// Adopts three channel planes.  Throws std::invalid_argument if any
    /// plane size does not equal width * height.
    RgbImage(int width, int height,
             std::vector<std::uint8_t> red,
             std::vector<std::uint8_t> green,
             std::vector<std::uint8_t> blue);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    Rgb pixel(int x, int y) const {
        const std::size_t i = index(x, y);
        return {red_[i], green_[i], blue_[i]};
    }

    void set_pixel(int x, int y, Rgb p) {
        const std::size_t i = index(x, y);
        red_[i] = p.r;
        green_[i] = p.g;
        blue_[i] = p.b;
    }

    std::span<const std::uint8_t> red() const { return red_; }
    std::span<const std::uint8_t> green() const { return green_; }
    std::span<const std::uint8_t> blue() const { return blue_; }

    bool operator==(const RgbImage&) const = default;

private:
    std::size_t index(int x, int y) const {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> red_;
    std::vector<std::uint8_t> green_;
    std::vector<std::uint8_t> blue_;
};

/// Rectangular matrix of bits, each cell strictly 0 or 1.
///
/// Used for watermarks, masked watermarks and secret keys.  Cells are stored
/// row-major; constructors reject any cell value other than 0 or 1.
class BitMatrix {
public:
    BitMatrix() = default;

    /// All-zero matrix.  Dimensions must be positive.
    BitMatrix(int rows, int cols);

    /// Adopts a row-major cell vector.  Throws std::invalid_argument on a
    /// size mismatch or on any cell outside {0, 1}.
    BitMatrix(int rows, int cols, std::vector<std::uint8_t> cells);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t cell_count() const {
        return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
    }

    int at(int row, int col) const { return cells_[index(row, col)]; }

    void set(int row, int col, int bit) {
        assert(bit == 0 || bit == 1);
        cells_[index(row, col)] = static_cast<std::uint8_t>(bit);
    }

    std::span<const std::uint8_t> cells() const { return cells_; }

    /// Number of 1-cells.
    std::size_t ones_count() const;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t index(int row, int col) const {
        assert(row >= 0 && row < rows_ && col >= 0 && col < cols_);
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(col);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint8_t> cells_;
};

enum class Channel : std::uint8_t { R = 0, G = 1, B = 2 };

/// Subset of {R, G, B} selected as the embedding sites of one pixel.
class ChannelMask {
public:
    constexpr ChannelMask() = default;
    constexpr explicit ChannelMask(std::uint8_t bits) : bits_(bits) { assert(bits <= 7); }

    constexpr bool contains(Channel c) const {
        return (bits_ >> static_cast<int>(c)) & 1;
    }
    constexpr void insert(Channel c) { bits_ |= static_cast<std::uint8_t>(1 << static_cast<int>(c)); }

    constexpr int size() const {
        return ((bits_ >> 0) & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1);
    }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint8_t raw() const { return bits_; }

    constexpr bool operator==(const ChannelMask&) const = default;

private:
    std::uint8_t bits_ = 0;
};

}  // namespace tintmark
