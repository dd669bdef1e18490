#pragma once

#include <stdexcept>
#include <string>

#include "tintmark/image.hpp"

namespace tintmark {

/// A file could not be read, written or decoded.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decodes a PNG or BMP file (detected by magic bytes, not extension).
///
/// Grayscale and palette inputs are promoted to 8-bit RGB; an alpha channel
/// is stripped.  Inputs deeper than 8 bits per channel are rejected.
/// Throws IoError on unreadable, corrupt or unsupported files.
RgbImage load_image(const std::string& path);

/// Encodes an image losslessly.  The container is chosen by extension:
/// `.png` or `.bmp` (24-bit).  Lossy containers (`.jpg`, `.jpeg`) are
/// refused with std::invalid_argument; any other extension is also an
/// error.  load_image(save_image(img)) reproduces img bit-exactly.
void save_image(const RgbImage& img, const std::string& path);

/// Reads a bit matrix from a monochrome image (PBM, PGM or PNG) or a TMK1
/// key file, detected by magic bytes.  Pixel value 0 maps to bit 0; any
/// nonzero value maps to bit 1.
BitMatrix load_bitmatrix(const std::string& path);

/// Writes a bit matrix.  The format is chosen by extension: `.pbm` (P4),
/// `.pgm` (P5, bits as 0/255), `.png` (8-bit grayscale, bits as 0/255), or
/// `.tmk` / `.key` (TMK1 text format).  Lossless round trip with
/// load_bitmatrix in every format.
void save_bitmatrix(const BitMatrix& wm, const std::string& path);

/// Writes the TMK1 key file format regardless of extension: an ASCII header
/// `TMK1 <rows> <cols>\n` followed by rows*cols characters '0'/'1' in
/// row-major order.
void save_key(const BitMatrix& key, const std::string& path);

}  // namespace tintmark
