#include "tintmark/codec.hpp"

#include <stdexcept>
#include <string>

#include "tintmark/prng.hpp"

namespace tintmark {

namespace {

std::string size_str(int rows, int cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
}

// Cover, watermark and key must all be the same square m x m size.
void check_embed_shapes(const RgbImage& cover, const BitMatrix& w, const BitMatrix& k) {
    if (cover.width() != cover.height()) {
        throw std::invalid_argument("cover image must be square, got " +
                                    size_str(cover.height(), cover.width()));
    }
    if (w.rows() != w.cols()) {
        throw std::invalid_argument("watermark must be square, got " +
                                    size_str(w.rows(), w.cols()));
    }
    if (w.rows() != k.rows() || w.cols() != k.cols()) {
        throw std::invalid_argument("key size " + size_str(k.rows(), k.cols()) +
                                    " does not match watermark size " + size_str(w.rows(), w.cols()));
    }
    if (w.rows() != cover.height()) {
        throw std::invalid_argument("watermark size " + size_str(w.rows(), w.cols()) +
                                    " does not match cover size " +
                                    size_str(cover.height(), cover.width()));
    }
}

std::uint8_t with_lsb(std::uint8_t value, int bit) {
    return static_cast<std::uint8_t>((value & ~1) | bit);
}

}  // namespace

BitMatrix keygen(int rows, int cols, std::uint64_t seed) {
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("key dimensions must be positive, got " +
                                    size_str(rows, cols));
    }
    BitMatrix key(rows, cols);
    SplitMix64 prng(seed);
    std::uint64_t word = 0;
    std::size_t i = 0;
    for (int row = 0; row < rows; ++row) {
        for (int col = 0; col < cols; ++col, ++i) {
            if (i % 64 == 0) word = prng.next();
            key.set(row, col, static_cast<int>((word >> (i % 64)) & 1));
        }
    }
    return key;
}

BitMatrix mask_watermark(const BitMatrix& w, const BitMatrix& k) {
    if (w.rows() != k.rows() || w.cols() != k.cols()) {
        throw std::invalid_argument("cannot mask " + size_str(w.rows(), w.cols()) +
                                    " watermark with " + size_str(k.rows(), k.cols()) + " key");
    }
    BitMatrix out(w.rows(), w.cols());
    for (int row = 0; row < w.rows(); ++row) {
        for (int col = 0; col < w.cols(); ++col) {
            out.set(row, col, w.at(row, col) ^ k.at(row, col));
        }
    }
    return out;
}

RgbImage embed(const RgbImage& cover, const BitMatrix& w, const BitMatrix& k, EmbedConfig cfg) {
    check_embed_shapes(cover, w, k);
    const BitMatrix masked = mask_watermark(w, k);

    RgbImage out = cover;
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
            Rgb p = out.pixel(x, y);
            const ChannelMask mask = select_channels(p, cfg.mode);
            const int bit = masked.at(y, x);
            if (mask.contains(Channel::R)) p.r = with_lsb(p.r, bit);
            if (mask.contains(Channel::G)) p.g = with_lsb(p.g, bit);
            if (mask.contains(Channel::B)) p.b = with_lsb(p.b, bit);
            out.set_pixel(x, y, p);
        }
    }
    return out;
}

BitMatrix extract(const RgbImage& marked, const BitMatrix& k, ExtractConfig cfg) {
    if (marked.width() != marked.height()) {
        throw std::invalid_argument("marked image must be square, got " +
                                    size_str(marked.height(), marked.width()));
    }
    if (k.rows() != marked.height() || k.cols() != marked.width()) {
        throw std::invalid_argument("key size " + size_str(k.rows(), k.cols()) +
                                    " does not match image size " +
                                    size_str(marked.height(), marked.width()));
    }

    BitMatrix decoded(k.rows(), k.cols());
    for (int y = 0; y < marked.height(); ++y) {
        for (int x = 0; x < marked.width(); ++x) {
            const Rgb p = marked.pixel(x, y);
            const ChannelMask mask = select_channels(p, cfg.mode);
            const int lsb[3] = {p.r & 1, p.g & 1, p.b & 1};

            int ones = 0, total = 0;
            for (int c = 0; c < 3; ++c) {
                if (!mask.contains(static_cast<Channel>(c))) continue;
                ones += lsb[c];
                ++total;
            }

            int bit;
            if (2 * ones != total) {
                bit = 2 * ones > total;
            } else {
                // Tie: take the highest-priority selected channel, R > G > B.
                bit = 0;
                for (int c = 0; c < 3; ++c) {
                    if (mask.contains(static_cast<Channel>(c))) {
                        bit = lsb[c];
                        break;
                    }
                }
            }
            decoded.set(y, x, bit);
        }
    }
    return mask_watermark(decoded, k);
}

CapacityProfile capacity_profile(const RgbImage& cover, SelectionMode mode) {
    CapacityProfile profile;
    for (int y = 0; y < cover.height(); ++y) {
        for (int x = 0; x < cover.width(); ++x) {
            switch (select_channels(cover.pixel(x, y), mode).size()) {
                case 1: ++profile.one_channel; break;
                case 2: ++profile.two_channels; break;
                default: ++profile.three_channels; break;
            }
        }
    }
    return profile;
}

}  // namespace tintmark
