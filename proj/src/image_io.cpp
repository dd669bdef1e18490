#include "tintmark/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <vector>

namespace tintmark {

namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
    if (!f) throw IoError("cannot open '" + path + "'");
    return f;
}

std::string lower_ext(const std::string& path) {
    std::string ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::vector<std::uint8_t> read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return bytes;
}

// ---------------------------------------------------------------------------
// PNG (via libpng)
// ---------------------------------------------------------------------------

constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

RgbImage load_png(const std::string& path) {
    FilePtr file = open_file(path, "rb");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng initialization failed");
    }

    // All C++ objects live before the setjmp point; libpng errors longjmp
    // back here and we rethrow after tearing the structs down.
    std::vector<std::uint8_t> interleaved;
    std::vector<png_bytep> rows;
    std::string error;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(error.empty() ? "corrupt PNG stream in '" + path + "'" : error);
    }

    png_init_io(png, file.get());
    png_read_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (bit_depth > 8) {
        error = "unsupported bit depth (" + std::to_string(bit_depth) +
                " bits/channel) in '" + path + "'";
        png_error(png, "bit depth");
    }

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    if (png_get_rowbytes(png, info) != static_cast<std::size_t>(width) * 3) {
        error = "unexpected PNG layout in '" + path + "'";
        png_error(png, "layout");
    }

    interleaved.resize(static_cast<std::size_t>(width) * height * 3);
    rows.resize(height);
    for (int y = 0; y < height; ++y) {
        rows[y] = interleaved.data() + static_cast<std::size_t>(y) * width * 3;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    std::vector<std::uint8_t> r(interleaved.size() / 3), g(r.size()), b(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = interleaved[3 * i + 0];
        g[i] = interleaved[3 * i + 1];
        b[i] = interleaved[3 * i + 2];
    }
    return RgbImage(width, height, std::move(r), std::move(g), std::move(b));
}

// Writes either RGB (3 samples/px, gray == nullptr) or 8-bit grayscale rows.
void write_png_rows(const std::string& path, int width, int height,
                    const std::vector<std::uint8_t>& samples, bool grayscale) {
    FilePtr file = open_file(path, "wb");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialization failed");
    }

    std::vector<png_bytep> rows(height);
    const std::size_t stride = static_cast<std::size_t>(width) * (grayscale ? 1 : 3);
    for (int y = 0; y < height; ++y) {
        rows[y] = const_cast<png_bytep>(samples.data() + y * stride);
    }

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG write failed for '" + path + "'");
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, width, height, 8,
                 grayscale ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);

    if (std::fflush(file.get()) != 0 || std::ferror(file.get())) {
        throw IoError("write failure on '" + path + "'");
    }
}

void save_png(const RgbImage& img, const std::string& path) {
    std::vector<std::uint8_t> interleaved(img.pixel_count() * 3);
    const auto r = img.red(), g = img.green(), b = img.blue();
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        interleaved[3 * i + 0] = r[i];
        interleaved[3 * i + 1] = g[i];
        interleaved[3 * i + 2] = b[i];
    }
    write_png_rows(path, img.width(), img.height(), interleaved, false);
}

// ---------------------------------------------------------------------------
// BMP (24-bit uncompressed, hand-rolled)
// ---------------------------------------------------------------------------

std::uint32_t get_u32(const std::vector<std::uint8_t>& d, std::size_t off) {
    return std::uint32_t{d[off]} | std::uint32_t{d[off + 1]} << 8 |
           std::uint32_t{d[off + 2]} << 16 | std::uint32_t{d[off + 3]} << 24;
}

std::uint16_t get_u16(const std::vector<std::uint8_t>& d, std::size_t off) {
    return static_cast<std::uint16_t>(std::uint16_t{d[off]} | std::uint16_t{d[off + 1]} << 8);
}

void put_u16(std::vector<std::uint8_t>& d, std::uint16_t v) {
    d.push_back(static_cast<std::uint8_t>(v & 0xFF));
    d.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& d, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) d.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

RgbImage load_bmp(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_all(path);
    if (bytes.size() < 54 || bytes[0] != 'B' || bytes[1] != 'M') {
        throw IoError("corrupt BMP header in '" + path + "'");
    }
    const std::uint32_t data_offset = get_u32(bytes, 10);
    const std::uint32_t header_size = get_u32(bytes, 14);
    if (header_size < 40) throw IoError("unsupported BMP header in '" + path + "'");

    const std::int32_t width = static_cast<std::int32_t>(get_u32(bytes, 18));
    const std::int32_t raw_height = static_cast<std::int32_t>(get_u32(bytes, 22));
    const std::uint16_t bpp = get_u16(bytes, 28);
    const std::uint32_t compression = get_u32(bytes, 30);

    if (compression != 0) throw IoError("unsupported compressed BMP in '" + path + "'");
    if (bpp != 24 && bpp != 32) {
        throw IoError("unsupported BMP bit depth (" + std::to_string(bpp) + " bpp) in '" + path + "'");
    }
    const bool top_down = raw_height < 0;
    const std::int32_t height = top_down ? -raw_height : raw_height;
    if (width <= 0 || height <= 0) throw IoError("corrupt BMP dimensions in '" + path + "'");

    const std::size_t bytes_per_px = bpp / 8;
    const std::size_t stride = (bytes_per_px * static_cast<std::size_t>(width) + 3) & ~std::size_t{3};
    if (data_offset + stride * static_cast<std::size_t>(height) > bytes.size()) {
        throw IoError("truncated BMP pixel data in '" + path + "'");
    }

    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> r(n), g(n), b(n);
    for (std::int32_t y = 0; y < height; ++y) {
        const std::int32_t src_row = top_down ? y : height - 1 - y;
        const std::size_t row_off = data_offset + stride * static_cast<std::size_t>(src_row);
        for (std::int32_t x = 0; x < width; ++x) {
            const std::size_t px = row_off + bytes_per_px * static_cast<std::size_t>(x);
            const std::size_t i = static_cast<std::size_t>(y) * width + x;
            b[i] = bytes[px + 0];
            g[i] = bytes[px + 1];
            r[i] = bytes[px + 2];
        }
    }
    return RgbImage(width, height, std::move(r), std::move(g), std::move(b));
}

void save_bmp(const RgbImage& img, const std::string& path) {
    const std::size_t stride = (3 * static_cast<std::size_t>(img.width()) + 3) & ~std::size_t{3};
    const std::size_t pixel_bytes = stride * static_cast<std::size_t>(img.height());

    std::vector<std::uint8_t> out;
    out.reserve(54 + pixel_bytes);
    out.push_back('B');
    out.push_back('M');
    put_u32(out, static_cast<std::uint32_t>(54 + pixel_bytes));
    put_u32(out, 0);
    put_u32(out, 54);
    put_u32(out, 40);
    put_u32(out, static_cast<std::uint32_t>(img.width()));
    put_u32(out, static_cast<std::uint32_t>(img.height()));  // bottom-up
    put_u16(out, 1);
    put_u16(out, 24);
    put_u32(out, 0);  // BI_RGB
    put_u32(out, static_cast<std::uint32_t>(pixel_bytes));
    put_u32(out, 2835);  // 72 dpi
    put_u32(out, 2835);
    put_u32(out, 0);
    put_u32(out, 0);

    for (int y = img.height() - 1; y >= 0; --y) {
        std::size_t written = 0;
        for (int x = 0; x < img.width(); ++x) {
            const Rgb p = img.pixel(x, y);
            out.push_back(p.b);
            out.push_back(p.g);
            out.push_back(p.r);
            written += 3;
        }
        while (written++ < stride) out.push_back(0);
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!file) throw IoError("write failure on '" + path + "'");
}

// ---------------------------------------------------------------------------
// PBM / PGM
// ---------------------------------------------------------------------------

// Reads the next unsigned decimal token, skipping whitespace and '#' comments.
long pnm_next_int(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) throw IoError("corrupt PNM header in '" + path + "'");
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1'000'000) throw IoError("implausible PNM dimension in '" + path + "'");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

// PBM stores 1 = black, 0 = white; matrix bits follow pixel value, so white
// maps to 1 and the raw PBM bit is inverted on the way in and out.
BitMatrix load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");

    char p = 0, kind = 0;
    in.get(p);
    in.get(kind);
    if (p != 'P' || (kind != '1' && kind != '2' && kind != '4' && kind != '5')) {
        throw IoError("unsupported PNM variant in '" + path + "'");
    }
    const int width = static_cast<int>(pnm_next_int(in, path));
    const int height = static_cast<int>(pnm_next_int(in, path));
    if (width <= 0 || height <= 0) throw IoError("corrupt PNM dimensions in '" + path + "'");

    long maxval = 1;
    if (kind == '2' || kind == '5') {
        maxval = pnm_next_int(in, path);
        if (maxval <= 0 || maxval > 255) {
            throw IoError("unsupported PNM sample depth in '" + path + "'");
        }
    }

    BitMatrix out(height, width);
    if (kind == '1') {
        for (int row = 0; row < height; ++row) {
            for (int col = 0; col < width; ++col) {
                int c = in.get();
                while (c != EOF && std::isspace(c)) c = in.get();
                if (c != '0' && c != '1') throw IoError("corrupt PBM raster in '" + path + "'");
                out.set(row, col, c == '0');  // '1' is black
            }
        }
    } else if (kind == '2') {
        for (int row = 0; row < height; ++row) {
            for (int col = 0; col < width; ++col) {
                out.set(row, col, pnm_next_int(in, path) != 0);
            }
        }
    } else if (kind == '4') {
        in.get();  // single whitespace after the header
        const int row_bytes = (width + 7) / 8;
        std::vector<char> row(row_bytes);
        for (int r = 0; r < height; ++r) {
            if (!in.read(row.data(), row_bytes)) throw IoError("truncated PBM in '" + path + "'");
            for (int col = 0; col < width; ++col) {
                const int bit = (static_cast<unsigned char>(row[col / 8]) >> (7 - col % 8)) & 1;
                out.set(r, col, bit == 0);  // 1 is black
            }
        }
    } else {  // P5
        in.get();
        std::vector<char> row(width);
        for (int r = 0; r < height; ++r) {
            if (!in.read(row.data(), width)) throw IoError("truncated PGM in '" + path + "'");
            for (int col = 0; col < width; ++col) {
                out.set(r, col, static_cast<unsigned char>(row[col]) != 0);
            }
        }
    }
    return out;
}

void save_pbm(const BitMatrix& wm, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "P4\n" << wm.cols() << " " << wm.rows() << "\n";
    const int row_bytes = (wm.cols() + 7) / 8;
    std::vector<char> row(row_bytes);
    for (int r = 0; r < wm.rows(); ++r) {
        std::fill(row.begin(), row.end(), 0);
        for (int col = 0; col < wm.cols(); ++col) {
            if (wm.at(r, col) == 0) {  // bit 0 is white-off, stored black
                row[col / 8] = static_cast<char>(row[col / 8] | (1 << (7 - col % 8)));
            }
        }
        out.write(row.data(), row_bytes);
    }
    if (!out) throw IoError("write failure on '" + path + "'");
}

void save_pgm(const BitMatrix& wm, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "P5\n" << wm.cols() << " " << wm.rows() << "\n255\n";
    std::vector<char> row(wm.cols());
    for (int r = 0; r < wm.rows(); ++r) {
        for (int col = 0; col < wm.cols(); ++col) {
            row[col] = wm.at(r, col) ? static_cast<char>(255) : 0;
        }
        out.write(row.data(), row.size());
    }
    if (!out) throw IoError("write failure on '" + path + "'");
}

void save_gray_png(const BitMatrix& wm, const std::string& path) {
    std::vector<std::uint8_t> samples(wm.cell_count());
    const auto cells = wm.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) samples[i] = cells[i] ? 255 : 0;
    write_png_rows(path, wm.cols(), wm.rows(), samples, true);
}

// ---------------------------------------------------------------------------
// TMK1 key files
// ---------------------------------------------------------------------------

BitMatrix load_tmk(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_all(path);
    if (bytes.size() < 5 || std::memcmp(bytes.data(), "TMK1 ", 5) != 0) {
        throw IoError("not a TMK1 key file: '" + path + "'");
    }
    std::size_t pos = 5;
    auto parse_int = [&](const char* what) {
        long value = 0;
        bool any = false;
        while (pos < bytes.size() && bytes[pos] == ' ') ++pos;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1'000'000) throw IoError("implausible key dimension in '" + path + "'");
            ++pos;
            any = true;
        }
        if (!any) throw IoError(std::string("missing ") + what + " in TMK1 header of '" + path + "'");
        return value;
    };
    const long rows = parse_int("rows");
    const long cols = parse_int("cols");
    if (pos >= bytes.size() || bytes[pos] != '\n') {
        throw IoError("malformed TMK1 header in '" + path + "'");
    }
    ++pos;
    if (rows <= 0 || cols <= 0) throw IoError("corrupt TMK1 dimensions in '" + path + "'");

    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (bytes.size() - pos < n) throw IoError("truncated TMK1 key in '" + path + "'");

    std::vector<std::uint8_t> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t c = bytes[pos + i];
        if (c != '0' && c != '1') {
            throw IoError("non-binary content in TMK1 key '" + path + "'");
        }
        cells[i] = c - '0';
    }
    for (std::size_t i = pos + n; i < bytes.size(); ++i) {
        if (!std::isspace(bytes[i])) {
            throw IoError("trailing non-binary content in TMK1 key '" + path + "'");
        }
    }
    return BitMatrix(static_cast<int>(rows), static_cast<int>(cols), std::move(cells));
}

}  // namespace

RgbImage load_image(const std::string& path) {
    const std::vector<std::uint8_t> head = [&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open '" + path + "'");
        std::vector<std::uint8_t> h(8, 0);
        in.read(reinterpret_cast<char*>(h.data()), 8);
        return h;
    }();

    if (std::memcmp(head.data(), kPngMagic, 8) == 0) return load_png(path);
    if (head[0] == 'B' && head[1] == 'M') return load_bmp(path);
    throw IoError("unsupported image format in '" + path + "' (expected PNG or BMP)");
}

void save_image(const RgbImage& img, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".png") {
        save_png(img, path);
    } else if (ext == ".bmp") {
        save_bmp(img, path);
    } else if (ext == ".jpg" || ext == ".jpeg") {
        throw std::invalid_argument("lossy container refused: '" + path +
                                    "' (watermarked images must be saved as PNG or BMP)");
    } else {
        throw std::invalid_argument("unsupported image output format '" + ext +
                                    "' (use .png or .bmp)");
    }
}

BitMatrix load_bitmatrix(const std::string& path) {
    const std::vector<std::uint8_t> head = [&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open '" + path + "'");
        std::vector<std::uint8_t> h(8, 0);
        in.read(reinterpret_cast<char*>(h.data()), 8);
        return h;
    }();

    if (std::memcmp(head.data(), "TMK1", 4) == 0) return load_tmk(path);
    if (head[0] == 'P' && (head[1] == '1' || head[1] == '2' || head[1] == '4' || head[1] == '5')) {
        return load_pnm(path);
    }
    if (std::memcmp(head.data(), kPngMagic, 8) == 0) {
        const RgbImage img = load_png(path);
        BitMatrix out(img.height(), img.width());
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                const Rgb p = img.pixel(x, y);
                out.set(y, x, (p.r | p.g | p.b) != 0);
            }
        }
        return out;
    }
    throw IoError("unsupported watermark/key format in '" + path +
                  "' (expected PBM, PGM, PNG or TMK1)");
}

void save_bitmatrix(const BitMatrix& wm, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".pbm") {
        save_pbm(wm, path);
    } else if (ext == ".pgm") {
        save_pgm(wm, path);
    } else if (ext == ".png") {
        save_gray_png(wm, path);
    } else if (ext == ".tmk" || ext == ".key") {
        save_key(wm, path);
    } else {
        throw std::invalid_argument("unsupported watermark output format '" + ext +
                                    "' (use .pbm, .pgm, .png, .tmk or .key)");
    }
}

void save_key(const BitMatrix& key, const std::string& path) {
    std::string out = "TMK1 " + std::to_string(key.rows()) + " " + std::to_string(key.cols()) + "\n";
    out.reserve(out.size() + key.cell_count());
    for (const std::uint8_t cell : key.cells()) {
        out.push_back(cell ? '1' : '0');
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw IoError("write failure on '" + path + "'");
}

}  // namespace tintmark
