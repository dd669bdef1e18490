#include "tintmark/attacks.hpp"

#include <jpeglib.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "tintmark/prng.hpp"

namespace tintmark {

namespace {

// ---------------------------------------------------------------------------
// Pillbox kernel geometry
// ---------------------------------------------------------------------------

// Integral of sqrt(r^2 - t^2) dt from 0 to x, clamped to the circle's extent.
double circle_integral(double x, double r) {
    x = std::clamp(x, -r, r);
    return 0.5 * (x * std::sqrt(std::max(0.0, r * r - x * x)) + r * r * std::asin(x / r));
}

// Area of the disk x^2 + y^2 <= r^2 inside the rectangle [x0,x1] x [y0,y1].
// Integrates the clamped vertical extent over x; the integral is evaluated
// piecewise between the abscissas where the clamp switches between a
// rectangle edge and the circle boundary, so every piece is analytic.
double disk_rect_overlap(double x0, double x1, double y0, double y1, double r) {
    x0 = std::max(x0, -r);
    x1 = std::min(x1, r);
    if (x0 >= x1) return 0.0;

    double cuts[6] = {x0, x1};
    int ncuts = 2;
    for (const double y : {y0, y1}) {
        if (std::abs(y) < r) {
            const double xc = std::sqrt(r * r - y * y);
            if (xc > x0 && xc < x1) cuts[ncuts++] = xc;
            if (-xc > x0 && -xc < x1) cuts[ncuts++] = -xc;
        }
    }
    std::sort(cuts, cuts + ncuts);

    double area = 0.0;
    for (int i = 0; i + 1 < ncuts; ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b <= a) continue;
        const double xm = 0.5 * (a + b);
        const double c = std::sqrt(std::max(0.0, r * r - xm * xm));
        if (std::min(y1, c) <= std::max(y0, -c)) continue;
        const double seg = circle_integral(b, r) - circle_integral(a, r);
        const double upper = (y1 < c) ? y1 * (b - a) : seg;
        const double lower = (y0 > -c) ? y0 * (b - a) : -seg;
        area += upper - lower;
    }
    return std::max(0.0, area);
}

// Weight of the kernel cell centered at (dx, dy).  Cells are canonicalized
// to the first octant so the kernel is exactly symmetric under reflections
// and 90-degree rotations.
double cell_coverage(int dx, int dy, double radius) {
    const double cx = std::max(std::abs(dx), std::abs(dy));
    const double cy = std::min(std::abs(dx), std::abs(dy));
    return disk_rect_overlap(cx - 0.5, cx + 0.5, cy - 0.5, cy + 0.5, radius);
}

}  // namespace

std::vector<std::vector<double>> pillbox_kernel_raw(double radius) {
    if (radius <= 0.0) throw std::invalid_argument("blur radius must be positive");
    const int half = static_cast<int>(std::ceil(radius));
    const int side = 2 * half + 1;
    std::vector<std::vector<double>> kernel(side, std::vector<double>(side));
    for (int dy = -half; dy <= half; ++dy) {
        for (int dx = -half; dx <= half; ++dx) {
            kernel[dy + half][dx + half] = cell_coverage(dx, dy, radius);
        }
    }
    return kernel;
}

std::vector<std::vector<double>> pillbox_kernel(double radius) {
    std::vector<std::vector<double>> kernel = pillbox_kernel_raw(radius);
    double total = 0.0;
    for (const auto& row : kernel) total = std::accumulate(row.begin(), row.end(), total);
    for (auto& row : kernel) {
        for (double& w : row) w /= total;
    }
    return kernel;
}

RgbImage pillbox_blur(const RgbImage& img, double radius) {
    const std::vector<std::vector<double>> kernel = pillbox_kernel(radius);
    const int half = (static_cast<int>(kernel.size()) - 1) / 2;

    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double sr = 0.0, sg = 0.0, sb = 0.0;
            for (int dy = -half; dy <= half; ++dy) {
                const int sy = std::clamp(y + dy, 0, img.height() - 1);
                for (int dx = -half; dx <= half; ++dx) {
                    const int sx = std::clamp(x + dx, 0, img.width() - 1);
                    const double w = kernel[dy + half][dx + half];
                    const Rgb p = img.pixel(sx, sy);
                    sr += w * p.r;
                    sg += w * p.g;
                    sb += w * p.b;
                }
            }
            const auto quantize = [](double v) {
                return static_cast<std::uint8_t>(std::clamp<long>(std::lround(v), 0, 255));
            };
            out.set_pixel(x, y, {quantize(sr), quantize(sg), quantize(sb)});
        }
    }
    return out;
}

RgbImage crop(const RgbImage& img, double percent) {
    if (percent < 0.0 || percent > 100.0) {
        throw std::invalid_argument("crop percent must be in [0, 100], got " +
                                    std::to_string(percent));
    }
    const long blacked = std::lround(percent / 100.0 * img.height());
    RgbImage out = img;
    for (long y = 0; y < blacked; ++y) {
        for (int x = 0; x < img.width(); ++x) {
            out.set_pixel(x, static_cast<int>(y), {0, 0, 0});
        }
    }
    return out;
}

RgbImage salt_pepper(const RgbImage& img, double density, std::uint64_t seed) {
    if (density < 0.0 || density > 1.0) {
        throw std::invalid_argument("noise density must be in [0, 1], got " +
                                    std::to_string(density));
    }
    const std::size_t n = img.pixel_count();
    const std::size_t hits = static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));

    // Partial Fisher-Yates over all pixel indices picks `hits` distinct
    // positions; a further stream draw per hit picks salt vs pepper.
    std::vector<std::uint32_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0u);
    SplitMix64 prng(seed);

    RgbImage out = img;
    for (std::size_t i = 0; i < hits; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(prng.below(n - i));
        std::swap(indices[i], indices[j]);
        const std::uint8_t v = (prng.next() & 1) ? 255 : 0;
        const int x = static_cast<int>(indices[i] % img.width());
        const int y = static_cast<int>(indices[i] / img.width());
        out.set_pixel(x, y, {v, v, v});
    }
    return out;
}

// ---------------------------------------------------------------------------
// JPEG recompression (via libjpeg, in memory)
// ---------------------------------------------------------------------------

namespace {

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

void jpeg_error_trampoline(j_common_ptr cinfo) {
    std::longjmp(reinterpret_cast<JpegErrorMgr*>(cinfo->err)->jump, 1);
}

struct MallocBuffer {
    unsigned char* data = nullptr;
    unsigned long size = 0;
    ~MallocBuffer() { std::free(data); }
};

}  // namespace

RgbImage jpeg_compress(const RgbImage& img, int quality) {
    if (quality < 1 || quality > 100) {
        throw std::invalid_argument("JPEG quality must be in [1, 100], got " +
                                    std::to_string(quality));
    }

    std::vector<std::uint8_t> interleaved(img.pixel_count() * 3);
    const auto r = img.red(), g = img.green(), b = img.blue();
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        interleaved[3 * i + 0] = r[i];
        interleaved[3 * i + 1] = g[i];
        interleaved[3 * i + 2] = b[i];
    }

    MallocBuffer encoded;
    JpegErrorMgr err;

    // Encode.
    {
        jpeg_compress_struct cinfo;
        cinfo.err = jpeg_std_error(&err.pub);
        err.pub.error_exit = jpeg_error_trampoline;
        if (setjmp(err.jump)) {
            jpeg_destroy_compress(&cinfo);
            throw std::runtime_error("JPEG encoding failed");
        }
        jpeg_create_compress(&cinfo);
        jpeg_mem_dest(&cinfo, &encoded.data, &encoded.size);
        cinfo.image_width = static_cast<JDIMENSION>(img.width());
        cinfo.image_height = static_cast<JDIMENSION>(img.height());
        cinfo.input_components = 3;
        cinfo.in_color_space = JCS_RGB;
        jpeg_set_defaults(&cinfo);
        jpeg_set_quality(&cinfo, quality, TRUE);  // baseline-compatible
        jpeg_start_compress(&cinfo, TRUE);
        while (cinfo.next_scanline < cinfo.image_height) {
            JSAMPROW row = interleaved.data() +
                           static_cast<std::size_t>(cinfo.next_scanline) * img.width() * 3;
            jpeg_write_scanlines(&cinfo, &row, 1);
        }
        jpeg_finish_compress(&cinfo);
        jpeg_destroy_compress(&cinfo);
    }

    // Decode back.
    std::vector<std::uint8_t> decoded(img.pixel_count() * 3);
    {
        jpeg_decompress_struct dinfo;
        dinfo.err = jpeg_std_error(&err.pub);
        err.pub.error_exit = jpeg_error_trampoline;
        if (setjmp(err.jump)) {
            jpeg_destroy_decompress(&dinfo);
            throw std::runtime_error("JPEG decoding failed");
        }
        jpeg_create_decompress(&dinfo);
        jpeg_mem_src(&dinfo, encoded.data, encoded.size);
        jpeg_read_header(&dinfo, TRUE);
        dinfo.out_color_space = JCS_RGB;
        jpeg_start_decompress(&dinfo);
        if (static_cast<int>(dinfo.output_width) != img.width() ||
            static_cast<int>(dinfo.output_height) != img.height() ||
            dinfo.output_components != 3) {
            jpeg_destroy_decompress(&dinfo);
            throw std::runtime_error("JPEG round trip changed image layout");
        }
        while (dinfo.output_scanline < dinfo.output_height) {
            JSAMPROW row = decoded.data() +
                           static_cast<std::size_t>(dinfo.output_scanline) * img.width() * 3;
            jpeg_read_scanlines(&dinfo, &row, 1);
        }
        jpeg_finish_decompress(&dinfo);
        jpeg_destroy_decompress(&dinfo);
    }

    std::vector<std::uint8_t> nr(img.pixel_count()), ng(img.pixel_count()), nb(img.pixel_count());
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        nr[i] = decoded[3 * i + 0];
        ng[i] = decoded[3 * i + 1];
        nb[i] = decoded[3 * i + 2];
    }
    return RgbImage(img.width(), img.height(), std::move(nr), std::move(ng), std::move(nb));
}

RgbImage apply_attack(const RgbImage& img, const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackKind::Crop:
            return crop(img, spec.strength);
        case AttackKind::JpegCompress: {
            const long q = std::lround(spec.strength);
            if (q != spec.strength || q < 1 || q > 100) {
                throw std::invalid_argument("JPEG quality must be an integer in [1, 100], got " +
                                            std::to_string(spec.strength));
            }
            return jpeg_compress(img, static_cast<int>(q));
        }
        case AttackKind::PillboxBlur:
            return pillbox_blur(img, spec.strength);
        case AttackKind::SaltPepper:
            return salt_pepper(img, spec.strength, spec.seed);
    }
    throw std::invalid_argument("unknown attack kind");
}

std::string_view attack_kind_name(AttackKind kind) {
    switch (kind) {
        case AttackKind::Crop: return "crop";
        case AttackKind::JpegCompress: return "jpeg";
        case AttackKind::PillboxBlur: return "blur";
        case AttackKind::SaltPepper: return "saltpepper";
    }
    return "unknown";
}

AttackKind attack_kind_from_name(std::string_view name) {
    if (name == "crop") return AttackKind::Crop;
    if (name == "jpeg") return AttackKind::JpegCompress;
    if (name == "blur") return AttackKind::PillboxBlur;
    if (name == "saltpepper") return AttackKind::SaltPepper;
    throw std::invalid_argument("unknown attack kind '" + std::string(name) +
                                "' (expected crop, jpeg, blur or saltpepper)");
}

}  // namespace tintmark
