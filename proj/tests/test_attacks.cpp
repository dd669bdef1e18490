#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tintmark/attacks.hpp"
#include "tintmark/codec.hpp"
#include "tintmark/metrics.hpp"
#include "test_util.hpp"

using namespace tintmark;

TEST_CASE("crop blackens the top rows and nothing else") {
    const RgbImage img = testutil::random_image(16, 16, 11);
    CHECK(crop(img, 0.0) == img);

    const RgbImage gone = crop(img, 100.0);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) CHECK(gone.pixel(x, y) == Rgb{0, 0, 0});
    }

    // round(0.2 * 256) = 51 blacked rows.
    const RgbImage big = testutil::random_image(256, 256, 12);
    const RgbImage cropped = crop(big, 20.0);
    for (int y = 0; y < 51; ++y) {
        for (int x = 0; x < 256; ++x) REQUIRE(cropped.pixel(x, y) == Rgb{0, 0, 0});
    }
    for (int y = 51; y < 256; ++y) {
        for (int x = 0; x < 256; ++x) REQUIRE(cropped.pixel(x, y) == big.pixel(x, y));
    }

    CHECK_THROWS_AS(crop(img, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(crop(img, 100.5), std::invalid_argument);
}

TEST_CASE("crop regions nest monotonically") {
    const RgbImage img = testutil::uniform_image(64, 64, {200, 200, 200});
    const RgbImage a = crop(img, 15.0);
    const RgbImage b = crop(img, 45.0);
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            if (a.pixel(x, y) == Rgb{0, 0, 0}) REQUIRE(b.pixel(x, y) == Rgb{0, 0, 0});
        }
    }
}

TEST_CASE("jpeg recompression preserves dimensions and is lossy") {
    const RgbImage img = testutil::random_image(256, 256, 13);
    const RgbImage q100 = jpeg_compress(img, 100);
    CHECK(q100.width() == 256);
    CHECK(q100.height() == 256);
    CHECK(mse(img, q100) > 0.0);

    CHECK_THROWS_AS(jpeg_compress(img, 0), std::invalid_argument);
    CHECK_THROWS_AS(jpeg_compress(img, 101), std::invalid_argument);
}

TEST_CASE("jpeg at quality 50 degrades extraction") {
    const RgbImage cover = testutil::random_image(64, 64, 14);
    const BitMatrix w = testutil::random_bits(64, 64, 15);
    const BitMatrix k = testutil::random_bits(64, 64, 16);
    const RgbImage marked = embed(cover, w, k);

    CHECK(nc(w, extract(marked, k)) == 1.0);
    CHECK(nc(w, extract(jpeg_compress(marked, 50), k)) < 1.0);
}

TEST_CASE("pillbox kernel weights are a normalized disk coverage") {
    // radius 0.4: the disk sits inside the center cell, so the kernel acts
    // as identity.
    const auto tiny = pillbox_kernel(0.4);
    const int side = static_cast<int>(tiny.size());
    CHECK(tiny[side / 2][side / 2] == doctest::Approx(1.0).epsilon(1e-12));

    const RgbImage img = testutil::random_image(16, 16, 17);
    CHECK(pillbox_blur(img, 0.4) == img);

    for (const double radius : {0.5, 0.7, 1.0, 1.1, 1.4, 2.3}) {
        const auto kernel = pillbox_kernel(radius);
        const auto raw = pillbox_kernel_raw(radius);
        const int n = static_cast<int>(kernel.size());
        CHECK(n == 2 * static_cast<int>(std::ceil(radius)) + 1);

        double sum = 0.0, raw_sum = 0.0;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                REQUIRE(kernel[r][c] >= 0.0);
                sum += kernel[r][c];
                raw_sum += raw[r][c];
                // 90-degree rotational symmetry.
                REQUIRE(kernel[r][c] == kernel[c][n - 1 - r]);
            }
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(raw_sum == doctest::Approx(M_PI * radius * radius).epsilon(1e-9));
    }

    CHECK_THROWS_AS(pillbox_blur(img, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pillbox_blur(img, -0.5), std::invalid_argument);
}

TEST_CASE("wider blur degrades extraction more") {
    const RgbImage cover = testutil::random_image(64, 64, 18);
    const BitMatrix w = testutil::random_bits(64, 64, 19);
    const BitMatrix k = testutil::random_bits(64, 64, 20);
    const RgbImage marked = embed(cover, w, k);

    const double near = nc(w, extract(pillbox_blur(marked, 0.5), k));
    const double far = nc(w, extract(pillbox_blur(marked, 1.4), k));
    CHECK(far < near);
}

TEST_CASE("salt and pepper hits exactly the rounded pixel budget") {
    const RgbImage img = testutil::uniform_image(256, 256, {128, 128, 128});
    CHECK(salt_pepper(img, 0.0, 1) == img);
    CHECK(salt_pepper(img, 0.005, 42) == salt_pepper(img, 0.005, 42));
    CHECK(salt_pepper(img, 0.005, 42) != salt_pepper(img, 0.005, 43));

    const RgbImage noisy = salt_pepper(img, 0.005, 42);
    std::size_t modified = 0;
    for (int y = 0; y < 256; ++y) {
        for (int x = 0; x < 256; ++x) {
            const Rgb p = noisy.pixel(x, y);
            if (p == Rgb{128, 128, 128}) continue;
            ++modified;
            REQUIRE((p == Rgb{0, 0, 0} || p == Rgb{255, 255, 255}));
        }
    }
    CHECK(modified == 328);  // round(0.005 * 65536)

    CHECK_THROWS_AS(salt_pepper(img, -0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(salt_pepper(img, 1.5, 1), std::invalid_argument);
}

TEST_CASE("attacks preserve image dimensions") {
    const RgbImage img = testutil::random_image(48, 48, 21);
    const AttackSpec specs[] = {
        {AttackKind::Crop, 30.0, 0},
        {AttackKind::JpegCompress, 60.0, 0},
        {AttackKind::PillboxBlur, 1.1, 0},
        {AttackKind::SaltPepper, 0.01, 5},
    };
    for (const AttackSpec& spec : specs) {
        const RgbImage out = apply_attack(img, spec);
        CHECK(out.width() == img.width());
        CHECK(out.height() == img.height());
    }
}

TEST_CASE("attack kinds map to and from names") {
    for (AttackKind kind : {AttackKind::Crop, AttackKind::JpegCompress, AttackKind::PillboxBlur,
                            AttackKind::SaltPepper}) {
        CHECK(attack_kind_from_name(attack_kind_name(kind)) == kind);
    }
    CHECK_THROWS_AS(attack_kind_from_name("rotate"), std::invalid_argument);

    // Non-integral jpeg quality via the generic entry point.
    CHECK_THROWS_AS(apply_attack(testutil::random_image(8, 8, 1),
                                 {AttackKind::JpegCompress, 50.5, 0}),
                    std::invalid_argument);
}
