#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "tintmark/codec.hpp"
#include "tintmark/image_io.hpp"
#include "tintmark/metrics.hpp"
#include "test_util.hpp"

using namespace tintmark;
using testutil::TempDir;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the CLI with the given argument string, capturing exit code and both
// output streams through scratch files.
RunResult run_cli(const TempDir& dir, const std::string& args) {
    const std::string out_path = dir.file("stdout.txt");
    const std::string err_path = dir.file("stderr.txt");
    const std::string cmd = std::string(TINTMARK_CLI_PATH) + " " + args + " >" + out_path +
                            " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

}  // namespace

TEST_CASE("keygen writes deterministic TMK1 files") {
    TempDir dir("keygen");
    const RunResult r1 = run_cli(dir, "keygen 4 4 42 " + dir.file("a.tmk"));
    CHECK(r1.exit_code == 0);
    const std::string a = slurp(dir.file("a.tmk"));
    CHECK(a.substr(0, 9) == "TMK1 4 4\n");

    CHECK(run_cli(dir, "keygen 4 4 42 " + dir.file("b.tmk")).exit_code == 0);
    CHECK(slurp(dir.file("b.tmk")) == a);

    CHECK(run_cli(dir, "keygen 4 4 43 " + dir.file("c.tmk")).exit_code == 0);
    CHECK(slurp(dir.file("c.tmk")) != a);

    CHECK(run_cli(dir, "keygen 0 4 1 " + dir.file("d.tmk")).exit_code == 2);
}

TEST_CASE("embed then extract recovers the watermark through the filesystem") {
    TempDir dir("roundtrip");
    const RgbImage cover = testutil::random_image(64, 64, 101);
    const BitMatrix w = testutil::random_bits(64, 64, 102);
    save_image(cover, dir.file("cover.png"));
    save_bitmatrix(w, dir.file("w.pbm"));
    REQUIRE(run_cli(dir, "keygen 64 64 7 " + dir.file("k.tmk")).exit_code == 0);

    const RunResult em = run_cli(dir, "embed " + dir.file("cover.png") + " " + dir.file("w.pbm") +
                                          " " + dir.file("k.tmk") + " " + dir.file("marked.png"));
    CHECK(em.exit_code == 0);
    CHECK(em.out.find("mse=") != std::string::npos);
    CHECK(em.out.find("psnr=") != std::string::npos);

    const RunResult ex = run_cli(dir, "extract " + dir.file("marked.png") + " " +
                                          dir.file("k.tmk") + " " + dir.file("got.pbm"));
    CHECK(ex.exit_code == 0);
    CHECK(load_bitmatrix(dir.file("got.pbm")) == w);

    // The filesystem round trip must agree bit-exactly with the in-memory one.
    const BitMatrix in_memory = extract(load_image(dir.file("marked.png")), keygen(64, 64, 7));
    CHECK(load_bitmatrix(dir.file("got.pbm")) == in_memory);
}

TEST_CASE("extract with the wrong key decorrelates") {
    TempDir dir("wrongkey");
    const RgbImage cover = testutil::random_image(64, 64, 111);
    const BitMatrix w = testutil::random_bits(64, 64, 112);
    save_image(cover, dir.file("cover.png"));
    save_bitmatrix(w, dir.file("w.pbm"));
    REQUIRE(run_cli(dir, "keygen 64 64 1 " + dir.file("right.tmk")).exit_code == 0);
    REQUIRE(run_cli(dir, "keygen 64 64 2 " + dir.file("wrong.tmk")).exit_code == 0);

    REQUIRE(run_cli(dir, "embed " + dir.file("cover.png") + " " + dir.file("w.pbm") + " " +
                             dir.file("right.tmk") + " " + dir.file("marked.png"))
                .exit_code == 0);
    REQUIRE(run_cli(dir, "extract " + dir.file("marked.png") + " " + dir.file("wrong.tmk") + " " +
                             dir.file("got.pbm"))
                .exit_code == 0);

    const double survival = nc(w, load_bitmatrix(dir.file("got.pbm")));
    CHECK(survival > 0.4);
    CHECK(survival < 0.6);

    const RunResult missing = run_cli(dir, "extract " + dir.file("marked.png") + " " +
                                               dir.file("nokey.tmk") + " " + dir.file("x.pbm"));
    CHECK(missing.exit_code == 1);
}

TEST_CASE("embed validation failures exit with code 2") {
    TempDir dir("validate");
    save_image(testutil::random_image(16, 16, 121), dir.file("cover.png"));
    save_bitmatrix(testutil::random_bits(8, 8, 122), dir.file("small.pbm"));
    REQUIRE(run_cli(dir, "keygen 8 8 1 " + dir.file("k.tmk")).exit_code == 0);

    const RunResult mismatch =
        run_cli(dir, "embed " + dir.file("cover.png") + " " + dir.file("small.pbm") + " " +
                         dir.file("k.tmk") + " " + dir.file("out.png"));
    CHECK(mismatch.exit_code == 2);
    CHECK(mismatch.err.find("8x8") != std::string::npos);
    CHECK(mismatch.err.find("16x16") != std::string::npos);

    save_bitmatrix(testutil::random_bits(16, 16, 123), dir.file("w.pbm"));
    REQUIRE(run_cli(dir, "keygen 16 16 1 " + dir.file("k16.tmk")).exit_code == 0);
    const RunResult lossy =
        run_cli(dir, "embed " + dir.file("cover.png") + " " + dir.file("w.pbm") + " " +
                         dir.file("k16.tmk") + " " + dir.file("out.jpg"));
    CHECK(lossy.exit_code == 2);
    CHECK(lossy.err.find("lossy container refused") != std::string::npos);

    CHECK(run_cli(dir, "embed").exit_code == 2);           // missing arguments
    CHECK(run_cli(dir, "bogus-subcommand").exit_code == 2);
    CHECK(run_cli(dir, "--help").exit_code == 0);
}

TEST_CASE("attack subcommand") {
    TempDir dir("attack");
    const RgbImage img = testutil::random_image(32, 32, 131);
    save_image(img, dir.file("in.png"));

    CHECK(run_cli(dir, "attack " + dir.file("in.png") + " crop 25 " + dir.file("c.png"))
              .exit_code == 0);
    const RgbImage cropped = load_image(dir.file("c.png"));
    for (int x = 0; x < 32; ++x) CHECK(cropped.pixel(x, 0) == Rgb{0, 0, 0});
    for (int x = 0; x < 32; ++x) CHECK(cropped.pixel(x, 31) == img.pixel(x, 31));

    REQUIRE(run_cli(dir, "attack " + dir.file("in.png") + " saltpepper 0.02 --seed 7 " +
                             dir.file("n1.png"))
                .exit_code == 0);
    REQUIRE(run_cli(dir, "attack " + dir.file("in.png") + " saltpepper 0.02 --seed 7 " +
                             dir.file("n2.png"))
                .exit_code == 0);
    CHECK(slurp(dir.file("n1.png")) == slurp(dir.file("n2.png")));

    CHECK(run_cli(dir, "attack " + dir.file("in.png") + " jpeg 50 " + dir.file("j.png"))
              .exit_code == 0);
    CHECK(load_image(dir.file("j.png")).width() == 32);

    const RunResult bad =
        run_cli(dir, "attack " + dir.file("in.png") + " blur -0.5 " + dir.file("b.png"));
    CHECK(bad.exit_code == 2);
}

TEST_CASE("paper mode flag is honored end to end") {
    TempDir dir("papermode");
    const RgbImage cover = testutil::random_image(64, 64, 151);
    const BitMatrix w = testutil::random_bits(64, 64, 152);
    save_image(cover, dir.file("cover.png"));
    save_bitmatrix(w, dir.file("w.pbm"));
    REQUIRE(run_cli(dir, "keygen 64 64 5 " + dir.file("k.tmk")).exit_code == 0);

    REQUIRE(run_cli(dir, "embed --mode paper " + dir.file("cover.png") + " " + dir.file("w.pbm") +
                             " " + dir.file("k.tmk") + " " + dir.file("marked.png"))
                .exit_code == 0);
    REQUIRE(run_cli(dir, "extract --mode paper " + dir.file("marked.png") + " " +
                             dir.file("k.tmk") + " " + dir.file("got.pbm"))
                .exit_code == 0);
    CHECK(nc(w, load_bitmatrix(dir.file("got.pbm"))) >= 0.95);

    CHECK(run_cli(dir, "extract --mode sideways " + dir.file("marked.png") + " " +
                           dir.file("k.tmk") + " " + dir.file("x.pbm"))
              .exit_code == 2);
}

TEST_CASE("sweep subcommand writes the CSV report") {
    TempDir dir("sweep");
    save_image(testutil::random_image(32, 32, 141), dir.file("cover.png"));
    save_bitmatrix(testutil::random_bits(32, 32, 142), dir.file("w.pbm"));
    REQUIRE(run_cli(dir, "keygen 32 32 9 " + dir.file("k.tmk")).exit_code == 0);

    {
        std::ofstream grid(dir.file("grid.txt"));
        grid << "crop strengths=10,20\n";
        grid << "saltpepper strengths=0.01 seeds=1,2\n";
    }
    const RunResult sweep =
        run_cli(dir, "sweep " + dir.file("cover.png") + " " + dir.file("w.pbm") + " " +
                         dir.file("k.tmk") + " " + dir.file("grid.txt") + " " + dir.file("r.csv"));
    CHECK(sweep.exit_code == 0);

    std::istringstream csv(slurp(dir.file("r.csv")));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "cover_id,attack_kind,strength,seed,nc,sc,mse,psnr");
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        CHECK(line.substr(0, 6) == "cover,");
    }
    CHECK(rows == 4);

    {
        std::ofstream grid(dir.file("empty.txt"));
        grid << "# no cells\n";
    }
    const RunResult empty =
        run_cli(dir, "sweep " + dir.file("cover.png") + " " + dir.file("w.pbm") + " " +
                         dir.file("k.tmk") + " " + dir.file("empty.txt") + " " + dir.file("e.csv"));
    CHECK(empty.exit_code == 2);
    CHECK(empty.err.find("no attack cells") != std::string::npos);
}
