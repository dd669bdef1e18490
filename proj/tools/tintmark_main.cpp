// tintmark - blind LSB watermarking tool for color images.
//
// Subcommands: embed, extract, keygen, attack, sweep.  Exit codes: 0 on
// success, 2 for usage or validation errors, 1 for runtime failures.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "tintmark/attacks.hpp"
#include "tintmark/codec.hpp"
#include "tintmark/image_io.hpp"
#include "tintmark/metrics.hpp"
#include "tintmark/sweep.hpp"

namespace {

tintmark::SelectionMode parse_mode(const std::string& mode) {
    return mode == "paper" ? tintmark::SelectionMode::PaperFaithful
                           : tintmark::SelectionMode::Stable;
}

struct EmbedArgs {
    std::string cover, watermark, key, out;
    std::string mode = "stable";
};

struct ExtractArgs {
    std::string marked, key, out;
    std::string mode = "stable";
};

struct KeygenArgs {
    int rows = 0, cols = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct AttackArgs {
    std::string input, kind, out;
    double strength = 0.0;
    std::uint64_t seed = 0;
};

struct SweepArgs {
    std::string cover, watermark, key, grid, csv;
    std::string mode = "stable";
};

int run_embed(const EmbedArgs& args) {
    const tintmark::RgbImage cover = tintmark::load_image(args.cover);
    const tintmark::BitMatrix watermark = tintmark::load_bitmatrix(args.watermark);
    const tintmark::BitMatrix key = tintmark::load_bitmatrix(args.key);

    // Refuse lossy output before doing any work.
    std::string ext = std::filesystem::path(args.out).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".jpg" || ext == ".jpeg") {
        throw std::invalid_argument("lossy container refused: '" + args.out +
                                    "' (watermarked images must be saved as PNG or BMP)");
    }

    const tintmark::RgbImage marked =
        tintmark::embed(cover, watermark, key, {parse_mode(args.mode)});
    tintmark::save_image(marked, args.out);

    const tintmark::QualityReport report = tintmark::quality(cover, marked);
    std::cout << "mse=" << tintmark::format_metric(report.mse)
              << " psnr=" << tintmark::format_metric(report.psnr) << "\n";
    return 0;
}

int run_extract(const ExtractArgs& args) {
    const tintmark::RgbImage marked = tintmark::load_image(args.marked);
    const tintmark::BitMatrix key = tintmark::load_bitmatrix(args.key);
    const tintmark::BitMatrix watermark =
        tintmark::extract(marked, key, {parse_mode(args.mode)});
    tintmark::save_bitmatrix(watermark, args.out);
    return 0;
}

int run_keygen(const KeygenArgs& args) {
    tintmark::save_key(tintmark::keygen(args.rows, args.cols, args.seed), args.out);
    return 0;
}

int run_attack(const AttackArgs& args) {
    const tintmark::RgbImage input = tintmark::load_image(args.input);
    tintmark::AttackSpec spec;
    spec.kind = tintmark::attack_kind_from_name(args.kind);
    spec.strength = args.strength;
    spec.seed = args.seed;
    tintmark::save_image(tintmark::apply_attack(input, spec), args.out);
    return 0;
}

int run_sweep(const SweepArgs& args) {
    const tintmark::RgbImage cover = tintmark::load_image(args.cover);
    const tintmark::BitMatrix watermark = tintmark::load_bitmatrix(args.watermark);
    const tintmark::BitMatrix key = tintmark::load_bitmatrix(args.key);
    const std::vector<tintmark::AttackSpec> cells = tintmark::parse_grid_file(args.grid);

    const std::string cover_id = std::filesystem::path(args.cover).stem().string();
    const std::vector<tintmark::SweepRow> rows = tintmark::run_sweep(
        cover, watermark, key, cells, parse_mode(args.mode), cover_id);
    tintmark::write_csv(rows, args.csv);
    std::cout << "rows=" << rows.size() << " csv=" << args.csv << "\n";
    return 0;
}

void add_mode_flag(CLI::App* cmd, std::string& mode) {
    cmd->add_option("--mode", mode, "channel selection mode")
        ->check(CLI::IsMember({"stable", "paper"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind LSB watermarking for 24-bit color images"};
    app.require_subcommand(1);

    EmbedArgs embed_args;
    CLI::App* cmd_embed = app.add_subcommand("embed", "embed a watermark into a cover image");
    cmd_embed->add_option("cover", embed_args.cover, "cover image (PNG/BMP)")->required();
    cmd_embed->add_option("watermark", embed_args.watermark, "watermark (PBM/PGM/PNG)")->required();
    cmd_embed->add_option("key", embed_args.key, "secret key (TMK1 or monochrome image)")->required();
    cmd_embed->add_option("out", embed_args.out, "output image (PNG/BMP)")->required();
    add_mode_flag(cmd_embed, embed_args.mode);

    ExtractArgs extract_args;
    CLI::App* cmd_extract = app.add_subcommand("extract", "extract a watermark from a marked image");
    cmd_extract->add_option("marked", extract_args.marked, "watermarked image")->required();
    cmd_extract->add_option("key", extract_args.key, "secret key")->required();
    cmd_extract->add_option("out", extract_args.out, "output watermark (PBM/PGM/PNG)")->required();
    add_mode_flag(cmd_extract, extract_args.mode);

    KeygenArgs keygen_args;
    CLI::App* cmd_keygen = app.add_subcommand("keygen", "generate a TMK1 key file");
    cmd_keygen->add_option("rows", keygen_args.rows, "key rows")->required();
    cmd_keygen->add_option("cols", keygen_args.cols, "key columns")->required();
    cmd_keygen->add_option("seed", keygen_args.seed, "64-bit seed")->required();
    cmd_keygen->add_option("out", keygen_args.out, "output key file")->required();

    AttackArgs attack_args;
    CLI::App* cmd_attack = app.add_subcommand("attack", "apply an attack to an image");
    cmd_attack->add_option("input", attack_args.input, "input image")->required();
    cmd_attack->add_option("kind", attack_args.kind, "crop | jpeg | blur | saltpepper")->required();
    cmd_attack->add_option("strength", attack_args.strength,
                           "crop %, jpeg quality, blur radius, or noise density")->required();
    cmd_attack->add_option("out", attack_args.out, "output image")->required();
    cmd_attack->add_option("--seed", attack_args.seed, "seed for saltpepper")
        ->capture_default_str();

    SweepArgs sweep_args;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run an attack grid and write a CSV report");
    cmd_sweep->add_option("cover", sweep_args.cover, "cover image")->required();
    cmd_sweep->add_option("watermark", sweep_args.watermark, "watermark")->required();
    cmd_sweep->add_option("key", sweep_args.key, "secret key")->required();
    cmd_sweep->add_option("grid", sweep_args.grid, "grid config file")->required();
    cmd_sweep->add_option("csv", sweep_args.csv, "output CSV path")->required();
    add_mode_flag(cmd_sweep, sweep_args.mode);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_embed->parsed()) return run_embed(embed_args);
        if (cmd_extract->parsed()) return run_extract(extract_args);
        if (cmd_keygen->parsed()) return run_keygen(keygen_args);
        if (cmd_attack->parsed()) return run_attack(attack_args);
        if (cmd_sweep->parsed()) return run_sweep(sweep_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
