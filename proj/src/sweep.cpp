#include "tintmark/sweep.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tintmark/metrics.hpp"

namespace tintmark {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

std::string cell_id(const AttackSpec& cell) {
    return std::string(attack_kind_name(cell.kind)) + " strength=" +
           format_metric(cell.strength) + " seed=" + std::to_string(cell.seed);
}

}  // namespace

std::vector<AttackSpec> parse_grid(std::istream& in) {
    std::vector<AttackSpec> cells;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream tokens(line);
        std::string kind_name;
        if (!(tokens >> kind_name) || kind_name[0] == '#') continue;

        const AttackKind kind = attack_kind_from_name(kind_name);
        std::vector<double> strengths;
        std::vector<std::uint64_t> seeds;

        std::string token;
        while (tokens >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("grid line " + std::to_string(lineno) +
                                            ": expected key=value, got '" + token + "'");
            }
            const std::string key = token.substr(0, eq);
            if (key != "strengths" && key != "seeds") {
                throw std::invalid_argument("grid line " + std::to_string(lineno) +
                                            ": unknown key '" + key + "'");
            }
            for (const std::string& v : split(token.substr(eq + 1), ',')) {
                try {
                    std::size_t consumed = 0;
                    if (key == "strengths") {
                        const double s = std::stod(v, &consumed);
                        if (consumed != v.size()) throw std::invalid_argument(v);
                        strengths.push_back(s);
                    } else {
                        const std::uint64_t s = std::stoull(v, &consumed);
                        if (consumed != v.size()) throw std::invalid_argument(v);
                        seeds.push_back(s);
                    }
                } catch (const std::logic_error&) {
                    throw std::invalid_argument("grid line " + std::to_string(lineno) +
                                                ": malformed value '" + v + "' in '" + token + "'");
                }
            }
        }
        if (strengths.empty()) {
            throw std::invalid_argument("grid line " + std::to_string(lineno) +
                                        ": attack '" + kind_name + "' lists no strengths");
        }
        if (seeds.empty()) seeds.push_back(0);

        for (const double strength : strengths) {
            for (const std::uint64_t seed : seeds) {
                cells.push_back({kind, strength, seed});
            }
        }
    }
    if (cells.empty()) throw std::invalid_argument("no attack cells in grid");
    return cells;
}

std::vector<AttackSpec> parse_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid file '" + path + "'");
    return parse_grid(in);
}

std::vector<SweepRow> run_sweep(const RgbImage& cover, const BitMatrix& watermark,
                                const BitMatrix& key, const std::vector<AttackSpec>& cells,
                                SelectionMode mode, const std::string& cover_id) {
    const RgbImage marked = embed(cover, watermark, key, {mode});

    std::vector<SweepRow> rows;
    rows.reserve(cells.size());
    for (const AttackSpec& cell : cells) {
        try {
            const RgbImage attacked = apply_attack(marked, cell);
            const BitMatrix recovered = extract(attacked, key, {mode});
            SweepRow row;
            row.cover_id = cover_id;
            row.attack_kind = std::string(attack_kind_name(cell.kind));
            row.strength = cell.strength;
            row.seed = cell.seed;
            row.nc = nc(watermark, recovered);
            row.sc = sc(watermark, recovered);
            row.mse = mse(marked, attacked);
            row.psnr = psnr_from_mse(row.mse);
            rows.push_back(std::move(row));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("sweep cell [" + cell_id(cell) + "] failed: " + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep cell [" + cell_id(cell) + "] failed: " + e.what());
        }
    }
    return rows;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
    std::string out = "cover_id,attack_kind,strength,seed,nc,sc,mse,psnr\n";
    for (const SweepRow& row : rows) {
        out += row.cover_id;
        out += ',';
        out += row.attack_kind;
        out += ',';
        out += format_metric(row.strength);
        out += ',';
        out += std::to_string(row.seed);
        out += ',';
        out += format_metric(row.nc);
        out += ',';
        out += format_metric(row.sc);
        out += ',';
        out += format_metric(row.mse);
        out += ',';
        out += format_metric(row.psnr);
        out += '\n';
    }
    return out;
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        const std::string csv = format_csv(rows);
        out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
        if (!out) throw std::runtime_error("write failure on '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace tintmark
