// Command-line front end: WER simulation, rate table, error-pattern dump and
// a built-in oracle self test.
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "e8flash/codec.hpp"
#include "e8flash/presets.hpp"
#include "e8flash/sim.hpp"

namespace {

using namespace e8flash;

int cmd_simulate(const std::string& scheme, const std::string& preset, int q,
                 const std::string& snr, uint64_t seed, uint64_t min_word_errors,
                 uint64_t max_frames, int workers, int symbols_per_word) {
    SimConfig cfg;
    cfg.scheme = scheme_from_name(scheme);
    cfg.preset = preset;
    cfg.q = q;
    cfg.snrs_db = parse_snr_sweep(snr);
    cfg.seed = seed;
    cfg.min_word_errors = min_word_errors;
    cfg.max_frames = max_frames;
    cfg.workers = workers;
    cfg.symbols_per_word = symbols_per_word;

    bool coded = cfg.scheme == Scheme::E8Rs || cfg.scheme == Scheme::PamBch;
    if (coded && cfg.preset.empty()) {
        std::cerr << "error: --preset is required for scheme " << scheme << "\n";
        return 1;
    }
    if (!coded) cfg.preset.clear();

    std::vector<SimPoint> points = run_wer(cfg);
    for (const SimPoint& p : points)
        std::fprintf(stderr, "# snr=%.6g dB frames=%" PRIu64 " errors=%" PRIu64 " wer=%.3e (%.1fs)\n",
                     p.snr_db, p.frames, p.word_errors, p.wer, p.wall_seconds);
    write_csv(std::cout, cfg, points);
    return 0;
}

int cmd_rates() {
    std::printf("%-18s %-14s %5s %6s %7s %10s %10s\n", "preset", "(n,k,t)", "s", "cells",
                "bits", "code_rate", "bits/cell");
    for (const CodePreset& p : kRsPresets) {
        FrameCodec codec = make_frame_codec(p.name);
        std::printf("%-18s (%d,%d,%d) %5d %6d %7d %10.3f %10.3f\n", p.name, p.n, p.k, p.t, p.s,
                    codec.cells(), codec.info_bits(),
                    static_cast<double>(p.k) / p.n, codec.rate());
    }
    for (const CodePreset& p : kBchPresets) {
        BaselineCodec codec = make_baseline_codec(p.name);
        std::printf("%-18s (%d,%d,%d) %5d %6d %7d %10.3f %10.3f\n", p.name, p.n, p.k, p.t, p.s,
                    codec.cells(), codec.info_bits(),
                    static_cast<double>(p.k) / p.n, codec.rate());
    }
    return 0;
}

int cmd_table() {
    // Three column groups per row, one row per signed minimal vector.
    ErrorPatternTable table;
    auto print_row = [](const HalfIntVec& dx, const IntVec& db, uint8_t pattern) {
        std::printf("dx=(");
        for (int i = 0; i < kDim; ++i) std::printf(" %4.1f", dx.coord(i));
        std::printf(" )  da=(");
        for (int i = 0; i < kDim; ++i) std::printf(" %3d", db[static_cast<size_t>(i)]);
        std::printf(" )  pattern=(");
        for (int i = 0; i < kDim; ++i) std::printf(" %d", (pattern >> i) & 1);
        std::printf(" )\n");
    };
    for (const auto& e : table.entries()) {
        print_row(e.dx, e.db, e.pattern);
        HalfIntVec ndx;
        IntVec ndb;
        for (int i = 0; i < kDim; ++i) {
            ndx.twice[static_cast<size_t>(i)] = -e.dx.twice[static_cast<size_t>(i)];
            ndb[static_cast<size_t>(i)] = -e.db[static_cast<size_t>(i)];
        }
        print_row(ndx, ndb, e.pattern);
    }
    return 0;
}

bool report(const char* name, bool ok) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", name);
    return ok;
}

int cmd_selftest() {
    bool all = true;
    std::mt19937_64 rng(12345);

    // Field arithmetic against a bitwise carry-less multiply oracle.
    {
        GaloisField gf(8, kGf256Poly);
        auto clmul_mod = [](uint32_t a, uint32_t b, uint32_t poly, int m) {
            uint32_t acc = 0;
            for (int i = 0; i < m; ++i)
                if ((b >> i) & 1u) acc ^= a << i;
            for (int d = 2 * m - 2; d >= m; --d)
                if ((acc >> d) & 1u) acc ^= poly << (d - m);
            return acc;
        };
        bool ok = true;
        for (int i = 0; i < 1000 && ok; ++i) {
            uint16_t a = static_cast<uint16_t>(rng() & 0xFF), b = static_cast<uint16_t>(rng() & 0xFF);
            ok = gf.mul(a, b) == clmul_mod(a, b, kGf256Poly, 8);
        }
        all &= report("gf256 multiply vs carry-less oracle", ok);
    }

    // Minimal-vector census and pattern table.
    {
        const auto& mv = e8_minimal_vectors();
        int type1 = 0, type2 = 0;
        bool norms = true;
        for (const auto& v : mv) {
            if (v.norm2_times4() != 8) norms = false;
            int nz = 0;
            for (int i = 0; i < kDim; ++i) nz += v.twice[static_cast<size_t>(i)] != 0;
            (nz == 2 ? type1 : type2)++;
        }
        ErrorPatternTable table;
        all &= report("minimal vectors: 240 = 112 + 128, norm^2 = 2",
                      mv.size() == 240 && type1 == 112 && type2 == 128 && norms);
        all &= report("error table: 120 distinct nonzero patterns", table.size() == 120);
    }

    // Nearest point against the exhaustive box search.
    {
        std::uniform_real_distribution<double> u(0.0, 8.0);
        bool ok = true;
        for (int i = 0; i < 20000 && ok; ++i) {
            std::array<double, kDim> y;
            for (auto& v : y) v = u(rng);
            ok = e8_nearest(y) == e8_nearest_exhaustive(y);
        }
        all &= report("e8 nearest point vs exhaustive search (2e4 samples)", ok);
    }

    // Cube encoding is a bijection at q = 4.
    {
        CubeShaping shaping(4);
        bool ok = true;
        std::vector<uint8_t> seen(1u << 24, 0);
        int count = 0;
        IntVec a{};
        const IntVec& ranges = shaping.index_ranges();
        auto loop = [&](auto&& self, int depth) -> void {
            if (!ok) return;
            if (depth == kDim) {
                auto enc = shaping.encode(a);
                uint32_t key = 0;
                for (int i = 0; i < kDim; ++i) {
                    int32_t tw = enc.x.twice[static_cast<size_t>(i)];
                    if (tw < 0 || tw >= 8) { ok = false; return; }
                    key = key << 3 | static_cast<uint32_t>(tw);
                }
                if (seen[key]) { ok = false; return; }
                seen[key] = 1;
                ++count;
                if (shaping.index_of(enc.x) != a) ok = false;
                return;
            }
            for (int v = 0; v < ranges[static_cast<size_t>(depth)]; ++v) {
                a[static_cast<size_t>(depth)] = v;
                self(self, depth + 1);
            }
        };
        loop(loop, 0);
        all &= report("cube encode/index bijection over 4^8 indices", ok && count == 65536);
    }

    // Code round trips with random correctable errors.
    {
        bool ok = true;
        for (const CodePreset& p : kRsPresets) {
            FrameCodec codec = make_frame_codec(p.name);
            const RsCode& rs = codec.rs();
            std::uniform_int_distribution<int> sym(0, 255);
            for (int trial = 0; trial < 200 && ok; ++trial) {
                std::vector<uint16_t> info(static_cast<size_t>(rs.k()));
                for (auto& s : info) s = static_cast<uint16_t>(sym(rng));
                auto cw = rs.encode(info);
                auto rx = cw;
                std::vector<int> pos(static_cast<size_t>(rs.n()));
                for (int i = 0; i < rs.n(); ++i) pos[static_cast<size_t>(i)] = i;
                std::shuffle(pos.begin(), pos.end(), rng);
                int nerr = static_cast<int>(rng() % static_cast<uint64_t>(rs.t() + 1));
                for (int e = 0; e < nerr; ++e)
                    rx[static_cast<size_t>(pos[static_cast<size_t>(e)])] ^=
                        static_cast<uint16_t>(1 + sym(rng) % 255);
                auto dec = rs.decode(rx);
                ok = dec && dec->codeword == cw;
            }
        }
        all &= report("rs presets: random <= t symbol errors corrected", ok);

        ok = true;
        for (const CodePreset& p : kBchPresets) {
            BaselineCodec codec = make_baseline_codec(p.name);
            const BchCode& bch = codec.bch();
            for (int trial = 0; trial < 20 && ok; ++trial) {
                std::vector<uint8_t> info(static_cast<size_t>(bch.k()));
                for (auto& b : info) b = static_cast<uint8_t>(rng() & 1);
                auto cw = bch.encode(info);
                auto rx = cw;
                int nerr = static_cast<int>(rng() % static_cast<uint64_t>(bch.t() + 1));
                for (int e = 0; e < nerr; ++e) rx[rng() % rx.size()] ^= 1u;
                auto dec = bch.decode(rx);
                ok = dec && *dec == cw;
            }
        }
        all &= report("bch presets: random <= t bit errors corrected", ok);
    }

    // Frame round trip and forced single-block lattice errors.
    {
        FrameCodec codec = make_frame_codec("rs-172-170-1");
        const double alpha = codec.shaping().alpha();
        std::uniform_int_distribution<int> bit(0, 1);
        bool ok = true;
        for (int trial = 0; trial < 50 && ok; ++trial) {
            std::vector<uint8_t> bits(static_cast<size_t>(codec.info_bits()));
            for (auto& b : bits) b = static_cast<uint8_t>(bit(rng));
            auto cells = codec.encode(bits);
            if (trial % 2 == 1) {
                const auto& mv = e8_minimal_vectors()[rng() % 240];
                size_t blk = rng() % static_cast<size_t>(codec.blocks());
                for (int j = 0; j < kDim; ++j)
                    cells[blk * kDim + static_cast<size_t>(j)] += alpha * alpha * mv.coord(j);
            }
            auto dec = codec.decode(cells);
            ok = dec && dec->bits == bits;
        }
        all &= report("frame round trip incl. injected minimal-vector block errors", ok);
    }

    std::printf("%s\n", all ? "selftest: all suites passed" : "selftest: FAILURES");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"E8 lattice + Reed-Solomon coded modulation simulator for multi-level flash"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo word-error-rate sweep, CSV on stdout");
    std::string scheme, preset, snr;
    int q = 8, workers = 0, symbols_per_word = 1;
    uint64_t seed = 1, min_word_errors = 100, max_frames = 10'000'000;
    sim->add_option("--scheme", scheme, "e8rs | pam-bch | e8-uncoded | pam-uncoded")->required();
    sim->add_option("--preset", preset, "code preset name (coded schemes)");
    sim->add_option("--q", q, "levels per cell for uncoded schemes")->capture_default_str();
    sim->add_option("--snr", snr, "SNR in dB: start:step:end or a single value")->required();
    sim->add_option("--seed", seed, "64-bit RNG seed")->capture_default_str();
    sim->add_option("--min-word-errors", min_word_errors, "stop rule")->capture_default_str();
    sim->add_option("--max-frames", max_frames, "stop rule")->capture_default_str();
    sim->add_option("--workers", workers, "worker threads (0 = hardware)")->capture_default_str();
    sim->add_option("--symbols-per-word", symbols_per_word,
                    "uncoded schemes: symbols per word")->capture_default_str();

    auto* rates = app.add_subcommand("rates", "Print the code parameter and rate table");
    auto* table = app.add_subcommand("table", "Dump the 240 minimal-vector error patterns");
    auto* selftest = app.add_subcommand("selftest", "Run the oracle self-test suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(scheme, preset, q, snr, seed, min_word_errors, max_frames,
                                workers, symbols_per_word);
        if (rates->parsed()) return cmd_rates();
        if (table->parsed()) return cmd_table();
        if (selftest->parsed()) return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
