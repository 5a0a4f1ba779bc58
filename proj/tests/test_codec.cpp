#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "e8flash/codec.hpp"
#include "e8flash/presets.hpp"

using namespace e8flash;

namespace {

std::vector<uint8_t> random_bits(int k, std::mt19937_64& rng) {
    std::vector<uint8_t> bits(static_cast<size_t>(k));
    for (auto& b : bits) b = static_cast<uint8_t>(rng() & 1);
    return bits;
}

// Perturb one block toward a neighboring lattice point: adds the scaled-domain
// minimal vector, attenuated once more by alpha. The attenuation keeps the
// received block strictly inside the neighbor's decision region while the
// transmitted point stays strictly the closer of the two post-processing
// candidates, so recovery is deterministic.
void inject_minimal_vector(std::vector<double>& cells, int block, const HalfIntVec& mv,
                           double alpha) {
    for (int j = 0; j < kDim; ++j)
        cells[static_cast<size_t>(block * kDim + j)] += alpha * alpha * mv.coord(j);
}

}  // namespace

TEST_CASE("frame layout reproduces the code table (cells, bits, rates)") {
    struct Row {
        const char* name;
        int cells, bits;
        double rate3;
    };
    const Row rows[] = {
        {"rs-172-170-1", 1376, 4112, 2.988},
        {"rs-172-168-2", 1376, 4096, 2.977},
        {"rs-173-167-3", 1384, 4104, 2.965},
        {"rs-174-166-4", 1392, 4112, 2.954},
        {"rs-174-164-5", 1392, 4096, 2.943},
    };
    for (const Row& r : rows) {
        FrameCodec codec = make_frame_codec(r.name);
        CHECK(codec.cells() == r.cells);
        CHECK(codec.info_bits() == r.bits);
        CHECK(std::round(codec.rate() * 1000.0) / 1000.0 == doctest::Approx(r.rate3).epsilon(1e-12));
    }

    const Row bch_rows[] = {
        {"bch-4109-4096-1", 1370, 4096, 2.991},
        {"bch-4122-4096-2", 1374, 4096, 2.981},
        {"bch-4135-4096-3", 1379, 4096, 2.972},
        {"bch-4148-4096-4", 1383, 4096, 2.962},
        {"bch-4161-4096-5", 1387, 4096, 2.953},
    };
    for (const Row& r : bch_rows) {
        BaselineCodec codec = make_baseline_codec(r.name);
        CHECK(codec.cells() == r.cells);
        CHECK(codec.info_bits() == r.bits);
        CHECK(std::round(codec.rate() * 1000.0) / 1000.0 == doctest::Approx(r.rate3).epsilon(1e-12));
    }
}

TEST_CASE("rate matches the closed form and collapses to log2 q without parity") {
    auto closed_form = [](int n_c, int k_c, int q) {
        double lg = std::log2(static_cast<double>(q));
        return static_cast<double>(k_c) / n_c * lg +
               static_cast<double>(n_c - k_c) / n_c * (lg - 1.0);
    };
    for (const CodePreset& p : kRsPresets) {
        FrameCodec codec = make_frame_codec(p.name);
        CHECK(codec.rate() == doctest::Approx(closed_form(p.n, p.k, p.q)).epsilon(1e-12));
    }
    // k_c = n_c leaves only systematic blocks
    CHECK(closed_form(172, 172, 8) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("all-zero info encodes to all-zero cells") {
    FrameCodec codec = make_frame_codec("rs-172-170-1");
    std::vector<uint8_t> zeros(static_cast<size_t>(codec.info_bits()), 0);
    auto cells = codec.encode(zeros);
    CHECK(std::all_of(cells.begin(), cells.end(), [](double c) { return c == 0.0; }));
}

TEST_CASE("every encoded cell lies in [0, V]") {
    std::mt19937_64 rng(41);
    FrameCodec codec = make_frame_codec("rs-172-168-2");
    for (int trial = 0; trial < 20; ++trial) {
        auto bits = random_bits(codec.info_bits(), rng);
        auto cells = codec.encode(bits);
        for (double c : cells) {
            CHECK(c >= 0.0);
            CHECK(c <= 7.0);
        }
    }
    // encode is deterministic
    auto bits = random_bits(codec.info_bits(), rng);
    CHECK(codec.encode(bits) == codec.encode(bits));
}

TEST_CASE("q=8 parity-block integer ranges") {
    FrameCodec codec = make_frame_codec("rs-172-170-1");
    CHECK(codec.shaping().parity_index_ranges() == IntVec{8, 4, 4, 4, 4, 4, 4, 2});
}

TEST_CASE("noiseless round trip across all presets") {
    std::mt19937_64 rng(42);
    for (const CodePreset& p : kRsPresets) {
        FrameCodec codec = make_frame_codec(p.name);
        for (int trial = 0; trial < 100; ++trial) {
            auto bits = random_bits(codec.info_bits(), rng);
            auto cells = codec.encode(bits);
            auto dec = codec.decode(cells);
            REQUIRE(dec.has_value());
            CHECK(dec->bits == bits);
            CHECK(dec->diag.rs_flagged == 0);
        }
    }
}

TEST_CASE("one corrupted block is fully recovered, including non-LSB bits") {
    std::mt19937_64 rng(43);
    FrameCodec codec = make_frame_codec("rs-172-170-1");
    const auto& mv = e8_minimal_vectors();
    const double alpha = codec.shaping().alpha();
    for (int trial = 0; trial < 400; ++trial) {
        auto bits = random_bits(codec.info_bits(), rng);
        auto cells = codec.encode(bits);
        int block = static_cast<int>(rng() % static_cast<uint64_t>(codec.blocks()));
        inject_minimal_vector(cells, block, mv[rng() % mv.size()], alpha);
        auto dec = codec.decode(cells);
        REQUIRE(dec.has_value());
        CHECK(dec->diag.rs_flagged == 1);
        CHECK(dec->diag.table_misses == 0);
        CHECK(dec->bits == bits);
    }
}

TEST_CASE("recovery works at a range of sub-cell perturbation gains") {
    std::mt19937_64 rng(44);
    FrameCodec codec = make_frame_codec("rs-172-168-2");
    const auto& mv = e8_minimal_vectors();
    for (double gain : {0.55, 0.7, 0.85, 0.99}) {
        for (int trial = 0; trial < 50; ++trial) {
            auto bits = random_bits(codec.info_bits(), rng);
            auto cells = codec.encode(bits);
            int block = static_cast<int>(rng() % static_cast<uint64_t>(codec.blocks()));
            const HalfIntVec& v = mv[rng() % mv.size()];
            double alpha = codec.shaping().alpha();
            for (int j = 0; j < kDim; ++j)
                cells[static_cast<size_t>(block * kDim + j)] += gain * alpha * v.coord(j);
            auto dec = codec.decode(cells);
            REQUIRE(dec.has_value());
            CHECK(dec->bits == bits);
        }
    }
}

TEST_CASE("t corrupted blocks are recovered; t+1 defeat the code") {
    std::mt19937_64 rng(45);
    FrameCodec codec = make_frame_codec("rs-172-168-2");  // t = 2
    const auto& mv = e8_minimal_vectors();
    const double alpha = codec.shaping().alpha();

    for (int trial = 0; trial < 100; ++trial) {
        auto bits = random_bits(codec.info_bits(), rng);
        auto cells = codec.encode(bits);
        int b1 = static_cast<int>(rng() % static_cast<uint64_t>(codec.blocks()));
        int b2 = (b1 + 1 + static_cast<int>(rng() % static_cast<uint64_t>(codec.blocks() - 1))) %
                 codec.blocks();
        inject_minimal_vector(cells, b1, mv[rng() % mv.size()], alpha);
        inject_minimal_vector(cells, b2, mv[rng() % mv.size()], alpha);
        auto dec = codec.decode(cells);
        REQUIRE(dec.has_value());
        CHECK(dec->bits == bits);
    }

    int word_errors = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto bits = random_bits(codec.info_bits(), rng);
        auto cells = codec.encode(bits);
        // three distinct blocks
        int blocks[3];
        blocks[0] = static_cast<int>(rng() % static_cast<uint64_t>(codec.blocks()));
        do blocks[1] = static_cast<int>(rng() % static_cast<uint64_t>(codec.blocks()));
        while (blocks[1] == blocks[0]);
        do blocks[2] = static_cast<int>(rng() % static_cast<uint64_t>(codec.blocks()));
        while (blocks[2] == blocks[0] || blocks[2] == blocks[1]);
        for (int b : blocks) inject_minimal_vector(cells, b, mv[rng() % mv.size()], alpha);
        auto dec = codec.decode(cells);
        if (!dec || dec->bits != bits) ++word_errors;
    }
    CHECK(word_errors == 100);
}

TEST_CASE("baseline: zero info, cell count, and round trips") {
    BaselineCodec codec = make_baseline_codec("bch-4109-4096-1");
    CHECK(codec.cells() == 1370);
    std::vector<uint8_t> zeros(4096, 0);
    auto cells = codec.encode(zeros);
    CHECK(std::all_of(cells.begin(), cells.end(), [](double c) { return c == 0.0; }));

    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        auto bits = random_bits(4096, rng);
        auto tx = codec.encode(bits);
        for (double c : tx) {
            CHECK(c >= 0.0);
            CHECK(c <= 7.0);
        }
        auto dec = codec.decode(tx);
        REQUIRE(dec.has_value());
        CHECK(*dec == bits);
    }
}

TEST_CASE("baseline: gray map is a bijection with single-bit neighbors") {
    BaselineCodec codec = make_baseline_codec("bch-4109-4096-1");
    for (int level = 0; level < 8; ++level) {
        CHECK(codec.gray_level(codec.gray_label(level)) == level);
        if (level > 0) {
            int diff = codec.gray_label(level) ^ codec.gray_label(level - 1);
            CHECK((diff & (diff - 1)) == 0);  // exactly one bit
        }
    }
}

TEST_CASE("baseline: a one-level cell error is a single corrected bit error") {
    std::mt19937_64 rng(47);
    BaselineCodec codec = make_baseline_codec("bch-4109-4096-1");  // t = 1
    for (int trial = 0; trial < 30; ++trial) {
        auto bits = random_bits(4096, rng);
        auto cells = codec.encode(bits);
        size_t cell = rng() % cells.size();
        cells[cell] += (cells[cell] > 3.5) ? -0.6 : 0.6;
        auto dec = codec.decode(cells);
        REQUIRE(dec.has_value());
        CHECK(*dec == bits);
    }
    // t+1 = 2 isolated one-level errors defeat the single-error code
    int word_errors = 0;
    for (int trial = 0; trial < 30; ++trial) {
        auto bits = random_bits(4096, rng);
        auto cells = codec.encode(bits);
        size_t c1 = rng() % cells.size();
        size_t c2 = (c1 + 1 + rng() % (cells.size() - 1)) % cells.size();
        for (size_t c : {c1, c2}) cells[c] += (cells[c] > 3.5) ? -0.6 : 0.6;
        auto dec = codec.decode(cells);
        if (!dec || *dec != bits) ++word_errors;
    }
    CHECK(word_errors == 30);
}

TEST_CASE("codec precondition failures") {
    FrameCodec codec = make_frame_codec("rs-172-170-1");
    std::vector<uint8_t> short_bits(100, 0);
    CHECK_THROWS_AS(codec.encode(short_bits), std::invalid_argument);
    std::vector<double> short_cells(100, 0.0);
    CHECK_THROWS_AS(codec.decode(short_cells), std::invalid_argument);
    CHECK_THROWS_AS(make_frame_codec("rs-999-1-1"), std::invalid_argument);
    CHECK_THROWS_AS(make_baseline_codec("nope"), std::invalid_argument);
}
