#include "e8flash/codec.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace e8flash {
namespace {

int ilog2_exact(int v) {
    if (v <= 0 || (v & (v - 1)) != 0) throw std::invalid_argument("expected a power of two");
    return std::countr_zero(static_cast<unsigned>(v));
}

/// Reads `width` bits MSB-first from bits[pos...]; width 0 reads nothing.
int32_t read_bits(std::span<const uint8_t> bits, size_t& pos, int width) {
    int32_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (bits[pos++] & 1);
    return v;
}

void write_bits(std::vector<uint8_t>& bits, size_t& pos, int32_t v, int width) {
    for (int i = width - 1; i >= 0; --i) bits[pos++] = static_cast<uint8_t>((v >> i) & 1);
}

}  // namespace

FrameCodec::FrameCodec(RsCode rs, int q)
    : rs_(std::move(rs)), q_(q), log2q_(ilog2_exact(q)), shaping_(q) {
    if (q < 4) throw std::invalid_argument("FrameCodec: q must be >= 4 to embed parity LSBs");
    if (rs_.field().m() != 8) throw std::invalid_argument("FrameCodec: RS code must be over GF(2^8)");

    int sys_total = 0, par_total = 0;
    for (int i = 0; i < kDim; ++i) {
        sys_widths_[static_cast<size_t>(i)] = ilog2_exact(shaping_.index_ranges()[static_cast<size_t>(i)]);
        par_widths_[static_cast<size_t>(i)] =
            shaping_.parity_index_ranges()[static_cast<size_t>(i)] > 1
                ? ilog2_exact(shaping_.parity_index_ranges()[static_cast<size_t>(i)])
                : 0;
        sys_total += sys_widths_[static_cast<size_t>(i)];
        par_total += par_widths_[static_cast<size_t>(i)];
    }
    // k = k_c 8 log2 q + (n_c - k_c)(8 log2 q - 8)
    info_bits_ = rs_.k() * sys_total + (rs_.n() - rs_.k()) * par_total;
}

double FrameCodec::rate() const {
    return static_cast<double>(info_bits_) / static_cast<double>(cells());
}

std::vector<double> FrameCodec::encode(std::span<const uint8_t> bits) const {
    if (static_cast<int>(bits.size()) != info_bits_)
        throw std::invalid_argument("FrameCodec::encode: wrong number of info bits");

    const int n_c = rs_.n(), k_c = rs_.k();
    size_t pos = 0;
    std::vector<double> cells(static_cast<size_t>(this->cells()));

    // Systematic blocks: info integers, LSBs feed the RS symbols.
    std::vector<uint16_t> symbols(static_cast<size_t>(k_c), 0);
    std::vector<IntVec> sys_a(static_cast<size_t>(k_c));
    for (int blk = 0; blk < k_c; ++blk) {
        IntVec a{};
        uint16_t sym = 0;
        for (int j = 0; j < kDim; ++j) {
            a[static_cast<size_t>(j)] = read_bits(bits, pos, sys_widths_[static_cast<size_t>(j)]);
            sym |= static_cast<uint16_t>((a[static_cast<size_t>(j)] & 1) << j);
        }
        sys_a[static_cast<size_t>(blk)] = a;
        symbols[static_cast<size_t>(blk)] = sym;
    }
    std::vector<uint16_t> cw = rs_.encode(symbols);

    for (int blk = 0; blk < n_c; ++blk) {
        IntVec a{};
        if (blk < k_c) {
            a = sys_a[static_cast<size_t>(blk)];
        } else {
            // Parity blocks: integer = parity bit + 2 * info integer.
            uint16_t p = cw[static_cast<size_t>(blk)];
            for (int j = 0; j < kDim; ++j) {
                int32_t info = read_bits(bits, pos, par_widths_[static_cast<size_t>(j)]);
                a[static_cast<size_t>(j)] = static_cast<int32_t>((p >> j) & 1) + 2 * info;
            }
        }
        auto enc = shaping_.encode(a);
        auto block_cells = shaping_.to_cells(enc.x);
        for (int j = 0; j < kDim; ++j)
            cells[static_cast<size_t>(blk * kDim + j)] = block_cells[static_cast<size_t>(j)];
    }
    return cells;
}

std::optional<FrameCodec::Decoded> FrameCodec::decode(std::span<const double> cells) const {
    if (static_cast<int>(cells.size()) != this->cells())
        throw std::invalid_argument("FrameCodec::decode: wrong number of cells");

    const int n_c = rs_.n(), k_c = rs_.k();
    const IntVec& ranges = shaping_.index_ranges();

    std::vector<std::array<double, kDim>> received(static_cast<size_t>(n_c));
    std::vector<IntVec> a_hat(static_cast<size_t>(n_c));
    std::vector<uint16_t> u_hat(static_cast<size_t>(n_c));
    for (int blk = 0; blk < n_c; ++blk) {
        std::array<double, kDim> y;
        for (int j = 0; j < kDim; ++j) y[static_cast<size_t>(j)] = cells[static_cast<size_t>(blk * kDim + j)];
        y = shaping_.from_cells(y);
        received[static_cast<size_t>(blk)] = y;
        HalfIntVec x = e8_nearest(y);
        IntVec a = shaping_.index_of(x);
        a_hat[static_cast<size_t>(blk)] = a;
        uint16_t sym = 0;
        for (int j = 0; j < kDim; ++j) sym |= static_cast<uint16_t>((a[static_cast<size_t>(j)] & 1) << j);
        u_hat[static_cast<size_t>(blk)] = sym;
    }

    auto rs_result = rs_.decode(u_hat);
    if (!rs_result) return std::nullopt;

    Decoded out;
    out.diag.rs_flagged = static_cast<int>(rs_result->error_positions.size());

    for (int blk : rs_result->error_positions) {
        IntVec& a = a_hat[static_cast<size_t>(blk)];
        uint16_t u = rs_result->codeword[static_cast<size_t>(blk)];
        uint8_t pattern = static_cast<uint8_t>(u_hat[static_cast<size_t>(blk)] ^ u);
        const ErrorPatternTable::Entry* entry = table_.lookup(pattern);
        if (entry == nullptr) {
            // Not a minimal-vector error: repair the LSBs from the RS symbol
            // and keep the remaining bits as decoded.
            ++out.diag.table_misses;
            for (int j = 0; j < kDim; ++j)
                a[static_cast<size_t>(j)] =
                    (a[static_cast<size_t>(j)] & ~1) | static_cast<int32_t>((u >> j) & 1);
            continue;
        }
        // Two sign candidates, wrapped back into range, then re-encoded and
        // compared against the received block in the unscaled domain.
        IntVec plus{}, minus{};
        for (int j = 0; j < kDim; ++j) {
            int32_t r = ranges[static_cast<size_t>(j)];
            int32_t p = (a[static_cast<size_t>(j)] + entry->db[static_cast<size_t>(j)]) % r;
            if (p < 0) p += r;
            int32_t m = (a[static_cast<size_t>(j)] - entry->db[static_cast<size_t>(j)]) % r;
            if (m < 0) m += r;
            plus[static_cast<size_t>(j)] = p;
            minus[static_cast<size_t>(j)] = m;
        }
        auto xp = shaping_.encode(plus).x.to_doubles();
        auto xm = shaping_.encode(minus).x.to_doubles();
        double dp = 0.0, dm = 0.0;
        const auto& y = received[static_cast<size_t>(blk)];
        for (int j = 0; j < kDim; ++j) {
            double ep = y[static_cast<size_t>(j)] - xp[static_cast<size_t>(j)];
            double em = y[static_cast<size_t>(j)] - xm[static_cast<size_t>(j)];
            dp += ep * ep;
            dm += em * em;
        }
        if (dp <= dm) {
            a = plus;
            ++out.diag.picked_plus;
        } else {
            a = minus;
            ++out.diag.picked_minus;
        }
    }

    out.bits.resize(static_cast<size_t>(info_bits_));
    size_t pos = 0;
    for (int blk = 0; blk < k_c; ++blk)
        for (int j = 0; j < kDim; ++j)
            write_bits(out.bits, pos, a_hat[static_cast<size_t>(blk)][static_cast<size_t>(j)],
                       sys_widths_[static_cast<size_t>(j)]);
    for (int blk = k_c; blk < n_c; ++blk)
        for (int j = 0; j < kDim; ++j)
            write_bits(out.bits, pos, a_hat[static_cast<size_t>(blk)][static_cast<size_t>(j)] >> 1,
                       par_widths_[static_cast<size_t>(j)]);
    return out;
}

BaselineCodec::BaselineCodec(BchCode bch, int q)
    : bch_(std::move(bch)), q_(q), log2q_(ilog2_exact(q)) {
    cells_ = (bch_.n() + log2q_ - 1) / log2q_;
}

double BaselineCodec::rate() const {
    return static_cast<double>(bch_.k()) * log2q_ / static_cast<double>(bch_.n());
}

int BaselineCodec::gray_level(int label) const {
    int level = 0;
    for (int b = label; b != 0; b >>= 1) level ^= b;
    return level;
}

std::vector<double> BaselineCodec::encode(std::span<const uint8_t> bits) const {
    std::vector<uint8_t> cw = bch_.encode(bits);
    std::vector<double> cells(static_cast<size_t>(cells_), 0.0);
    for (int c = 0; c < cells_; ++c) {
        int label = 0;
        for (int b = 0; b < log2q_; ++b) {
            size_t idx = static_cast<size_t>(c * log2q_ + b);
            int bit = idx < cw.size() ? cw[idx] : 0;  // zero padding past n
            label = (label << 1) | bit;
        }
        cells[static_cast<size_t>(c)] = static_cast<double>(gray_level(label));
    }
    return cells;
}

std::optional<std::vector<uint8_t>> BaselineCodec::decode(std::span<const double> cells) const {
    if (static_cast<int>(cells.size()) != cells_)
        throw std::invalid_argument("BaselineCodec::decode: wrong number of cells");

    std::vector<uint8_t> bits(static_cast<size_t>(bch_.n()), 0);
    for (int c = 0; c < cells_; ++c) {
        long level = std::lround(cells[static_cast<size_t>(c)]);
        if (level < 0) level = 0;
        if (level > q_ - 1) level = q_ - 1;
        int label = gray_label(static_cast<int>(level));
        for (int b = 0; b < log2q_; ++b) {
            size_t idx = static_cast<size_t>(c * log2q_ + b);
            if (idx < bits.size())
                bits[idx] = static_cast<uint8_t>((label >> (log2q_ - 1 - b)) & 1);
        }
    }
    auto cw = bch_.decode(bits);
    if (!cw) return std::nullopt;
    return std::vector<uint8_t>(cw->begin(), cw->begin() + bch_.k());
}

}  // namespace e8flash
