#include "e8flash/lattice.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace e8flash {

HalfIntVec point_from_coefficients(const CoefVec& b) {
    HalfIntVec x;
    for (int i = 0; i < kDim; ++i) {
        int64_t acc = 0;
        for (int j = 0; j <= i; ++j)
            acc += static_cast<int64_t>(kTwiceGenerator[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
                   b[static_cast<size_t>(j)];
        x.twice[static_cast<size_t>(i)] = static_cast<int32_t>(acc);
    }
    return x;
}

CoefVec coefficients_of(const HalfIntVec& x) {
    CoefVec b{};
    for (int i = 0; i < kDim; ++i) {
        int64_t acc = x.twice[static_cast<size_t>(i)];
        for (int j = 0; j < i; ++j)
            acc -= static_cast<int64_t>(kTwiceGenerator[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
                   b[static_cast<size_t>(j)];
        int32_t diag = kTwiceGenerator[static_cast<size_t>(i)][static_cast<size_t>(i)];
        if (acc % diag != 0)
            throw std::invalid_argument("coefficients_of: input is not an E8 lattice point");
        b[static_cast<size_t>(i)] = acc / diag;
    }
    return b;
}

bool is_lattice_point(const HalfIntVec& x) {
    CoefVec b{};
    for (int i = 0; i < kDim; ++i) {
        int64_t acc = x.twice[static_cast<size_t>(i)];
        for (int j = 0; j < i; ++j)
            acc -= static_cast<int64_t>(kTwiceGenerator[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
                   b[static_cast<size_t>(j)];
        int32_t diag = kTwiceGenerator[static_cast<size_t>(i)][static_cast<size_t>(i)];
        if (acc % diag != 0) return false;
        b[static_cast<size_t>(i)] = acc / diag;
    }
    return true;
}

namespace {

struct D8Candidate {
    std::array<double, kDim> point;
    double dist2;
};

// Nearest point of D8 + shift*1: round every coordinate; if the rounded sum
// has odd parity, re-round the least reliable coordinate the wrong way.
D8Candidate d8_nearest_shifted(const std::array<double, kDim>& y, double shift) {
    std::array<double, kDim> f;
    int64_t sum = 0;
    int worst = 0;
    double worst_err = -1.0;
    for (int i = 0; i < kDim; ++i) {
        double u = y[static_cast<size_t>(i)] - shift;
        double r = std::round(u);
        f[static_cast<size_t>(i)] = r;
        sum += static_cast<int64_t>(r);
        double err = std::abs(u - r);
        if (err > worst_err) {
            worst_err = err;
            worst = i;
        }
    }
    if (sum & 1) {
        double u = y[static_cast<size_t>(worst)] - shift;
        double r = f[static_cast<size_t>(worst)];
        f[static_cast<size_t>(worst)] = r + (u >= r ? 1.0 : -1.0);
    }
    D8Candidate c{};
    c.dist2 = 0.0;
    for (int i = 0; i < kDim; ++i) {
        double p = f[static_cast<size_t>(i)] + shift;
        c.point[static_cast<size_t>(i)] = p;
        double d = y[static_cast<size_t>(i)] - p;
        c.dist2 += d * d;
    }
    return c;
}

}  // namespace

HalfIntVec e8_nearest(const std::array<double, kDim>& y) {
    D8Candidate a = d8_nearest_shifted(y, 0.0);
    D8Candidate b = d8_nearest_shifted(y, 0.5);
    const D8Candidate& best = (a.dist2 <= b.dist2) ? a : b;
    HalfIntVec out;
    for (int i = 0; i < kDim; ++i)
        out.twice[static_cast<size_t>(i)] =
            static_cast<int32_t>(std::llround(2.0 * best.point[static_cast<size_t>(i)]));
    return out;
}

HalfIntVec e8_nearest_exhaustive(const std::array<double, kDim>& y) {
    double best = std::numeric_limits<double>::infinity();
    std::array<double, kDim> best_point{};

    std::array<double, kDim> z{};
    for (int coset = 0; coset < 2; ++coset) {
        double shift = 0.5 * coset;
        std::array<double, kDim> center;
        for (int i = 0; i < kDim; ++i)
            center[static_cast<size_t>(i)] = std::round(y[static_cast<size_t>(i)] - shift);

        auto search = [&](auto&& self, int depth, int64_t parity, double dist2) -> void {
            if (dist2 >= best) return;
            if (depth == kDim) {
                if (parity & 1) return;
                best = dist2;
                best_point = z;
                return;
            }
            for (int step = -1; step <= 1; ++step) {
                double p = center[static_cast<size_t>(depth)] + step + shift;
                z[static_cast<size_t>(depth)] = p;
                double d = y[static_cast<size_t>(depth)] - p;
                self(self, depth + 1,
                     parity + static_cast<int64_t>(center[static_cast<size_t>(depth)]) + step,
                     dist2 + d * d);
            }
        };
        search(search, 0, 0, 0.0);
    }

    HalfIntVec out;
    for (int i = 0; i < kDim; ++i)
        out.twice[static_cast<size_t>(i)] =
            static_cast<int32_t>(std::llround(2.0 * best_point[static_cast<size_t>(i)]));
    return out;
}

const std::vector<HalfIntVec>& e8_minimal_vectors() {
    static const std::vector<HalfIntVec> vecs = [] {
        std::vector<HalfIntVec> v;
        v.reserve(240);
        // (+-1^2, 0^6)
        for (int i = 0; i < kDim; ++i)
            for (int j = i + 1; j < kDim; ++j)
                for (int si = -1; si <= 1; si += 2)
                    for (int sj = -1; sj <= 1; sj += 2) {
                        HalfIntVec p;
                        p.twice[static_cast<size_t>(i)] = 2 * si;
                        p.twice[static_cast<size_t>(j)] = 2 * sj;
                        v.push_back(p);
                    }
        // (+-1/2)^8 with an even number of minus signs
        for (uint32_t mask = 0; mask < 256; ++mask) {
            if (std::popcount(mask) % 2 != 0) continue;
            HalfIntVec p;
            for (int i = 0; i < kDim; ++i)
                p.twice[static_cast<size_t>(i)] = (mask >> i) & 1u ? -1 : 1;
            v.push_back(p);
        }
        return v;
    }();
    return vecs;
}

uint8_t ErrorPatternTable::pattern_of(const CoefVec& db) {
    uint8_t p = 0;
    for (int i = 0; i < kDim; ++i)
        p |= static_cast<uint8_t>((db[static_cast<size_t>(i)] & 1) << i);
    return p;
}

ErrorPatternTable::ErrorPatternTable() {
    index_.fill(-1);
    entries_.reserve(120);
    for (const HalfIntVec& dx : e8_minimal_vectors()) {
        CoefVec db = coefficients_of(dx);
        uint8_t pattern = pattern_of(db);
        if (pattern == 0)
            throw std::logic_error("ErrorPatternTable: minimal vector with all-even coefficients");

        // Canonical representative of the +- pair: first nonzero entry positive.
        bool negate = false;
        for (int i = 0; i < kDim; ++i) {
            if (db[static_cast<size_t>(i)] != 0) {
                negate = db[static_cast<size_t>(i)] < 0;
                break;
            }
        }
        IntVec canon{};
        for (int i = 0; i < kDim; ++i)
            canon[static_cast<size_t>(i)] =
                static_cast<int32_t>(negate ? -db[static_cast<size_t>(i)] : db[static_cast<size_t>(i)]);

        int16_t existing = index_[pattern];
        if (existing >= 0) {
            if (entries_[static_cast<size_t>(existing)].db != canon)
                throw std::logic_error("ErrorPatternTable: two distinct errors share a bit pattern");
            continue;
        }
        Entry e;
        e.db = canon;
        CoefVec cb{};
        for (int i = 0; i < kDim; ++i) cb[static_cast<size_t>(i)] = canon[static_cast<size_t>(i)];
        e.dx = point_from_coefficients(cb);
        e.pattern = pattern;
        index_[pattern] = static_cast<int16_t>(entries_.size());
        entries_.push_back(e);
    }
    if (entries_.size() != 120)
        throw std::logic_error("ErrorPatternTable: expected 120 canonical entries");
}

CubeShaping::CubeShaping(int m_bound) : m_(m_bound) {
    if (m_ < 2 || m_ % 2 != 0)
        throw std::invalid_argument("CubeShaping: M must be even and >= 2 so M/g_ii is integral");
    for (int i = 0; i < kDim; ++i) {
        int diag = kTwiceGenerator[static_cast<size_t>(i)][static_cast<size_t>(i)];
        ranges_[static_cast<size_t>(i)] = 2 * m_ / diag;
        parity_ranges_[static_cast<size_t>(i)] = m_ / diag;
    }
}

CubeShaping::Encoded CubeShaping::encode(const IntVec& a) const {
    for (int i = 0; i < kDim; ++i)
        if (a[static_cast<size_t>(i)] < 0 || a[static_cast<size_t>(i)] >= ranges_[static_cast<size_t>(i)])
            throw std::out_of_range("CubeShaping::encode: index integer out of range");

    Encoded out{};
    const int64_t twoM = 2 * m_;
    for (int i = 0; i < kDim; ++i) {
        int64_t partial = 0;  // doubled partial row sum over settled coefficients
        for (int j = 0; j < i; ++j)
            partial += static_cast<int64_t>(kTwiceGenerator[static_cast<size_t>(i)][static_cast<size_t>(j)]) *
                       out.b[static_cast<size_t>(j)];
        int64_t diag = kTwiceGenerator[static_cast<size_t>(i)][static_cast<size_t>(i)];
        // Unique k_i with 0 <= partial + diag*(a_i + (2M/diag) k_i) < 2M.
        int64_t num = -partial - diag * a[static_cast<size_t>(i)];
        int64_t k = num / twoM;
        if (k * twoM < num) ++k;
        out.wraps[static_cast<size_t>(i)] = static_cast<int32_t>(k);
        out.b[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] + (twoM / diag) * k;
        int64_t x2 = partial + diag * out.b[static_cast<size_t>(i)];
        out.x.twice[static_cast<size_t>(i)] = static_cast<int32_t>(x2);
    }
    return out;
}

IntVec CubeShaping::index_of(const HalfIntVec& x) const {
    CoefVec b = coefficients_of(x);
    IntVec a{};
    for (int i = 0; i < kDim; ++i) {
        int64_t r = ranges_[static_cast<size_t>(i)];
        int64_t v = b[static_cast<size_t>(i)] % r;
        if (v < 0) v += r;
        a[static_cast<size_t>(i)] = static_cast<int32_t>(v);
    }
    return a;
}

std::array<double, kDim> CubeShaping::to_cells(const HalfIntVec& x) const {
    // alpha * x = twice * V / (2V + 1); exact whenever the quotient is integral.
    std::array<double, kDim> out;
    const double denom = static_cast<double>(2 * V() + 1);
    for (int i = 0; i < kDim; ++i)
        out[static_cast<size_t>(i)] =
            static_cast<double>(static_cast<int64_t>(x.twice[static_cast<size_t>(i)]) * V()) / denom;
    return out;
}

std::array<double, kDim> CubeShaping::from_cells(const std::array<double, kDim>& cells) const {
    std::array<double, kDim> out;
    const double num = static_cast<double>(2 * V() + 1);
    const double denom = static_cast<double>(2 * V());
    for (int i = 0; i < kDim; ++i) out[static_cast<size_t>(i)] = cells[static_cast<size_t>(i)] * num / denom;
    return out;
}

}  // namespace e8flash
