#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace e8flash {

inline constexpr int kDim = 8;

/// E8 point in the unscaled domain. Every coordinate is a multiple of 1/2,
/// so points are stored exactly as doubled integers.
struct HalfIntVec {
    std::array<int32_t, kDim> twice{};

    double coord(int i) const { return 0.5 * twice[static_cast<size_t>(i)]; }
    std::array<double, kDim> to_doubles() const {
        std::array<double, kDim> r;
        for (int i = 0; i < kDim; ++i) r[static_cast<size_t>(i)] = coord(i);
        return r;
    }
    /// Squared Euclidean norm (exact: twice-coordinates keep it integral *4).
    int64_t norm2_times4() const {
        int64_t s = 0;
        for (int32_t v : twice) s += static_cast<int64_t>(v) * v;
        return s;
    }
    friend auto operator<=>(const HalfIntVec&, const HalfIntVec&) = default;
};

/// Lower-triangular E8 generator with entries doubled to stay integral.
/// Row i, column j of 2*G; x = G b.
inline constexpr std::array<std::array<int32_t, kDim>, kDim> kTwiceGenerator = {{
    {1, 0, 0, 0, 0, 0, 0, 0},
    {1, 2, 0, 0, 0, 0, 0, 0},
    {1, -2, 2, 0, 0, 0, 0, 0},
    {1, 0, -2, 2, 0, 0, 0, 0},
    {1, 0, 0, -2, 2, 0, 0, 0},
    {1, 0, 0, 0, -2, 2, 0, 0},
    {1, 0, 0, 0, 0, -2, 2, 0},
    {1, 0, 0, 0, 0, 0, -2, 4},
}};

using IntVec = std::array<int32_t, kDim>;
using CoefVec = std::array<int64_t, kDim>;

/// G b for integer coefficients b.
HalfIntVec point_from_coefficients(const CoefVec& b);

/// G^{-1} x by forward substitution; throws std::invalid_argument when x is
/// not a lattice point.
CoefVec coefficients_of(const HalfIntVec& x);

bool is_lattice_point(const HalfIntVec& x);

/// Nearest E8 point: the closer of the two D8-coset candidates, where the D8
/// round re-rounds the worst coordinate the wrong way when the integer sum is
/// odd. Ties prefer the integer coset; equally-bad coordinates resolve to the
/// lowest index.
HalfIntVec e8_nearest(const std::array<double, kDim>& y);

/// Reference nearest-point search: enumerates both cosets over the 3^8 box of
/// integer vectors around the rounded target. The nearest D8 point never
/// leaves that box, since moving one coordinate by 2 keeps the coordinate-sum
/// parity and strictly shortens the distance once the offset reaches 1.5.
HalfIntVec e8_nearest_exhaustive(const std::array<double, kDim>& y);

/// The 240 minimum-norm vectors: 112 of type (+-1^2, 0^6) and 128 of type
/// (+-1/2)^8 with an even number of minus signs.
const std::vector<HalfIntVec>& e8_minimal_vectors();

/// Map from the 8-bit modulo-2 signature of a minimal-vector coefficient
/// error to one canonical representative of the +-pair. 120 entries.
class ErrorPatternTable {
public:
    struct Entry {
        HalfIntVec dx;  ///< canonical minimal vector G*db
        IntVec db;      ///< canonical integer error pattern
        uint8_t pattern;
    };

    ErrorPatternTable();

    /// Bit j of the pattern is |db_j| mod 2.
    static uint8_t pattern_of(const CoefVec& db);

    const Entry* lookup(uint8_t pattern) const {
        int idx = index_[pattern];
        return idx < 0 ? nullptr : &entries_[static_cast<size_t>(idx)];
    }
    size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
    std::array<int16_t, 256> index_;
};

/// Cube-shaped codebook machinery: the (V+1)^8 lattice points with unscaled
/// coordinates in [0, M), indexed by integers a_i in [0, M/g_ii), plus the
/// alpha = V/(V+0.5) scaling that places half-integer boundary points on V.
class CubeShaping {
public:
    explicit CubeShaping(int m_bound);

    int M() const { return m_; }
    int V() const { return m_ - 1; }
    double alpha() const { return static_cast<double>(2 * V()) / (2 * V() + 1); }

    /// M / g_ii per coordinate: (2M, M, M, M, M, M, M, M/2).
    const IntVec& index_ranges() const { return ranges_; }
    /// Ranges available above an embedded LSB: M / (2 g_ii).
    const IntVec& parity_index_ranges() const { return parity_ranges_; }

    struct Encoded {
        HalfIntVec x;  ///< the unique codebook point with index a
        CoefVec b;     ///< coefficients, b_i = a_i + (M/g_ii) k_i
        IntVec wraps;  ///< the k_i
    };
    Encoded encode(const IntVec& a) const;

    /// a_i = b_i mod (M/g_ii); inverse of encode() on the codebook and
    /// well-defined on the whole lattice.
    IntVec index_of(const HalfIntVec& x) const;

    /// Multiply by alpha; exact at the cube boundary ((V+0.5) -> V).
    std::array<double, kDim> to_cells(const HalfIntVec& x) const;
    /// Divide by alpha.
    std::array<double, kDim> from_cells(const std::array<double, kDim>& cells) const;

private:
    int m_;
    IntVec ranges_;
    IntVec parity_ranges_;
};

}  // namespace e8flash
