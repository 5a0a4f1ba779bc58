#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "e8flash/bch.hpp"
#include "e8flash/lattice.hpp"
#include "e8flash/rs.hpp"

namespace e8flash {

struct FrameDiagnostics {
    int rs_flagged = 0;     ///< blocks the RS decoder corrected
    int table_misses = 0;   ///< flagged blocks whose bit pattern is not minimal
    int picked_plus = 0;    ///< post-processing selections of a_hat + e
    int picked_minus = 0;   ///< post-processing selections of a_hat - e
};

/// Frame-level codec for the E8 + Reed-Solomon construction.
///
/// A frame is n_c blocks of 8 cells; block i carries RS symbol i in the LSBs
/// of its index integers. Systematic blocks carry 8 log2(q) information bits;
/// parity blocks embed the RS parity bit per coordinate as the LSB and carry
/// 8 log2(q) - 8 information bits above it.
class FrameCodec {
public:
    FrameCodec(RsCode rs, int q);

    int q() const { return q_; }
    int blocks() const { return rs_.n(); }
    int cells() const { return kDim * rs_.n(); }
    int info_bits() const { return info_bits_; }
    /// Information bits per cell.
    double rate() const;

    const RsCode& rs() const { return rs_; }
    const CubeShaping& shaping() const { return shaping_; }
    const ErrorPatternTable& error_table() const { return table_; }

    /// bits (0/1, length info_bits()) -> cell values in [0, V].
    std::vector<double> encode(std::span<const uint8_t> bits) const;

    struct Decoded {
        std::vector<uint8_t> bits;
        FrameDiagnostics diag;
    };
    /// Returns nothing when RS decoding fails (an uncorrectable word).
    std::optional<Decoded> decode(std::span<const double> cells) const;

private:
    RsCode rs_;
    int q_;
    int log2q_;
    CubeShaping shaping_;
    ErrorPatternTable table_;
    IntVec sys_widths_;  ///< info bits per coordinate, systematic blocks
    IntVec par_widths_;  ///< info bits per coordinate, parity blocks
    int info_bits_;
};

/// Conventional baseline: BCH-coded bits written as Gray-coded PAM levels.
class BaselineCodec {
public:
    BaselineCodec(BchCode bch, int q);

    int q() const { return q_; }
    int cells() const { return cells_; }
    int info_bits() const { return bch_.k(); }
    /// k log2(q) / n information bits per cell.
    double rate() const;

    const BchCode& bch() const { return bch_; }

    std::vector<double> encode(std::span<const uint8_t> bits) const;
    /// Hard-decision per cell, inverse Gray map, BCH decode.
    std::optional<std::vector<uint8_t>> decode(std::span<const double> cells) const;

    int gray_label(int level) const { return level ^ (level >> 1); }
    int gray_level(int label) const;  ///< inverse of gray_label

private:
    BchCode bch_;
    int q_;
    int log2q_;
    int cells_;
};

}  // namespace e8flash
