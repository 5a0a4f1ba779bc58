#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "e8flash/gf.hpp"

namespace e8flash {

struct RsDecodeResult {
    std::vector<uint16_t> codeword;   ///< corrected codeword, length n
    std::vector<int> error_positions; ///< 0-based symbol indices that were corrected
};

/// Systematic, shortened Reed-Solomon code over GF(2^m).
///
/// A codeword is (info_0 .. info_{k-1}, parity_0 .. parity_{2t-1}); symbol i
/// is the coefficient of x^{n-1-i}. Shortening fixes the leading s = 2^m-1-n
/// information symbols of the parent code to zero, so a shortened codeword
/// zero-extended on the left is a parent codeword.
class RsCode {
public:
    RsCode(GaloisField field, int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int t() const { return t_; }
    /// Shortening relative to the 2^m - 1 parent length.
    int shortening() const { return static_cast<int>(field_.order()) - n_; }
    const GaloisField& field() const { return field_; }
    /// Generator polynomial coefficients, ascending degree, degree 2t.
    const std::vector<uint16_t>& generator() const { return gen_; }

    std::vector<uint16_t> encode(std::span<const uint16_t> info) const;

    /// Bounded-distance decode. Empty result signals an uncorrectable word.
    std::optional<RsDecodeResult> decode(std::span<const uint16_t> received) const;

    /// Syndromes S_1..S_2t of a word of length `len` (parent-length check
    /// uses len = 2^m - 1).
    std::vector<uint16_t> syndromes(std::span<const uint16_t> word) const;

private:
    GaloisField field_;
    int n_, k_, t_;
    std::vector<uint16_t> gen_;
};

}  // namespace e8flash
