#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "e8flash/gf.hpp"

namespace e8flash {

/// Systematic, shortened, narrow-sense binary BCH code with roots
/// alpha^1 .. alpha^2t over GF(2^m).
///
/// Bit i of a codeword is the coefficient of x^{n-1-i}; the first k bits are
/// information. k is realized as n minus the generator degree (the generator
/// is the LCM of the minimal polynomials of the 2t consecutive roots).
class BchCode {
public:
    BchCode(GaloisField field, int n, int t);

    int n() const { return n_; }
    int k() const { return k_; }
    int t() const { return t_; }
    int shortening() const { return static_cast<int>(field_.order()) - n_; }
    const GaloisField& field() const { return field_; }
    /// Generator polynomial bits, ascending degree.
    const std::vector<uint8_t>& generator_bits() const { return gen_; }
    int generator_degree() const { return static_cast<int>(gen_.size()) - 1; }

    std::vector<uint8_t> encode(std::span<const uint8_t> info_bits) const;

    /// Bounded-distance decode; returns the corrected codeword or nothing.
    std::optional<std::vector<uint8_t>> decode(std::span<const uint8_t> received) const;

    std::vector<uint16_t> syndromes(std::span<const uint8_t> word) const;

private:
    GaloisField field_;
    int n_, k_, t_;
    std::vector<uint8_t> gen_;
};

}  // namespace e8flash
