#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace e8flash {

/// Arithmetic over GF(2^m), m <= 16, backed by log/antilog tables.
///
/// The per-operation cost after construction is a table lookup or two.
/// Construction verifies that `primitive_poly` is primitive: the powers of
/// the generator element x must enumerate all 2^m - 1 nonzero elements.
class GaloisField {
public:
    GaloisField(int m, uint32_t primitive_poly);

    int m() const { return m_; }
    uint32_t primitive_poly() const { return poly_; }
    /// Number of field elements, 2^m.
    uint32_t size() const { return size_; }
    /// Multiplicative group order, 2^m - 1.
    uint32_t order() const { return size_ - 1; }

    static uint16_t add(uint16_t a, uint16_t b) { return a ^ b; }

    uint16_t mul(uint16_t a, uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    uint16_t inv(uint16_t a) const {
        if (a == 0) throw std::domain_error("GaloisField::inv: zero has no inverse");
        return exp_[order() - log_[a]];
    }

    uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }

    /// alpha^e for any integer exponent (negative exponents wrap mod 2^m - 1).
    uint16_t alpha_pow(int64_t e) const {
        int64_t r = e % order();
        if (r < 0) r += order();
        return exp_[static_cast<uint32_t>(r)];
    }

    /// a^e with a != 0 or e > 0.
    uint16_t pow(uint16_t a, int64_t e) const {
        if (a == 0) {
            if (e <= 0) throw std::domain_error("GaloisField::pow: 0^e undefined for e <= 0");
            return 0;
        }
        return alpha_pow(static_cast<int64_t>(log_[a]) * e);
    }

    uint16_t log(uint16_t a) const {
        if (a == 0) throw std::domain_error("GaloisField::log: log(0) undefined");
        return log_[a];
    }

private:
    int m_;
    uint32_t poly_;
    uint32_t size_;
    std::vector<uint16_t> log_;
    std::vector<uint16_t> exp_;  // doubled so mul() can skip the mod-reduce
};

/// x^8 + x^4 + x^3 + x^2 + 1, the conventional primitive polynomial for GF(2^8).
inline constexpr uint32_t kGf256Poly = 0x11D;
/// x^13 + x^4 + x^3 + x + 1, primitive over GF(2^13).
inline constexpr uint32_t kGf8192Poly = 0x201B;

}  // namespace e8flash
