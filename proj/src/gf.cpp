#include "e8flash/gf.hpp"

namespace e8flash {

GaloisField::GaloisField(int m, uint32_t primitive_poly)
    : m_(m), poly_(primitive_poly), size_(1u << m) {
    if (m < 1 || m > 16) throw std::invalid_argument("GaloisField: m must be in [1, 16]");
    if ((primitive_poly >> m) != 1u)
        throw std::invalid_argument("GaloisField: polynomial degree must equal m");

    log_.assign(size_, 0);
    exp_.assign(2 * (size_ - 1), 0);

    uint32_t x = 1;
    for (uint32_t i = 0; i < size_ - 1; ++i) {
        if (x == 1 && i != 0)
            throw std::invalid_argument("GaloisField: polynomial is not primitive (generator order < 2^m - 1)");
        exp_[i] = static_cast<uint16_t>(x);
        exp_[i + size_ - 1] = static_cast<uint16_t>(x);
        log_[x] = static_cast<uint16_t>(i);
        x <<= 1;
        if (x & size_) x ^= poly_;
    }
    if (x != 1)
        throw std::invalid_argument("GaloisField: polynomial is not primitive (generator order < 2^m - 1)");
}

}  // namespace e8flash
