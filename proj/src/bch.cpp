#include "e8flash/bch.hpp"

#include <algorithm>
#include <set>

namespace e8flash {
namespace {

// Same Berlekamp-Massey as the RS path, kept local; error magnitudes are
// implicitly 1 for a binary code.
std::pair<std::vector<uint16_t>, int> berlekamp_massey(const GaloisField& gf,
                                                       std::span<const uint16_t> synd) {
    std::vector<uint16_t> lambda{1};
    std::vector<uint16_t> prev{1};
    int L = 0;
    int m = 1;
    uint16_t b = 1;
    for (size_t n = 0; n < synd.size(); ++n) {
        uint16_t delta = synd[n];
        for (int i = 1; i <= L && i < static_cast<int>(lambda.size()); ++i)
            delta ^= gf.mul(lambda[static_cast<size_t>(i)], synd[n - static_cast<size_t>(i)]);
        if (delta == 0) {
            ++m;
            continue;
        }
        std::vector<uint16_t> saved = lambda;
        uint16_t coef = gf.div(delta, b);
        if (lambda.size() < prev.size() + static_cast<size_t>(m))
            lambda.resize(prev.size() + static_cast<size_t>(m), 0);
        for (size_t i = 0; i < prev.size(); ++i)
            lambda[i + static_cast<size_t>(m)] ^= gf.mul(coef, prev[i]);
        if (2 * L <= static_cast<int>(n)) {
            L = static_cast<int>(n) + 1 - L;
            prev = std::move(saved);
            b = delta;
            m = 1;
        } else {
            ++m;
        }
    }
    while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
    return {std::move(lambda), L};
}

// Binary polynomial product, ascending bit vectors.
std::vector<uint8_t> poly_mul(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    std::vector<uint8_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] ^= b[j];
    }
    return r;
}

}  // namespace

BchCode::BchCode(GaloisField field, int n, int t) : field_(std::move(field)), n_(n), t_(t) {
    if (t < 1) throw std::invalid_argument("BchCode: t must be >= 1");
    if (n <= 0 || n > static_cast<int>(field_.order()))
        throw std::invalid_argument("BchCode: need 0 < n <= 2^m - 1");

    // Generator = product of the minimal polynomials of alpha^1 .. alpha^2t,
    // one per cyclotomic coset.
    const uint32_t order = field_.order();
    std::set<uint32_t> covered;
    gen_.assign(1, 1);
    for (int e = 1; e <= 2 * t_; ++e) {
        uint32_t exp = static_cast<uint32_t>(e) % order;
        if (covered.count(exp)) continue;
        std::vector<uint32_t> coset;
        uint32_t c = exp;
        do {
            coset.push_back(c);
            covered.insert(c);
            c = static_cast<uint32_t>((static_cast<uint64_t>(c) * 2) % order);
        } while (c != exp);

        // Minimal polynomial: prod (x - alpha^c) over the coset, computed in
        // GF(2^m); the result must collapse to 0/1 coefficients.
        std::vector<uint16_t> mp{1};
        for (uint32_t ce : coset) {
            uint16_t root = field_.alpha_pow(ce);
            mp.push_back(0);
            for (size_t i = mp.size() - 1; i > 0; --i)
                mp[i] = static_cast<uint16_t>(mp[i - 1] ^ field_.mul(mp[i], root));
            mp[0] = field_.mul(mp[0], root);
        }
        std::vector<uint8_t> mp_bits(mp.size());
        for (size_t i = 0; i < mp.size(); ++i) {
            if (mp[i] > 1) throw std::logic_error("BchCode: minimal polynomial not binary");
            mp_bits[i] = static_cast<uint8_t>(mp[i]);
        }
        gen_ = poly_mul(gen_, mp_bits);
    }

    k_ = n_ - generator_degree();
    if (k_ <= 0) throw std::invalid_argument("BchCode: generator degree >= n");
}

std::vector<uint8_t> BchCode::encode(std::span<const uint8_t> info_bits) const {
    if (static_cast<int>(info_bits.size()) != k_)
        throw std::invalid_argument("BchCode::encode: info length must be k");

    const int p = generator_degree();
    std::vector<uint8_t> cw(static_cast<size_t>(n_), 0);
    std::copy(info_bits.begin(), info_bits.end(), cw.begin());

    // LFSR division by the monic generator; reg[0] holds the highest degree.
    std::vector<uint8_t> reg(static_cast<size_t>(p), 0);
    for (int i = 0; i < k_; ++i) {
        uint8_t feedback = static_cast<uint8_t>((info_bits[static_cast<size_t>(i)] & 1u) ^ reg[0]);
        for (int j = 0; j < p - 1; ++j)
            reg[static_cast<size_t>(j)] = static_cast<uint8_t>(
                reg[static_cast<size_t>(j + 1)] ^
                (feedback & gen_[static_cast<size_t>(p - 1 - j)]));
        reg[static_cast<size_t>(p - 1)] = static_cast<uint8_t>(feedback & gen_[0]);
    }
    for (int j = 0; j < p; ++j) cw[static_cast<size_t>(k_ + j)] = reg[static_cast<size_t>(j)];
    return cw;
}

std::vector<uint16_t> BchCode::syndromes(std::span<const uint8_t> word) const {
    std::vector<uint16_t> synd(static_cast<size_t>(2 * t_), 0);
    for (int j = 1; j <= 2 * t_; ++j) {
        uint16_t a = field_.alpha_pow(j);
        uint16_t acc = 0;
        for (uint8_t bit : word) acc = static_cast<uint16_t>(field_.mul(acc, a) ^ (bit & 1u));
        synd[static_cast<size_t>(j - 1)] = acc;
    }
    return synd;
}

std::optional<std::vector<uint8_t>> BchCode::decode(std::span<const uint8_t> received) const {
    if (static_cast<int>(received.size()) != n_)
        throw std::invalid_argument("BchCode::decode: word length must be n");

    std::vector<uint16_t> synd = syndromes(received);
    if (std::all_of(synd.begin(), synd.end(), [](uint16_t s) { return s == 0; }))
        return std::vector<uint8_t>(received.begin(), received.end());

    auto [lambda, L] = berlekamp_massey(field_, synd);
    if (L > t_ || static_cast<int>(lambda.size()) - 1 != L) return std::nullopt;

    std::vector<uint8_t> out(received.begin(), received.end());
    int roots = 0;
    for (int i = 0; i < n_; ++i) {
        uint16_t x_inv = field_.alpha_pow(-(n_ - 1 - i));
        uint16_t v = 0;
        for (size_t j = lambda.size(); j-- > 0;)
            v = static_cast<uint16_t>(field_.mul(v, x_inv) ^ lambda[j]);
        if (v == 0) {
            out[static_cast<size_t>(i)] ^= 1u;
            ++roots;
        }
    }
    if (roots != L) return std::nullopt;
    return out;
}

}  // namespace e8flash
