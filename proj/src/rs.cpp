#include "e8flash/rs.hpp"

#include <algorithm>

namespace e8flash {
namespace {

/// Berlekamp-Massey: minimal LFSR (error locator, ascending powers) for the
/// syndrome sequence. Returns the locator and its register length L.
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

}  // namespace

RsCode::RsCode(GaloisField field, int n, int k) : field_(std::move(field)), n_(n), k_(k) {
    if (n <= 0 || k <= 0 || k >= n || n > static_cast<int>(field_.order()))
        throw std::invalid_argument("RsCode: need 0 < k < n <= 2^m - 1");
    if ((n - k) % 2 != 0) throw std::invalid_argument("RsCode: n - k must be 2t");
    t_ = (n - k) / 2;

    // g(x) = prod_{j=1..2t} (x - alpha^j), ascending coefficients.
    gen_.assign(1, 1);
    for (int j = 1; j <= 2 * t_; ++j) {
        uint16_t root = field_.alpha_pow(j);
        gen_.push_back(0);
        for (size_t i = gen_.size() - 1; i > 0; --i)
            gen_[i] = static_cast<uint16_t>(gen_[i - 1] ^ field_.mul(gen_[i], root));
        gen_[0] = field_.mul(gen_[0], root);
    }
}

std::vector<uint16_t> RsCode::encode(std::span<const uint16_t> info) const {
    if (static_cast<int>(info.size()) != k_)
        throw std::invalid_argument("RsCode::encode: info length must be k");

    // Systematic: remainder of info(x) * x^{2t} divided by g(x).
    const int p = 2 * t_;
    std::vector<uint16_t> cw(static_cast<size_t>(n_), 0);
    std::copy(info.begin(), info.end(), cw.begin());

    std::vector<uint16_t> reg(static_cast<size_t>(p), 0);
    for (int i = 0; i < k_; ++i) {
        uint16_t feedback = static_cast<uint16_t>(info[static_cast<size_t>(i)] ^ reg[0]);
        for (int j = 0; j < p - 1; ++j)
            reg[static_cast<size_t>(j)] = static_cast<uint16_t>(
                reg[static_cast<size_t>(j + 1)] ^
                field_.mul(feedback, gen_[static_cast<size_t>(p - 1 - j)]));
        reg[static_cast<size_t>(p - 1)] = field_.mul(feedback, gen_[0]);
    }
    for (int j = 0; j < p; ++j) cw[static_cast<size_t>(k_ + j)] = reg[static_cast<size_t>(j)];
    return cw;
}

std::vector<uint16_t> RsCode::syndromes(std::span<const uint16_t> word) const {
    // S_j = word(alpha^j) with symbol i the coefficient of x^{len-1-i}.
    std::vector<uint16_t> synd(static_cast<size_t>(2 * t_), 0);
    for (int j = 1; j <= 2 * t_; ++j) {
        uint16_t a = field_.alpha_pow(j);
        uint16_t acc = 0;
        for (uint16_t sym : word) acc = static_cast<uint16_t>(field_.mul(acc, a) ^ sym);
        synd[static_cast<size_t>(j - 1)] = acc;
    }
    return synd;
}

std::optional<RsDecodeResult> RsCode::decode(std::span<const uint16_t> received) const {
    if (static_cast<int>(received.size()) != n_)
        throw std::invalid_argument("RsCode::decode: word length must be n");

    std::vector<uint16_t> synd = syndromes(received);
    if (std::all_of(synd.begin(), synd.end(), [](uint16_t s) { return s == 0; }))
        return RsDecodeResult{std::vector<uint16_t>(received.begin(), received.end()), {}};

    auto [lambda, L] = berlekamp_massey(field_, synd);
    if (L > t_ || static_cast<int>(lambda.size()) - 1 != L) return std::nullopt;

    // Chien search over the n transmitted positions; position i has locator
    // X = alpha^{n-1-i}.
    std::vector<int> positions;
    std::vector<uint16_t> locators;
    for (int i = 0; i < n_; ++i) {
        int d = n_ - 1 - i;
        uint16_t x_inv = field_.alpha_pow(-d);
        uint16_t v = 0;
        for (size_t j = lambda.size(); j-- > 0;)
            v = static_cast<uint16_t>(field_.mul(v, x_inv) ^ lambda[j]);
        if (v == 0) {
            positions.push_back(i);
            locators.push_back(field_.alpha_pow(d));
        }
    }
    if (static_cast<int>(positions.size()) != L) return std::nullopt;

    // Forney with S(x) = S_1 + S_2 x + ...: e = Omega(X^-1) / Lambda'(X^-1).
    std::vector<uint16_t> omega(static_cast<size_t>(2 * t_), 0);
    for (size_t i = 0; i < lambda.size(); ++i)
        for (size_t j = 0; i + j < omega.size() && j < synd.size(); ++j)
            omega[i + j] ^= field_.mul(lambda[i], synd[j]);

    RsDecodeResult out{std::vector<uint16_t>(received.begin(), received.end()), {}};
    for (size_t e = 0; e < positions.size(); ++e) {
        uint16_t x_inv = field_.inv(locators[e]);
        uint16_t om = 0;
        for (size_t j = omega.size(); j-- > 0;)
            om = static_cast<uint16_t>(field_.mul(om, x_inv) ^ omega[j]);
        uint16_t dlam = 0;  // Lambda'(x) keeps only odd-degree terms
        for (size_t j = 1; j < lambda.size(); j += 2) {
            uint16_t term = lambda[j];
            for (size_t pw = 0; pw + 1 < j; ++pw) term = field_.mul(term, x_inv);
            dlam ^= term;
        }
        if (dlam == 0) return std::nullopt;
        uint16_t mag = field_.div(om, dlam);
        if (mag == 0) return std::nullopt;
        out.codeword[static_cast<size_t>(positions[e])] ^= mag;
    }
    out.error_positions = std::move(positions);
    return out;
}

}  // namespace e8flash
