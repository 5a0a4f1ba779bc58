#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "e8flash/rng.hpp"

namespace e8flash {

/// AWGN read channel at peak SNR V^2 / sigma^2.
struct ChannelSpec {
    double snr_db = 0.0;
    double peak = 0.0;   ///< V
    double sigma = 0.0;

    static ChannelSpec from_snr_db(double snr_db, double peak);
    static ChannelSpec from_sigma(double sigma, double peak);
};

/// y_i = x_i + n_i with n_i iid Gaussian(0, sigma^2); no clipping.
void awgn(std::span<double> x, double sigma, RandomStream& rng);

/// Gaussian upper-tail probability.
double q_function(double x);
/// Hard-decision symbol error rate of uncoded PAM on levels 0..q-1:
/// 2 (q-1)/q * Q(1/(2 sigma)).
double pam_symbol_error_rate(int q, double sigma);

enum class Scheme { E8Rs, PamBch, E8Uncoded, PamUncoded };

Scheme scheme_from_name(std::string_view name);
std::string_view scheme_name(Scheme s);

struct SimConfig {
    Scheme scheme = Scheme::E8Rs;
    std::string preset;            ///< required for the coded schemes
    int q = 8;                     ///< levels per cell for the uncoded schemes
    std::vector<double> snrs_db;
    uint64_t seed = 1;
    uint64_t min_word_errors = 100;
    uint64_t max_frames = 10'000'000;
    int workers = 0;               ///< 0 = hardware concurrency
    /// For the uncoded schemes a word is this many symbols (E8 blocks or PAM
    /// cells); 1 reproduces plain symbol-error counting.
    int symbols_per_word = 1;
};

struct SimPoint {
    double snr_db = 0.0;
    uint64_t frames = 0;
    uint64_t word_errors = 0;
    double wer = 0.0;
    double ci95_halfwidth = 0.0;
    double wall_seconds = 0.0;
};

/// Monte-Carlo WER sweep. Each trial's randomness is keyed by (seed, frame
/// index) only, and stopping is decided on fixed-size batch boundaries, so
/// results are identical for any worker count.
std::vector<SimPoint> run_wer(const SimConfig& cfg);

/// One SNR point with an explicit channel (sigma = 0 is allowed).
SimPoint run_point(const SimConfig& cfg, const ChannelSpec& ch);

/// Information bits per cell of the configured scheme (log2 q for uncoded).
double scheme_rate(const SimConfig& cfg);

void write_csv(std::ostream& os, const SimConfig& cfg, std::span<const SimPoint> points);
std::string csv_string(const SimConfig& cfg, std::span<const SimPoint> points);

/// Parses "start:step:end" (inclusive) or a single "x" in dB.
std::vector<double> parse_snr_sweep(const std::string& text);

}  // namespace e8flash
