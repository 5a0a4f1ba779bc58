#include "e8flash/sim.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "e8flash/presets.hpp"

namespace e8flash {

ChannelSpec ChannelSpec::from_snr_db(double snr_db, double peak) {
    ChannelSpec c;
    c.snr_db = snr_db;
    c.peak = peak;
    c.sigma = peak / std::pow(10.0, snr_db / 20.0);
    return c;
}

ChannelSpec ChannelSpec::from_sigma(double sigma, double peak) {
    ChannelSpec c;
    c.sigma = sigma;
    c.peak = peak;
    c.snr_db = sigma > 0.0 ? 20.0 * std::log10(peak / sigma)
                           : std::numeric_limits<double>::infinity();
    return c;
}

void awgn(std::span<double> x, double sigma, RandomStream& rng) {
    if (sigma < 0.0) throw std::invalid_argument("awgn: sigma must be >= 0");
    if (sigma == 0.0) return;
    for (double& v : x) v += sigma * rng.next_gaussian();
}

double q_function(double x) { return 0.5 * std::erfc(x / 1.4142135623730950488); }

double pam_symbol_error_rate(int q, double sigma) {
    if (sigma <= 0.0) return 0.0;
    return 2.0 * (q - 1) / static_cast<double>(q) * q_function(1.0 / (2.0 * sigma));
}

Scheme scheme_from_name(std::string_view name) {
    if (name == "e8rs") return Scheme::E8Rs;
    if (name == "pam-bch") return Scheme::PamBch;
    if (name == "e8-uncoded") return Scheme::E8Uncoded;
    if (name == "pam-uncoded") return Scheme::PamUncoded;
    throw std::invalid_argument("unknown scheme: " + std::string(name));
}

std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::E8Rs: return "e8rs";
        case Scheme::PamBch: return "pam-bch";
        case Scheme::E8Uncoded: return "e8-uncoded";
        case Scheme::PamUncoded: return "pam-uncoded";
    }
    return "?";
}

namespace {

void fill_random_bits(std::vector<uint8_t>& bits, RandomStream& rng) {
    size_t i = 0;
    while (i < bits.size()) {
        uint64_t w = rng.next_u64();
        for (int b = 0; b < 64 && i < bits.size(); ++b, ++i) bits[i] = static_cast<uint8_t>((w >> b) & 1);
    }
}

/// One Monte-Carlo trial; must derive all randomness from the given stream.
class Trial {
public:
    virtual ~Trial() = default;
    virtual bool word_error(RandomStream& rng, double sigma) = 0;
};

class E8RsTrial : public Trial {
public:
    explicit E8RsTrial(const FrameCodec& codec)
        : codec_(codec), bits_(static_cast<size_t>(codec.info_bits())) {}

    bool word_error(RandomStream& rng, double sigma) override {
        fill_random_bits(bits_, rng);
        std::vector<double> cells = codec_.encode(bits_);
        awgn(cells, sigma, rng);
        auto decoded = codec_.decode(cells);
        return !decoded || decoded->bits != bits_;
    }

private:
    const FrameCodec& codec_;
    std::vector<uint8_t> bits_;
};

class PamBchTrial : public Trial {
public:
    explicit PamBchTrial(const BaselineCodec& codec)
        : codec_(codec), bits_(static_cast<size_t>(codec.info_bits())) {}

    bool word_error(RandomStream& rng, double sigma) override {
        fill_random_bits(bits_, rng);
        std::vector<double> cells = codec_.encode(bits_);
        awgn(cells, sigma, rng);
        auto decoded = codec_.decode(cells);
        return !decoded || *decoded != bits_;
    }

private:
    const BaselineCodec& codec_;
    std::vector<uint8_t> bits_;
};

class E8UncodedTrial : public Trial {
public:
    E8UncodedTrial(int q, int symbols_per_word) : shaping_(q), symbols_(symbols_per_word) {
        for (int j = 0; j < kDim; ++j) {
            int r = shaping_.index_ranges()[static_cast<size_t>(j)];
            if ((r & (r - 1)) != 0) throw std::invalid_argument("e8-uncoded: q must be a power of two");
            bits_[static_cast<size_t>(j)] = std::countr_zero(static_cast<unsigned>(r));
        }
    }

    bool word_error(RandomStream& rng, double sigma) override {
        for (int s = 0; s < symbols_; ++s) {
            IntVec a{};
            for (int j = 0; j < kDim; ++j)
                a[static_cast<size_t>(j)] =
                    static_cast<int32_t>(rng.next_bits(bits_[static_cast<size_t>(j)]));
            auto cells = shaping_.to_cells(shaping_.encode(a).x);
            awgn(cells, sigma, rng);
            IntVec back = shaping_.index_of(e8_nearest(shaping_.from_cells(cells)));
            if (back != a) return true;
        }
        return false;
    }

private:
    CubeShaping shaping_;
    int symbols_;
    IntVec bits_{};
};

class PamUncodedTrial : public Trial {
public:
    PamUncodedTrial(int q, int symbols_per_word) : q_(q), symbols_(symbols_per_word) {
        if ((q & (q - 1)) != 0 || q < 2) throw std::invalid_argument("pam-uncoded: q must be a power of two");
        level_bits_ = std::countr_zero(static_cast<unsigned>(q));
    }

    bool word_error(RandomStream& rng, double sigma) override {
        for (int s = 0; s < symbols_; ++s) {
            int level = static_cast<int>(rng.next_bits(level_bits_));
            double y = static_cast<double>(level) + sigma * rng.next_gaussian();
            long hard = std::lround(y);
            if (hard < 0) hard = 0;
            if (hard > q_ - 1) hard = q_ - 1;
            if (hard != level) return true;
        }
        return false;
    }

private:
    int q_;
    int symbols_;
    int level_bits_ = 0;
};

struct SchemeContext {
    std::unique_ptr<FrameCodec> frame;
    std::unique_ptr<BaselineCodec> baseline;
    double peak = 0.0;
    double rate = 0.0;
    int q = 0;

    std::unique_ptr<Trial> make_trial(const SimConfig& cfg) const {
        switch (cfg.scheme) {
            case Scheme::E8Rs: return std::make_unique<E8RsTrial>(*frame);
            case Scheme::PamBch: return std::make_unique<PamBchTrial>(*baseline);
            case Scheme::E8Uncoded:
                return std::make_unique<E8UncodedTrial>(q, cfg.symbols_per_word);
            case Scheme::PamUncoded:
                return std::make_unique<PamUncodedTrial>(q, cfg.symbols_per_word);
        }
        throw std::logic_error("unreachable");
    }
};

SchemeContext make_context(const SimConfig& cfg) {
    SchemeContext ctx;
    switch (cfg.scheme) {
        case Scheme::E8Rs:
            ctx.frame = std::make_unique<FrameCodec>(make_frame_codec(cfg.preset));
            ctx.q = ctx.frame->q();
            ctx.rate = ctx.frame->rate();
            break;
        case Scheme::PamBch:
            ctx.baseline = std::make_unique<BaselineCodec>(make_baseline_codec(cfg.preset));
            ctx.q = ctx.baseline->q();
            ctx.rate = ctx.baseline->rate();
            break;
        case Scheme::E8Uncoded:
        case Scheme::PamUncoded:
            ctx.q = cfg.q;
            ctx.rate = std::log2(static_cast<double>(cfg.q));
            break;
    }
    ctx.peak = static_cast<double>(ctx.q - 1);
    return ctx;
}

uint64_t batch_size(const SimConfig& cfg) {
    bool heavy = cfg.scheme == Scheme::E8Rs || cfg.scheme == Scheme::PamBch ||
                 cfg.symbols_per_word > 1;
    return heavy ? 2048 : 65536;
}

}  // namespace

SimPoint run_point(const SimConfig& cfg, const ChannelSpec& ch) {
    if (cfg.max_frames < 1) throw std::invalid_argument("run_point: max_frames must be >= 1");
    SchemeContext ctx = make_context(cfg);

    int workers = cfg.workers > 0 ? cfg.workers
                                  : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const uint64_t batch = batch_size(cfg);

    auto start = std::chrono::steady_clock::now();
    uint64_t frames = 0, errors = 0;

    // Trials are keyed by (seed, frame index) alone and stopping is checked on
    // batch boundaries, so the tallies do not depend on the worker count.
    while (frames < cfg.max_frames && errors < cfg.min_word_errors) {
        uint64_t n = std::min<uint64_t>(batch, cfg.max_frames - frames);
        int w = static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(workers), n));
        std::vector<uint64_t> tallies(static_cast<size_t>(w), 0);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(w));
        for (int i = 0; i < w; ++i) {
            uint64_t lo = frames + n * static_cast<uint64_t>(i) / static_cast<uint64_t>(w);
            uint64_t hi = frames + n * static_cast<uint64_t>(i + 1) / static_cast<uint64_t>(w);
            pool.emplace_back([&, i, lo, hi] {
                auto trial = ctx.make_trial(cfg);
                uint64_t local = 0;
                for (uint64_t f = lo; f < hi; ++f) {
                    RandomStream rng(substream(cfg.seed, f));
                    if (trial->word_error(rng, ch.sigma)) ++local;
                }
                tallies[static_cast<size_t>(i)] = local;
            });
        }
        for (auto& th : pool) th.join();
        for (uint64_t t : tallies) errors += t;
        frames += n;
    }

    SimPoint p;
    p.snr_db = ch.snr_db;
    p.frames = frames;
    p.word_errors = errors;
    p.wer = static_cast<double>(errors) / static_cast<double>(frames);
    p.ci95_halfwidth = 1.959963984540054 *
                       std::sqrt(p.wer * (1.0 - p.wer) / static_cast<double>(frames));
    p.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return p;
}

std::vector<SimPoint> run_wer(const SimConfig& cfg) {
    if (cfg.snrs_db.empty()) throw std::invalid_argument("run_wer: SNR list must be nonempty");
    SchemeContext ctx = make_context(cfg);
    std::vector<SimPoint> out;
    out.reserve(cfg.snrs_db.size());
    for (double snr : cfg.snrs_db)
        out.push_back(run_point(cfg, ChannelSpec::from_snr_db(snr, ctx.peak)));
    return out;
}

double scheme_rate(const SimConfig& cfg) { return make_context(cfg).rate; }

void write_csv(std::ostream& os, const SimConfig& cfg, std::span<const SimPoint> points) {
    SchemeContext ctx = make_context(cfg);
    os << "scheme,preset,q,rate_bits_per_cell,snr_db,frames,word_errors,wer,ci95_halfwidth\n";
    const char* preset = cfg.preset.empty() ? "-" : cfg.preset.c_str();
    char buf[256];
    for (const SimPoint& p : points) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.6f,%.6g,%llu,%llu,%.6e,%.6e\n",
                      std::string(scheme_name(cfg.scheme)).c_str(), preset, ctx.q, ctx.rate,
                      p.snr_db, static_cast<unsigned long long>(p.frames),
                      static_cast<unsigned long long>(p.word_errors), p.wer, p.ci95_halfwidth);
        os << buf;
    }
}

std::string csv_string(const SimConfig& cfg, std::span<const SimPoint> points) {
    std::ostringstream ss;
    write_csv(ss, cfg, points);
    return ss.str();
}

std::vector<double> parse_snr_sweep(const std::string& text) {
    std::vector<double> out;
    size_t c1 = text.find(':');
    if (c1 == std::string::npos) {
        out.push_back(std::stod(text));
        return out;
    }
    size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("SNR sweep must be start:step:end or a single value");
    double start = std::stod(text.substr(0, c1));
    double step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    double end = std::stod(text.substr(c2 + 1));
    if (step <= 0.0) throw std::invalid_argument("SNR sweep step must be positive");
    long count = std::lround((end - start) / step);
    for (long i = 0; i <= count; ++i) {
        double v = start + step * static_cast<double>(i);
        if (v > end + 1e-9) break;
        out.push_back(v);
    }
    return out;
}

}  // namespace e8flash
