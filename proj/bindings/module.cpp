// Python bindings for the coded-modulation core: codecs, lattice operations
// and the Monte-Carlo WER driver.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "e8flash/codec.hpp"
#include "e8flash/presets.hpp"
#include "e8flash/sim.hpp"

namespace py = pybind11;
using namespace e8flash;

namespace {

py::dict preset_dict(const CodePreset& p, bool rs) {
    py::dict d;
    d["name"] = p.name;
    d["kind"] = rs ? "rs" : "bch";
    d["n"] = p.n;
    d["k"] = p.k;
    d["t"] = p.t;
    d["s"] = p.s;
    d["q"] = p.q;
    if (rs) {
        FrameCodec c = make_frame_codec(p.name);
        d["cells"] = c.cells();
        d["info_bits"] = c.info_bits();
        d["rate_bits_per_cell"] = c.rate();
    } else {
        BaselineCodec c = make_baseline_codec(p.name);
        d["cells"] = c.cells();
        d["info_bits"] = c.info_bits();
        d["rate_bits_per_cell"] = c.rate();
    }
    return d;
}

SimConfig build_config(const std::string& scheme, const std::string& preset, int q,
                       const std::vector<double>& snrs_db, uint64_t seed,
                       uint64_t min_word_errors, uint64_t max_frames, int workers,
                       int symbols_per_word) {
    SimConfig cfg;
    cfg.scheme = scheme_from_name(scheme);
    cfg.preset = preset;
    cfg.q = q;
    cfg.snrs_db = snrs_db;
    cfg.seed = seed;
    cfg.min_word_errors = min_word_errors;
    cfg.max_frames = max_frames;
    cfg.workers = workers;
    cfg.symbols_per_word = symbols_per_word;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "E8 lattice + Reed-Solomon coded modulation for multi-level flash";

    py::class_<FrameDiagnostics>(m, "FrameDiagnostics")
        .def_readonly("rs_flagged", &FrameDiagnostics::rs_flagged)
        .def_readonly("table_misses", &FrameDiagnostics::table_misses)
        .def_readonly("picked_plus", &FrameDiagnostics::picked_plus)
        .def_readonly("picked_minus", &FrameDiagnostics::picked_minus);

    py::class_<FrameCodec>(m, "FrameCodec")
        .def(py::init([](const std::string& preset) { return make_frame_codec(preset); }),
             py::arg("preset"))
        .def_property_readonly("q", &FrameCodec::q)
        .def_property_readonly("blocks", &FrameCodec::blocks)
        .def_property_readonly("cells", &FrameCodec::cells)
        .def_property_readonly("info_bits", &FrameCodec::info_bits)
        .def_property_readonly("rate_bits_per_cell", &FrameCodec::rate)
        .def("encode",
             [](const FrameCodec& c, const std::vector<uint8_t>& bits) { return c.encode(bits); },
             py::arg("bits"), "Info bits (0/1) to cell values in [0, V].")
        .def("decode",
             [](const FrameCodec& c, const std::vector<double>& cells)
                 -> std::optional<std::pair<std::vector<uint8_t>, FrameDiagnostics>> {
                 auto r = c.decode(cells);
                 if (!r) return std::nullopt;
                 return std::make_pair(std::move(r->bits), r->diag);
             },
             py::arg("cells"),
             "Returns (bits, diagnostics), or None when the word is uncorrectable.");

    py::class_<BaselineCodec>(m, "BaselineCodec")
        .def(py::init([](const std::string& preset) { return make_baseline_codec(preset); }),
             py::arg("preset"))
        .def_property_readonly("q", &BaselineCodec::q)
        .def_property_readonly("cells", &BaselineCodec::cells)
        .def_property_readonly("info_bits", &BaselineCodec::info_bits)
        .def_property_readonly("rate_bits_per_cell", &BaselineCodec::rate)
        .def("encode",
             [](const BaselineCodec& c, const std::vector<uint8_t>& bits) { return c.encode(bits); },
             py::arg("bits"))
        .def("decode",
             [](const BaselineCodec& c, const std::vector<double>& cells) { return c.decode(cells); },
             py::arg("cells"));

    m.def("presets", [] {
        py::list out;
        for (const CodePreset& p : kRsPresets) out.append(preset_dict(p, true));
        for (const CodePreset& p : kBchPresets) out.append(preset_dict(p, false));
        return out;
    });

    m.def("e8_nearest",
          [](const std::array<double, kDim>& y) { return e8_nearest(y).to_doubles(); },
          py::arg("y"), "Nearest E8 lattice point (unscaled domain).");

    m.def("e8_nearest_exhaustive",
          [](const std::array<double, kDim>& y) { return e8_nearest_exhaustive(y).to_doubles(); },
          py::arg("y"), "Reference brute-force nearest point.");

    m.def("minimal_vectors", [] {
        std::vector<std::array<double, kDim>> out;
        for (const auto& v : e8_minimal_vectors()) out.push_back(v.to_doubles());
        return out;
    });

    m.def("error_table", [] {
        ErrorPatternTable table;
        py::list out;
        for (const auto& e : table.entries()) {
            py::dict d;
            d["pattern"] = e.pattern;
            d["db"] = e.db;
            d["dx"] = e.dx.to_doubles();
            out.append(d);
        }
        return out;
    });

    m.def("cube_encode",
          [](const IntVec& a, int q) { return CubeShaping(q).encode(a).x.to_doubles(); },
          py::arg("a"), py::arg("q"), "Unscaled codebook point for index integers a.");

    m.def("cube_index",
          [](const std::array<double, kDim>& x, int q) {
              HalfIntVec h;
              for (int i = 0; i < kDim; ++i) {
                  double tw = 2.0 * x[static_cast<size_t>(i)];
                  double r = std::round(tw);
                  if (std::abs(tw - r) > 1e-9)
                      throw std::invalid_argument("cube_index: coordinates must be half-integers");
                  h.twice[static_cast<size_t>(i)] = static_cast<int32_t>(r);
              }
              return CubeShaping(q).index_of(h);
          },
          py::arg("x"), py::arg("q"));

    m.def(
        "simulate",
        [](const std::string& scheme, const std::string& preset, int q,
           const std::vector<double>& snrs_db, uint64_t seed, uint64_t min_word_errors,
           uint64_t max_frames, int workers, int symbols_per_word) {
            SimConfig cfg = build_config(scheme, preset, q, snrs_db, seed, min_word_errors,
                                         max_frames, workers, symbols_per_word);
            std::vector<SimPoint> pts;
            {
                py::gil_scoped_release release;
                pts = run_wer(cfg);
            }
            py::list out;
            for (const SimPoint& p : pts) {
                py::dict d;
                d["snr_db"] = p.snr_db;
                d["frames"] = p.frames;
                d["word_errors"] = p.word_errors;
                d["wer"] = p.wer;
                d["ci95_halfwidth"] = p.ci95_halfwidth;
                d["wall_seconds"] = p.wall_seconds;
                out.append(d);
            }
            return out;
        },
        py::arg("scheme"), py::arg("preset") = "", py::arg("q") = 8,
        py::arg("snrs_db") = std::vector<double>{}, py::arg("seed") = 1,
        py::arg("min_word_errors") = 100, py::arg("max_frames") = 10'000'000,
        py::arg("workers") = 0, py::arg("symbols_per_word") = 1,
        "Monte-Carlo WER sweep; returns one record per SNR point.");

    m.def(
        "simulate_csv",
        [](const std::string& scheme, const std::string& preset, int q,
           const std::vector<double>& snrs_db, uint64_t seed, uint64_t min_word_errors,
           uint64_t max_frames, int workers, int symbols_per_word) {
            SimConfig cfg = build_config(scheme, preset, q, snrs_db, seed, min_word_errors,
                                         max_frames, workers, symbols_per_word);
            std::vector<SimPoint> pts;
            {
                py::gil_scoped_release release;
                pts = run_wer(cfg);
            }
            return csv_string(cfg, pts);
        },
        py::arg("scheme"), py::arg("preset") = "", py::arg("q") = 8,
        py::arg("snrs_db") = std::vector<double>{}, py::arg("seed") = 1,
        py::arg("min_word_errors") = 100, py::arg("max_frames") = 10'000'000,
        py::arg("workers") = 0, py::arg("symbols_per_word") = 1);

    m.def("pam_symbol_error_rate", &pam_symbol_error_rate, py::arg("q"), py::arg("sigma"));
    m.def("sigma_for_snr_db",
          [](double snr_db, double peak) { return ChannelSpec::from_snr_db(snr_db, peak).sigma; },
          py::arg("snr_db"), py::arg("peak"));

    m.attr("__version__") = "0.1.0";
}
