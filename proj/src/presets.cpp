#include "e8flash/presets.hpp"

#include <stdexcept>
#include <string>

namespace e8flash {

const CodePreset* find_rs_preset(std::string_view name) {
    for (const CodePreset& p : kRsPresets)
        if (name == p.name) return &p;
    return nullptr;
}

const CodePreset* find_bch_preset(std::string_view name) {
    for (const CodePreset& p : kBchPresets)
        if (name == p.name) return &p;
    return nullptr;
}

FrameCodec make_frame_codec(std::string_view preset_name) {
    const CodePreset* p = find_rs_preset(preset_name);
    if (!p) throw std::invalid_argument("unknown RS preset: " + std::string(preset_name));
    RsCode rs(GaloisField(8, kGf256Poly), p->n, p->k);
    return FrameCodec(std::move(rs), p->q);
}

BaselineCodec make_baseline_codec(std::string_view preset_name) {
    const CodePreset* p = find_bch_preset(preset_name);
    if (!p) throw std::invalid_argument("unknown BCH preset: " + std::string(preset_name));
    BchCode bch(GaloisField(13, kGf8192Poly), p->n, p->t);
    if (bch.k() != p->k)
        throw std::logic_error("BCH preset realized k differs from table value");
    return BaselineCodec(std::move(bch), p->q);
}

}  // namespace e8flash
