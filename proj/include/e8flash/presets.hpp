#pragma once

#include <array>
#include <string_view>

#include "e8flash/codec.hpp"

namespace e8flash {

struct CodePreset {
    const char* name;
    int n;  ///< code length (symbols for RS, bits for BCH)
    int k;  ///< information symbols / bits
    int t;
    int s;  ///< shortening
    int q;  ///< cell levels
};

/// Shortened RS codes over GF(2^8), one symbol per 8-cell block.
inline constexpr std::array<CodePreset, 5> kRsPresets = {{
    {"rs-172-170-1", 172, 170, 1, 83, 8},
    {"rs-172-168-2", 172, 168, 2, 83, 8},
    {"rs-173-167-3", 173, 167, 3, 82, 8},
    {"rs-174-166-4", 174, 166, 4, 81, 8},
    {"rs-174-164-5", 174, 164, 5, 81, 8},
}};

/// Shortened BCH codes over GF(2^13) for the Gray-coded PAM baseline.
inline constexpr std::array<CodePreset, 5> kBchPresets = {{
    {"bch-4109-4096-1", 4109, 4096, 1, 4082, 8},
    {"bch-4122-4096-2", 4122, 4096, 2, 4069, 8},
    {"bch-4135-4096-3", 4135, 4096, 3, 4056, 8},
    {"bch-4148-4096-4", 4148, 4096, 4, 4043, 8},
    {"bch-4161-4096-5", 4161, 4096, 5, 4030, 8},
}};

const CodePreset* find_rs_preset(std::string_view name);
const CodePreset* find_bch_preset(std::string_view name);

/// Builds the frame codec for an RS preset; throws on unknown names.
FrameCodec make_frame_codec(std::string_view preset_name);
/// Builds the PAM + BCH baseline codec for a BCH preset.
BaselineCodec make_baseline_codec(std::string_view preset_name);

}  // namespace e8flash
