// SPDX-License-Identifier: Apache-2.0
//
// Generator configuration as JSON. A settings document may be partial; the
// resolved PrngConfig is always written back in full so that a snapshot
// reproduces a run bit for bit.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpccm/prng.hpp"

namespace dpccm {

inline constexpr std::string_view kPaperProfile = "paper-65nm";

struct GeneratorSettings {
    std::optional<std::string> profile;

    std::optional<MapFamily> family;
    std::optional<Voltage> vdd;
    std::optional<double> a_lo;
    std::optional<double> a_hi;
    std::shared_ptr<const TransferTable> table;
    std::optional<std::string> table_path;

    std::optional<Design> design;
    std::optional<int> extract_k;
    std::optional<int> adc_bits;
    std::optional<Voltage> adc_v_min;
    std::optional<Voltage> adc_v_max;

    std::optional<Voltage> v_c;
    std::optional<Voltage> b_min;
    std::optional<Voltage> b_max;
    std::optional<LinearTransform> transform;

    std::optional<std::vector<SeedPair>> pairs;
    std::optional<std::size_t> pair_count;
    std::optional<Voltage> schedule_lo;
    std::optional<Voltage> schedule_hi;

    std::optional<std::size_t> samples_per_pair;
    std::optional<std::size_t> warmup_samples;
};

/// Fields set in `overlay` replace those in `base`. Overriding anything the
/// transform or the pair list was derived from drops the inherited explicit
/// transform or pairs so they are recomputed.
GeneratorSettings merge(const GeneratorSettings& base, const GeneratorSettings& overlay);

/// Accepts a settings document, a resolved snapshot, or a run manifest (its
/// "config" member is used). Throws FormatError on malformed JSON and
/// UsageError on unknown enum values.
GeneratorSettings parse_settings(std::string_view json_text);
GeneratorSettings load_settings(const std::string& path);

/// Built-in defaults of a named profile; throws UsageError for unknown names.
GeneratorSettings profile_settings(std::string_view name);

struct ResolvedConfig {
    PrngConfig config;
    std::vector<std::string> warnings;
};

/// Fills every unset field (profile first, then built-in defaults) and
/// calibrates the transform when none is given.
ResolvedConfig resolve(const GeneratorSettings& settings);

/// Full snapshot of a resolved configuration.
std::string to_json(const PrngConfig& config);

/// Map description alone, as used by the analysis commands.
std::string map_to_json(const MapConfig& map);

}  // namespace dpccm
