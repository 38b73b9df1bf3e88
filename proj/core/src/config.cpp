// SPDX-License-Identifier: Apache-2.0
#include "dpccm/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dpccm/error.hpp"

namespace dpccm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <class T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
    if (src) dst = src;
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("config field '") + key + "': " + e.what());
    }
}

Design design_from_json(const json& j) {
    if (j.is_number_integer()) return parse_design(std::to_string(j.get<int>()));
    if (j.is_string()) return parse_design(j.get<std::string>());
    throw FormatError("config field 'design' must be \"I\", \"II\", 1 or 2");
}

std::shared_ptr<const TransferTable> table_from_json(const json& j) {
    try {
        return std::make_shared<const TransferTable>(j.at("control_grid").get<std::vector<Voltage>>(),
                                                     j.at("input_grid").get<std::vector<Voltage>>(),
                                                     j.at("outputs").get<std::vector<std::vector<Voltage>>>());
    } catch (const json::exception& e) {
        throw FormatError(std::string("config field 'map.table': ") + e.what());
    }
}

void read_map(const json& m, GeneratorSettings& s) {
    if (auto family = get_opt<std::string>(m, "family")) s.family = parse_map_family(*family);
    s.vdd = get_opt<double>(m, "vdd");
    s.a_lo = get_opt<double>(m, "a_lo");
    s.a_hi = get_opt<double>(m, "a_hi");
    if (m.contains("table") && m.at("table").is_object()) s.table = table_from_json(m.at("table"));
    s.table_path = get_opt<std::string>(m, "table_csv");
}

GeneratorSettings settings_from_json(const json& root) {
    const json& j = root.contains("config") && root.contains("command") ? root.at("config") : root;
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    GeneratorSettings s;
    s.profile = get_opt<std::string>(j, "profile");
    if (j.contains("map")) read_map(j.at("map"), s);
    if (j.contains("design")) s.design = design_from_json(j.at("design"));
    s.extract_k = get_opt<int>(j, "extract_k");
    if (j.contains("adc")) {
        const auto& a = j.at("adc");
        s.adc_bits = get_opt<int>(a, "bits");
        s.adc_v_min = get_opt<double>(a, "v_min");
        s.adc_v_max = get_opt<double>(a, "v_max");
    }
    s.v_c = get_opt<double>(j, "v_c");
    if (j.contains("window")) {
        s.b_min = get_opt<double>(j.at("window"), "b_min");
        s.b_max = get_opt<double>(j.at("window"), "b_max");
    }
    if (j.contains("transform")) {
        const auto& t = j.at("transform");
        try {
            s.transform = LinearTransform{t.at("a_min").get<double>(), t.at("a_max").get<double>(),
                                          t.at("b_min").get<double>(), t.at("b_max").get<double>()};
        } catch (const json::exception& e) {
            throw FormatError(std::string("config field 'transform': ") + e.what());
        }
    }
    if (j.contains("pairs")) {
        std::vector<SeedPair> pairs;
        for (const auto& p : j.at("pairs")) {
            if (!p.is_array() || p.size() != 2) throw FormatError("each entry of 'pairs' must be [x_a, x_b]");
            pairs.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        s.pairs = std::move(pairs);
    }
    if (j.contains("seed_schedule")) {
        const auto& sc = j.at("seed_schedule");
        s.pair_count = get_opt<std::size_t>(sc, "count");
        s.schedule_lo = get_opt<double>(sc, "v_lo");
        s.schedule_hi = get_opt<double>(sc, "v_hi");
    }
    s.samples_per_pair = get_opt<std::size_t>(j, "samples_per_pair");
    s.warmup_samples = get_opt<std::size_t>(j, "warmup_samples");
    return s;
}

ordered_json map_json(const MapConfig& map) {
    ordered_json m;
    m["family"] = std::string(to_string(map.family));
    m["vdd"] = map.vdd;
    if (map.family == MapFamily::tent || map.family == MapFamily::vee) {
        m["a_lo"] = map.params.a_lo;
        m["a_hi"] = map.params.a_hi;
    }
    if (map.table)
        m["table"] = {{"control_grid", map.table->control_grid()},
                      {"input_grid", map.table->input_grid()},
                      {"outputs", map.table->outputs()}};
    return m;
}

}  // namespace

GeneratorSettings merge(const GeneratorSettings& base, const GeneratorSettings& overlay) {
    GeneratorSettings out = base;
    const bool map_changed = overlay.family || overlay.vdd || overlay.a_lo || overlay.a_hi || overlay.table ||
                             overlay.table_path;
    if (overlay.profile) out.profile = overlay.profile;
    take(out.family, overlay.family);
    take(out.vdd, overlay.vdd);
    take(out.a_lo, overlay.a_lo);
    take(out.a_hi, overlay.a_hi);
    if (overlay.table) out.table = overlay.table;
    take(out.table_path, overlay.table_path);
    if (overlay.table_path && !overlay.table) out.table.reset();
    take(out.design, overlay.design);
    take(out.extract_k, overlay.extract_k);
    if (overlay.design && !overlay.extract_k) out.extract_k.reset();
    take(out.adc_bits, overlay.adc_bits);
    take(out.adc_v_min, overlay.adc_v_min);
    take(out.adc_v_max, overlay.adc_v_max);
    take(out.v_c, overlay.v_c);
    take(out.b_min, overlay.b_min);
    take(out.b_max, overlay.b_max);
    if ((map_changed || overlay.v_c || overlay.b_min || overlay.b_max) && !overlay.transform) out.transform.reset();
    take(out.transform, overlay.transform);
    if ((overlay.pair_count || overlay.schedule_lo || overlay.schedule_hi) && !overlay.pairs) out.pairs.reset();
    take(out.pairs, overlay.pairs);
    take(out.pair_count, overlay.pair_count);
    take(out.schedule_lo, overlay.schedule_lo);
    take(out.schedule_hi, overlay.schedule_hi);
    take(out.samples_per_pair, overlay.samples_per_pair);
    take(out.warmup_samples, overlay.warmup_samples);
    return out;
}

GeneratorSettings parse_settings(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("config is not valid JSON: ") + e.what());
    }
    return settings_from_json(root);
}

GeneratorSettings load_settings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_settings(buf.str());
}

GeneratorSettings profile_settings(std::string_view name) {
    if (name != kPaperProfile) throw UsageError("unknown profile '" + std::string(name) + "'");
    GeneratorSettings s;
    s.profile = std::string(name);
    s.vdd = kDefaultVdd;
    s.v_c = kPaperControlVoltage;
    s.b_min = kPaperWindowLo;
    s.b_max = kPaperWindowHi;
    s.pair_count = kPaperPairs;
    s.samples_per_pair = kPaperSamplesPerPair;
    return s;
}

ResolvedConfig resolve(const GeneratorSettings& given) {
    ResolvedConfig out;
    GeneratorSettings s = given;
    if (s.profile) s = merge(profile_settings(*s.profile), given);

    PrngConfig& c = out.config;
    c.map.family = s.family.value_or(MapFamily::tent);
    c.map.vdd = s.vdd.value_or(kDefaultVdd);
    c.map.params.a_lo = s.a_lo.value_or(0.0);
    c.map.params.a_hi = s.a_hi.value_or(2.0);
    if (c.map.family == MapFamily::table) {
        if (s.table) c.map.table = s.table;
        else if (s.table_path) c.map.table = std::make_shared<const TransferTable>(load_transfer_table(*s.table_path));
        else throw UsageError("the table map family needs a transfer table (map.table_csv or --table)");
    }
    c.map.validate();
    const Voltage vdd = c.map.vdd;
    const bool surrogate = c.map.family != MapFamily::table;
    if (s.profile && *s.profile == kPaperProfile && surrogate)
        out.warnings.push_back("profile paper-65nm describes the measured 65 nm map; with the analytic '" +
                               std::string(to_string(c.map.family)) +
                               "' surrogate its control window is not chaotic");

    c.design = s.design.value_or(Design::I);
    c.extract_k = s.extract_k.value_or(extract_width(c.design));
    c.adc.bits = s.adc_bits.value_or(c.design == Design::I ? kPaperAdcBitsDesignI : kPaperAdcBitsDesignII);
    c.adc.v_min = s.adc_v_min.value_or(0.0);
    c.adc.v_max = s.adc_v_max.value_or(vdd);

    c.v_c = s.v_c ? *s.v_c : default_control_voltage(c.map);
    if (s.transform) {
        c.transform = *s.transform;
    } else {
        const Voltage b_min = s.b_min.value_or(surrogate ? kSurrogateWindowLo * vdd : kPaperWindowLo);
        const Voltage b_max = s.b_max.value_or(surrogate ? kSurrogateWindowHi * vdd : kPaperWindowHi);
        c.transform = calibrate_transform(c.map, c.v_c, b_min, b_max);
    }

    if (s.pairs) {
        c.pairs = *s.pairs;
    } else {
        c.pairs = default_seed_schedule(s.pair_count.value_or(kPaperPairs),
                                        s.schedule_lo.value_or(kSurrogateScheduleLo * vdd),
                                        s.schedule_hi.value_or(kSurrogateScheduleHi * vdd));
    }
    c.samples_per_pair = s.samples_per_pair.value_or(kPaperSamplesPerPair);
    c.warmup_samples = s.warmup_samples.value_or(0);
    c.validate();
    return out;
}

std::string to_json(const PrngConfig& c) {
    ordered_json j;
    j["design"] = std::string(to_string(c.design));
    j["extract_k"] = c.extract_k;
    j["adc"] = {{"bits", c.adc.bits}, {"v_min", c.adc.v_min}, {"v_max", c.adc.v_max}};
    j["v_c"] = c.v_c;
    j["map"] = map_json(c.map);
    j["transform"] = {{"a_min", c.transform.a_min},
                      {"a_max", c.transform.a_max},
                      {"b_min", c.transform.b_min},
                      {"b_max", c.transform.b_max}};
    auto& pairs = j["pairs"] = ordered_json::array();
    for (const auto& p : c.pairs) pairs.push_back({p.x_a, p.x_b});
    j["samples_per_pair"] = c.samples_per_pair;
    j["warmup_samples"] = c.warmup_samples;
    return j.dump(2);
}

std::string map_to_json(const MapConfig& map) { return map_json(map).dump(2); }

}  // namespace dpccm
