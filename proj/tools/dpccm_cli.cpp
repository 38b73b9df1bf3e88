// SPDX-License-Identifier: Apache-2.0
// dpccm: generate cascaded-chaotic-map bitstreams and run the analyses and
// randomness suites on them.
//
// Exit codes: 0 success / pass, 1 statistical verdict failed, 2 usage,
// configuration or format error, 3 I/O error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpccm/config.hpp"
#include "dpccm/dynamics.hpp"
#include "dpccm/error.hpp"
#include "dpccm/fips.hpp"
#include "dpccm/nist.hpp"
#include "dpccm/prng.hpp"

#ifndef DPCCM_VERSION
#define DPCCM_VERSION "0.0.0"
#endif

namespace {

using namespace dpccm;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Common {
    std::string config_path;
    std::string profile;
    std::string out;
    std::optional<std::string> format;
    std::string manifest;
    unsigned threads = 0;
};

unsigned thread_count(const Common& c) {
    if (c.threads > 0) return c.threads;
    if (const char* env = std::getenv("DPCCM_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("DPCCM_THREADS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    try {
        auto j = ordered_json::parse(in);
        if (j.contains("config") && j.contains("command")) return j.at("config");
        return j;
    } catch (const ordered_json::parse_error& e) {
        throw FormatError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

// Flags that shape the generator; unset flags leave lower layers alone.
struct GeneratorFlags {
    std::optional<std::string> design, map, table;
    std::optional<int> adc_bits;
    std::optional<double> vdd, a_lo, a_hi, v_c, b_min, b_max, adc_v_min, adc_v_max;
    std::optional<std::size_t> pairs, samples, warmup;

    void attach(CLI::App* app, bool prng_flags) {
        app->add_option("--map", map, "map family: tent, vee, logistic or table");
        app->add_option("--table", table, "transfer table CSV for the table family");
        app->add_option("--vdd", vdd, "supply voltage");
        app->add_option("--a-lo", a_lo, "tent slope at c = 0");
        app->add_option("--a-hi", a_hi, "tent slope at c = vdd");
        app->add_option("--vc", v_c, "seed-map control voltage");
        app->add_option("--b-min", b_min, "lower end of the controlled-map control window");
        app->add_option("--b-max", b_max, "upper end of the controlled-map control window");
        if (!prng_flags) return;
        app->add_option("--design", design, "I (1 bit per sample) or II (3 bits per sample)");
        app->add_option("--adc-bits", adc_bits, "ADC resolution")->check(CLI::Range(2, 16));
        app->add_option("--adc-min", adc_v_min, "ADC input range, low end");
        app->add_option("--adc-max", adc_v_max, "ADC input range, high end");
        app->add_option("--pairs", pairs, "number of initial-voltage pairs");
        app->add_option("--samples", samples, "samples per pair");
        app->add_option("--warmup", warmup, "discarded samples per pair");
    }

    GeneratorSettings settings() const {
        GeneratorSettings s;
        if (design) s.design = parse_design(*design);
        if (map) s.family = parse_map_family(*map);
        if (table) {
            s.table_path = table;
            if (!map) s.family = MapFamily::table;
        }
        s.vdd = vdd;
        s.a_lo = a_lo;
        s.a_hi = a_hi;
        s.v_c = v_c;
        s.b_min = b_min;
        s.b_max = b_max;
        s.adc_bits = adc_bits;
        s.adc_v_min = adc_v_min;
        s.adc_v_max = adc_v_max;
        s.pair_count = pairs;
        s.samples_per_pair = samples;
        s.warmup_samples = warmup;
        return s;
    }
};

ResolvedConfig resolve_config(const Common& common, const GeneratorFlags& flags) {
    GeneratorSettings s;
    if (!common.config_path.empty()) s = load_settings(common.config_path);
    if (!common.profile.empty()) {
        GeneratorSettings p;
        p.profile = common.profile;
        s = merge(s, p);
    }
    auto resolved = resolve(merge(s, flags.settings()));
    for (const auto& w : resolved.warnings) std::cerr << "warning: " << w << '\n';
    return resolved;
}

std::string manifest_path(const Common& c, const std::string& command) {
    if (!c.manifest.empty()) return c.manifest;
    if (!c.out.empty()) return c.out + ".manifest.json";
    return command + ".manifest.json";
}

void write_manifest(const Common& c, const std::string& command, ordered_json config, Clock::time_point start,
                    const std::vector<std::string>& outputs) {
    ordered_json m;
    m["command"] = command;
    m["config"] = std::move(config);
    m["tool_version"] = DPCCM_VERSION;
    m["elapsed_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    m["outputs"] = outputs;
    const auto path = manifest_path(c, command);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest '" + path + "'");
    out << m.dump(2) << '\n';
    if (!out) throw IoError("write to '" + path + "' failed");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

// ---- generate ------------------------------------------------------------

int cmd_generate(const Common& common, const GeneratorFlags& flags) {
    const auto start = Clock::now();
    if (common.out.empty()) throw UsageError("generate needs --out");
    std::string format_name = "bin";
    if (common.format) format_name = *common.format;
    else if (!common.config_path.empty()) format_name = read_json_file(common.config_path).value("format", "bin");
    const auto cfg = resolve_config(common, flags).config;
    const auto format = parse_bit_format(format_name);
    const auto t0 = Clock::now();
    const auto bits = prng_generate(cfg, thread_count(common));
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    save_bits(common.out, bits, format);
    std::cout << "wrote " << bits.size() << " bits to " << common.out << " (" << to_string(format) << ")\n"
              << "throughput " << static_cast<double>(bits.size()) / std::max(seconds, 1e-9) << " bits/s over "
              << seconds << " s\n";
    auto snapshot = ordered_json::parse(to_json(cfg));
    snapshot["format"] = std::string(to_string(format));
    write_manifest(common, "generate", std::move(snapshot), start, {common.out});
    return 0;
}

// ---- bifurcation / lyapunov ----------------------------------------------

struct ScanFlags {
    std::optional<std::string> subject, method;
    std::optional<double> c_min, c_max, r_min, r_max, x0, eps;
    std::optional<std::size_t> steps, samples;
    std::optional<std::uint64_t> transient, n;

    void attach(CLI::App* app, bool lyapunov) {
        app->add_option("--subject", subject, "oscillator or cascade")->check(CLI::IsMember({"oscillator", "cascade"}));
        app->add_option("--c-min", c_min, "first control voltage");
        app->add_option("--c-max", c_max, "last control voltage");
        app->add_option("--r-min", r_min, "first logistic parameter (logistic map only)");
        app->add_option("--r-max", r_max, "last logistic parameter (logistic map only)");
        app->add_option("--steps", steps, "grid points");
        app->add_option("--transient", transient, "discarded oscillator iterations");
        app->add_option("--x0", x0, "initial voltage (default 0.37 vdd)");
        if (lyapunov) {
            app->add_option("--method", method, "derivative or divergence")
                ->check(CLI::IsMember({"derivative", "divergence"}));
            app->add_option("--n", n, "oscillator iterations averaged per point");
            app->add_option("--eps", eps, "separation for the divergence method");
        } else {
            app->add_option("--samples", samples, "map applications recorded per point");
        }
    }
};

struct ScanSetup {
    MapConfig map;
    Subject subject;
    ScanRange range;
    std::uint64_t transient;
    Voltage x0;
    ordered_json snapshot;
    ordered_json file_scan;  // "scan" object of the config file, if any
};

// Scan parameters: flag, else the config file's "scan" object, else default.
template <class T, class Flag>
T pick(const ordered_json& file_scan, const char* key, const std::optional<Flag>& flag, T fallback) {
    if (flag) return static_cast<T>(*flag);
    if (file_scan.contains(key)) return file_scan.at(key).get<T>();
    return fallback;
}

ScanSetup scan_setup(const Common& common, const GeneratorFlags& gen, const ScanFlags& f, ordered_json& scan_json) {
    ScanSetup s;
    if (!common.config_path.empty()) {
        const auto j = read_json_file(common.config_path);
        if (j.contains("scan")) s.file_scan = j.at("scan");
    }
    const auto subject = pick(s.file_scan, "subject", f.subject, std::string("oscillator"));
    if (subject != "oscillator" && subject != "cascade") throw UsageError("unknown scan subject '" + subject + "'");
    const bool cascade = subject == "cascade";
    if (cascade) {
        const auto resolved = resolve_config(common, gen).config;
        s.map = resolved.map;
        s.subject = CascadeSubject{resolved.transform};
    } else {
        GeneratorSettings settings;
        if (!common.config_path.empty()) settings = load_settings(common.config_path);
        settings = merge(settings, gen.settings());
        s.map.family = settings.family.value_or(MapFamily::tent);
        s.map.vdd = settings.vdd.value_or(kDefaultVdd);
        s.map.params.a_lo = settings.a_lo.value_or(0.0);
        s.map.params.a_hi = settings.a_hi.value_or(2.0);
        if (settings.table) s.map.table = settings.table;
        else if (settings.table_path)
            s.map.table = std::make_shared<const TransferTable>(load_transfer_table(*settings.table_path));
        s.map.validate();
        s.subject = OscillatorSubject{};
    }
    std::optional<double> c_min = f.c_min, c_max = f.c_max;
    if (f.r_min || f.r_max) {
        if (s.map.family != MapFamily::logistic) throw UsageError("--r-min/--r-max apply to the logistic map only");
        if (f.r_min) c_min = control_for_logistic(s.map, *f.r_min);
        if (f.r_max) c_max = control_for_logistic(s.map, *f.r_max);
    }
    const double lo_default = s.map.family == MapFamily::table ? s.map.table->control_grid().front() : 0.0;
    const double hi_default = s.map.family == MapFamily::table ? s.map.table->control_grid().back() : s.map.vdd;
    s.range.c_min = pick(s.file_scan, "c_min", c_min, lo_default);
    s.range.c_max = pick(s.file_scan, "c_max", c_max, hi_default);
    s.range.steps = pick(s.file_scan, "steps", f.steps, std::size_t{25});
    s.transient = pick(s.file_scan, "transient", f.transient, kDefaultTransient);
    s.x0 = pick(s.file_scan, "x0", f.x0, -1.0);

    scan_json["subject"] = cascade ? "cascade" : "oscillator";
    scan_json["c_min"] = s.range.c_min;
    scan_json["c_max"] = s.range.c_max;
    scan_json["steps"] = s.range.steps;
    scan_json["transient"] = s.transient;
    scan_json["x0"] = s.x0;
    s.snapshot["map"] = ordered_json::parse(map_to_json(s.map));
    if (const auto* c = std::get_if<CascadeSubject>(&s.subject)) {
        s.snapshot["transform"] = {{"a_min", c->transform.a_min},
                                   {"a_max", c->transform.a_max},
                                   {"b_min", c->transform.b_min},
                                   {"b_max", c->transform.b_max}};
    }
    return s;
}

int cmd_bifurcation(const Common& common, const GeneratorFlags& gen, const ScanFlags& f) {
    const auto start = Clock::now();
    ordered_json scan_json;
    auto s = scan_setup(common, gen, f, scan_json);
    const auto samples = pick(s.file_scan, "samples", f.samples, std::size_t{100});
    scan_json["samples"] = samples;
    const auto scan = bifurcation_scan(s.map, s.subject, s.range, s.transient, samples, s.x0, thread_count(common));
    std::ostringstream csv;
    write_bifurcation_csv(csv, scan);
    std::vector<std::string> outputs;
    if (common.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(common.out, csv.str());
        outputs.push_back(common.out);
        std::cerr << "wrote " << scan.c_values.size() << " x " << samples << " samples to " << common.out << '\n';
    }
    s.snapshot["scan"] = scan_json;
    write_manifest(common, "bifurcation", s.snapshot, start, outputs);
    return 0;
}

int cmd_lyapunov(const Common& common, const GeneratorFlags& gen, const ScanFlags& f) {
    const auto start = Clock::now();
    ordered_json scan_json;
    auto s = scan_setup(common, gen, f, scan_json);
    LyapunovScanOptions opt;
    const auto method = pick(s.file_scan, "method", f.method, std::string("derivative"));
    if (method != "derivative" && method != "divergence") throw UsageError("unknown Lyapunov method '" + method + "'");
    opt.method = method == "derivative" ? LyapunovMethod::derivative : LyapunovMethod::divergence;
    opt.n = pick(s.file_scan, "n", f.n, std::uint64_t{10'000});
    opt.eps = pick(s.file_scan, "eps", f.eps, 1e-9);
    opt.transient = s.transient;
    opt.x0 = s.x0;
    opt.threads = thread_count(common);
    scan_json["method"] = method;
    scan_json["n"] = opt.n;
    scan_json["eps"] = opt.eps;

    const auto estimates = lyapunov_scan(s.map, s.subject, s.range, opt);
    std::ostringstream csv;
    write_lyapunov_csv(csv, estimates);
    std::vector<std::string> outputs;
    if (common.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(common.out, csv.str());
        outputs.push_back(common.out);
    }
    const auto ranges = find_chaotic_ranges(estimates);
    auto& report = common.out.empty() ? std::cerr : std::cout;
    report << "chaotic ranges (lambda > 0): " << ranges.size() << '\n';
    for (const auto& r : ranges) report << "  [" << r.c_lo << ", " << r.c_hi << "] V\n";
    s.snapshot["scan"] = scan_json;
    write_manifest(common, "lyapunov", s.snapshot, start, outputs);
    return 0;
}

// ---- fips / nist -----------------------------------------------------------

struct InputFlags {
    std::string in;
    std::optional<std::size_t> bits;
    std::string json;

    void attach(CLI::App* app) {
        app->add_option("--in", in, "input bitstream")->required();
        app->add_option("--bits", bits, "bit length (bin input; default: whole file)");
        app->add_option("--json", json, "also write the report as JSON");
    }
};

int cmd_fips(const Common& common, const InputFlags& in, std::optional<std::size_t> budget) {
    const auto start = Clock::now();
    const auto format = parse_bit_format(common.format.value_or("bin"));
    const auto bits = load_bits(in.in, format, in.bits);
    const auto report = fips::run_suite(bits, false, thread_count(common));
    if (report.total_blocks == 0) throw UsageError("input holds fewer than 20000 bits");
    const auto text = fips::format_report(report, in.in);
    std::cout << text;
    std::vector<std::string> outputs;
    if (!common.out.empty()) {
        write_text(common.out, text);
        outputs.push_back(common.out);
    }
    if (!in.json.empty()) {
        write_text(in.json, fips::report_json(report) + "\n");
        outputs.push_back(in.json);
    }
    const std::size_t allowed = budget.value_or(report.total_blocks);
    const std::size_t failed = report.total_blocks - report.total_success;
    ordered_json cfg{{"in", in.in}, {"format", common.format.value_or("bin")}, {"budget", allowed}};
    if (in.bits) cfg["bits"] = *in.bits;
    write_manifest(common, "fips", cfg, start, outputs);
    if (failed > allowed) {
        std::cout << "verdict: FAIL (" << failed << " failed blocks > budget " << allowed << ")\n";
        return kExitVerdict;
    }
    std::cout << "verdict: pass (" << failed << " failed blocks, budget " << allowed << ")\n";
    return 0;
}

struct NistFlags {
    std::optional<std::size_t> streams, min_pass;
    std::size_t stream_bits = 1'000'000;
    double alpha = 0.01;
    nist::Params params;

    void attach(CLI::App* app) {
        app->add_option("--streams", streams, "number of streams (default: as many as fit)");
        app->add_option("--stream-bits", stream_bits, "bits per stream");
        app->add_option("--alpha", alpha, "significance level")->check(CLI::Range(0.0, 1.0));
        app->add_option("--min-pass", min_pass, "streams that must pass each test");
        app->add_option("--block-m", params.block_frequency_m, "block frequency block length");
        app->add_option("--serial-m", params.serial_m, "serial test pattern length");
        app->add_option("--apen-m", params.approx_entropy_m, "approximate entropy pattern length");
    }
};

int cmd_nist(const Common& common, const InputFlags& in, const NistFlags& f) {
    const auto start = Clock::now();
    const auto format = parse_bit_format(common.format.value_or("bin"));
    const auto bits = load_bits(in.in, format, in.bits);
    if (f.stream_bits == 0) throw UsageError("--stream-bits must be positive");
    const std::size_t fit = bits.size() / f.stream_bits;
    const std::size_t m = f.streams.value_or(fit);
    if (m == 0 || m > fit)
        throw UsageError("input holds " + std::to_string(bits.size()) + " bits, not enough for " +
                         std::to_string(std::max<std::size_t>(m, 1)) + " streams of " + std::to_string(f.stream_bits));
    std::vector<BitStream> streams;
    for (std::size_t i = 0; i < m; ++i) streams.push_back(bits.slice(i * f.stream_bits, f.stream_bits));
    const std::size_t min_pass = f.min_pass.value_or(nist::default_min_pass(m, f.alpha));
    const auto report = nist::campaign(streams, f.alpha, min_pass, f.params, thread_count(common));
    const auto text = nist::format_report(report, in.in);
    std::cout << text;
    std::vector<std::string> outputs;
    if (!common.out.empty()) {
        write_text(common.out, text);
        outputs.push_back(common.out);
    }
    if (!in.json.empty()) {
        write_text(in.json, nist::report_json(report) + "\n");
        outputs.push_back(in.json);
    }
    ordered_json cfg{{"in", in.in},
                     {"format", common.format.value_or("bin")},
                     {"streams", m},
                     {"stream_bits", f.stream_bits},
                     {"alpha", f.alpha},
                     {"min_pass", min_pass},
                     {"block_m", f.params.block_frequency_m},
                     {"serial_m", f.params.serial_m},
                     {"apen_m", f.params.approx_entropy_m}};
    write_manifest(common, "nist", cfg, start, outputs);
    std::cout << "verdict: " << (report.pass() ? "pass" : "FAIL") << '\n';
    return report.pass() ? 0 : kExitVerdict;
}

// ---- bench -------------------------------------------------------------------

int cmd_bench(const Common& common, const GeneratorFlags& flags, std::size_t pairs, std::size_t samples) {
    const auto start = Clock::now();
    const unsigned parallel = thread_count(common);
    ordered_json rows = ordered_json::array();
    std::cout << "design  threads        bits   iterations  bits/iter      seconds        bits/s\n";
    for (Design design : {Design::I, Design::II}) {
        GeneratorFlags f = flags;
        f.design = std::string(to_string(design));
        f.pairs = pairs;
        f.samples = samples;
        const auto cfg = resolve_config(common, f).config;
        std::uint64_t iterations = 0;
        for (std::size_t i = 0; i < cfg.pairs.size(); ++i) {
            const auto t = prng_stream_traced(cfg, i);
            iterations += t.iterations_a + t.iterations_b;
        }
        for (unsigned threads : {1u, parallel}) {
            const auto t0 = Clock::now();
            const auto bits = prng_generate(cfg, threads);
            const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
            const double rate = static_cast<double>(bits.size()) / std::max(sec, 1e-9);
            // one "iteration" = one oscillator step of one cascade block
            const double per_iter = static_cast<double>(bits.size()) / static_cast<double>(iterations);
            char line[160];
            std::snprintf(line, sizeof line, "%-6s %8u %11zu %12llu %10.4f %12.4f %13.4g\n",
                          std::string(to_string(design)).c_str(), threads, bits.size(),
                          static_cast<unsigned long long>(iterations), per_iter, sec, rate);
            std::cout << line;
            rows.push_back({{"design", std::string(to_string(design))},
                            {"threads", threads},
                            {"bits", bits.size()},
                            {"iterations", iterations},
                            {"bits_per_iteration", per_iter},
                            {"seconds", sec},
                            {"bits_per_second", rate}});
            if (threads == parallel) break;
        }
    }
    const double ratio = rows.back()["bits_per_iteration"].get<double>() / rows.front()["bits_per_iteration"].get<double>();
    std::cout << "design II / design I bits per iteration: " << ratio << '\n';
    std::vector<std::string> outputs;
    if (!common.out.empty()) {
        write_text(common.out, ordered_json{{"rows", rows}, {"bits_per_iteration_ratio", ratio}}.dump(2) + "\n");
        outputs.push_back(common.out);
    }
    write_manifest(common, "bench", {{"pairs", pairs}, {"samples", samples}, {"threads", parallel}}, start, outputs);
    return 0;
}

// ---- convert -----------------------------------------------------------------

int cmd_convert(const Common& common, const std::string& in, const std::string& from, const std::string& to,
                std::optional<std::size_t> bits) {
    const auto start = Clock::now();
    if (common.out.empty()) throw UsageError("convert needs --out");
    const auto stream = load_bits(in, parse_bit_format(from), bits);
    save_bits(common.out, stream, parse_bit_format(to));
    std::cout << "converted " << stream.size() << " bits (" << from << " -> " << to << ")\n";
    write_manifest(common, "convert", {{"in", in}, {"from", from}, {"to", to}, {"bits", stream.size()}}, start,
                   {common.out});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dpccm - cascaded chaotic-map random bit generator and analysis tool"};
    app.set_version_flag("--version", DPCCM_VERSION);
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("--config", common.config_path, "JSON config file (or a run manifest)");
        sub->add_option("--profile", common.profile, "named preset, e.g. paper-65nm");
        sub->add_option("--out", common.out, "output path");
        if (with_format)
            sub->add_option("--format", common.format, "bitstream format: bin or ascii")
                ->check(CLI::IsMember({"bin", "ascii"}));
        sub->add_option("--manifest", common.manifest, "run manifest path (default <out>.manifest.json)");
        sub->add_option("--threads", common.threads, "worker threads (default $DPCCM_THREADS or all cores)");
    };

    GeneratorFlags gen;
    auto* generate = app.add_subcommand("generate", "generate a bitstream");
    add_common(generate, true);
    gen.attach(generate, true);

    GeneratorFlags bif_gen;
    ScanFlags bif;
    auto* bifurcation = app.add_subcommand("bifurcation", "bifurcation diagram samples as CSV");
    add_common(bifurcation, false);
    bif_gen.attach(bifurcation, false);
    bif.attach(bifurcation, false);

    GeneratorFlags lya_gen;
    ScanFlags lya;
    auto* lyapunov = app.add_subcommand("lyapunov", "Lyapunov exponent scan as CSV");
    add_common(lyapunov, false);
    lya_gen.attach(lyapunov, false);
    lya.attach(lyapunov, true);

    InputFlags fips_in;
    std::optional<std::size_t> budget;
    auto* fips_cmd = app.add_subcommand("fips", "FIPS 140-2 block tests");
    add_common(fips_cmd, true);
    fips_in.attach(fips_cmd);
    fips_cmd->add_option("--budget", budget, "failed blocks tolerated (default: all, report only)");

    InputFlags nist_in;
    NistFlags nist_flags;
    auto* nist_cmd = app.add_subcommand("nist", "NIST SP 800-22 subset, multi-stream campaign");
    add_common(nist_cmd, true);
    nist_in.attach(nist_cmd);
    nist_flags.attach(nist_cmd);

    GeneratorFlags bench_gen;
    std::size_t bench_pairs = 8, bench_samples = 100'000;
    auto* bench = app.add_subcommand("bench", "software throughput of both designs");
    add_common(bench, false);
    bench_gen.attach(bench, false);
    bench->add_option("--pairs", bench_pairs, "pairs per run");
    bench->add_option("--samples", bench_samples, "samples per pair");

    std::string conv_in, conv_from = "bin", conv_to = "ascii";
    std::optional<std::size_t> conv_bits;
    auto* convert = app.add_subcommand("convert", "convert between bin and ascii");
    add_common(convert, false);
    convert->add_option("--in", conv_in, "input bitstream")->required();
    convert->add_option("--from", conv_from, "input format")->check(CLI::IsMember({"bin", "ascii"}));
    convert->add_option("--to", conv_to, "output format")->check(CLI::IsMember({"bin", "ascii"}));
    convert->add_option("--bits", conv_bits, "bit length of a bin input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*generate) return cmd_generate(common, gen);
        if (*bifurcation) return cmd_bifurcation(common, bif_gen, bif);
        if (*lyapunov) return cmd_lyapunov(common, lya_gen, lya);
        if (*fips_cmd) return cmd_fips(common, fips_in, budget);
        if (*nist_cmd) return cmd_nist(common, nist_in, nist_flags);
        if (*bench) return cmd_bench(common, bench_gen, bench_pairs, bench_samples);
        if (*convert) return cmd_convert(common, conv_in, conv_from, conv_to, conv_bits);
    } catch (const IoError& e) {
        std::cerr << "dpccm: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "dpccm: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "dpccm: config: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
