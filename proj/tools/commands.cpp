#include "commands.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include <shoptrack/analytics.hpp>
#include <shoptrack/errors.hpp>
#include <shoptrack/stream.hpp>
#include <shoptrack/synth.hpp>
#include <shoptrack/tracker.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace shoptrack::cli {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) return {};
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& value, const std::string& context) {
    double parsed = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc{} || ptr != end) {
        throw ValidationError(context + ": '" + value + "' is not a number");
    }
    return parsed;
}

std::int64_t parse_integer(const std::string& value, const std::string& context) {
    std::int64_t parsed = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, parsed);
    if (ec != std::errc{} || ptr != end) {
        throw ValidationError(context + ": '" + value + "' is not an integer");
    }
    return parsed;
}

std::string timestamp_utc() {
    std::time_t now = 0;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        std::int64_t value = 0;
        const char* end = epoch + std::strlen(epoch);
        const auto [ptr, ec] = std::from_chars(epoch, end, value);
        if (ec != std::errc{} || ptr != end) {
            throw ValidationError("SOURCE_DATE_EPOCH must be an integer");
        }
        now = static_cast<std::time_t>(value);
    } else {
        now = std::time(nullptr);
    }
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fnv1a64_hex(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    for (;;) {
        in.read(buf, sizeof(buf));
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
    char hex[19];
    std::snprintf(hex, sizeof(hex), "0x%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

void ensure_out_dir(const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "'");
}

void write_interval_csv_file(const fs::path& path,
                             const std::vector<AssociationInterval>& intervals,
                             double frame_duration) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    write_interval_csv(out, intervals, frame_duration);
    if (!out.good()) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<AssociationInterval> read_interval_csv_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return read_interval_csv(in);
}

json config_json(const EngineConfig& config) {
    return {
        {"garment_weight", config.garment_weight},
        {"customer_weight", config.customer_weight},
        {"mindist", config.mindist},
        {"frame_duration", config.frame_duration},
        {"wkm_max_iters", config.wkm_max_iters},
        {"wkm_tol", config.wkm_tol},
    };
}

void write_manifest(const std::string& command, const fs::path& out_dir,
                    const std::vector<fs::path>& inputs,
                    const std::vector<std::string>& outputs, const EngineConfig& config,
                    const json& extra = json::object()) {
    json manifest;
    manifest["tool"] = "shoptrack";
    manifest["version"] = SHOPTRACK_VERSION;
    manifest["command"] = command;
    manifest["created_utc"] = timestamp_utc();
    manifest["inputs"] = json::array();
    for (const auto& path : inputs) {
        manifest["inputs"].push_back({{"path", path.string()}, {"fnv1a64", fnv1a64_hex(path)}});
    }
    manifest["outputs"] = outputs;
    manifest["config"] = config_json(config);
    for (const auto& [key, value] : extra.items()) manifest[key] = value;

    const fs::path path = out_dir / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << manifest.dump(2) << '\n';
    if (!out.good()) throw IoError("write failed for '" + path.string() + "'");
}

} // namespace

EngineConfig load_config_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    EngineConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string context = "config line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError(context + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "garment_weight") {
            config.garment_weight = parse_number(value, context);
        } else if (key == "customer_weight") {
            config.customer_weight = parse_number(value, context);
        } else if (key == "mindist") {
            config.mindist = parse_number(value, context);
        } else if (key == "frame_duration") {
            config.frame_duration = parse_number(value, context);
        } else if (key == "wkm_max_iters") {
            config.wkm_max_iters = static_cast<int>(parse_integer(value, context));
        } else if (key == "wkm_tol") {
            config.wkm_tol = parse_number(value, context);
        } else {
            throw ValidationError(context + ": unknown key '" + key + "'");
        }
    }
    return config;
}

EngineConfig resolve_config(const CommonOptions& options) {
    EngineConfig config;
    if (!options.config_file.empty()) config = load_config_file(options.config_file);
    if (options.frame_duration) config.frame_duration = *options.frame_duration;
    if (options.mindist) config.mindist = *options.mindist;
    if (options.garment_weight) config.garment_weight = *options.garment_weight;
    if (options.customer_weight) config.customer_weight = *options.customer_weight;
    config.validate();
    return config;
}

int cmd_track(const fs::path& input, const CommonOptions& options) {
    const EngineConfig config = resolve_config(options);
    const auto frames = read_stream_file(input);
    if (frames.empty()) throw ValidationError("no frames");

    Tracker tracker(config);
    for (const auto& frame : frames) tracker.process_frame(frame);
    const auto intervals = tracker.finalize();

    ensure_out_dir(options.out_dir);
    write_interval_csv_file(options.out_dir / "intervals.csv", intervals, config.frame_duration);
    write_manifest("track", options.out_dir, {input}, {"intervals.csv"}, config);
    return 0;
}

int cmd_analyze(const fs::path& intervals_path, const fs::path& stream_path,
                const CommonOptions& options) {
    const EngineConfig config = resolve_config(options);
    const auto intervals = read_interval_csv_file(intervals_path);
    const auto stream = read_stream_file(stream_path);
    const ReportBundle bundle = build_reports(stream, intervals, config);

    ensure_out_dir(options.out_dir);
    const fs::path report_path = options.out_dir / "report.json";
    {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw IoError("cannot write '" + report_path.string() + "'");
        write_report_json(out, bundle);
        if (!out.good()) throw IoError("write failed for '" + report_path.string() + "'");
    }
    std::vector<std::string> outputs{"report.json"};
    for (auto& name : write_report_csvs(options.out_dir, bundle)) {
        outputs.push_back(std::move(name));
    }
    write_manifest("analyze", options.out_dir, {intervals_path, stream_path}, outputs, config);
    return 0;
}

int cmd_synth(const fs::path& scenario_path, const CommonOptions& options) {
    const EngineConfig config = resolve_config(options);
    const ScenarioConfig scenario_config = scenario_from_json_file(scenario_path);
    const Scenario scenario = generate(scenario_config);

    ensure_out_dir(options.out_dir);
    write_stream_file(options.out_dir / "stream.jsonl", scenario.frames);
    write_interval_csv_file(options.out_dir / "ground_truth.csv", scenario.ground_truth,
                            config.frame_duration);
    json extra;
    extra["prng"] = std::string(kPrngAlgorithm);
    extra["seed"] = scenario_config.seed;
    write_manifest("synth", options.out_dir, {scenario_path},
                   {"stream.jsonl", "ground_truth.csv"}, config, extra);
    return 0;
}

int cmd_validate(const fs::path& input) {
    const StreamSummary summary = validate_stream_file(input);
    if (summary.ok()) {
        std::cout << "OK, " << summary.frames << " frames, " << summary.customers
                  << " customers, " << summary.garments << " garments\n";
        return 0;
    }
    for (const auto& violation : summary.violations) {
        if (violation.line == 0) {
            std::cout << violation.message << '\n';
        } else {
            std::cout << "line " << violation.line << ": " << violation.message << '\n';
        }
    }
    return 1;
}

} // namespace shoptrack::cli
