#pragma once

#include <filesystem>
#include <optional>

#include <shoptrack/model.hpp>

namespace shoptrack::cli {

// Flags shared by the subcommands that run the engine. Unset optionals fall
// back to the config file, which falls back to EngineConfig defaults.
struct CommonOptions {
    std::filesystem::path config_file;
    std::filesystem::path out_dir;
    std::optional<double> frame_duration;
    std::optional<double> mindist;
    std::optional<double> garment_weight;
    std::optional<double> customer_weight;
};

EngineConfig load_config_file(const std::filesystem::path& path);
EngineConfig resolve_config(const CommonOptions& options);

int cmd_track(const std::filesystem::path& input, const CommonOptions& options);
int cmd_analyze(const std::filesystem::path& intervals_path,
                const std::filesystem::path& stream_path, const CommonOptions& options);
int cmd_synth(const std::filesystem::path& scenario_path, const CommonOptions& options);
int cmd_validate(const std::filesystem::path& input);

} // namespace shoptrack::cli
