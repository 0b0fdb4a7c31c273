#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <shoptrack/errors.hpp>

#include "commands.hpp"

namespace {

void add_common_options(CLI::App* cmd, shoptrack::cli::CommonOptions& options) {
    cmd->add_option("--config", options.config_file,
                    "engine config file (key=value lines)");
    cmd->add_option("--out", options.out_dir, "output directory")->required();
    cmd->add_option("--frame-duration", options.frame_duration, "seconds per frame");
    cmd->add_option("--mindist", options.mindist,
                    "displacement in px that triggers re-clustering");
    cmd->add_option("--garment-weight", options.garment_weight, "garment point weight");
    cmd->add_option("--customer-weight", options.customer_weight, "customer point weight");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"customer-garment association engine"};
    app.set_version_flag("--version", SHOPTRACK_VERSION);
    app.require_subcommand(1);

    std::string track_input;
    shoptrack::cli::CommonOptions track_options;
    CLI::App* track = app.add_subcommand("track", "replay a stream into an interval log");
    track->add_option("input", track_input, "annotation stream (JSONL)")->required();
    add_common_options(track, track_options);

    std::string analyze_intervals;
    std::string analyze_stream;
    shoptrack::cli::CommonOptions analyze_options;
    CLI::App* analyze =
        app.add_subcommand("analyze", "aggregate an interval log into reports");
    analyze->add_option("intervals", analyze_intervals, "interval log (CSV)")->required();
    analyze->add_option("stream", analyze_stream, "annotation stream (JSONL)")->required();
    add_common_options(analyze, analyze_options);

    std::string synth_scenario;
    shoptrack::cli::CommonOptions synth_options;
    CLI::App* synth =
        app.add_subcommand("synth", "generate a scenario with planted ground truth");
    synth->add_option("scenario", synth_scenario, "scenario config (JSON)")->required();
    add_common_options(synth, synth_options);

    std::string validate_input;
    CLI::App* validate = app.add_subcommand("validate", "schema-check a stream");
    validate->add_option("input", validate_input, "annotation stream (JSONL)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(track)) {
            return shoptrack::cli::cmd_track(track_input, track_options);
        }
        if (app.got_subcommand(analyze)) {
            return shoptrack::cli::cmd_analyze(analyze_intervals, analyze_stream,
                                               analyze_options);
        }
        if (app.got_subcommand(synth)) {
            return shoptrack::cli::cmd_synth(synth_scenario, synth_options);
        }
        if (app.got_subcommand(validate)) {
            return shoptrack::cli::cmd_validate(validate_input);
        }
    } catch (const shoptrack::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const shoptrack::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
