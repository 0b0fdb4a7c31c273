#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shoptrack/model.hpp"
#include "shoptrack/tracker.hpp"

namespace shoptrack {

// All synthetic randomness flows from ScenarioConfig::seed through this
// generator; the identifier is recorded in run manifests so golden files can
// be reproduced anywhere.
inline constexpr std::string_view kPrngAlgorithm = "splitmix64";

struct ScriptedMove {
    int customer = 0;       // customer index
    std::int64_t frame = 0; // takes effect at this frame
    int garment = 0;        // destination garment index
};

struct CustomerSpec {
    int age = 30;
    Gender gender = Gender::female;
    std::vector<std::string> expressions; // cycled per frame
};

// Geometric probe scenario: garments on a line, customers jittering inside a
// disk around their assigned garment, scripted teleports between garments.
// customer_radius < garment_spacing / 2 keeps the planted truth unambiguous.
struct ScenarioConfig {
    std::uint64_t seed = 0;
    int n_garments = 1;
    double garment_spacing = 400.0;
    int n_customers = 0;
    double customer_radius = 50.0;
    double jitter = 0.0; // px, fresh offset per frame (not a random walk)
    std::int64_t n_frames = 1;
    std::vector<ScriptedMove> moves;
    std::vector<CustomerSpec> demographics; // empty -> deterministic defaults
    std::vector<std::string> colors;        // empty -> default palette
    // When set, the scenario promises not to trigger drift re-clustering
    // between moves, which requires jitter < mindist / 2.
    std::optional<double> mindist;

    void validate() const; // throws ValidationError
};

ScenarioConfig scenario_from_json(std::istream& in);
ScenarioConfig scenario_from_json_file(const std::filesystem::path& path);

struct Scenario {
    std::vector<FrameAnnotations> frames;
    std::vector<AssociationInterval> ground_truth; // planted associations
};

// Deterministic: identical config (including seed) yields identical frames
// and ground truth, byte-for-byte once serialized.
Scenario generate(const ScenarioConfig& config);

} // namespace shoptrack
