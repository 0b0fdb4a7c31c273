#include "shoptrack/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <tuple>

#include <json.hpp>

#include "shoptrack/errors.hpp"

namespace shoptrack {

namespace {

using nlohmann::json;

constexpr int kDefaultAges[] = {9, 23, 36, 67, 15, 28, 45, 52, 31, 74};
constexpr std::string_view kDefaultPalette[] = {"Blue", "Green", "Red",  "White",
                                                "Pink", "Orange", "Gray", "Black"};

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) from the top 53 bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Uniform in the closed disk; rejection sampling keeps the mapping free of
// libm calls whose last-bit behaviour varies across platforms.
Point2D disk_offset(SplitMix64& rng, double radius) {
    if (radius <= 0.0) return {0.0, 0.0};
    for (;;) {
        const double x = (2.0 * rng.next_unit() - 1.0) * radius;
        const double y = (2.0 * rng.next_unit() - 1.0) * radius;
        if (x * x + y * y <= radius * radius) return {x, y};
    }
}

std::string indexed_id(const char* stem, int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%03d", stem, i);
    return buf;
}

[[noreturn]] void bad_scenario(const std::string& message) {
    throw ValidationError("scenario: " + message);
}

void check_label(const std::string& label, const char* what, int index) {
    if (label.empty()) {
        bad_scenario(std::string(what) + " " + std::to_string(index) + " label is empty");
    }
    if (label.find_first_of(",\r\n") != std::string::npos) {
        bad_scenario(std::string(what) + " " + std::to_string(index) + " label '" + label +
                     "' contains a comma or line break");
    }
}

CustomerSpec default_spec(int i) {
    CustomerSpec spec;
    spec.age = kDefaultAges[static_cast<std::size_t>(i) % std::size(kDefaultAges)];
    spec.gender = i % 2 == 0 ? Gender::female : Gender::male;
    spec.expressions = {
        std::string(kExpressionVocabulary[static_cast<std::size_t>(i) %
                                          kExpressionVocabulary.size()])};
    return spec;
}

} // namespace

void ScenarioConfig::validate() const {
    if (n_garments < 1) bad_scenario("n_garments must be at least 1");
    if (!(garment_spacing > 0.0)) bad_scenario("garment_spacing must be positive");
    if (n_customers < 0) bad_scenario("n_customers must be non-negative");
    if (customer_radius < 0.0) bad_scenario("customer_radius must be non-negative");
    if (jitter < 0.0) bad_scenario("jitter must be non-negative");
    if (n_frames < 1) bad_scenario("n_frames must be at least 1");
    if (!(customer_radius < garment_spacing / 2.0)) {
        bad_scenario("customer_radius must be less than half the garment spacing");
    }
    if (!(customer_radius + jitter < garment_spacing / 2.0)) {
        bad_scenario("customer_radius plus jitter must stay under half the garment spacing");
    }
    if (mindist) {
        if (*mindist < 0.0) bad_scenario("mindist must be non-negative");
        if (jitter > 0.0 && !(jitter < *mindist / 2.0)) {
            bad_scenario("jitter must be less than half of mindist to avoid drift re-clustering");
        }
    }

    std::map<int, std::vector<std::int64_t>> move_frames;
    for (const auto& move : moves) {
        if (move.customer < 0 || move.customer >= n_customers) {
            bad_scenario("move references customer " + std::to_string(move.customer) +
                         " outside [0, " + std::to_string(n_customers) + ")");
        }
        if (move.garment < 0 || move.garment >= n_garments) {
            bad_scenario("move references garment " + std::to_string(move.garment) +
                         " outside [0, " + std::to_string(n_garments) + ")");
        }
        if (move.frame < 1 || move.frame > n_frames - 1) {
            bad_scenario("move frame " + std::to_string(move.frame) + " outside [1, " +
                         std::to_string(n_frames - 1) + "]");
        }
        move_frames[move.customer].push_back(move.frame);
    }
    for (auto& [customer, frames] : move_frames) {
        std::sort(frames.begin(), frames.end());
        for (std::size_t i = 1; i < frames.size(); ++i) {
            if (frames[i] == frames[i - 1]) {
                bad_scenario("customer " + std::to_string(customer) + " has two moves at frame " +
                             std::to_string(frames[i]));
            }
            if (frames[i] - frames[i - 1] < 2) {
                bad_scenario("customer " + std::to_string(customer) +
                             " moves at frames " + std::to_string(frames[i - 1]) + " and " +
                             std::to_string(frames[i]) + "; moves must be at least 2 frames apart");
            }
        }
    }

    if (!demographics.empty() && demographics.size() != static_cast<std::size_t>(n_customers)) {
        bad_scenario("demographics lists " + std::to_string(demographics.size()) +
                     " customers, expected " + std::to_string(n_customers));
    }
    for (std::size_t i = 0; i < demographics.size(); ++i) {
        const CustomerSpec& spec = demographics[i];
        if (spec.age < 0 || spec.age > 120) {
            bad_scenario("customer " + std::to_string(i) + " age " + std::to_string(spec.age) +
                         " out of range [0, 120]");
        }
        if (spec.expressions.empty()) {
            bad_scenario("customer " + std::to_string(i) + " has an empty expression script");
        }
        for (const auto& label : spec.expressions) {
            if (std::find(kExpressionVocabulary.begin(), kExpressionVocabulary.end(), label) ==
                kExpressionVocabulary.end()) {
                bad_scenario("customer " + std::to_string(i) + " uses unknown expression '" +
                             label + "'");
            }
        }
    }

    if (!colors.empty() && colors.size() != static_cast<std::size_t>(n_garments)) {
        bad_scenario("colors lists " + std::to_string(colors.size()) + " garments, expected " +
                     std::to_string(n_garments));
    }
    for (std::size_t i = 0; i < colors.size(); ++i) {
        check_label(colors[i], "garment color", static_cast<int>(i));
    }
}

ScenarioConfig scenario_from_json(std::istream& in) {
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) bad_scenario("invalid JSON");
    if (!j.is_object()) bad_scenario("top level must be a JSON object");

    static const std::set<std::string> known{
        "seed",     "n_garments", "garment_spacing", "n_customers", "customer_radius",
        "jitter",   "n_frames",   "moves",           "demographics", "colors",
        "mindist"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) bad_scenario("unknown key '" + key + "'");
    }

    const auto require_int = [&](const char* key, auto& target) {
        if (!j.contains(key)) return;
        if (!j[key].is_number_integer()) bad_scenario(std::string("'") + key + "' must be an integer");
        target = j[key].template get<std::decay_t<decltype(target)>>();
    };
    const auto require_number = [&](const char* key, double& target) {
        if (!j.contains(key)) return;
        if (!j[key].is_number()) bad_scenario(std::string("'") + key + "' must be a number");
        target = j[key].get<double>();
    };

    ScenarioConfig config;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() ||
            (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0)) {
            bad_scenario("'seed' must be a non-negative integer");
        }
        config.seed = j["seed"].get<std::uint64_t>();
    }
    require_int("n_garments", config.n_garments);
    require_number("garment_spacing", config.garment_spacing);
    require_int("n_customers", config.n_customers);
    require_number("customer_radius", config.customer_radius);
    require_number("jitter", config.jitter);
    require_int("n_frames", config.n_frames);
    if (j.contains("mindist")) {
        if (!j["mindist"].is_number()) bad_scenario("'mindist' must be a number");
        config.mindist = j["mindist"].get<double>();
    }

    if (j.contains("moves")) {
        if (!j["moves"].is_array()) bad_scenario("'moves' must be an array");
        for (const auto& m : j["moves"]) {
            if (!m.is_object()) bad_scenario("move entries must be objects");
            for (const auto& [key, value] : m.items()) {
                if (key != "customer" && key != "frame" && key != "garment") {
                    bad_scenario("unknown move key '" + key + "'");
                }
            }
            if (!m.contains("customer") || !m["customer"].is_number_integer() ||
                !m.contains("frame") || !m["frame"].is_number_integer() ||
                !m.contains("garment") || !m["garment"].is_number_integer()) {
                bad_scenario("moves need integer 'customer', 'frame' and 'garment'");
            }
            config.moves.push_back({m["customer"].get<int>(), m["frame"].get<std::int64_t>(),
                                    m["garment"].get<int>()});
        }
    }

    if (j.contains("demographics")) {
        if (!j["demographics"].is_array()) bad_scenario("'demographics' must be an array");
        int index = 0;
        for (const auto& d : j["demographics"]) {
            if (!d.is_object()) bad_scenario("demographics entries must be objects");
            for (const auto& [key, value] : d.items()) {
                if (key != "age" && key != "gender" && key != "expressions") {
                    bad_scenario("unknown demographics key '" + key + "'");
                }
            }
            CustomerSpec spec = default_spec(index);
            if (d.contains("age")) {
                if (!d["age"].is_number_integer()) bad_scenario("'age' must be an integer");
                spec.age = d["age"].get<int>();
            }
            if (d.contains("gender")) {
                if (!d["gender"].is_string()) bad_scenario("'gender' must be a string");
                const auto gender = gender_from_string(d["gender"].get<std::string>());
                if (!gender) bad_scenario("gender must be \"female\" or \"male\"");
                spec.gender = *gender;
            }
            if (d.contains("expressions")) {
                if (!d["expressions"].is_array()) bad_scenario("'expressions' must be an array");
                spec.expressions.clear();
                for (const auto& e : d["expressions"]) {
                    if (!e.is_string()) bad_scenario("expression labels must be strings");
                    spec.expressions.push_back(e.get<std::string>());
                }
            }
            config.demographics.push_back(std::move(spec));
            ++index;
        }
    }

    if (j.contains("colors")) {
        if (!j["colors"].is_array()) bad_scenario("'colors' must be an array");
        for (const auto& c : j["colors"]) {
            if (!c.is_string()) bad_scenario("color labels must be strings");
            config.colors.push_back(c.get<std::string>());
        }
    }

    return config;
}

ScenarioConfig scenario_from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return scenario_from_json(in);
}

Scenario generate(const ScenarioConfig& config) {
    config.validate();

    const auto garment_center = [&](int j) -> Point2D {
        return {200.0 + static_cast<double>(j) * config.garment_spacing, 300.0};
    };

    std::vector<CustomerSpec> specs = config.demographics;
    if (specs.empty()) {
        for (int i = 0; i < config.n_customers; ++i) specs.push_back(default_spec(i));
    }
    std::vector<std::string> palette = config.colors;
    if (palette.empty()) {
        for (int j = 0; j < config.n_garments; ++j) {
            palette.emplace_back(
                kDefaultPalette[static_cast<std::size_t>(j) % std::size(kDefaultPalette)]);
        }
    }

    std::vector<ScriptedMove> moves = config.moves;
    std::sort(moves.begin(), moves.end(), [](const ScriptedMove& a, const ScriptedMove& b) {
        return std::tie(a.frame, a.customer) < std::tie(b.frame, b.customer);
    });

    SplitMix64 rng(config.seed);
    std::vector<int> assigned(static_cast<std::size_t>(config.n_customers));
    std::vector<Point2D> base(static_cast<std::size_t>(config.n_customers));
    for (int i = 0; i < config.n_customers; ++i) {
        assigned[static_cast<std::size_t>(i)] = i % config.n_garments;
        base[static_cast<std::size_t>(i)] = disk_offset(rng, config.customer_radius);
    }

    Scenario scenario;
    scenario.frames.reserve(static_cast<std::size_t>(config.n_frames));
    std::size_t next_move = 0;
    for (std::int64_t f = 0; f < config.n_frames; ++f) {
        while (next_move < moves.size() && moves[next_move].frame == f) {
            const ScriptedMove& move = moves[next_move];
            assigned[static_cast<std::size_t>(move.customer)] = move.garment;
            base[static_cast<std::size_t>(move.customer)] =
                disk_offset(rng, config.customer_radius);
            ++next_move;
        }

        FrameAnnotations frame;
        frame.frame = f;
        for (int i = 0; i < config.n_customers; ++i) {
            const Point2D jit = disk_offset(rng, config.jitter);
            const Point2D center = garment_center(assigned[static_cast<std::size_t>(i)]);
            const double cx = center.x + base[static_cast<std::size_t>(i)].x + jit.x;
            const double cy = center.y + base[static_cast<std::size_t>(i)].y + jit.y;
            const CustomerSpec& spec = specs[static_cast<std::size_t>(i)];
            CustomerObservation obs;
            obs.tracking_id = customer_key(indexed_id("cust", i));
            obs.frame = f;
            obs.bbox = {cx - 20.0, cy - 45.0, cx + 20.0, cy + 45.0};
            obs.age_years = spec.age;
            obs.gender = spec.gender;
            obs.expression =
                spec.expressions[static_cast<std::size_t>(f) % spec.expressions.size()];
            frame.customers.push_back(std::move(obs));
        }
        for (int jdx = 0; jdx < config.n_garments; ++jdx) {
            const Point2D center = garment_center(jdx);
            GarmentObservation obs;
            obs.tracking_id = garment_key(indexed_id("garm", jdx));
            obs.frame = f;
            obs.bbox = {center.x - 30.0, center.y - 40.0, center.x + 30.0, center.y + 40.0};
            obs.color = palette[static_cast<std::size_t>(jdx)];
            frame.garments.push_back(std::move(obs));
        }
        scenario.frames.push_back(std::move(frame));
    }

    for (int i = 0; i < config.n_customers; ++i) {
        const std::string customer_id = customer_key(indexed_id("cust", i));
        int garment = i % config.n_garments;
        std::int64_t seg_start = 0;
        for (const auto& move : moves) {
            if (move.customer != i || move.garment == garment) continue;
            scenario.ground_truth.push_back(
                {customer_id, garment_key(indexed_id("garm", garment)), seg_start,
                 move.frame - 1});
            garment = move.garment;
            seg_start = move.frame;
        }
        scenario.ground_truth.push_back({customer_id, garment_key(indexed_id("garm", garment)),
                                         seg_start, config.n_frames - 1});
    }
    sort_intervals(scenario.ground_truth);
    return scenario;
}

} // namespace shoptrack
