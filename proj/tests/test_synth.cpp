#include <doctest.h>

#include <shoptrack/errors.hpp>
#include <shoptrack/stream.hpp>
#include <shoptrack/synth.hpp>
#include <shoptrack/tracker.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace shoptrack;

namespace {

ScenarioConfig small_config() {
    ScenarioConfig config;
    config.seed = 42;
    config.n_garments = 2;
    config.garment_spacing = 400.0;
    config.n_customers = 4;
    config.customer_radius = 50.0;
    config.jitter = 3.0;
    config.n_frames = 30;
    config.mindist = 20.0;
    return config;
}

std::string serialize(const std::vector<FrameAnnotations>& frames) {
    std::ostringstream out;
    write_stream(out, frames);
    return out.str();
}

Point2D planted_center(const ScenarioConfig& config, int garment) {
    return {200.0 + garment * config.garment_spacing, 300.0};
}

ScenarioConfig parse_scenario(const std::string& text) {
    std::istringstream in(text);
    return scenario_from_json(in);
}

void check_rejected(ScenarioConfig config, const std::string& needle) {
    try {
        config.validate();
        FAIL_CHECK("expected rejection mentioning '" << needle << "'");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

} // namespace

TEST_CASE("identical configs generate byte-identical scenarios") {
    const ScenarioConfig config = small_config();
    const Scenario a = generate(config);
    const Scenario b = generate(config);
    CHECK(serialize(a.frames) == serialize(b.frames));
    CHECK(a.ground_truth == b.ground_truth);
}

TEST_CASE("changing the seed changes the stream") {
    ScenarioConfig config = small_config();
    const Scenario a = generate(config);
    config.seed = 43;
    const Scenario b = generate(config);
    CHECK(serialize(a.frames) != serialize(b.frames));
    CHECK(a.ground_truth == b.ground_truth); // the script, not the noise, plants the truth
}

TEST_CASE("customers stay inside the disk around their assigned garment") {
    const ScenarioConfig config = small_config();
    const Scenario scenario = generate(config);
    REQUIRE(scenario.frames.size() == 30);
    for (const auto& frame : scenario.frames) {
        REQUIRE(frame.customers.size() == 4);
        REQUIRE(frame.garments.size() == 2);
        for (std::size_t i = 0; i < frame.customers.size(); ++i) {
            const Point2D pos = bbox_center(frame.customers[i].bbox);
            const Point2D center = planted_center(config, static_cast<int>(i) % 2);
            const double d = std::hypot(pos.x - center.x, pos.y - center.y);
            CHECK(d <= config.customer_radius + config.jitter + 1e-9);
        }
    }
}

TEST_CASE("garments sit exactly on the planted line") {
    const ScenarioConfig config = small_config();
    const Scenario scenario = generate(config);
    for (const auto& frame : scenario.frames) {
        for (std::size_t j = 0; j < frame.garments.size(); ++j) {
            const Point2D pos = bbox_center(frame.garments[j].bbox);
            const Point2D center = planted_center(config, static_cast<int>(j));
            CHECK(pos.x == center.x);
            CHECK(pos.y == center.y);
        }
    }
}

TEST_CASE("the assigned garment is always the nearest one") {
    ScenarioConfig config = small_config();
    config.n_garments = 4;
    config.n_customers = 10;
    const Scenario scenario = generate(config);
    for (const auto& frame : scenario.frames) {
        for (std::size_t i = 0; i < frame.customers.size(); ++i) {
            const Point2D pos = bbox_center(frame.customers[i].bbox);
            double best = 1e300;
            int nearest = -1;
            for (int j = 0; j < config.n_garments; ++j) {
                const Point2D center = planted_center(config, j);
                const double d = std::hypot(pos.x - center.x, pos.y - center.y);
                if (d < best) {
                    best = d;
                    nearest = j;
                }
            }
            CHECK(nearest == static_cast<int>(i) % config.n_garments);
        }
    }
}

TEST_CASE("ground truth without moves is one full-length interval per customer") {
    ScenarioConfig config = small_config();
    config.n_customers = 3;
    const Scenario scenario = generate(config);
    const std::vector<AssociationInterval> expected = {
        {customer_key("cust000"), garment_key("garm000"), 0, 29},
        {customer_key("cust001"), garment_key("garm001"), 0, 29},
        {customer_key("cust002"), garment_key("garm000"), 0, 29},
    };
    CHECK(scenario.ground_truth == expected);
}

TEST_CASE("moves split the planted truth at the move frame") {
    ScenarioConfig config = small_config();
    config.n_customers = 2;
    config.moves = {{0, 10, 1}, {0, 20, 0}};
    const Scenario scenario = generate(config);
    const std::vector<AssociationInterval> expected = {
        {customer_key("cust000"), garment_key("garm000"), 0, 9},
        {customer_key("cust001"), garment_key("garm001"), 0, 29},
        {customer_key("cust000"), garment_key("garm001"), 10, 19},
        {customer_key("cust000"), garment_key("garm000"), 20, 29},
    };
    CHECK(scenario.ground_truth == expected);
}

TEST_CASE("a move to the currently assigned garment does not split the truth") {
    ScenarioConfig config = small_config();
    config.n_customers = 1;
    config.moves = {{0, 10, 0}};
    const Scenario scenario = generate(config);
    REQUIRE(scenario.ground_truth.size() == 1);
    CHECK(scenario.ground_truth[0] ==
          AssociationInterval{customer_key("cust000"), garment_key("garm000"), 0, 29});
}

TEST_CASE("a single-frame scenario plants a single-frame truth") {
    ScenarioConfig config = small_config();
    config.n_frames = 1;
    config.n_customers = 1;
    config.jitter = 0.0;
    const Scenario scenario = generate(config);
    REQUIRE(scenario.frames.size() == 1);
    REQUIRE(scenario.ground_truth.size() == 1);
    CHECK(scenario.ground_truth[0].start_frame == 0);
    CHECK(scenario.ground_truth[0].end_frame == 0);
}

TEST_CASE("default demographics are deterministic and expressions cycle") {
    ScenarioConfig config = small_config();
    config.n_customers = 3;
    config.n_frames = 3;
    const Scenario scenario = generate(config);

    const auto& first = scenario.frames[0].customers;
    CHECK(first[0].age_years == 9);
    CHECK(first[1].age_years == 23);
    CHECK(first[2].age_years == 36);
    CHECK(first[0].gender == Gender::female);
    CHECK(first[1].gender == Gender::male);
    CHECK(first[2].gender == Gender::female);
    CHECK(first[0].expression == "angry");
    CHECK(first[1].expression == "disgust");
    CHECK(first[2].expression == "fear");

    ScenarioConfig scripted = config;
    scripted.n_customers = 1;
    scripted.demographics = {{23, Gender::female, {"happy", "sad"}}};
    const Scenario cycled = generate(scripted);
    CHECK(cycled.frames[0].customers[0].expression == "happy");
    CHECK(cycled.frames[1].customers[0].expression == "sad");
    CHECK(cycled.frames[2].customers[0].expression == "happy");
}

TEST_CASE("default garment colors cycle the palette") {
    ScenarioConfig config = small_config();
    config.n_garments = 3;
    config.garment_spacing = 400.0;
    const Scenario scenario = generate(config);
    CHECK(scenario.frames[0].garments[0].color == "Blue");
    CHECK(scenario.frames[0].garments[1].color == "Green");
    CHECK(scenario.frames[0].garments[2].color == "Red");
}

TEST_CASE("scenario JSON round trip") {
    const ScenarioConfig config = parse_scenario(R"({
        "seed": 7,
        "n_garments": 2,
        "garment_spacing": 350.5,
        "n_customers": 2,
        "customer_radius": 40,
        "jitter": 1.5,
        "n_frames": 100,
        "mindist": 20,
        "moves": [{"customer": 0, "frame": 50, "garment": 1}],
        "demographics": [
            {"age": 23, "gender": "female", "expressions": ["happy"]},
            {"age": 67}
        ],
        "colors": ["Navy", "Teal"]
    })");
    CHECK(config.seed == 7);
    CHECK(config.n_garments == 2);
    CHECK(config.garment_spacing == 350.5);
    CHECK(config.n_customers == 2);
    CHECK(config.customer_radius == 40.0);
    CHECK(config.jitter == 1.5);
    CHECK(config.n_frames == 100);
    REQUIRE(config.mindist.has_value());
    CHECK(*config.mindist == 20.0);
    REQUIRE(config.moves.size() == 1);
    CHECK(config.moves[0].customer == 0);
    CHECK(config.moves[0].frame == 50);
    CHECK(config.moves[0].garment == 1);
    REQUIRE(config.demographics.size() == 2);
    CHECK(config.demographics[0].age == 23);
    CHECK(config.demographics[0].expressions == std::vector<std::string>{"happy"});
    CHECK(config.demographics[1].age == 67);
    CHECK(config.demographics[1].gender == Gender::male); // index default
    CHECK(config.colors == std::vector<std::string>{"Navy", "Teal"});
    config.validate();
}

TEST_CASE("scenario JSON rejects malformed input") {
    CHECK_THROWS_AS(parse_scenario("{"), ValidationError);
    CHECK_THROWS_AS(parse_scenario("[]"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"n_frames": 10, "typo_key": 1})"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"seed": -3})"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"seed": 1.5})"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"n_frames": "many"})"), ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"moves": [{"customer": 0, "frame": 1}]})"),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"moves": [{"customer": 0, "frame": 1, "garment": 0, "x": 1}]})"),
        ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"demographics": [{"gender": "other"}]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"colors": [3]})"), ValidationError);
}

TEST_CASE("scenario validation rejects inconsistent geometry and scripts") {
    const ScenarioConfig base = small_config();

    SUBCASE("garment count") {
        ScenarioConfig c = base;
        c.n_garments = 0;
        check_rejected(c, "n_garments");
    }
    SUBCASE("spacing") {
        ScenarioConfig c = base;
        c.garment_spacing = 0.0;
        check_rejected(c, "garment_spacing");
    }
    SUBCASE("radius crowds the spacing") {
        ScenarioConfig c = base;
        c.customer_radius = 200.0;
        check_rejected(c, "half the garment spacing");
    }
    SUBCASE("radius plus jitter crowds the spacing") {
        ScenarioConfig c = base;
        c.customer_radius = 195.0;
        c.jitter = 6.0;
        c.mindist = 20.0;
        check_rejected(c, "half the garment spacing");
    }
    SUBCASE("jitter incompatible with promised mindist") {
        ScenarioConfig c = base;
        c.jitter = 15.0;
        c.mindist = 20.0;
        check_rejected(c, "mindist");
    }
    SUBCASE("negative frame count") {
        ScenarioConfig c = base;
        c.n_frames = 0;
        check_rejected(c, "n_frames");
    }
    SUBCASE("move at frame zero") {
        ScenarioConfig c = base;
        c.moves = {{0, 0, 1}};
        check_rejected(c, "outside [1, 29]");
    }
    SUBCASE("move past the last frame") {
        ScenarioConfig c = base;
        c.moves = {{0, 30, 1}};
        check_rejected(c, "outside [1, 29]");
    }
    SUBCASE("move names an unknown customer") {
        ScenarioConfig c = base;
        c.moves = {{4, 10, 1}};
        check_rejected(c, "customer 4");
    }
    SUBCASE("move names an unknown garment") {
        ScenarioConfig c = base;
        c.moves = {{0, 10, 2}};
        check_rejected(c, "garment 2");
    }
    SUBCASE("duplicate move frame") {
        ScenarioConfig c = base;
        c.moves = {{0, 10, 1}, {0, 10, 0}};
        check_rejected(c, "two moves at frame 10");
    }
    SUBCASE("adjacent move frames") {
        ScenarioConfig c = base;
        c.moves = {{0, 10, 1}, {0, 11, 0}};
        check_rejected(c, "at least 2 frames apart");
    }
    SUBCASE("demographics of the wrong size") {
        ScenarioConfig c = base;
        c.demographics = {{23, Gender::female, {"happy"}}};
        check_rejected(c, "demographics");
    }
    SUBCASE("age out of range") {
        ScenarioConfig c = base;
        c.demographics.assign(4, {23, Gender::female, {"happy"}});
        c.demographics[2].age = 121;
        check_rejected(c, "age 121");
    }
    SUBCASE("empty expression script") {
        ScenarioConfig c = base;
        c.demographics.assign(4, {23, Gender::female, {"happy"}});
        c.demographics[0].expressions.clear();
        check_rejected(c, "expression script");
    }
    SUBCASE("unknown expression label") {
        ScenarioConfig c = base;
        c.demographics.assign(4, {23, Gender::female, {"smirk"}});
        check_rejected(c, "unknown expression 'smirk'");
    }
    SUBCASE("colors of the wrong size") {
        ScenarioConfig c = base;
        c.colors = {"Blue"};
        check_rejected(c, "colors");
    }
    SUBCASE("color label breaks the CSV") {
        ScenarioConfig c = base;
        c.colors = {"Blue", "Red,Green"};
        check_rejected(c, "comma");
    }
}

TEST_CASE("a quiet scenario never re-clusters after the first frame") {
    ScenarioConfig config = small_config();
    config.jitter = 0.0;
    EngineConfig engine;
    engine.mindist = *config.mindist;

    const Scenario scenario = generate(config);
    Tracker tracker(engine);
    for (const auto& frame : scenario.frames) tracker.process_frame(frame);
    CHECK(tracker.reclusterings() == 1);
    CHECK(tracker.finalize() == scenario.ground_truth);
}

TEST_CASE("the tracker recovers a planted script with jitter") {
    ScenarioConfig config = small_config();
    config.n_frames = 60;
    config.moves = {{0, 20, 1}, {2, 40, 1}};
    EngineConfig engine;
    engine.mindist = *config.mindist;

    const Scenario scenario = generate(config);
    Tracker tracker(engine);
    for (const auto& frame : scenario.frames) tracker.process_frame(frame);
    const auto recovered = tracker.finalize();

    REQUIRE(recovered.size() == scenario.ground_truth.size());
    for (std::size_t i = 0; i < recovered.size(); ++i) {
        CHECK(recovered[i].customer_id == scenario.ground_truth[i].customer_id);
        CHECK(recovered[i].garment_id == scenario.ground_truth[i].garment_id);
        CHECK(std::llabs(recovered[i].start_frame - scenario.ground_truth[i].start_frame) <= 1);
        CHECK(std::llabs(recovered[i].end_frame - scenario.ground_truth[i].end_frame) <= 1);
    }
    CHECK(tracker.reclusterings() == 3); // first frame plus two scripted moves
}
