#include "shoptrack/stream.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

namespace shoptrack {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::size_t line_no, const std::string& message) {
    throw ValidationError("line " + std::to_string(line_no) + ": " + message);
}

// Ids end up in CSV columns, so keep CSV metacharacters out of them.
void check_raw_id(const json& value, std::size_t line_no, const char* what) {
    if (!value.is_string()) fail(line_no, std::string(what) + " id must be a string");
    const std::string id = value.get<std::string>();
    if (id.empty()) fail(line_no, std::string(what) + " id must be non-empty");
    if (id.find_first_of(",\r\n") != std::string::npos) {
        fail(line_no, std::string(what) + " id '" + id + "' contains a comma or line break");
    }
}

BBox parse_bbox(const json& value, std::size_t line_no, const std::string& owner) {
    if (!value.is_array() || value.size() != 4) {
        fail(line_no, owner + ": bbox must be [x_min, y_min, x_max, y_max]");
    }
    double v[4];
    for (std::size_t i = 0; i < 4; ++i) {
        if (!value[i].is_number()) fail(line_no, owner + ": bbox entries must be numbers");
        v[i] = value[i].get<double>();
        if (!std::isfinite(v[i])) fail(line_no, owner + ": bbox entries must be finite");
    }
    const BBox bbox{v[0], v[1], v[2], v[3]};
    if (!bbox_valid(bbox)) {
        fail(line_no, owner + ": bbox corners out of order");
    }
    return bbox;
}

} // namespace

FrameAnnotations parse_frame_line(std::string_view line, std::size_t line_no) {
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) fail(line_no, "invalid JSON");
    if (!j.is_object()) fail(line_no, "frame must be a JSON object");
    if (!j.contains("frame") || !j["frame"].is_number_integer()) {
        fail(line_no, "missing integer 'frame'");
    }
    FrameAnnotations frame;
    frame.frame = j["frame"].get<std::int64_t>();
    if (frame.frame < 0) fail(line_no, "frame index must be non-negative");

    std::unordered_set<std::string> customer_ids;
    std::unordered_set<std::string> garment_ids;

    if (j.contains("customers")) {
        if (!j["customers"].is_array()) fail(line_no, "'customers' must be an array");
        for (const auto& c : j["customers"]) {
            if (!c.is_object()) fail(line_no, "customer entries must be objects");
            if (!c.contains("id")) fail(line_no, "customer missing 'id'");
            check_raw_id(c["id"], line_no, "customer");
            const std::string raw = c["id"].get<std::string>();
            const std::string owner = "customer '" + raw + "'";
            if (!customer_ids.insert(raw).second) {
                fail(line_no, "duplicate customer id '" + raw + "'");
            }
            if (!c.contains("bbox")) fail(line_no, owner + ": missing 'bbox'");
            if (!c.contains("age") || !c["age"].is_number_integer()) {
                fail(line_no, owner + ": missing integer 'age'");
            }
            const std::int64_t age = c["age"].get<std::int64_t>();
            if (age < 0 || age > 120) {
                fail(line_no, owner + ": age " + std::to_string(age) + " out of range [0, 120]");
            }
            if (!c.contains("gender") || !c["gender"].is_string()) {
                fail(line_no, owner + ": missing string 'gender'");
            }
            const auto gender = gender_from_string(c["gender"].get<std::string>());
            if (!gender) {
                fail(line_no, owner + ": gender must be \"female\" or \"male\"");
            }
            if (!c.contains("expression") || !c["expression"].is_string()) {
                fail(line_no, owner + ": missing string 'expression'");
            }
            CustomerObservation obs;
            obs.tracking_id = customer_key(raw);
            obs.frame = frame.frame;
            obs.bbox = parse_bbox(c["bbox"], line_no, owner);
            obs.age_years = static_cast<int>(age);
            obs.gender = *gender;
            obs.expression = c["expression"].get<std::string>();
            frame.customers.push_back(std::move(obs));
        }
    }

    if (j.contains("garments")) {
        if (!j["garments"].is_array()) fail(line_no, "'garments' must be an array");
        for (const auto& g : j["garments"]) {
            if (!g.is_object()) fail(line_no, "garment entries must be objects");
            if (!g.contains("id")) fail(line_no, "garment missing 'id'");
            check_raw_id(g["id"], line_no, "garment");
            const std::string raw = g["id"].get<std::string>();
            const std::string owner = "garment '" + raw + "'";
            if (!garment_ids.insert(raw).second) {
                fail(line_no, "duplicate garment id '" + raw + "'");
            }
            if (!g.contains("bbox")) fail(line_no, owner + ": missing 'bbox'");
            if (!g.contains("color") || !g["color"].is_string()) {
                fail(line_no, owner + ": missing string 'color'");
            }
            GarmentObservation obs;
            obs.tracking_id = garment_key(raw);
            obs.frame = frame.frame;
            obs.bbox = parse_bbox(g["bbox"], line_no, owner);
            obs.color = g["color"].get<std::string>();
            frame.garments.push_back(std::move(obs));
        }
    }

    return frame;
}

std::string frame_to_json_line(const FrameAnnotations& frame) {
    json j;
    j["frame"] = frame.frame;
    j["customers"] = json::array();
    for (const auto& c : frame.customers) {
        json e;
        e["id"] = std::string(raw_id(c.tracking_id));
        e["bbox"] = {c.bbox.x_min, c.bbox.y_min, c.bbox.x_max, c.bbox.y_max};
        e["age"] = c.age_years;
        e["gender"] = std::string(to_string(c.gender));
        e["expression"] = c.expression;
        j["customers"].push_back(std::move(e));
    }
    j["garments"] = json::array();
    for (const auto& g : frame.garments) {
        json e;
        e["id"] = std::string(raw_id(g.tracking_id));
        e["bbox"] = {g.bbox.x_min, g.bbox.y_min, g.bbox.x_max, g.bbox.y_max};
        e["color"] = g.color;
        j["garments"].push_back(std::move(e));
    }
    return j.dump();
}

std::vector<FrameAnnotations> read_stream(std::istream& in) {
    std::vector<FrameAnnotations> frames;
    std::string line;
    std::size_t line_no = 0;
    std::int64_t prev_frame = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        FrameAnnotations frame = parse_frame_line(line, line_no);
        if (frame.frame <= prev_frame) {
            fail(line_no, "frame " + std::to_string(frame.frame) +
                              " not greater than previous frame " + std::to_string(prev_frame));
        }
        prev_frame = frame.frame;
        frames.push_back(std::move(frame));
    }
    return frames;
}

std::vector<FrameAnnotations> read_stream_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return read_stream(in);
}

void write_stream(std::ostream& out, const std::vector<FrameAnnotations>& frames) {
    for (const auto& frame : frames) {
        out << frame_to_json_line(frame) << '\n';
    }
}

void write_stream_file(const std::filesystem::path& path,
                       const std::vector<FrameAnnotations>& frames) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    write_stream(out, frames);
    if (!out.good()) throw IoError("write failed for '" + path.string() + "'");
}

StreamSummary validate_stream(std::istream& in, std::size_t max_violations) {
    StreamSummary summary;
    std::unordered_set<std::string> customer_ids;
    std::unordered_set<std::string> garment_ids;
    std::string line;
    std::size_t line_no = 0;
    std::int64_t prev_frame = -1;

    const auto record = [&](std::size_t at, std::string message) {
        if (summary.violations.size() < max_violations) {
            summary.violations.push_back({at, std::move(message)});
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            FrameAnnotations frame = parse_frame_line(line, line_no);
            if (frame.frame <= prev_frame) {
                record(line_no, "frame " + std::to_string(frame.frame) +
                                    " not greater than previous frame " +
                                    std::to_string(prev_frame));
            }
            prev_frame = std::max(prev_frame, frame.frame);
            ++summary.frames;
            for (const auto& c : frame.customers) customer_ids.insert(c.tracking_id);
            for (const auto& g : frame.garments) garment_ids.insert(g.tracking_id);
        } catch (const ValidationError& e) {
            // parse_frame_line already prefixes "line N:"; strip it back out.
            std::string message = e.what();
            const std::string prefix = "line " + std::to_string(line_no) + ": ";
            if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
            record(line_no, std::move(message));
        }
    }
    if (summary.frames == 0 && summary.violations.empty()) {
        record(0, "no frames");
    }
    summary.customers = customer_ids.size();
    summary.garments = garment_ids.size();
    return summary;
}

StreamSummary validate_stream_file(const std::filesystem::path& path,
                                   std::size_t max_violations) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return validate_stream(in, max_violations);
}

} // namespace shoptrack
