#include "shoptrack/tracker.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "shoptrack/errors.hpp"
#include "shoptrack/format.hpp"

namespace shoptrack {

bool significant_change(const FrameAnnotations& frame, const ClusteringSnapshot& snapshot,
                        double mindist) {
    const std::size_t present = frame.customers.size() + frame.garments.size();
    if (present != snapshot.original_coords.size()) return true;

    const auto moved_or_new = [&](const std::string& id, const BBox& bbox) {
        const auto it = snapshot.original_coords.find(id);
        if (it == snapshot.original_coords.end()) return true; // appeared
        return distance(bbox_center(bbox), it->second) > mindist;
    };
    for (const auto& c : frame.customers) {
        if (moved_or_new(c.tracking_id, c.bbox)) return true;
    }
    for (const auto& g : frame.garments) {
        if (moved_or_new(g.tracking_id, g.bbox)) return true;
    }
    // Same cardinality and every current id known: the id sets are equal.
    return false;
}

Tracker::Tracker(EngineConfig config) : config_(std::move(config)) {
    config_.validate();
}

namespace {

void check_frame(const FrameAnnotations& frame) {
    std::unordered_set<std::string_view> ids;
    const auto add = [&](const std::string& id) {
        if (id.empty()) throw ValidationError("empty tracking id");
        if (!ids.insert(id).second) {
            throw ValidationError("duplicate tracking id '" + id + "' in frame");
        }
    };
    for (const auto& c : frame.customers) {
        if (c.frame != frame.frame) throw ValidationError("observation frame index mismatch");
        add(c.tracking_id);
        if (!bbox_valid(c.bbox)) throw ValidationError("invalid bbox for '" + c.tracking_id + "'");
    }
    for (const auto& g : frame.garments) {
        if (g.frame != frame.frame) throw ValidationError("observation frame index mismatch");
        add(g.tracking_id);
        if (!bbox_valid(g.bbox)) throw ValidationError("invalid bbox for '" + g.tracking_id + "'");
    }
}

} // namespace

std::vector<AssociationInterval> Tracker::process_frame(const FrameAnnotations& frame) {
    if (frame.frame <= last_frame_) {
        throw ValidationError("frame " + std::to_string(frame.frame) +
                              " not greater than previous frame " + std::to_string(last_frame_));
    }
    check_frame(frame);

    std::vector<AssociationInterval> newly_closed;
    const bool recluster =
        !snapshot_ || significant_change(frame, *snapshot_, config_.mindist);
    if (recluster) {
        FrameClustering fc = cluster_frame(frame.customers, frame.garments, config_);

        std::set<std::pair<std::string, std::string>> now;
        for (std::size_t c = 0; c < fc.membership.customer_ids.size(); ++c) {
            for (std::size_t g = 0; g < fc.membership.cluster_ids.size(); ++g) {
                if (fc.membership.cell(c, g)) {
                    now.emplace(fc.membership.customer_ids[c], fc.membership.cluster_ids[g]);
                }
            }
        }

        // The change is only detected here, so a vanished membership provably
        // held through the previous frame.
        for (auto it = open_.begin(); it != open_.end();) {
            if (!now.contains(it->first)) {
                AssociationInterval iv{it->first.first, it->first.second, it->second,
                                       frame.frame - 1};
                closed_.push_back(iv);
                newly_closed.push_back(iv);
                it = open_.erase(it);
            } else {
                ++it;
            }
        }
        for (const auto& pair : now) {
            open_.try_emplace(pair, frame.frame);
        }

        ClusteringSnapshot snap;
        snap.frame_of_clustering = frame.frame;
        for (const auto& c : frame.customers) {
            snap.original_coords.emplace(c.tracking_id, bbox_center(c.bbox));
        }
        for (const auto& g : frame.garments) {
            snap.original_coords.emplace(g.tracking_id, bbox_center(g.bbox));
        }
        snap.labeled = std::move(fc.labeled);
        snap.membership = std::move(fc.membership);
        snapshot_ = std::move(snap);
        ++reclusterings_;
    }

    last_frame_ = frame.frame;
    return newly_closed;
}

std::vector<AssociationInterval> Tracker::finalize() const {
    std::vector<AssociationInterval> log = closed_;
    log.reserve(log.size() + open_.size());
    for (const auto& [pair, start] : open_) {
        log.push_back({pair.first, pair.second, start, last_frame_});
    }
    sort_intervals(log);
    return log;
}

void sort_intervals(std::vector<AssociationInterval>& intervals) {
    std::sort(intervals.begin(), intervals.end(),
              [](const AssociationInterval& a, const AssociationInterval& b) {
                  if (a.start_frame != b.start_frame) return a.start_frame < b.start_frame;
                  if (a.customer_id != b.customer_id) return a.customer_id < b.customer_id;
                  if (a.garment_id != b.garment_id) return a.garment_id < b.garment_id;
                  return a.end_frame < b.end_frame;
              });
}

namespace {
constexpr std::string_view kIntervalHeader =
    "customer_id,garment_id,start_frame,end_frame,duration_seconds";
}

void write_interval_csv(std::ostream& out, const std::vector<AssociationInterval>& intervals,
                        double frame_duration) {
    out << kIntervalHeader << '\n';
    for (const auto& iv : intervals) {
        const double duration =
            static_cast<double>(iv.end_frame - iv.start_frame + 1) * frame_duration;
        out << raw_id(iv.customer_id) << ',' << raw_id(iv.garment_id) << ',' << iv.start_frame
            << ',' << iv.end_frame << ',' << format_double(duration) << '\n';
    }
}

namespace {

std::int64_t parse_int64_field(std::string_view text, std::string_view what, std::size_t line) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError("line " + std::to_string(line) + ": bad " + std::string(what) +
                              " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

} // namespace

std::vector<AssociationInterval> read_interval_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<AssociationInterval> intervals;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != kIntervalHeader) {
                throw ValidationError("line 1: unexpected interval log header '" + line + "'");
            }
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 5) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                                  std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw ValidationError("line " + std::to_string(line_no) + ": empty id");
        }
        AssociationInterval iv;
        iv.customer_id = customer_key(fields[0]);
        iv.garment_id = garment_key(fields[1]);
        iv.start_frame = parse_int64_field(fields[2], "start_frame", line_no);
        iv.end_frame = parse_int64_field(fields[3], "end_frame", line_no);
        if (iv.start_frame < 0 || iv.end_frame < iv.start_frame) {
            throw ValidationError("line " + std::to_string(line_no) + ": invalid interval [" +
                                  std::to_string(iv.start_frame) + ", " +
                                  std::to_string(iv.end_frame) + "]");
        }
        // duration_seconds is derived; re-derived on write, ignored on read.
        intervals.push_back(std::move(iv));
    }
    if (line_no == 0) {
        throw ValidationError("empty interval log (missing header)");
    }
    return intervals;
}

} // namespace shoptrack
