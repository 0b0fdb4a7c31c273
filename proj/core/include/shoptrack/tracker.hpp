#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shoptrack/mcoke.hpp"
#include "shoptrack/model.hpp"

namespace shoptrack {

// Clustering state frozen at the last re-clustering. original_coords holds
// the bbox center of every entity present at that frame; displacement is
// always measured against these.
struct ClusteringSnapshot {
    std::int64_t frame_of_clustering = 0;
    LabeledClustering labeled;
    MembershipTable membership;
    std::map<std::string, Point2D> original_coords;
};

// Maximal span of frames over which a customer held membership in a garment's
// cluster. Both endpoints inclusive.
struct AssociationInterval {
    std::string customer_id;
    std::string garment_id;
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;

    bool operator==(const AssociationInterval&) const = default;
};

// True iff any entity's current center is strictly more than mindist from its
// original coordinates, or the entity id set changed (appearance/removal).
bool significant_change(const FrameAnnotations& frame,
                        const ClusteringSnapshot& snapshot, double mindist);

// Streaming frame processor. The first frame is always clustered; afterwards
// re-clustering runs only on significant change, and memberships are held
// constant in between. Single writer per stream; distinct streams can be
// tracked in parallel.
class Tracker {
public:
    explicit Tracker(EngineConfig config);

    // Consumes the next frame (indices must be strictly increasing) and
    // returns the intervals that closed at this frame, if any. A membership
    // that disappears at a re-clustering closes at the frame before it.
    std::vector<AssociationInterval> process_frame(const FrameAnnotations& frame);

    // Complete interval log: everything closed so far plus the still-open
    // intervals ended at the last processed frame, sorted by
    // (start_frame, customer_id, garment_id). Does not mutate the tracker.
    std::vector<AssociationInterval> finalize() const;

    const std::optional<ClusteringSnapshot>& snapshot() const { return snapshot_; }
    std::int64_t last_frame() const { return last_frame_; }
    std::size_t reclusterings() const { return reclusterings_; }

private:
    EngineConfig config_;
    std::optional<ClusteringSnapshot> snapshot_;
    std::map<std::pair<std::string, std::string>, std::int64_t> open_; // (c,g) -> start
    std::vector<AssociationInterval> closed_;
    std::int64_t last_frame_ = -1;
    std::size_t reclusterings_ = 0;
};

// Interval log CSV: header customer_id,garment_id,start_frame,end_frame,
// duration_seconds with duration = (end - start + 1) * frame_duration.
// Ids are written raw (namespace prefixes stripped) and re-prefixed on read.
void write_interval_csv(std::ostream& out,
                        const std::vector<AssociationInterval>& intervals,
                        double frame_duration);
std::vector<AssociationInterval> read_interval_csv(std::istream& in);

void sort_intervals(std::vector<AssociationInterval>& intervals);

} // namespace shoptrack
