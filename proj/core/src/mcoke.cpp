#include "shoptrack/mcoke.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "shoptrack/errors.hpp"

namespace shoptrack {

const Cluster* LabeledClustering::find(std::string_view garment_id) const {
    for (std::size_t i = 0; i < garment_ids.size(); ++i) {
        if (garment_ids[i] == garment_id) return &clusters[i];
    }
    return nullptr;
}

LabeledClustering enforce_garment_identity(std::vector<Cluster> clusters,
                                           const std::vector<WeightedPoint>& garments,
                                           double max_dist) {
    const std::size_t k = clusters.size();
    if (k != garments.size()) {
        throw std::logic_error("cluster count does not match garment count");
    }

    // Greedy one-to-one matching over all (garment, cluster) pairs in
    // increasing distance, ties toward the lowest garment id then cluster
    // index. k is the garment count of one frame, so k*k stays small.
    struct Edge {
        double dist;
        std::size_t garment;
        std::size_t cluster;
    };
    std::vector<Edge> edges;
    edges.reserve(k * k);
    for (std::size_t gi = 0; gi < k; ++gi) {
        for (std::size_t cj = 0; cj < k; ++cj) {
            edges.push_back({distance(garments[gi].pos, clusters[cj].centroid), gi, cj});
        }
    }
    std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (garments[a.garment].id != garments[b.garment].id) {
            return garments[a.garment].id < garments[b.garment].id;
        }
        return a.cluster < b.cluster;
    });

    constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> cluster_of_garment(k, npos);
    std::vector<std::size_t> garment_of_cluster(k, npos);
    std::size_t matched = 0;
    for (const Edge& e : edges) {
        if (cluster_of_garment[e.garment] != npos || garment_of_cluster[e.cluster] != npos) {
            continue;
        }
        cluster_of_garment[e.garment] = e.cluster;
        garment_of_cluster[e.cluster] = e.garment;
        if (++matched == k) break;
    }

    // Move displaced garment points into their matched cluster. Centroids are
    // deliberately left as k-means produced them so max_dist stays valid.
    for (std::size_t gi = 0; gi < k; ++gi) {
        const std::string& id = garments[gi].id;
        const std::size_t target = cluster_of_garment[gi];
        for (std::size_t cj = 0; cj < k; ++cj) {
            if (cj == target) continue;
            auto& members = clusters[cj].member_ids;
            members.erase(std::remove(members.begin(), members.end(), id), members.end());
        }
        auto& target_members = clusters[target].member_ids;
        if (std::find(target_members.begin(), target_members.end(), id) == target_members.end()) {
            target_members.push_back(id);
        }
    }

    LabeledClustering out;
    out.max_dist = max_dist;
    out.garment_ids.reserve(k);
    out.clusters.reserve(k);
    for (std::size_t cj = 0; cj < k; ++cj) {
        out.garment_ids.push_back(garments[garment_of_cluster[cj]].id);
        out.clusters.push_back(std::move(clusters[cj]));
    }
    return out;
}

MembershipTable build_membership(const LabeledClustering& labeled,
                                 const std::vector<WeightedPoint>& customers) {
    MembershipTable table;
    table.cluster_ids = labeled.garment_ids;
    table.customer_ids.reserve(customers.size());
    table.cells.reserve(customers.size());
    for (const auto& c : customers) {
        table.customer_ids.push_back(c.id);
        std::vector<std::uint8_t> row(labeled.size(), 0);
        for (std::size_t j = 0; j < labeled.size(); ++j) {
            // Inclusive threshold: standing exactly at max_dist still counts.
            if (distance(c.pos, labeled.clusters[j].centroid) <= labeled.max_dist) {
                row[j] = 1;
            }
        }
        table.cells.push_back(std::move(row));
    }
    return table;
}

FrameClustering cluster_frame(const std::vector<CustomerObservation>& customers,
                              const std::vector<GarmentObservation>& garments,
                              const EngineConfig& config) {
    std::vector<WeightedPoint> customer_pts;
    customer_pts.reserve(customers.size());
    for (const auto& c : customers) {
        customer_pts.push_back(
            {c.tracking_id, bbox_center(c.bbox), config.customer_weight, PointKind::customer});
    }

    FrameClustering result;
    if (garments.empty()) {
        // No garments momentarily in view: everyone stays unassociated.
        result.membership.customer_ids.reserve(customer_pts.size());
        for (const auto& c : customer_pts) {
            result.membership.customer_ids.push_back(c.id);
            result.membership.cells.emplace_back();
        }
        return result;
    }

    std::vector<WeightedPoint> garment_pts;
    garment_pts.reserve(garments.size());
    std::vector<Point2D> seeds;
    seeds.reserve(garments.size());
    for (const auto& g : garments) {
        const Point2D center = bbox_center(g.bbox);
        garment_pts.push_back({g.tracking_id, center, config.garment_weight, PointKind::garment});
        seeds.push_back(center);
    }

    std::vector<WeightedPoint> all_pts;
    all_pts.reserve(garment_pts.size() + customer_pts.size());
    all_pts.insert(all_pts.end(), garment_pts.begin(), garment_pts.end());
    all_pts.insert(all_pts.end(), customer_pts.begin(), customer_pts.end());

    auto clusters = weighted_kmeans(all_pts, seeds, config.wkm_max_iters, config.wkm_tol);
    const double max_dist = compute_max_dist(clusters, all_pts);
    result.labeled = enforce_garment_identity(std::move(clusters), garment_pts, max_dist);
    result.membership = build_membership(result.labeled, customer_pts);
    return result;
}

} // namespace shoptrack
