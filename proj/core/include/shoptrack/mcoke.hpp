#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shoptrack/model.hpp"
#include "shoptrack/wkm.hpp"

namespace shoptrack {

// Clusters keyed by garment tracking id: cluster i belongs to garment_ids[i]
// and contains exactly that one garment point. max_dist is the overlap
// threshold computed from the k-means result.
struct LabeledClustering {
    std::vector<std::string> garment_ids;
    std::vector<Cluster> clusters; // parallel to garment_ids
    double max_dist = 0.0;

    std::size_t size() const { return clusters.size(); }
    bool empty() const { return clusters.empty(); }
    const Cluster* find(std::string_view garment_id) const;
};

// Binary customer x cluster matrix. A row may hold several 1s (the customer
// attends multiple garments) or none at all.
struct MembershipTable {
    std::vector<std::string> customer_ids;
    std::vector<std::string> cluster_ids; // garment tracking ids
    std::vector<std::vector<std::uint8_t>> cells; // [customer][cluster]

    bool cell(std::size_t customer, std::size_t cluster) const {
        return cells[customer][cluster] != 0;
    }
};

// Repairs the k-means output so each cluster holds exactly one garment and is
// keyed by that garment's tracking id. Garments are matched to clusters
// greedily in increasing garment-to-centroid distance (ties toward the lowest
// garment id, then lowest cluster index); a garment that k-means displaced
// into a foreign cluster is moved to its matched one. Centroids are left
// untouched. Requires clusters.size() == garments.size().
LabeledClustering enforce_garment_identity(std::vector<Cluster> clusters,
                                           const std::vector<WeightedPoint>& garments,
                                           double max_dist);

// cell[c][g] = 1 iff the customer's point lies within max_dist (inclusive) of
// cluster g's centroid. Garment points never appear as rows.
MembershipTable build_membership(const LabeledClustering& labeled,
                                 const std::vector<WeightedPoint>& customers);

struct FrameClustering {
    LabeledClustering labeled;
    MembershipTable membership;
};

// Full single-frame pipeline: bbox centers become weighted points, garment
// centers seed k clusters, then max_dist / identity repair / membership.
// With zero garments the result is an empty clustering and all-zero rows.
FrameClustering cluster_frame(const std::vector<CustomerObservation>& customers,
                              const std::vector<GarmentObservation>& garments,
                              const EngineConfig& config);

} // namespace shoptrack
