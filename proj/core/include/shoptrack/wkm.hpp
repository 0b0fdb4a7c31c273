#pragma once

#include <string>
#include <vector>

#include "shoptrack/model.hpp"

namespace shoptrack {

enum class PointKind { garment, customer };

// One 2-D sample fed to weighted k-means: an entity's bbox center plus its
// anchoring weight (garments 10, customers 1 by default).
struct WeightedPoint {
    std::string id;
    Point2D pos;
    double weight = 1.0;
    PointKind kind = PointKind::customer;
};

struct Cluster {
    Point2D centroid;
    std::vector<std::string> member_ids; // input order; partition pre-overlap
};

// Lloyd-style weighted k-means seeded from the given centroids.
//
// Each round assigns every point to its nearest centroid (Euclidean, ties
// broken toward the lowest centroid index) and then recomputes each centroid
// as the weighted mean sum(w*p)/sum(w) of its members. Empty clusters keep
// their previous centroid. Stops when no centroid moved by tol or more, or
// after max_iters rounds. Deterministic for identical inputs.
std::vector<Cluster> weighted_kmeans(const std::vector<WeightedPoint>& points,
                                     const std::vector<Point2D>& initial_centroids,
                                     int max_iters, double tol);

// Largest distance from any point to the centroid of its assigned cluster
// (the global maximum over all clusters). Throws if every cluster is empty
// or a member id has no matching point.
double compute_max_dist(const std::vector<Cluster>& clusters,
                        const std::vector<WeightedPoint>& points);

} // namespace shoptrack
