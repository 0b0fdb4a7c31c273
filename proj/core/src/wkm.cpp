#include "shoptrack/wkm.hpp"

#include <algorithm>
#include <cstddef>
#include <unordered_map>

#include "shoptrack/errors.hpp"

namespace shoptrack {

std::vector<Cluster> weighted_kmeans(const std::vector<WeightedPoint>& points,
                                     const std::vector<Point2D>& initial_centroids,
                                     int max_iters, double tol) {
    if (initial_centroids.empty()) throw ValidationError("no centroids");
    if (points.empty()) throw ValidationError("no points");
    for (const auto& p : points) {
        if (!(p.weight > 0.0)) {
            throw ValidationError("point '" + p.id + "' has non-positive weight");
        }
    }

    const std::size_t k = initial_centroids.size();
    const std::size_t n = points.size();
    std::vector<Point2D> centroids = initial_centroids;
    std::vector<std::size_t> assignment(n, 0);

    for (int iter = 0; iter < max_iters; ++iter) {
        // Assign: nearest centroid, strict < keeps the lowest index on ties.
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = squared_distance(points[i].pos, centroids[0]);
            for (std::size_t j = 1; j < k; ++j) {
                const double d = squared_distance(points[i].pos, centroids[j]);
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            assignment[i] = best;
        }

        // Update: weighted mean per cluster; empty clusters stay put.
        std::vector<double> wx(k, 0.0), wy(k, 0.0), wsum(k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = assignment[i];
            wx[j] += points[i].weight * points[i].pos.x;
            wy[j] += points[i].weight * points[i].pos.y;
            wsum[j] += points[i].weight;
        }
        double moved = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (wsum[j] > 0.0) {
                const Point2D next{wx[j] / wsum[j], wy[j] / wsum[j]};
                moved = std::max(moved, distance(next, centroids[j]));
                centroids[j] = next;
            }
        }
        if (moved < tol) break;
    }

    std::vector<Cluster> clusters(k);
    for (std::size_t j = 0; j < k; ++j) clusters[j].centroid = centroids[j];
    for (std::size_t i = 0; i < n; ++i) {
        clusters[assignment[i]].member_ids.push_back(points[i].id);
    }
    return clusters;
}

double compute_max_dist(const std::vector<Cluster>& clusters,
                        const std::vector<WeightedPoint>& points) {
    std::unordered_map<std::string_view, const Point2D*> pos;
    pos.reserve(points.size());
    for (const auto& p : points) pos.emplace(p.id, &p.pos);

    bool any = false;
    double max_d = 0.0;
    for (const auto& cluster : clusters) {
        for (const auto& id : cluster.member_ids) {
            const auto it = pos.find(id);
            if (it == pos.end()) {
                throw ValidationError("cluster member '" + id + "' has no point");
            }
            any = true;
            max_d = std::max(max_d, distance(*it->second, cluster.centroid));
        }
    }
    if (!any) throw ValidationError("all clusters empty");
    return max_d;
}

} // namespace shoptrack
