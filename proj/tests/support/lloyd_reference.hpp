#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <shoptrack/model.hpp>

namespace testsupport {

struct LloydResult {
    std::vector<std::size_t> assignment;
    std::vector<shoptrack::Point2D> centroids;
};

// Plain unweighted Lloyd iteration, written from scratch as the reference for
// the uniform-weight case: nearest centroid by squared distance with the
// lowest index winning ties, arithmetic-mean updates, empty clusters holding
// position, and termination when the largest centroid move drops below tol
// or after max_iters rounds. The final member assignment is the one computed
// against the pre-update centroids of the last round.
inline LloydResult plain_lloyd(const std::vector<shoptrack::Point2D>& points,
                               std::vector<shoptrack::Point2D> centroids, int max_iters,
                               double tol) {
    const std::size_t n = points.size();
    const std::size_t k = centroids.size();
    LloydResult result;
    result.assignment.assign(n, 0);

    for (int round = 0; round < max_iters; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t nearest = 0;
            double nearest_d2 = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                const double dx = points[i].x - centroids[j].x;
                const double dy = points[i].y - centroids[j].y;
                const double d2 = dx * dx + dy * dy;
                if (j == 0 || d2 < nearest_d2) {
                    nearest_d2 = d2;
                    nearest = j;
                }
            }
            result.assignment[i] = nearest;
        }

        std::vector<double> sx(k, 0.0);
        std::vector<double> sy(k, 0.0);
        std::vector<double> weight(k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = result.assignment[i];
            sx[j] += points[i].x;
            sy[j] += points[i].y;
            weight[j] += 1.0;
        }
        double worst_move = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (weight[j] > 0.0) {
                const shoptrack::Point2D next{sx[j] / weight[j], sy[j] / weight[j]};
                const double dx = next.x - centroids[j].x;
                const double dy = next.y - centroids[j].y;
                const double move = std::sqrt(dx * dx + dy * dy);
                if (move > worst_move) worst_move = move;
                centroids[j] = next;
            }
        }
        if (worst_move < tol) break;
    }

    result.centroids = std::move(centroids);
    return result;
}

} // namespace testsupport
