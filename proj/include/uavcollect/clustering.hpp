#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uavcollect/channel.hpp"
#include "uavcollect/geometry.hpp"
#include "uavcollect/model.hpp"

namespace uavcollect {

struct KMeansResult {
    std::vector<std::size_t> assignments;   // point -> centroid index
    std::vector<Point> centroids;
    std::size_t iterations = 0;
    std::vector<double> distortion;         // sum of squared distances after each assignment pass
};

/// k-means++ seeding followed by Lloyd iterations until no centroid moves more
/// than 1e-6 m, or 300 iterations. Ties go to the lowest centroid index.
/// An emptied cluster is reseeded at the point farthest from its centroid.
KMeansResult kmeans_cluster(std::span<const Point> points, std::size_t k, std::uint64_t seed);

struct Cluster {
    std::vector<std::size_t> members;   // indices into Scenario::sensors
    Point cp;
    double min_hover_s = 0.0;
};

struct ClusterSet {
    std::vector<Cluster> clusters;
    std::vector<std::size_t> attempted_k;   // K values tried, in order

    std::size_t k() const noexcept { return clusters.size(); }
    std::vector<Point> cp_positions() const;
    std::vector<double> hover_times() const;
};

/// Adaptive clustering: start from K = ceil(N / n_th) and grow K until every
/// member lies within r_g2u of its centroid and no cluster exceeds n_th.
ClusterSet cluster_sensors(const Scenario& scenario, const CoverageRadii& radii);

/// Independent feasibility check: partition, radius and capacity. Returns an
/// empty string when feasible, otherwise a description of the first problem.
std::string check_cluster_set(const ClusterSet& cs, const Scenario& scenario, double r_g2u_m);

} // namespace uavcollect
