#include "uavcollect/clustering.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "uavcollect/errors.hpp"
#include "uavcollect/random.hpp"

namespace uavcollect {

namespace {

double squared(Point a, Point b) {
    const Point d = a - b;
    return dot(d, d);
}

std::vector<Point> seed_plus_plus(std::span<const Point> points, std::size_t k, Rng& rng) {
    const std::size_t n = points.size();
    std::vector<Point> centroids;
    centroids.reserve(k);
    std::vector<bool> chosen(n, false);
    std::size_t first = rng.below(n);
    centroids.push_back(points[first]);
    chosen[first] = true;

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared(points[i], centroids[0]);

    while (centroids.size() < k) {
        double total = 0.0;
        for (double v : d2) total += v;
        std::size_t pick = n;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            for (std::size_t i = 0; i < n; ++i) {
                target -= d2[i];
                if (target < 0.0 && d2[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {   // rounding left target >= 0: take the last positive weight
                for (std::size_t i = n; i-- > 0;)
                    if (d2[i] > 0.0) {
                        pick = i;
                        break;
                    }
            }
        } else {
            // every point coincides with a centroid; fall back to any unchosen index
            std::vector<std::size_t> free;
            for (std::size_t i = 0; i < n; ++i)
                if (!chosen[i]) free.push_back(i);
            pick = free[rng.below(free.size())];
        }
        chosen[pick] = true;
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared(points[i], points[pick]));
    }
    return centroids;
}

} // namespace

KMeansResult kmeans_cluster(std::span<const Point> points, std::size_t k, std::uint64_t seed) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
    if (k > points.size()) throw InvalidArgument("k exceeds the number of points");

    Rng rng(seed);
    KMeansResult res;
    res.centroids = seed_plus_plus(points, k, rng);
    res.assignments.assign(points.size(), 0);

    constexpr std::size_t max_iterations = 300;
    constexpr double tolerance_m = 1e-6;

    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        double distortion = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = squared(points[i], res.centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            res.assignments[i] = best;
            distortion += best_d;
        }
        res.distortion.push_back(distortion);
        res.iterations = iter + 1;

        std::vector<Point> sums(k);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            sums[res.assignments[i]] = sums[res.assignments[i]] + points[i];
            ++counts[res.assignments[i]];
        }

        double max_move = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            Point next;
            if (counts[c] > 0) {
                next = (1.0 / static_cast<double>(counts[c])) * sums[c];
            } else {
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < points.size(); ++i) {
                    const double d = squared(points[i], res.centroids[res.assignments[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                next = points[far];
            }
            max_move = std::max(max_move, distance(next, res.centroids[c]));
            res.centroids[c] = next;
        }
        if (max_move < tolerance_m) break;
    }
    return res;
}

std::vector<Point> ClusterSet::cp_positions() const {
    std::vector<Point> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) out.push_back(c.cp);
    return out;
}

std::vector<double> ClusterSet::hover_times() const {
    std::vector<double> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) out.push_back(c.min_hover_s);
    return out;
}

ClusterSet cluster_sensors(const Scenario& scenario, const CoverageRadii& radii) {
    if (scenario.sensors.empty()) throw InvalidArgument("scenario has no sensors");
    if (!(radii.r_g2u_m > 0.0)) throw InvalidArgument("r_g2u must be positive");

    const auto points = scenario.sensor_positions();
    const std::size_t n = points.size();
    const auto n_th = static_cast<std::size_t>(scenario.n_th);

    ClusterSet out;
    for (std::size_t k = (n + n_th - 1) / n_th; k <= n; ++k) {
        out.attempted_k.push_back(k);
        const auto km = kmeans_cluster(points, k, mix_seed(scenario.rng_seed, k));

        std::vector<std::size_t> sizes(k, 0);
        double d_max = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ++sizes[km.assignments[i]];
            d_max = std::max(d_max, distance(points[i], km.centroids[km.assignments[i]]));
        }
        const std::size_t n_max = *std::max_element(sizes.begin(), sizes.end());
        if (d_max > radii.r_g2u_m || n_max > n_th) continue;

        // A reseeded centroid can end up empty at the iteration cap; drop such clusters.
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] == 0) continue;
            Cluster cl;
            cl.cp = km.centroids[c];
            for (std::size_t i = 0; i < n; ++i)
                if (km.assignments[i] == c) cl.members.push_back(i);
            std::vector<SensorNode> members;
            members.reserve(cl.members.size());
            for (auto i : cl.members) members.push_back(scenario.sensors[i]);
            cl.min_hover_s = min_hover_time(members, cl.cp, scenario.params, radii.r_g2u_m);
            out.clusters.push_back(std::move(cl));
        }
        return out;
    }
    throw InfeasibleConfiguration("no feasible clustering up to K = N");
}

std::string check_cluster_set(const ClusterSet& cs, const Scenario& scenario, double r_g2u_m) {
    std::vector<int> seen(scenario.sensors.size(), 0);
    for (std::size_t c = 0; c < cs.clusters.size(); ++c) {
        const auto& cl = cs.clusters[c];
        if (cl.members.empty()) return "cluster " + std::to_string(c) + " is empty";
        if (cl.members.size() > static_cast<std::size_t>(scenario.n_th))
            return "cluster " + std::to_string(c) + " exceeds capacity";
        for (auto i : cl.members) {
            if (i >= seen.size()) return "cluster " + std::to_string(c) + " references an unknown sensor";
            ++seen[i];
            if (distance(scenario.sensors[i].position, cl.cp) > r_g2u_m)
                return "sensor " + std::to_string(scenario.sensors[i].id) + " is beyond r_g2u of its CP";
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] != 1)
            return "sensor " + std::to_string(scenario.sensors[i].id) + " is assigned " + std::to_string(seen[i]) +
                   " times";
    return {};
}

} // namespace uavcollect
