#include "uavcollect/planner_pmtp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>

#include "uavcollect/errors.hpp"
#include "uavcollect/tsp.hpp"

namespace uavcollect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Planned geometry keeps this far inside every limit so validation never
// trips on rounding.
constexpr double kMargin = 1e-3;

Region ring_region(const Ring& ring, Point bs) {
    Region r;
    if (std::isfinite(ring.outer_m)) r.inside.push_back({bs, ring.outer_m});
    if (ring.inner_m > 0.0) r.outside.push_back({bs, ring.inner_m});
    return r;
}

} // namespace

std::vector<std::vector<std::size_t>> connectable_sets(std::span<const Point> follower, std::span<const Point> leader,
                                                       double r_u2u_m) {
    std::vector<std::vector<std::size_t>> out(follower.size());
    for (std::size_t f = 0; f < follower.size(); ++f)
        for (std::size_t l = 0; l < leader.size(); ++l)
            if (distance(follower[f], leader[l]) <= r_u2u_m) out[f].push_back(l);
    return out;
}

Matching match_monotone(std::size_t n_follower, std::size_t n_leader,
                        const std::function<bool(std::size_t, std::size_t)>& admissible,
                        std::span<const Point> follower,
                        const std::function<double(std::size_t, std::size_t)>& leader_path) {
    Matching m;
    std::optional<std::size_t> first_l;
    std::size_t prev_f = 0, prev_l = 0, prev_off = 0;
    for (std::size_t f = 0; f < n_follower; ++f) {
        std::optional<std::size_t> found;
        if (!first_l) {
            for (std::size_t l = 0; l < n_leader && !found; ++l)
                if (admissible(f, l)) found = l;
        } else {
            for (std::size_t off = prev_off + 1; off < n_leader; ++off) {
                const std::size_t l = (*first_l + off) % n_leader;
                if (!admissible(f, l)) continue;
                if (distance(follower[prev_f], follower[f]) > leader_path(prev_l, l) + 1e-9) continue;
                found = l;
                prev_off = off;
                break;
            }
        }
        if (!found) {
            m.unmatched_follower.push_back(f);
            continue;
        }
        if (!first_l) {
            first_l = found;
            prev_off = 0;
        }
        m.pairs.emplace_back(f, *found);
        prev_f = f;
        prev_l = *found;
    }
    std::vector<bool> used(n_leader, false);
    for (const auto& [f, l] : m.pairs) used[l] = true;
    for (std::size_t l = 0; l < n_leader; ++l)
        if (!used[l]) m.unmatched_leader.push_back(l);
    return m;
}

Matching match_pairs(std::span<const Point> follower, std::span<const double> follower_hover,
                     std::span<const Point> leader, std::span<const double> leader_hover,
                     const std::vector<std::vector<std::size_t>>& connectable) {
    const std::size_t nl = leader.size();
    std::vector<double> cum(nl + 1, 0.0);
    for (std::size_t i = 0; i < nl; ++i) cum[i + 1] = cum[i] + distance(leader[i], leader[(i + 1) % nl]);
    auto path = [&](std::size_t from, std::size_t to) {
        return to >= from ? cum[to] - cum[from] : cum[nl] - cum[from] + cum[to];
    };
    auto admissible = [&](std::size_t f, std::size_t l) {
        const auto& b = connectable[f];
        return std::find(b.begin(), b.end(), l) != b.end() && follower_hover[f] <= leader_hover[l];
    };
    return match_monotone(follower.size(), nl, admissible, follower, path);
}

GeneratedWaypoint detour_waypoint(Point cp, std::span<const Point> path, double r_u2u_m, double d_safe_m,
                                  const Ring& ring, Point bs) {
    if (path.size() < 2) throw InvalidArgument("detour_waypoint needs a path with at least one edge");
    if (!(d_safe_m <= r_u2u_m)) throw InfeasibleWaypoint("safe distance exceeds the UAV link range");

    Region region = ring_region(ring, bs);
    region.inside.push_back({cp, r_u2u_m});
    if (d_safe_m > 0.0) region.outside.push_back({cp, d_safe_m});
    const std::size_t n_edges = path.size() - 1;

    // polar grid: 1 degree x (r_u2u - d_safe) / 200
    constexpr int kAngles = 360, kRadii = 200;
    std::vector<double> grid_best(n_edges, kInf);
    std::vector<Point> grid_arg(n_edges);
    for (int ri = 0; ri < kRadii; ++ri) {
        const double rad = d_safe_m + (r_u2u_m - d_safe_m) * (ri + 1) / kRadii;
        for (int ai = 0; ai < kAngles; ++ai) {
            const Point q = from_polar(cp, rad, ai * std::numbers::pi / 180.0);
            if (!region.contains(q)) continue;
            for (std::size_t e = 0; e < n_edges; ++e) {
                const double c = detour_cost(path[e], q, path[e + 1]);
                if (c < grid_best[e]) {
                    grid_best[e] = c;
                    grid_arg[e] = q;
                }
            }
        }
    }

    std::optional<GeneratedWaypoint> best;
    double grid_overall = kInf;
    for (std::size_t e = 0; e < n_edges; ++e) {
        grid_overall = std::min(grid_overall, grid_best[e]);
        const Point a = path[e], b = path[e + 1];
        std::vector<Point> extra;
        if (std::isfinite(grid_best[e])) extra.push_back(grid_arg[e]);
        const auto m = minimize_over_region(region, [&](Point q) { return detour_cost(a, q, b); }, a, b, extra);
        if (m && (!best || m->cost < best->detour_m)) {
            best = GeneratedWaypoint{};
            best->waypoint = m->point;
            best->edge = e;
            best->detour_m = m->cost;
        }
    }
    if (!best) throw InfeasibleWaypoint("no point within link range of the CP lies in the neighbour's ring");
    best->grid_detour_m = grid_overall;

    // closed forms on the chosen edge: direction (x1 + x2, y1 + y2) taken as is,
    // and the same direction taken relative to the CP
    const Point a = path[best->edge], b = path[best->edge + 1];
    auto closed_form = [&](Point dir) -> double {
        const double len = norm(dir);
        if (len == 0.0) return -1.0;
        const Point q = cp + (r_u2u_m / len) * dir;
        return region.contains(q, 1e-6) ? detour_cost(a, q, b) : -1.0;
    };
    best->sum_form_detour_m = closed_form(a + b);
    best->centered_form_detour_m = closed_form(a + b - 2.0 * cp);
    auto agrees = [&](double v) { return v >= 0.0 && v <= best->detour_m * 1.01 + 1e-6; };
    best->sum_form_agrees = agrees(best->sum_form_detour_m);
    best->centered_form_agrees = agrees(best->centered_form_detour_m);
    return *best;
}

Point escort_waypoint(Point leader_pos, Point prev_wp, Point next_wp, double prev_limit_m, double next_limit_m,
                      double r_u2u_m, double d_safe_m, const Ring& ring, Point bs,
                      const std::vector<Circle>& keep_clear) {
    Region region = ring_region(ring, bs);
    region.inside.push_back({leader_pos, r_u2u_m});
    if (d_safe_m > 0.0) region.outside.push_back({leader_pos, d_safe_m});
    region.inside.push_back({prev_wp, prev_limit_m});
    region.inside.push_back({next_wp, next_limit_m});
    for (const auto& c : keep_clear) region.outside.push_back(c);
    const auto m = minimize_over_region(
        region, [&](Point q) { return detour_cost(prev_wp, q, next_wp); }, prev_wp, next_wp);
    if (!m) throw InfeasibleWaypoint("escort constraints leave no feasible point");
    return m->point;
}

namespace {

struct WorkStep {
    std::vector<std::optional<Point>> pos;
    std::vector<Duty> duty;
};

class Builder {
public:
    Builder(const Scenario& sc, const ClusterSet& cs, const Topology& topo, const CoverageRadii& radii)
        : sc_(sc), cs_(cs), topo_(topo), radii_(radii), M_(topo.m_uavs) {}

    PmtpResult run() {
        // leader: the ring with the largest unconstrained tour time
        std::vector<std::vector<std::size_t>> tours(M_);
        double worst = -1.0;
        for (std::size_t m = 0; m < M_; ++m) {
            tours[m] = ring_tour(m);
            double t = 0.0;
            if (!tours[m].empty()) {
                std::vector<Point> pts;
                for (auto k : tours[m]) {
                    pts.push_back(cs_.clusters[k].cp);
                    t += cs_.clusters[k].min_hover_s;
                }
                t += tour_length(pts, identity(pts.size())) / sc_.v_max_mps;
            }
            if (t > worst) {
                worst = t;
                diag_.leader_uav = m;
            }
        }
        const std::size_t A = diag_.leader_uav;
        for (auto k : tours[A]) {
            WorkStep st = blank();
            st.pos[A] = cs_.clusters[k].cp;
            st.duty[A] = Duty::collect(k);
            steps_.push_back(std::move(st));
        }

        lo_ = hi_ = A;
        while (lo_ > 0 || hi_ + 1 < M_) {
            if (lo_ > 0) {
                attach(lo_ - 1, lo_, tours[lo_ - 1]);
                --lo_;
            }
            if (hi_ + 1 < M_) {
                attach(hi_ + 1, hi_, tours[hi_ + 1]);
                ++hi_;
            }
        }

        PmtpResult res;
        res.diagnostics = diag_;
        res.plan.m_uavs = M_;
        res.plan.v_max_mps = sc_.v_max_mps;
        for (const auto& ws : steps_) {
            MissionStep st;
            for (std::size_t m = 0; m < M_; ++m) st.waypoints.push_back(*ws.pos[m]);
            st.duties = ws.duty;
            st.hover_s = step_hover_requirement(st.duties, cs_);
            res.plan.steps.push_back(std::move(st));
        }
        retime(res.plan);
        return res;
    }

private:
    static std::vector<std::size_t> identity(std::size_t n) {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = i;
        return v;
    }

    WorkStep blank() const { return WorkStep{std::vector<std::optional<Point>>(M_), std::vector<Duty>(M_)}; }

    /// CP ids of ring m in TSP order.
    std::vector<std::size_t> ring_tour(std::size_t m) const {
        const auto ks = topo_.cps_of(m);
        if (ks.empty()) return {};
        std::vector<Point> pts;
        for (auto k : ks) pts.push_back(cs_.clusters[k].cp);
        const Tour t = solve_tsp(pts);
        std::vector<std::size_t> out;
        for (auto i : t.order) out.push_back(ks[i]);
        return out;
    }

    std::size_t S() const { return steps_.size(); }
    std::size_t prev(std::size_t s) const { return s == 0 ? S() - 1 : s - 1; }
    std::size_t next(std::size_t s) const { return (s + 1) % S(); }

    double hover(std::size_t s) const {
        double h = 0.0;
        for (const auto& d : steps_[s].duty)
            if (d.collecting()) h = std::max(h, cs_.clusters[*d.cp].min_hover_s);
        return h;
    }

    double disp(std::size_t m, std::size_t s) const {
        return distance(*steps_[prev(s)].pos[m], *steps_[s].pos[m]);
    }

    /// Largest displacement into step s among placed UAVs other than `except`.
    double bottleneck(std::size_t s, std::size_t except) const {
        double b = 0.0;
        for (std::size_t m = 0; m < M_; ++m)
            if (m != except && steps_[s].pos[m] && steps_[prev(s)].pos[m]) b = std::max(b, disp(m, s));
        return b;
    }

    /// Path length of UAV m from step `from` forward to step `to`.
    double path_len(std::size_t m, std::size_t from, std::size_t to) const {
        double total = 0.0;
        for (std::size_t s = from; s != to; s = next(s)) total += distance(*steps_[s].pos[m], *steps_[next(s)].pos[m]);
        return total;
    }

    /// Feasible set for UAV m at step s given everything already placed there.
    Region region_for(std::size_t m, std::size_t s, bool keep_ring) const {
        const auto& pos = steps_[s].pos;
        Region r = keep_ring ? ring_region(placement_ring(m), sc_.bs_position) : Region{};
        if (m == 0) r.inside.push_back({sc_.bs_position, radii_.r_u2b_m});
        if (m > 0 && pos[m - 1]) r.inside.push_back({*pos[m - 1], radii_.r_u2u_m});
        if (m + 1 < M_ && pos[m + 1]) r.inside.push_back({*pos[m + 1], radii_.r_u2u_m});
        if (sc_.d_safe_m > 0.0)
            for (std::size_t o = 0; o < M_; ++o)
                if (o != m && pos[o]) r.outside.push_back({*pos[o], sc_.d_safe_m});
        return r.shrunk(kMargin);
    }

    /// Nearest feasible point to `preferred`, leaving the ring only if needed.
    Point place(std::size_t m, std::size_t s, Point preferred, bool count = true) {
        if (auto q = project(preferred, region_for(m, s, true))) return *q;
        if (auto q = project(preferred, region_for(m, s, false))) {
            if (count) ++diag_.ring_relaxations;
            return *q;
        }
        throw InfeasibleWaypoint("no chain-feasible position for UAV " + std::to_string(m + 1) + " at step " +
                                 std::to_string(s));
    }

    std::optional<std::size_t> step_collecting(std::size_t m, std::size_t k) const {
        for (std::size_t s = 0; s < S(); ++s)
            if (steps_[s].duty[m].cp == k) return s;
        return std::nullopt;
    }

    void attach(std::size_t J, std::size_t N, const std::vector<std::size_t>& tour) {
        if (!tour.empty()) {
            const auto seq = best_matching_order(J, N, tour);
            insert_unmatched(J, N, seq);
        }
        place_escorts(J, N);
    }

    /// Chooses which follower CPs share a step with an existing stop. Every
    /// rotation and direction of the follower tour and every stop for its
    /// first CP is tried; a dynamic program over monotone assignments then
    /// minimizes the estimated added time: the hover a shared stop must be
    /// lengthened by, the full hover of each CP left for its own step, and the
    /// follower flight that outruns the neighbour between shared stops.
    /// Applies the cheapest assignment and returns the follower order used.
    std::vector<std::size_t> best_matching_order(std::size_t J, std::size_t N, const std::vector<std::size_t>& tour) {
        const std::size_t n = tour.size();
        const std::size_t S = this->S();
        const double v = sc_.v_max_mps;
        std::vector<double> cum(S + 1, 0.0);
        for (std::size_t s = 0; s < S; ++s) cum[s + 1] = cum[s] + distance(*steps_[s].pos[N], *steps_[next(s)].pos[N]);
        auto leader_path = [&](std::size_t from, std::size_t to) {
            return to > from ? cum[to] - cum[from] : cum[S] - cum[from] + cum[to];
        };

        std::vector<double> step_hover(S);
        for (std::size_t s = 0; s < S; ++s) step_hover[s] = hover(s);
        // admissible[k][s]: CP tour[k] may be collected at stop s
        std::vector<std::vector<char>> admissible(n, std::vector<char>(S, 0));
        for (std::size_t k = 0; k < n; ++k) {
            const Point p = cs_.clusters[tour[k]].cp;
            for (std::size_t s = 0; s < S; ++s) {
                const auto& pos = steps_[s].pos;
                bool ok = distance(*pos[N], p) <= radii_.r_u2u_m - kMargin;
                for (std::size_t o = 0; o < M_ && ok; ++o)
                    if (pos[o] && distance(*pos[o], p) < sc_.d_safe_m + kMargin) ok = false;
                admissible[k][s] = ok;
            }
        }

        struct Choice {
            double cost = kInf;
            std::vector<std::size_t> seq;                       // follower order (tour indices)
            std::vector<std::pair<std::size_t, std::size_t>> pairs;   // (position in seq, stop)
        };
        Choice best;
        {
            best.cost = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                best.seq.push_back(k);
                best.cost += cs_.clusters[tour[k]].min_hover_s;
            }
        }

        std::vector<std::size_t> seq(n);
        std::vector<double> hov(n), gap(n + 1);
        std::vector<Point> pts(n);
        // dp[i][j]: cheapest cost with seq[i] the latest shared CP at linear stop j
        std::vector<std::vector<double>> dp(n, std::vector<double>(S));
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> from(n, std::vector<std::pair<std::size_t, std::size_t>>(S));
        for (int dir = 0; dir < 2; ++dir) {
            if (dir == 1 && n <= 2) break;
            for (std::size_t rot = 0; rot < n; ++rot) {
                for (std::size_t i = 0; i < n; ++i) {
                    seq[i] = dir == 0 ? (rot + i) % n : (rot + n - i) % n;
                    hov[i] = cs_.clusters[tour[seq[i]]].min_hover_s;
                    pts[i] = cs_.clusters[tour[seq[i]]].cp;
                }
                // follower path length from seq[a] to seq[b] (b may be n: back to seq[0])
                std::vector<double> fcum(n + 1, 0.0);
                for (std::size_t i = 0; i < n; ++i) fcum[i + 1] = fcum[i] + distance(pts[i], pts[(i + 1) % n]);
                std::vector<double> hcum(n + 1, 0.0);
                for (std::size_t i = 0; i < n; ++i) hcum[i + 1] = hcum[i] + hov[i];

                for (std::size_t c = 0; c < S; ++c) {
                    if (!admissible[seq[0]][c]) continue;
                    auto stop = [&](std::size_t j) { return (c + j) % S; };
                    auto share = [&](std::size_t i, std::size_t j) { return std::max(0.0, hov[i] - step_hover[stop(j)]); };
                    for (auto& row : dp) std::fill(row.begin(), row.end(), kInf);
                    dp[0][0] = share(0, 0);
                    for (std::size_t i = 1; i < n; ++i)
                        for (std::size_t j = 1; j < S; ++j) {
                            if (!admissible[seq[i]][stop(j)]) continue;
                            for (std::size_t i0 = 0; i0 < i; ++i0)
                                for (std::size_t j0 = 0; j0 < j; ++j0) {
                                    if (dp[i0][j0] == kInf) continue;
                                    const double fly = std::max(0.0, fcum[i] - fcum[i0] - leader_path(stop(j0), stop(j))) / v;
                                    const double cost = dp[i0][j0] + hcum[i] - hcum[i0 + 1] + share(i, j) + fly;
                                    if (cost < dp[i][j]) {
                                        dp[i][j] = cost;
                                        from[i][j] = {i0, j0};
                                    }
                                }
                        }
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < S; ++j) {
                            if (dp[i][j] == kInf) continue;
                            const double back = i == 0 && j == 0 ? cum[S] : leader_path(stop(j), c);
                            const double fly = std::max(0.0, fcum[n] - fcum[i] - back) / v;
                            const double cost = dp[i][j] + hcum[n] - hcum[i + 1] + fly;
                            if (cost < best.cost - 1e-9) {
                                best.cost = cost;
                                best.seq.assign(seq.begin(), seq.end());
                                best.pairs.clear();
                                for (std::size_t ii = i, jj = j;;) {
                                    best.pairs.emplace_back(ii, stop(jj));
                                    if (ii == 0) break;
                                    std::tie(ii, jj) = from[ii][jj];
                                }
                            }
                        }
                }
            }
        }

        std::vector<std::size_t> order;
        for (auto k : best.seq) order.push_back(tour[k]);
        for (const auto& [i, s] : best.pairs) {
            steps_[s].duty[J] = Duty::collect(order[i]);
            steps_[s].pos[J] = cs_.clusters[order[i]].cp;
        }
        diag_.matched_pairs += best.pairs.size();
        return order;
    }

    /// Inserts a step per unmatched follower CP, with the neighbour detouring
    /// to a generated waypoint, keeping the follower's visiting order.
    void insert_unmatched(std::size_t J, std::size_t N, const std::vector<std::size_t>& seq) {
        const std::size_t n = seq.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = seq[i];
            if (step_collecting(J, k)) continue;

            std::optional<std::size_t> a, b;
            for (std::size_t d = 1; d < n && !a; ++d) a = step_collecting(J, seq[(i + n - d) % n]);
            for (std::size_t d = 1; d < n && !b; ++d) b = step_collecting(J, seq[(i + d) % n]);

            // polyline of the neighbour over the allowed insertion interval
            const std::size_t start = a ? *a : 0;
            const std::size_t stop = b ? *b : start;
            std::vector<Point> path{*steps_[start].pos[N]};
            for (std::size_t s = next(start);; s = next(s)) {
                path.push_back(*steps_[s].pos[N]);
                if (s == stop) break;
            }

            const Point cp = cs_.clusters[k].cp;
            GeneratedWaypoint g;
            try {
                g = detour_waypoint(cp, path, radii_.r_u2u_m - kMargin, sc_.d_safe_m + kMargin, shrunk_ring(N),
                                    sc_.bs_position);
            } catch (const InfeasibleWaypoint&) {
                ++diag_.ring_relaxations;
                g = detour_waypoint(cp, path, radii_.r_u2u_m - kMargin, sc_.d_safe_m + kMargin, Ring{0.0, kInf},
                                    sc_.bs_position);
            }
            ++diag_.generated_waypoints;
            if (g.sum_form_agrees) ++diag_.sum_form_agreements;
            if (g.centered_form_agrees) ++diag_.centered_form_agreements;

            const std::size_t after = (start + g.edge) % S();
            const std::size_t at = after + 1;
            WorkStep st = blank();
            st.pos[N] = g.waypoint;
            st.pos[J] = cp;
            st.duty[J] = Duty::collect(k);
            steps_.insert(steps_.begin() + static_cast<std::ptrdiff_t>(at), std::move(st));

            // other planned UAVs hold position where the chain allows
            if (J < N) {
                for (std::size_t m = N + 1; m <= hi_; ++m) steps_[at].pos[m] = place(m, at, *steps_[prev(at)].pos[m]);
            } else {
                for (std::size_t m = N; m-- > lo_;) steps_[at].pos[m] = place(m, at, *steps_[prev(at)].pos[m]);
            }
        }
    }

    /// Ring of UAV m pulled in so that the chain of inner UAVs, each kept
    /// kMargin inside its own links, can still reach a point on the outer edge.
    Ring placement_ring(std::size_t m) const {
        Ring r = topo_.rings[m];
        r.outer_m -= 2.0 * static_cast<double>(m + 1) * kMargin;
        return r;
    }

    Ring shrunk_ring(std::size_t m) const {
        Ring r = placement_ring(m);
        r.outer_m -= kMargin;
        if (r.inner_m > 0.0) r.inner_m += kMargin;
        return r;
    }

    struct RunCost {
        double added = 0.0;    // flight added beyond the current bottleneck, meters
        double travel = 0.0;
        bool operator<(const RunCost& o) const {
            if (added != o.added) return added < o.added - 1e-9;
            return travel < o.travel;
        }
    };

    /// Fills the follower's positions at every step where it is not collecting.
    void place_escorts(std::size_t J, std::size_t N) {
        std::vector<std::size_t> anchors;
        for (std::size_t s = 0; s < S(); ++s)
            if (steps_[s].duty[J].collecting()) anchors.push_back(s);

        if (anchors.empty()) {
            const Point np = *steps_[0].pos[N];
            const Ring& ring = topo_.rings[J];
            const double mid = std::isfinite(ring.outer_m) ? 0.5 * (ring.inner_m + ring.outer_m) : ring.inner_m;
            const double ang = polar_angle(np, sc_.bs_position);
            Point cur = from_polar(sc_.bs_position, mid, ang);
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t s = 0; s < S(); ++s) {
                    steps_[s].pos[J].reset();
                    cur = place(J, s, cur, pass == 1);
                    steps_[s].pos[J] = cur;
                }
            return;
        }

        for (std::size_t i = 0; i < anchors.size(); ++i) {
            const std::size_t a = anchors[i];
            const std::size_t b = anchors[(i + 1) % anchors.size()];
            fill_run(J, N, a, b);
        }
    }

    /// Escorts for the steps strictly between anchors a and b (cyclic).
    void fill_run(std::size_t J, std::size_t N, std::size_t a, std::size_t b) {
        std::vector<std::size_t> run;
        for (std::size_t s = next(a); s != b; s = next(s)) run.push_back(s);
        if (run.empty()) return;

        const Point pa = *steps_[a].pos[J];
        const Point pb = *steps_[b].pos[J];
        const double total = path_len(N, a, b);

        enum class Rule { Lazy, Interpolate, Escort };
        std::optional<std::vector<Point>> best;
        RunCost best_cost;
        for (Rule rule : {Rule::Escort, Rule::Lazy, Rule::Interpolate}) {
            std::vector<Point> pts;
            std::size_t relaxed = 0;
            Point cur = pa;
            double walked = 0.0;
            for (std::size_t s : run) {
                walked += distance(*steps_[prev(s)].pos[N], *steps_[s].pos[N]);
                std::optional<Point> q;
                const std::size_t before = diag_.ring_relaxations;
                if (rule == Rule::Escort && steps_[s].duty[N].collecting()) {
                    std::vector<Circle> clear;
                    for (std::size_t o = 0; o < M_; ++o)
                        if (o != J && o != N && steps_[s].pos[o]) clear.push_back({*steps_[s].pos[o], sc_.d_safe_m + kMargin});
                    const Point np = *steps_[s].pos[N];
                    try {
                        Point e = escort_waypoint(np, cur, pb, distance(*steps_[prev(s)].pos[N], np),
                                                  path_len(N, s, b), radii_.r_u2u_m - kMargin, sc_.d_safe_m + kMargin,
                                                  shrunk_ring(J), sc_.bs_position, clear);
                        if (J == 0 && distance(e, sc_.bs_position) > radii_.r_u2b_m - kMargin) throw InfeasibleWaypoint("");
                        q = e;
                    } catch (const InfeasibleWaypoint&) {
                    }
                }
                if (!q) {
                    Point target = cur;
                    if (rule == Rule::Interpolate)
                        target = total > 0.0 ? lerp(pa, pb, walked / total)
                                             : lerp(pa, pb, static_cast<double>(pts.size() + 1) / (run.size() + 1));
                    q = place(J, s, target);
                }
                relaxed += diag_.ring_relaxations - before;
                diag_.ring_relaxations = before;
                pts.push_back(*q);
                cur = *q;
            }

            RunCost cost;
            Point last = pa;
            for (std::size_t i = 0; i <= run.size(); ++i) {
                const std::size_t s = i < run.size() ? run[i] : b;
                const Point q = i < run.size() ? pts[i] : pb;
                const double d = distance(last, q);
                cost.added += std::max(0.0, d - bottleneck(s, J));
                cost.travel += d;
                last = q;
            }
            cost.added += 1e6 * static_cast<double>(relaxed);   // leaving the ring is a last resort
            if (!best || cost < best_cost) {
                best = std::move(pts);
                best_cost = cost;
            }
        }
        diag_.ring_relaxations += static_cast<std::size_t>(best_cost.added / 1e6);
        for (std::size_t i = 0; i < run.size(); ++i) steps_[run[i]].pos[J] = (*best)[i];
        smooth_run(J, run, b);
    }

    /// Coordinate descent on the follower's escort points: each point moves to
    /// where both adjacent legs fit under the other UAVs' step displacements,
    /// or as close to that as its feasible set allows.
    void smooth_run(std::size_t J, const std::vector<std::size_t>& run, std::size_t b) {
        constexpr int kPasses = 40;
        auto excess = [&](Point p, Point q, double limit) { return std::max(0.0, distance(p, q) - limit); };
        for (int pass = 0; pass < kPasses; ++pass) {
            bool moved = false;
            for (std::size_t i = 0; i < run.size(); ++i) {
                const std::size_t s = run[i];
                const std::size_t t = i + 1 < run.size() ? run[i + 1] : b;
                const Point p = *steps_[prev(s)].pos[J];
                const Point n = *steps_[t].pos[J];
                const Point x = *steps_[s].pos[J];
                const double d_in = bottleneck(s, J), d_out = bottleneck(t, J);
                const double before = excess(p, x, d_in) + excess(x, n, d_out);
                if (before <= 1e-9) continue;

                steps_[s].pos[J].reset();
                const bool keep_ring = topo_.in_ring(J, x, 1e-6);
                Region r = region_for(J, s, keep_ring);
                Region tight = r;
                tight.inside.push_back({p, d_in});
                tight.inside.push_back({n, d_out});
                std::optional<Point> q = project(x, tight);
                if (!q) {
                    auto cost = [&](Point c) {
                        return excess(p, c, d_in) + excess(c, n, d_out) + 1e-6 * (distance(p, c) + distance(c, n));
                    };
                    std::vector<Point> extra{x};
                    const double len = distance(p, n);
                    if (len > 0.0) {
                        extra.push_back(lerp(p, n, std::min(1.0, d_in / len)));
                        extra.push_back(lerp(n, p, std::min(1.0, d_out / len)));
                    }
                    if (auto m = minimize_over_region(r, cost, p, n, extra)) q = m->point;
                }
                if (q && excess(p, *q, d_in) + excess(*q, n, d_out) < before - 1e-9) {
                    steps_[s].pos[J] = *q;
                    moved = true;
                } else {
                    steps_[s].pos[J] = x;
                }
            }
            if (!moved) break;
        }
    }

    const Scenario& sc_;
    const ClusterSet& cs_;
    const Topology& topo_;
    const CoverageRadii& radii_;
    const std::size_t M_;
    std::vector<WorkStep> steps_;
    std::size_t lo_ = 0, hi_ = 0;
    PlanDiagnostics diag_;
};

} // namespace

PmtpResult plan_pmtp(const Scenario& scenario, const ClusterSet& cs, const Topology& topo,
                     const CoverageRadii& radii) {
    if (topo.m_uavs == 0 || cs.k() == 0) throw InvalidArgument("plan_pmtp needs at least one UAV and one CP");
    if (topo.association.size() != cs.k()) throw InvalidArgument("association does not match the cluster set");
    return Builder(scenario, cs, topo, radii).run();
}

} // namespace uavcollect
