#include "coherent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cpat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEqTol = 1e-9;  // tolerance of the euclidean total equality

struct InteriorSide {
    int edge;         // interior-edge ordinal m
    int k;            // unoriented edge index
    int face[2];      // unoriented faces of sides 4k, 4k+2
    double theta;
};

std::vector<InteriorSide> interior_sides(const PatternProblem& p) {
    std::vector<InteriorSide> out;
    int m = 0;
    for (int k = 0; k < p.surface.num_edges(); ++k) {
        if (!p.surface.edge_is_interior(k)) continue;
        out.push_back({m++, k,
                       {p.surface.left_face(4 * k) / 2,
                        p.surface.left_face(4 * k + 2) / 2},
                       p.theta[static_cast<std::size_t>(k)]});
    }
    return out;
}

// Dinic max flow on double capacities.
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(static_cast<std::size_t>(n)) {}

    int add(int u, int v, double cap) {
        edges_.push_back({v, cap, 0.0});
        head_[static_cast<std::size_t>(u)].push_back(static_cast<int>(edges_.size()) - 1);
        edges_.push_back({u, 0.0, 0.0});
        head_[static_cast<std::size_t>(v)].push_back(static_cast<int>(edges_.size()) - 1);
        return static_cast<int>(edges_.size()) - 2;
    }

    double flow_on(int id) const { return edges_[static_cast<std::size_t>(id)].flow; }

    double run(int s, int t) {
        double total = 0.0;
        while (bfs(s, t)) {
            iter_.assign(head_.size(), 0);
            double f;
            while ((f = dfs(s, t, 1e300)) > kMinCap) total += f;
        }
        return total;
    }

    std::vector<char> reachable_from(int s) const {
        std::vector<char> seen(head_.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[static_cast<std::size_t>(s)] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int id : head_[static_cast<std::size_t>(u)]) {
                const auto& e = edges_[static_cast<std::size_t>(id)];
                if (e.cap - e.flow > kMinCap && !seen[static_cast<std::size_t>(e.to)]) {
                    seen[static_cast<std::size_t>(e.to)] = 1;
                    q.push(e.to);
                }
            }
        }
        return seen;
    }

private:
    static constexpr double kMinCap = 1e-13;
    struct Edge {
        int to;
        double cap, flow;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        q.push(s);
        level_[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int id : head_[static_cast<std::size_t>(u)]) {
                const auto& e = edges_[static_cast<std::size_t>(id)];
                if (e.cap - e.flow > kMinCap && level_[static_cast<std::size_t>(e.to)] < 0) {
                    level_[static_cast<std::size_t>(e.to)] =
                        level_[static_cast<std::size_t>(u)] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    double dfs(int u, int t, double pushed) {
        if (u == t) return pushed;
        for (int& i = iter_[static_cast<std::size_t>(u)];
             i < static_cast<int>(head_[static_cast<std::size_t>(u)].size()); ++i) {
            const int id = head_[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)];
            auto& e = edges_[static_cast<std::size_t>(id)];
            if (e.cap - e.flow <= kMinCap) continue;
            if (level_[static_cast<std::size_t>(e.to)] !=
                level_[static_cast<std::size_t>(u)] + 1)
                continue;
            const double got = dfs(e.to, t, std::min(pushed, e.cap - e.flow));
            if (got > kMinCap) {
                e.flow += got;
                edges_[static_cast<std::size_t>(id ^ 1)].flow -= got;
                return got;
            }
        }
        return 0.0;
    }

    std::vector<std::vector<int>> head_;
    std::vector<Edge> edges_;
    std::vector<int> level_, iter_;
};

}  // namespace

ValidationReport validate_angles(const PatternProblem& p, const AngleSystem& a,
                                 double tolerance) {
    ValidationReport rep;
    const auto sides = interior_sides(p);
    if (a.phi.size() != 2 * sides.size()) {
        rep.valid = false;
        rep.violations.push_back("angle system has the wrong length");
        return rep;
    }
    auto fail = [&](const std::string& msg) {
        rep.valid = false;
        rep.violations.push_back(msg);
    };
    std::vector<double> face_sum(p.phi.size(), 0.0);
    for (const auto& s : sides) {
        const double pe = a.phi[static_cast<std::size_t>(2 * s.edge)];
        const double pr = a.phi[static_cast<std::size_t>(2 * s.edge + 1)];
        const double ts = kPi - s.theta;
        std::ostringstream tag;
        tag << "edge " << s.k << ": ";
        switch (p.geometry) {
            case Geometry::kEuclidean:
                if (!(pe > 0.0 && pr > 0.0)) fail(tag.str() + "half angle not positive");
                if (std::abs(pe + pr - ts) > tolerance)
                    fail(tag.str() + "half angles do not sum to pi-theta");
                break;
            case Geometry::kHyperbolic:
                if (!(pe > 0.0 && pr > 0.0)) fail(tag.str() + "half angle not positive");
                if (!(pe + pr < ts - tolerance))
                    fail(tag.str() + "half angle sum not below pi-theta");
                break;
            case Geometry::kSpherical:
                if (!(pe > 0.0 && pe < kPi && pr > 0.0 && pr < kPi))
                    fail(tag.str() + "half angle outside (0, pi)");
                if (!(pe + pr > ts + tolerance && pe + pr < 2.0 * kPi - ts - tolerance))
                    fail(tag.str() + "half angle sum outside (pi-theta, pi+theta)");
                if (!(std::abs(pe - pr) < ts - tolerance))
                    fail(tag.str() + "half angle difference too large");
                break;
        }
        face_sum[static_cast<std::size_t>(s.face[0])] += 2.0 * pe;
        face_sum[static_cast<std::size_t>(s.face[1])] += 2.0 * pr;
    }
    for (std::size_t f = 0; f < p.phi.size(); ++f)
        if (std::abs(face_sum[f] - p.phi[f]) > tolerance) {
            std::ostringstream msg;
            msg << "face " << f << ": angle sum " << face_sum[f]
                << " differs from target " << p.phi[f];
            fail(msg.str());
        }
    return rep;
}

FeasibilityReport feasibility(const PatternProblem& p) {
    if (p.geometry == Geometry::kSpherical)
        throw std::invalid_argument(
            "feasibility test applies to euclidean and hyperbolic problems");
    const auto sides = interior_sides(p);
    const int F = static_cast<int>(p.phi.size());
    const int M = static_cast<int>(sides.size());

    FeasibilityReport rep;
    double total_phi = 0.0, total_cap = 0.0, min_ts = 1e300;
    for (double f : p.phi) total_phi += f;
    for (const auto& s : sides) {
        total_cap += 2.0 * (kPi - s.theta);
        min_ts = std::min(min_ts, kPi - s.theta);
    }
    double slack = min_ts;
    if (p.geometry == Geometry::kHyperbolic)
        slack = std::min(slack, total_cap - total_phi);
    rep.epsilon = std::min(1e-9, slack / (4.0 * p.surface.num_edges() + 4.0));

    auto all_faces = [&] {
        std::vector<int> w(static_cast<std::size_t>(F));
        for (int f = 0; f < F; ++f) w[static_cast<std::size_t>(f)] = f;
        return w;
    };
    if (p.geometry == Geometry::kEuclidean && std::abs(total_phi - total_cap) > kEqTol) {
        rep.witness_faces = all_faces();
        return rep;
    }
    if (p.geometry == Geometry::kHyperbolic && !(total_phi < total_cap - kEqTol)) {
        rep.witness_faces = all_faces();
        return rep;
    }
    if (!(rep.epsilon > 0.0)) {
        rep.witness_faces = all_faces();
        return rep;
    }

    // Circulation with lower bounds, reduced to max flow.  Nodes: apex,
    // faces, interior edges, then super source / sink.
    const int apex = 0;
    auto face_node = [&](int f) { return 1 + f; };
    auto edge_node = [&](int m) { return 1 + F + m; };
    const int S = 1 + F + M, T = S + 1;
    MaxFlow net(T + 1);
    const double big = total_phi + total_cap + 10.0;
    std::vector<double> excess(static_cast<std::size_t>(T + 1), 0.0);
    auto add_bounded = [&](int u, int v, double lo, double hi) {
        excess[static_cast<std::size_t>(v)] += lo;
        excess[static_cast<std::size_t>(u)] -= lo;
        return net.add(u, v, hi - lo);
    };

    for (int f = 0; f < F; ++f) {
        const double lo = 0.5 * p.phi[static_cast<std::size_t>(f)];
        const double hi = (p.geometry == Geometry::kHyperbolic) ? lo : big;
        add_bounded(apex, face_node(f), lo, hi);
    }
    std::vector<std::array<int, 2>> side_arc(static_cast<std::size_t>(M));
    for (const auto& s : sides) {
        for (int which = 0; which < 2; ++which)
            side_arc[static_cast<std::size_t>(s.edge)][static_cast<std::size_t>(which)] =
                add_bounded(face_node(s.face[which]), edge_node(s.edge), rep.epsilon, big);
        const double cap = (p.geometry == Geometry::kHyperbolic)
                               ? (kPi - s.theta - rep.epsilon)
                               : (kPi - s.theta);
        add_bounded(edge_node(s.edge), apex, 0.0, cap);
    }
    double need = 0.0;
    for (int u = 0; u <= T; ++u) {
        if (excess[static_cast<std::size_t>(u)] > 0.0) {
            net.add(S, u, excess[static_cast<std::size_t>(u)]);
            need += excess[static_cast<std::size_t>(u)];
        } else if (excess[static_cast<std::size_t>(u)] < 0.0) {
            net.add(u, T, -excess[static_cast<std::size_t>(u)]);
        }
    }
    const double got = net.run(S, T);
    if (got >= need - 1e-10) {
        rep.feasible = true;
        rep.flow_angles.phi.assign(static_cast<std::size_t>(2 * M), 0.0);
        double min_slack = 1e300;
        for (const auto& s : sides) {
            for (int which = 0; which < 2; ++which) {
                const double f =
                    rep.epsilon +
                    net.flow_on(side_arc[static_cast<std::size_t>(s.edge)]
                                        [static_cast<std::size_t>(which)]);
                rep.flow_angles.phi[static_cast<std::size_t>(2 * s.edge + which)] = f;
                min_slack = std::min(min_slack, f - rep.epsilon);
            }
            const double pe = rep.flow_angles.phi[static_cast<std::size_t>(2 * s.edge)];
            const double pr = rep.flow_angles.phi[static_cast<std::size_t>(2 * s.edge + 1)];
            min_slack = std::min(min_slack, kPi - s.theta - pe - pr);
        }
        rep.near_boundary = min_slack < 10.0 * rep.epsilon;
        return rep;
    }

    // Infeasible: derive a witness subset from the min cut and verify it.
    const auto seen = net.reachable_from(S);
    std::vector<int> in_cut, out_cut;
    for (int f = 0; f < F; ++f)
        (seen[static_cast<std::size_t>(face_node(f))] ? in_cut : out_cut).push_back(f);
    for (const auto& cand : {in_cut, out_cut, all_faces()})
        if (!cand.empty() && witness_violates(p, cand)) {
            rep.witness_faces = cand;
            return rep;
        }
    // Small instances: find a witness exhaustively.
    if (F <= 20) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << F); ++mask) {
            std::vector<int> sub;
            for (int f = 0; f < F; ++f)
                if (mask >> f & 1) sub.push_back(f);
            if (witness_violates(p, sub)) {
                rep.witness_faces = sub;
                return rep;
            }
        }
    }
    return rep;
}

namespace {

// Σ_{F'} Φ and Σ_{E'} 2θ* for the interior edges incident with F'.
std::pair<double, double> subset_sums(const PatternProblem& p,
                                      const std::vector<char>& in) {
    double sphi = 0.0, scap = 0.0;
    for (std::size_t f = 0; f < p.phi.size(); ++f)
        if (in[f]) sphi += p.phi[f];
    for (int k = 0; k < p.surface.num_edges(); ++k) {
        if (!p.surface.edge_is_interior(k)) continue;
        const int a = p.surface.left_face(4 * k) / 2;
        const int b = p.surface.left_face(4 * k + 2) / 2;
        if (in[static_cast<std::size_t>(a)] || in[static_cast<std::size_t>(b)])
            scap += 2.0 * (kPi - p.theta[static_cast<std::size_t>(k)]);
    }
    return {sphi, scap};
}

}  // namespace

bool witness_violates(const PatternProblem& p, const std::vector<int>& faces) {
    std::vector<char> in(p.phi.size(), 0);
    for (int f : faces) in[static_cast<std::size_t>(f)] = 1;
    const auto [sphi, scap] = subset_sums(p, in);
    const bool full = faces.size() == p.phi.size();
    if (p.geometry == Geometry::kEuclidean)
        return full ? std::abs(sphi - scap) > kEqTol : !(sphi < scap - kEqTol);
    return !(sphi < scap - kEqTol);
}

bool feasible_brute_force(const PatternProblem& p) {
    const int F = static_cast<int>(p.phi.size());
    if (F > 20) throw std::invalid_argument("brute force limited to 20 faces");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << F); ++mask) {
        std::vector<int> sub;
        for (int f = 0; f < F; ++f)
            if (mask >> f & 1) sub.push_back(f);
        if (witness_violates(p, sub)) return false;
    }
    return true;
}

std::array<double, 3> hole_fill_angles(double t12, double t23, double t31) {
    return {kPi - 0.5 * (t12 - t23 + t31), kPi - 0.5 * (t23 - t31 + t12),
            kPi - 0.5 * (t31 - t12 + t23)};
}

}  // namespace cpat
