#include "layout.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace cpat {
namespace {

constexpr double kPi = std::numbers::pi;

double norm2(const ProjectivePoint& p) { return std::norm(p.z1) + std::norm(p.z2); }

}  // namespace

ProjectivePoint ProjectivePoint::normalized(ProjectivePoint p) {
    const double m = std::max(std::abs(p.z1), std::abs(p.z2));
    if (!(m > 0.0)) throw std::invalid_argument("zero homogeneous pair");
    p.z1 /= m;
    p.z2 /= m;
    return p;
}

// |z1 w2 − z2 w1| / (‖z‖ ‖w‖), half the chordal distance of the unit-sphere
// preimages; ranges over [0, 1].
double chordal_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
    const double num = std::abs(a.z1 * b.z2 - a.z2 * b.z1);
    return num / std::sqrt(norm2(a) * norm2(b));
}

ProjectivePoint MoebiusMap::apply(const ProjectivePoint& p) const {
    return ProjectivePoint::normalized({a * p.z1 + b * p.z2, c * p.z1 + d * p.z2});
}

MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner) {
    MoebiusMap m;
    m.a = outer.a * inner.a + outer.b * inner.c;
    m.b = outer.a * inner.b + outer.b * inner.d;
    m.c = outer.c * inner.a + outer.d * inner.c;
    m.d = outer.c * inner.b + outer.d * inner.d;
    return m.normalized();
}

MoebiusMap MoebiusMap::then(const MoebiusMap& second) const { return compose(second, *this); }

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap{d, -b, -c, a}.normalized(); }

MoebiusMap MoebiusMap::normalized() const {
    const double m =
        std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    if (!(m > 0.0)) throw std::invalid_argument("zero Moebius matrix");
    return {a / m, b / m, c / m, d / m};
}

MoebiusMap MoebiusMap::rotation(Geometry g, double alpha) {
    const Complex i{0.0, 1.0};
    if (g == Geometry::kEuclidean)
        return {std::exp(i * alpha), 0.0, 0.0, 1.0};
    return {std::exp(i * (0.5 * alpha)), 0.0, 0.0, std::exp(-i * (0.5 * alpha))};
}

MoebiusMap MoebiusMap::advance(Geometry g, double distance) {
    const double h = 0.5 * distance;
    switch (g) {
        case Geometry::kEuclidean: return {1.0, distance, 0.0, 1.0};
        case Geometry::kHyperbolic:
            return {std::cosh(h), std::sinh(h), std::sinh(h), std::cosh(h)};
        case Geometry::kSpherical:
            return {std::cos(h), std::sin(h), -std::sin(h), std::cos(h)};
    }
    return {};
}

HermitianCircle HermitianCircle::transformed(const MoebiusMap& m) const {
    const MoebiusMap n = m.inverse();
    // H' = N† H N with N = m⁻¹, so that z on the image circle pulls back to H.
    const Complex k11 = h11 * n.a + h12 * n.c;
    const Complex k12 = h11 * n.b + h12 * n.d;
    const Complex k21 = std::conj(h12) * n.a + h22 * n.c;
    const Complex k22 = std::conj(h12) * n.b + h22 * n.d;
    HermitianCircle out;
    out.h11 = std::real(std::conj(n.a) * k11 + std::conj(n.c) * k21);
    out.h12 = std::conj(n.a) * k12 + std::conj(n.c) * k22;
    out.h22 = std::real(std::conj(n.b) * k12 + std::conj(n.d) * k22);
    // positive scaling only: the sign of the form encodes the orientation of
    // the circle (which side is the disk), and conjugation preserves it
    const double scale =
        std::max({std::abs(out.h11), std::abs(out.h12), std::abs(out.h22)});
    if (!(scale > 0.0)) throw std::invalid_argument("degenerate circle image");
    out.h11 /= scale;
    out.h12 /= scale;
    out.h22 /= scale;
    return out;
}

HermitianCircle circle_from_center_radius(Geometry g, const ProjectivePoint& center,
                                          double radius) {
    double r_model = 0.0;
    switch (g) {
        case Geometry::kEuclidean: r_model = radius; break;
        case Geometry::kHyperbolic: r_model = std::tanh(0.5 * radius); break;
        case Geometry::kSpherical: r_model = std::tan(0.5 * radius); break;
    }
    HermitianCircle base{1.0, Complex{0.0}, -r_model * r_model};
    MoebiusMap move;  // origin → center
    if (center.is_infinite()) {
        if (g != Geometry::kSpherical)
            throw std::invalid_argument("infinite center outside spherical geometry");
        move = {0.0, -1.0, 1.0, 0.0};
    } else {
        const Complex c = center.value();
        switch (g) {
            case Geometry::kEuclidean: move = {1.0, c, 0.0, 1.0}; break;
            case Geometry::kHyperbolic: move = {1.0, c, std::conj(c), 1.0}; break;
            case Geometry::kSpherical: move = {1.0, c, -std::conj(c), 1.0}; break;
        }
    }
    return base.transformed(move);
}

double intersection_angle(const HermitianCircle& c1, const HermitianCircle& c2) {
    const double d1 = c1.det(), d2 = c2.det();
    if (!(d1 < 0.0) || !(d2 < 0.0))
        throw std::invalid_argument("intersection angle needs real circles");
    const double s1 = std::sqrt(-d1), s2 = std::sqrt(-d2);
    double cosv = (2.0 * std::real(c1.h12 * std::conj(c2.h12)) - c1.h11 * c2.h22 -
                   c2.h11 * c1.h22) /
                  (2.0 * s1 * s2);
    if (std::abs(cosv) > 1.0 + 1e-9)
        throw std::invalid_argument("circles do not intersect");
    cosv = std::clamp(cosv, -1.0, 1.0);
    return std::acos(cosv);
}

double model_distance(Geometry g, const ProjectivePoint& a, const ProjectivePoint& b) {
    switch (g) {
        case Geometry::kEuclidean: {
            return std::abs(a.value() - b.value());
        }
        case Geometry::kHyperbolic: {
            const Complex z = a.value(), w = b.value();
            const double t = std::abs((z - w) / (1.0 - std::conj(w) * z));
            return 2.0 * std::atanh(std::min(t, 1.0 - 1e-16));
        }
        case Geometry::kSpherical: {
            const double c = std::clamp(chordal_distance(a, b), 0.0, 1.0);
            return 2.0 * std::asin(c);
        }
    }
    return 0.0;
}

namespace {

const ProjectivePoint kOrigin{Complex{0.0}, Complex{1.0}};

std::array<ProjectivePoint, 3> probe_points() {
    return {ProjectivePoint::from_complex({0.0, 0.0}),
            ProjectivePoint::from_complex({1.0, 0.0}),
            ProjectivePoint::from_complex({-1.0, 0.5})};
}

double map_mismatch(const MoebiusMap& p, const MoebiusMap& q) {
    double worst = 0.0;
    for (const auto& probe : probe_points())
        worst = std::max(worst, chordal_distance(p.apply(probe), q.apply(probe)));
    return worst;
}

}  // namespace

LayoutResult layout_pattern(const PatternProblem& p, const std::vector<double>& rho) {
    p.validate();
    const CellularSurface& s = p.surface;
    if (static_cast<int>(rho.size()) != s.num_faces())
        throw std::invalid_argument("rho size must match face count");

    std::vector<double> radius(rho.size());
    for (std::size_t f = 0; f < rho.size(); ++f)
        radius[f] = radius_from_rho(p.geometry, rho[f]);

    const auto phi_of = [&](int e) {
        const int fj = s.left_face(e) / 2, fk = s.right_face(e) / 2;
        return kite_half_angle(p.geometry, p.theta[static_cast<std::size_t>(e / 4)],
                               rho[static_cast<std::size_t>(fj)],
                               rho[static_cast<std::size_t>(fk)]);
    };

    LayoutResult out;
    out.geometry = p.geometry;
    out.centers.assign(static_cast<std::size_t>(s.num_faces()), std::nullopt);
    out.vertices.assign(static_cast<std::size_t>(s.num_vertices()), std::nullopt);
    out.circles.assign(static_cast<std::size_t>(s.num_faces()), std::nullopt);
    out.edge_angles.assign(static_cast<std::size_t>(s.num_edges()),
                           std::numeric_limits<double>::quiet_NaN());

    const int n = s.oriented_count();
    std::vector<std::optional<MoebiusMap>> frame(static_cast<std::size_t>(n));

    int start = SENTINEL;
    for (int e = 0; e < n && start == SENTINEL; ++e)
        if (s.left_face(e) != SENTINEL && s.left_face(e) % 2 == 0) start = e;
    if (start == SENTINEL) throw std::invalid_argument("surface has no faces to lay out");

    constexpr double kClosureTol = 1e-6;
    const auto offer = [&](int e, const MoebiusMap& m) {
        if (frame[static_cast<std::size_t>(e)]) {
            const double d = map_mismatch(*frame[static_cast<std::size_t>(e)], m);
            if (d < kClosureTol) {
                out.holonomy_residual = std::max(out.holonomy_residual, d);
            } else {
                const MoebiusMap h =
                    compose(frame[static_cast<std::size_t>(e)]->inverse(), m);
                bool known = false;
                for (const auto& existing : out.holonomies)
                    if (map_mismatch(existing, h) < kClosureTol) known = true;
                if (!known) out.holonomies.push_back(h);
            }
            return false;
        }
        frame[static_cast<std::size_t>(e)] = m;
        return true;
    };

    std::queue<int> queue;
    frame[static_cast<std::size_t>(start)] = MoebiusMap::identity();
    queue.push(start);
    while (!queue.empty()) {
        const int e = queue.front();
        queue.pop();
        const MoebiusMap& P = *frame[static_cast<std::size_t>(e)];
        const int f = s.left_face(e);
        const std::size_t fp = static_cast<std::size_t>(f / 2);
        if (!out.centers[fp]) {
            out.centers[fp] = P.apply(kOrigin);
            out.circles[fp] = HermitianCircle{1.0, Complex{0.0},
                                              -std::exp(2.0 * rho[fp])}
                                  .transformed(P);
        }
        const std::size_t vp = static_cast<std::size_t>(s.initial_vertex(e) / 2);
        if (!out.vertices[vp])
            out.vertices[vp] =
                compose(P, MoebiusMap::advance(p.geometry, radius[fp])).apply(kOrigin);

        const MoebiusMap next = compose(P, MoebiusMap::rotation(p.geometry, 2.0 * phi_of(e)));
        const int en = s.next_in_left_face(e);
        if (offer(en, next)) queue.push(en);

        const int ep = s.previous_in_left_face(e);
        if (offer(ep, compose(P, MoebiusMap::rotation(p.geometry, -2.0 * phi_of(ep)))))
            queue.push(ep);

        const int ei = CellularSurface::reversed(e);
        const int fr = s.left_face(ei);
        if (fr != SENTINEL && fr % 2 == 0) {
            const double theta_star = kPi - p.theta[static_cast<std::size_t>(e / 4)];
            MoebiusMap m = compose(next, MoebiusMap::advance(p.geometry, radius[fp]));
            m = compose(m, MoebiusMap::rotation(p.geometry, -theta_star));
            m = compose(m, MoebiusMap::advance(p.geometry,
                                               radius[static_cast<std::size_t>(fr / 2)]));
            m = compose(m, MoebiusMap::rotation(p.geometry, kPi));
            const std::size_t k = static_cast<std::size_t>(e / 4);
            if (std::isnan(out.edge_angles[k])) {
                const HermitianCircle left =
                    HermitianCircle{1.0, Complex{0.0}, -std::exp(2.0 * rho[fp])}
                        .transformed(P);
                const HermitianCircle right =
                    HermitianCircle{
                        1.0, Complex{0.0},
                        -std::exp(2.0 * rho[static_cast<std::size_t>(fr / 2)])}
                        .transformed(m);
                out.edge_angles[k] = intersection_angle(left, right);
            }
            if (offer(ei, m)) queue.push(ei);
        }
    }
    return out;
}

ProjectivePoint stereographic_to_plane(const std::array<double, 3>& x) {
    const Complex w{x[0], x[1]};
    if (x[2] < 0.0)
        return ProjectivePoint::normalized({w, Complex{1.0 - x[2]}});
    return ProjectivePoint::normalized({Complex{1.0 + x[2]}, std::conj(w)});
}

std::array<double, 3> stereographic_to_sphere(const ProjectivePoint& z) {
    const double n1 = std::norm(z.z1), n2 = std::norm(z.z2);
    const double denom = n1 + n2;
    const Complex w = 2.0 * z.z1 * std::conj(z.z2) / denom;
    return {std::real(w), std::imag(w), (n1 - n2) / denom};
}

double sphere_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const std::array<double, 3> cross{a[1] * b[2] - a[2] * b[1],
                                      a[2] * b[0] - a[0] * b[2],
                                      a[0] * b[1] - a[1] * b[0]};
    const double sin_part =
        std::sqrt(cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]);
    const double cos_part = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    return std::atan2(sin_part, cos_part);
}

namespace {

// Restriction to the unit sphere of the ball Moebius translation with
// parameter a (|a| < 1); moves points away from the direction of a.
std::array<double, 3> ball_translate(const std::array<double, 3>& a,
                                     const std::array<double, 3>& v) {
    const double na2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    std::array<double, 3> d{v[0] - a[0], v[1] - a[1], v[2] - a[2]};
    const double nd2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const double s = (1.0 - na2) / nd2;
    return {s * d[0] - a[0], s * d[1] - a[1], s * d[2] - a[2]};
}

MoebiusMap map_through_points(const std::array<ProjectivePoint, 3>& src,
                              const std::array<ProjectivePoint, 3>& dst) {
    const auto standardize = [](const std::array<ProjectivePoint, 3>& z) {
        // matrix sending z[0] → 0, z[1] → 1, z[2] → ∞
        const Complex p1 = z[0].z1, q1 = z[0].z2;
        const Complex p2 = z[1].z1, q2 = z[1].z2;
        const Complex p3 = z[2].z1, q3 = z[2].z2;
        const Complex u = p2 * q3 - p3 * q2;
        const Complex w = p2 * q1 - p1 * q2;
        return MoebiusMap{u * q1, -u * p1, w * q3, -w * p3}.normalized();
    };
    return compose(standardize(dst).inverse(), standardize(src));
}

}  // namespace

MoebiusMap normalize_moebius(const std::vector<std::array<double, 3>>& points,
                             double tolerance) {
    if (points.size() < 3)
        throw std::invalid_argument("normalization needs at least three points");
    std::vector<std::array<double, 3>> v = points;
    std::array<std::array<double, 3>, 3> refs{{{1.0, 0.0, 0.0},
                                               {0.0, 1.0, 0.0},
                                               {0.0, 0.0, -1.0}}};
    const auto total = [](const std::vector<std::array<double, 3>>& pts) {
        std::array<double, 3> t{0.0, 0.0, 0.0};
        for (const auto& x : pts)
            for (int i = 0; i < 3; ++i) t[i] += x[i];
        return t;
    };
    const auto length = [](const std::array<double, 3>& t) {
        return std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
    };

    std::array<double, 3> sum = total(v);
    for (int iter = 0; iter < 400 && length(sum) > tolerance; ++iter) {
        const double n = static_cast<double>(v.size());
        double tau = 0.5;
        bool moved = false;
        while (tau > 1e-14) {
            std::array<double, 3> a{tau * sum[0] / n, tau * sum[1] / n, tau * sum[2] / n};
            if (length(a) >= 1.0) {
                tau *= 0.5;
                continue;
            }
            std::vector<std::array<double, 3>> cand(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) cand[i] = ball_translate(a, v[i]);
            const std::array<double, 3> cand_sum = total(cand);
            if (length(cand_sum) < length(sum)) {
                v = std::move(cand);
                sum = cand_sum;
                for (auto& r : refs) r = ball_translate(a, r);
                moved = true;
                break;
            }
            tau *= 0.5;
        }
        if (!moved) break;
    }

    const std::array<ProjectivePoint, 3> src{stereographic_to_plane({1.0, 0.0, 0.0}),
                                             stereographic_to_plane({0.0, 1.0, 0.0}),
                                             stereographic_to_plane({0.0, 0.0, -1.0})};
    const std::array<ProjectivePoint, 3> dst{stereographic_to_plane(refs[0]),
                                             stereographic_to_plane(refs[1]),
                                             stereographic_to_plane(refs[2])};
    return map_through_points(src, dst);
}

std::array<double, 3> apply_to_sphere(const MoebiusMap& m, const std::array<double, 3>& v) {
    return stereographic_to_sphere(m.apply(stereographic_to_plane(v)));
}

}  // namespace cpat
