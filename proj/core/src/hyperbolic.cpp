#include "simplexvol/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "simplexvol/errors.hpp"
#include "simplexvol/klein_mc.hpp"

namespace simplexvol {

namespace {

void require_on_hyperboloid(const Vec& u, double tol = 1e-8) {
    const double q = mink_inner(u, u);
    if (std::fabs(q + 1.0) > tol || u.back() <= 0.0)
        throw GeometryError("point is not on the upper hyperboloid");
}

void require_unit_spacelike(const Vec& u, double tol = 1e-8) {
    if (std::fabs(mink_inner(u, u) - 1.0) > tol)
        throw GeometryError("normal is not a unit spacelike vector");
}

} // namespace

double mink_inner(const Vec& u, const Vec& v) {
    if (u.size() != v.size() || u.empty()) throw ValidationError("mink_inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) s += u[i] * v[i];
    return s - u.back() * v.back();
}

double dist_hh(const Vec& u, const Vec& v) {
    require_on_hyperboloid(u);
    require_on_hyperboloid(v);
    // acosh(q) = log1p(x + sqrt(x(x+2))), x = q - 1: no cancellation near 0.
    const double x = std::max(0.0, -mink_inner(u, v) - 1.0);
    return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

double dihedral_angle(const Vec& u, const Vec& v) {
    require_unit_spacelike(u);
    require_unit_spacelike(v);
    const double q = mink_inner(u, v);
    if (std::fabs(q) >= 1.0) throw GeometryError("hyperplanes do not intersect");
    return std::acos(-q);
}

double dist_point_hyperplane(const Vec& u, const Vec& v) {
    require_on_hyperboloid(u);
    require_unit_spacelike(v);
    return std::asinh(std::fabs(mink_inner(u, v)));
}

Vec klein_embed(const Vec& u) {
    require_on_hyperboloid(u);
    Vec t(u.size() - 1);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) t[i] = u[i] / u.back();
    return t;
}

Vec klein_lift(const Vec& t) {
    double r2 = 0.0;
    for (double x : t) r2 += x * x;
    if (r2 >= 1.0) throw GeometryError("ideal or exterior point");
    const double s = 1.0 / std::sqrt(1.0 - r2);
    Vec u(t.size() + 1);
    for (std::size_t i = 0; i < t.size(); ++i) u[i] = s * t[i];
    u[t.size()] = s;
    return u;
}

Matrix face_normals(const SimplexVertices& verts) {
    if (verts.geometry != GeometryTag::Hyperbolic)
        throw GeometryError("face normals need hyperbolic vertices");
    const std::size_t m = verts.n + 1;
    Matrix w(m, m);
    try {
        w = inverse(verts.v.transposed());
    } catch (const NumericError&) {
        throw GeometryError("degenerate vertex set");
    }
    for (std::size_t j = 0; j < m; ++j) w(m - 1, j) = -w(m - 1, j); // w = S B^-t
    for (std::size_t j = 0; j < m; ++j) {
        Vec wj = w.col(j);
        const double q = mink_inner(wj, wj);
        if (!(q > 0.0)) throw GeometryError("degenerate vertex set");
        const double s = 1.0 / std::sqrt(q);
        for (double& x : wj) x *= s;
        w.set_col(j, wj);
    }
    return w;
}

InscribedBall inscribed_ball(const SimplexVertices& verts) {
    const Matrix w = face_normals(verts);
    const std::size_t m = verts.n + 1;
    // Equidistance is linear before normalization: y = S W^-t 1.
    Vec y;
    try {
        y = solve(w.transposed(), Vec(m, 1.0));
    } catch (const NumericError&) {
        throw GeometryError("singular normal system");
    }
    y.back() = -y.back();
    const double q = mink_inner(y, y);
    if (!(q < 0.0)) throw GeometryError("singular normal system");
    const double s = 1.0 / std::sqrt(-q);
    Vec center(m);
    for (std::size_t i = 0; i < m; ++i) center[i] = s * y[i];
    if (!(center.back() > 0.0)) throw GeometryError("singular normal system");

    InscribedBall ball;
    ball.center = center;
    ball.radius = std::asinh(s);
    double resid = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        resid = std::max(resid, std::fabs(dist_point_hyperplane(center, w.col(i)) - ball.radius));
    ball.equidistance_residual = resid;
    return ball;
}

Vec point_face_distances(const SimplexVertices& verts, const Vec& x) {
    const Matrix w = face_normals(verts);
    Vec d(verts.n + 1);
    for (std::size_t i = 0; i <= verts.n; ++i) d[i] = dist_point_hyperplane(x, w.col(i));
    return d;
}

std::vector<TailVolumeResult> tail_volume_schedule(const SimplexVertices& verts, const Vec& x,
                                                   const Vec& radii, const MCConfig& mc) {
    require_on_hyperboloid(x);
    for (double r : radii)
        if (r < 0.0) throw ValidationError("tail radius must be nonnegative");

    const KleinIntegrator integ(verts);
    // One sweep over shared samples: the indicator coupling across the level
    // sets makes the column exactly nonincreasing per seed. R = 0 keeps the
    // full-volume convention since distances are almost surely positive.
    const auto ests =
        integ.integrate_levels(mc, [&](const Vec& p) { return dist_hh(p, x); }, radii);
    std::vector<TailVolumeResult> out;
    out.reserve(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k)
        out.push_back(TailVolumeResult{radii[k], ests[k]});
    return out;
}

TailVolumeResult tail_volume(const SimplexVertices& verts, const Vec& x, double r,
                             const MCConfig& mc) {
    return tail_volume_schedule(verts, x, Vec{r}, mc).front();
}

double omega_ball_radius(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("omega_ball_radius: p must be in (0,1)");
    const double c = std::sqrt((1.0 + p) / (2.0 * p));
    return std::acosh(c);
}

} // namespace simplexvol
