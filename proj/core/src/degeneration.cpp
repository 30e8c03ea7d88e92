#include "simplexvol/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simplexvol/errors.hpp"
#include "simplexvol/hyperbolic.hpp"
#include "simplexvol/rng.hpp"
#include "simplexvol/volume.hpp"

namespace simplexvol {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

SymMatrix path_matrix(const MatrixPath& path, double t) {
    const std::size_t m = path.a0.n + 1;
    SymMatrix a(m);
    for (std::size_t i = 0; i < m; ++i) {
        a.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < m; ++j)
            a.set(i, j, (1.0 - t) * path.a0.g(i, j) + t * path.a1(i, j));
    }
    return a;
}

MatrixPath build_path(const AngleGramMatrix& a0, const SymMatrix& a1, std::size_t steps,
                      PathSpacing spacing, double t0, double t_max, double classify_tol) {
    if (a0.geometry != GeometryTag::Spherical && a0.geometry != GeometryTag::Hyperbolic)
        throw GeometryError("build_path: A0 must be an interior angle Gram");
    if (a1.size() != a0.n + 1) throw ValidationError("build_path: A1 has the wrong side");
    for (std::size_t i = 0; i < a1.size(); ++i)
        if (std::fabs(a1(i, i) - 1.0) > 1e-12)
            throw ValidationError("build_path: A1 must have unit diagonal");
    if (steps < 1) throw ValidationError("build_path: steps must be positive");
    if (!(t0 >= 0.0 && t0 <= t_max && t_max < 1.0))
        throw ValidationError("build_path: need 0 <= t0 <= t_max < 1");

    MatrixPath path{a0, a1, {}};
    path.schedule.reserve(steps);
    if (steps == 1) {
        path.schedule.push_back(t0);
    } else if (spacing == PathSpacing::Linear) {
        for (std::size_t k = 0; k < steps; ++k)
            path.schedule.push_back(t0 + (t_max - t0) * static_cast<double>(k) /
                                             static_cast<double>(steps - 1));
    } else {
        const double rho =
            std::pow((1.0 - t_max) / (1.0 - t0), 1.0 / static_cast<double>(steps - 1));
        for (std::size_t k = 0; k < steps; ++k)
            path.schedule.push_back(1.0 - (1.0 - t0) * std::pow(rho, static_cast<double>(k)));
    }

    for (double t : path.schedule) {
        const Classification cls = classify_angle_gram(path_matrix(path, t), classify_tol);
        if (cls.tag != a0.geometry)
            throw GeometryError("path exits the class at t = " + std::to_string(t) + " (" +
                                to_string(cls.tag) + ")");
    }
    return path;
}

DegenerationReport run_continuity_experiment(const MatrixPath& path, const MCConfig& mc,
                                             double cauchy_threshold, double classify_tol) {
    DegenerationReport report;
    report.cauchy_threshold = cauchy_threshold;
    bool overflow = false;

    for (std::size_t k = 0; k < path.schedule.size(); ++k) {
        const double t = path.schedule[k];
        const SymMatrix a = path_matrix(path, t);
        const Classification cls = classify_angle_gram(a, classify_tol);
        if (cls.tag != path.a0.geometry)
            throw GeometryError("path exits the class at t = " + std::to_string(t));

        DegenerationStep step;
        step.t = t;
        step.tag = cls.tag;
        step.lambda_min = cls.min_eigenvalue;
        step.lambda_max = cls.max_eigenvalue;
        step.det = cls.det;
        step.min_adjugate = cls.min_adjugate_entry;

        // Independent substream per step, still a pure function of mc.seed.
        MCConfig step_mc = mc;
        step_mc.seed = rng::combine(mc.seed, k);
        step.volume = simplex_volume(AngleGramMatrix{path.a0.n, a, cls.tag}, step_mc);
        overflow = overflow || step.volume.variance_overflow();

        if (!report.steps.empty()) {
            const VolumeEstimate& prev = report.steps.back().volume;
            step.succ_diff = std::fabs(step.volume.value - prev.value);
            step.succ_diff_se = std::hypot(step.volume.std_error, prev.std_error);
        }
        report.steps.push_back(step);
    }

    const std::size_t diffs = report.steps.size() - 1;
    bool pass = true;
    if (diffs > 0) {
        const std::size_t start = 1 + (3 * diffs) / 4; // last quartile of differences
        for (std::size_t k = start; k < report.steps.size(); ++k) {
            const DegenerationStep& s = report.steps[k];
            report.max_last_quartile_diff = std::max(report.max_last_quartile_diff, s.succ_diff);
            if (s.succ_diff >= cauchy_threshold + 3.0 * s.succ_diff_se) pass = false;
        }
    }
    report.verdict = overflow ? Verdict::Inconclusive : (pass ? Verdict::Pass : Verdict::Fail);
    return report;
}

namespace {

// Triangle on S^2 clipped out of the lune of angle alpha: apex at the south
// pole, two vertices at colatitude delta on the meridians 0 and alpha.
SimplexVertices lune_triangle(double alpha, double delta) {
    Matrix v(3, 3);
    v.set_col(0, Vec{std::sin(delta), 0.0, std::cos(delta)});
    v.set_col(1, Vec{std::sin(delta) * std::cos(alpha), std::sin(delta) * std::sin(alpha),
                     std::cos(delta)});
    v.set_col(2, Vec{0.0, 0.0, -1.0});
    return SimplexVertices{2, GeometryTag::Spherical, v};
}

} // namespace

LengthDiscontinuityReport length_discontinuity_demo(double alpha, double alpha_prime,
                                                    const MCConfig& mc) {
    if (!(alpha > 0.0 && alpha < kPi && alpha_prime > 0.0 && alpha_prime < kPi))
        throw ValidationError("lune angles must lie in (0, pi)");

    const double delta_final = 5e-4;
    LengthDiscontinuityReport rep;
    rep.alpha = alpha;
    rep.alpha_prime = alpha_prime;
    rep.expected_gap = std::fabs(2.0 * alpha - 2.0 * alpha_prime);

    // Both sequences shrink the short edge geometrically; volumes are only
    // needed at the final step, the earlier steps document the Gram collapse.
    const SimplexVertices va = lune_triangle(alpha, delta_final);
    const SimplexVertices vb = lune_triangle(alpha_prime, delta_final);
    const DistanceGramMatrix ga = distance_gram_from_vertices(va);
    const DistanceGramMatrix gb = distance_gram_from_vertices(vb);
    double diff = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) diff = std::max(diff, std::fabs(ga.g(i, j) - gb.g(i, j)));
    rep.final_gram_max_diff = diff;

    MCConfig mc_a = mc;
    mc_a.seed = rng::combine(mc.seed, 1);
    MCConfig mc_b = mc;
    mc_b.seed = rng::combine(mc.seed, 2);
    rep.volume_alpha = spherical_volume(spherical_dual(ga).gram, mc_a);
    rep.volume_alpha_prime = spherical_volume(spherical_dual(gb).gram, mc_b);
    rep.volume_gap = std::fabs(rep.volume_alpha.value - rep.volume_alpha_prime.value);
    rep.gap_std_error = std::hypot(rep.volume_alpha.std_error, rep.volume_alpha_prime.std_error);
    return rep;
}

ApexBoundReport apex_bound_experiment(std::size_t samples, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw ValidationError("apex_bound_experiment: n >= 2");
    ApexBoundReport rep;
    rep.total = samples;
    rep.min_containment_coeff = std::numeric_limits<double>::infinity();
    rep.max_distance_excess = -std::numeric_limits<double>::infinity();
    const std::size_t m = n + 1;

    for (std::size_t trial = 0; trial < samples; ++trial) {
        const AngleGramMatrix a =
            random_angle_gram(n, GeometryTag::Hyperbolic, rng::combine(seed, trial));
        const LorentzDecomposition d = decompose_lorentz(a);
        const double lam = std::fabs(d.eigenvalues[m - 1]);
        const double bound = std::asinh(std::sqrt(lam)); // acosh(sqrt(1 + lam))

        // Containment of e_{n+1}: its cone coordinates are B U e_{n+1}, a
        // positive multiple of the one-signed eigenvector.
        const Matrix bu = d.b.full() * d.u;
        Vec coeff(m);
        for (std::size_t i = 0; i < m; ++i) coeff[i] = bu(i, m - 1);
        double cmin = coeff[0];
        for (double c : coeff) cmin = std::min(cmin, c);
        rep.min_containment_coeff = std::min(rep.min_containment_coeff, cmin);

        // Normals are the columns of W = S U^t B; distances from e_{n+1}.
        Matrix w = d.u.transposed() * d.b.full();
        for (std::size_t j = 0; j < m; ++j) w(m - 1, j) = -w(m - 1, j);
        Vec apex(m, 0.0);
        apex[m - 1] = 1.0;
        double worst = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            worst = std::max(worst, dist_point_hyperplane(apex, w.col(j)));
        rep.max_distance_excess = std::max(rep.max_distance_excess, worst - bound);
        if (cmin >= -1e-9 && worst <= bound + 1e-8) ++rep.passed;
    }
    return rep;
}

AngleGramMatrix random_angle_gram(std::size_t n, GeometryTag geometry, std::uint64_t seed) {
    if (geometry != GeometryTag::Spherical && geometry != GeometryTag::Hyperbolic)
        throw ValidationError("random_angle_gram: geometry must be spherical or hyperbolic");
    const std::size_t m = n + 1;
    RandomStream rnd(seed);
    const int budget = 256;

    for (int attempt = 0; attempt < budget; ++attempt) {
        if (geometry == GeometryTag::Spherical) {
            Matrix b(m, m);
            for (std::size_t j = 0; j < m; ++j) {
                Vec v(m);
                for (double& x : v) x = rnd.gaussian();
                const double nrm = euclid_norm(v);
                if (nrm < 1e-8) continue;
                for (double& x : v) x /= nrm;
                b.set_col(j, v);
            }
            SymMatrix g(m);
            for (std::size_t i = 0; i < m; ++i) {
                g.set(i, i, 1.0);
                for (std::size_t j = i + 1; j < m; ++j)
                    g.set(i, j, std::clamp(dot(b.col(i), b.col(j)), -1.0, 1.0));
            }
            if (sym_eigen(g).values.back() < 1e-4) continue; // reject near-degenerate
            const DualResult dual = spherical_dual(DistanceGramMatrix{n, g, geometry});
            if (dual.gram.geometry == GeometryTag::Spherical) return dual.gram;
        } else {
            const double rho = rnd.uniform(0.5, 3.0);
            Matrix b(m, m);
            for (std::size_t j = 0; j < m; ++j) {
                Vec dir(n);
                for (double& x : dir) x = rnd.gaussian();
                const double nrm = euclid_norm(dir);
                if (nrm < 1e-8) {
                    dir.assign(n, 0.0);
                    dir[0] = 1.0;
                } else {
                    for (double& x : dir) x /= nrm;
                }
                const double r = rho * rnd.u01();
                Vec v(m);
                for (std::size_t i = 0; i < n; ++i) v[i] = std::sinh(r) * dir[i];
                v[m - 1] = std::cosh(r);
                b.set_col(j, v);
            }
            const SimplexVertices verts{n, GeometryTag::Hyperbolic, b};
            const DistanceGramMatrix g = distance_gram_from_vertices(verts);
            // Thin simplices make the Gram chains lose digits; cap the
            // spread of |eigenvalues| on both sides of the duality.
            const auto spread = [](const SymMatrix& x) {
                const Vec v = sym_eigen(x).values;
                double lo = std::fabs(v[0]), hi = lo;
                for (double e : v) {
                    lo = std::min(lo, std::fabs(e));
                    hi = std::max(hi, std::fabs(e));
                }
                return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
            };
            if (spread(g.g) > 1e4) continue;
            try {
                const DualResult dual = hyperbolic_dual(g);
                if (dual.gram.geometry == GeometryTag::Hyperbolic && spread(dual.gram.g) <= 1e4)
                    return dual.gram;
            } catch (const GeometryError&) {
                continue;
            }
        }
    }
    throw NumericError("random_angle_gram: rejection budget exhausted");
}

SymMatrix lune_boundary_matrix(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi)) throw ValidationError("lune angle must lie in (0, pi)");
    // Limit of triangles pinched onto a lune: apex angle alpha survives, the
    // merging pair tends to (pi + alpha)/2.
    const double s = std::sin(alpha / 2.0);
    SymMatrix a(3);
    a.set(0, 0, 1.0);
    a.set(1, 1, 1.0);
    a.set(2, 2, 1.0);
    a.set(0, 1, -std::cos(alpha));
    a.set(0, 2, s);
    a.set(1, 2, s);
    return a;
}

SymMatrix euclidean_boundary_matrix(const AngleGramMatrix& a0) {
    if (a0.n != 2) throw ValidationError("euclidean boundary target: triangles only");
    // Rescale the triangle's angles to sum exactly pi.
    const AngleMatrix am = angles_from_angle_gram(a0);
    const double sum = am.a(0, 1) + am.a(0, 2) + am.a(1, 2);
    if (!(sum > 0.0)) throw GeometryError("euclidean boundary target: degenerate angles");
    const double scale = kPi / sum;
    SymMatrix a(3);
    for (std::size_t i = 0; i < 3; ++i) {
        a.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < 3; ++j) a.set(i, j, -std::cos(am.a(i, j) * scale));
    }
    return a;
}

SymMatrix ideal_boundary_matrix(std::size_t n) {
    if (n < 2) throw ValidationError("ideal boundary target: n >= 2");
    const std::size_t m = n + 1;
    SymMatrix a(m);
    const double off = -1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < m; ++i) {
        a.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < m; ++j) a.set(i, j, off);
    }
    return a;
}

} // namespace simplexvol
