#include "simplexvol/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "simplexvol/errors.hpp"
#include "simplexvol/hyperbolic.hpp"
#include "simplexvol/klein_mc.hpp"
#include "simplexvol/rng.hpp"

namespace simplexvol {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(VolumeMethod m) {
    switch (m) {
    case VolumeMethod::OrthantMC: return "OrthantMC";
    case VolumeMethod::KleinMC: return "KleinMC";
    case VolumeMethod::ConeMC: return "ConeMC";
    case VolumeMethod::GaussBonnet2D: return "GaussBonnet2D";
    case VolumeMethod::Analytic: return "Analytic";
    }
    return "Analytic";
}

double mu(unsigned n) {
    double even = std::sqrt(kPi) / 2.0; // mu_0
    double odd = 0.5;                   // mu_1
    if (n == 0) return even;
    if (n == 1) return odd;
    for (unsigned k = 2; k <= n; ++k) {
        const double next = 0.5 * (k - 1) * (k % 2 == 0 ? even : odd);
        (k % 2 == 0 ? even : odd) = next;
    }
    return n % 2 == 0 ? even : odd;
}

double sphere_volume(unsigned n) {
    return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

VolumeEstimate orthant_probability(const SymMatrix& covariance, const MCConfig& mc) {
    if (mc.samples < 1) throw ValidationError("mc samples must be positive");
    if (mc.chunk < 1) throw ValidationError("mc chunk must be positive");
    if (!is_positive_definite(covariance, 0.0))
        throw GeometryError("orthant_probability: matrix not positive definite");
    const SymMatrix root = sqrt_spd(covariance);
    const std::size_t m = covariance.size();

    const std::uint64_t chunks = (mc.samples + mc.chunk - 1) / mc.chunk;
    Accumulator acc;
    Vec g(m);
    for (std::uint64_t c = 0; c < chunks; ++c) {
        Accumulator local;
        const std::uint64_t len = c + 1 < chunks ? mc.chunk : mc.samples - mc.chunk * (chunks - 1);
        for (std::uint64_t i = 0; i < len; ++i) {
            const SampleStream s(mc.seed, c, i);
            for (std::size_t k = 0; k < m; ++k) g[k] = s.gaussian(static_cast<std::uint32_t>(k));
            bool inside = true;
            for (std::size_t r = 0; r < m && inside; ++r) {
                double z = 0.0;
                for (std::size_t k = 0; k < m; ++k) z += root(r, k) * g[k];
                inside = z >= 0.0;
            }
            local.add(inside ? 1.0 : 0.0);
        }
        acc.combine(local);
    }
    return VolumeEstimate{acc.mean(), acc.std_error(), VolumeMethod::OrthantMC, mc.samples};
}

namespace {

// Cone route: V = mu_n^-1 sqrt(|det ad(G*)|) int_orthant e^{-y^t ad(G*) y} dy.
// ad(G*) has positive entries on the Lorentzian class, so the integrand is
// dominated by the product of its diagonal half-Gaussians; importance weights
// against that product proposal stay bounded by construction.
VolumeEstimate cone_volume(const AngleGramMatrix& a, const MCConfig& mc) {
    const std::size_t m = a.n + 1;
    const SymMatrix ad = adjugate(a.g);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!(ad(i, j) > 0.0))
                throw GeometryError("cone sampling needs a positive adjugate");

    double log_pref = 0.0; // log( sqrt|det ad| * prod_i sqrt(pi / M_ii) / 2 )
    for (std::size_t i = 0; i < m; ++i) log_pref += 0.5 * std::log(kPi / ad(i, i)) - std::log(2.0);
    const double det_a = determinant(a.g);
    log_pref += 0.5 * static_cast<double>(m - 1) * std::log(std::fabs(det_a));
    const double prefactor = std::exp(log_pref) / mu(static_cast<unsigned>(a.n));

    const std::uint64_t chunks = (mc.samples + mc.chunk - 1) / mc.chunk;
    Accumulator acc;
    Vec z(m);
    for (std::uint64_t c = 0; c < chunks; ++c) {
        Accumulator local;
        const std::uint64_t len = c + 1 < chunks ? mc.chunk : mc.samples - mc.chunk * (chunks - 1);
        for (std::uint64_t i = 0; i < len; ++i) {
            const SampleStream s(mc.seed, c, i);
            for (std::size_t k = 0; k < m; ++k)
                z[k] = std::fabs(s.gaussian(static_cast<std::uint32_t>(k))) /
                       std::sqrt(2.0 * ad(k, k));
            double cross = 0.0;
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t k = r + 1; k < m; ++k) cross += ad(r, k) * z[r] * z[k];
            local.add(std::exp(-2.0 * cross));
        }
        acc.combine(local);
    }
    return VolumeEstimate{prefactor * acc.mean(), prefactor * acc.std_error(),
                          VolumeMethod::ConeMC, mc.samples};
}

} // namespace

VolumeEstimate spherical_volume(const AngleGramMatrix& a, const MCConfig& mc) {
    if (a.geometry != GeometryTag::Spherical)
        throw GeometryError("spherical_volume: angle Gram is not spherical");
    const VolumeEstimate p = orthant_probability(a.g, mc);
    const double scale = std::pow(kPi, 0.5 * (a.n + 1)) / mu(static_cast<unsigned>(a.n));
    return VolumeEstimate{scale * p.value, scale * p.std_error, VolumeMethod::OrthantMC,
                          p.samples};
}

VolumeEstimate klein_volume(const SimplexVertices& verts, const MCConfig& mc) {
    return KleinIntegrator(verts).integrate(mc);
}

VolumeEstimate hyperbolic_volume(const AngleGramMatrix& a, const MCConfig& mc,
                                 VolumeMethod method) {
    if (a.geometry != GeometryTag::Hyperbolic)
        throw GeometryError("hyperbolic_volume: angle Gram is not hyperbolic");
    if (method == VolumeMethod::ConeMC) return cone_volume(a, mc);
    if (method != VolumeMethod::KleinMC)
        throw ValidationError("hyperbolic_volume: method must be KleinMC or ConeMC");
    return klein_volume(vertices_from_angle_gram(a), mc);
}

VolumeEstimate simplex_volume(const AngleGramMatrix& a, const MCConfig& mc) {
    if (a.geometry == GeometryTag::Spherical) return spherical_volume(a, mc);
    if (a.geometry == GeometryTag::Hyperbolic) return hyperbolic_volume(a, mc);
    throw GeometryError("simplex_volume: matrix is not an interior angle Gram");
}

VolumeEstimate f_function(const SymMatrix& a_raw, const MCConfig& mc) {
    // F(A) = F(DAD) for positive diagonal D: normalize to a unit diagonal and
    // classify there. Positive diagonal entries are forced by either class.
    const std::size_t m = a_raw.size();
    SymMatrix a(m);
    for (std::size_t i = 0; i < m; ++i)
        if (!(a_raw(i, i) > 0.0))
            throw GeometryError("f_function: diagonal entries must be positive");
    for (std::size_t i = 0; i < m; ++i) {
        a.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < m; ++j)
            a.set(i, j, a_raw(i, j) / std::sqrt(a_raw(i, i) * a_raw(j, j)));
    }
    const Classification cls = classify_angle_gram(a);
    if (cls.tag == GeometryTag::Spherical) {
        // F(A) = pi^(m/2) P(N(0, A) in orthant): ad(A)^-1 is A up to positive scale.
        const VolumeEstimate p = orthant_probability(a, mc);
        const double scale = std::pow(kPi, 0.5 * m);
        return VolumeEstimate{scale * p.value, scale * p.std_error, VolumeMethod::OrthantMC,
                              p.samples};
    }
    if (cls.tag == GeometryTag::Hyperbolic) {
        const AngleGramMatrix ag{m - 1, a, cls.tag};
        const VolumeEstimate v = hyperbolic_volume(ag, mc, VolumeMethod::KleinMC);
        const double m_n = mu(static_cast<unsigned>(m - 1));
        return VolumeEstimate{m_n * v.value, m_n * v.std_error, v.method, v.samples};
    }
    throw GeometryError("f_function: defined on interior matrices only; "
                        "approach boundary matrices along paths");
}

VolumeEstimate gauss_bonnet_area(const AngleGramMatrix& a) {
    if (a.n != 2) throw ValidationError("gauss_bonnet_area: triangles only");
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            const double c = std::clamp(-a.g(i, j), -1.0, 1.0);
            sum += std::acos(c);
        }
    double area = 0.0;
    if (a.geometry == GeometryTag::Spherical)
        area = sum - kPi;
    else if (a.geometry == GeometryTag::Hyperbolic)
        area = kPi - sum;
    else
        throw GeometryError("gauss_bonnet_area: needs a spherical or hyperbolic triangle");
    return VolumeEstimate{area, 0.0, VolumeMethod::GaussBonnet2D, 0};
}

namespace {

// zeta(s) by Euler-Maclaurin; plenty for s >= 2.
double zeta(double s) {
    const double k = 64.0;
    double sum = 0.0;
    for (int i = 1; i < 64; ++i) sum += std::pow(i, -s);
    sum += std::pow(k, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(k, -s) +
           s * std::pow(k, -s - 1.0) / 12.0 -
           s * (s + 1.0) * (s + 2.0) * std::pow(k, -s - 3.0) / 720.0;
    return sum;
}

const Vec& zeta_even_table() {
    static const Vec table = [] {
        Vec t;
        for (int n = 1; n <= 40; ++n) t.push_back(zeta(2.0 * n));
        return t;
    }();
    return table;
}

} // namespace

double lobachevsky(double theta) {
    // Odd and pi-periodic: reduce to [0, pi/2] where the log-sine series
    // converges geometrically (ratio (theta/pi)^2 <= 1/4).
    double x = std::remainder(theta, kPi);
    const double sign = x < 0.0 ? -1.0 : 1.0;
    x = std::fabs(x);
    if (x == 0.0) return 0.0;
    const Vec& z = zeta_even_table();
    double series = 0.0;
    const double q = (x / kPi) * (x / kPi);
    double qn = 1.0;
    for (std::size_t n = 1; n <= z.size(); ++n) {
        qn *= q;
        const double term = z[n - 1] * qn / (n * (2.0 * n + 1.0));
        series += term;
        if (term < 1e-17) break;
    }
    return sign * (x - x * std::log(2.0 * x) + x * series);
}

double ideal_tetrahedron_volume(double alpha, double beta, double gamma) {
    if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0))
        throw ValidationError("ideal tetrahedron angles must be positive");
    if (std::fabs(alpha + beta + gamma - kPi) > 1e-9)
        throw ValidationError("ideal tetrahedron angles must sum to pi");
    return lobachevsky(alpha) + lobachevsky(beta) + lobachevsky(gamma);
}

Vec hyperbolic_triangle_angles(const Vec& a, const Vec& b, const Vec& c) {
    const double la = dist_hh(b, c);
    const double lb = dist_hh(a, c);
    const double lc = dist_hh(a, b);
    if (!(la > 0.0 && lb > 0.0 && lc > 0.0)) throw GeometryError("degenerate face");
    const auto angle = [](double opp, double s1, double s2) {
        const double cosv =
            (std::cosh(s1) * std::cosh(s2) - std::cosh(opp)) / (std::sinh(s1) * std::sinh(s2));
        return std::acos(std::clamp(cosv, -1.0, 1.0));
    };
    return Vec{angle(la, lb, lc), angle(lb, la, lc), angle(lc, la, lb)};
}

bool thurston_face_bound_check(const SimplexVertices& verts, const MCConfig& mc) {
    if (verts.n != 3 || verts.geometry != GeometryTag::Hyperbolic)
        throw ValidationError("thurston_face_bound_check: hyperbolic 3-simplices only");
    const VolumeEstimate vol = klein_volume(verts, mc);
    for (std::size_t drop = 0; drop < 4; ++drop) {
        Vec tri[3];
        std::size_t k = 0;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != drop) tri[k++] = verts.v.col(j);
        const Vec angles = hyperbolic_triangle_angles(tri[0], tri[1], tri[2]);
        const double face_area = kPi - (angles[0] + angles[1] + angles[2]);
        if (vol.value > 0.5 * face_area + 3.0 * vol.std_error) return false;
    }
    return true;
}

} // namespace simplexvol
