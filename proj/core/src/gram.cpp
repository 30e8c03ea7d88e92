#include "simplexvol/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "simplexvol/errors.hpp"

namespace simplexvol {

namespace {

constexpr double kPi = std::numbers::pi;

void require_unit_diagonal(const SymMatrix& g, const char* what) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::fabs(g(i, i) - 1.0) > 1e-12)
            throw ValidationError(std::string(what) + ": diagonal entry " + std::to_string(i) +
                                  " is not 1");
}

} // namespace

std::string to_string(GeometryTag tag) {
    switch (tag) {
    case GeometryTag::Spherical: return "spherical";
    case GeometryTag::Hyperbolic: return "hyperbolic";
    case GeometryTag::ClosureBoundary: return "closure_boundary";
    case GeometryTag::Invalid: return "invalid";
    }
    return "invalid";
}

AngleMatrix AngleMatrix::make(const SymMatrix& a) {
    const std::size_t m = a.size();
    if (m < 2) throw ValidationError("angle matrix: side must be at least 2");
    AngleMatrix am;
    am.n = m - 1;
    am.a = a;
    for (std::size_t i = 0; i < m; ++i) {
        if (std::fabs(a(i, i) - kPi) > 1e-12)
            throw ValidationError("angle matrix: diagonal entry " + std::to_string(i) +
                                  " must be pi");
        am.a.set(i, i, kPi);
        for (std::size_t j = i + 1; j < m; ++j)
            if (a(i, j) < 0.0 || a(i, j) > kPi)
                throw ValidationError("angle matrix: entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") outside [0, pi]");
    }
    return am;
}

AngleGramMatrix angle_gram_from_angles(const AngleMatrix& am) {
    const std::size_t m = am.n + 1;
    SymMatrix g(m);
    for (std::size_t i = 0; i < m; ++i) {
        g.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < m; ++j) g.set(i, j, -std::cos(am.a(i, j)));
    }
    return AngleGramMatrix{am.n, g, classify_angle_gram(g).tag};
}

AngleMatrix angles_from_angle_gram(const AngleGramMatrix& a) {
    const std::size_t m = a.n + 1;
    SymMatrix ang(m);
    for (std::size_t i = 0; i < m; ++i) {
        ang.set(i, i, kPi);
        for (std::size_t j = i + 1; j < m; ++j) {
            const double c = -a.g(i, j);
            if (std::fabs(c) > 1.0 + 1e-12)
                throw GeometryError("angle Gram entry outside [-1,1]: dihedral angles undefined");
            ang.set(i, j, std::acos(std::clamp(c, -1.0, 1.0)));
        }
    }
    return AngleMatrix::make(ang);
}

Classification classify_angle_gram(const SymMatrix& g, double tol) {
    require_unit_diagonal(g, "not an angle Gram candidate");
    const std::size_t m = g.size();
    const double t = tol * std::max(1.0, g.max_norm());

    Classification c;
    c.tol = t;
    const EigenDecomposition e = sym_eigen(g);
    c.min_eigenvalue = e.values.back();
    c.max_eigenvalue = e.values.front();
    c.det = determinant(g);
    const SymMatrix ad = adjugate(g);
    c.min_adjugate_entry = ad(0, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            c.min_adjugate_entry = std::min(c.min_adjugate_entry, ad(i, j));

    bool minors_pd = true;
    bool minors_psd = true;
    c.minor_positive_definite.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double sub_min =
            m == 1 ? 1.0 : sym_eigen(principal_submatrix(g, i)).values.back();
        c.minor_positive_definite[i] = sub_min > t;
        minors_pd = minors_pd && sub_min > t;
        minors_psd = minors_psd && sub_min > -t;
    }

    if (c.min_eigenvalue > t) {
        c.tag = GeometryTag::Spherical;
    } else if (c.det < -t && c.min_adjugate_entry > t && minors_pd) {
        c.tag = GeometryTag::Hyperbolic;
    } else if (c.min_eigenvalue > -t ||
               (c.det < t && c.min_adjugate_entry > -t && minors_psd)) {
        c.tag = GeometryTag::ClosureBoundary;
    } else {
        c.tag = GeometryTag::Invalid;
    }
    return c;
}

namespace {

// Shared by both dualities: out = sign * D M^-1 D with D normalizing the diagonal.
DualResult dual_normalize(const SymMatrix& g, double sign, std::size_t n) {
    SymMatrix inv(g.size());
    try {
        inv = inverse_sym(g);
    } catch (const NumericError&) {
        throw GeometryError("degenerate simplex: Gram matrix is singular");
    }
    const std::size_t m = g.size();
    Vec d(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double q = sign * inv(i, i);
        if (!(q > 0.0))
            throw GeometryError(sign > 0 ? "degenerate simplex: dual scaling undefined"
                                         : "not a hyperbolic Gram matrix");
        d[i] = 1.0 / std::sqrt(q);
    }
    SymMatrix out(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < m; ++j) out.set(i, j, sign * d[i] * inv(i, j) * d[j]);
    }
    return DualResult{AngleGramMatrix{n, out, classify_angle_gram(out).tag},
                      DiagonalScaling{std::move(d)}};
}

} // namespace

DualResult spherical_dual(const DistanceGramMatrix& g) {
    require_unit_diagonal(g.g, "spherical Gram");
    if (!is_positive_definite(g.g, 0.0)) throw GeometryError("degenerate simplex");
    return dual_normalize(g.g, 1.0, g.n);
}

DualResult hyperbolic_dual(const DistanceGramMatrix& g) {
    require_unit_diagonal(g.g, "hyperbolic Gram");
    // Distance Grams carry signature (1,n), angle Grams (n,1); the dual
    // G -> -D G^-1 D swaps the two classes, so both orientations are legal.
    const Signature sig = signature_of(g.g);
    if (sig.zero != 0 || (sig.positive != 1 && sig.negative != 1))
        throw GeometryError("not a hyperbolic Gram matrix");
    return dual_normalize(g.g, -1.0, g.n);
}

SimplexVertices vertices_from_spherical_gram(const DistanceGramMatrix& g) {
    require_unit_diagonal(g.g, "spherical Gram");
    if (!is_positive_definite(g.g, 0.0)) throw GeometryError("spherical Gram not positive definite");
    const SymMatrix b = sqrt_spd(g.g);
    SimplexVertices verts{g.n, GeometryTag::Spherical, b.full()};
    // Columns of sqrt(G) reproduce G exactly up to roundoff; pin unit norms.
    for (std::size_t j = 0; j <= g.n; ++j) {
        Vec v = verts.v.col(j);
        const double nrm = euclid_norm(v);
        for (double& x : v) x /= nrm;
        verts.v.set_col(j, v);
    }
    return verts;
}

SimplexVertices vertices_from_hyperbolic_gram(const DistanceGramMatrix& g) {
    require_unit_diagonal(g.g, "hyperbolic Gram");
    const std::size_t m = g.n + 1;
    SymMatrix neg(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) neg.set(i, j, -g.g(i, j));
    const EigenDecomposition e = sym_eigen(neg);
    const double thr = zero_threshold(neg);
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (!(e.values[i] > thr)) throw GeometryError("wrong signature for a hyperbolic Gram");
    if (!(e.values[m - 1] < -thr)) throw GeometryError("wrong signature for a hyperbolic Gram");

    // B^t S B = -G with S = diag(1,...,1,-1): rows scaled by sqrt(|lambda|),
    // the negative eigendirection mapped to the last coordinate.
    Matrix b(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const double s = std::sqrt(std::fabs(e.values[i]));
        for (std::size_t j = 0; j < m; ++j) b(i, j) = s * e.vectors(j, i);
    }
    // All vertices share a sheet (pairwise products <= -1); flip to the upper one.
    if (b(m - 1, 0) < 0.0) b *= -1.0;
    for (std::size_t j = 0; j < m; ++j)
        if (!(b(m - 1, j) > 0.0)) throw GeometryError("sheet-correction failure");
    // Pin <v,v> = -1 exactly against eigen roundoff.
    for (std::size_t j = 0; j < m; ++j) {
        Vec v = b.col(j);
        double q = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) q += v[i] * v[i];
        q -= v[m - 1] * v[m - 1];
        if (!(q < 0.0)) throw GeometryError("sheet-correction failure");
        const double s = 1.0 / std::sqrt(-q);
        for (double& x : v) x *= s;
        b.set_col(j, v);
    }
    return SimplexVertices{g.n, GeometryTag::Hyperbolic, b};
}

LorentzDecomposition decompose_lorentz(const AngleGramMatrix& a) {
    if (a.geometry != GeometryTag::Hyperbolic)
        throw GeometryError("decompose_lorentz: matrix is not Lorentzian");
    const std::size_t m = a.n + 1;
    const EigenDecomposition e = sym_eigen(a.g);
    const double thr = zero_threshold(a.g);
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (!(e.values[i] > thr)) throw GeometryError("decompose_lorentz: signature is not (n,1)");
    if (!(e.values[m - 1] < -thr))
        throw GeometryError("decompose_lorentz: signature is not (n,1)");

    LorentzDecomposition d;
    d.b = quartic_root_b(a.g);
    d.u = e.vectors;
    d.eigenvalues = e.values;
    // The negative eigenvector has entries of one sign; orient it nonnegative
    // so the decomposed simplex meets the upper sheet.
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += d.u(i, m - 1);
    if (sum < 0.0)
        for (std::size_t i = 0; i < m; ++i) d.u(i, m - 1) = -d.u(i, m - 1);

    // The factorization must reconstruct A.
    Matrix s = Matrix::identity(m);
    s(m - 1, m - 1) = -1.0;
    const Matrix bu = d.b.full() * d.u;
    const Matrix recon = bu * s * bu.transposed();
    if ((recon - a.g.full()).max_norm() > 1e-8 * std::max(1.0, a.g.max_norm()))
        throw NumericError("decompose_lorentz: reconstruction residual too large");
    return d;
}

SimplexVertices vertices_from_angle_gram(const AngleGramMatrix& a) {
    if (a.geometry == GeometryTag::Spherical) {
        const DualResult dual = dual_normalize(a.g, 1.0, a.n);
        return vertices_from_spherical_gram(
            DistanceGramMatrix{a.n, dual.gram.g, GeometryTag::Spherical});
    }
    if (a.geometry != GeometryTag::Hyperbolic)
        throw GeometryError("vertex recovery needs a Spherical or Hyperbolic angle Gram");

    const std::size_t m = a.n + 1;
    const LorentzDecomposition d = decompose_lorentz(a);
    const Matrix cols = d.u.transposed() * inverse(d.b.full());
    Matrix b(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        Vec u = cols.col(j);
        double q = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) q += u[i] * u[i];
        q -= u[m - 1] * u[m - 1];
        if (!(q < 0.0)) throw GeometryError("vertex recovery: column is not timelike");
        const double s = 1.0 / std::sqrt(-q);
        for (double& x : u) x *= s;
        b.set_col(j, u);
    }
    if (b(m - 1, 0) < 0.0) b *= -1.0;
    for (std::size_t j = 0; j < m; ++j)
        if (!(b(m - 1, j) > 0.0)) throw GeometryError("sheet-correction failure");
    return SimplexVertices{a.n, GeometryTag::Hyperbolic, b};
}

DistanceGramMatrix distance_gram_from_vertices(const SimplexVertices& verts) {
    const std::size_t m = verts.n + 1;
    SymMatrix g(m);
    for (std::size_t i = 0; i < m; ++i) {
        g.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < m; ++j) {
            const Vec vi = verts.v.col(i), vj = verts.v.col(j);
            if (verts.geometry == GeometryTag::Spherical) {
                g.set(i, j, std::clamp(dot(vi, vj), -1.0, 1.0));
            } else {
                double q = 0.0;
                for (std::size_t k = 0; k + 1 < m; ++k) q += vi[k] * vj[k];
                q -= vi[m - 1] * vj[m - 1];
                g.set(i, j, -q); // cosh of the distance
            }
        }
    }
    return DistanceGramMatrix{verts.n, g, verts.geometry};
}

AngleGramMatrix angle_gram_from_vertices(const SimplexVertices& verts) {
    const DistanceGramMatrix g = distance_gram_from_vertices(verts);
    if (verts.geometry == GeometryTag::Spherical) return spherical_dual(g).gram;
    if (verts.geometry == GeometryTag::Hyperbolic) return hyperbolic_dual(g).gram;
    throw GeometryError("angle Gram needs spherical or hyperbolic vertices");
}

bool adjugate_positivity_check(const SymMatrix& a) {
    const std::size_t m = a.size();
    const double t = kDefaultClassifyTol * std::max(1.0, a.max_norm());
    if (determinant(a) > t) throw GeometryError("lemma hypotheses not met: det(A) > 0");
    for (std::size_t i = 0; i < m; ++i)
        if (!is_positive_definite(principal_submatrix(a, i), t))
            throw GeometryError("lemma hypotheses not met: principal submatrix not PD");
    const SymMatrix ad = adjugate(a);
    double min_abs = std::fabs(ad(0, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) min_abs = std::min(min_abs, std::fabs(ad(i, j)));
    return min_abs > 1e-12;
}

} // namespace simplexvol
