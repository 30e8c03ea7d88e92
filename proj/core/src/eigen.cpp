#include "simplexvol/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "simplexvol/errors.hpp"
#include "simplexvol/rng.hpp"

namespace simplexvol {

namespace {

double max_offdiag(const Matrix& w) {
    double m = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = i + 1; j < w.cols(); ++j) m = std::max(m, std::fabs(w(i, j)));
    return m;
}

void jacobi_rotate(Matrix& w, Matrix& v, std::size_t p, std::size_t q) {
    const double apq = w(p, q);
    if (apq == 0.0) return;
    const double tau = (w(q, q) - w(p, p)) / (2.0 * apq);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const std::size_t m = w.rows();
    for (std::size_t k = 0; k < m; ++k) {
        const double wkp = w(k, p), wkq = w(k, q);
        w(k, p) = c * wkp - s * wkq;
        w(k, q) = s * wkp + c * wkq;
    }
    for (std::size_t k = 0; k < m; ++k) {
        const double wpk = w(p, k), wqk = w(q, k);
        w(p, k) = c * wpk - s * wqk;
        w(q, k) = s * wpk + c * wqk;
    }
    w(p, q) = 0.0;
    w(q, p) = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

} // namespace

EigenDecomposition sym_eigen(const SymMatrix& a) {
    const std::size_t m = a.size();
    Matrix w = a.full();
    Matrix v = Matrix::identity(m);
    const double scale = std::max(1.0, a.max_norm());
    const double stop = 1e-15 * scale;
    const int max_sweeps = 64;
    int sweep = 0;
    for (; sweep < max_sweeps && max_offdiag(w) > stop; ++sweep)
        for (std::size_t p = 0; p + 1 < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q)
                if (std::fabs(w(p, q)) > stop * 1e-2) jacobi_rotate(w, v, p, q);
    if (sweep == max_sweeps && max_offdiag(w) > 1e-10 * scale)
        throw NumericError("sym_eigen: Jacobi sweeps exhausted, off-diagonal residual " +
                           std::to_string(max_offdiag(w)));

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return w(i, i) > w(j, j); });

    EigenDecomposition e;
    e.values.resize(m);
    e.vectors = Matrix(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        e.values[k] = w(order[k], order[k]);
        Vec column = v.col(order[k]);
        // Deterministic orientation: largest-magnitude entry positive.
        std::size_t imax = 0;
        for (std::size_t i = 1; i < m; ++i)
            if (std::fabs(column[i]) > std::fabs(column[imax])) imax = i;
        if (column[imax] < 0.0)
            for (double& x : column) x = -x;
        e.vectors.set_col(k, column);
    }
    return e;
}

double zero_threshold(const SymMatrix& a) { return 1e-10 * std::max(1.0, a.max_norm()); }

bool is_positive_definite(const SymMatrix& a, double tol) {
    const EigenDecomposition e = sym_eigen(a);
    return e.values.back() > tol;
}

Signature signature_of(const SymMatrix& a) {
    const EigenDecomposition e = sym_eigen(a);
    const double thr = zero_threshold(a);
    Signature s;
    for (double v : e.values) {
        if (v > thr)
            ++s.positive;
        else if (v < -thr)
            ++s.negative;
        else
            ++s.zero;
    }
    return s;
}

namespace {

SymMatrix spectral_map(const EigenDecomposition& e, const Vec& mapped) {
    const std::size_t m = e.values.size();
    Matrix r(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += e.vectors(i, k) * mapped[k] * e.vectors(j, k);
            r(i, j) = s;
            r(j, i) = s;
        }
    return SymMatrix::symmetrized(r);
}

} // namespace

SymMatrix sqrt_spd(const SymMatrix& a) {
    const EigenDecomposition e = sym_eigen(a);
    const double thr = zero_threshold(a);
    Vec roots(e.values.size());
    for (std::size_t i = 0; i < e.values.size(); ++i) {
        if (e.values[i] < -thr) throw GeometryError("sqrt_spd: not semi-positive definite");
        roots[i] = std::sqrt(std::max(0.0, e.values[i]));
    }
    return spectral_map(e, roots);
}

SymMatrix quartic_root_b(const SymMatrix& a) {
    if (std::fabs(determinant(a)) <= 1e-12) throw GeometryError("quartic_root_b: rank-deficient");
    const EigenDecomposition e = sym_eigen(a);
    Vec roots(e.values.size());
    for (std::size_t i = 0; i < e.values.size(); ++i) roots[i] = std::sqrt(std::fabs(e.values[i]));
    return spectral_map(e, roots);
}

namespace {

SymMatrix scale_by_diagonal(const SymMatrix& a, const Vec& d) {
    SymMatrix r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) r.set(i, j, d[i] * a(i, j) * d[j]);
    return r;
}

// Minimum distance between eigenvalues of magnitude above the zero rule;
// +inf when fewer than two nonzero eigenvalues remain.
double nonzero_eigen_gap(const Vec& values, double thr) {
    Vec nz;
    for (double v : values)
        if (std::fabs(v) > thr) nz.push_back(v);
    if (nz.size() < 2) return std::numeric_limits<double>::infinity();
    std::sort(nz.begin(), nz.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < nz.size(); ++i) gap = std::min(gap, nz[i + 1] - nz[i]);
    return gap;
}

int nonzero_count(const Vec& values, double thr) {
    int c = 0;
    for (double v : values)
        if (std::fabs(v) > thr) ++c;
    return c;
}

} // namespace

SimpleSpectrum perturb_to_simple_eigenvalues(const SymMatrix& a, double eps, std::uint64_t seed) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ValidationError("perturb_to_simple_eigenvalues: eps must be in (0,1)");
    const std::size_t m = a.size();
    const Signature sig = signature_of(a);
    if (sig.negative > 1)
        throw GeometryError("perturb_to_simple_eigenvalues: signature is not (k,0) or (k,1)");

    const EigenDecomposition base = sym_eigen(a);
    const double base_thr = zero_threshold(a);
    const int rank = nonzero_count(base.values, base_thr);

    RandomStream rnd(seed);
    const int max_attempts = 64;
    double best_gap = 0.0;
    for (int attempt = 0; attempt <= max_attempts; ++attempt) {
        Vec d(m, 1.0);
        if (attempt > 0)
            for (std::size_t i = 0; i < m; ++i) d[i] = rnd.uniform(1.0 - eps, 1.0 + eps);
        const SymMatrix dad = attempt == 0 ? a : scale_by_diagonal(a, d);
        const EigenDecomposition e = attempt == 0 ? base : sym_eigen(dad);
        const double thr = zero_threshold(dad);
        if (nonzero_count(e.values, thr) != rank) continue; // rank must be preserved
        const double gap = nonzero_eigen_gap(e.values, thr);
        best_gap = std::max(best_gap, std::min(gap, 1e30));
        if (gap > thr) return SimpleSpectrum{DiagonalScaling{d}, gap};
    }
    throw PerturbationError("perturb_to_simple_eigenvalues: no valid scaling found, best gap " +
                                std::to_string(best_gap),
                            best_gap);
}

} // namespace simplexvol
