#include "simplexvol/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "simplexvol/errors.hpp"

namespace simplexvol {

double dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw ValidationError("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double euclid_norm(const Vec& x) { return std::sqrt(dot(x, x)); }

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

Matrix Matrix::identity(std::size_t m) {
    Matrix r(m, m);
    for (std::size_t i = 0; i < m; ++i) r(i, i) = 1.0;
    return r;
}

Vec Matrix::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_col(std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transposed() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw ValidationError("matmul: dimension mismatch");
    Matrix r(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += aik * rhs(k, j);
        }
    return r;
}

Vec Matrix::operator*(const Vec& v) const {
    if (cols_ != v.size()) throw ValidationError("matvec: dimension mismatch");
    Vec r(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw ValidationError("matrix subtraction: dimension mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - rhs.a_[i];
    return r;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
}

double Matrix::max_norm() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::fabs(x));
    return m;
}

namespace {

// In-place LU with partial pivoting. Returns the permutation sign,
// 0 if a pivot collapses below the cutoff.
int lu_factor(Matrix& a, std::vector<std::size_t>& perm, double pivot_cutoff) {
    const std::size_t m = a.rows();
    perm.resize(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    int sign = 1;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        double best = std::fabs(a(k, k));
        for (std::size_t i = k + 1; i < m; ++i) {
            const double v = std::fabs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= pivot_cutoff) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < m; ++j) std::swap(a(k, j), a(p, j));
            std::swap(perm[k], perm[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            a(i, k) /= a(k, k);
            const double lik = a(i, k);
            if (lik == 0.0) continue;
            for (std::size_t j = k + 1; j < m; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    return sign;
}

Matrix lu_solve(const Matrix& lu, const std::vector<std::size_t>& perm, const Matrix& b) {
    const std::size_t m = lu.rows();
    Matrix x(m, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        Vec y(m);
        for (std::size_t i = 0; i < m; ++i) {
            double s = b(perm[i], c);
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t ii = m; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t j = ii + 1; j < m; ++j) s -= lu(ii, j) * x(j, c);
            x(ii, c) = s / lu(ii, ii);
        }
    }
    return x;
}

} // namespace

double determinant(const Matrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("determinant: matrix not square");
    if (a.rows() == 0) return 1.0;
    Matrix lu = a;
    std::vector<std::size_t> perm;
    const int sign = lu_factor(lu, perm, 0.0);
    if (sign == 0) return 0.0;
    double det = sign;
    for (std::size_t i = 0; i < a.rows(); ++i) det *= lu(i, i);
    return det;
}

Matrix solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw ValidationError("solve: dimension mismatch");
    Matrix lu = a;
    std::vector<std::size_t> perm;
    const double cutoff = 1e-14 * std::max(1.0, a.max_norm());
    if (lu_factor(lu, perm, cutoff) == 0)
        throw NumericError("solve: matrix numerically singular");
    return lu_solve(lu, perm, b);
}

Vec solve(const Matrix& a, const Vec& b) {
    Matrix rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    Matrix x = solve(a, rhs);
    Vec r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = x(i, 0);
    return r;
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

SymMatrix::SymMatrix(std::size_t m) : m_(m), a_(m * m, 0.0) {}

SymMatrix SymMatrix::identity(std::size_t m) {
    SymMatrix r(m);
    for (std::size_t i = 0; i < m; ++i) r.set(i, i, 1.0);
    return r;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t m = rows.size();
    SymMatrix r(m);
    for (std::size_t i = 0; i < m; ++i)
        if (rows[i].size() != m) throw ValidationError("matrix rows have inconsistent length");
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!std::isfinite(rows[i][j])) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "non-finite entry at (%zu,%zu)", i, j);
                throw ValidationError(buf);
            }
            if (rows[j][i] != rows[i][j]) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "symmetry violation at (%zu,%zu)",
                              std::min(i, j), std::max(i, j));
                throw ValidationError(buf);
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) r.set(i, j, rows[i][j]);
    return r;
}

SymMatrix SymMatrix::symmetrized(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) throw ValidationError("symmetrized: matrix not square");
    const double scale = std::max(1.0, a.max_norm());
    SymMatrix r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) {
            if (std::fabs(a(i, j) - a(j, i)) > tol * scale)
                throw NumericError("symmetrized: asymmetry beyond tolerance");
            r.set(i, j, 0.5 * (a(i, j) + a(j, i)));
        }
    return r;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
    a_[i * m_ + j] = v;
    a_[j * m_ + i] = v;
}

Matrix SymMatrix::full() const {
    Matrix r(m_, m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) r(i, j) = (*this)(i, j);
    return r;
}

double SymMatrix::max_norm() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::fabs(x));
    return m;
}

SymMatrix principal_submatrix(const SymMatrix& a, std::size_t drop) {
    const std::size_t m = a.size();
    if (drop >= m) throw ValidationError("principal_submatrix: index out of range");
    SymMatrix r(m - 1);
    for (std::size_t i = 0, ri = 0; i < m; ++i) {
        if (i == drop) continue;
        for (std::size_t j = i, rj = ri; j < m; ++j) {
            if (j == drop) continue;
            r.set(ri, rj, a(i, j));
            ++rj;
        }
        ++ri;
    }
    return r;
}

double determinant(const SymMatrix& a) { return determinant(a.full()); }

SymMatrix inverse_sym(const SymMatrix& a) { return SymMatrix::symmetrized(inverse(a.full())); }

namespace {

// det of the minor deleting row i and column j; for symmetric input this is
// symmetric in (i, j), so the cofactor transpose below stays exactly symmetric.
double minor_det(const SymMatrix& a, std::size_t i, std::size_t j) {
    const std::size_t m = a.size();
    Matrix sub(m - 1, m - 1);
    for (std::size_t r = 0, rr = 0; r < m; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < m; ++c) {
            if (c == j) continue;
            sub(rr, cc) = a(r, c);
            ++cc;
        }
        ++rr;
    }
    return determinant(sub);
}

SymMatrix cofactor_adjugate(const SymMatrix& a) {
    const std::size_t m = a.size();
    if (m == 1) return SymMatrix::identity(1);
    SymMatrix r(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            r.set(i, j, sign * minor_det(a, i, j));
        }
    return r;
}

} // namespace

SymMatrix adjugate(const SymMatrix& a) {
    const std::size_t m = a.size();
    if (m <= 4) return cofactor_adjugate(a);
    const double det = determinant(a);
    if (std::fabs(det) < 1e-10) return cofactor_adjugate(a); // singular case must work
    Matrix inv = inverse(a.full());
    inv *= det;
    return SymMatrix::symmetrized(inv, 1e-6);
}

} // namespace simplexvol
