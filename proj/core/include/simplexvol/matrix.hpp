#pragma once

#include <cstddef>
#include <vector>

namespace simplexvol {

using Vec = std::vector<double>;

double dot(const Vec& x, const Vec& y);
double euclid_norm(const Vec& x);

// Dense row-major matrix. Sizes in this library stay small (side <= ~12),
// everything is plain O(m^3) with partial pivoting.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Vec operator*(const Vec& v) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix& operator*=(double s);

    double max_norm() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// LU with partial pivoting behind all of these; `solve` and `inverse`
// throw NumericError on pivots below 1e-14 * max_norm.
double determinant(const Matrix& a);
Vec solve(const Matrix& a, const Vec& b);
Matrix solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

// Symmetric matrix with finite entries; symmetry is exact by construction
// (set() writes both triangles, from_rows rejects asymmetric input).
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t m);
    static SymMatrix identity(std::size_t m);
    // Exact symmetry and finiteness required; names the first violated entry.
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
    // Accepts roundoff-level asymmetry from matrix products and averages it away.
    static SymMatrix symmetrized(const Matrix& a, double tol = 1e-8);

    std::size_t size() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }
    void set(std::size_t i, std::size_t j, double v);

    Matrix full() const;
    double max_norm() const;

private:
    std::size_t m_ = 0;
    std::vector<double> a_;
};

SymMatrix principal_submatrix(const SymMatrix& a, std::size_t drop);
double determinant(const SymMatrix& a);
SymMatrix inverse_sym(const SymMatrix& a);
// Transpose of the cofactor matrix; defined (and used) for singular input too.
SymMatrix adjugate(const SymMatrix& a);

} // namespace simplexvol
