#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "simplexvol/eigen.hpp"
#include "simplexvol/errors.hpp"
#include "simplexvol/matrix.hpp"
#include "simplexvol/rng.hpp"

using namespace simplexvol;

namespace {

SymMatrix random_symmetric(std::size_t m, RandomStream& rnd, double scale = 1.0) {
    SymMatrix a(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) a.set(i, j, scale * rnd.uniform(-1.0, 1.0));
    return a;
}

SymMatrix random_spd(std::size_t m, RandomStream& rnd) {
    Matrix b(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) b(i, j) = rnd.uniform(-1.0, 1.0);
    const Matrix g = b.transposed() * b;
    SymMatrix a = SymMatrix::symmetrized(g);
    for (std::size_t i = 0; i < m; ++i) a.set(i, i, a(i, i) + 0.5);
    return a;
}

// Random orthogonal basis from the eigenvectors of a random symmetric matrix.
Matrix random_orthogonal(std::size_t m, RandomStream& rnd) {
    return sym_eigen(random_symmetric(m, rnd)).vectors;
}

SymMatrix with_spectrum(const Matrix& q, const Vec& spectrum) {
    const std::size_t m = spectrum.size();
    Matrix r(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += q(i, k) * spectrum[k] * q(j, k);
            r(i, j) = s;
        }
    return SymMatrix::symmetrized(r, 1e-6);
}

SymMatrix diag(const Vec& d) {
    SymMatrix a(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) a.set(i, i, d[i]);
    return a;
}

} // namespace

TEST_CASE("sym_eigen identity and diagonal") {
    const EigenDecomposition e = sym_eigen(SymMatrix::identity(3));
    for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    const EigenDecomposition d = sym_eigen(diag({5.0, 2.0, -1.0}));
    CHECK(d.values[0] == doctest::Approx(5.0));
    CHECK(d.values[1] == doctest::Approx(2.0));
    CHECK(d.values[2] == doctest::Approx(-1.0));
    // permuted standard basis
    for (std::size_t k = 0; k < 3; ++k) {
        const Vec c = d.vectors.col(k);
        double mx = 0.0;
        for (double x : c) mx = std::max(mx, std::fabs(x));
        CHECK(mx == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sym_eigen reconstruction and orthonormality on random input") {
    RandomStream rnd(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(rnd.u01() * 7);
        const SymMatrix a = random_symmetric(m, rnd, 3.0);
        const EigenDecomposition e = sym_eigen(a);

        const Matrix vtv = e.vectors.transposed() * e.vectors;
        CHECK((vtv - Matrix::identity(m)).max_norm() < 1e-10);

        Matrix lam(m, m);
        for (std::size_t i = 0; i < m; ++i) lam(i, i) = e.values[i];
        const Matrix recon = e.vectors * lam * e.vectors.transposed();
        CHECK((recon - a.full()).max_norm() <= 1e-9 * std::max(1.0, a.max_norm()));

        for (std::size_t i = 0; i + 1 < m; ++i) CHECK(e.values[i] >= e.values[i + 1]);
    }
}

TEST_CASE("eigen continuity under small perturbations") {
    RandomStream rnd(12);
    for (int trial = 0; trial < 25; ++trial) {
        const SymMatrix a = random_symmetric(5, rnd, 2.0);
        SymMatrix b = a;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i; j < 5; ++j)
                b.set(i, j, a(i, j) + 1e-6 * rnd.uniform(-1.0, 1.0));
        const Vec va = sym_eigen(a).values;
        const Vec vb = sym_eigen(b).values;
        for (std::size_t i = 0; i < 5; ++i) CHECK(std::fabs(va[i] - vb[i]) <= 1e-4);
    }
}

TEST_CASE("adjugate small cases") {
    const SymMatrix id = adjugate(SymMatrix::identity(3));
    CHECK((id.full() - Matrix::identity(3)).max_norm() < 1e-14);

    const SymMatrix a = SymMatrix::from_rows({{1.0, 2.0}, {2.0, 1.0}});
    const SymMatrix ad = adjugate(a);
    CHECK(ad(0, 0) == doctest::Approx(1.0));
    CHECK(ad(0, 1) == doctest::Approx(-2.0));
    CHECK(ad(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("adjugate matches Laplace oracle and A ad(A) = det Id") {
    RandomStream rnd(13);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(rnd.u01() * 5);
        const SymMatrix a = random_symmetric(m, rnd);
        const SymMatrix ad = adjugate(a);
        const SymMatrix oracle = oracles::laplace_adjugate(a);
        CHECK((ad.full() - oracle.full()).max_norm() < 1e-9 * std::max(1.0, oracle.max_norm()));

        const double det = determinant(a);
        Matrix want = Matrix::identity(m);
        want *= det;
        const double resid = (a.full() * ad.full() - want).max_norm();
        CHECK(resid <= 1e-8 * (1.0 + std::fabs(det)) * std::max(1.0, a.max_norm()));
    }
}

TEST_CASE("adjugate of singular matrices stays finite and correct") {
    // rank-deficient: Gram of dependent vectors
    RandomStream rnd(14);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix b(5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 4; ++j) b(i, j) = rnd.uniform(-1.0, 1.0);
        for (std::size_t i = 0; i < 5; ++i) b(i, 4) = b(i, 0) + b(i, 1); // dependent column
        const SymMatrix g = SymMatrix::symmetrized(b.transposed() * b);
        CHECK(std::fabs(determinant(g)) < 1e-8);
        const SymMatrix ad = adjugate(g);
        const SymMatrix oracle = oracles::laplace_adjugate(g);
        CHECK((ad.full() - oracle.full()).max_norm() < 1e-8 * std::max(1.0, oracle.max_norm()));
    }
}

TEST_CASE("determinant agrees with eigenvalue product and Laplace") {
    CHECK(determinant(SymMatrix::identity(4)) == doctest::Approx(1.0));
    CHECK(determinant(diag({2.0, 3.0, -1.0})) == doctest::Approx(-6.0));

    RandomStream rnd(15);
    for (int trial = 0; trial < 20; ++trial) {
        const SymMatrix a = random_spd(5, rnd);
        const double det = determinant(a);
        double prod = 1.0;
        for (double v : sym_eigen(a).values) prod *= v;
        CHECK(det == doctest::Approx(prod).epsilon(1e-8));
        CHECK(det == doctest::Approx(oracles::laplace_det(a.full())).epsilon(1e-8));
    }
}

TEST_CASE("is_positive_definite") {
    CHECK(is_positive_definite(SymMatrix::identity(3), 1e-12));
    CHECK_FALSE(is_positive_definite(diag({1.0, 0.0}), 1e-12));
    const double c = std::cos(std::numbers::pi / 6.0);
    const SymMatrix a = SymMatrix::from_rows({{1.0, -c}, {-c, 1.0}});
    CHECK(is_positive_definite(a, 1e-12)); // eigenvalues 1 +- cos(pi/6)
}

TEST_CASE("principal_submatrix") {
    const SymMatrix id3 = SymMatrix::identity(3);
    CHECK((principal_submatrix(id3, 0).full() - Matrix::identity(2)).max_norm() == 0.0);

    const SymMatrix a = SymMatrix::from_rows({{1, 2, 3}, {2, 4, 5}, {3, 5, 6}});
    const SymMatrix sub = principal_submatrix(a, 1);
    CHECK(sub(0, 0) == 1.0);
    CHECK(sub(0, 1) == 3.0);
    CHECK(sub(1, 1) == 6.0);
    CHECK_THROWS_AS(principal_submatrix(a, 3), ValidationError);

    RandomStream rnd(16);
    const SymMatrix r = random_symmetric(6, rnd);
    for (std::size_t drop = 0; drop < 6; ++drop) {
        const SymMatrix s = principal_submatrix(r, drop);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) CHECK(s(i, j) == s(j, i));
    }
}

TEST_CASE("sqrt_spd basic and random") {
    CHECK((sqrt_spd(SymMatrix::identity(3)).full() - Matrix::identity(3)).max_norm() < 1e-12);
    const SymMatrix r = sqrt_spd(diag({4.0, 9.0}));
    CHECK(r(0, 0) == doctest::Approx(2.0));
    CHECK(r(1, 1) == doctest::Approx(3.0));

    RandomStream rnd(17);
    for (int trial = 0; trial < 20; ++trial) {
        const SymMatrix a = random_spd(5, rnd);
        const SymMatrix root = sqrt_spd(a);
        const double scale = std::max(1.0, a.max_norm());
        CHECK((root.full() * root.full() - a.full()).max_norm() <= 1e-8 * scale);
        // commutes with a
        const Matrix ra = root.full() * a.full();
        const Matrix ar = a.full() * root.full();
        CHECK((ra - ar).max_norm() <= 1e-8 * scale);
    }
    CHECK_THROWS_AS(sqrt_spd(diag({1.0, -0.5})), GeometryError);
}

TEST_CASE("quartic_root_b") {
    CHECK((quartic_root_b(SymMatrix::identity(3)).full() - Matrix::identity(3)).max_norm() <
          1e-12);
    const SymMatrix b = quartic_root_b(diag({4.0, -4.0}));
    CHECK(b(0, 0) == doctest::Approx(2.0));
    CHECK(b(1, 1) == doctest::Approx(2.0));

    // hyperbolic pi/6 triangle Gram
    const SymMatrix a = oracles::equiangular_gram(3, std::numbers::pi / 6.0);
    const SymMatrix r = quartic_root_b(a);
    const Matrix b4 = r.full() * r.full() * r.full() * r.full();
    const Matrix a2 = a.full() * a.full();
    CHECK((b4 - a2).max_norm() <= 1e-8);
    CHECK(is_positive_definite(r, 0.0));

    CHECK_THROWS_AS(quartic_root_b(diag({1.0, 0.0})), GeometryError);
}

TEST_CASE("sqrt chain reconstructs A^2 through the quartic root") {
    RandomStream rnd(18);
    for (int trial = 0; trial < 10; ++trial) {
        const SymMatrix a = random_spd(4, rnd);
        const SymMatrix b = sqrt_spd(sqrt_spd(SymMatrix::symmetrized(a.full() * a.full())));
        const Matrix b4 = b.full() * b.full() * b.full() * b.full();
        const Matrix a2 = a.full() * a.full();
        CHECK((b4 - a2).max_norm() <= 1e-7 * std::max(1.0, a2.max_norm()));
    }
}

TEST_CASE("perturb_to_simple_eigenvalues accepts distinct spectra with D = Id") {
    const SimpleSpectrum s = perturb_to_simple_eigenvalues(diag({3.0, 2.0, 1.0}), 0.01, 1);
    for (double d : s.scaling.d) CHECK(d == 1.0);
    CHECK(s.min_gap > 0.5);
}

TEST_CASE("perturb_to_simple_eigenvalues splits the identity") {
    const SimpleSpectrum s = perturb_to_simple_eigenvalues(SymMatrix::identity(2), 0.01, 7);
    double dev = 0.0;
    for (double d : s.scaling.d) dev = std::max(dev, std::fabs(d - 1.0));
    CHECK(dev <= 0.01);
    CHECK(dev > 0.0);
    CHECK(s.min_gap > 0.0);
}

TEST_CASE("perturb_to_simple_eigenvalues on 100 random semi-definite inputs") {
    RandomStream rnd(19);
    const double eps = 0.01;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 3 + static_cast<std::size_t>(rnd.u01() * 4);
        const Matrix q = random_orthogonal(m, rnd);
        Vec spec(m, 0.0);
        // ranks and repeats on purpose
        const std::size_t rank = 1 + static_cast<std::size_t>(rnd.u01() * m);
        for (std::size_t i = 0; i < rank; ++i)
            spec[i] = (rnd.u01() < 0.5 && i > 0) ? spec[i - 1] : rnd.uniform(0.2, 3.0);
        const bool lorentzian = rnd.u01() < 0.4;
        if (lorentzian) spec[rank - 1] = -rnd.uniform(0.2, 3.0);
        const SymMatrix a = with_spectrum(q, spec);

        const SimpleSpectrum s = perturb_to_simple_eigenvalues(a, eps, 100 + trial);
        double dev = 0.0;
        for (double d : s.scaling.d) dev = std::max(dev, std::fabs(d - 1.0));
        CHECK(dev <= eps);
        CHECK(s.min_gap > 0.0);

        // verify with the eigensolver: rank preserved, nonzero gaps positive
        SymMatrix dad(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                dad.set(i, j, s.scaling.d[i] * a(i, j) * s.scaling.d[j]);
        const Vec values = sym_eigen(dad).values;
        const double thr = zero_threshold(dad);
        Vec nonzero;
        for (double v : values)
            if (std::fabs(v) > thr) nonzero.push_back(v);
        const Vec base = sym_eigen(a).values;
        std::size_t base_rank = 0;
        for (double v : base)
            if (std::fabs(v) > zero_threshold(a)) ++base_rank;
        CHECK(nonzero.size() == base_rank);
        for (std::size_t i = 0; i + 1 < nonzero.size(); ++i)
            CHECK(std::fabs(nonzero[i] - nonzero[i + 1]) > 0.0);
    }
}

TEST_CASE("perturb_to_simple_eigenvalues rejects wrong signatures") {
    CHECK_THROWS_AS(perturb_to_simple_eigenvalues(diag({1.0, -1.0, -1.0}), 0.01, 1),
                    GeometryError);
    CHECK_THROWS_AS(perturb_to_simple_eigenvalues(SymMatrix::identity(2), -1.0, 1),
                    ValidationError);
}

TEST_CASE("SymMatrix validation") {
    CHECK_THROWS_WITH_AS(SymMatrix::from_rows({{1.0, 2.0}, {3.0, 1.0}}),
                         "symmetry violation at (0,1)", ValidationError);
    CHECK_THROWS_AS(SymMatrix::from_rows({{1.0, 2.0}}), ValidationError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(SymMatrix::from_rows({{1.0, inf}, {inf, 1.0}}), ValidationError);
}

TEST_CASE("solve and inverse") {
    RandomStream rnd(20);
    const SymMatrix a = random_spd(6, rnd);
    const Matrix inv = inverse(a.full());
    CHECK((a.full() * inv - Matrix::identity(6)).max_norm() < 1e-10);
    CHECK_THROWS_AS(inverse(Matrix(3, 3)), NumericError);
}
