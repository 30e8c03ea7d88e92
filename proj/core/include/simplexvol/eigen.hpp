#pragma once

#include <cstdint>

#include "simplexvol/matrix.hpp"

namespace simplexvol {

// values sorted descending; vectors' column i is the unit eigenvector of values[i].
struct EigenDecomposition {
    Vec values;
    Matrix vectors;
};

// Cyclic Jacobi. Unconditionally convergent for symmetric input at these sizes,
// orthonormal vectors by construction.
EigenDecomposition sym_eigen(const SymMatrix& a);

bool is_positive_definite(const SymMatrix& a, double tol);

// Shared rank rule: |lambda| <= 1e-10 * max(1, ||A||_max) counts as zero.
double zero_threshold(const SymMatrix& a);

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};
Signature signature_of(const SymMatrix& a);

// Unique semi-positive definite square root; eigenvalues below -zero_threshold reject.
SymMatrix sqrt_spd(const SymMatrix& a);

// B = sqrt(sqrt(A^2)) for nonsingular symmetric A: eigenvalues sqrt(|lambda_i|)
// in the eigenbasis of A.
SymMatrix quartic_root_b(const SymMatrix& a);

struct DiagonalScaling {
    Vec d;
};

struct SimpleSpectrum {
    DiagonalScaling scaling;
    double min_gap = 0.0; // smallest distance between nonzero eigenvalues of DAD
};

// Finds a positive diagonal D with |D - Id| <= eps such that all nonzero
// eigenvalues of DAD are simple. Random retries near the identity; failures
// form a measure-zero variety, so a handful of draws suffices.
SimpleSpectrum perturb_to_simple_eigenvalues(const SymMatrix& a, double eps, std::uint64_t seed);

} // namespace simplexvol
