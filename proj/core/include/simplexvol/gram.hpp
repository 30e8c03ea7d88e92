#pragma once

#include <string>
#include <vector>

#include "simplexvol/eigen.hpp"
#include "simplexvol/matrix.hpp"

namespace simplexvol {

enum class GeometryTag { Spherical, Hyperbolic, ClosureBoundary, Invalid };

std::string to_string(GeometryTag tag);

inline constexpr double kDefaultClassifyTol = 1e-9;

// Dihedral angle matrix [a_ij], radians, a_ii = pi.
struct AngleMatrix {
    std::size_t n = 0; // simplex dimension; matrix side is n + 1
    SymMatrix a;

    static AngleMatrix make(const SymMatrix& a); // validates range and diagonal
};

// G* = [-cos a_ij]: unit diagonal, classification carried along.
struct AngleGramMatrix {
    std::size_t n = 0;
    SymMatrix g;
    GeometryTag geometry = GeometryTag::Invalid;
};

struct Classification {
    GeometryTag tag = GeometryTag::Invalid;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double det = 0.0;
    double min_adjugate_entry = 0.0;
    std::vector<bool> minor_positive_definite; // one verdict per dropped index
    double tol = 0.0;                          // absolute tolerance actually used
};

// G = [cos d_ij] (spherical) or [cosh d_ij] (hyperbolic).
struct DistanceGramMatrix {
    std::size_t n = 0;
    SymMatrix g;
    GeometryTag geometry = GeometryTag::Invalid;
};

// Columns of v are the vertex vectors: unit vectors on S^n, or points on the
// upper hyperboloid sheet (<v,v> = -1, last coordinate positive).
struct SimplexVertices {
    std::size_t n = 0;
    GeometryTag geometry = GeometryTag::Invalid;
    Matrix v;
};

AngleGramMatrix angle_gram_from_angles(const AngleMatrix& am);
AngleMatrix angles_from_angle_gram(const AngleGramMatrix& a);

// Angle-Gram class membership test with diagnostics. `tol` is relative to
// max(1, ||g||_max); boundary membership is tolerance-defined.
Classification classify_angle_gram(const SymMatrix& g, double tol = kDefaultClassifyTol);

struct DualResult {
    AngleGramMatrix gram;
    DiagonalScaling scaling;
};

// G* = D G^-1 D with D fixed by the unit diagonal. Involutive after renormalization.
DualResult spherical_dual(const DistanceGramMatrix& g);
// G* = -D G^-1 D; requires -G of signature (n,1) and positive diag of -G^-1.
DualResult hyperbolic_dual(const DistanceGramMatrix& g);

SimplexVertices vertices_from_spherical_gram(const DistanceGramMatrix& g);
SimplexVertices vertices_from_hyperbolic_gram(const DistanceGramMatrix& g);
SimplexVertices vertices_from_angle_gram(const AngleGramMatrix& a);

DistanceGramMatrix distance_gram_from_vertices(const SimplexVertices& verts);
AngleGramMatrix angle_gram_from_vertices(const SimplexVertices& verts);

// A = B U S U^t B with B = quartic_root_b(A), U the orthonormal eigenbasis in
// descending order (the negative-eigenvalue vector last, oriented entrywise
// nonnegative), S = diag(1,...,1,-1).
struct LorentzDecomposition {
    SymMatrix b;
    Matrix u;
    Vec eigenvalues; // descending; exactly one negative
};

LorentzDecomposition decompose_lorentz(const AngleGramMatrix& a);

// Hypotheses: all principal (m-1)x(m-1) submatrices positive definite and
// det(A) <= 0. True iff every adjugate entry stays away from zero.
bool adjugate_positivity_check(const SymMatrix& a);

} // namespace simplexvol
