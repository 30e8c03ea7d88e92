#pragma once

#include "simplexvol/gram.hpp"
#include "simplexvol/mc.hpp"

namespace simplexvol {

// mu_k = int_0^inf x^k e^{-x^2} dx via the recurrence mu_k = (k-1)/2 * mu_{k-2}.
double mu(unsigned n);

// Surface volume of the unit n-sphere.
double sphere_volume(unsigned n);

// P(Z >= 0 componentwise) for Z ~ N(0, covariance); sampled as sqrt(cov) * g.
VolumeEstimate orthant_probability(const SymMatrix& covariance, const MCConfig& mc);

// F(A) = sqrt(|det ad(A)|) * int_{orthant} e^{-x^t ad(A) x} dx, defined on the
// positive-definite and Lorentzian angle-Gram classes. Equals mu_n times the
// simplex volume in both geometries; boundary matrices are rejected (limits
// along paths only).
VolumeEstimate f_function(const SymMatrix& a, const MCConfig& mc);

VolumeEstimate spherical_volume(const AngleGramMatrix& a, const MCConfig& mc);
VolumeEstimate hyperbolic_volume(const AngleGramMatrix& a, const MCConfig& mc,
                                 VolumeMethod method = VolumeMethod::KleinMC);

// Dispatch on the classification tag.
VolumeEstimate simplex_volume(const AngleGramMatrix& a, const MCConfig& mc);

// Volume from vertex coordinates (hyperbolic simplices).
VolumeEstimate klein_volume(const SimplexVertices& verts, const MCConfig& mc);

// Analytic area of a triangle from its angle Gram: (sum - pi) spherical,
// (pi - sum) hyperbolic. Oracle for n == 2 paths.
VolumeEstimate gauss_bonnet_area(const AngleGramMatrix& a);

// Lobachevsky function: -int_0^theta log|2 sin t| dt; odd, pi-periodic.
double lobachevsky(double theta);

// Ideal-tetrahedron volume Lambda(a) + Lambda(b) + Lambda(g), a + b + g = pi.
double ideal_tetrahedron_volume(double alpha, double beta, double gamma);

// Interior angles, via the hyperbolic law of cosines, of the triangle spanned
// by three hyperboloid points. Oracle support for faces of 3-simplices.
Vec hyperbolic_triangle_angles(const Vec& a, const Vec& b, const Vec& c);

// vol_3(sigma) <= 1/2 vol_2(face) + 3 SE for every codimension-1 face.
bool thurston_face_bound_check(const SimplexVertices& verts, const MCConfig& mc);

} // namespace simplexvol
