#pragma once

#include "simplexvol/gram.hpp"
#include "simplexvol/matrix.hpp"
#include "simplexvol/mc.hpp"

namespace simplexvol {

// Bilinear form <x,y> = sum_{i<=n} x_i y_i - x_{n+1} y_{n+1}.
double mink_inner(const Vec& u, const Vec& v);

// Distance between points of the upper hyperboloid: acosh(-<u,v>),
// evaluated in a log1p form that stays accurate near zero.
double dist_hh(const Vec& u, const Vec& v);

// Angle between intersecting hyperplanes with unit spacelike normals u, v:
// arccos(-<u,v>), defined only for |<u,v>| < 1.
double dihedral_angle(const Vec& u, const Vec& v);

// Distance from a hyperboloid point to the hyperplane v^perp: asinh(|<u,v>|).
double dist_point_hyperplane(const Vec& u, const Vec& v);

// Central projection to the open unit ball and back.
Vec klein_embed(const Vec& u);
Vec klein_lift(const Vec& t);

// Columns are unit spacelike inward normals w_i: <w_i, v_j> = 0 for j != i,
// <w_i, v_i> > 0.
Matrix face_normals(const SimplexVertices& verts);

struct InscribedBall {
    Vec center;
    double radius = 0.0;
    double equidistance_residual = 0.0;
};

// Center solves <x, w_i> = s for all faces (equidistant, inside), radius = asinh(s).
InscribedBall inscribed_ball(const SimplexVertices& verts);

Vec point_face_distances(const SimplexVertices& verts, const Vec& x);

struct TailVolumeResult {
    double radius = 0.0;
    VolumeEstimate estimate;
};

// Monte Carlo vol(sigma minus B_R(x)). Calls with the same MCConfig share
// samples across R, so tails are exactly nonincreasing per seed.
TailVolumeResult tail_volume(const SimplexVertices& verts, const Vec& x, double r,
                             const MCConfig& mc);
std::vector<TailVolumeResult> tail_volume_schedule(const SimplexVertices& verts, const Vec& x,
                                                   const Vec& radii, const MCConfig& mc);

// Radius of the ball Omega_p cap H^n: acosh(sqrt((1+p)/(2p))), 0 < p < 1.
double omega_ball_radius(double p);

} // namespace simplexvol
