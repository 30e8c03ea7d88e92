#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "simplexvol/gram.hpp"
#include "simplexvol/mc.hpp"

namespace simplexvol {

enum class PathSpacing { Geometric, Linear };
enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

// Segment A(t) = (1-t) A0 + t A1 from an interior angle Gram toward a
// unit-diagonal boundary target, probed at every scheduled t.
struct MatrixPath {
    AngleGramMatrix a0;
    SymMatrix a1;
    Vec schedule; // strictly increasing, last < 1
};

SymMatrix path_matrix(const MatrixPath& path, double t);

// Geometric spacing concentrates steps near t = 1: 1 - t_k = (1 - t0) rho^k.
MatrixPath build_path(const AngleGramMatrix& a0, const SymMatrix& a1, std::size_t steps,
                      PathSpacing spacing, double t0 = 0.0, double t_max = 0.999,
                      double classify_tol = kDefaultClassifyTol);

struct DegenerationStep {
    double t = 0.0;
    GeometryTag tag = GeometryTag::Invalid;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double det = 0.0;
    double min_adjugate = 0.0;
    VolumeEstimate volume;
    double succ_diff = 0.0;    // |V_k - V_{k-1}|, 0 for the first step
    double succ_diff_se = 0.0; // combined standard error of the pair
};

struct DegenerationReport {
    std::vector<DegenerationStep> steps;
    double cauchy_threshold = 0.0;
    double max_last_quartile_diff = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

// Volumes per scheduled step plus a Cauchy verdict on the last quartile of
// successive differences. Variance-overflowed steps make the report
// inconclusive rather than failed.
DegenerationReport run_continuity_experiment(const MatrixPath& path, const MCConfig& mc,
                                             double cauchy_threshold = 0.02,
                                             double classify_tol = kDefaultClassifyTol);

// Two sequences of spherical triangles whose edge lengths converge to
// (0, pi, pi) with different limit angles alpha != alpha'. Distance Grams
// converge to the same matrix; volumes converge to different lunes 2*alpha.
struct LengthDiscontinuityReport {
    double alpha = 0.0;
    double alpha_prime = 0.0;
    double final_gram_max_diff = 0.0; // between the two final distance Grams
    VolumeEstimate volume_alpha;
    VolumeEstimate volume_alpha_prime;
    double volume_gap = 0.0;
    double gap_std_error = 0.0;
    double expected_gap = 0.0; // |2 alpha - 2 alpha'|
};

LengthDiscontinuityReport length_discontinuity_demo(double alpha = std::numbers::pi / 2,
                                                    double alpha_prime = std::numbers::pi / 4,
                                                    const MCConfig& mc = {});

struct ApexBoundReport {
    std::size_t total = 0;
    std::size_t passed = 0;
    double max_distance_excess = 0.0;     // max over cases of (distance - bound)
    double min_containment_coeff = 0.0;   // most negative barycentric coefficient seen
};

// Random Lorentzian angle Grams: checks e_{n+1} lies in the decomposed simplex
// and its face-hyperplane distances obey acosh(sqrt(1 + lambda_{n+1})).
ApexBoundReport apex_bound_experiment(std::size_t samples, std::size_t n, std::uint64_t seed);

// Rejection-sampled interior angle Gram of the requested geometry.
AngleGramMatrix random_angle_gram(std::size_t n, GeometryTag geometry, std::uint64_t seed);

// Named boundary targets for degeneration paths.
SymMatrix lune_boundary_matrix(double alpha);
SymMatrix euclidean_boundary_matrix(const AngleGramMatrix& a0); // n == 2
SymMatrix ideal_boundary_matrix(std::size_t n); // regular ideal, off-diagonal -1/(n-1)

} // namespace simplexvol
