#pragma once

#include <functional>

#include "simplexvol/gram.hpp"
#include "simplexvol/mc.hpp"

namespace simplexvol {

// Integrates over a compact hyperbolic simplex by uniform sampling of its
// Klein-model Euclidean image with the density weight (1 - |t|^2)^-(n+1)/2.
//
// Vertices whose Klein radius exceeds 1 - near_ideal_cutoff get a dedicated
// corner stratum (barycentric coordinate >= 1/2) with half the budget, which
// keeps the weight's heavy tail under control for nearly ideal simplices.
class KleinIntegrator {
public:
    explicit KleinIntegrator(const SimplexVertices& verts, double near_ideal_cutoff = 1e-3);

    // f maps a hyperboloid point to a bounded factor (1 if absent).
    VolumeEstimate integrate(const MCConfig& mc,
                             const std::function<double(const Vec&)>& f = {}) const;

    // One sweep, many level sets: estimate[k] integrates 1{scalar(p) > levels[k]}.
    // Identical samples across k, so results are coupled (monotone per seed).
    std::vector<VolumeEstimate> integrate_levels(const MCConfig& mc,
                                                 const std::function<double(const Vec&)>& scalar,
                                                 const Vec& levels) const;

    double euclidean_volume() const { return euclid_volume_; }
    const std::vector<std::size_t>& near_ideal_vertices() const { return near_ideal_; }

private:
    std::size_t n_ = 0;
    std::vector<Vec> klein_;
    double euclid_volume_ = 0.0;
    std::vector<std::size_t> near_ideal_;
};

} // namespace simplexvol
