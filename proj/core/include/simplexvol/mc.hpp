#pragma once

#include <cstdint>
#include <string>

namespace simplexvol {

enum class VolumeMethod {
    OrthantMC,     // Gaussian orthant probability
    KleinMC,       // projective-disk simplex sampling
    ConeMC,        // orthant integral of the adjugate form
    GaussBonnet2D, // analytic, triangles only
    Analytic,      // other closed forms
};

std::string to_string(VolumeMethod m);

struct MCConfig {
    std::uint64_t seed = 1;
    std::uint64_t samples = 1'000'000;
    std::uint64_t chunk = 65'536;
};

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
    VolumeMethod method = VolumeMethod::Analytic;
    std::uint64_t samples = 0;

    // Relative error beyond 10% marks an estimate unusable for verdicts.
    bool variance_overflow() const { return std_error > 0.1 * value + 1e-6; }
};

} // namespace simplexvol
