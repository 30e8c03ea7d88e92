#include "simplexvol/klein_mc.hpp"

#include <cmath>

#include "simplexvol/errors.hpp"
#include "simplexvol/hyperbolic.hpp"
#include "simplexvol/rng.hpp"

namespace simplexvol {

namespace {

double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

// Uniform barycentric coordinates via normalized exponential spacings.
void sample_barycentric(const SampleStream& s, std::uint32_t lane0, std::size_t m, Vec& bary) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        bary[i] = -std::log(s.u01(lane0 + static_cast<std::uint32_t>(i)));
        total += bary[i];
    }
    for (std::size_t i = 0; i < m; ++i) bary[i] /= total;
}

struct Stratum {
    std::uint64_t stream = 0; // chunk-key offset
    std::uint64_t samples = 0;
    double volume = 0.0; // Euclidean volume it covers
};

} // namespace

KleinIntegrator::KleinIntegrator(const SimplexVertices& verts, double near_ideal_cutoff) {
    if (verts.geometry != GeometryTag::Hyperbolic)
        throw GeometryError("Klein integration needs hyperbolic vertices");
    n_ = verts.n;
    const std::size_t m = n_ + 1;
    klein_.reserve(m);
    for (std::size_t j = 0; j < m; ++j) klein_.push_back(klein_embed(verts.v.col(j)));

    Matrix edges(n_, n_);
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t i = 0; i < n_; ++i) edges(i, j - 1) = klein_[j][i] - klein_[0][i];
    euclid_volume_ = std::fabs(determinant(edges)) / factorial(n_);
    if (!(euclid_volume_ > 0.0)) throw GeometryError("degenerate simplex: zero Klein volume");

    for (std::size_t j = 0; j < m; ++j)
        if (euclid_norm(klein_[j]) > 1.0 - near_ideal_cutoff) near_ideal_.push_back(j);
}

// Shared sampling core. Strata: [0] the whole simplex when no vertex is near
// ideal; otherwise [0] the union of near-ideal corner cells {bary_i >= 1/2}
// (disjoint contractions of the simplex, half the budget) and [1] the
// rejection-sampled remainder. visit(stratum, weight, t) accumulates.
template <typename Visit>
void klein_sample_loop(const std::vector<Vec>& klein, std::size_t n, double euclid_volume,
                       const std::vector<std::size_t>& near_ideal, const MCConfig& mc,
                       std::vector<Stratum>& strata, const Visit& visit) {
    if (mc.samples < 1) throw ValidationError("mc samples must be positive");
    if (mc.chunk < 1) throw ValidationError("mc chunk must be positive");
    const std::size_t m = n + 1;
    const double power = 0.5 * static_cast<double>(m);

    if (near_ideal.empty()) {
        strata.push_back(Stratum{0, mc.samples, euclid_volume});
    } else {
        const double cell = std::pow(0.5, static_cast<double>(n));
        const double vol_corners = euclid_volume * cell * static_cast<double>(near_ideal.size());
        const double vol_rest = euclid_volume - vol_corners;
        // corner cells may tile the whole simplex (n = 1): no remainder then
        const bool has_rest = vol_rest > 1e-9 * euclid_volume;
        const std::uint64_t n_corner = has_rest ? mc.samples / 2 : mc.samples;
        strata.push_back(Stratum{1ULL << 32, n_corner, vol_corners});
        if (has_rest) strata.push_back(Stratum{2ULL << 32, mc.samples - n_corner, vol_rest});
    }

    Vec bary(m), t(n);
    for (std::size_t si = 0; si < strata.size(); ++si) {
        const Stratum& st = strata[si];
        const bool corners = !near_ideal.empty() && si == 0;
        const bool rest = !near_ideal.empty() && si == 1;
        const std::uint64_t chunks = (st.samples + mc.chunk - 1) / mc.chunk;
        for (std::uint64_t c = 0; c < chunks; ++c) {
            const std::uint64_t len =
                c + 1 < chunks ? mc.chunk : st.samples - mc.chunk * (chunks - 1);
            for (std::uint64_t i = 0; i < len; ++i) {
                const SampleStream s(mc.seed, st.stream + c, i);
                if (corners) {
                    const auto pick = static_cast<std::size_t>(
                        s.u01(0) * static_cast<double>(near_ideal.size()));
                    const std::size_t vtx = near_ideal[std::min(pick, near_ideal.size() - 1)];
                    sample_barycentric(s, 1, m, bary);
                    for (std::size_t j = 0; j < m; ++j) bary[j] *= 0.5;
                    bary[vtx] += 0.5;
                } else if (rest) {
                    bool accepted = false;
                    for (std::uint32_t attempt = 0; attempt < 1000 && !accepted; ++attempt) {
                        sample_barycentric(s, attempt * static_cast<std::uint32_t>(m), m, bary);
                        accepted = true;
                        for (std::size_t vtx : near_ideal)
                            if (bary[vtx] >= 0.5) accepted = false;
                    }
                    if (!accepted) throw NumericError("rejection sampling stalled");
                } else {
                    sample_barycentric(s, 0, m, bary);
                }

                for (std::size_t d = 0; d < n; ++d) {
                    double x = 0.0;
                    for (std::size_t j = 0; j < m; ++j) x += bary[j] * klein[j][d];
                    t[d] = x;
                }
                double r2 = 0.0;
                for (double x : t) r2 += x * x;
                const double denom = 1.0 - r2;
                if (!(denom > 0.0)) throw NumericError("Klein sample escaped the unit ball");
                visit(si, std::pow(denom, -power), t);
            }
        }
    }
}

VolumeEstimate KleinIntegrator::integrate(const MCConfig& mc,
                                          const std::function<double(const Vec&)>& f) const {
    std::vector<Stratum> strata;
    std::vector<Accumulator> acc(2);
    klein_sample_loop(klein_, n_, euclid_volume_, near_ideal_, mc, strata,
                      [&](std::size_t si, double w, const Vec& t) {
                          acc[si].add(f ? w * f(klein_lift(t)) : w);
                      });
    double value = 0.0, var = 0.0;
    for (std::size_t si = 0; si < strata.size(); ++si) {
        value += strata[si].volume * acc[si].mean();
        const double se = strata[si].volume * acc[si].std_error();
        var += se * se;
    }
    return VolumeEstimate{value, std::sqrt(var), VolumeMethod::KleinMC, mc.samples};
}

std::vector<VolumeEstimate>
KleinIntegrator::integrate_levels(const MCConfig& mc,
                                  const std::function<double(const Vec&)>& scalar,
                                  const Vec& levels) const {
    std::vector<Stratum> strata;
    std::vector<std::vector<Accumulator>> acc(2, std::vector<Accumulator>(levels.size()));
    klein_sample_loop(klein_, n_, euclid_volume_, near_ideal_, mc, strata,
                      [&](std::size_t si, double w, const Vec& t) {
                          const double s = scalar(klein_lift(t));
                          for (std::size_t k = 0; k < levels.size(); ++k)
                              acc[si][k].add(s > levels[k] ? w : 0.0);
                      });
    std::vector<VolumeEstimate> out(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
        double value = 0.0, var = 0.0;
        for (std::size_t si = 0; si < strata.size(); ++si) {
            value += strata[si].volume * acc[si][k].mean();
            const double se = strata[si].volume * acc[si][k].std_error();
            var += se * se;
        }
        out[k] = VolumeEstimate{value, std::sqrt(var), VolumeMethod::KleinMC, mc.samples};
    }
    return out;
}

} // namespace simplexvol
