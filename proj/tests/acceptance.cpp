// Acceptance suite: one line per criterion, fixed seeds, pinned tolerances.
// Criterion 13 reruns 1-12 and compares every reported number bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "simplexvol/degeneration.hpp"
#include "simplexvol/eigen.hpp"
#include "simplexvol/errors.hpp"
#include "simplexvol/hyperbolic.hpp"
#include "simplexvol/klein_mc.hpp"
#include "simplexvol/rng.hpp"
#include "simplexvol/volume.hpp"

using namespace simplexvol;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSamples = 1'000'000;

struct CriterionResult {
    bool pass = false;
    std::string summary;
    std::string digest;
};

class Digest {
public:
    void add(double x) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g\n", x);
        text_ += buf;
    }
    void add(const std::string& s) { text_ += s + "\n"; }
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

std::string fmt(double x, int prec = 6) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    return buf;
}

AngleGramMatrix equiangular(std::size_t n, double angle) {
    SymMatrix g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        g.set(i, i, 1.0);
        for (std::size_t j = i + 1; j <= n; ++j) g.set(i, j, -std::cos(angle));
    }
    return AngleGramMatrix{n, g, classify_angle_gram(g).tag};
}

SymMatrix random_symmetric(std::size_t m, RandomStream& rnd) {
    SymMatrix a(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) a.set(i, j, rnd.uniform(-1.0, 1.0));
    return a;
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

// 1. spherical_volume(Id_{n+1}) = vol(S^n) / 2^{n+1} for n in {1,2,3}
CriterionResult criterion_orthant_identity() {
    CriterionResult r;
    Digest d;
    bool pass = true;
    std::string parts;
    for (std::size_t n : {1, 2, 3}) {
        const AngleGramMatrix id{n, SymMatrix::identity(n + 1), GeometryTag::Spherical};
        const MCConfig mc{101 + n, kSamples, 65'536};
        const VolumeEstimate v = spherical_volume(id, mc);
        const double target = sphere_volume(static_cast<unsigned>(n)) / std::pow(2.0, n + 1.0);
        const double err = std::fabs(v.value - target);
        pass = pass && err <= 3.0 * v.std_error && err <= 0.005 * target;
        d.add(v.value);
        d.add(v.std_error);
        parts += " n=" + std::to_string(n) + ": " + fmt(v.value) + " vs " + fmt(target) + ";";
    }
    r.pass = pass;
    r.summary = parts;
    r.digest = d.text();
    return r;
}

// 2. 25 + 25 random triangles vs Gauss-Bonnet, 3 SE each, aggregate MAD < 0.5%
CriterionResult criterion_gauss_bonnet() {
    CriterionResult r;
    Digest d;
    bool pass = true;
    double sum_dev = 0.0, sum_exact = 0.0;
    int within = 0;
    for (int i = 0; i < 50; ++i) {
        const bool spherical = i < 25;
        const AngleGramMatrix a = random_angle_gram(
            2, spherical ? GeometryTag::Spherical : GeometryTag::Hyperbolic, 20000 + i);
        const MCConfig mc{25000ULL + i, kSamples, 65'536};
        const VolumeEstimate v = simplex_volume(a, mc);
        const double exact = gauss_bonnet_area(a).value;
        const double dev = std::fabs(v.value - exact);
        if (dev <= 3.0 * v.std_error) ++within;
        sum_dev += dev;
        sum_exact += exact;
        d.add(v.value);
    }
    const double aggregate = sum_dev / sum_exact;
    pass = within == 50 && aggregate < 0.005;
    d.add(aggregate);
    r.pass = pass;
    r.summary = " " + std::to_string(within) + "/50 within 3 SE, aggregate MAD " +
                fmt(100.0 * aggregate) + "%";
    r.digest = d.text();
    return r;
}

// 3. bivariate orthant probabilities across the rho grid
CriterionResult criterion_orthant_engine() {
    CriterionResult r;
    Digest d;
    int within = 0;
    const Vec grid{-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        SymMatrix cov(2);
        cov.set(0, 0, 1.0);
        cov.set(1, 1, 1.0);
        cov.set(0, 1, grid[k]);
        const MCConfig mc{30000 + k, kSamples, 65'536};
        const VolumeEstimate p = orthant_probability(cov, mc);
        const double closed = 0.25 + std::asin(grid[k]) / (2.0 * kPi);
        if (std::fabs(p.value - closed) <= 3.0 * p.std_error) ++within;
        d.add(p.value);
        d.add(p.std_error);
    }
    r.pass = within == 7;
    r.summary = " " + std::to_string(within) + "/7 grid points within 3 SE";
    r.digest = d.text();
    return r;
}

// 4. geometric path of compact tetrahedra toward the regular ideal one
CriterionResult criterion_ideal_limit() {
    CriterionResult r;
    Digest d;
    const AngleGramMatrix a0 = equiangular(3, 1.15);
    const MatrixPath path =
        build_path(a0, ideal_boundary_matrix(3), 24, PathSpacing::Geometric, 0.0, 0.999);
    const MCConfig mc{40001, kSamples, 65'536};
    const DegenerationReport rep = run_continuity_experiment(path, mc, 0.02);
    const double ideal = 3.0 * lobachevsky(kPi / 3.0);
    const VolumeEstimate& last = rep.steps.back().volume;
    const double err = std::fabs(last.value - ideal);
    const double allowed = std::max(3.0 * last.std_error, 0.01 * ideal);
    r.pass = rep.verdict == Verdict::Pass && err <= allowed;
    for (const DegenerationStep& s : rep.steps) d.add(s.volume.value);
    d.add(rep.max_last_quartile_diff);
    r.summary = " final " + fmt(last.value) + " vs 3L(pi/3) = " + fmt(ideal) + " (err " +
                fmt(err) + " <= " + fmt(allowed) + "), verdict " + to_string(rep.verdict);
    r.digest = d.text();
    return r;
}

// 5. duality involutions and vertex roundtrips, 100 per geometry and dimension
CriterionResult criterion_duality_roundtrips() {
    CriterionResult r;
    Digest d;
    double worst_dual = 0.0, worst_round = 0.0;
    for (std::size_t n : {2, 3, 4}) {
        for (int i = 0; i < 100; ++i) {
            for (GeometryTag tag : {GeometryTag::Spherical, GeometryTag::Hyperbolic}) {
                const bool sph = tag == GeometryTag::Spherical;
                const AngleGramMatrix a =
                    random_angle_gram(n, tag, 50000 + 997 * n + 2 * i + (sph ? 0 : 1));
                const SimplexVertices verts = vertices_from_angle_gram(a);
                const DistanceGramMatrix g = distance_gram_from_vertices(verts);

                const DualResult first = sph ? spherical_dual(g) : hyperbolic_dual(g);
                const DistanceGramMatrix mid{n, first.gram.g, tag};
                const DualResult second = sph ? spherical_dual(mid) : hyperbolic_dual(mid);
                worst_dual =
                    std::max(worst_dual, (second.gram.g.full() - g.g.full()).max_norm());

                const AngleGramMatrix back = angle_gram_from_vertices(verts);
                worst_round =
                    std::max(worst_round, (back.g.full() - a.g.full()).max_norm());
            }
        }
    }
    d.add(worst_dual);
    d.add(worst_round);
    r.pass = worst_dual <= 1e-9 && worst_round <= 1e-8;
    r.summary = " max dual-of-dual residual " + fmt(worst_dual) + ", max roundtrip residual " +
                fmt(worst_round);
    r.digest = d.text();
    return r;
}

// 6. Lorentz decomposition identities on 100 random matrices per n
CriterionResult criterion_decomposition() {
    CriterionResult r;
    Digest d;
    double worst37 = 0.0, worst38 = 0.0;
    for (std::size_t n : {2, 3}) {
        Matrix s = Matrix::identity(n + 1);
        s(n, n) = -1.0;
        for (int i = 0; i < 100; ++i) {
            const AngleGramMatrix a =
                random_angle_gram(n, GeometryTag::Hyperbolic, 60000 + 211 * n + i);
            const LorentzDecomposition ld = decompose_lorentz(a);
            const Matrix bu = ld.b.full() * ld.u;
            worst37 = std::max(worst37, (bu * s * bu.transposed() - a.g.full()).max_norm());
            const Matrix inner =
                ld.u.transposed() * ld.b.full() * inverse(a.g.full()) * ld.b.full() * ld.u;
            worst38 = std::max(worst38, (inner - s).max_norm());
        }
    }
    d.add(worst37);
    d.add(worst38);
    r.pass = worst37 <= 1e-8 && worst38 <= 1e-8;
    r.summary = " max residuals: factorization " + fmt(worst37) + ", inverse form " + fmt(worst38);
    r.digest = d.text();
    return r;
}

// 7. apex containment and distance bound in 200 random decompositions
CriterionResult criterion_apex_bound() {
    CriterionResult r;
    Digest d;
    const ApexBoundReport r2 = apex_bound_experiment(100, 2, 7001);
    const ApexBoundReport r3 = apex_bound_experiment(100, 3, 7002);
    d.add(static_cast<double>(r2.passed));
    d.add(static_cast<double>(r3.passed));
    d.add(r2.max_distance_excess);
    d.add(r3.max_distance_excess);
    r.pass = r2.passed == 100 && r3.passed == 100;
    r.summary = " " + std::to_string(r2.passed + r3.passed) + "/200 cases hold the bound";
    r.digest = d.text();
    return r;
}

// 8. diagonal perturbation to simple spectra, eps = 0.01, 100 matrices
CriterionResult criterion_perturbation() {
    CriterionResult r;
    Digest d;
    const double eps = 0.01;
    int ok = 0;
    double min_gap = 1e300;
    for (int i = 0; i < 100; ++i) {
        RandomStream rnd(80000 + i);
        const std::size_t m = 3 + static_cast<std::size_t>(rnd.u01() * 4);
        const Matrix q = sym_eigen(random_symmetric(m, rnd)).vectors;
        Vec spec(m, 0.0);
        const std::size_t rank = 1 + static_cast<std::size_t>(rnd.u01() * m);
        for (std::size_t k = 0; k < rank; ++k)
            spec[k] = (k > 0 && rnd.u01() < 0.5) ? spec[k - 1] : rnd.uniform(0.2, 3.0);
        if (i % 2 == 1) spec[rank - 1] = -rnd.uniform(0.2, 3.0); // Lorentzian half
        const SymMatrix a = with_spectrum(q, spec);

        const SimpleSpectrum s = perturb_to_simple_eigenvalues(a, eps, 81000 + i);
        double dev = 0.0;
        for (double x : s.scaling.d) dev = std::max(dev, std::fabs(x - 1.0));
        if (dev <= eps && s.min_gap > 0.0) ++ok;
        min_gap = std::min(min_gap, s.min_gap);
    }
    d.add(static_cast<double>(ok));
    d.add(min_gap);
    r.pass = ok == 100;
    r.summary = " " + std::to_string(ok) + "/100 scalings valid, smallest gap " + fmt(min_gap);
    r.digest = d.text();
    return r;
}

// 9. adjugate entries bounded away from zero when det <= 0 with PD minors
CriterionResult criterion_adjugate_positivity() {
    CriterionResult r;
    Digest d;
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = i % 2 == 0 ? 2 : 3;
        const AngleGramMatrix a = random_angle_gram(n, GeometryTag::Hyperbolic, 90000 + i);
        SymMatrix m = a.g;
        if (i % 4 < 2) {
            // singular member of the family: shift by |lambda_min|
            const double lam = std::fabs(sym_eigen(a.g).values.back());
            for (std::size_t k = 0; k <= n; ++k) m.set(k, k, m(k, k) + lam);
        }
        if (adjugate_positivity_check(m)) ++ok;
    }
    d.add(static_cast<double>(ok));
    r.pass = ok == 100;
    r.summary = " " + std::to_string(ok) + "/100 adjugates bounded away from zero";
    r.digest = d.text();
    return r;
}

// 10. coupled tail decay on 50 random 3-simplices from the inball center
CriterionResult criterion_tail_decay() {
    CriterionResult r;
    Digest d;
    int monotone = 0, small_tail = 0;
    for (int i = 0; i < 50; ++i) {
        const AngleGramMatrix a = random_angle_gram(3, GeometryTag::Hyperbolic, 100000 + i);
        const SimplexVertices verts = vertices_from_angle_gram(a);
        const InscribedBall ball = inscribed_ball(verts);
        const MCConfig mc{100500ULL + i, kSamples, 65'536};
        const auto tails =
            tail_volume_schedule(verts, ball.center, Vec{0.0, 1.0, 2.0, 4.0, 8.0, 10.0}, mc);
        bool mono = true;
        for (std::size_t k = 0; k + 1 < tails.size(); ++k)
            mono = mono && tails[k + 1].estimate.value <= tails[k].estimate.value;
        if (mono) ++monotone;
        const double total = tails.front().estimate.value;
        const TailVolumeResult& last = tails.back();
        if (last.estimate.value < 0.05 * total + 3.0 * last.estimate.std_error) ++small_tail;
        d.add(total);
        d.add(last.estimate.value);
    }
    r.pass = monotone == 50 && small_tail >= 48;
    r.summary = " " + std::to_string(monotone) + "/50 monotone, " + std::to_string(small_tail) +
                "/50 tails below 5% at R = 10";
    r.digest = d.text();
    return r;
}

// 11. Thurston face bound on 100 random 3-simplices
CriterionResult criterion_thurston() {
    CriterionResult r;
    Digest d;
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
        const AngleGramMatrix a = random_angle_gram(3, GeometryTag::Hyperbolic, 110000 + i);
        const SimplexVertices verts = vertices_from_angle_gram(a);
        const MCConfig mc{110500ULL + i, kSamples, 65'536};
        if (thurston_face_bound_check(verts, mc)) ++ok;
    }
    d.add(static_cast<double>(ok));
    r.pass = ok == 100;
    r.summary = " " + std::to_string(ok) + "/100 simplices satisfy vol3 <= face/2 + 3 SE";
    r.digest = d.text();
    return r;
}

// 12. discontinuity in lengths: same Gram limits, lune-area volume gap
CriterionResult criterion_length_discontinuity() {
    CriterionResult r;
    Digest d;
    const MCConfig mc{120001, kSamples, 65'536};
    const LengthDiscontinuityReport rep = length_discontinuity_demo(kPi / 2.0, kPi / 4.0, mc);
    d.add(rep.volume_gap);
    d.add(rep.gap_std_error);
    d.add(rep.final_gram_max_diff);
    r.pass = rep.final_gram_max_diff < 1e-6 &&
             std::fabs(rep.volume_gap - rep.expected_gap) <= 3.0 * rep.gap_std_error &&
             rep.volume_gap > 5.0 * rep.gap_std_error;
    r.summary = " volume gap " + fmt(rep.volume_gap) + " vs pi/2 = " + fmt(rep.expected_gap) +
                ", Gram diff " + fmt(rep.final_gram_max_diff);
    r.digest = d.text();
    return r;
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<CriterionResult()>>> criteria = {
        {"orthant identity vol(S^n)/2^(n+1)", criterion_orthant_identity},
        {"Gauss-Bonnet agreement on 50 triangles", criterion_gauss_bonnet},
        {"orthant-probability engine vs arcsine law", criterion_orthant_engine},
        {"ideal-limit continuity toward 3L(pi/3)", criterion_ideal_limit},
        {"duality involutions and vertex roundtrips", criterion_duality_roundtrips},
        {"Lorentz decomposition identities", criterion_decomposition},
        {"apex containment and distance bound", criterion_apex_bound},
        {"diagonal perturbation to simple spectra", criterion_perturbation},
        {"adjugate positivity under det <= 0", criterion_adjugate_positivity},
        {"coupled tail decay from the inball center", criterion_tail_decay},
        {"Thurston face bound", criterion_thurston},
        {"length-limit discontinuity demo", criterion_length_discontinuity},
    };

    bool all_pass = true;
    std::vector<CriterionResult> first_run;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = criteria[k].second();
        } catch (const std::exception& e) {
            res.pass = false;
            res.summary = std::string(" exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2zu. %s -%s (%.1fs)\n", res.pass ? "PASS" : "FAIL", k + 1,
                    criteria[k].first.c_str(), res.summary.c_str(), secs);
        std::fflush(stdout);
        all_pass = all_pass && res.pass;
        first_run.push_back(std::move(res));
    }

    // 13. determinism: rerun criteria 1-12, every reported number must match.
    {
        const auto start = std::chrono::steady_clock::now();
        bool identical = true;
        std::size_t first_mismatch = 0;
        std::ofstream run1("acceptance_digest_run1.txt");
        std::ofstream run2("acceptance_digest_run2.txt");
        for (std::size_t k = 0; k < criteria.size(); ++k) {
            CriterionResult res;
            try {
                res = criteria[k].second();
            } catch (const std::exception&) {
            }
            run1 << "# criterion " << k + 1 << "\n" << first_run[k].digest;
            run2 << "# criterion " << k + 1 << "\n" << res.digest;
            if (res.digest != first_run[k].digest || res.pass != first_run[k].pass) {
                if (identical) first_mismatch = k + 1;
                identical = false;
            }
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] 13. determinism: rerun of criteria 1-12 %s (%.1fs)\n",
                    identical ? "PASS" : "FAIL",
                    identical ? "reproduced every number exactly"
                              : ("diverged at criterion " + std::to_string(first_mismatch)).c_str(),
                    secs);
        all_pass = all_pass && identical;
    }

    return all_pass ? 0 : 1;
}
