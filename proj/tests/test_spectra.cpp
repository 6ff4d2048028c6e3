#include "ptring/spectra.hpp"

#include "ptring/phase.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ptring;

namespace {

// Compares an eigenvalue multiset against a reference multiset after
// (re, im)-sorting both.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    auto less = [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<Complex> to_vector(const ComplexVector& v) {
    return {v.begin(), v.end()};
}

}  // namespace

TEST_SUITE_BEGIN("spectra");

TEST_CASE("eigen sorts by real part and reports max_imag") {
    oracles::SpecSampler sampler(21);
    for (int trial = 0; trial < 10; ++trial) {
        LatticeSpec spec = sampler.next();
        spec.gamma = sampler.uniform(0.0, 2.0);
        const Spectrum s = eigen(build_hamiltonian(spec), false);
        REQUIRE(s.size() == spec.n_sites);
        for (int i = 0; i + 1 < s.size(); ++i) {
            const Complex a = s.eigenvalues[i], b = s.eigenvalues[i + 1];
            CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
        }
        CHECK(s.max_imag == doctest::Approx(s.eigenvalues.imag().cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("eigen matches the characteristic-polynomial oracle for small lattices") {
    // the alpha=2 open-chain anchor
    LatticeSpec anchor{8, 2.0, 1.0, 2, 0.0, 0.0};
    ComplexMatrix h = build_hamiltonian(anchor);
    CHECK(multiset_distance(to_vector(eigen(h, false).eigenvalues),
                            oracles::charpoly_eigenvalues(h)) <= 1e-8 * matrix_scale(h));

    // open chains keep the roots simple (non-degenerate) for Durand-Kerner
    oracles::SpecSampler sampler(22);
    for (int trial = 0; trial < 12; ++trial) {
        LatticeSpec spec = sampler.next(3, 10);
        spec.lambda_ring = 0.0;
        if (trial % 2 == 1) {
            const PhasePoint th = find_threshold(spec);
            if (th.status == ThresholdStatus::ok) spec.gamma = 0.4 * th.gamma_pt;
        }
        h = build_hamiltonian(spec);
        CHECK(multiset_distance(to_vector(eigen(h, false).eigenvalues),
                                oracles::charpoly_eigenvalues(h)) <= 1e-8 * matrix_scale(h));
    }
}

TEST_CASE("spectrum closes under complex conjugation") {
    oracles::SpecSampler sampler(23);
    for (int trial = 0; trial < 15; ++trial) {
        LatticeSpec spec = sampler.next();
        spec.gamma = sampler.uniform(0.0, 2.0) * band_measure(spec).quarter_width;
        const ComplexMatrix h = build_hamiltonian(spec);
        const auto evs = to_vector(eigen(h, false).eigenvalues);
        CHECK(oracles::conjugation_distance(evs) <= 1e-9 * matrix_scale(h));
    }
}

TEST_CASE("gamma = 0 spectra are real") {
    oracles::SpecSampler sampler(24);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h = build_hamiltonian(sampler.next());
        CHECK(eigen(h, false).max_imag <= 1e-10 * matrix_scale(h));
    }
}

TEST_CASE("open-chain spectrum is symmetric about zero below threshold") {
    oracles::SpecSampler sampler(25);
    for (int trial = 0; trial < 10; ++trial) {
        LatticeSpec spec = sampler.next();
        spec.lambda_ring = 0.0;
        const PhasePoint th = find_threshold(spec);
        if (th.status != ThresholdStatus::ok) continue;
        spec.gamma = 0.5 * th.gamma_pt;
        const ComplexMatrix h = build_hamiltonian(spec);
        const Spectrum s = eigen(h, false);
        const int n = s.size();
        for (int i = 0; i < n / 2; ++i)
            CHECK(std::abs(s.eigenvalues[i] + s.eigenvalues[n - 1 - i]) <=
                  1e-9 * matrix_scale(h));
    }
}

TEST_CASE("requested eigenvectors satisfy the residual bound") {
    oracles::SpecSampler sampler(26);
    for (int trial = 0; trial < 10; ++trial) {
        LatticeSpec spec = sampler.next();
        spec.gamma = sampler.uniform(0.0, 1.5) * band_measure(spec).quarter_width;
        const ComplexMatrix h = build_hamiltonian(spec);
        const Spectrum s = eigen(h, true);
        CHECK(max_eigen_residual(h, s) <= 1e-9 * matrix_scale(h));
        for (int i = 0; i < s.size(); ++i)
            CHECK(s.eigenvectors->col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("difference equation residuals vanish on eigenpairs") {
    // zero mode of the 3-site chain: f proportional to (1, 0, -1)
    LatticeSpec three{3, 0.0, 1.0, 1, 0.0, 0.0};
    const Spectrum s3 = eigen(build_hamiltonian(three), true);
    CHECK(verify_difference_equation(three, s3) <= 1e-12);
    const ComplexVector zero_mode = s3.eigenvectors->col(1);
    CHECK(std::abs(zero_mode(0) + zero_mode(2)) <= 1e-10);
    CHECK(std::abs(zero_mode(1)) <= 1e-10);

    // gamma = 0 chains across sizes
    oracles::SpecSampler sampler(27);
    for (int trial = 0; trial < 8; ++trial) {
        LatticeSpec spec = sampler.next(3, 50);
        spec.lambda_ring = 0.0;
        CHECK(verify_difference_equation(spec, eigen(build_hamiltonian(spec), true)) <= 1e-9);
    }

    // impurity terms enter through the site potential
    LatticeSpec withg{20, 1.0, 1.0, 2, 0.0, 0.0};
    withg.gamma = 0.1 * band_measure(withg).quarter_width;
    CHECK(verify_difference_equation(withg, eigen(build_hamiltonian(withg), true)) <= 1e-9);
}

TEST_CASE("eigen stays backward-stable at larger dimensions") {
    LatticeSpec spec{120, 1.0, 1.0, 30, 0.0, 0.5};
    spec.gamma = 0.5 * band_measure(spec).quarter_width;
    const ComplexMatrix h = build_hamiltonian(spec);
    const Spectrum s = eigen(h, true);
    CHECK(max_eigen_residual(h, s) <= 1e-10 * matrix_scale(h) * spec.n_sites);
}

TEST_CASE("recurrence residual is bounded by the matrix residual") {
    // per-site recurrence residuals are the entries of H v - eps v, so their
    // max-abs never exceeds the vector residual norm
    oracles::SpecSampler sampler(28);
    for (int trial = 0; trial < 6; ++trial) {
        LatticeSpec spec = sampler.next(4, 30);
        spec.lambda_ring = 0.0;
        spec.gamma = sampler.uniform(0.0, 0.2) * band_measure(spec).quarter_width;
        const ComplexMatrix h = build_hamiltonian(spec);
        const Spectrum s = eigen(h, true);
        CHECK(verify_difference_equation(spec, s) <= max_eigen_residual(h, s) + 1e-15);
    }
}

TEST_CASE("difference equation preconditions") {
    LatticeSpec spec{6, 0.0, 1.0, 2, 0.0, 0.0};
    const Spectrum no_vectors = eigen(build_hamiltonian(spec), false);
    CHECK_THROWS_AS(verify_difference_equation(spec, no_vectors), std::invalid_argument);
    const Spectrum s = eigen(build_hamiltonian(spec), true);
    CHECK_THROWS_AS(verify_difference_equation(spec.with_lambda(0.5), s),
                    std::invalid_argument);
}

TEST_CASE("band measure: uniform-chain anchor and quarter relation") {
    LatticeSpec spec{100, 0.0, 1.0, 1, 0.0, 0.0};
    const BandMeasure bm = band_measure(spec);
    CHECK(bm.full_width ==
          doctest::Approx(4.0 * std::cos(std::numbers::pi / 101.0)).epsilon(1e-12));
    CHECK(bm.quarter_width == 0.25 * bm.full_width);

    // gamma is forced to zero internally
    LatticeSpec noisy = spec;
    noisy.gamma = 0.8;
    CHECK(band_measure(noisy).full_width == doctest::Approx(bm.full_width).epsilon(1e-13));
}

TEST_CASE("bandwidth scaling with lattice size") {
    auto width = [](int n, double alpha) {
        LatticeSpec spec{n, alpha, 1.0, 1, 0.0, 0.0};
        return band_measure(spec).full_width;
    };
    CHECK(width(500, 1.0) / width(250, 1.0) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(width(500, -1.0) / width(125, -1.0) == doctest::Approx(0.5).epsilon(0.10));
}

TEST_CASE("ring-chain difference: 3-site exact values") {
    LatticeSpec spec{3, 0.0, 1.0, 1, 0.0, 0.0};
    const auto diff = ring_chain_difference(spec);
    REQUIRE(diff.size() == 3);
    CHECK(diff[0] == doctest::Approx(-2.0 + std::sqrt(2.0)).epsilon(1e-10));
    CHECK(diff[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(diff[2] == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-10));

    LatticeSpec bad = spec;
    bad.gamma = 0.5;
    CHECK_THROWS_AS(ring_chain_difference(bad), std::invalid_argument);
}

TEST_SUITE_END();
