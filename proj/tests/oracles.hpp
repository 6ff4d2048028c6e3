// oracles.hpp — test-only reference implementations, kept independent of the
// library's eigensolver / matrix-exponential code paths.
#pragma once

#include "ptring/lattice.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

using ptring::Complex;
using ptring::ComplexMatrix;
using ptring::ComplexVector;

// --------------------------------------------------- Taylor-series propagator

// exp(A) v by truncated Taylor series with Kahan-compensated accumulation.
// The step is only accurate for moderate ||A||; callers segment.
inline ComplexVector taylor_exp_apply_step(const ComplexMatrix& A, const ComplexVector& v,
                                           int max_terms) {
    ComplexVector sum = v;
    ComplexVector comp = ComplexVector::Zero(v.size());
    ComplexVector term = v;
    for (int k = 1; k <= max_terms; ++k) {
        term = (A * term) / static_cast<double>(k);
        // Kahan step, componentwise
        for (int i = 0; i < v.size(); ++i) {
            const Complex y = term[i] - comp[i];
            const Complex t = sum[i] + y;
            comp[i] = (t - sum[i]) - y;
            sum[i] = t;
        }
        if (term.norm() <= 1e-20 * sum.norm()) break;
    }
    return sum;
}

// exp(-i H tau_raw) v, tau_raw in raw (energy^-1) units. Segments the time so
// each Taylor step stays well inside its convergence comfort zone.
inline ComplexVector taylor_evolve_raw(const ComplexMatrix& H, const ComplexVector& v0,
                                       double tau_raw, int max_terms = 200) {
    const double norm_bound = H.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
    const int n_seg = std::max(1, static_cast<int>(std::ceil(tau_raw * norm_bound / 0.5)));
    const ComplexMatrix A = Complex(0.0, -1.0) * H * (tau_raw / n_seg);
    ComplexVector v = v0;
    for (int s = 0; s < n_seg; ++s) v = taylor_exp_apply_step(A, v, max_terms);
    return v;
}

// Same, with t in units of 2*pi/Delta (the dynamics module's time unit).
inline ComplexVector taylor_evolve_units(const ComplexMatrix& H, const ComplexVector& v0,
                                         double t_units, double delta) {
    return taylor_evolve_raw(H, v0, t_units * 2.0 * std::numbers::pi / delta);
}

// ------------------------------------- characteristic-polynomial eigenvalues

// Monic characteristic polynomial evaluated as det(z I - A) via complex LU.
inline Complex charpoly_eval(const ComplexMatrix& A, Complex z) {
    const ComplexMatrix shifted = z * ComplexMatrix::Identity(A.rows(), A.cols()) - A;
    return Eigen::PartialPivLU<ComplexMatrix>(shifted).determinant();
}

// All roots of det(z I - A) by Durand-Kerner iteration. Intended for
// dim <= 10 matrices with simple (or mildly clustered) spectra.
inline std::vector<Complex> charpoly_eigenvalues(const ComplexMatrix& A,
                                                 int max_iter = 500) {
    const int n = static_cast<int>(A.rows());
    const double radius =
        std::max(1.0, 1.5 * A.cwiseAbs().rowwise().sum().maxCoeff());
    std::vector<Complex> z(n);
    for (int i = 0; i < n; ++i) {
        // distinct, deliberately asymmetric starting angles
        const double angle = 2.0 * std::numbers::pi * i / n + 0.4;
        z[i] = radius * Complex(std::cos(angle), std::sin(angle));
    }
    for (int iter = 0; iter < max_iter; ++iter) {
        double worst_move = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (denom == Complex(0.0, 0.0)) {
                z[i] += radius * 1e-8;  // nudge a collision apart
                continue;
            }
            const Complex delta = charpoly_eval(A, z[i]) / denom;
            z[i] -= delta;
            worst_move = std::max(worst_move, std::abs(delta));
        }
        if (worst_move <= 1e-14 * radius) break;
    }
    return z;
}

// ------------------------------------------------- spectrum multiset matching

// Worst matched distance between a spectrum and its complex conjugate under
// greedy nearest-unused pairing. Lexicographic sorting is useless here: a
// broken-phase pair x +- iy whose real parts split by solver noise flips its
// sort order against the conjugated copy.
inline double conjugation_distance(const std::vector<Complex>& evs) {
    std::vector<Complex> pool(evs.size());
    std::transform(evs.begin(), evs.end(), pool.begin(),
                   [](const Complex& z) { return std::conj(z); });
    double worst = 0.0;
    for (const Complex& z : evs) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pool.size(); ++i)
            if (std::abs(pool[i] - z) < std::abs(pool[best] - z)) best = i;
        worst = std::max(worst, std::abs(pool[best] - z));
        pool.erase(pool.begin() + best);
    }
    return worst;
}

// ------------------------------------------------------- random lattice specs

// Deterministic stream of valid specs for property tests.
class SpecSampler {
public:
    explicit SpecSampler(unsigned seed) : rng_(seed) {}

    ptring::LatticeSpec next(int n_min = 3, int n_max = 24) {
        ptring::LatticeSpec spec;
        spec.n_sites = std::uniform_int_distribution<int>(n_min, n_max)(rng_);
        spec.alpha = std::uniform_real_distribution<double>(-2.0, 2.0)(rng_);
        spec.t0 = std::uniform_real_distribution<double>(0.5, 2.0)(rng_);
        spec.gain_site = std::uniform_int_distribution<int>(1, spec.n_sites / 2)(rng_);
        spec.lambda_ring = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
        spec.gamma = 0.0;
        return spec;
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    Complex unit_complex() {
        const double re = std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
        const double im = std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
        return {re, im};
    }

private:
    std::mt19937 rng_;
};

}  // namespace oracles
