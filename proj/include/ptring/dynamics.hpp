// dynamics.hpp — non-unitary wave-packet evolution, the ring momentum
// observable and steady-state chirality curves.
//
// Time is measured in units of 2*pi*hbar/Delta_alpha (hbar = 1); the raw
// evolution phase is exp(-i H tau) with tau = t * 2*pi / Delta_alpha.
#pragma once

#include "ptring/lattice.hpp"
#include "ptring/phase.hpp"

#include <string>
#include <vector>

namespace ptring {

struct WaveState {
    ComplexVector amplitudes;
    double time = 0.0;  // units of 2*pi*hbar/Delta_alpha
};

/// f_j = delta_{j, site}, time 0. Site is 1-based.
WaveState single_site_state(int n_sites, int site);

/// Total intensity I = sum_j |f_j|^2.
double intensity(const WaveState& state);

/// Dimensionless ring momentum
///   p = -(i/2) sum_j (f*_{j+1} + f*_j)(f_{j+1} - f_j) / sum_j |f_j|^2
/// with the periodic wrap f_{N+1} = f_1 (the wrap term is always included,
/// also for open-chain states). The expression is real by Hermiticity; the
/// residual imaginary part is checked against 1e-10 before being dropped.
/// Bounded in [-1, 1] by Cauchy-Schwarz. Zero-norm states are rejected.
double momentum(const WaveState& state);

/// Exact evolution operator for one spec, cached as an eigendecomposition
/// of H with its right-eigenvector basis. When that basis is ill-conditioned
/// (estimated condition number above 1e12, e.g. at an exceptional point)
/// the propagator falls back to stepped scaling-and-squaring.
class Propagator {
public:
    explicit Propagator(const LatticeSpec& spec);

    /// Evolves the state by t time units; amplitudes are the raw
    /// (non-renormalized) values.
    WaveState apply(const WaveState& in, double t) const;

    /// Dense one-step operator exp(-i H dtau) for dt time units; used by
    /// trajectory drivers that renormalize between steps.
    ComplexMatrix step_operator(double dt) const;

    double delta() const { return delta_; }
    bool stepped_fallback() const { return stepped_; }
    void force_stepped() { stepped_ = true; }

private:
    ComplexMatrix expm_of(double tau) const;

    LatticeSpec spec_;
    ComplexMatrix h_;
    double delta_ = 0.0;
    ComplexVector evals_;
    ComplexMatrix basis_, basis_inv_;
    bool stepped_ = false;
};

/// Convenience single-shot form of Propagator::apply.
WaveState propagate(const LatticeSpec& spec, const WaveState& initial, double t);

struct AveragingOptions {
    double window = 0.0;     // T in time units; 0 means 100 * N
    double dt = 0.1;         // quadrature step, time units
    double agree_tol = 0.02; // |avg(T) - avg(T/2)| acceptance
    int max_doublings = 4;
    double tol_im = 1e-8;    // passed through to threshold-aware callers
    bool force_stepped = false;
};

struct TimeAverage {
    double value = 0.0;
    double window = 0.0;        // T actually used
    double discrepancy = 0.0;   // |avg(T) - avg(T/2)| at the final T
    double log_intensity = 0.0; // ln I(T), accumulated across renormalizations
    bool settled = true;
};

/// Trapezoidal time average of the momentum over [0, T] for a wave packet
/// started at site m0, with per-step renormalization (the momentum is
/// scale-invariant). T is doubled until the average agrees with the
/// half-window average within agree_tol, up to max_doublings; a
/// non-convergent result is flagged unsettled but still returned.
TimeAverage time_averaged_momentum(const LatticeSpec& spec, int m0,
                                   const AveragingOptions& opts = {});

struct ChiralityCurve {
    std::vector<double> gamma_values;
    std::vector<double> momentum_values;
    std::vector<double> windows;       // per-point T
    std::vector<std::string> flags;    // empty when clean, "unsettled" otherwise
    double averaging_window = 0.0;     // base T before any doubling
    int m0 = 0;
    int gain_site = 0;
};

/// 61 uniformly spaced gamma values over [0, 2 * gamma_pt].
std::vector<double> default_gamma_grid(const PhasePoint& threshold);

/// One time-averaged momentum per grid gamma; points run on `jobs` workers.
/// When a threshold is supplied, grid points whose gamma falls within
/// 10 bracket widths of gamma_pt use the stepped propagator unconditionally
/// (the Hamiltonian is defective there).
ChiralityCurve chirality_curve(const LatticeSpec& spec_without_gamma, int m0,
                               const std::vector<double>& gamma_grid,
                               const AveragingOptions& opts = {},
                               int jobs = 1,
                               const PhasePoint* threshold = nullptr);

}  // namespace ptring
