// phase.hpp — PT-phase detection, threshold bisection and (mu, lambda)
// phase-diagram sweeps.
#pragma once

#include "ptring/lattice.hpp"
#include "ptring/spectra.hpp"

#include <string>
#include <vector>

namespace ptring {

/// True iff every eigenvalue of the spec's Hamiltonian is real within
/// tol_im * matrix_scale. The default tolerance sits above eigensolver
/// noise amplified near exceptional points but far above the backward-error
/// floor.
bool is_pt_exact(const LatticeSpec& spec, double tol_im = 1e-8);

enum class ThresholdStatus { ok, unbroken_below_cap, error };

std::string to_string(ThresholdStatus s);

/// One point of a phase diagram: the threshold gamma_PT located by
/// bisection at fixed (m, lambda). For status unbroken_below_cap the
/// gamma fields are NaN.
struct PhasePoint {
    double mu = 0.0;
    double lambda_ring = 0.0;
    int gain_site = 0;
    double gamma_pt = 0.0;             // bracket midpoint
    double gamma_pt_normalized = 0.0;  // gamma_pt / Delta_alpha (lambda as given)
    double bracket_width = 0.0;        // final bisection interval width
    double delta = 0.0;                // Delta_alpha used for normalization
    ThresholdStatus status = ThresholdStatus::ok;
    bool single_flip = true;  // 50-point detector scan saw exactly one flip
    std::string note;         // flags / error text, empty when clean
};

struct ThresholdOptions {
    double gamma_max = 0.0;    // initial bracket top; 0 means 4 * Delta
    double tol = 1e-4;         // bracket width target in units of Delta
    double cap_factor = 100.0; // doubling cap in units of Delta
    double tol_im = 1e-8;      // reality tolerance
    bool check_single_flip = true;
};

/// Bisection on gamma over [0, gamma_max] against is_pt_exact; gamma_max is
/// doubled until the phase is broken there, up to cap_factor * Delta (the
/// sentinel status is returned when even the cap leaves the phase exact).
/// The returned bracket is re-verified post hoc by two fresh eigensolves.
PhasePoint find_threshold(const LatticeSpec& spec_without_gamma,
                          const ThresholdOptions& opts = {});
PhasePoint find_threshold(const LatticeSpec& spec_without_gamma,
                          double gamma_max, double tol);

/// gamma_PT(mu) curve at fixed lambda.
struct PhaseDiagram {
    double alpha = 0.0;
    int n_sites = 0;
    double lambda_ring = 0.0;
    std::vector<PhasePoint> points;  // ordered as the m grid was given
};

/// Exhaustive m grid 1..floor(N/2).
std::vector<int> full_m_grid(int n_sites);

/// One diagram per lambda value; points are independent and computed with a
/// worker pool of `jobs` threads (<=1 means serial). Per-point failures are
/// recorded in-place (status error) without aborting the sweep.
std::vector<PhaseDiagram> sweep_phase_diagram(const LatticeSpec& base,
                                              const std::vector<double>& lambda_values,
                                              const std::vector<int>& m_values,
                                              const ThresholdOptions& opts = {},
                                              int jobs = 1);

}  // namespace ptring
