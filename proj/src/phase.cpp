#include "ptring/phase.hpp"

#include "ptring/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ptring {

bool is_pt_exact(const LatticeSpec& spec, double tol_im) {
    const ComplexMatrix h = build_hamiltonian(spec);
    const Spectrum s = eigen(h, false);
    return s.max_imag <= tol_im * matrix_scale(h);
}

std::string to_string(ThresholdStatus s) {
    switch (s) {
        case ThresholdStatus::ok: return "ok";
        case ThresholdStatus::unbroken_below_cap: return "unbroken";
        case ThresholdStatus::error: return "error";
    }
    return "error";
}

PhasePoint find_threshold(const LatticeSpec& spec_without_gamma, const ThresholdOptions& opts) {
    LatticeSpec spec = spec_without_gamma.with_gamma(0.0);
    spec.validate();

    PhasePoint point;
    point.mu = spec.mu();
    point.lambda_ring = spec.lambda_ring;
    point.gain_site = spec.gain_site;
    point.delta = band_measure(spec).quarter_width;
    const double delta = point.delta;

    auto exact_at = [&](double g) { return is_pt_exact(spec.with_gamma(g), opts.tol_im); };

    if (!exact_at(0.0))
        throw std::runtime_error("find_threshold: spectrum not real at gamma = 0");

    const double cap = opts.cap_factor * delta;
    double gamma_max = opts.gamma_max > 0.0 ? opts.gamma_max : 4.0 * delta;
    while (exact_at(gamma_max)) {
        if (gamma_max >= cap) {
            point.status = ThresholdStatus::unbroken_below_cap;
            point.gamma_pt = std::numeric_limits<double>::quiet_NaN();
            point.gamma_pt_normalized = point.gamma_pt;
            point.bracket_width = 0.0;
            point.note = "no threshold found below cap";
            return point;
        }
        gamma_max = std::min(2.0 * gamma_max, cap);
    }

    double lo = 0.0, hi = gamma_max;
    while (hi - lo > opts.tol * delta) {
        const double mid = 0.5 * (lo + hi);
        if (exact_at(mid))
            lo = mid;
        else
            hi = mid;
    }

    point.gamma_pt = 0.5 * (lo + hi);
    point.bracket_width = hi - lo;
    point.gamma_pt_normalized = point.gamma_pt / delta;

    // Post-hoc bracket verification: real just below, complex just above.
    const double below = std::max(0.0, point.gamma_pt - point.bracket_width);
    const double above = point.gamma_pt + point.bracket_width;
    if (!exact_at(below) || exact_at(above))
        point.note += "bracket_unverified;";

    // Detector monotonicity diagnostic: exactly one real->complex flip on a
    // 50-point grid over [0, 1.2 * gamma_pt].
    if (opts.check_single_flip && point.gamma_pt > 0.0) {
        int flips = 0;
        bool prev = true;
        for (int i = 0; i < 50; ++i) {
            const double g = 1.2 * point.gamma_pt * (i + 1) / 50.0;
            const bool ok = exact_at(g);
            if (ok != prev) ++flips;
            prev = ok;
        }
        point.single_flip = (flips == 1);
        if (!point.single_flip) point.note += "multi_flip;";
    }
    return point;
}

PhasePoint find_threshold(const LatticeSpec& spec_without_gamma, double gamma_max, double tol) {
    ThresholdOptions opts;
    opts.gamma_max = gamma_max;
    opts.tol = tol;
    return find_threshold(spec_without_gamma, opts);
}

std::vector<int> full_m_grid(int n_sites) {
    std::vector<int> ms;
    for (int m = 1; m <= n_sites / 2; ++m) ms.push_back(m);
    return ms;
}

std::vector<PhaseDiagram> sweep_phase_diagram(const LatticeSpec& base,
                                              const std::vector<double>& lambda_values,
                                              const std::vector<int>& m_values,
                                              const ThresholdOptions& opts, int jobs) {
    const std::size_t n_lambda = lambda_values.size();
    const std::size_t n_m = m_values.size();
    std::vector<PhasePoint> flat(n_lambda * n_m);

    parallel_for_index(flat.size(), jobs, [&](std::size_t i) {
        const double lam = lambda_values[i / n_m];
        const int m = m_values[i % n_m];
        LatticeSpec spec = base.with_lambda(lam).with_gain_site(m).with_gamma(0.0);
        try {
            flat[i] = find_threshold(spec, opts);
        } catch (const std::exception& e) {
            PhasePoint p;
            p.mu = static_cast<double>(m) / base.n_sites;
            p.lambda_ring = lam;
            p.gain_site = m;
            p.status = ThresholdStatus::error;
            p.gamma_pt = std::numeric_limits<double>::quiet_NaN();
            p.gamma_pt_normalized = p.gamma_pt;
            p.note = e.what();
            flat[i] = p;
        }
    });

    std::vector<PhaseDiagram> out(n_lambda);
    for (std::size_t li = 0; li < n_lambda; ++li) {
        out[li].alpha = base.alpha;
        out[li].n_sites = base.n_sites;
        out[li].lambda_ring = lambda_values[li];
        out[li].points.assign(flat.begin() + li * n_m, flat.begin() + (li + 1) * n_m);
    }
    return out;
}

}  // namespace ptring
