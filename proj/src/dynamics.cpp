#include "ptring/dynamics.hpp"

#include "ptring/spectra.hpp"
#include "ptring/sweep.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptring {

namespace {
constexpr double kBasisConditionLimit = 1e12;
constexpr Complex kImag(0.0, 1.0);
}  // namespace

WaveState single_site_state(int n_sites, int site) {
    if (site < 1 || site > n_sites)
        throw std::invalid_argument("single_site_state: site out of range");
    WaveState s;
    s.amplitudes = ComplexVector::Zero(n_sites);
    s.amplitudes[site - 1] = 1.0;
    return s;
}

double intensity(const WaveState& state) {
    return state.amplitudes.squaredNorm();
}

double momentum(const WaveState& state) {
    const auto& f = state.amplitudes;
    const int n = static_cast<int>(f.size());
    const double norm2 = f.squaredNorm();
    if (norm2 == 0.0)
        throw std::invalid_argument("momentum: zero-norm state");
    Complex sum(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
        const Complex fj = f[j];
        const Complex fn = f[(j + 1) % n];  // periodic wrap f_{N+1} = f_1
        sum += (std::conj(fn) + std::conj(fj)) * (fn - fj);
    }
    const Complex p = Complex(0.0, -0.5) * sum / norm2;
    if (std::abs(p.imag()) > 1e-10 * std::max(1.0, std::abs(p)))
        throw std::runtime_error("momentum: expression failed the reality check");
    return p.real();
}

// ---------------------------------------------------------------- Propagator

Propagator::Propagator(const LatticeSpec& spec) : spec_(spec) {
    spec_.validate();
    h_ = build_hamiltonian(spec_);
    delta_ = band_measure(spec_).quarter_width;

    const Spectrum s = eigen(h_, true);
    evals_ = s.eigenvalues;
    basis_ = *s.eigenvectors;
    Eigen::PartialPivLU<ComplexMatrix> lu(basis_);
    basis_inv_ = lu.inverse();
    if (!basis_inv_.allFinite()) {
        stepped_ = true;
        return;
    }
    // One-norm condition estimate; a defective basis sends this through the
    // roof long before the inverse degrades visibly.
    const double cond = basis_.cwiseAbs().colwise().sum().maxCoeff() *
                        basis_inv_.cwiseAbs().colwise().sum().maxCoeff();
    stepped_ = !(cond < kBasisConditionLimit);
}

ComplexMatrix Propagator::expm_of(double tau) const {
    return ComplexMatrix((-kImag * tau) * h_).exp();
}

WaveState Propagator::apply(const WaveState& in, double t) const {
    if (t < 0.0)
        throw std::invalid_argument("propagate: t must be >= 0");
    if (in.amplitudes.size() != h_.rows())
        throw std::invalid_argument("propagate: state dimension mismatch");
    WaveState out;
    out.time = in.time + t;
    if (t == 0.0) {
        out.amplitudes = in.amplitudes;
        return out;
    }
    const double tau = t * 2.0 * std::numbers::pi / delta_;
    if (!stepped_) {
        ComplexVector coeff = basis_inv_ * in.amplitudes;
        for (int i = 0; i < coeff.size(); ++i)
            coeff[i] *= std::exp(-kImag * evals_[i] * tau);
        out.amplitudes = basis_ * coeff;
        if (out.amplitudes.allFinite()) return out;
        // fall through to the stepped route on overflow of the modal form
    }
    // Stepped scaling-and-squaring: one exact segment exponential applied
    // repeatedly so late-time evolution never forms exp(-i H tau) for a
    // huge tau in one shot.
    const double seg = 2.0 * std::numbers::pi / delta_;  // one time unit
    const int n_seg = std::max(1, static_cast<int>(std::ceil(tau / seg)));
    const ComplexMatrix u = expm_of(tau / n_seg);
    out.amplitudes = in.amplitudes;
    for (int i = 0; i < n_seg; ++i) out.amplitudes = u * out.amplitudes;
    if (!out.amplitudes.allFinite())
        throw std::runtime_error("propagate: amplitudes overflowed double range");
    return out;
}

ComplexMatrix Propagator::step_operator(double dt) const {
    const double tau = dt * 2.0 * std::numbers::pi / delta_;
    if (stepped_) return expm_of(tau);
    ComplexVector phases(evals_.size());
    for (int i = 0; i < evals_.size(); ++i)
        phases[i] = std::exp(-kImag * evals_[i] * tau);
    return basis_ * phases.asDiagonal() * basis_inv_;
}

WaveState propagate(const LatticeSpec& spec, const WaveState& initial, double t) {
    return Propagator(spec).apply(initial, t);
}

// ---------------------------------------------------- time-averaged momentum

TimeAverage time_averaged_momentum(const LatticeSpec& spec, int m0,
                                   const AveragingOptions& opts) {
    spec.validate();
    if (m0 < 1 || m0 > spec.n_sites)
        throw std::invalid_argument("time_averaged_momentum: m0 out of range");
    if (!(opts.dt > 0.0))
        throw std::invalid_argument("time_averaged_momentum: dt must be positive");

    const double t_base = opts.window > 0.0 ? opts.window : 100.0 * spec.n_sites;
    Propagator prop(spec);
    if (opts.force_stepped) prop.force_stepped();
    const ComplexMatrix u = prop.step_operator(opts.dt);

    WaveState state = single_site_state(spec.n_sites, m0);
    const double p0 = momentum(state);

    const long k_base = std::lround(t_base / opts.dt);
    long k_half = std::max<long>(1, k_base / 2);
    long k_target = std::max<long>(2, k_base);

    // Trapezoid over [0, K dt]: cumulative sum minus half the endpoints.
    // The state is renormalized every step (the momentum is scale-invariant);
    // the true intensity lives in a log-scale accumulator.
    double cum = p0;
    double p_last = p0;
    double sum_at_half = 0.0, p_at_half = 0.0;
    double log_intensity = 0.0;
    TimeAverage result;
    long k = 0;
    for (int doubling = 0; doubling <= opts.max_doublings; ++doubling) {
        while (k < k_target) {
            state.amplitudes = u * state.amplitudes;
            const double nrm = state.amplitudes.norm();
            if (!(nrm > 0.0) || !std::isfinite(nrm))
                throw std::runtime_error("time_averaged_momentum: trajectory lost normalization");
            state.amplitudes /= nrm;
            log_intensity += 2.0 * std::log(nrm);
            ++k;
            p_last = momentum(state);
            cum += p_last;
            if (k == k_half) {
                sum_at_half = cum;
                p_at_half = p_last;
            }
        }
        const double avg_full = (cum - 0.5 * (p0 + p_last)) / k_target;
        const double avg_half = (sum_at_half - 0.5 * (p0 + p_at_half)) / k_half;
        result.value = avg_full;
        result.window = k_target * opts.dt;
        result.discrepancy = std::abs(avg_full - avg_half);
        result.log_intensity = log_intensity;
        result.settled = result.discrepancy <= opts.agree_tol;
        if (result.settled) return result;
        k_half = k_target;
        sum_at_half = cum;
        p_at_half = p_last;
        k_target *= 2;
    }
    result.settled = false;
    return result;
}

std::vector<double> default_gamma_grid(const PhasePoint& threshold) {
    std::vector<double> grid(61);
    for (int i = 0; i < 61; ++i)
        grid[i] = threshold.gamma_pt * 2.0 * i / 60.0;
    return grid;
}

ChiralityCurve chirality_curve(const LatticeSpec& spec_without_gamma, int m0,
                               const std::vector<double>& gamma_grid,
                               const AveragingOptions& opts, int jobs,
                               const PhasePoint* threshold) {
    ChiralityCurve curve;
    curve.gamma_values = gamma_grid;
    curve.momentum_values.assign(gamma_grid.size(), 0.0);
    curve.windows.assign(gamma_grid.size(), 0.0);
    curve.flags.assign(gamma_grid.size(), "");
    curve.averaging_window =
        opts.window > 0.0 ? opts.window : 100.0 * spec_without_gamma.n_sites;
    curve.m0 = m0;
    curve.gain_site = spec_without_gamma.gain_site;

    parallel_for_index(gamma_grid.size(), jobs, [&](std::size_t i) {
        const double g = gamma_grid[i];
        if (g < 0.0)
            throw std::invalid_argument("chirality_curve: gamma grid values must be >= 0");
        AveragingOptions point_opts = opts;
        if (threshold && threshold->status == ThresholdStatus::ok &&
            std::abs(g - threshold->gamma_pt) <= 10.0 * threshold->bracket_width)
            point_opts.force_stepped = true;
        const TimeAverage ta =
            time_averaged_momentum(spec_without_gamma.with_gamma(g), m0, point_opts);
        curve.momentum_values[i] = ta.value;
        curve.windows[i] = ta.window;
        if (!ta.settled) curve.flags[i] = "unsettled";
    });
    return curve;
}

}  // namespace ptring
