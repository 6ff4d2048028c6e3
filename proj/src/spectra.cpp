#include "ptring/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ptring {

namespace {

std::string matrix_descriptor(const ComplexMatrix& M) {
    std::ostringstream os;
    os << "dim=" << M.rows() << " scale=" << matrix_scale(M);
    return os.str();
}

// Hermitian (real-spectrum) eigenvalues for the gamma=0 Hamiltonian; much
// faster than the general solver at N ~ 500.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& M) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(M, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigensolverError("hermitian eigensolver failed: " + matrix_descriptor(M));
    return solver.eigenvalues();
}

}  // namespace

Spectrum eigen(const ComplexMatrix& M, bool want_vectors) {
    if (M.rows() != M.cols() || M.rows() < 1)
        throw std::invalid_argument("eigen: matrix must be square with dim >= 1");

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(M, want_vectors);
    if (solver.info() != Eigen::Success)
        throw EigensolverError("eigensolver did not converge: " + matrix_descriptor(M));

    const int n = static_cast<int>(M.rows());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& raw = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&raw](int a, int b) {
        if (raw[a].real() != raw[b].real()) return raw[a].real() < raw[b].real();
        return raw[a].imag() < raw[b].imag();
    });

    Spectrum s;
    s.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) s.eigenvalues[i] = raw[order[i]];
    s.max_imag = s.eigenvalues.imag().cwiseAbs().maxCoeff();
    if (want_vectors) {
        ComplexMatrix vecs(n, n);
        for (int i = 0; i < n; ++i) {
            ComplexVector col = solver.eigenvectors().col(order[i]);
            vecs.col(i) = col / col.norm();
        }
        s.eigenvectors = std::move(vecs);
    }
    return s;
}

double max_eigen_residual(const ComplexMatrix& M, const Spectrum& s) {
    if (!s.eigenvectors)
        throw std::invalid_argument("max_eigen_residual: spectrum carries no eigenvectors");
    double worst = 0.0;
    for (int i = 0; i < s.size(); ++i) {
        const ComplexVector v = s.eigenvectors->col(i);
        worst = std::max(worst, (M * v - s.eigenvalues[i] * v).norm() / v.norm());
    }
    return worst;
}

BandMeasure band_measure(const LatticeSpec& spec) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(build_hamiltonian(spec.with_gamma(0.0)));
    BandMeasure bm;
    bm.full_width = ev.maxCoeff() - ev.minCoeff();
    bm.quarter_width = 0.25 * bm.full_width;
    return bm;
}

double verify_difference_equation(const LatticeSpec& spec, const Spectrum& s) {
    if (!s.eigenvectors)
        throw std::invalid_argument("verify_difference_equation: spectrum carries no eigenvectors");
    if (spec.lambda_ring != 0.0)
        throw std::invalid_argument("verify_difference_equation: requires lambda_ring = 0");
    const int n = spec.n_sites;
    if (s.size() != n)
        throw std::invalid_argument("verify_difference_equation: spectrum size mismatch");

    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const ComplexVector f = s.eigenvectors->col(i);
        const Complex eps = s.eigenvalues[i];
        for (int k = 1; k <= n; ++k) {
            // open boundary: t(0) = t(N) = 0
            const double t_right = (k <= n - 1) ? tunneling(spec, k) : 0.0;
            const double t_left = (k >= 2) ? tunneling(spec, k - 1) : 0.0;
            Complex v_k(0.0, 0.0);
            if (k == spec.gain_site) v_k = Complex(0.0, spec.gamma);
            if (k == spec.loss_site()) v_k = Complex(0.0, -spec.gamma);
            const Complex f_right = (k <= n - 1) ? f[k] : Complex(0.0);
            const Complex f_left = (k >= 2) ? f[k - 2] : Complex(0.0);
            const Complex resid = t_right * f_right + t_left * f_left + (eps - v_k) * f[k - 1];
            worst = std::max(worst, std::abs(resid));
        }
    }
    return worst;
}

std::vector<double> ring_chain_difference(const LatticeSpec& spec) {
    if (spec.gamma != 0.0)
        throw std::invalid_argument("ring_chain_difference: requires gamma = 0");
    Eigen::VectorXd chain = hermitian_eigenvalues(build_hamiltonian(spec.with_lambda(0.0)));
    Eigen::VectorXd ring = hermitian_eigenvalues(build_hamiltonian(spec.with_lambda(1.0)));
    std::sort(chain.begin(), chain.end());
    std::sort(ring.begin(), ring.end());
    std::vector<double> diff(spec.n_sites);
    for (int i = 0; i < spec.n_sites; ++i) diff[i] = ring[i] - chain[i];
    return diff;
}

}  // namespace ptring
