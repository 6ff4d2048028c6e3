// spectra.hpp — dense complex eigendecomposition, bandwidth measures and
// ring-vs-chain spectral comparison.
#pragma once

#include "ptring/lattice.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ptring {

/// Raised when the dense eigensolver fails to converge; the message carries
/// a short descriptor of the offending matrix.
struct EigensolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full spectrum of a dense complex matrix. Eigenvalues are sorted by real
/// part ascending, ties broken by imaginary part ascending; eigenvector
/// columns (unit Euclidean norm) follow the same order.
struct Spectrum {
    ComplexVector eigenvalues;
    std::optional<ComplexMatrix> eigenvectors;
    double max_imag = 0.0;  // max_n |Im eps_n|

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

Spectrum eigen(const ComplexMatrix& M, bool want_vectors);

/// Max residual ||H v - eps v|| / ||v|| over all eigenpairs, in units of
/// matrix_scale(M).
double max_eigen_residual(const ComplexMatrix& M, const Spectrum& s);

/// Bandwidth of the gamma=0 spectrum and the quarter-bandwidth energy unit.
struct BandMeasure {
    double full_width = 0.0;     // Delta'_alpha = max Re eps - min Re eps
    double quarter_width = 0.0;  // Delta_alpha = full_width / 4
};

/// Measures the gamma=0 bandwidth of the spec's Hamiltonian (lambda as
/// given); gamma is forced to zero internally.
BandMeasure band_measure(const LatticeSpec& spec);

/// Max residual of the eigenfunction difference equation
///   t(k) f_{k+1} + t(k-1) f_{k-1} + (eps - V_k) f_k = 0
/// with t(0) = t(N) = 0 and V the impurity diagonal. Requires lambda = 0
/// and a spectrum carrying eigenvectors.
double verify_difference_equation(const LatticeSpec& spec, const Spectrum& s);

/// Per-level difference E_ring - E_chain at gamma = 0, both spectra sorted
/// ascending by real part; ring means lambda = 1, chain lambda = 0.
std::vector<double> ring_chain_difference(const LatticeSpec& spec);

}  // namespace ptring
