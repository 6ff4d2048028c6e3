// lattice.hpp — lattice parameterization, Hamiltonian assembly, parity and
// PT operations for the nonuniform chain/ring with balanced gain/loss.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <string>

namespace ptring {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Parameters of an N-site lattice with tunneling profile
/// t_alpha(k) = t0 * [k(N-k)]^(alpha/2), a gain impurity +i*gamma at site m,
/// its loss partner -i*gamma at mbar = N+1-m, and a corner link between
/// sites 1 and N scaled by lambda_ring (0 = open chain, 1 = ring).
/// Site indices are 1-based throughout.
struct LatticeSpec {
    int n_sites = 0;           // N, must be >= 3
    double alpha = 0.0;        // profile exponent, any real
    double t0 = 1.0;           // tunneling scale; sets the energy unit
    int gain_site = 1;         // m, 1 <= m <= floor(N/2)
    double gamma = 0.0;        // impurity strength, >= 0
    double lambda_ring = 0.0;  // corner-link scale in [0, 1]

    int loss_site() const { return n_sites + 1 - gain_site; }
    double mu() const { return static_cast<double>(gain_site) / n_sites; }

    LatticeSpec with_gamma(double g) const {
        LatticeSpec s = *this;
        s.gamma = g;
        return s;
    }
    LatticeSpec with_lambda(double lam) const {
        LatticeSpec s = *this;
        s.lambda_ring = lam;
        return s;
    }
    LatticeSpec with_gain_site(int m) const {
        LatticeSpec s = *this;
        s.gain_site = m;
        return s;
    }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// t_alpha(k), the hopping between sites k and k+1. Requires 1 <= k <= N-1.
double tunneling(const LatticeSpec& spec, int k);

/// Corner hopping t_R = t_alpha(1) = t0 * (N-1)^(alpha/2).
double corner_tunneling(const LatticeSpec& spec);

/// Dense N x N Hamiltonian: -t_alpha(k) on the sub/superdiagonal,
/// -lambda * t_R on the (1,N)/(N,1) corners, +i*gamma at (m,m) and
/// -i*gamma at (mbar,mbar).
ComplexMatrix build_hamiltonian(const LatticeSpec& spec);

/// Site reversal: out[k] = v[N+1-k]. Involutive.
ComplexVector parity_apply(const ComplexVector& v);

/// Combined parity + time reversal: P * conj(M) * P with P the exchange
/// (anti-diagonal) permutation. A matrix is PT-symmetric iff this is a
/// fixed point.
ComplexMatrix pt_transform(const ComplexMatrix& M);

/// Largest |entry|; the unit for all relative tolerances on this matrix.
double matrix_scale(const ComplexMatrix& M);

// Flat key-value record round-trip (keys: n_sites, alpha, t0, gain_site,
// gamma, lambda_ring).
std::map<std::string, std::string> to_key_values(const LatticeSpec& spec);
LatticeSpec spec_from_key_values(const std::map<std::string, std::string>& kv);

}  // namespace ptring
