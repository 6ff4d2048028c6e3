#include "ptring/lattice.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptring {

void LatticeSpec::validate() const {
    if (n_sites < 3)
        throw std::invalid_argument("n_sites: must be an integer >= 3");
    if (!std::isfinite(alpha))
        throw std::invalid_argument("alpha: must be finite");
    if (!(t0 > 0.0) || !std::isfinite(t0))
        throw std::invalid_argument("t0: must be positive");
    if (gain_site < 1 || gain_site > n_sites / 2)
        throw std::invalid_argument("gain_site: must satisfy 1 <= m <= floor(N/2)");
    if (gamma < 0.0 || !std::isfinite(gamma))
        throw std::invalid_argument("gamma: must be non-negative");
    if (lambda_ring < 0.0 || lambda_ring > 1.0)
        throw std::invalid_argument("lambda_ring: must lie in [0, 1]");
}

double tunneling(const LatticeSpec& spec, int k) {
    if (k < 1 || k > spec.n_sites - 1)
        throw std::domain_error("tunneling: k must satisfy 1 <= k <= N-1");
    const double prod = static_cast<double>(k) * (spec.n_sites - k);
    return spec.t0 * std::pow(prod, 0.5 * spec.alpha);
}

double corner_tunneling(const LatticeSpec& spec) {
    return spec.t0 * std::pow(static_cast<double>(spec.n_sites - 1), 0.5 * spec.alpha);
}

ComplexMatrix build_hamiltonian(const LatticeSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (int k = 1; k <= n - 1; ++k) {
        const double t = tunneling(spec, k);
        h(k - 1, k) = -t;
        h(k, k - 1) = -t;
    }
    // Corner link carries the same negative sign as the chain links so that
    // lambda=1, alpha=0 reproduces the standard uniform ring spectrum.
    const double tr = spec.lambda_ring * corner_tunneling(spec);
    h(0, n - 1) += -tr;
    h(n - 1, 0) += -tr;
    h(spec.gain_site - 1, spec.gain_site - 1) = Complex(0.0, spec.gamma);
    h(spec.loss_site() - 1, spec.loss_site() - 1) = Complex(0.0, -spec.gamma);
    return h;
}

ComplexVector parity_apply(const ComplexVector& v) {
    return v.reverse();
}

ComplexMatrix pt_transform(const ComplexMatrix& M) {
    if (M.rows() != M.cols())
        throw std::invalid_argument("pt_transform: matrix must be square");
    // P * conj(M) * P reverses both index directions.
    return M.conjugate().reverse();
}

double matrix_scale(const ComplexMatrix& M) {
    return M.cwiseAbs().maxCoeff();
}

std::map<std::string, std::string> to_key_values(const LatticeSpec& spec) {
    auto num = [](double x) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
    };
    return {
        {"n_sites", std::to_string(spec.n_sites)},
        {"alpha", num(spec.alpha)},
        {"t0", num(spec.t0)},
        {"gain_site", std::to_string(spec.gain_site)},
        {"gamma", num(spec.gamma)},
        {"lambda_ring", num(spec.lambda_ring)},
    };
}

LatticeSpec spec_from_key_values(const std::map<std::string, std::string>& kv) {
    LatticeSpec spec;
    for (const auto& [key, value] : kv) {
        if (key != "n_sites" && key != "alpha" && key != "t0" &&
            key != "gain_site" && key != "gamma" && key != "lambda_ring")
            throw std::invalid_argument(key + ": unknown lattice key");
        try {
            if (key == "n_sites")
                spec.n_sites = std::stoi(value);
            else if (key == "alpha")
                spec.alpha = std::stod(value);
            else if (key == "t0")
                spec.t0 = std::stod(value);
            else if (key == "gain_site")
                spec.gain_site = std::stoi(value);
            else if (key == "gamma")
                spec.gamma = std::stod(value);
            else
                spec.lambda_ring = std::stod(value);
        } catch (const std::logic_error&) {
            throw std::invalid_argument(key + ": invalid value '" + value + "'");
        }
    }
    spec.validate();
    return spec;
}

}  // namespace ptring
