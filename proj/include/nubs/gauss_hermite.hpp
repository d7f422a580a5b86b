#ifndef NUBS_GAUSS_HERMITE_HPP
#define NUBS_GAUSS_HERMITE_HPP

#include <vector>

namespace nubs {

/// Nodes and weights for Gauss-Hermite quadrature with weight exp(-x^2):
/// integral f(x) exp(-x^2) dx ~ sum w_i f(x_i). For expectations against
/// N(0,1) use E[g(Z)] = pi^{-1/2} sum w_i g(sqrt(2) x_i).
struct GaussHermiteRule {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;
};

/// Computes the n-point rule by Newton iteration on the normalized Hermite
/// recurrence. Throws std::invalid_argument for n < 1.
GaussHermiteRule gauss_hermite(int n);

}  // namespace nubs

#endif
