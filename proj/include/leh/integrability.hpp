#pragma once

// Membership of nonnegative radial functions in L^1(B_r0, dgamma_mu), where
// dgamma_mu = |x|^tau_+(mu) dx. A term c r^tau (-ln r)^k is integrable at the
// origin iff sigma = tau + tau_+(mu) + N > 0; the log factor never rescues
// sigma <= 0.

#include "leh/radial.hpp"

#include <limits>
#include <vector>

namespace leh {

struct IntegrabilityVerdict {
    bool integrable;
    /// Minimal sigma over the terms (+inf for the zero function).
    double critical_exponent_gap;
};

IntegrabilityVerdict is_gamma_integrable(int dimension, double mu, const RadialFunction& f, double r0);

/// Shortcut for the single power r^tau.
IntegrabilityVerdict is_gamma_integrable_power(int dimension, double mu, double tau);

enum class QuadratureTrend { Converged, Diverged, Inconclusive };

/// Truncated integrals int_{eps_k}^{r0} f dgamma_mu (radial part, the sphere
/// area dropped) for a sequence of cutoffs, and the trend they show.
struct QuadratureCheck {
    std::vector<double> cutoff_depths;  ///< -ln(eps_k)
    std::vector<double> values;
    QuadratureTrend trend;
};

/// Cutoff depths -ln(eps) for eps in {1e-3, 1e-6, 1e-9}.
std::vector<double> shallow_cutoff_depths();
/// Cutoff depths {1e2, 1e4, 1e6, 1e8}; eps = e^-depth is far below the double
/// range, so the integral is computed in the variable s = -ln r.
std::vector<double> deep_cutoff_depths();

/// Adaptive Gauss-Kronrod quadrature of the truncated weighted integrals.
/// Converged: the last two values agree to 1e-6 relative. Diverged: the last
/// value is non-finite or exceeds 10x the first.
QuadratureCheck gamma_quadrature_check(int dimension, double mu, const RadialFunction& f, double r0,
                                       const std::vector<double>& cutoff_depths);

}  // namespace leh
