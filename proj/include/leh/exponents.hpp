#pragma once

// Exponent arithmetic for the Hardy operator L_mu = -Delta + mu |x|^-2 in
// dimension N >= 3, and the scalar expressions that bound every (p, q)
// region of the Lane-Emden system
//
//   L_{mu1} u >= v^p,   L_{mu2} v >= u^q   in B \ {0}.

#include <optional>

namespace leh {

/// Hardy threshold -(N-2)^2/4. Throws std::invalid_argument for N < 3.
double mu_zero(int dimension);

/// Coefficients within this band of mu_zero(N) are snapped onto it, so the
/// double-root branch is taken deterministically.
double mu_snap_tolerance(int dimension);

/// Validates mu against mu_zero(N) and snaps the boundary band onto it.
double snap_mu(int dimension, double mu);

/// Roots of mu - tau (tau + N - 2) = 0.
struct ExponentPair {
    double tau_plus;
    double tau_minus;
};

ExponentPair tau_pair(int dimension, double mu);

/// 1 + 2 / (-tau_+(mu)); defined for mu_zero(N) <= mu < 0.
double p_star(int dimension, double mu);

/// Dimension and the two Hardy coefficients. Construction validates N >= 3
/// and mu_i >= mu_zero(N) (after snapping); the exponents are cached.
class HardyParams {
public:
    HardyParams(int dimension, double mu1, double mu2);

    int dimension() const { return dimension_; }
    double mu1() const { return mu1_; }
    double mu2() const { return mu2_; }
    double mu0() const { return mu0_; }
    const ExponentPair& tau1() const { return tau1_; }
    const ExponentPair& tau2() const { return tau2_; }

    bool mu1_at_threshold() const { return mu1_ == mu0_; }
    bool mu2_at_threshold() const { return mu2_ == mu0_; }

    /// Same dimension with the roles of the two equations exchanged.
    HardyParams swapped() const { return HardyParams(dimension_, mu2_, mu1_); }

private:
    int dimension_;
    double mu1_;
    double mu2_;
    double mu0_;
    ExponentPair tau1_;
    ExponentPair tau2_;
};

/// Nonlinearity exponents; both strictly positive and finite.
struct ExponentPairPQ {
    double p;
    double q;

    ExponentPairPQ(double p_, double q_);
    ExponentPairPQ swapped() const { return ExponentPairPQ(q, p); }
};

/// Boundary expressions of the region theorems.
///
///   e1 = tau_+(mu1)(pq - 1) + 2p + 2
///   e2 = tau_+(mu2)(pq - 1) + 2q + 2
///   e3 = tau_+(mu1)(pq + 1) + 2p + N
///
/// The threshold ratios divide by -tau_+(mu_i) and are only present when
/// that exponent is negative.
struct BoundaryExpressions {
    double e1;
    double e2;
    double e3;
    std::optional<double> q_integrability;  ///< (N + tau_+(mu2)) / (-tau_+(mu1))
    std::optional<double> p_integrability;  ///< (N + tau_+(mu1)) / (-tau_+(mu2))
    std::optional<double> q_bootstrap;      ///< (2 - tau_+(mu2)) / (-tau_+(mu1))
    std::optional<double> p_bootstrap;      ///< (2 - tau_+(mu1)) / (-tau_+(mu2))
    std::optional<double> q_strip;          ///< 2 / (-tau_+(mu1))
    std::optional<double> p_strip;          ///< 2 / (-tau_+(mu2))
};

BoundaryExpressions boundary_expressions(const HardyParams& params, const ExponentPairPQ& pq);

/// Rounding scale of e1 / e2, used to decide when a value sits on its curve.
double e1_scale(const HardyParams& params, const ExponentPairPQ& pq);
double e2_scale(const HardyParams& params, const ExponentPairPQ& pq);

}  // namespace leh
