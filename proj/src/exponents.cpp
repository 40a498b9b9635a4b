#include "leh/exponents.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace leh {

namespace {

void require_dimension(int dimension)
{
    if (dimension < 3) {
        throw std::invalid_argument("dimension N=" + std::to_string(dimension) +
                                    " is below the Hardy regime (N >= 3)");
    }
}

std::optional<double> ratio_over(double numerator, double tau_plus)
{
    if (tau_plus < 0.0) {
        return numerator / (-tau_plus);
    }
    return std::nullopt;
}

}  // namespace

double mu_zero(int dimension)
{
    require_dimension(dimension);
    const double d = static_cast<double>(dimension - 2);
    return -(d * d) / 4.0;
}

double mu_snap_tolerance(int dimension)
{
    require_dimension(dimension);
    const double d = static_cast<double>(dimension - 2);
    return 1e-13 * d * d;
}

double snap_mu(int dimension, double mu)
{
    const double mu0 = mu_zero(dimension);
    if (!std::isfinite(mu)) {
        throw std::invalid_argument("Hardy coefficient must be finite");
    }
    const double band = mu_snap_tolerance(dimension);
    if (mu < mu0 - band) {
        throw std::invalid_argument("Hardy coefficient " + std::to_string(mu) +
                                    " is below mu0=" + std::to_string(mu0));
    }
    if (std::abs(mu - mu0) <= band) {
        return mu0;
    }
    return mu;
}

ExponentPair tau_pair(int dimension, double mu)
{
    mu = snap_mu(dimension, mu);
    const double half = static_cast<double>(dimension - 2) / 2.0;
    const double mu0 = mu_zero(dimension);
    if (mu == mu0) {
        return {-half, -half};
    }
    const double root = std::sqrt(mu - mu0);
    const double tau_minus = -half - root;
    // tau_+ tau_- = -mu; this form avoids cancellation in -half + root near mu = 0.
    const double tau_plus = mu / (-tau_minus);
    return {tau_plus, tau_minus};
}

double p_star(int dimension, double mu)
{
    const ExponentPair tau = tau_pair(dimension, mu);
    if (!(tau.tau_plus < 0.0)) {
        throw std::invalid_argument("p* needs mu < 0 so that tau_+(mu) < 0");
    }
    return 1.0 + 2.0 / (-tau.tau_plus);
}

HardyParams::HardyParams(int dimension, double mu1, double mu2)
    : dimension_(dimension),
      mu1_(snap_mu(dimension, mu1)),
      mu2_(snap_mu(dimension, mu2)),
      mu0_(mu_zero(dimension)),
      tau1_(tau_pair(dimension, mu1_)),
      tau2_(tau_pair(dimension, mu2_))
{
}

ExponentPairPQ::ExponentPairPQ(double p_, double q_) : p(p_), q(q_)
{
    if (!std::isfinite(p) || !std::isfinite(q) || !(p > 0.0) || !(q > 0.0)) {
        throw std::invalid_argument("exponents p and q must be finite and positive");
    }
}

BoundaryExpressions boundary_expressions(const HardyParams& params, const ExponentPairPQ& pq)
{
    const double t1 = params.tau1().tau_plus;
    const double t2 = params.tau2().tau_plus;
    const double n = params.dimension();
    const double pq_prod = pq.p * pq.q;

    BoundaryExpressions out{};
    out.e1 = t1 * (pq_prod - 1.0) + 2.0 * pq.p + 2.0;
    out.e2 = t2 * (pq_prod - 1.0) + 2.0 * pq.q + 2.0;
    out.e3 = t1 * (pq_prod + 1.0) + 2.0 * pq.p + n;
    out.q_integrability = ratio_over(n + t2, t1);
    out.p_integrability = ratio_over(n + t1, t2);
    out.q_bootstrap = ratio_over(2.0 - t2, t1);
    out.p_bootstrap = ratio_over(2.0 - t1, t2);
    out.q_strip = ratio_over(2.0, t1);
    out.p_strip = ratio_over(2.0, t2);
    return out;
}

double e1_scale(const HardyParams& params, const ExponentPairPQ& pq)
{
    return std::abs(params.tau1().tau_plus) * (pq.p * pq.q + 1.0) + 2.0 * pq.p + 2.0;
}

double e2_scale(const HardyParams& params, const ExponentPairPQ& pq)
{
    return std::abs(params.tau2().tau_plus) * (pq.p * pq.q + 1.0) + 2.0 * pq.q + 2.0;
}

}  // namespace leh
