#include "leh/integrability.hpp"

#include "leh/exponents.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leh {

namespace {

void require_nonnegative_terms(const RadialFunction& f)
{
    for (const RadialTerm& t : f.terms()) {
        if (!(t.coeff > 0.0)) {
            throw std::invalid_argument(
                "integrability test needs f >= 0: every term must have a positive coefficient");
        }
    }
}

void require_radius(double r0)
{
    if (!(r0 > 0.0) || !(r0 <= 1.0)) {
        throw std::invalid_argument("integration radius must satisfy 0 < r0 <= 1");
    }
}

// int_a^b of c s^k exp(-sigma s) ds, split towards the left end where the
// integrand changes fastest.
double segment_integral(const std::vector<RadialTerm>& shifted, double a, double b)
{
    using boost::math::quadrature::gauss_kronrod;
    auto integrand = [&](double s) {
        double sum = 0.0;
        for (const RadialTerm& t : shifted) {
            double value = t.coeff * std::exp(-t.tau * s);
            if (t.log_power == 1) {
                value *= s;
            }
            sum += value;
        }
        return sum;
    };
    constexpr int pieces = 48;
    double total = 0.0;
    double left = a;
    for (int j = 1; j <= pieces; ++j) {
        const double frac = static_cast<double>(j) / pieces;
        const double right = (j == pieces) ? b : a + (b - a) * frac * frac * frac;
        if (right > left) {
            total += gauss_kronrod<double, 31>::integrate(integrand, left, right, 12, 1e-12);
        }
        if (!std::isfinite(total)) {
            return total;
        }
        left = right;
    }
    return total;
}

}  // namespace

IntegrabilityVerdict is_gamma_integrable(int dimension, double mu, const RadialFunction& f, double r0)
{
    require_radius(r0);
    require_nonnegative_terms(f);
    const double tau_plus = tau_pair(dimension, mu).tau_plus;
    double gap = std::numeric_limits<double>::infinity();
    for (const RadialTerm& t : f.terms()) {
        gap = std::min(gap, t.tau + tau_plus + static_cast<double>(dimension));
    }
    return {gap > 0.0, gap};
}

IntegrabilityVerdict is_gamma_integrable_power(int dimension, double mu, double tau)
{
    return is_gamma_integrable(dimension, mu, RadialFunction::power(tau), 1.0);
}

std::vector<double> shallow_cutoff_depths()
{
    return {-std::log(1e-3), -std::log(1e-6), -std::log(1e-9)};
}

std::vector<double> deep_cutoff_depths()
{
    return {1e2, 1e4, 1e6, 1e8};
}

QuadratureCheck gamma_quadrature_check(int dimension, double mu, const RadialFunction& f, double r0,
                                       const std::vector<double>& cutoff_depths)
{
    require_radius(r0);
    require_nonnegative_terms(f);
    if (cutoff_depths.size() < 2) {
        throw std::invalid_argument("quadrature check needs at least two cutoffs");
    }
    const double start = -std::log(r0);
    if (!std::is_sorted(cutoff_depths.begin(), cutoff_depths.end()) || !(cutoff_depths.front() > start)) {
        throw std::invalid_argument("cutoff depths must increase and lie below r0");
    }

    // With r = e^-s: r^tau (-ln r)^k r^tau_+ r^(N-1) dr = s^k e^(-(tau+tau_+ +N) s) ds.
    const double tau_plus = tau_pair(dimension, mu).tau_plus;
    std::vector<RadialTerm> shifted(f.terms().begin(), f.terms().end());
    for (RadialTerm& t : shifted) {
        t.tau = t.tau + tau_plus + static_cast<double>(dimension);
    }

    QuadratureCheck check{cutoff_depths, {}, QuadratureTrend::Inconclusive};
    double running = 0.0;
    double left = start;
    for (double depth : cutoff_depths) {
        if (std::isfinite(running)) {
            running += segment_integral(shifted, left, depth);
        }
        check.values.push_back(running);
        left = depth;
    }

    const double first = check.values.front();
    const double last = check.values.back();
    const double previous = check.values[check.values.size() - 2];
    // A settled tail wins over growth from a small first value.
    if (std::isfinite(last) && std::abs(last - previous) <= 1e-6 * std::abs(last)) {
        check.trend = QuadratureTrend::Converged;
    } else if (!std::isfinite(last) || last > 10.0 * first) {
        check.trend = QuadratureTrend::Diverged;
    }
    return check;
}

}  // namespace leh
