#include "leh/radial.hpp"

#include "leh/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace leh {

namespace {

constexpr double kMergeTolerance = 1e-13;
constexpr double kDropRelative = 1e-14;
constexpr double kSymbolFlush = 1e-13;

bool same_key(const RadialTerm& a, const RadialTerm& b)
{
    return a.log_power == b.log_power &&
           std::abs(a.tau - b.tau) <= kMergeTolerance * std::max(1.0, std::abs(a.tau));
}

std::vector<RadialTerm> normalize(std::vector<RadialTerm> terms)
{
    for (const RadialTerm& t : terms) {
        if (t.log_power != 0 && t.log_power != 1) {
            throw std::invalid_argument("log_power must be 0 or 1");
        }
        if (!std::isfinite(t.coeff) || !std::isfinite(t.tau)) {
            throw std::invalid_argument("radial term with non-finite coefficient or exponent");
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const RadialTerm& a, const RadialTerm& b) {
        return a.tau < b.tau || (a.tau == b.tau && a.log_power < b.log_power);
    });

    // Keys that agree up to round-off collapse onto the first exponent seen.
    // Log and non-log terms may interleave inside one tolerance window, so
    // merge per log_power.
    std::vector<RadialTerm> merged;
    merged.reserve(terms.size());
    for (const RadialTerm& t : terms) {
        auto it = std::find_if(merged.rbegin(), merged.rend(), [&](const RadialTerm& m) {
            return same_key(m, t);
        });
        if (it != merged.rend()) {
            it->coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }

    double largest = 0.0;
    for (const RadialTerm& t : merged) {
        largest = std::max(largest, std::abs(t.coeff));
    }
    std::erase_if(merged, [&](const RadialTerm& t) {
        return t.coeff == 0.0 || std::abs(t.coeff) < kDropRelative * largest;
    });
    std::stable_sort(merged.begin(), merged.end(), [](const RadialTerm& a, const RadialTerm& b) {
        return a.tau < b.tau || (a.tau == b.tau && a.log_power < b.log_power);
    });
    return merged;
}

}  // namespace

RadialFunction::RadialFunction(std::vector<RadialTerm> terms) : terms_(normalize(std::move(terms))) {}

RadialFunction RadialFunction::power(double tau, double coeff)
{
    return RadialFunction({{coeff, tau, 0}});
}

RadialFunction RadialFunction::log_power(double tau, double coeff)
{
    return RadialFunction({{coeff, tau, 1}});
}

RadialFunction operator+(const RadialFunction& a, const RadialFunction& b)
{
    std::vector<RadialTerm> all(a.terms_.begin(), a.terms_.end());
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return RadialFunction(std::move(all));
}

RadialFunction operator-(const RadialFunction& a, const RadialFunction& b)
{
    return a + scale(b, -1.0);
}

RadialGrid::RadialGrid(double r_min, double r_max, int count) : r_min_(r_min), r_max_(r_max)
{
    if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max) || count < 2) {
        throw std::invalid_argument("radial grid needs 0 < r_min < r_max and at least 2 points");
    }
    points_.resize(static_cast<std::size_t>(count));
    const double log_lo = std::log(r_min);
    const double log_span = std::log(r_max) - log_lo;
    for (int i = 0; i < count; ++i) {
        points_[static_cast<std::size_t>(i)] =
            std::exp(log_lo + log_span * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    points_.front() = r_min;
    points_.back() = r_max;
}

double eval(const RadialFunction& f, double r)
{
    return eval_as<double>(f, r);
}

double hardy_symbol(int dimension, double mu, double tau)
{
    const double quad = tau * (tau + static_cast<double>(dimension - 2));
    const double value = mu - quad;
    if (std::abs(value) <= kSymbolFlush * std::max({1.0, std::abs(mu), std::abs(quad)})) {
        return 0.0;
    }
    return value;
}

RadialFunction apply_hardy(int dimension, double mu, const RadialFunction& f)
{
    mu = snap_mu(dimension, mu);
    const double n_minus_2 = static_cast<double>(dimension - 2);
    std::vector<RadialTerm> out;
    out.reserve(2 * f.size());
    for (const RadialTerm& t : f.terms()) {
        if (t.log_power != 0 && t.log_power != 1) {
            throw std::invalid_argument("apply_hardy supports log_power 0 or 1 only");
        }
        const double symbol = hardy_symbol(dimension, mu, t.tau);
        if (symbol != 0.0) {
            out.push_back({t.coeff * symbol, t.tau - 2.0, t.log_power});
        }
        if (t.log_power == 1) {
            double drift = 2.0 * t.tau + n_minus_2;
            if (std::abs(drift) <= kSymbolFlush * std::max({1.0, std::abs(t.tau), n_minus_2})) {
                drift = 0.0;
            }
            if (drift != 0.0) {
                out.push_back({t.coeff * drift, t.tau - 2.0, 0});
            }
        }
    }
    return RadialFunction(std::move(out));
}

double hardy_fd_oracle(int dimension, double mu, const RadialFunction& f, double r, double h,
                       Stencil stencil)
{
    if (!(r > 0.0) || !(h > 0.0) || !(h < r / 4.0) || !std::isfinite(h)) {
        throw std::invalid_argument("finite-difference oracle needs 0 < h < r/4");
    }
    using LD = long double;
    const LD rr = r;
    const LD hh = h;
    const LD f0 = eval_as<LD>(f, rr);
    const LD fp1 = eval_as<LD>(f, rr + hh);
    const LD fm1 = eval_as<LD>(f, rr - hh);
    LD d1 = 0;
    LD d2 = 0;
    if (stencil == Stencil::Central3) {
        d1 = (fp1 - fm1) / (2 * hh);
        d2 = (fp1 - 2 * f0 + fm1) / (hh * hh);
    } else {
        const LD fp2 = eval_as<LD>(f, rr + 2 * hh);
        const LD fm2 = eval_as<LD>(f, rr - 2 * hh);
        d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * hh);
        d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * hh * hh);
    }
    const LD n_minus_1 = static_cast<LD>(dimension - 1);
    const LD result = -(d2 + n_minus_1 / rr * d1) + static_cast<LD>(mu) / (rr * rr) * f0;
    return static_cast<double>(result);
}

double hardy_magnitude(int dimension, double mu, const RadialFunction& f, double r)
{
    const double n_minus_2 = static_cast<double>(dimension - 2);
    const double log_r = std::abs(std::log(r));
    double total = 0.0;
    for (const RadialTerm& t : f.terms()) {
        const double base = std::abs(t.coeff) * std::pow(r, t.tau - 2.0);
        const double symbol = std::abs(mu) + std::abs(t.tau * (t.tau + n_minus_2));
        if (t.log_power == 0) {
            total += base * symbol;
        } else {
            total += base * (symbol * log_r + std::abs(2.0 * t.tau + n_minus_2));
        }
    }
    return total;
}

RadialFunction scale(const RadialFunction& f, double t)
{
    if (!std::isfinite(t)) {
        throw std::invalid_argument("scale factor must be finite");
    }
    std::vector<RadialTerm> out(f.terms().begin(), f.terms().end());
    for (RadialTerm& term : out) {
        term.coeff *= t;
    }
    return RadialFunction(std::move(out));
}

double pow_eval(const RadialFunction& f, double s, double r)
{
    const double base = eval(f, r);
    if (base < 0.0 && std::trunc(s) != s) {
        throw NegativeBaseError("negative base " + std::to_string(base) + " at r=" +
                                std::to_string(r) + " for non-integer power");
    }
    return std::pow(base, s);
}

}  // namespace leh
