#pragma once

// Radial functions spanned by r^tau and r^tau (-ln r), and the exact action
// of L_mu = -Delta + mu |x|^-2 on them. For a radial f,
//
//   L_mu f = -(f'' + (N-1)/r f') + mu/r^2 f,
//
// so L_mu r^tau = (mu - tau(tau+N-2)) r^(tau-2) and
// L_mu r^tau (-ln r) = (mu - tau(tau+N-2)) r^(tau-2) (-ln r) + (2tau+N-2) r^(tau-2).

#include <cmath>
#include <concepts>
#include <span>
#include <stdexcept>
#include <vector>

namespace leh {

struct RadialTerm {
    double coeff;
    double tau;
    int log_power;  ///< 0 or 1: multiplicity of the (-ln r) factor
};

/// Finite sum of RadialTerm, kept sorted by (tau, log_power) with merged keys.
/// The empty term list is the zero function.
class RadialFunction {
public:
    RadialFunction() = default;
    explicit RadialFunction(std::vector<RadialTerm> terms);

    static RadialFunction power(double tau, double coeff = 1.0);
    static RadialFunction log_power(double tau, double coeff = 1.0);

    std::span<const RadialTerm> terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    friend RadialFunction operator+(const RadialFunction& a, const RadialFunction& b);
    friend RadialFunction operator-(const RadialFunction& a, const RadialFunction& b);
    friend bool operator==(const RadialFunction&, const RadialFunction&) = default;

private:
    std::vector<RadialTerm> terms_;
};

inline bool operator==(const RadialTerm& a, const RadialTerm& b)
{
    return a.coeff == b.coeff && a.tau == b.tau && a.log_power == b.log_power;
}

/// Thrown by pow_eval when a non-integer power of a negative value is asked
/// for; the caller treats it as a positivity failure.
class NegativeBaseError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Log-spaced radii in [r_min, r_max].
class RadialGrid {
public:
    RadialGrid(double r_min, double r_max, int count);

    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    int count() const { return static_cast<int>(points_.size()); }
    std::span<const double> points() const { return points_; }
    double operator[](std::size_t i) const { return points_[i]; }

private:
    double r_min_;
    double r_max_;
    std::vector<double> points_;
};

template <std::floating_point T>
T eval_as(const RadialFunction& f, T r)
{
    if (!(r > T(0))) {
        throw std::invalid_argument("radial functions are evaluated at r > 0 only");
    }
    T sum = 0;
    for (const RadialTerm& term : f.terms()) {
        T value = T(term.coeff) * std::pow(r, T(term.tau));
        if (term.log_power == 1) {
            value *= -std::log(r);
        }
        sum += value;
    }
    return sum;
}

double eval(const RadialFunction& f, double r);

RadialFunction apply_hardy(int dimension, double mu, const RadialFunction& f);

/// Coefficient mu - tau(tau+N-2), with cancellation at the kernel exponents
/// flushed to an exact zero.
double hardy_symbol(int dimension, double mu, double tau);

enum class Stencil {
    Central3,  ///< second order: f'' ~ (f+ - 2f + f-)/h^2
    Central5,  ///< fourth order
};

/// L_mu f(r) by central differences of step h on f, evaluated in extended
/// precision. Requires 0 < h < r/4.
double hardy_fd_oracle(int dimension, double mu, const RadialFunction& f, double r, double h,
                       Stencil stencil = Stencil::Central5);

/// Natural magnitude of L_mu f at r: sum over terms of |c| r^(tau-2) times the
/// size of the operator symbol. Used to normalise oracle deviations.
double hardy_magnitude(int dimension, double mu, const RadialFunction& f, double r);

RadialFunction scale(const RadialFunction& f, double t);

/// eval(f, r)^s. Throws NegativeBaseError for a negative base with
/// non-integer s.
double pow_eval(const RadialFunction& f, double s, double r);

}  // namespace leh
