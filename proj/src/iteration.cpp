#include "leh/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace leh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

IterationTrace run(const HardyParams& params, const ExponentPairPQ& pq, IterationVariant variant, int cap)
{
    if (cap < 1) {
        throw std::invalid_argument("iteration cap must be at least 1");
    }
    const double tau_minus1 = params.tau1().tau_minus;
    const double tau_minus2 = params.tau2().tau_minus;

    IterationTrace trace{variant, {}, {CertificateKind::CapReached, cap, kNaN, kNaN}};
    double tau1 = params.tau1().tau_plus;
    double tau2 = params.tau2().tau_plus;
    const double seed1 = tau1;
    const double seed2 = tau2;
    trace.steps.push_back({0, tau1, tau2});

    for (int j = 1; j <= cap; ++j) {
        const bool clamp = variant == IterationVariant::Clamped && j == 1;

        double next2 = tau1 * pq.q + 2.0;
        if (clamp) {
            next2 = std::min(next2, seed2);
        }
        if (next2 <= tau_minus2) {
            trace.steps.push_back({j, std::nullopt, next2});
            trace.outcome = {CertificateKind::CrossedTau2, j, next2, tau_minus2};
            return trace;
        }

        double next1 = next2 * pq.p + 2.0;
        if (clamp) {
            next1 = std::min(next1, seed1);
        }
        trace.steps.push_back({j, next1, next2});
        if (next1 <= tau_minus1) {
            trace.outcome = {CertificateKind::CrossedTau1, j, next1, tau_minus1};
            return trace;
        }
        if (std::abs(next1 - tau1) <= kStallTolerance) {
            trace.outcome = {CertificateKind::Stalled, j, next1, kNaN};
            return trace;
        }
        // Exponents escaping to +infinity never cross; stop instead of
        // carrying infinities to the cap.
        if (!std::isfinite(next1) || !std::isfinite(next2)) {
            trace.outcome = {CertificateKind::CapReached, j, next1, kNaN};
            return trace;
        }
        tau1 = next1;
        tau2 = next2;
    }
    trace.outcome = {CertificateKind::CapReached, cap, tau1, kNaN};
    return trace;
}

}  // namespace

IterationTrace iterate_plain(const HardyParams& params, const ExponentPairPQ& pq, int cap)
{
    return run(params, pq, IterationVariant::Plain, cap);
}

IterationTrace iterate_clamped(const HardyParams& params, const ExponentPairPQ& pq, int cap)
{
    return run(params, pq, IterationVariant::Clamped, cap);
}

IterationTrace iterate(const HardyParams& params, const ExponentPairPQ& pq, IterationVariant variant, int cap)
{
    return run(params, pq, variant, cap);
}

int claim1_usable_steps(const IterationTrace& trace)
{
    // The clamped cycle (j = 1) does not follow the affine law, so a clamped
    // trace starts counting at j = 1 instead of j = 0.
    const int first = trace.variant == IterationVariant::Clamped ? 1 : 0;
    int usable = 0;
    for (const IterationStep& step : trace.steps) {
        if (step.j >= first && step.tau1) {
            ++usable;
        }
    }
    return usable;
}

bool claim1_check(const IterationTrace& trace, const ExponentPairPQ& pq)
{
    const int first = trace.variant == IterationVariant::Clamped ? 1 : 0;
    std::vector<double> tau1;
    for (const IterationStep& step : trace.steps) {
        if (step.j >= first && step.tau1) {
            tau1.push_back(*step.tau1);
        }
    }
    if (tau1.size() < 3) {
        throw std::invalid_argument("geometric-law check needs at least three usable tau1 values, got " +
                                    std::to_string(tau1.size()));
    }
    const double ratio = pq.p * pq.q;
    for (std::size_t i = 2; i < tau1.size(); ++i) {
        const double s_prev = tau1[i - 1] - tau1[i - 2];
        const double s_next = tau1[i] - tau1[i - 1];
        if (!(std::abs(s_next - ratio * s_prev) <= 1e-9 * std::max(1.0, std::abs(s_prev)))) {
            return false;
        }
    }
    return true;
}

std::optional<int> crossing_step_bound(const HardyParams& params, const ExponentPairPQ& pq)
{
    const double ratio = pq.p * pq.q;
    const BoundaryExpressions ex = boundary_expressions(params, pq);
    if (!(ratio > 1.0) || !(ex.e1 < 0.0)) {
        return std::nullopt;
    }
    const double fixed = (2.0 * pq.p + 2.0) / (1.0 - ratio);
    const double start = params.tau1().tau_plus - fixed;
    const double target = params.tau1().tau_minus - fixed;
    // start < 0; crossing needs (pq)^j start <= target.
    if (target >= 0.0 || start >= 0.0) {
        return 1;
    }
    const double steps = std::log(target / start) / std::log(ratio);
    return static_cast<int>(std::ceil(std::max(0.0, steps))) + 2;
}

std::string_view to_string(CertificateKind kind)
{
    switch (kind) {
    case CertificateKind::CrossedTau1: return "CrossedTau1";
    case CertificateKind::CrossedTau2: return "CrossedTau2";
    case CertificateKind::Stalled: return "Stalled";
    case CertificateKind::CapReached: return "CapReached";
    }
    return "?";
}

std::string_view to_string(IterationVariant variant)
{
    return variant == IterationVariant::Plain ? "plain" : "clamped";
}

IterationVariant parse_variant(std::string_view text)
{
    if (text == "plain") {
        return IterationVariant::Plain;
    }
    if (text == "clamped") {
        return IterationVariant::Clamped;
    }
    throw std::invalid_argument("variant must be 'plain' or 'clamped'");
}

}  // namespace leh
