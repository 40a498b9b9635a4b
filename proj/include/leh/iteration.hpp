#pragma once

// Singularity-exponent bootstrap. Starting from the lower bounds
// u >= c r^tau_+(mu1), v >= c r^tau_+(mu2), each half-step feeds one bound
// through the other equation:
//
//   tau2(j) = tau1(j-1) q + 2,    tau1(j) = tau2(j) p + 2,
//
// i.e. tau1(j) = pq tau1(j-1) + 2p + 2. A certificate is produced as soon as
// an exponent reaches the non-admissible range tau <= tau_-(mu).

#include "leh/exponents.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace leh {

enum class IterationVariant { Plain, Clamped };

enum class CertificateKind { CrossedTau1, CrossedTau2, Stalled, CapReached };

struct Certificate {
    CertificateKind kind;
    int step;
    double value;
    double threshold;  ///< tau_-(mu_i) for the crossed kinds; NaN otherwise
};

struct IterationStep {
    int j;
    /// Absent on the step where tau2 crossed (the second half-step never ran).
    std::optional<double> tau1;
    double tau2;
};

struct IterationTrace {
    IterationVariant variant;
    std::vector<IterationStep> steps;
    Certificate outcome;
};

inline constexpr int kDefaultIterationCap = 10000;
inline constexpr double kStallTolerance = 1e-13;

IterationTrace iterate_plain(const HardyParams& params, const ExponentPairPQ& pq,
                             int cap = kDefaultIterationCap);

/// As iterate_plain, but the first full cycle clamps each new exponent by its
/// seed: tau2(1) = min(tau1(0) q + 2, tau2(0)), tau1(1) = min(tau2(1) p + 2, tau1(0)).
IterationTrace iterate_clamped(const HardyParams& params, const ExponentPairPQ& pq,
                               int cap = kDefaultIterationCap);

IterationTrace iterate(const HardyParams& params, const ExponentPairPQ& pq, IterationVariant variant,
                       int cap = kDefaultIterationCap);

/// Checks the geometric law s_(j+1) = pq s_j on successive tau1 differences,
/// skipping the clamped first cycle. Throws std::invalid_argument if the trace
/// has fewer than three usable tau1 values.
bool claim1_check(const IterationTrace& trace, const ExponentPairPQ& pq);

/// Number of usable tau1 values claim1_check would inspect.
int claim1_usable_steps(const IterationTrace& trace);

/// Upper bound on the step at which the plain iteration crosses tau_-(mu1)
/// when pq > 1 and e1 < 0, from tau1(j) - t* = (pq)^j (tau1(0) - t*) with
/// t* = (2p+2)/(1-pq). Empty outside that regime.
std::optional<int> crossing_step_bound(const HardyParams& params, const ExponentPairPQ& pq);

std::string_view to_string(CertificateKind kind);
std::string_view to_string(IterationVariant variant);
IterationVariant parse_variant(std::string_view text);

}  // namespace leh
