#pragma once

// Explicit radial supersolution pairs (u, v) for the eight existence cases and
// their numerical verification: for a scale t > 0 both
//
//   L_{mu1}(t u) - (t v)^p >= 0   and   L_{mu2}(t v) - (t u)^q >= 0
//
// are checked at every point of a log-spaced radial grid, with the symbolic
// operator cross-checked against the finite-difference oracle.

#include "leh/classifier.hpp"
#include "leh/exponents.hpp"
#include "leh/parallel.hpp"
#include "leh/radial.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leh {

struct SupersolutionCandidate {
    CaseId case_id;
    RadialFunction u;
    RadialFunction v;
    /// Domain (0, r_domain]; below 1 only for log-bearing cases whose
    /// inequalities hold near the origin only.
    double r_domain = 1.0;
    /// Built in the exchanged frame (regime A with mu2 < 0 <= mu1) and mapped
    /// back by exchanging u and v.
    bool swapped = false;
    /// Named recipe exponents (tau1, tau2, epsilon0, ...), in build order.
    std::vector<std::pair<std::string, double>> exponents;
};

/// True for the cases whose pair carries a (-ln r) factor (C3, C6, C7).
bool is_log_bearing(CaseId id);

/// The recipe of `id` at (params, pq). Throws std::invalid_argument unless the
/// classifier assigns exactly this construction to the point, or if any of the
/// recipe's exponent windows fails.
SupersolutionCandidate build_candidate(CaseId id, const HardyParams& params, const ExponentPairPQ& pq);

/// The recipe formulas without any hypothesis check, for probing points
/// outside a case's region. Works in the frame given (no regime-A swap).
SupersolutionCandidate build_recipe(CaseId id, const HardyParams& params, const ExponentPairPQ& pq);

inline constexpr int kDefaultGridPoints = 512;
inline constexpr double kDefaultGridMin = 1e-6;
inline constexpr int kOracleSamples = 16;
inline constexpr double kOracleRelativeStep = 1e-4;
inline constexpr double kOracleTolerance = 1e-4;

/// Log grid on [r_min, r_domain (1 - 1e-3)]. If r_min does not fit below the
/// upper end it is replaced by r_domain * 1e-6.
RadialGrid verification_grid(double r_domain, int count = kDefaultGridPoints, double r_min = kDefaultGridMin);

struct VerificationReport {
    bool ok = false;
    double t = 0.0;
    double min_slack_u = 0.0;
    double min_slack_v = 0.0;
    RadialGrid grid{kDefaultGridMin, 1.0, 2};
    /// Largest normalised |symbolic - finite difference| over the oracle radii.
    double oracle_max_dev = 0.0;
    bool oracle_flagged = false;
    /// Leading-order comparison of both sides as r -> 0+. A side whose leading
    /// power is more singular wins for every t, below any finite grid.
    bool origin_ok = false;
    /// Empty when ok; otherwise the first grid failure, else the origin failure.
    std::string diagnostic;
};

VerificationReport verify_on_grid(const SupersolutionCandidate& candidate, double t, const HardyParams& params,
                                  const ExponentPairPQ& pq, const RadialGrid& grid,
                                  Execution execution = Execution::Parallel);

/// Serial reference for verify_on_grid.
VerificationReport verify_on_grid_serial(const SupersolutionCandidate& candidate, double t,
                                         const HardyParams& params, const ExponentPairPQ& pq,
                                         const RadialGrid& grid);

inline constexpr int kScaleLadderSteps = 60;

struct ScaleSearch {
    /// Largest accepted t in {2^0, ..., 2^-60}; empty on failure.
    std::optional<double> t;
    /// Report for the accepted t, or for 2^-60 on failure.
    VerificationReport report;
    int tried = 0;
};

ScaleSearch find_scale(const SupersolutionCandidate& candidate, const HardyParams& params, const ExponentPairPQ& pq,
                       const RadialGrid& grid, Execution execution = Execution::Parallel);

struct DomainSearch {
    /// Largest working radius (1 when the whole unit ball works); empty if
    /// nothing above 1e-8 works.
    std::optional<double> radius;
    int evaluations = 0;
};

/// For log-bearing cases, bisects (in log r) for the largest r1 such that
/// find_scale succeeds on a grid over (r1 1e-6, r1]. Other cases return 1.
DomainSearch find_domain(const SupersolutionCandidate& candidate, const HardyParams& params,
                         const ExponentPairPQ& pq, int grid_points = kDefaultGridPoints);

/// build_candidate, find_domain, find_scale and the final report in one go.
struct ConstructionRun {
    SupersolutionCandidate candidate;
    DomainSearch domain;
    ScaleSearch scale;
};

ConstructionRun run_construction(CaseId id, const HardyParams& params, const ExponentPairPQ& pq,
                                 int grid_points = kDefaultGridPoints, double r_min = kDefaultGridMin,
                                 Execution execution = Execution::Parallel);

}  // namespace leh
