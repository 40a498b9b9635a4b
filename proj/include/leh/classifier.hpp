#pragma once

// Maps (N, mu1, mu2, p, q) to the nonexistence / existence / open verdict of
// the region theorems, together with the clause that decides it.
//
// Regimes (tau_i = tau_+(mu_i)):
//   A: mu0 <= mu1 < 0 <= mu2   (or the mirror image, handled by swapping)
//   B: mu0 <= mu1, mu2 < 0
//   C: mu1, mu2 >= 0           -> out of scope
//
// Comparisons against open edges and the curves e1 = 0, e2 = 0 use a 1e-12
// relative band; a point inside the band is never given a claim that needs
// the strict inequality. Integrability edges (q >= (N + tau_2)/(-tau_1) etc.)
// are evaluated through the same gap expression the integrability module uses.

#include "leh/exponents.hpp"
#include "leh/integrability.hpp"
#include "leh/iteration.hpp"
#include "leh/parallel.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace leh {

enum class Verdict { Nonexistence, ExistsSupersolution, OpenCritical, OutOfScope };

enum class Citation {
    T1_i,
    T1_ii,
    T2_i,
    T2_ii,
    T2_iii,
    T3_i_case1,
    T3_i_case2,
    T3_i_case3,
    T3_ii_a1,
    T3_ii_a2,
    T3_ii_b1,
    T3_ii_b2,
    P2_1,
    CriticalAQ,
    CriticalAB,
    CriticalBC,
    DottedBoundary,
    NoNegativeCoefficient,
};

enum class Regime { A, B, C };

/// Explicit supersolution recipes C1..C8.
enum class CaseId { C1 = 1, C2, C3, C4, C5, C6, C7, C8 };

struct RegionClass {
    Verdict verdict;
    Citation citation;
    double margin;
    Regime regime;
    /// Regime A with mu2 < 0 <= mu1: the clause holds for the exchanged system.
    bool swapped = false;
    std::optional<CaseId> construction;
    /// Regime A existence is stated on the unit ball only.
    bool unit_ball_only = false;
};

/// Every clause evaluated independently, in the oriented frame (after the
/// regime-A swap). The existence flags c1..c8 are the hypothesis regions of
/// the explicit constructions; the *_literal flags are the theorem statements
/// as printed, kept for comparison.
struct ClauseSet {
    Regime regime = Regime::C;
    bool swapped = false;

    bool t1_i = false;
    bool t1_ii = false;
    bool t1_ii_boundary = false;  ///< t1_ii reached through e1 = 0 at mu1 = mu0
    bool t2_i = false;
    bool t2_ii = false;
    bool t2_iii = false;

    bool c1 = false, c2 = false, c3 = false, c4 = false;
    bool c5 = false, c6 = false, c7 = false, c8 = false;

    bool critical_aq = false;
    bool critical_ab = false;
    bool critical_bc = false;

    bool t3_i_literal = false;
    bool t3_ii_a2_literal = false;
    bool t3_ii_b2_literal = false;

    bool any_nonexistence() const { return t1_i || t1_ii || t2_i || t2_ii || t2_iii; }
    bool any_existence() const { return c1 || c2 || c3 || c4 || c5 || c6 || c7 || c8; }
};

Regime regime_of(const HardyParams& params);

ClauseSet evaluate_clauses(const HardyParams& params, const ExponentPairPQ& pq);

RegionClass classify(const HardyParams& params, const ExponentPairPQ& pq);

struct Interval {
    double lo;
    double hi;
};

/// Interval parsed from "a..b".
Interval parse_interval(std::string_view text);

/// Row-major sampled classification: row j holds q_j, column i holds p_i.
struct RegionGrid {
    int resolution = 0;
    std::vector<double> p_values;
    std::vector<double> q_values;
    std::vector<RegionClass> cells;

    const RegionClass& at(int row, int col) const
    {
        return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(resolution) +
                     static_cast<std::size_t>(col)];
    }
};

/// Uniform grid of resolution x resolution points including both interval
/// ends; resolution 1 samples the lower corner.
RegionGrid classify_grid(const HardyParams& params, Interval p_range, Interval q_range, int resolution,
                         Execution execution = Execution::Parallel);

/// Serial reference for classify_grid.
RegionGrid classify_grid_serial(const HardyParams& params, Interval p_range, Interval q_range,
                                int resolution);

/// Signals that the cited mechanism failed to produce its evidence.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class WitnessMechanism { Integrability, Iteration };

struct IntegrabilityWitness {
    /// Which measure dgamma_{mu_i} the power is tested against (1 or 2).
    int measure;
    double tau;
    IntegrabilityVerdict verdict;
    /// The gap is zero in exact arithmetic (e1 = 0 at mu1 = mu0); rounding
    /// may leave a positive residue inside the classifier band.
    bool borderline = false;
};

struct NonexistenceWitness {
    Citation citation;
    WitnessMechanism mechanism;
    bool swapped = false;
    std::optional<IntegrabilityWitness> integrability;
    std::optional<IterationTrace> iteration;
};

/// Builds the evidence chain behind a Nonexistence verdict. Throws
/// std::invalid_argument if the point is not classified Nonexistence and
/// InconsistencyError if the mechanism does not deliver.
NonexistenceWitness nonexistence_witness(const HardyParams& params, const ExponentPairPQ& pq,
                                         int cap = kDefaultIterationCap);

/// The mechanism a citation must be backed by.
WitnessMechanism expected_mechanism(Citation citation, bool boundary);

std::string_view to_string(Verdict verdict);
std::string_view to_string(Citation citation);
std::string_view to_string(Regime regime);
std::string_view to_string(CaseId id);
CaseId parse_case(std::string_view text);

}  // namespace leh
