#include "leh/classifier.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace leh {

namespace {

constexpr double kBand = 1e-12;

double band(double edge)
{
    return kBand * std::max(1.0, std::abs(edge));
}

bool above(double x, double edge) { return x > edge + band(edge); }
bool below(double x, double edge) { return x < edge - band(edge); }
bool near(double x, double edge) { return std::abs(x - edge) <= band(edge); }

struct Frame {
    HardyParams params;
    ExponentPairPQ pq;
    bool swapped;
};

Frame orient(const HardyParams& params, const ExponentPairPQ& pq)
{
    if (params.mu2() < 0.0 && params.mu1() >= 0.0) {
        return {params.swapped(), pq.swapped(), true};
    }
    return {params, pq, false};
}

// Same expression order as is_gamma_integrable: tau + tau_+(mu) + N.
double gap_q(const HardyParams& h, const ExponentPairPQ& pq)
{
    return h.tau1().tau_plus * pq.q + h.tau2().tau_plus + static_cast<double>(h.dimension());
}

double gap_p(const HardyParams& h, const ExponentPairPQ& pq)
{
    return h.tau2().tau_plus * pq.p + h.tau1().tau_plus + static_cast<double>(h.dimension());
}

struct Edges {
    double q_integrability;
    double p_integrability;  // regime B only
    double q_strip;
    double q_bootstrap;
    double p_bootstrap;  // regime B only
    double e1;
    double e2;
    double e1_tol;
    double e2_tol;
};

Edges edges_of(const HardyParams& h, const ExponentPairPQ& pq)
{
    const BoundaryExpressions ex = boundary_expressions(h, pq);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {ex.q_integrability.value_or(nan),
            ex.p_integrability.value_or(nan),
            ex.q_strip.value_or(nan),
            ex.q_bootstrap.value_or(nan),
            ex.p_bootstrap.value_or(nan),
            ex.e1,
            ex.e2,
            kBand * e1_scale(h, pq),
            kBand * e2_scale(h, pq)};
}

void evaluate_regime_a(const HardyParams& h, const ExponentPairPQ& pq, ClauseSet& c)
{
    const Edges e = edges_of(h, pq);
    const double p = pq.p;
    const double q = pq.q;
    const bool e1_neg = e.e1 < -e.e1_tol;
    const bool e1_zero = std::abs(e.e1) <= e.e1_tol;
    const bool e1_pos = e.e1 > e.e1_tol;
    const bool at_mu0 = h.mu1_at_threshold();

    c.t1_i = gap_q(h, pq) <= 0.0;
    const bool in_strip = !c.t1_i && above(q, e.q_strip) && below(q, e.q_integrability);
    c.t1_ii = in_strip && (e1_neg || (at_mu0 && e1_zero));
    c.t1_ii_boundary = in_strip && at_mu0 && e1_zero;
    c.critical_aq = in_strip && !at_mu0 && e1_zero;

    c.t3_i_literal = !c.t1_i && below(q, e.q_integrability) && e1_pos;
    const bool big = above(p, 1.0) && above(q, 1.0);
    // The construction splits where tau_+(mu1) q + 2 meets tau_+(mu2).
    c.c1 = big && c.t3_i_literal && above(q, e.q_bootstrap);
    c.c2 = big && c.t3_i_literal && below(q, e.q_bootstrap);
    c.c3 = big && c.t3_i_literal && near(q, e.q_bootstrap);
}

void evaluate_regime_b(const HardyParams& h, const ExponentPairPQ& pq, ClauseSet& c)
{
    const Edges e = edges_of(h, pq);
    const double p = pq.p;
    const double q = pq.q;
    const bool e1_neg = e.e1 < -e.e1_tol;
    const bool e1_zero = std::abs(e.e1) <= e.e1_tol;
    const bool e1_pos = e.e1 > e.e1_tol;
    const bool e2_neg = e.e2 < -e.e2_tol;
    const bool e2_zero = std::abs(e.e2) <= e.e2_tol;
    const bool e2_pos = e.e2 > e.e2_tol;

    c.t2_i = gap_p(h, pq) <= 0.0 || gap_q(h, pq) <= 0.0;
    const bool q_window = !c.t2_i && above(q, e.q_bootstrap) && below(q, e.q_integrability);
    const bool p_window = !c.t2_i && above(p, e.p_bootstrap) && below(p, e.p_integrability);
    // The iteration closes the lower edges q = q_bootstrap, p = p_bootstrap.
    c.t2_ii = !c.t2_i && !below(q, e.q_bootstrap) && below(q, e.q_integrability) && e1_neg;
    c.t2_iii = !c.t2_i && !below(p, e.p_bootstrap) && below(p, e.p_integrability) && e2_neg;
    c.critical_ab = q_window && e1_zero;
    c.critical_bc = p_window && e2_zero;

    const bool big = above(p, 1.0) && above(q, 1.0);
    c.c4 = big && q_window && e1_pos;
    c.c8 = big && p_window && e2_pos;
    c.c5 = big && !c.t2_i && below(q, e.q_bootstrap) && below(p, e.p_bootstrap);
    c.c6 = big && !c.t2_i && near(q, e.q_bootstrap) && below(p, e.p_bootstrap) && !h.mu2_at_threshold();
    c.c7 = big && !c.t2_i && near(p, e.p_bootstrap) && below(q, e.q_bootstrap) && !h.mu1_at_threshold();

    c.t3_ii_a2_literal = big && !above(q, e.q_bootstrap) && below(p, e.p_integrability);
    c.t3_ii_b2_literal = big && !above(p, e.p_bootstrap) && below(q, e.q_integrability);
}

RegionClass decide(const HardyParams& h, const ExponentPairPQ& pq, const ClauseSet& c)
{
    RegionClass out{Verdict::OpenCritical, Citation::DottedBoundary, 0.0, c.regime, c.swapped, {}, false};
    if (c.regime == Regime::C) {
        out.verdict = Verdict::OutOfScope;
        out.citation = Citation::NoNegativeCoefficient;
        out.margin = std::min(h.mu1(), h.mu2());
        return out;
    }

    const Edges e = edges_of(h, pq);
    auto set = [&](Verdict v, Citation cit, double margin, std::optional<CaseId> id = std::nullopt) {
        out.verdict = v;
        out.citation = cit;
        out.margin = margin;
        out.construction = id;
        return out;
    };

    if (c.regime == Regime::A) {
        if (c.t1_i) {
            return set(Verdict::Nonexistence, Citation::T1_i, pq.q - e.q_integrability);
        }
        if (c.t1_ii) {
            return set(Verdict::Nonexistence, Citation::T1_ii, e.e1);
        }
        out.unit_ball_only = true;
        if (c.c1) {
            return set(Verdict::ExistsSupersolution, Citation::T3_i_case1, e.e1, CaseId::C1);
        }
        if (c.c2) {
            return set(Verdict::ExistsSupersolution, Citation::T3_i_case2, pq.q - e.q_bootstrap, CaseId::C2);
        }
        if (c.c3) {
            return set(Verdict::ExistsSupersolution, Citation::T3_i_case3, pq.q - e.q_bootstrap, CaseId::C3);
        }
        out.unit_ball_only = false;
        if (c.critical_aq) {
            return set(Verdict::OpenCritical, Citation::CriticalAQ, e.e1);
        }
        return set(Verdict::OpenCritical, Citation::DottedBoundary, e.e1);
    }

    if (c.t2_i) {
        return set(Verdict::Nonexistence, Citation::T2_i,
                   std::max(pq.p - e.p_integrability, pq.q - e.q_integrability));
    }
    if (c.t2_ii || c.t2_iii) {
        // When both hold, cite the clause with the larger violation; this
        // keeps the citation covariant under the (mu1,p) <-> (mu2,q) exchange.
        const bool use_ii = c.t2_ii && (!c.t2_iii || e.e1 <= e.e2);
        return use_ii ? set(Verdict::Nonexistence, Citation::T2_ii, e.e1)
                      : set(Verdict::Nonexistence, Citation::T2_iii, e.e2);
    }
    if (c.c4) {
        return set(Verdict::ExistsSupersolution, Citation::T3_ii_a1, e.e1, CaseId::C4);
    }
    if (c.c8) {
        return set(Verdict::ExistsSupersolution, Citation::T3_ii_b1, e.e2, CaseId::C8);
    }
    if (c.c5) {
        return set(Verdict::ExistsSupersolution, Citation::T3_ii_a2,
                   std::max(pq.q - e.q_bootstrap, pq.p - e.p_bootstrap), CaseId::C5);
    }
    if (c.c6) {
        return set(Verdict::ExistsSupersolution, Citation::T3_ii_a2, pq.q - e.q_bootstrap, CaseId::C6);
    }
    if (c.c7) {
        return set(Verdict::ExistsSupersolution, Citation::T3_ii_b2, pq.p - e.p_bootstrap, CaseId::C7);
    }
    if (c.critical_ab) {
        return set(Verdict::OpenCritical, Citation::CriticalAB, e.e1);
    }
    if (c.critical_bc) {
        return set(Verdict::OpenCritical, Citation::CriticalBC, e.e2);
    }
    return set(Verdict::OpenCritical, Citation::DottedBoundary, e.e1);
}

std::vector<double> axis(Interval range, int resolution)
{
    std::vector<double> values(static_cast<std::size_t>(resolution));
    if (resolution == 1) {
        values[0] = range.lo;
        return values;
    }
    const double step = (range.hi - range.lo) / static_cast<double>(resolution - 1);
    for (int i = 0; i < resolution; ++i) {
        values[static_cast<std::size_t>(i)] = range.lo + step * static_cast<double>(i);
    }
    values.back() = range.hi;
    return values;
}

RegionGrid prepare_grid(Interval p_range, Interval q_range, int resolution)
{
    if (resolution < 1 || resolution > 4096) {
        throw std::invalid_argument("grid resolution must lie in [1, 4096]");
    }
    for (const Interval& r : {p_range, q_range}) {
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo > 0.0) ||
            (resolution > 1 ? !(r.hi > r.lo) : !(r.hi >= r.lo))) {
            throw std::invalid_argument("grid ranges must be positive, finite and non-degenerate");
        }
    }
    RegionGrid grid;
    grid.resolution = resolution;
    grid.p_values = axis(p_range, resolution);
    grid.q_values = axis(q_range, resolution);
    grid.cells.resize(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
    return grid;
}

}  // namespace

Regime regime_of(const HardyParams& params)
{
    const bool neg1 = params.mu1() < 0.0;
    const bool neg2 = params.mu2() < 0.0;
    if (neg1 && neg2) {
        return Regime::B;
    }
    if (neg1 || neg2) {
        return Regime::A;
    }
    return Regime::C;
}

ClauseSet evaluate_clauses(const HardyParams& params, const ExponentPairPQ& pq)
{
    ClauseSet c;
    c.regime = regime_of(params);
    if (c.regime == Regime::C) {
        return c;
    }
    const Frame f = orient(params, pq);
    c.swapped = f.swapped;
    if (c.regime == Regime::A) {
        evaluate_regime_a(f.params, f.pq, c);
    } else {
        evaluate_regime_b(f.params, f.pq, c);
    }
    return c;
}

RegionClass classify(const HardyParams& params, const ExponentPairPQ& pq)
{
    const ClauseSet c = evaluate_clauses(params, pq);
    if (c.regime == Regime::C) {
        return decide(params, pq, c);
    }
    const Frame f = orient(params, pq);
    return decide(f.params, f.pq, c);
}

Interval parse_interval(std::string_view text)
{
    const auto sep = text.find("..");
    if (sep == std::string_view::npos) {
        throw std::invalid_argument("interval must be written a..b");
    }
    auto parse = [](std::string_view s) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw std::invalid_argument("cannot parse interval bound '" + std::string(s) + "'");
        }
        return value;
    };
    return {parse(text.substr(0, sep)), parse(text.substr(sep + 2))};
}

RegionGrid classify_grid_serial(const HardyParams& params, Interval p_range, Interval q_range, int resolution)
{
    RegionGrid grid = prepare_grid(p_range, q_range, resolution);
    for (int row = 0; row < resolution; ++row) {
        for (int col = 0; col < resolution; ++col) {
            grid.cells[static_cast<std::size_t>(row) * resolution + col] =
                classify(params, ExponentPairPQ(grid.p_values[col], grid.q_values[row]));
        }
    }
    return grid;
}

RegionGrid classify_grid(const HardyParams& params, Interval p_range, Interval q_range, int resolution,
                         Execution execution)
{
    if (execution == Execution::Serial) {
        return classify_grid_serial(params, p_range, q_range, resolution);
    }
    RegionGrid grid = prepare_grid(p_range, q_range, resolution);
    const long long total = static_cast<long long>(resolution) * resolution;
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        const int row = static_cast<int>(idx / resolution);
        const int col = static_cast<int>(idx % resolution);
        grid.cells[static_cast<std::size_t>(idx)] =
            classify(params, ExponentPairPQ(grid.p_values[col], grid.q_values[row]));
    }
    return grid;
}

WitnessMechanism expected_mechanism(Citation citation, bool boundary)
{
    switch (citation) {
    case Citation::T1_i:
    case Citation::T2_i:
    case Citation::P2_1:
        return WitnessMechanism::Integrability;
    case Citation::T1_ii:
        return boundary ? WitnessMechanism::Integrability : WitnessMechanism::Iteration;
    default:
        return WitnessMechanism::Iteration;
    }
}

NonexistenceWitness nonexistence_witness(const HardyParams& params, const ExponentPairPQ& pq, int cap)
{
    const RegionClass region = classify(params, pq);
    if (region.verdict != Verdict::Nonexistence) {
        throw std::invalid_argument("nonexistence witness requested for a point classified " +
                                    std::string(to_string(region.verdict)));
    }
    const ClauseSet clauses = evaluate_clauses(params, pq);
    const Frame f = orient(params, pq);
    const HardyParams& h = f.params;
    const int n = h.dimension();

    NonexistenceWitness w{region.citation, expected_mechanism(region.citation, clauses.t1_ii_boundary),
                          f.swapped, std::nullopt, std::nullopt};

    auto integrability = [&](int measure, double tau) {
        const double mu = measure == 1 ? h.mu1() : h.mu2();
        return IntegrabilityWitness{measure, tau, is_gamma_integrable_power(n, mu, tau), false};
    };
    auto require_crossing = [&](const IterationTrace& trace) {
        const CertificateKind kind = trace.outcome.kind;
        if (kind != CertificateKind::CrossedTau1 && kind != CertificateKind::CrossedTau2) {
            throw InconsistencyError(std::string("iteration for ") + std::string(to_string(region.citation)) +
                                     " ended " + std::string(to_string(kind)) + " at step " +
                                     std::to_string(trace.outcome.step));
        }
    };

    switch (region.citation) {
    case Citation::T1_i:
        w.integrability = integrability(2, h.tau1().tau_plus * f.pq.q);
        break;
    case Citation::T2_i:
        if (gap_p(h, f.pq) <= 0.0) {
            w.integrability = integrability(1, h.tau2().tau_plus * f.pq.p);
        } else {
            w.integrability = integrability(2, h.tau1().tau_plus * f.pq.q);
        }
        break;
    case Citation::T1_ii:
        if (clauses.t1_ii_boundary) {
            // One bootstrap: v >= c r^(tau_1 q + 2), so v^p carries the power
            // (tau_1 q + 2) p, whose gap equals e3 = e1 at mu1 = mu0.
            IntegrabilityWitness iw = integrability(1, (h.tau1().tau_plus * f.pq.q + 2.0) * f.pq.p);
            iw.borderline = std::abs(iw.verdict.critical_exponent_gap) <= kBand * e1_scale(h, f.pq);
            w.integrability = iw;
        } else {
            w.iteration = iterate_plain(h, f.pq, cap);
            require_crossing(*w.iteration);
        }
        break;
    case Citation::T2_ii:
        w.iteration = iterate_clamped(h, f.pq, cap);
        require_crossing(*w.iteration);
        break;
    case Citation::T2_iii:
        w.iteration = iterate_clamped(h.swapped(), f.pq.swapped(), cap);
        w.swapped = !w.swapped;
        require_crossing(*w.iteration);
        break;
    default:
        throw InconsistencyError("no witness mechanism for citation " + std::string(to_string(region.citation)));
    }

    if (w.integrability && w.integrability->verdict.integrable && !w.integrability->borderline) {
        throw InconsistencyError("integrability witness for " + std::string(to_string(region.citation)) +
                                 " found r^" + std::to_string(w.integrability->tau) + " integrable (gap " +
                                 std::to_string(w.integrability->verdict.critical_exponent_gap) + ")");
    }
    return w;
}

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::Nonexistence: return "Nonexistence";
    case Verdict::ExistsSupersolution: return "ExistsSupersolution";
    case Verdict::OpenCritical: return "OpenCritical";
    case Verdict::OutOfScope: return "OutOfScope";
    }
    return "?";
}

std::string_view to_string(Citation citation)
{
    switch (citation) {
    case Citation::T1_i: return "T1.i";
    case Citation::T1_ii: return "T1.ii";
    case Citation::T2_i: return "T2.i";
    case Citation::T2_ii: return "T2.ii";
    case Citation::T2_iii: return "T2.iii";
    case Citation::T3_i_case1: return "T3.i.case1";
    case Citation::T3_i_case2: return "T3.i.case2";
    case Citation::T3_i_case3: return "T3.i.case3";
    case Citation::T3_ii_a1: return "T3.ii.a1";
    case Citation::T3_ii_a2: return "T3.ii.a2";
    case Citation::T3_ii_b1: return "T3.ii.b1";
    case Citation::T3_ii_b2: return "T3.ii.b2";
    case Citation::P2_1: return "P2.1";
    case Citation::CriticalAQ: return "CriticalCurve.AQ";
    case Citation::CriticalAB: return "CriticalCurve.AB";
    case Citation::CriticalBC: return "CriticalCurve.BC";
    case Citation::DottedBoundary: return "CriticalCurve.DottedBoundary";
    case Citation::NoNegativeCoefficient: return "OutOfScope";
    }
    return "?";
}

std::string_view to_string(Regime regime)
{
    switch (regime) {
    case Regime::A: return "A";
    case Regime::B: return "B";
    case Regime::C: return "C";
    }
    return "?";
}

std::string_view to_string(CaseId id)
{
    static constexpr std::string_view names[] = {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8"};
    return names[static_cast<int>(id) - 1];
}

CaseId parse_case(std::string_view text)
{
    if (text.size() == 2 && (text[0] == 'C' || text[0] == 'c') && text[1] >= '1' && text[1] <= '8') {
        return static_cast<CaseId>(text[1] - '0');
    }
    throw std::invalid_argument("case must be one of C1..C8");
}

}  // namespace leh
