#include "leh/construction.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace leh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kOriginTolerance = 1e-9;

std::string fmt(double x)
{
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

void require(bool condition, CaseId id, const std::string& what)
{
    if (!condition) {
        throw std::invalid_argument(std::string(to_string(id)) + " recipe window violated: " + what);
    }
}

// Recipe in the frame given; a = tau_+(mu1), b = tau_+(mu2).
SupersolutionCandidate recipe(CaseId id, const HardyParams& h, const ExponentPairPQ& pq, bool check)
{
    const double a = h.tau1().tau_plus;
    const double b = h.tau2().tau_plus;
    const double n = static_cast<double>(h.dimension());
    const double p = pq.p;
    const double q = pq.q;
    using RF = RadialFunction;

    SupersolutionCandidate c{id, {}, {}, 1.0, false, {}};
    switch (id) {
    case CaseId::C1:
    case CaseId::C4: {
        const double tau2 = a * q + 2.0;
        const double tau1 = tau2 * p + 2.0;
        c.u = RF::power(a) - RF::power(tau1);
        c.v = RF::power(tau2);
        c.exponents = {{"tau1", tau1}, {"tau2", tau2}};
        if (check) {
            require(tau1 > a, id, "tau1 > tau_+(mu1)");
            require(tau2 > h.tau2().tau_minus && tau2 < b, id, "tau_-(mu2) < tau2 < tau_+(mu2)");
        }
        break;
    }
    case CaseId::C2:
    case CaseId::C5: {
        const double tau3 = b * p + 2.0;
        const double tau4 = a * q + 2.0;
        c.u = RF::power(a) - RF::power(tau3);
        c.v = RF::power(b) - RF::power(tau4);
        c.exponents = {{"tau3", tau3}, {"tau4", tau4}};
        if (check) {
            require(tau3 > a, id, "tau3 > tau_+(mu1)");
            require(tau4 > b, id, "tau4 > tau_+(mu2)");
        }
        break;
    }
    case CaseId::C3: {
        const double tau5 = b * p + 1.0;
        c.u = RF::power(a) - RF::power(tau5);
        c.v = RF::log_power(b);
        c.exponents = {{"tau5", tau5}};
        if (check) {
            require(tau5 > a, id, "tau5 > tau_+(mu1)");
            require(2.0 * b + n - 2.0 > 0.0, id, "2 tau_+(mu2) + N - 2 > 0");
        }
        break;
    }
    case CaseId::C6: {
        // Half the room between tau_+(mu2) p + 2 and tau_+(mu1).
        const double eps0 = (b * p + 2.0 - a) / 2.0;
        const double tau6 = b * p + 2.0 - eps0;
        c.u = RF::power(a) - RF::power(tau6);
        c.v = RF::log_power(b);
        c.exponents = {{"epsilon0", eps0}, {"tau6", tau6}};
        if (check) {
            require(eps0 > 0.0 && tau6 > a, id, "tau_+(mu2) p + 2 > tau_+(mu1)");
            require(2.0 * b + n - 2.0 > 0.0, id, "2 tau_+(mu2) + N - 2 > 0");
        }
        break;
    }
    case CaseId::C7: {
        const double eps = (a * q + 2.0 - b) / 2.0;
        const double tau8 = a * q + 2.0 - eps;
        c.u = RF::log_power(a);
        c.v = RF::power(b) - RF::power(tau8);
        c.exponents = {{"epsilon", eps}, {"tau8", tau8}};
        if (check) {
            require(eps > 0.0 && tau8 > b, id, "tau_+(mu1) q + 2 > tau_+(mu2)");
            require(2.0 * a + n - 2.0 > 0.0, id, "2 tau_+(mu1) + N - 2 > 0");
        }
        break;
    }
    case CaseId::C8: {
        const double tau10 = b * p + 2.0;
        const double tau9 = tau10 * q + 2.0;
        c.u = RF::power(tau10);
        c.v = RF::power(b) - RF::power(tau9);
        c.exponents = {{"tau9", tau9}, {"tau10", tau10}};
        if (check) {
            require(tau9 > b, id, "tau9 > tau_+(mu2)");
            require(tau10 > h.tau1().tau_minus && tau10 < a, id, "tau_-(mu1) < tau10 < tau_+(mu1)");
        }
        break;
    }
    }
    return c;
}

struct Symbols {
    RadialFunction lu;
    RadialFunction lv;
};

Symbols symbols(const SupersolutionCandidate& c, const HardyParams& h)
{
    return {apply_hardy(h.dimension(), h.mu1(), c.u), apply_hardy(h.dimension(), h.mu2(), c.v)};
}

double snap(double lhs, double rhs)
{
    const double diff = lhs - rhs;
    return std::abs(diff) <= 4.0 * kEps * std::max(std::abs(lhs), std::abs(rhs)) ? 0.0 : diff;
}

enum class PointStatus { Ok, NonPositive, NonFinite, NegativeSlack };

struct PointResult {
    PointStatus status;
    double slack_u;
    double slack_v;
};

PointResult evaluate_point(const SupersolutionCandidate& c, const Symbols& s, double t, const ExponentPairPQ& pq,
                           double r)
{
    const double u = eval(c.u, r);
    const double v = eval(c.v, r);
    if (!(u > 0.0) || !(v > 0.0)) {
        return {PointStatus::NonPositive, kInf, kInf};
    }
    const double su = snap(t * eval(s.lu, r), std::pow(t * v, pq.p));
    const double sv = snap(t * eval(s.lv, r), std::pow(t * u, pq.q));
    if (!std::isfinite(su) || !std::isfinite(sv)) {
        return {PointStatus::NonFinite, kInf, kInf};
    }
    if (su < 0.0 || sv < 0.0) {
        return {PointStatus::NegativeSlack, su, sv};
    }
    return {PointStatus::Ok, su, sv};
}

std::string describe(const SupersolutionCandidate& c, const Symbols& s, double t, const ExponentPairPQ& pq,
                     double r)
{
    const PointResult pr = evaluate_point(c, s, t, pq, r);
    switch (pr.status) {
    case PointStatus::NonPositive:
        return "positivity: u = " + fmt(eval(c.u, r)) + ", v = " + fmt(eval(c.v, r)) + " at r = " + fmt(r);
    case PointStatus::NonFinite:
        return "non-finite slack at r = " + fmt(r);
    case PointStatus::NegativeSlack:
        return "negative slack at r = " + fmt(r) + " (u: " + fmt(pr.slack_u) + ", v: " + fmt(pr.slack_v) + ")";
    case PointStatus::Ok:
        break;
    }
    return {};
}

double oracle_deviation(const SupersolutionCandidate& c, const Symbols& s, const HardyParams& h,
                        const RadialGrid& grid)
{
    const int n = grid.count();
    const int samples = std::min(kOracleSamples, n);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const std::size_t idx = samples == 1 ? 0
                                             : static_cast<std::size_t>(std::lround(
                                                   static_cast<double>(k) * (n - 1) / (samples - 1)));
        const double r = grid[idx];
        const double step = kOracleRelativeStep * r;
        const struct {
            const RadialFunction& f;
            const RadialFunction& lf;
            double mu;
        } pairs[] = {{c.u, s.lu, h.mu1()}, {c.v, s.lv, h.mu2()}};
        for (const auto& pair : pairs) {
            const double sym = eval(pair.lf, r);
            const double fd = hardy_fd_oracle(h.dimension(), pair.mu, pair.f, r, step, Stencil::Central5);
            const double norm = std::max(1.0, hardy_magnitude(h.dimension(), pair.mu, pair.f, r));
            const double dev = std::abs(sym - fd) / norm;
            worst = std::max(worst, std::isfinite(dev) ? dev : kInf);
        }
    }
    return worst;
}

// Leading term as r -> 0+: smallest exponent, the log factor breaking ties.
const RadialTerm* leading(const RadialFunction& f)
{
    const RadialTerm* best = nullptr;
    for (const RadialTerm& term : f.terms()) {
        if (best == nullptr || term.tau < best->tau || (term.tau == best->tau && term.log_power > best->log_power)) {
            best = &term;
        }
    }
    return best;
}

bool same_exponent(double a, double b)
{
    return std::abs(a - b) <= kOriginTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Sign of L(t f) - (t g)^s as r -> 0+, decided by the leading terms alone.
// Returns an empty string when the inequality survives near the origin or
// when the two sides balance (then the scale decides and the grid checks it).
std::string origin_failure(const RadialFunction& lf, const RadialFunction& g, double s, const char* which)
{
    const RadialTerm* rhs = leading(g);
    if (rhs == nullptr || rhs->coeff <= 0.0) {
        return std::string(which == std::string("u") ? "v" : "u") + " is not positive near r = 0";
    }
    const double rhs_tau = s * rhs->tau;
    const double rhs_log = s * rhs->log_power;
    const RadialTerm* lhs = leading(lf);
    if (lhs == nullptr) {
        return std::string(which) + "-inequality near r = 0: left side vanishes identically";
    }
    bool lhs_wins = false;
    if (same_exponent(lhs->tau, rhs_tau)) {
        if (lhs->log_power == rhs_log) {
            return lhs->coeff > 0.0 ? std::string()
                                    : std::string(which) + "-inequality near r = 0: negative leading coefficient";
        }
        lhs_wins = lhs->log_power > rhs_log;
    } else {
        lhs_wins = lhs->tau < rhs_tau;
    }
    if (!lhs_wins) {
        return std::string(which) + "-inequality near r = 0: right side r^" + fmt(rhs_tau) +
               " dominates left side r^" + fmt(lhs->tau);
    }
    return lhs->coeff > 0.0 ? std::string()
                            : std::string(which) + "-inequality near r = 0: left side tends to -infinity";
}

VerificationReport finish(const SupersolutionCandidate& c, const Symbols& s, double t, const HardyParams& h,
                          const ExponentPairPQ& pq, const RadialGrid& grid, double min_u, double min_v,
                          long long first_bad)
{
    VerificationReport report;
    report.t = t;
    report.grid = grid;
    report.min_slack_u = min_u;
    report.min_slack_v = min_v;
    const std::string origin_u = origin_failure(s.lu, c.v, pq.p, "u");
    const std::string origin_v = origin_failure(s.lv, c.u, pq.q, "v");
    report.origin_ok = origin_u.empty() && origin_v.empty();
    report.ok = first_bad < 0 && min_u >= 0.0 && min_v >= 0.0 && report.origin_ok;
    if (first_bad >= 0) {
        report.diagnostic = describe(c, s, t, pq, grid[static_cast<std::size_t>(first_bad)]);
    } else if (!report.origin_ok) {
        report.diagnostic = origin_u.empty() ? origin_v : origin_u;
    }
    report.oracle_max_dev = oracle_deviation(c, s, h, grid);
    report.oracle_flagged = !(report.oracle_max_dev <= kOracleTolerance);
    return report;
}

void validate_scale(double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("scale t must be positive and finite");
    }
}

}  // namespace

bool is_log_bearing(CaseId id)
{
    return id == CaseId::C3 || id == CaseId::C6 || id == CaseId::C7;
}

SupersolutionCandidate build_recipe(CaseId id, const HardyParams& params, const ExponentPairPQ& pq)
{
    return recipe(id, params, pq, false);
}

SupersolutionCandidate build_candidate(CaseId id, const HardyParams& params, const ExponentPairPQ& pq)
{
    const RegionClass region = classify(params, pq);
    if (region.verdict != Verdict::ExistsSupersolution || region.construction != id) {
        std::string assigned = region.construction ? std::string(to_string(*region.construction)) : "none";
        throw std::invalid_argument(std::string(to_string(id)) + " does not apply at this point (classified " +
                                    std::string(to_string(region.verdict)) + " " +
                                    std::string(to_string(region.citation)) + ", construction " + assigned + ")");
    }
    if (!region.swapped) {
        return recipe(id, params, pq, true);
    }
    SupersolutionCandidate c = recipe(id, params.swapped(), pq.swapped(), true);
    std::swap(c.u, c.v);
    c.swapped = true;
    return c;
}

RadialGrid verification_grid(double r_domain, int count, double r_min)
{
    if (!(r_domain > 0.0) || r_domain > 1.0) {
        throw std::invalid_argument("domain radius must lie in (0, 1]");
    }
    const double r_max = r_domain * (1.0 - 1e-3);
    if (!(r_min > 0.0) || !(r_min < r_max)) {
        r_min = r_domain * 1e-6;
    }
    return RadialGrid(r_min, r_max, count);
}

VerificationReport verify_on_grid_serial(const SupersolutionCandidate& candidate, double t,
                                         const HardyParams& params, const ExponentPairPQ& pq,
                                         const RadialGrid& grid)
{
    validate_scale(t);
    const Symbols s = symbols(candidate, params);
    double min_u = kInf;
    double min_v = kInf;
    long long first_bad = -1;
    const long long n = grid.count();
    for (long long i = 0; i < n; ++i) {
        const PointResult pr = evaluate_point(candidate, s, t, pq, grid[static_cast<std::size_t>(i)]);
        min_u = std::min(min_u, pr.slack_u);
        min_v = std::min(min_v, pr.slack_v);
        if (pr.status != PointStatus::Ok && first_bad < 0) {
            first_bad = i;
        }
    }
    return finish(candidate, s, t, params, pq, grid, min_u, min_v, first_bad);
}

VerificationReport verify_on_grid(const SupersolutionCandidate& candidate, double t, const HardyParams& params,
                                  const ExponentPairPQ& pq, const RadialGrid& grid, Execution execution)
{
    if (execution == Execution::Serial) {
        return verify_on_grid_serial(candidate, t, params, pq, grid);
    }
    validate_scale(t);
    const Symbols s = symbols(candidate, params);
    double min_u = kInf;
    double min_v = kInf;
    const long long n = grid.count();
    long long first_bad = n;
#pragma omp parallel for schedule(static) reduction(min : min_u, min_v, first_bad)
    for (long long i = 0; i < n; ++i) {
        const PointResult pr = evaluate_point(candidate, s, t, pq, grid[static_cast<std::size_t>(i)]);
        min_u = std::min(min_u, pr.slack_u);
        min_v = std::min(min_v, pr.slack_v);
        if (pr.status != PointStatus::Ok) {
            first_bad = std::min(first_bad, i);
        }
    }
    return finish(candidate, s, t, params, pq, grid, min_u, min_v, first_bad == n ? -1 : first_bad);
}

ScaleSearch find_scale(const SupersolutionCandidate& candidate, const HardyParams& params, const ExponentPairPQ& pq,
                       const RadialGrid& grid, Execution execution)
{
    ScaleSearch search;
    for (int k = 0; k <= kScaleLadderSteps; ++k) {
        const double t = std::ldexp(1.0, -k);
        search.report = verify_on_grid(candidate, t, params, pq, grid, execution);
        search.tried = k + 1;
        if (search.report.ok) {
            search.t = t;
            return search;
        }
    }
    return search;
}

DomainSearch find_domain(const SupersolutionCandidate& candidate, const HardyParams& params,
                         const ExponentPairPQ& pq, int grid_points)
{
    DomainSearch search;
    if (!is_log_bearing(candidate.case_id)) {
        search.radius = 1.0;
        return search;
    }
    auto works = [&](double radius) {
        ++search.evaluations;
        const RadialGrid grid = verification_grid(radius, grid_points, radius * 1e-6);
        return find_scale(candidate, params, pq, grid).t.has_value();
    };
    if (works(1.0)) {
        search.radius = 1.0;
        return search;
    }
    constexpr double kFloor = 1e-8;
    if (!works(kFloor)) {
        return search;
    }
    double lo = std::log(kFloor);
    double hi = 0.0;
    for (int iter = 0; iter < 40; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (works(std::exp(mid)) ? lo : hi) = mid;
    }
    search.radius = std::exp(lo);
    return search;
}

ConstructionRun run_construction(CaseId id, const HardyParams& params, const ExponentPairPQ& pq, int grid_points,
                                 double r_min, Execution execution)
{
    ConstructionRun run{build_candidate(id, params, pq), {}, {}};
    run.domain = find_domain(run.candidate, params, pq, grid_points);
    if (!run.domain.radius) {
        run.scale.report.diagnostic = "no working domain radius above 1e-8";
        return run;
    }
    run.candidate.r_domain = *run.domain.radius;
    const RadialGrid grid = verification_grid(run.candidate.r_domain, grid_points, r_min);
    run.scale = find_scale(run.candidate, params, pq, grid, execution);
    return run;
}

}  // namespace leh
