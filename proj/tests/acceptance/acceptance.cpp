// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit 1 if any fails.

#include "oracle.hpp"
#include "sampling.hpp"

#include "cli.hpp"
#include "leh/classifier.hpp"
#include "leh/construction.hpp"
#include "leh/exponents.hpp"
#include "leh/integrability.hpp"
#include "leh/iteration.hpp"
#include "leh/radial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace leh;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------- 1

Outcome exponent_identities()
{
    Outcome o;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> dim(3, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_mu = 0.0;
    double worst_sum = 0.0;
    const int count = 1'000'000;
    for (int i = 0; i < count; ++i) {
        const int n = dim(rng);
        const double mu0 = mu_zero(n);
        // 5% exactly at mu0, otherwise up to 100 above it.
        const double mu = unit(rng) < 0.05 ? mu0 : mu0 + 100.0 * unit(rng);
        const ExponentPair t = tau_pair(n, mu);
        const double scale = std::max(1.0, std::abs(mu));
        for (double tau : {t.tau_plus, t.tau_minus}) {
            worst_mu = std::max(worst_mu, std::abs(mu - tau * (tau + n - 2)) / scale);
        }
        worst_sum = std::max(worst_sum, std::abs(t.tau_plus + t.tau_minus + n - 2));
    }
    if (worst_mu > 1e-12) {
        o.fail("max |mu - tau(tau+N-2)|/max(1,|mu|) = " + fmt(worst_mu));
    }
    if (worst_sum > 1e-12) {
        o.fail("max |tau+ + tau- + N - 2| = " + fmt(worst_sum));
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(count) + " points, worst identity " +
                fmt(worst_mu) + ", worst sum " + fmt(worst_sum);
    return o;
}

// ---------------------------------------------------------------- 2

Outcome operator_oracle()
{
    Outcome o;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> tau_d(-3.0, 3.0);
    std::uniform_real_distribution<double> coeff_d(-2.0, 2.0);
    // Central5 truncation at a fixed h grows like r^-9 for tau = -3 terms; the
    // absolute 1e-4 bound at h = 1e-4 needs r above about 0.11.
    std::uniform_real_distribution<double> log_r(std::log(0.2), std::log(1.0));
    double ratio_lo = 1e300;
    double ratio_hi = -1e300;
    double worst_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int n = std::uniform_int_distribution<int>(3, 10)(rng);
        const double mu = std::uniform_real_distribution<double>(mu_zero(n), 5.0)(rng);
        std::vector<RadialTerm> terms;
        const int k = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int j = 0; j < k; ++j) {
            terms.push_back({coeff_d(rng), tau_d(rng), static_cast<int>(rng() % 2)});
        }
        const RadialFunction f(terms);
        if (f.is_zero()) {
            continue;
        }
        const RadialFunction lf = apply_hardy(n, mu, f);
        std::vector<double> radii(16);
        for (double& r : radii) {
            r = std::exp(log_r(rng));
        }
        // Step halving on the second-order stencil; errors are compared in the
        // max norm over the 16 radii.
        double coarse = 0.0;
        double fine = 0.0;
        for (double r : radii) {
            const double exact = eval(lf, r);
            coarse = std::max(coarse, std::abs(hardy_fd_oracle(n, mu, f, r, 1e-3, Stencil::Central3) - exact));
            fine = std::max(fine, std::abs(hardy_fd_oracle(n, mu, f, r, 5e-4, Stencil::Central3) - exact));
            worst_dev = std::max(worst_dev, std::abs(hardy_fd_oracle(n, mu, f, r, 1e-4, Stencil::Central5) - exact));
        }
        const double ratio = coarse / fine;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
        if (!(ratio >= 3.5 && ratio <= 4.5)) {
            o.fail("error ratio " + fmt(ratio) + " on function " + std::to_string(i));
        }
    }
    if (worst_dev > 1e-4) {
        o.fail("deviation " + fmt(worst_dev) + " at h = 1e-4");
    }

    int kernels = 0;
    for (int i = 0; i < 2000; ++i) {
        const int n = std::uniform_int_distribution<int>(3, 12)(rng);
        const double mu = std::uniform_real_distribution<double>(mu_zero(n), 10.0)(rng);
        const ExponentPair t = tau_pair(n, mu);
        if (!apply_hardy(n, mu, RadialFunction::power(t.tau_plus, coeff_d(rng))).is_zero() ||
            !apply_hardy(n, mu, RadialFunction::power(t.tau_minus, coeff_d(rng))).is_zero()) {
            o.fail("kernel power not annihilated at N=" + std::to_string(n) + " mu=" + fmt(mu));
        }
        kernels += 2;
    }
    for (int n = 3; n <= 12; ++n) {
        const double mu0 = mu_zero(n);
        if (!apply_hardy(n, mu0, RadialFunction::log_power(tau_pair(n, mu0).tau_minus)).is_zero()) {
            o.fail("r^tau- (-ln r) not annihilated at mu0, N=" + std::to_string(n));
        }
        ++kernels;
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("ratios in [") + fmt(ratio_lo) + ", " +
                fmt(ratio_hi) + "], max deviation " + fmt(worst_dev) + ", " + std::to_string(kernels) +
                " kernel functions map to zero";
    return o;
}

// ---------------------------------------------------------------- 3

Outcome integrability_sharpness()
{
    Outcome o;
    const HardyParams h(5, -2.0, 0.0);
    const double a = h.tau1().tau_plus;
    const double threshold = (5.0 + h.tau2().tau_plus) / (-a);
    if (threshold != 5.0) {
        o.fail("threshold " + fmt(threshold));
    }
    auto verdict = [&](double q) { return is_gamma_integrable_power(5, h.mu2(), a * q).integrable; };
    const double below = std::nextafter(5.0, 0.0);
    if (verdict(5.0) || !verdict(below) || verdict(std::nextafter(5.0, 10.0)) || !verdict(4.999)) {
        o.fail("verdict does not flip exactly at q = 5");
    }
    // Monotone on a fine scan.
    for (int k = 0; k <= 2000; ++k) {
        const double q = 4.0 + 0.001 * k;
        if (verdict(q) != (q < 5.0)) {
            o.fail("verdict wrong at q = " + fmt(q));
        }
    }
    const auto depths = deep_cutoff_depths();
    const QuadratureCheck at = gamma_quadrature_check(5, h.mu2(), RadialFunction::power(a * 5.0), 1.0, depths);
    const QuadratureCheck in = gamma_quadrature_check(5, h.mu2(), RadialFunction::power(a * 4.999), 1.0, depths);
    if (at.trend != QuadratureTrend::Diverged) {
        o.fail("quadrature did not diverge at q = 5");
    }
    if (in.trend != QuadratureTrend::Converged) {
        o.fail("quadrature did not converge at q = 4.999");
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("flip at q = 5, quadrature ") +
                fmt(at.values.back()) + " (q=5) vs " + fmt(in.values.back()) + " (q=4.999)";
    return o;
}

// ---------------------------------------------------------------- 4

Outcome iteration_certificates()
{
    Outcome o;
    const IterationTrace a = iterate_plain(HardyParams(5, -2.0, 0.0), ExponentPairPQ(2.0, 4.0), 100);
    if (a.outcome.kind != CertificateKind::CrossedTau1 || a.outcome.step != 1 ||
        std::abs(a.outcome.value + 2.0) > 1e-12) {
        o.fail("plain example: " + std::string(to_string(a.outcome.kind)) + " at " + std::to_string(a.outcome.step));
    }
    const IterationTrace b = iterate_clamped(HardyParams(5, -2.0, -2.0), ExponentPairPQ(2.5, 3.5), 100);
    if (b.outcome.kind != CertificateKind::CrossedTau2 || b.outcome.step != 2 ||
        std::abs(b.outcome.value + 4.125) > 1e-12) {
        o.fail("clamped example: " + std::string(to_string(b.outcome.kind)) + " at " +
               std::to_string(b.outcome.step));
    }

    // Hypothesis region of the plain bootstrap: mu0 <= mu1 < 0 <= mu2,
    // 2/(-a) < q < (N+b)/(-a), E1 < 0.
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int traces = 0;
    int law_checked = 0;
    int max_steps = 0;
    double worst_affine = 0.0;
    while (traces < 10'000) {
        const int n = std::uniform_int_distribution<int>(3, 10)(rng);
        const double mu0 = mu_zero(n);
        const double mu1 = unit(rng) < 0.05 ? mu0 : mu0 * (1.0 - unit(rng)) - 1e-6 * unit(rng);
        const double mu2 = unit(rng) < 0.05 ? 0.0 : 3.0 * unit(rng);
        if (!(mu1 < 0.0)) {
            continue;
        }
        const HardyParams h(n, mu1, mu2);
        const double ta = h.tau1().tau_plus;
        const double tb = h.tau2().tau_plus;
        const double q_lo = 2.0 / -ta;
        const double q_hi = (n + tb) / -ta;
        const double q = q_lo + (q_hi - q_lo) * unit(rng);
        const double p = 20.0 * unit(rng) + 1e-3;
        const double e1 = ta * (p * q - 1.0) + 2.0 * p + 2.0;
        if (!(q > q_lo && q < q_hi && e1 < 0.0)) {
            continue;
        }
        const ExponentPairPQ pq(p, q);
        const IterationTrace t = iterate_plain(h, pq, kDefaultIterationCap);
        ++traces;
        if (t.outcome.kind != CertificateKind::CrossedTau1 && t.outcome.kind != CertificateKind::CrossedTau2) {
            o.fail("no crossing at N=" + std::to_string(n) + " p=" + fmt(p) + " q=" + fmt(q));
            continue;
        }
        const auto bound = crossing_step_bound(h, pq);
        if (!bound || t.outcome.step > *bound + 2) {
            o.fail("crossing at step " + std::to_string(t.outcome.step) + " beyond the bound");
        }
        max_steps = std::max(max_steps, t.outcome.step);
        for (std::size_t j = 1; j < t.steps.size(); ++j) {
            if (t.steps[j].tau1 && t.steps[j - 1].tau1) {
                const double expect = p * q * *t.steps[j - 1].tau1 + 2.0 * p + 2.0;
                worst_affine = std::max(worst_affine, std::abs(*t.steps[j].tau1 - expect) /
                                                          std::max(1.0, std::abs(expect)));
            }
        }
        if (claim1_usable_steps(t) >= 3) {
            ++law_checked;
            if (!claim1_check(t, pq)) {
                o.fail("geometric law fails at N=" + std::to_string(n) + " p=" + fmt(p) + " q=" + fmt(q));
            }
        }
    }
    if (worst_affine > 1e-12) {
        o.fail("affine recursion deviates by " + fmt(worst_affine));
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(traces) + " traces, geometric law on " +
                std::to_string(law_checked) + " with >= 3 usable steps, longest crossing " +
                std::to_string(max_steps) + " steps";
    return o;
}

// ---------------------------------------------------------------- 5

Outcome disjointness_totality()
{
    Outcome o;
    std::mt19937_64 rng(5);
    const int count = 1'000'000;
    int nonexistence = 0;
    int existence = 0;
    int open = 0;
    int literal_overlaps = 0;
    for (int i = 0; i < count; ++i) {
        const sampling::Point pt = sampling::sweep_point(rng);
        try {
            const ClauseSet c = evaluate_clauses(pt.params, pt.pq);
            if (c.any_nonexistence() && c.any_existence()) {
                o.fail("nonexistence and existence clauses both hold at p=" + fmt(pt.pq.p) + " q=" + fmt(pt.pq.q));
            }
            if ((c.t3_ii_a2_literal || c.t3_ii_b2_literal) && c.any_nonexistence()) {
                ++literal_overlaps;
            }
            const RegionClass r = classify(pt.params, pt.pq);
            switch (r.verdict) {
            case Verdict::Nonexistence: {
                ++nonexistence;
                const NonexistenceWitness w = nonexistence_witness(pt.params, pt.pq);
                if (w.citation != r.citation || w.mechanism != expected_mechanism(r.citation, c.t1_ii_boundary)) {
                    o.fail("witness mechanism mismatch for " + std::string(to_string(r.citation)));
                }
                break;
            }
            case Verdict::ExistsSupersolution:
                ++existence;
                break;
            default:
                ++open;
                break;
            }
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(count) + " points: " +
                std::to_string(nonexistence) + " nonexistence (all witnessed), " + std::to_string(existence) +
                " existence, " + std::to_string(open) + " open/out of scope; literal a.2/b.2 ranges hit " +
                std::to_string(literal_overlaps) + " nonexistence points (info)";
    return o;
}

// ---------------------------------------------------------------- 6

Outcome mu0_boundary()
{
    Outcome o;
    const double mu0 = mu_zero(5);
    const HardyParams at(5, mu0, 0.0);
    const HardyParams above(5, mu0 + 1e-6, 0.0);
    int points = 0;
    for (const HardyParams* h : {&at, &above}) {
        const double a = h->tau1().tau_plus;
        const double q_lo = 2.0 / -a;
        const double q_hi = (5.0 + h->tau2().tau_plus) / -a;
        for (int k = 1; k < 200; ++k) {
            const double q = q_lo + (q_hi - q_lo) * k / 200.0;
            const double p = (a - 2.0) / (a * q + 2.0);
            const RegionClass r = classify(*h, ExponentPairPQ(p, q));
            ++points;
            const bool want_nonexistence = h == &at;
            if (want_nonexistence && !(r.verdict == Verdict::Nonexistence && r.citation == Citation::T1_ii)) {
                o.fail("mu1 = mu0, q = " + fmt(q) + ": " + std::string(to_string(r.citation)));
            }
            if (!want_nonexistence && r.verdict != Verdict::OpenCritical) {
                o.fail("mu1 = mu0 + 1e-6, q = " + fmt(q) + ": " + std::string(to_string(r.citation)));
            }
        }
    }
    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        for (int j = 0; j <= 500; ++j) {
            const ExponentPairPQ pq(0.1 + 49.9 * i / 500.0, 0.1 + 49.9 * j / 500.0);
            const BoundaryExpressions ex = boundary_expressions(at, pq);
            worst = std::max(worst, std::abs(ex.e3 - ex.e1));
        }
    }
    if (worst > 1e-12) {
        o.fail("max |E3 - E1| = " + fmt(worst));
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(points) + " curve points, max |E3 - E1| = " +
                fmt(worst) + " over 501x501 grid";
    return o;
}

// ---------------------------------------------------------------- 7

Outcome construction_verification()
{
    Outcome o;
    std::mt19937_64 rng(7);
    int verified = 0;
    int rejected = 0;
    for (int k = 1; k <= 8; ++k) {
        const auto id = static_cast<CaseId>(k);
        for (int i = 0; i < 25; ++i) {
            const auto pt = sampling::case_point(id, rng);
            if (!pt) {
                o.fail(std::string("no sample for ") + std::string(to_string(id)));
                break;
            }
            const ConstructionRun run = run_construction(id, pt->params, pt->pq);
            const VerificationReport& rep = run.scale.report;
            if (!run.scale.t || !rep.ok || rep.min_slack_u < 0.0 || rep.min_slack_v < 0.0 ||
                rep.grid.count() != kDefaultGridPoints) {
                o.fail(std::string(to_string(id)) + " failed at N=" + std::to_string(pt->params.dimension()) +
                       " mu1=" + fmt(pt->params.mu1()) + " mu2=" + fmt(pt->params.mu2()) + " p=" + fmt(pt->pq.p) +
                       " q=" + fmt(pt->pq.q) + ": " + rep.diagnostic);
            } else {
                ++verified;
            }
        }
        for (int i = 0; i < 10; ++i) {
            const auto pt = sampling::adjacent_nonexistence_point(id, rng);
            if (!pt) {
                o.fail(std::string("no nonexistence sample next to ") + std::string(to_string(id)));
                break;
            }
            const SupersolutionCandidate c = build_recipe(id, pt->params, pt->pq);
            const ScaleSearch s = find_scale(c, pt->params, pt->pq, verification_grid(c.r_domain));
            if (s.t) {
                o.fail(std::string(to_string(id)) + " recipe accepted in the nonexistence region at p=" +
                       fmt(pt->pq.p) + " q=" + fmt(pt->pq.q));
            } else {
                ++rejected;
            }
        }
    }

    // u-inequality of the hand-checked C1 instance: slack (2t - t^2) r^-2.
    const HardyParams h(5, -2.0, 0.0);
    const ExponentPairPQ pq(2.0, 3.0);
    const SupersolutionCandidate c = build_candidate(CaseId::C1, h, pq);
    const RadialGrid grid = verification_grid(1.0);
    const double step = 0.01;
    double largest = 0.0;
    for (int k = 1; k <= 300; ++k) {
        const double t = step * k;
        const VerificationReport r = verify_on_grid(c, t, h, pq, grid);
        if (r.min_slack_u >= 0.0) {
            largest = t;
        }
        const double r_top = grid[grid.count() - 1];
        const double expect = (2.0 * t - t * t) / (r_top * r_top);
        if (t <= 2.0 && std::abs(r.min_slack_u - expect) > 1e-9 * std::max(1.0, t * t / (r_top * r_top))) {
            o.fail("C1 slack " + fmt(r.min_slack_u) + " vs " + fmt(expect) + " at t = " + fmt(t));
        }
    }
    if (std::abs(largest - 2.0) > step + 1e-12) {
        o.fail("C1 u-inequality accepted up to t = " + fmt(largest));
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(verified) + " hypothesis points verified, " +
                std::to_string(rejected) + " nonexistence probes rejected, C1 accepts t <= " + fmt(largest);
    return o;
}

// ---------------------------------------------------------------- 8

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    if (code != 0) {
        std::cerr << err.str();
    }
    return code;
}

// Pixel position used by the plot: [0, hi] mapped to an 800 px square at (60, 20).
double px(double p, double hi) { return 60.0 + p / hi * 800.0; }
double py(double q, double hi) { return 820.0 - q / hi * 800.0; }

double distance_to_polyline(const std::string& d, double x, double y)
{
    const std::regex pt("(-?[0-9.]+) (-?[0-9.]+)");
    std::vector<std::pair<double, double>> pts;
    for (auto it = std::sregex_iterator(d.begin(), d.end(), pt); it != std::sregex_iterator(); ++it) {
        pts.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
    }
    double best = 1e300;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto [x0, y0] = pts[i - 1];
        const auto [x1, y1] = pts[i];
        const double dx = x1 - x0;
        const double dy = y1 - y0;
        const double len2 = dx * dx + dy * dy;
        const double s = len2 > 0.0 ? std::clamp(((x - x0) * dx + (y - y0) * dy) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, std::hypot(x0 + s * dx - x, y0 + s * dy - y));
    }
    return best;
}

Outcome picture_reproduction()
{
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "leh_acceptance";
    fs::create_directories(dir);
    const std::string first = (dir / "regime_a_1").string();
    const std::string second = (dir / "regime_a_2").string();
    const std::vector<std::string> base = {"plot", "--N", "5", "--mu1", "-2", "--mu2", "0", "--p", "0.1..8",
                                           "--q",  "0.1..8", "--res", "400", "--out"};
    std::vector<std::string> a1 = base;
    a1.push_back(first);
    std::vector<std::string> a2 = base;
    a2.push_back(second);
    if (cli(a1) != 0 || cli(a2) != 0) {
        o.fail("plot command failed");
        return o;
    }
    const std::string svg = slurp(first + ".svg");
    if (svg.empty() || svg != slurp(second + ".svg")) {
        o.fail("SVG differs between runs");
    }

    // Nonexistence set from the CSV against q >= 5 or (2 < q < 5 and E1 < 0).
    std::istringstream csv(slurp(first + ".csv"));
    std::string line;
    std::getline(csv, line);
    int cells = 0;
    int nonexistence = 0;
    while (std::getline(csv, line)) {
        std::stringstream row(line);
        std::string p_s, q_s, verdict;
        std::getline(row, p_s, ',');
        std::getline(row, q_s, ',');
        std::getline(row, verdict, ',');
        const double p = std::stod(p_s);
        const double q = std::stod(q_s);
        const double e1 = -(p * q - 1.0) + 2.0 * p + 2.0;
        const bool expect = q >= 5.0 || (q > 2.0 && q < 5.0 && e1 < 0.0);
        const bool got = verdict == "Nonexistence";
        nonexistence += got ? 1 : 0;
        if (expect != got) {
            o.fail("cell p=" + p_s + " q=" + q_s + " is " + verdict);
        }
        ++cells;
    }
    if (cells != 400 * 400) {
        o.fail("CSV has " + std::to_string(cells) + " cells");
    }

    std::smatch m;
    double dist = 1e300;
    if (std::regex_search(svg, m, std::regex("data-curve=\"e1\"[^>]* d=\"([^\"]*)\""))) {
        dist = distance_to_polyline(m[1].str(), px(3.0, 8.0), py(3.0, 8.0));
    }
    if (!(dist <= 0.5)) {
        o.fail("E1 = 0 overlay misses (3,3) by " + fmt(dist) + " px");
    }

    // Corner markers in the regime B plot.
    const HardyParams b(5, -2.0, -2.0);
    const BoundaryExpressions ex = boundary_expressions(b, ExponentPairPQ(1.0, 1.0));
    const std::string regime_b = (dir / "regime_b").string();
    if (cli({"plot", "--N", "5", "--mu1", "-2", "--mu2", "-2", "--p", "0.1..8", "--q", "0.1..8", "--res", "400",
             "--out", regime_b, "--format", "svg"}) != 0) {
        o.fail("regime B plot failed");
        return o;
    }
    const std::string svg_b = slurp(regime_b + ".svg");
    const std::vector<std::tuple<std::string, double, double>> corners = {
        {"E", 0.0, *ex.q_integrability}, {"D", *ex.p_integrability, 0.0}, {"B", *ex.p_bootstrap, *ex.q_bootstrap}};
    for (const auto& [label, p, q] : corners) {
        const std::regex marker("data-label=\"" + label + "\" data-p=\"([0-9.\\-]+)\" data-q=\"([0-9.\\-]+)\"");
        if (!std::regex_search(svg_b, m, marker)) {
            o.fail("marker " + label + " missing");
            continue;
        }
        if (std::abs(std::stod(m[1]) - p) > 1e-6 || std::abs(std::stod(m[2]) - q) > 1e-6) {
            o.fail("marker " + label + " at (" + m[1].str() + ", " + m[2].str() + ")");
        }
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(nonexistence) + " of " + std::to_string(cells) +
                " cells nonexistence as predicted, E1 overlay within " + fmt(dist) +
                " px of (3,3), E/D/B markers placed, SVG byte-identical";
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;  // 0: none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "exponent identities", 5.0, exponent_identities},
        {2, "operator oracle", 30.0, operator_oracle},
        {3, "integrability sharpness", 0.0, integrability_sharpness},
        {4, "iteration certificates", 0.0, iteration_certificates},
        {5, "region disjointness and totality", 60.0, disjointness_totality},
        {6, "mu0 boundary semantics", 0.0, mu0_boundary},
        {7, "construction verification", 120.0, construction_verification},
        {8, "picture reproduction", 0.0, picture_reproduction},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
            o.fail("runtime " + fmt(seconds) + " s over the " + fmt(c.budget_seconds) + " s budget");
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] criterion %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
