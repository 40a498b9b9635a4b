#include "leh/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <utility>

namespace leh {

namespace {

Json number_or_null(double x)
{
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json optional_json(const std::optional<double>& x)
{
    return x ? number_or_null(*x) : Json(nullptr);
}

struct View {
    double p_hi;
    double q_hi;
    static constexpr double left = 60.0;
    static constexpr double top = 20.0;
    static constexpr double size = 800.0;

    double x(double p) const { return left + size * p / p_hi; }
    double y(double q) const { return top + size * (1.0 - q / q_hi); }
    bool contains(double p, double q) const { return p >= 0.0 && p <= p_hi && q >= 0.0 && q <= q_hi; }
};

// Edges of n equal tiles covering [front, back]; sample i sits in tile i.
// A single sample gets a small tile around itself.
std::vector<double> tile_edges(const std::vector<double>& axis)
{
    const std::size_t n = axis.size();
    if (n == 1) {
        const double half = std::max(1e-3, 0.05 * axis.front()) / 2.0;
        return {axis.front() - half, axis.front() + half};
    }
    std::vector<double> edges(n + 1);
    const double lo = axis.front();
    const double span = axis.back() - lo;
    for (std::size_t i = 0; i <= n; ++i) {
        edges[i] = lo + span * static_cast<double>(i) / static_cast<double>(n);
    }
    return edges;
}

// E1 = 0 solved for p, E2 = 0 solved for q.
double e1_zero_p(double tau1, double q) { return (tau1 - 2.0) / (tau1 * q + 2.0); }
double e2_zero_q(double tau2, double p) { return (tau2 - 2.0) / (tau2 * p + 2.0); }

std::string curve_path(const View& view, Interval range, int samples, bool along_q, double tau)
{
    std::string path;
    bool open = false;
    for (int i = 0; i < samples; ++i) {
        const double s = range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double p = along_q ? e1_zero_p(tau, s) : s;
        const double q = along_q ? s : e2_zero_q(tau, s);
        if (!std::isfinite(p) || !std::isfinite(q) || !view.contains(p, q)) {
            open = false;
            continue;
        }
        path += open ? " L " : (path.empty() ? "M " : " M ");
        path += format_fixed6(view.x(p)) + " " + format_fixed6(view.y(q));
        open = true;
    }
    return path;
}

}  // namespace

std::string format_significant(double value, int digits)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
    return buffer;
}

std::string format_fixed6(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", value == 0.0 ? 0.0 : value);
    return buffer;
}

Json params_json(const HardyParams& params)
{
    Json j;
    j["n"] = params.dimension();
    j["mu1"] = params.mu1();
    j["mu2"] = params.mu2();
    j["mu0"] = params.mu0();
    j["tau_plus_mu1"] = params.tau1().tau_plus;
    j["tau_minus_mu1"] = params.tau1().tau_minus;
    j["tau_plus_mu2"] = params.tau2().tau_plus;
    j["tau_minus_mu2"] = params.tau2().tau_minus;
    return j;
}

Json pq_json(const ExponentPairPQ& pq)
{
    return Json{{"p", pq.p}, {"q", pq.q}};
}

Json boundary_json(const BoundaryExpressions& ex)
{
    Json j;
    j["e1"] = number_or_null(ex.e1);
    j["e2"] = number_or_null(ex.e2);
    j["e3"] = number_or_null(ex.e3);
    j["q_integrability"] = optional_json(ex.q_integrability);
    j["p_integrability"] = optional_json(ex.p_integrability);
    j["q_bootstrap"] = optional_json(ex.q_bootstrap);
    j["p_bootstrap"] = optional_json(ex.p_bootstrap);
    j["q_strip"] = optional_json(ex.q_strip);
    j["p_strip"] = optional_json(ex.p_strip);
    return j;
}

Json radial_json(const RadialFunction& f)
{
    Json terms = Json::array();
    for (const RadialTerm& t : f.terms()) {
        terms.push_back(Json{{"coeff", t.coeff}, {"tau", t.tau}, {"log_power", t.log_power}});
    }
    return terms;
}

Json trace_json(const IterationTrace& trace)
{
    Json steps = Json::array();
    for (const IterationStep& s : trace.steps) {
        steps.push_back(Json{{"j", s.j}, {"tau1", s.tau1 ? number_or_null(*s.tau1) : Json(nullptr)},
                             {"tau2", number_or_null(s.tau2)}});
    }
    Json outcome{{"kind", std::string(to_string(trace.outcome.kind))},
                 {"step", trace.outcome.step},
                 {"value", number_or_null(trace.outcome.value)},
                 {"threshold", number_or_null(trace.outcome.threshold)}};
    return Json{{"variant", std::string(to_string(trace.variant))}, {"steps", steps}, {"outcome", outcome}};
}

Json witness_json(const NonexistenceWitness& w)
{
    Json j;
    j["citation"] = std::string(to_string(w.citation));
    j["mechanism"] = w.mechanism == WitnessMechanism::Integrability ? "integrability" : "iteration";
    j["swapped"] = w.swapped;
    if (w.integrability) {
        const IntegrabilityWitness& iw = *w.integrability;
        j["integrability"] = Json{{"measure", iw.measure},
                                  {"tau", iw.tau},
                                  {"integrable", iw.verdict.integrable},
                                  {"critical_exponent_gap", number_or_null(iw.verdict.critical_exponent_gap)},
                                  {"borderline", iw.borderline}};
    } else {
        j["integrability"] = nullptr;
    }
    j["iteration"] = w.iteration ? trace_json(*w.iteration) : Json(nullptr);
    return j;
}

Json report_json(const VerificationReport& r)
{
    Json j;
    j["ok"] = r.ok;
    j["t"] = r.t;
    j["min_slack_u"] = number_or_null(r.min_slack_u);
    j["min_slack_v"] = number_or_null(r.min_slack_v);
    j["grid"] = Json{{"r_min", r.grid.r_min()}, {"r_max", r.grid.r_max()}, {"count", r.grid.count()},
                     {"spacing", "log"}};
    j["oracle_max_dev"] = number_or_null(r.oracle_max_dev);
    j["oracle_flagged"] = r.oracle_flagged;
    j["origin_ok"] = r.origin_ok;
    j["diagnostic"] = r.diagnostic;
    return j;
}

Json classify_record(const HardyParams& params, const ExponentPairPQ& pq, const RegionClass& region,
                     const std::optional<NonexistenceWitness>& witness)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "classify";
    j["params"] = params_json(params);
    j["pq"] = pq_json(pq);
    j["verdict"] = std::string(to_string(region.verdict));
    j["citation"] = std::string(to_string(region.citation));
    j["margin"] = number_or_null(region.margin);
    j["regime"] = std::string(to_string(region.regime));
    j["swapped"] = region.swapped;
    j["unit_ball_only"] = region.unit_ball_only;
    j["construction"] = region.construction ? Json(std::string(to_string(*region.construction))) : Json(nullptr);
    j["boundary"] = boundary_json(boundary_expressions(params, pq));
    j["witness"] = witness ? witness_json(*witness) : Json(nullptr);
    return j;
}

Json iterate_record(const HardyParams& params, const ExponentPairPQ& pq, const IterationTrace& trace, int cap)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "iterate";
    j["params"] = params_json(params);
    j["pq"] = pq_json(pq);
    j["cap"] = cap;
    j["trace"] = trace_json(trace);
    if (claim1_usable_steps(trace) >= 3) {
        j["claim1"] = claim1_check(trace, pq);
    } else {
        j["claim1"] = nullptr;
    }
    const std::optional<int> bound = crossing_step_bound(params, pq);
    j["crossing_step_bound"] = bound ? Json(*bound) : Json(nullptr);
    return j;
}

Json verify_record(const HardyParams& params, const ExponentPairPQ& pq, const ConstructionRun& run)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify";
    j["params"] = params_json(params);
    j["pq"] = pq_json(pq);
    j["case"] = std::string(to_string(run.candidate.case_id));
    Json exps = Json::object();
    for (const auto& [name, value] : run.candidate.exponents) {
        exps[name] = value;
    }
    j["candidate"] = Json{{"u", radial_json(run.candidate.u)},
                          {"v", radial_json(run.candidate.v)},
                          {"r_domain", run.candidate.r_domain},
                          {"swapped", run.candidate.swapped},
                          {"exponents", exps}};
    j["domain_search"] = Json{{"radius", optional_json(run.domain.radius)}, {"evaluations", run.domain.evaluations}};
    j["scale_search"] = Json{{"t", optional_json(run.scale.t)}, {"tried", run.scale.tried}};
    j["report"] = report_json(run.scale.report);
    return j;
}

std::string iterate_csv(const IterationTrace& trace)
{
    std::string out = "j,tau1,tau2,s_j\n";
    std::optional<double> previous;
    for (const IterationStep& s : trace.steps) {
        out += std::to_string(s.j) + ",";
        out += s.tau1 ? format_significant(*s.tau1) : "";
        out += "," + format_significant(s.tau2) + ",";
        if (s.tau1 && previous) {
            out += format_significant(*s.tau1 - *previous);
        }
        out += "\n";
        if (s.tau1) {
            previous = s.tau1;
        }
    }
    return out;
}

std::string grid_csv(const RegionGrid& grid)
{
    std::string out = "p,q,verdict,citation,margin\n";
    for (int row = 0; row < grid.resolution; ++row) {
        for (int col = 0; col < grid.resolution; ++col) {
            const RegionClass& c = grid.at(row, col);
            out += format_significant(grid.p_values[static_cast<std::size_t>(col)]) + ",";
            out += format_significant(grid.q_values[static_cast<std::size_t>(row)]) + ",";
            out += std::string(to_string(c.verdict)) + "," + std::string(to_string(c.citation)) + ",";
            out += format_significant(c.margin) + "\n";
        }
    }
    return out;
}

std::vector<PlotMarker> picture_markers(const HardyParams& params, Interval p_range, Interval q_range)
{
    std::vector<PlotMarker> all;
    const Regime regime = regime_of(params);
    if (regime == Regime::C) {
        return all;
    }
    const ExponentPairPQ unit(1.0, 1.0);
    const BoundaryExpressions ex = boundary_expressions(params, unit);
    const double a = params.tau1().tau_plus;
    const double b = params.tau2().tau_plus;

    if (regime == Regime::B) {
        const double qt = *ex.q_integrability;
        const double pt = *ex.p_integrability;
        const double qb = *ex.q_bootstrap;
        const double pb = *ex.p_bootstrap;
        all = {{"E", 0.0, qt},
               {"D", pt, 0.0},
               {"B", pb, qb},
               {"A", e1_zero_p(a, qt), qt},
               {"C", pt, e2_zero_q(b, pt)},
               {"F", 0.0, qb},
               {"G", pb, 0.0}};
    } else if (a < 0.0) {
        const double qt = *ex.q_integrability;
        const double qs = *ex.q_strip;
        // Q: the line q = 2/(-tau_+(mu1)) meets the upper edge of the plot,
        // where the critical curve runs off to p = infinity.
        all = {{"E", 0.0, qt}, {"M", 0.0, qs}, {"A", e1_zero_p(a, qt), qt}, {"Q", p_range.hi, qs}};
    } else {
        // Mirror image: tau_+(mu2) < 0 <= tau_+(mu1).
        const double pt = *ex.p_integrability;
        const double ps = *ex.p_strip;
        all = {{"D", pt, 0.0}, {"M", ps, 0.0}, {"A", pt, e2_zero_q(b, pt)}, {"Q", ps, q_range.hi}};
    }
    std::vector<PlotMarker> kept;
    for (const PlotMarker& m : all) {
        if (std::isfinite(m.p) && std::isfinite(m.q) && m.p >= 0.0 && m.q >= 0.0 && m.p <= p_range.hi &&
            m.q <= q_range.hi) {
            kept.push_back(m);
        }
    }
    return kept;
}

PlotSpec default_plot_spec(const HardyParams& params, Interval p_range, Interval q_range)
{
    return {p_range, q_range, picture_markers(params, p_range, q_range), 256};
}

std::string_view citation_color(Verdict verdict, Citation citation)
{
    if (verdict == Verdict::OutOfScope) {
        return "#eeeeee";
    }
    switch (citation) {
    case Citation::T1_i: return "#8b0000";
    case Citation::T1_ii: return "#d62728";
    case Citation::T2_i: return "#7f1d1d";
    case Citation::T2_ii: return "#e34a33";
    case Citation::T2_iii: return "#fc8d59";
    case Citation::P2_1: return "#b2182b";
    case Citation::T3_i_case1: return "#1a9850";
    case Citation::T3_i_case2: return "#66bd63";
    case Citation::T3_i_case3: return "#006837";
    case Citation::T3_ii_a1: return "#1f78b4";
    case Citation::T3_ii_a2: return "#a6cee3";
    case Citation::T3_ii_b1: return "#33a02c";
    case Citation::T3_ii_b2: return "#b2df8a";
    case Citation::CriticalAQ: return "#ffd700";
    case Citation::CriticalAB: return "#ffa500";
    case Citation::CriticalBC: return "#ff8c00";
    case Citation::DottedBoundary: return "#bdbdbd";
    case Citation::NoNegativeCoefficient: return "#eeeeee";
    }
    return "#000000";
}

Json plot_record(const HardyParams& params, const RegionGrid& grid, const PlotSpec& spec)
{
    std::map<std::pair<int, int>, long long> counts;
    for (const RegionClass& c : grid.cells) {
        ++counts[{static_cast<int>(c.verdict), static_cast<int>(c.citation)}];
    }
    Json classes = Json::array();
    for (const auto& [key, count] : counts) {
        const auto verdict = static_cast<Verdict>(key.first);
        const auto citation = static_cast<Citation>(key.second);
        classes.push_back(Json{{"verdict", std::string(to_string(verdict))},
                               {"citation", std::string(to_string(citation))},
                               {"cells", count}});
    }
    Json markers = Json::array();
    for (const PlotMarker& m : spec.markers) {
        markers.push_back(Json{{"label", m.label}, {"p", m.p}, {"q", m.q}});
    }
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "plot";
    j["params"] = params_json(params);
    j["p_range"] = Json{{"lo", spec.p_range.lo}, {"hi", spec.p_range.hi}};
    j["q_range"] = Json{{"lo", spec.q_range.lo}, {"hi", spec.q_range.hi}};
    j["resolution"] = grid.resolution;
    j["classes"] = classes;
    j["markers"] = markers;
    return j;
}

std::string render_svg(const HardyParams& params, const RegionGrid& grid, const PlotSpec& spec)
{
    if (grid.cells.empty()) {
        throw std::invalid_argument("cannot plot an empty grid");
    }
    const View view{spec.p_range.hi, spec.q_range.hi};
    const std::vector<double> pe = tile_edges(grid.p_values);
    const std::vector<double> qe = tile_edges(grid.q_values);
    const double legend_x = View::left + View::size + 30.0;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"1200\" height=\"870\" "
           "viewBox=\"0 0 1200 870\">\n";
    svg << "<title>(p,q) regions, N=" << params.dimension() << " mu1=" << format_significant(params.mu1())
        << " mu2=" << format_significant(params.mu2()) << "</title>\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"1200\" height=\"870\" fill=\"#ffffff\"/>\n";

    svg << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
    for (int row = 0; row < grid.resolution; ++row) {
        const auto r = static_cast<std::size_t>(row);
        const std::string y = format_fixed6(view.y(qe[r + 1]));
        const std::string h = format_fixed6(view.y(qe[r]) - view.y(qe[r + 1]));
        for (int col = 0; col < grid.resolution; ++col) {
            const auto k = static_cast<std::size_t>(col);
            const RegionClass& c = grid.at(row, col);
            svg << "<rect x=\"" << format_fixed6(view.x(pe[k])) << "\" y=\"" << y << "\" width=\""
                << format_fixed6(view.x(pe[k + 1]) - view.x(pe[k])) << "\" height=\"" << h << "\" fill=\""
                << citation_color(c.verdict, c.citation) << "\"/>\n";
        }
    }
    svg << "</g>\n";

    // Axes.
    svg << "<g id=\"axes\" stroke=\"#000000\" stroke-width=\"1\" fill=\"none\">\n";
    svg << "<path d=\"M " << format_fixed6(view.x(0.0)) << " " << format_fixed6(view.y(0.0)) << " L "
        << format_fixed6(view.x(view.p_hi)) << " " << format_fixed6(view.y(0.0)) << " M "
        << format_fixed6(view.x(0.0)) << " " << format_fixed6(view.y(0.0)) << " L " << format_fixed6(view.x(0.0))
        << " " << format_fixed6(view.y(view.q_hi)) << "\"/>\n";
    svg << "</g>\n";
    svg << "<text x=\"" << format_fixed6(view.x(view.p_hi)) << "\" y=\"" << format_fixed6(view.y(0.0) + 30.0)
        << "\" font-size=\"14\" text-anchor=\"end\">p (0 .. " << format_significant(view.p_hi, 6) << ")</text>\n";
    svg << "<text x=\"" << format_fixed6(View::left - 10.0) << "\" y=\"" << format_fixed6(View::top + 10.0)
        << "\" font-size=\"14\" text-anchor=\"end\">q</text>\n";

    const Interval q_span{std::max(spec.q_range.lo, 1e-9), spec.q_range.hi};
    const Interval p_span{std::max(spec.p_range.lo, 1e-9), spec.p_range.hi};
    svg << "<g id=\"overlays\" fill=\"none\" stroke-width=\"2\">\n";
    const std::string e1 = curve_path(view, q_span, spec.overlay_samples, true, params.tau1().tau_plus);
    if (!e1.empty()) {
        svg << "<path data-curve=\"e1\" stroke=\"#000000\" stroke-dasharray=\"6 3\" d=\"" << e1 << "\"/>\n";
    }
    const std::string e2 = curve_path(view, p_span, spec.overlay_samples, false, params.tau2().tau_plus);
    if (!e2.empty()) {
        svg << "<path data-curve=\"e2\" stroke=\"#444444\" stroke-dasharray=\"2 3\" d=\"" << e2 << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g id=\"markers\" font-size=\"14\">\n";
    for (const PlotMarker& m : spec.markers) {
        const std::string x = format_fixed6(view.x(m.p));
        const std::string y = format_fixed6(view.y(m.q));
        svg << "<circle data-label=\"" << m.label << "\" data-p=\"" << format_fixed6(m.p) << "\" data-q=\""
            << format_fixed6(m.q) << "\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"#000000\"/>\n";
        svg << "<text x=\"" << format_fixed6(view.x(m.p) + 6.0) << "\" y=\"" << format_fixed6(view.y(m.q) - 6.0)
            << "\">" << m.label << "</text>\n";
    }
    svg << "</g>\n";

    std::map<std::pair<int, int>, bool> present;
    for (const RegionClass& c : grid.cells) {
        present[{static_cast<int>(c.verdict), static_cast<int>(c.citation)}] = true;
    }
    svg << "<g id=\"legend\" font-size=\"13\">\n";
    double ly = View::top + 10.0;
    for (const auto& [key, unused] : present) {
        const auto verdict = static_cast<Verdict>(key.first);
        const auto citation = static_cast<Citation>(key.second);
        svg << "<rect x=\"" << format_fixed6(legend_x) << "\" y=\"" << format_fixed6(ly)
            << "\" width=\"14\" height=\"14\" fill=\"" << citation_color(verdict, citation)
            << "\" stroke=\"#000000\"/>\n";
        svg << "<text data-legend=\"" << to_string(verdict) << "/" << to_string(citation) << "\" x=\""
            << format_fixed6(legend_x + 20.0) << "\" y=\"" << format_fixed6(ly + 12.0) << "\">" << to_string(verdict)
            << " " << to_string(citation) << "</text>\n";
        ly += 20.0;
    }
    svg << "</g>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace leh
