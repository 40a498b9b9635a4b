#pragma once

// Serialisation of results: JSON records (schema_version "1", snake_case
// keys), CSV tables and the SVG region plot.

#include "leh/classifier.hpp"
#include "leh/construction.hpp"
#include "leh/iteration.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace leh {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// printf("%.{digits}g"); non-finite values print as nan / inf / -inf.
std::string format_significant(double value, int digits = 12);
/// printf("%.6f").
std::string format_fixed6(double value);

Json params_json(const HardyParams& params);
Json pq_json(const ExponentPairPQ& pq);
Json boundary_json(const BoundaryExpressions& ex);
Json radial_json(const RadialFunction& f);
Json trace_json(const IterationTrace& trace);
Json witness_json(const NonexistenceWitness& witness);
Json report_json(const VerificationReport& report);

Json classify_record(const HardyParams& params, const ExponentPairPQ& pq, const RegionClass& region,
                     const std::optional<NonexistenceWitness>& witness);
Json iterate_record(const HardyParams& params, const ExponentPairPQ& pq, const IterationTrace& trace, int cap);
Json verify_record(const HardyParams& params, const ExponentPairPQ& pq, const ConstructionRun& run);

/// j,tau1,tau2,s_j with s_j = tau1(j) - tau1(j-1); empty fields where undefined.
std::string iterate_csv(const IterationTrace& trace);
/// p,q,verdict,citation,margin, one row per cell in row-major order.
std::string grid_csv(const RegionGrid& grid);

struct PlotMarker {
    std::string label;
    double p;
    double q;
};

struct PlotSpec {
    Interval p_range;
    Interval q_range;
    std::vector<PlotMarker> markers;
    int overlay_samples = 256;
};

/// Markers of the region pictures that fall inside [0, p_hi] x [0, q_hi]:
/// E, D, B, A, C, F, G in regime B; E, M, A, Q in regime A.
std::vector<PlotMarker> picture_markers(const HardyParams& params, Interval p_range, Interval q_range);

PlotSpec default_plot_spec(const HardyParams& params, Interval p_range, Interval q_range);

Json plot_record(const HardyParams& params, const RegionGrid& grid, const PlotSpec& spec);

/// Deterministic SVG 1.1 document: one rect per cell, legend, E1 = 0 and
/// E2 = 0 overlays and the markers.
std::string render_svg(const HardyParams& params, const RegionGrid& grid, const PlotSpec& spec);

/// Fill colour for a verdict and citation.
std::string_view citation_color(Verdict verdict, Citation citation);

}  // namespace leh
