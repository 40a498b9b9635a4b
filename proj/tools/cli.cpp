#include "cli.hpp"

#include "leh/classifier.hpp"
#include "leh/construction.hpp"
#include "leh/iteration.hpp"
#include "leh/parallel.hpp"
#include "leh/report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace leh {

namespace {

struct RunConfig {
    std::string command;
    std::optional<int> dimension;
    std::optional<double> mu1;
    std::optional<double> mu2;
    std::string p;
    std::string q;
    std::string p_range;
    std::string q_range;
    int resolution = 200;
    std::string variant = "plain";
    int cap = kDefaultIterationCap;
    std::string case_id;
    int grid_points = kDefaultGridPoints;
    double r_min = kDefaultGridMin;
    std::string out;
    std::string format;
    std::string config;
};

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

double parse_double(const std::string& text, const std::string& flag)
{
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) {
            throw ValidationError("");
        }
        return value;
    } catch (const std::exception&) {
        throw ValidationError("--" + flag + ": cannot parse '" + text + "' as a number");
    }
}

// Fills every field the command line left unset from a JSON RunConfig.
void merge_config(RunConfig& cfg, const CLI::App& app)
{
    std::ifstream in(cfg.config);
    if (!in) {
        throw ValidationError("cannot read config file '" + cfg.config + "'");
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ValidationError("config file must hold a JSON object");
    }
    static const std::set<std::string> known{"command", "N",       "mu1",  "mu2",         "p",     "q",
                                             "p_range", "q_range", "res",  "variant",     "cap",   "case",
                                             "grid_points", "r_min", "out", "format"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ValidationError("unknown config key '" + key + "'");
        }
    }
    auto given = [&](const std::string& name) { return app.count(name) > 0; };
    auto text = [&](const Json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    try {
        if (j.contains("command") && cfg.command.empty()) cfg.command = j["command"].get<std::string>();
        if (j.contains("N") && !given("--N")) cfg.dimension = j["N"].get<int>();
        if (j.contains("mu1") && !given("--mu1")) cfg.mu1 = j["mu1"].get<double>();
        if (j.contains("mu2") && !given("--mu2")) cfg.mu2 = j["mu2"].get<double>();
        if (j.contains("p") && !given("--p")) cfg.p = text(j["p"]);
        if (j.contains("q") && !given("--q")) cfg.q = text(j["q"]);
        if (j.contains("p_range") && !given("--p-range")) cfg.p_range = j["p_range"].get<std::string>();
        if (j.contains("q_range") && !given("--q-range")) cfg.q_range = j["q_range"].get<std::string>();
        if (j.contains("res") && !given("--res")) cfg.resolution = j["res"].get<int>();
        if (j.contains("variant") && !given("--variant")) cfg.variant = j["variant"].get<std::string>();
        if (j.contains("cap") && !given("--cap")) cfg.cap = j["cap"].get<int>();
        if (j.contains("case") && !given("--case")) cfg.case_id = j["case"].get<std::string>();
        if (j.contains("grid_points") && !given("--grid-points")) cfg.grid_points = j["grid_points"].get<int>();
        if (j.contains("r_min") && !given("--r-min")) cfg.r_min = j["r_min"].get<double>();
        if (j.contains("out") && !given("--out")) cfg.out = j["out"].get<std::string>();
        if (j.contains("format") && !given("--format")) cfg.format = j["format"].get<std::string>();
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("config value has the wrong type: ") + e.what());
    }
}

std::set<std::string> requested_formats(const RunConfig& cfg, const std::set<std::string>& allowed,
                                        const std::set<std::string>& defaults)
{
    if (cfg.format.empty()) {
        return defaults;
    }
    std::set<std::string> formats;
    std::stringstream list(cfg.format);
    std::string item;
    while (std::getline(list, item, ',')) {
        if (!allowed.contains(item)) {
            std::string names;
            for (const std::string& a : allowed) {
                names += (names.empty() ? "" : ", ") + a;
            }
            throw ValidationError("format '" + item + "' is not available for " + cfg.command + " (use " + names + ")");
        }
        formats.insert(item);
    }
    if (formats.empty()) {
        throw ValidationError("--format lists no formats");
    }
    return formats;
}

std::string output_path(const RunConfig& cfg, const std::string& format, std::size_t format_count)
{
    const std::string suffix = "." + format;
    if (format_count == 1 && cfg.out.size() > suffix.size() &&
        cfg.out.compare(cfg.out.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return cfg.out;
    }
    return cfg.out + suffix;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw ValidationError("cannot open '" + path + "' for writing");
    }
    file << content;
    file.close();
    if (!file) {
        throw ValidationError("failed writing '" + path + "'");
    }
}

struct Emitter {
    const RunConfig& cfg;
    std::ostream& out;
    std::size_t count;

    void emit(const std::string& format, const std::string& content) const
    {
        if (cfg.out.empty()) {
            out << content;
        } else {
            write_file(output_path(cfg, format, count), content);
        }
    }
};

HardyParams params_of(const RunConfig& cfg)
{
    if (!cfg.dimension || !cfg.mu1 || !cfg.mu2) {
        throw ValidationError("--N, --mu1 and --mu2 are required");
    }
    return HardyParams(*cfg.dimension, *cfg.mu1, *cfg.mu2);
}

ExponentPairPQ point_of(const RunConfig& cfg)
{
    if (cfg.p.empty() || cfg.q.empty()) {
        throw ValidationError(cfg.command + " needs --p and --q");
    }
    if (cfg.p.find("..") != std::string::npos || cfg.q.find("..") != std::string::npos) {
        throw ValidationError(cfg.command + " takes single values for --p and --q, not ranges");
    }
    return ExponentPairPQ(parse_double(cfg.p, "p"), parse_double(cfg.q, "q"));
}

Interval range_of(const std::string& range_flag, const std::string& value_flag, const char* name)
{
    const std::string& text = !range_flag.empty() ? range_flag : value_flag;
    if (text.empty() || text.find("..") == std::string::npos) {
        throw ValidationError(std::string("plot needs --") + name + "-range a..b (or --" + name + " a..b)");
    }
    return parse_interval(text);
}

int run_classify(const RunConfig& cfg, std::ostream& out)
{
    const HardyParams params = params_of(cfg);
    const ExponentPairPQ pq = point_of(cfg);
    const auto formats = requested_formats(cfg, {"json"}, {"json"});
    const RegionClass region = classify(params, pq);
    std::optional<NonexistenceWitness> witness;
    if (region.verdict == Verdict::Nonexistence) {
        witness = nonexistence_witness(params, pq, cfg.cap);
    }
    Emitter{cfg, out, formats.size()}.emit("json", classify_record(params, pq, region, witness).dump(2) + "\n");
    return kExitOk;
}

int run_iterate(const RunConfig& cfg, std::ostream& out)
{
    const HardyParams params = params_of(cfg);
    const ExponentPairPQ pq = point_of(cfg);
    const auto formats = requested_formats(cfg, {"json", "csv"}, {"json"});
    const IterationTrace trace = iterate(params, pq, parse_variant(cfg.variant), cfg.cap);
    const Emitter emitter{cfg, out, formats.size()};
    if (formats.contains("json")) {
        emitter.emit("json", iterate_record(params, pq, trace, cfg.cap).dump(2) + "\n");
    }
    if (formats.contains("csv")) {
        emitter.emit("csv", iterate_csv(trace));
    }
    return kExitOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out)
{
    const HardyParams params = params_of(cfg);
    const ExponentPairPQ pq = point_of(cfg);
    const auto formats = requested_formats(cfg, {"json"}, {"json"});
    CaseId id{};
    if (!cfg.case_id.empty()) {
        id = parse_case(cfg.case_id);
    } else {
        const RegionClass region = classify(params, pq);
        if (!region.construction) {
            throw ValidationError("no construction applies at this point (" + std::string(to_string(region.verdict)) +
                                  " " + std::string(to_string(region.citation)) + "); pass --case to force one");
        }
        id = *region.construction;
    }
    if (cfg.grid_points < 2) {
        throw ValidationError("--grid-points must be at least 2");
    }
    if (!(cfg.r_min > 0.0) || !(cfg.r_min < 1.0)) {
        throw ValidationError("--r-min must lie in (0, 1)");
    }
    const ConstructionRun run = run_construction(id, params, pq, cfg.grid_points, cfg.r_min);
    Emitter{cfg, out, formats.size()}.emit("json", verify_record(params, pq, run).dump(2) + "\n");
    // The point satisfies the case hypothesis, so a failed verification means
    // the construction and the classifier disagree.
    return run.scale.t ? kExitOk : kExitInconsistent;
}

int run_plot(const RunConfig& cfg, std::ostream& out)
{
    const HardyParams params = params_of(cfg);
    const Interval p_range = range_of(cfg.p_range, cfg.p, "p");
    const Interval q_range = range_of(cfg.q_range, cfg.q, "q");
    const auto formats = requested_formats(cfg, {"csv", "svg", "json"}, {"csv", "svg"});
    if (cfg.out.empty() && formats.size() > 1) {
        throw ValidationError("plot writes several files; pass --out <prefix> or a single --format");
    }
    const RegionGrid grid = classify_grid(params, p_range, q_range, cfg.resolution);
    const PlotSpec spec = default_plot_spec(params, p_range, q_range);
    const Emitter emitter{cfg, out, formats.size()};
    if (formats.contains("csv")) {
        emitter.emit("csv", grid_csv(grid));
    }
    if (formats.contains("svg")) {
        emitter.emit("svg", render_svg(params, grid, spec));
    }
    if (formats.contains("json")) {
        emitter.emit("json", plot_record(params, grid, spec).dump(2) + "\n");
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    apply_thread_limit();

    RunConfig cfg;
    CLI::App app{"Lane-Emden systems with Hardy potentials: region classifier, exponent iteration and "
                 "supersolution verifier",
                 "leh"};
    app.add_option("command", cfg.command, "classify | iterate | verify | plot")
        ->check(CLI::IsMember({"classify", "iterate", "verify", "plot"}));
    int dimension = 0;
    double mu1 = 0.0;
    double mu2 = 0.0;
    app.add_option("--N", dimension, "dimension N >= 3");
    app.add_option("--mu1", mu1, "Hardy coefficient of the first equation");
    app.add_option("--mu2", mu2, "Hardy coefficient of the second equation");
    app.add_option("--p", cfg.p, "exponent p (or a..b for plot)");
    app.add_option("--q", cfg.q, "exponent q (or a..b for plot)");
    app.add_option("--p-range", cfg.p_range, "p interval a..b (plot)");
    app.add_option("--q-range", cfg.q_range, "q interval a..b (plot)");
    app.add_option("--res", cfg.resolution, "grid resolution per axis (plot)");
    app.add_option("--variant", cfg.variant, "plain | clamped (iterate)");
    app.add_option("--cap", cfg.cap, "iteration cap");
    app.add_option("--case", cfg.case_id, "construction C1..C8 (verify)");
    app.add_option("--grid-points", cfg.grid_points, "radial grid size (verify)");
    app.add_option("--r-min", cfg.r_min, "smallest grid radius (verify)");
    app.add_option("--out", cfg.out, "output path or prefix");
    app.add_option("--format", cfg.format, "comma list of csv, json, svg");
    app.add_option("--config", cfg.config, "JSON RunConfig supplying unset flags");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }
    if (app.count("--N")) cfg.dimension = dimension;
    if (app.count("--mu1")) cfg.mu1 = mu1;
    if (app.count("--mu2")) cfg.mu2 = mu2;

    try {
        if (!cfg.config.empty()) {
            merge_config(cfg, app);
        }
        if (cfg.command == "classify") return run_classify(cfg, out);
        if (cfg.command == "iterate") return run_iterate(cfg, out);
        if (cfg.command == "verify") return run_verify(cfg, out);
        if (cfg.command == "plot") return run_plot(cfg, out);
        throw ValidationError(cfg.command.empty() ? "no command given (classify, iterate, verify, plot)"
                                                  : "unknown command '" + cfg.command + "'");
    } catch (const InconsistencyError& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace leh
