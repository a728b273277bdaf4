// cyberdyn: command-line driver for threshold, dynamics, emergence and hyperproperty runs.
//
// Exit codes: 0 computed (whatever the verdict), 2 invalid input, 3 numeric/internal failure.
// Diagnostics go to stderr as a single line "error: <category>: <message>".

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyberdyn/dynamics.hpp"
#include "cyberdyn/emergence.hpp"
#include "cyberdyn/error.hpp"
#include "cyberdyn/graph.hpp"
#include "cyberdyn/hyperprop.hpp"
#include "cyberdyn/hyperprop_io.hpp"
#include "cyberdyn/spectral.hpp"

namespace {

using namespace cyberdyn;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumeric = 3;

struct Options {
    // graph gen
    std::string type = "complete";
    std::size_t n = 1;
    double p = 0.5;
    // shared
    std::string graph;
    std::vector<std::string> components;
    std::string op = "join";
    std::string bridge_edges;
    double beta = 0.0;
    double gamma = 0.0;
    std::string init = "all";
    std::size_t horizon = 1000;
    std::size_t replicates = 1;
    std::size_t emergence_horizon = 2000;
    std::size_t emergence_replicates = 200;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    double tol = 1e-10;
    std::size_t max_iter = 100000;
    double critical_tol = kDefaultCriticalTol;
    double fixed_point_tol = 1e-12;
    double p0 = 1.0;
    std::string out;
    std::string report;
    // hyperprop
    std::string traces;
    std::string property;
    std::string sigma;
    std::size_t len = 0;
    std::size_t max_set_size = 4;
};

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidArgument("cannot write " + path);
    out << text;
    if (!out)
        throw InvalidArgument("failed writing " + path);
}

/// Writes to `path`, or to stdout when no path was given.
void emit_json(const json& j, const std::string& path)
{
    const auto text = j.dump(2) + "\n";
    if (path.empty())
        std::cout << text;
    else
        write_text(path, text);
}

DynamicsParams params_of(const Options& o, bool need_positive_gamma)
{
    DynamicsParams params{o.beta, o.gamma};
    params.validate();
    if (need_positive_gamma && !(params.gamma > 0.0))
        throw InvalidArgument("gamma must be > 0");
    return params;
}

SpectralOptions spectral_of(const Options& o)
{
    if (!(o.tol > 0.0))
        throw InvalidArgument("tol must be > 0");
    return {o.tol, o.max_iter};
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

json spectral_json(const SpectralResult& r, const Graph& g)
{
    return {{"n", g.node_count()},
            {"edges", g.edge_count()},
            {"lambda1", r.lambda1},
            {"iterations", r.iterations},
            {"residual", r.residual}};
}

// --- property arguments for hyperprop check / witness -------------------------------------

struct PropertyArg {
    std::string text;
    enum class Kind { AvgRt, Noninterference, PointwiseMaxRt } kind;
    double bound = 0.0;
};

double parse_bound(const std::string& text, const std::string& arg)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !(value > 0.0))
        throw InvalidArgument("property '" + arg + "' needs a positive numeric bound");
    return value;
}

PropertyArg parse_property_arg(const std::string& arg)
{
    if (arg == "noninterference")
        return {arg, PropertyArg::Kind::Noninterference};
    if (arg.rfind("avg-rt:", 0) == 0)
        return {arg, PropertyArg::Kind::AvgRt, parse_bound(arg.substr(7), arg)};
    if (arg.rfind("pointwise:max-rt:", 0) == 0)
        return {arg, PropertyArg::Kind::PointwiseMaxRt, parse_bound(arg.substr(17), arg)};
    throw InvalidArgument("property must be avg-rt:<bound>, noninterference or pointwise:max-rt:<bound>, got '" +
                          arg + "'");
}

hyper::PropertyVerdict check_property(const PropertyArg& arg, const hyper::TraceSet& s)
{
    switch (arg.kind) {
    case PropertyArg::Kind::AvgRt: return hyper::check_avg_response_time(s, arg.bound);
    case PropertyArg::Kind::Noninterference: return hyper::check_noninterference(s);
    case PropertyArg::Kind::PointwiseMaxRt: return hyper::check_pointwise(s, hyper::max_response_time(arg.bound));
    }
    throw InvalidArgument("unknown property");
}

// --- subcommand handlers ----------------------------------------------------------------

void run_graph_gen(const Options& o)
{
    Graph g;
    if (o.type == "complete")
        g = make_complete(o.n);
    else if (o.type == "star")
        g = make_star(o.n);
    else if (o.type == "path")
        g = make_path(o.n);
    else if (o.type == "erdos-renyi" || o.type == "er")
        g = make_erdos_renyi(o.n, o.p, o.seed);
    else
        throw InvalidArgument("graph type must be complete, star, path or erdos-renyi, got '" + o.type + "'");
    if (o.out.empty())
        std::cout << graph_to_json(g).dump() << '\n';
    else
        write_graph(g, o.out);
}

Composition composition_of(const Options& o)
{
    Composition c;
    c.op = composition_from_name(o.op);
    if (c.op == CompositionOp::Bridge) {
        if (o.bridge_edges.empty())
            throw InvalidArgument("--op bridge requires --bridge-edges");
        c.bridge_edges = read_edge_list(o.bridge_edges);
    }
    return c;
}

std::vector<Graph> read_components(const Options& o)
{
    std::vector<Graph> graphs;
    for (const auto& path : o.components)
        graphs.push_back(read_graph(path));
    return graphs;
}

void run_graph_compose(const Options& o)
{
    const auto composition = composition_of(o);
    const auto graphs = read_components(o);
    const auto g = compose(graphs, composition);
    if (o.out.empty())
        std::cout << graph_to_json(g).dump() << '\n';
    else
        write_graph(g, o.out);
}

void run_spectral(const Options& o)
{
    const auto options = spectral_of(o);
    const auto g = read_graph(o.graph);
    emit_json(spectral_json(spectral_radius(g, options), g), o.report);
}

void run_threshold(const Options& o)
{
    const auto params = params_of(o, true);
    const auto options = spectral_of(o);
    if (!(o.critical_tol >= 0.0))
        throw InvalidArgument("critical-tol must be >= 0");
    const auto g = read_graph(o.graph);
    const auto spectral = spectral_radius(g, options);
    auto j = verdict_to_json(classify(spectral.lambda1, params, o.critical_tol));
    j["beta"] = params.beta;
    j["gamma"] = params.gamma;
    j["critical_tol"] = o.critical_tol;
    emit_json(j, o.report);
}

void run_simulate(const Options& o)
{
    const auto params = params_of(o, false);
    if (o.replicates == 0)
        throw InvalidArgument("replicates must be >= 1");
    const auto policy = InitPolicy::parse(o.init);
    const auto g = read_graph(o.graph);
    const auto init = policy.apply(g, o.seed);
    std::vector<SimTrace> traces;
    const auto summary = run_replicates(g, params, init, o.horizon, {o.replicates, o.seed, o.threads}, &traces);
    if (!o.out.empty()) {
        std::ostringstream csv;
        write_timeseries_csv(csv, traces);
        write_text(o.out, csv.str());
    }
    auto j = summary_to_json(summary);
    j["beta"] = params.beta;
    j["gamma"] = params.gamma;
    j["init"] = policy.to_string();
    emit_json(j, o.report);
}

void run_meanfield(const Options& o)
{
    const auto params = params_of(o, false);
    if (!(o.p0 >= 0.0 && o.p0 <= 1.0))
        throw InvalidArgument("p0 must be in [0, 1]");
    if (!(o.fixed_point_tol > 0.0))
        throw InvalidArgument("tol must be > 0");
    const auto g = read_graph(o.graph);
    const std::vector<double> p0(g.node_count(), o.p0);
    const auto trace = mean_field_iterate(g, params, p0, o.horizon, o.fixed_point_tol);
    if (!o.out.empty()) {
        std::ostringstream csv;
        write_meanfield_csv(csv, trace);
        write_text(o.out, csv.str());
    }
    emit_json({{"beta", params.beta},
               {"gamma", params.gamma},
               {"steps", trace.steps.size() - 1},
               {"converged", trace.converged},
               {"final_total", trace.final_total},
               {"final_p", trace.steps.back()}},
              o.report);
}

void run_emergence(const Options& o)
{
    const auto params = params_of(o, true);
    const auto spectral = spectral_of(o);
    if (o.components.size() < 2)
        throw InvalidArgument("--components needs at least 2 graph files");
    if (o.emergence_replicates == 0)
        throw InvalidArgument("replicates must be >= 1");
    if (!(o.critical_tol >= 0.0))
        throw InvalidArgument("critical-tol must be >= 0");
    SimulationConfig sim;
    sim.horizon = o.emergence_horizon;
    sim.replicates = o.emergence_replicates;
    sim.master_seed = o.seed;
    sim.init = InitPolicy::parse(o.init);
    sim.threads = o.threads;
    const auto composition = composition_of(o);
    const auto graphs = read_components(o);
    const auto report = evaluate_emergence(graphs, composition, params, sim, o.critical_tol, spectral);
    emit_json(report_to_json(report), o.report);
}

hyper::TraceSet as_set(const std::vector<hyper::Trace>& traces)
{
    return {traces.begin(), traces.end()};
}

void run_hyper_check(const Options& o)
{
    const auto arg = parse_property_arg(o.property);
    const auto s = as_set(hyper::read_traces(o.traces));
    const auto verdict = check_property(arg, s);
    json j = {{"property", arg.text}, {"traces", s.size()}, {"passed", verdict.passed}};
    if (verdict.offending)
        j["offending"] = hyper::traces_to_json({*verdict.offending})["traces"][0];
    if (verdict.statistic)
        j["statistic"] = *verdict.statistic;
    emit_json(j, o.report);
}

void run_hyper_decompose(const Options& o)
{
    std::ifstream in(o.property, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + o.property);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(o.property + ": malformed JSON");
    }
    if (!o.sigma.empty()) {
        const json sigma = split_list(o.sigma);
        if (j.contains("sigma") && j["sigma"] != sigma)
            throw InvalidArgument("--sigma disagrees with the property file");
        j["sigma"] = sigma;
    }
    if (o.len > 0) {
        if (j.contains("L") && j["L"] != o.len)
            throw InvalidArgument("--len disagrees with the property file");
        j["L"] = o.len;
    }
    const auto p = hyper::property_from_json(j);
    const auto parts = hyper::decompose(p);
    emit_json({{"input", hyper::property_to_json(p)},
               {"input_is_safety", hyper::is_safety(p)},
               {"input_is_liveness", hyper::is_liveness(p)},
               {"safe", hyper::property_to_json(parts.safe)},
               {"live", hyper::property_to_json(parts.live)},
               {"safe_is_safety", hyper::is_safety(parts.safe)},
               {"live_is_liveness", hyper::is_liveness(parts.live)},
               {"intersection_equals_input", parts.safe.intersect(parts.live) == p}},
              o.report);
}

void run_hyper_witness(const Options& o)
{
    const auto arg = parse_property_arg(o.property);
    std::vector<hyper::Trace> pool;
    if (!o.traces.empty()) {
        pool = hyper::read_traces(o.traces);
    } else if (!o.sigma.empty()) {
        if (o.len == 0)
            throw InvalidArgument("--sigma needs --len >= 1");
        std::vector<hyper::Event> alphabet;
        for (const auto& symbol : split_list(o.sigma))
            alphabet.push_back(hyper::parse_event_symbol(symbol));
        pool = hyper::enumerate_traces(alphabet, o.len);
    } else {
        throw InvalidArgument("witness needs --traces or --sigma/--len");
    }
    const auto witness = hyper::witness_non_trace_property(
        [&](const hyper::TraceSet& s) { return check_property(arg, s).passed; }, pool, o.max_set_size);
    json j = {{"property", arg.text}, {"pool", pool.size()}, {"found", witness.has_value()}};
    if (witness)
        j["witness"] = hyper::witness_to_json(*witness);
    emit_json(j, o.report);
}

// --- flag wiring ------------------------------------------------------------------------

void add_params(CLI::App* cmd, Options& o)
{
    cmd->add_option("--beta", o.beta, "Per-node, per-step cure probability")->required()->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--gamma", o.gamma, "Per-edge, per-step compromise probability")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
}

void add_spectral(CLI::App* cmd, Options& o)
{
    cmd->add_option("--tol", o.tol, "Power-iteration residual tolerance")->capture_default_str();
    cmd->add_option("--max-iter", o.max_iter, "Power-iteration step limit")->capture_default_str();
}

void add_sim(CLI::App* cmd, Options& o, std::size_t& horizon, std::size_t& replicates)
{
    cmd->add_option("--init", o.init, "Initial compromise: all | random:<k> | nodes:<comma-list>")
        ->capture_default_str();
    cmd->add_option("--horizon", horizon, "Steps per replicate")->capture_default_str();
    cmd->add_option("--replicates", replicates, "Number of replicates")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Replicate worker threads (0 = all cores); output does not depend on it")
        ->capture_default_str();
}

void add_components(CLI::App* cmd, Options& o)
{
    cmd->add_option("--components", o.components, "Two or more component graph files")
        ->required()
        ->expected(2, CLI::detail::expected_max_vector_size)
        ->check(CLI::ExistingFile);
    cmd->add_option("--op", o.op, "Composition: union | join | bridge")
        ->capture_default_str()
        ->check(CLI::IsMember({"union", "join", "bridge"}));
    cmd->add_option("--bridge-edges", o.bridge_edges, "Cross-edge file {\"edges\": [[u, v], ...]} for --op bridge")
        ->check(CLI::ExistingFile);
}

int report_error(std::string_view category, const std::string& message, int code)
{
    std::string line = message;
    for (auto& c : line)
        if (c == '\n')
            c = ' ';
    std::cerr << "error: " << category << ": " << line << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Spectral thresholds, attack-defense dynamics, emergence reports and hyperproperty checks"};
    app.require_subcommand(1);

    auto* graph = app.add_subcommand("graph", "Generate or compose graphs");
    graph->require_subcommand(1);
    auto* gen = graph->add_subcommand("gen", "Generate a graph file");
    gen->add_option("--type", o.type, "complete | star | path | erdos-renyi")->capture_default_str();
    gen->add_option("--n", o.n, "Node count")->required();
    gen->add_option("--p", o.p, "Edge probability (erdos-renyi)")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", o.seed, "Seed (erdos-renyi)")->capture_default_str();
    gen->add_option("--out", o.out, "Output graph file (stdout if omitted)");

    auto* compose_cmd = graph->add_subcommand("compose", "Compose component graphs");
    add_components(compose_cmd, o);
    compose_cmd->add_option("--out", o.out, "Output graph file (stdout if omitted)");

    auto* spectral = app.add_subcommand("spectral", "Largest adjacency eigenvalue");
    spectral->add_option("--graph", o.graph, "Graph file")->required()->check(CLI::ExistingFile);
    add_spectral(spectral, o);
    spectral->add_option("--report", o.report, "JSON output file (stdout if omitted)");

    auto* threshold = app.add_subcommand("threshold", "Die-out verdict lambda1 vs beta/gamma");
    threshold->add_option("--graph", o.graph, "Graph file")->required()->check(CLI::ExistingFile);
    add_params(threshold, o);
    threshold->add_option("--critical-tol", o.critical_tol, "Half-width of the Critical band")->capture_default_str();
    add_spectral(threshold, o);
    threshold->add_option("--report", o.report, "JSON output file (stdout if omitted)");

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo replicates of the attack-defense dynamics");
    simulate_cmd->add_option("--graph", o.graph, "Graph file")->required()->check(CLI::ExistingFile);
    add_params(simulate_cmd, o);
    simulate_cmd->add_option("--out", o.out, "Time-series CSV (step,replicate,compromised_count)");
    simulate_cmd->add_option("--report", o.report, "JSON summary file (stdout if omitted)");

    auto* meanfield = app.add_subcommand("meanfield", "Deterministic mean-field iteration");
    meanfield->add_option("--graph", o.graph, "Graph file")->required()->check(CLI::ExistingFile);
    add_params(meanfield, o);
    meanfield->add_option("--p0", o.p0, "Initial per-node compromise probability")->capture_default_str();
    meanfield->add_option("--horizon", o.horizon, "Maximum steps")->capture_default_str();
    meanfield->add_option("--tol", o.fixed_point_tol, "Fixed-point tolerance (max per-node change)")
        ->capture_default_str();
    meanfield->add_option("--out", o.out, "CSV (step,total_p,max_p)");
    meanfield->add_option("--report", o.report, "JSON summary file (stdout if omitted)");

    auto* emergence = app.add_subcommand("emergence", "Component vs composite threshold verdicts");
    add_components(emergence, o);
    add_params(emergence, o);
    emergence->add_option("--critical-tol", o.critical_tol, "Half-width of the Critical band")->capture_default_str();
    add_spectral(emergence, o);
    emergence->add_option("--report", o.report, "Report JSON file (stdout if omitted)");

    auto* hyperprop = app.add_subcommand("hyperprop", "Trace properties and hyperproperties");
    hyperprop->require_subcommand(1);
    auto* check = hyperprop->add_subcommand("check", "Check a property on a trace set");
    check->add_option("--traces", o.traces, "Trace-set JSON file")->required()->check(CLI::ExistingFile);
    check->add_option("--property", o.property, "avg-rt:<bound> | noninterference | pointwise:max-rt:<bound>")
        ->required();
    check->add_option("--report", o.report, "JSON output file (stdout if omitted)");

    auto* decompose_cmd = hyperprop->add_subcommand("decompose", "Safety/liveness decomposition of a finite property");
    decompose_cmd->add_option("--property", o.property, "Property JSON file {sigma, L, members}")
        ->required()
        ->check(CLI::ExistingFile);
    decompose_cmd->add_option("--sigma", o.sigma, "Comma-separated alphabet (if absent from the file)");
    decompose_cmd->add_option("--len", o.len, "Trace length L (if absent from the file)");
    decompose_cmd->add_option("--report", o.report, "JSON output file (stdout if omitted)");

    auto* witness = hyperprop->add_subcommand("witness", "Search for a witness that a property is not a trace property");
    witness->add_option("--property", o.property, "avg-rt:<bound> | noninterference | pointwise:max-rt:<bound>")
        ->required();
    witness->add_option("--traces", o.traces, "Candidate pool (trace-set JSON)")->check(CLI::ExistingFile);
    witness->add_option("--sigma", o.sigma, "Event alphabet for a generated pool, e.g. Hin:1,Lout:0@2");
    witness->add_option("--len", o.len, "Trace length of the generated pool");
    witness->add_option("--max-set-size", o.max_set_size, "Largest candidate set")->capture_default_str();
    witness->add_option("--report", o.report, "JSON output file (stdout if omitted)");

    add_sim(simulate_cmd, o, o.horizon, o.replicates);
    add_sim(emergence, o, o.emergence_horizon, o.emergence_replicates);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("invalid-argument", e.what(), kExitInvalid);
    }

    try {
        if (*gen)
            run_graph_gen(o);
        else if (*compose_cmd)
            run_graph_compose(o);
        else if (*spectral)
            run_spectral(o);
        else if (*threshold)
            run_threshold(o);
        else if (*simulate_cmd)
            run_simulate(o);
        else if (*meanfield)
            run_meanfield(o);
        else if (*emergence)
            run_emergence(o);
        else if (*check)
            run_hyper_check(o);
        else if (*decompose_cmd)
            run_hyper_decompose(o);
        else if (*witness)
            run_hyper_witness(o);
    } catch (const ConvergenceError& e) {
        return report_error(category_name(e.category()), e.what(), kExitNumeric);
    } catch (const Error& e) {
        return report_error(category_name(e.category()), e.what(), kExitInvalid);
    } catch (const std::exception& e) {
        return report_error("internal", e.what(), kExitNumeric);
    }
    return kExitOk;
}
