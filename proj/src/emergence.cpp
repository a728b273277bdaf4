#include "cyberdyn/emergence.hpp"

#include <algorithm>
#include <sstream>

#include "cyberdyn/error.hpp"
#include "cyberdyn/rng.hpp"

namespace cyberdyn {

using nlohmann::json;

std::string_view composition_name(CompositionOp op) noexcept
{
    switch (op) {
    case CompositionOp::Union: return "union";
    case CompositionOp::Join: return "join";
    case CompositionOp::Bridge: return "bridge";
    }
    return "join";
}

CompositionOp composition_from_name(std::string_view name)
{
    for (auto op : {CompositionOp::Union, CompositionOp::Join, CompositionOp::Bridge})
        if (composition_name(op) == name)
            return op;
    throw InvalidArgument("composition op must be union, join or bridge, got '" + std::string(name) + "'");
}

Graph compose(std::span<const Graph> components, const Composition& composition)
{
    if (components.size() < 2)
        throw InvalidArgument("composition needs at least 2 components");
    switch (composition.op) {
    case CompositionOp::Bridge:
        if (components.size() != 2)
            throw InvalidArgument("bridge composition takes exactly 2 components");
        return bridge_interconnect(components[0], components[1], composition.bridge_edges);
    case CompositionOp::Union:
    case CompositionOp::Join: {
        Graph acc = components[0];
        for (std::size_t i = 1; i < components.size(); ++i)
            acc = composition.op == CompositionOp::Union ? disjoint_union(acc, components[i])
                                                         : full_interconnect(acc, components[i]);
        return acc;
    }
    }
    throw InvalidArgument("unknown composition op");
}

namespace {

SystemEvaluation evaluate_system(const Graph& g, const DynamicsParams& params, const SimulationConfig& sim,
                                 std::uint64_t master_seed, double critical_tol, const SpectralOptions& spectral)
{
    SystemEvaluation eval;
    eval.nodes = g.node_count();
    eval.edges = g.edge_count();
    eval.lambda1 = spectral_radius(g, spectral).lambda1;
    eval.verdict = classify(eval.lambda1, params, critical_tol);
    const auto init = sim.init.apply(g, master_seed);
    eval.ensemble = run_replicates(g, params, init, sim.horizon, {sim.replicates, master_seed, sim.threads});
    return eval;
}

std::string describe(const SystemEvaluation& e)
{
    std::ostringstream out;
    out << "n=" << e.nodes << " lambda1=" << format_double(e.lambda1) << " " << regime_name(e.verdict.regime);
    return out.str();
}

std::string narrative_for(const EmergenceReport& r)
{
    std::ostringstream out;
    out << "beta/gamma=" << format_double(r.composite.verdict.ratio) << ". components: ";
    for (std::size_t i = 0; i < r.components.size(); ++i)
        out << (i ? "; " : "") << describe(r.components[i]);
    out << ". " << composition_name(r.composition_op) << " composite: " << describe(r.composite) << ". ";

    const bool all_die_out = std::all_of(r.components.begin(), r.components.end(),
                                         [](const auto& c) { return c.verdict.regime == Regime::DieOut; });
    const bool any_critical =
        r.composite.verdict.regime == Regime::Critical ||
        std::any_of(r.components.begin(), r.components.end(),
                    [](const auto& c) { return c.verdict.regime == Regime::Critical; });
    if (r.emergent)
        out << "Emergent: attacks die out in every component but persist in the composite.";
    else if (any_critical)
        out << "Not emergent: a verdict sits inside the critical band.";
    else if (all_die_out)
        out << "Not emergent: the composite also dies out.";
    else
        out << "Not emergent: persistence is already present in a component.";
    return out.str();
}

template <class T>
T required(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad value: ") + e.what(), 0, key);
    }
}

json evaluation_to_json(const SystemEvaluation& e)
{
    return {{"n", e.nodes},
            {"edges", e.edges},
            {"lambda1", e.lambda1},
            {"verdict", verdict_to_json(e.verdict)},
            {"ensemble", summary_to_json(e.ensemble)}};
}

SystemEvaluation evaluation_from_json(const json& j)
{
    SystemEvaluation e;
    e.nodes = required<std::size_t>(j, "n");
    e.edges = required<std::size_t>(j, "edges");
    e.lambda1 = required<double>(j, "lambda1");
    e.verdict = verdict_from_json(required<json>(j, "verdict"));
    e.ensemble = summary_from_json(required<json>(j, "ensemble"));
    return e;
}

} // namespace

EmergenceReport evaluate_emergence(std::span<const Graph> components, const Composition& composition,
                                   const DynamicsParams& params, const SimulationConfig& sim, double critical_tol,
                                   const SpectralOptions& spectral)
{
    if (components.size() < 2)
        throw InvalidArgument("emergence needs at least 2 components");
    params.validate();
    if (!(params.gamma > 0.0))
        throw InvalidArgument("gamma must be > 0");
    if (sim.replicates == 0)
        throw InvalidArgument("replicates must be >= 1");

    const Graph composite = compose(components, composition);

    EmergenceReport report;
    report.composition_op = composition.op;
    report.params = params;
    for (std::size_t k = 0; k < components.size(); ++k)
        report.components.push_back(
            evaluate_system(components[k], params, sim, rng::split(sim.master_seed, k), critical_tol, spectral));
    report.composite = evaluate_system(composite, params, sim, rng::split(sim.master_seed, components.size()),
                                       critical_tol, spectral);

    const bool all_die_out = std::all_of(report.components.begin(), report.components.end(),
                                         [](const auto& c) { return c.verdict.regime == Regime::DieOut; });
    report.emergent = all_die_out && report.composite.verdict.regime == Regime::Persist;
    report.narrative = narrative_for(report);
    return report;
}

json verdict_to_json(const ThresholdVerdict& v)
{
    return {{"regime", std::string(regime_name(v.regime))},
            {"lambda1", v.lambda1},
            {"ratio", v.ratio},
            {"margin", v.margin}};
}

ThresholdVerdict verdict_from_json(const json& j)
{
    ThresholdVerdict v;
    v.regime = regime_from_name(required<std::string>(j, "regime"));
    v.lambda1 = required<double>(j, "lambda1");
    v.ratio = required<double>(j, "ratio");
    v.margin = required<double>(j, "margin");
    return v;
}

json summary_to_json(const EnsembleSummary& s)
{
    auto extinction = json::array();
    for (const auto& e : s.extinction_steps)
        extinction.push_back(e ? json(*e) : json(nullptr));
    return {{"replicates", s.replicates},
            {"horizon", s.horizon},
            {"master_seed", s.master_seed},
            {"survival_fraction_at_horizon", s.survival_fraction_at_horizon},
            {"extinction_steps", std::move(extinction)},
            {"mean_compromised_fraction", s.mean_compromised_fraction}};
}

EnsembleSummary summary_from_json(const json& j)
{
    EnsembleSummary s;
    s.replicates = required<std::size_t>(j, "replicates");
    s.horizon = required<std::size_t>(j, "horizon");
    s.master_seed = required<std::uint64_t>(j, "master_seed");
    s.survival_fraction_at_horizon = required<double>(j, "survival_fraction_at_horizon");
    for (const auto& e : required<json>(j, "extinction_steps"))
        s.extinction_steps.push_back(e.is_null() ? std::nullopt : std::optional<std::size_t>(e.get<std::size_t>()));
    s.mean_compromised_fraction = required<std::vector<double>>(j, "mean_compromised_fraction");
    return s;
}

json report_to_json(const EmergenceReport& r)
{
    auto components = json::array();
    for (const auto& c : r.components)
        components.push_back(evaluation_to_json(c));
    return {{"components", std::move(components)},
            {"composite", evaluation_to_json(r.composite)},
            {"composition_op", std::string(composition_name(r.composition_op))},
            {"params", {{"beta", r.params.beta}, {"gamma", r.params.gamma}}},
            {"emergent", r.emergent},
            {"narrative", r.narrative}};
}

EmergenceReport report_from_json(const json& j)
{
    EmergenceReport r;
    for (const auto& c : required<json>(j, "components"))
        r.components.push_back(evaluation_from_json(c));
    r.composite = evaluation_from_json(required<json>(j, "composite"));
    r.composition_op = composition_from_name(required<std::string>(j, "composition_op"));
    const auto params = required<json>(j, "params");
    r.params.beta = required<double>(params, "beta");
    r.params.gamma = required<double>(params, "gamma");
    r.emergent = required<bool>(j, "emergent");
    r.narrative = required<std::string>(j, "narrative");
    return r;
}

} // namespace cyberdyn
