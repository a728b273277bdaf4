#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cyberdyn/dynamics.hpp"
#include "cyberdyn/graph.hpp"
#include "cyberdyn/spectral.hpp"

namespace cyberdyn {

enum class CompositionOp { Union, Join, Bridge };

std::string_view composition_name(CompositionOp op) noexcept;
CompositionOp composition_from_name(std::string_view name);

struct Composition {
    CompositionOp op = CompositionOp::Join;
    /// Only for Bridge, which takes exactly two components.
    std::vector<Edge> bridge_edges;
};

/// Left fold of the binary composition over `components`.
Graph compose(std::span<const Graph> components, const Composition& composition);

struct SimulationConfig {
    std::size_t horizon = 2000;
    std::size_t replicates = 200;
    std::uint64_t master_seed = 0;
    InitPolicy init;
    std::size_t threads = 1;
};

struct SystemEvaluation {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double lambda1 = 0.0;
    ThresholdVerdict verdict;
    EnsembleSummary ensemble;

    friend bool operator==(const SystemEvaluation&, const SystemEvaluation&) = default;
};

struct EmergenceReport {
    std::vector<SystemEvaluation> components;
    SystemEvaluation composite;
    CompositionOp composition_op = CompositionOp::Join;
    DynamicsParams params;
    bool emergent = false;
    std::string narrative;

    friend bool operator==(const EmergenceReport&, const EmergenceReport&) = default;
};

/// Evaluates each component and the composition against the die-out threshold and
/// attaches replicate evidence.
///
/// `emergent` is decided by the spectral verdicts alone: every component DieOut and the
/// composite Persist. A Critical verdict anywhere blocks it. Graph k (components first,
/// composite last) uses master seed split(sim.master_seed, k) and its own init state.
EmergenceReport evaluate_emergence(std::span<const Graph> components, const Composition& composition,
                                   const DynamicsParams& params, const SimulationConfig& sim,
                                   double critical_tol = kDefaultCriticalTol,
                                   const SpectralOptions& spectral = {});

nlohmann::json report_to_json(const EmergenceReport& report);
EmergenceReport report_from_json(const nlohmann::json& j);

nlohmann::json summary_to_json(const EnsembleSummary& summary);
EnsembleSummary summary_from_json(const nlohmann::json& j);
nlohmann::json verdict_to_json(const ThresholdVerdict& verdict);
ThresholdVerdict verdict_from_json(const nlohmann::json& j);

} // namespace cyberdyn
