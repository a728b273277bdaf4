#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyberdyn/graph.hpp"
#include "cyberdyn/spectral.hpp"

namespace cyberdyn {

enum class NodeState : std::uint8_t { Secure = 0, Compromised = 1 };

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::vector<NodeState> states);

    static StateVector all(std::size_t n, NodeState state);
    /// Compromised exactly on `nodes`; throws InvalidArgument on out-of-range ids.
    static StateVector compromised_on(std::size_t n, std::span<const NodeId> nodes);

    std::size_t size() const noexcept { return states_.size(); }
    std::size_t compromised_count() const noexcept { return compromised_; }
    bool compromised(NodeId u) const noexcept { return states_[u] == NodeState::Compromised; }
    const std::vector<NodeState>& states() const noexcept { return states_; }

    friend bool operator==(const StateVector& a, const StateVector& b) noexcept { return a.states_ == b.states_; }

private:
    std::vector<NodeState> states_;
    std::size_t compromised_ = 0;
};

/// How the initial state is chosen for a graph: every node, k distinct random nodes, or a list.
struct InitPolicy {
    enum class Kind { All, Random, Nodes };
    Kind kind = Kind::All;
    std::size_t count = 0;       // Random
    std::vector<NodeId> nodes;   // Nodes

    /// Parses "all", "random:<k>" or "nodes:<comma-list>".
    static InitPolicy parse(const std::string& text);
    std::string to_string() const;

    /// Random picks are a partial Fisher-Yates shuffle driven by engine(split(seed, 0)).
    StateVector apply(const Graph& g, std::uint64_t seed) const;

    friend bool operator==(const InitPolicy&, const InitPolicy&) = default;
};

struct SimStep {
    std::size_t step = 0;
    std::size_t compromised_count = 0;

    friend bool operator==(const SimStep&, const SimStep&) = default;
};

struct SimTrace {
    std::uint64_t seed = 0;
    std::vector<SimStep> steps;
    std::optional<std::size_t> extinction_step;

    friend bool operator==(const SimTrace&, const SimTrace&) = default;
};

/// Called with (step, state) for every recorded state, starting with step 0.
using StateObserver = std::function<void(std::size_t, const StateVector&)>;

/// Discrete-time SIS dynamics, synchronous from the time-t state.
///
/// Per step, one uniform is drawn for every node in ascending id (cure trial), then one
/// for every directed edge in ascending (target, source) order (infection trial), whether
/// or not the event is possible in the current state. A node is compromised at t+1 iff it
/// was compromised at t and its cure trial failed, or some neighbour compromised at t
/// fired its edge trial toward it. A fixed stream layout makes runs with the same seed
/// coupled: the compromised set is pointwise monotone in gamma and in beta.
///
/// The trace stops at the first step with no compromised node.
SimTrace simulate(const Graph& g, const DynamicsParams& params, const StateVector& init,
                  std::size_t horizon, std::uint64_t seed, const StateObserver& observer = {});

std::optional<std::size_t> extinction_time(const SimTrace& trace) noexcept;

struct EnsembleSummary {
    std::size_t replicates = 0;
    std::size_t horizon = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::optional<std::size_t>> extinction_steps;
    double survival_fraction_at_horizon = 0.0;
    /// Index t holds the replicate mean of compromised_count / n at step t (0 after extinction).
    std::vector<double> mean_compromised_fraction;

    friend bool operator==(const EnsembleSummary&, const EnsembleSummary&) = default;
};

struct ReplicateOptions {
    std::size_t replicates = 1;
    std::uint64_t master_seed = 0;
    /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
    std::size_t threads = 1;
};

/// Replicate r runs simulate(..., split(master_seed, r)). Returns the summary and, optionally,
/// every trace in replicate order.
EnsembleSummary run_replicates(const Graph& g, const DynamicsParams& params, const StateVector& init,
                               std::size_t horizon, const ReplicateOptions& options,
                               std::vector<SimTrace>* traces = nullptr);

struct MeanFieldTrace {
    std::vector<std::vector<double>> steps;
    bool converged = false;
    double final_total = 0.0;
};

/// p_i <- (1-beta) p_i + (1-p_i) (1 - prod_{j in N(i)} (1 - gamma p_j)) until the max
/// change is <= fixed_point_tol or `horizon` updates have been applied.
MeanFieldTrace mean_field_iterate(const Graph& g, const DynamicsParams& params, std::span<const double> p0,
                                  std::size_t horizon, double fixed_point_tol);

} // namespace cyberdyn

namespace cyberdyn {

/// Header `step,replicate,compromised_count`; one row per recorded step of each trace.
void write_timeseries_csv(std::ostream& out, std::span<const SimTrace> traces);
/// Header `step,total_p,max_p`.
void write_meanfield_csv(std::ostream& out, const MeanFieldTrace& trace);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

} // namespace cyberdyn
