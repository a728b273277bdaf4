#include "cyberdyn/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "cyberdyn/error.hpp"
#include "cyberdyn/rng.hpp"

namespace cyberdyn {

StateVector::StateVector(std::vector<NodeState> states) : states_(std::move(states))
{
    compromised_ = static_cast<std::size_t>(
        std::count(states_.begin(), states_.end(), NodeState::Compromised));
}

StateVector StateVector::all(std::size_t n, NodeState state)
{
    return StateVector(std::vector<NodeState>(n, state));
}

StateVector StateVector::compromised_on(std::size_t n, std::span<const NodeId> nodes)
{
    std::vector<NodeState> states(n, NodeState::Secure);
    for (NodeId u : nodes) {
        if (u >= n)
            throw InvalidArgument("init node " + std::to_string(u) + " out of range for n=" + std::to_string(n));
        states[u] = NodeState::Compromised;
    }
    return StateVector(std::move(states));
}

namespace {

std::size_t parse_count(const std::string& text, const std::string& what)
{
    std::size_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last)
        throw InvalidArgument("invalid " + what + " '" + text + "'");
    return value;
}

} // namespace

InitPolicy InitPolicy::parse(const std::string& text)
{
    InitPolicy policy;
    if (text == "all")
        return policy;
    if (text.rfind("random:", 0) == 0) {
        policy.kind = Kind::Random;
        policy.count = parse_count(text.substr(7), "init count");
        return policy;
    }
    if (text.rfind("nodes:", 0) == 0) {
        policy.kind = Kind::Nodes;
        std::stringstream list(text.substr(6));
        std::string item;
        while (std::getline(list, item, ','))
            policy.nodes.push_back(static_cast<NodeId>(parse_count(item, "init node")));
        if (policy.nodes.empty())
            throw InvalidArgument("init node list is empty");
        return policy;
    }
    throw InvalidArgument("init must be all, random:<k> or nodes:<comma-list>, got '" + text + "'");
}

std::string InitPolicy::to_string() const
{
    switch (kind) {
    case Kind::All: return "all";
    case Kind::Random: return "random:" + std::to_string(count);
    case Kind::Nodes: {
        std::string out = "nodes:";
        for (std::size_t i = 0; i < nodes.size(); ++i)
            out += (i ? "," : "") + std::to_string(nodes[i]);
        return out;
    }
    }
    return "all";
}

StateVector InitPolicy::apply(const Graph& g, std::uint64_t seed) const
{
    const std::size_t n = g.node_count();
    switch (kind) {
    case Kind::All:
        return StateVector::all(n, NodeState::Compromised);
    case Kind::Nodes:
        return StateVector::compromised_on(n, nodes);
    case Kind::Random: {
        if (count > n)
            throw InvalidArgument("random:" + std::to_string(count) + " exceeds node count " + std::to_string(n));
        std::vector<NodeId> order(n);
        std::iota(order.begin(), order.end(), NodeId{0});
        rng::Engine engine(rng::split(seed, 0));
        for (std::size_t i = 0; i < count; ++i) {
            const auto span = n - i;
            const auto pick = i + static_cast<std::size_t>(rng::uniform01(engine) * static_cast<double>(span));
            std::swap(order[i], order[std::min(pick, n - 1)]);
        }
        order.resize(count);
        return StateVector::compromised_on(n, order);
    }
    }
    return StateVector::all(n, NodeState::Compromised);
}

SimTrace simulate(const Graph& g, const DynamicsParams& params, const StateVector& init, std::size_t horizon,
                  std::uint64_t seed, const StateObserver& observer)
{
    params.validate();
    const std::size_t n = g.node_count();
    if (init.size() != n)
        throw InvalidArgument("init has " + std::to_string(init.size()) + " entries, graph has " +
                              std::to_string(n) + " nodes");

    SimTrace trace;
    trace.seed = seed;
    trace.steps.reserve(horizon + 1);

    std::vector<NodeState> current = init.states();
    std::vector<NodeState> next(n);
    std::size_t count = init.compromised_count();
    trace.steps.push_back({0, count});
    if (observer)
        observer(0, init);
    if (count == 0) {
        trace.extinction_step = 0;
        return trace;
    }

    rng::Engine engine(seed);
    for (std::size_t t = 1; t <= horizon; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            const bool cured = rng::bernoulli(engine, params.beta);
            next[i] = (current[i] == NodeState::Compromised && !cured) ? NodeState::Compromised : NodeState::Secure;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
                const bool fired = rng::bernoulli(engine, params.gamma);
                if (fired && current[j] == NodeState::Compromised)
                    next[i] = NodeState::Compromised;
            }
        }
        current.swap(next);
        count = static_cast<std::size_t>(std::count(current.begin(), current.end(), NodeState::Compromised));
        trace.steps.push_back({t, count});
        if (observer)
            observer(t, StateVector(current));
        if (count == 0) {
            trace.extinction_step = t;
            break;
        }
    }
    return trace;
}

std::optional<std::size_t> extinction_time(const SimTrace& trace) noexcept
{
    return trace.extinction_step;
}

EnsembleSummary run_replicates(const Graph& g, const DynamicsParams& params, const StateVector& init,
                               std::size_t horizon, const ReplicateOptions& options, std::vector<SimTrace>* traces)
{
    if (options.replicates == 0)
        throw InvalidArgument("replicates must be >= 1");
    params.validate();
    if (init.size() != g.node_count())
        throw InvalidArgument("init has " + std::to_string(init.size()) + " entries, graph has " +
                              std::to_string(g.node_count()) + " nodes");

    const std::size_t replicates = options.replicates;
    std::vector<SimTrace> results(replicates);
    auto run_one = [&](std::size_t r) {
        results[r] = simulate(g, params, init, horizon, rng::split(options.master_seed, r));
    };

    std::size_t workers = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    workers = std::clamp<std::size_t>(workers, 1, replicates);
    if (workers == 1) {
        for (std::size_t r = 0; r < replicates; ++r)
            run_one(r);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t r = cursor++; r < replicates; r = cursor++) {
                        try {
                            run_one(r);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure)
            std::rethrow_exception(failure);
    }

    EnsembleSummary summary;
    summary.replicates = replicates;
    summary.horizon = horizon;
    summary.master_seed = options.master_seed;
    summary.extinction_steps.reserve(replicates);
    summary.mean_compromised_fraction.assign(horizon + 1, 0.0);
    const double n = static_cast<double>(g.node_count());
    std::size_t survivors = 0;
    for (const auto& trace : results) {
        summary.extinction_steps.push_back(trace.extinction_step);
        if (!trace.extinction_step)
            ++survivors;
        if (n > 0)
            for (const auto& s : trace.steps)
                summary.mean_compromised_fraction[s.step] += static_cast<double>(s.compromised_count) / n;
    }
    for (auto& f : summary.mean_compromised_fraction)
        f /= static_cast<double>(replicates);
    summary.survival_fraction_at_horizon = static_cast<double>(survivors) / static_cast<double>(replicates);

    if (traces)
        *traces = std::move(results);
    return summary;
}

MeanFieldTrace mean_field_iterate(const Graph& g, const DynamicsParams& params, std::span<const double> p0,
                                  std::size_t horizon, double fixed_point_tol)
{
    params.validate();
    const std::size_t n = g.node_count();
    if (p0.size() != n)
        throw InvalidArgument("p0 has " + std::to_string(p0.size()) + " entries, graph has " +
                              std::to_string(n) + " nodes");
    for (std::size_t i = 0; i < n; ++i)
        if (!(p0[i] >= 0.0 && p0[i] <= 1.0))
            throw InvalidArgument("p0[" + std::to_string(i) + "] must be in [0, 1]");
    if (!(fixed_point_tol > 0.0))
        throw InvalidArgument("fixed_point_tol must be > 0");

    MeanFieldTrace trace;
    trace.steps.emplace_back(p0.begin(), p0.end());
    for (std::size_t t = 1; t <= horizon; ++t) {
        const auto& p = trace.steps.back();
        std::vector<double> q(n);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double escape = 1.0;
            for (NodeId j : g.neighbors(static_cast<NodeId>(i)))
                escape *= 1.0 - params.gamma * p[j];
            const double value = (1.0 - params.beta) * p[i] + (1.0 - p[i]) * (1.0 - escape);
            q[i] = std::clamp(value, 0.0, 1.0);
            change = std::max(change, std::abs(q[i] - p[i]));
        }
        trace.steps.push_back(std::move(q));
        if (change <= fixed_point_tol) {
            trace.converged = true;
            break;
        }
    }
    const auto& last = trace.steps.back();
    trace.final_total = std::accumulate(last.begin(), last.end(), 0.0);
    return trace;
}

std::string format_double(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_timeseries_csv(std::ostream& out, std::span<const SimTrace> traces)
{
    out << "step,replicate,compromised_count\n";
    for (std::size_t r = 0; r < traces.size(); ++r)
        for (const auto& s : traces[r].steps)
            out << s.step << ',' << r << ',' << s.compromised_count << '\n';
}

void write_meanfield_csv(std::ostream& out, const MeanFieldTrace& trace)
{
    out << "step,total_p,max_p\n";
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        const auto& p = trace.steps[t];
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        const double peak = p.empty() ? 0.0 : *std::max_element(p.begin(), p.end());
        out << t << ',' << format_double(total) << ',' << format_double(peak) << '\n';
    }
}

} // namespace cyberdyn
