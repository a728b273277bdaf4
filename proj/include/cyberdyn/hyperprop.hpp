#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cyberdyn::hyper {

enum class Level : std::uint8_t { High, Low };
enum class Kind : std::uint8_t { Input, Output };

struct Event {
    Level level = Level::Low;
    Kind kind = Kind::Output;
    int value = 0;
    /// Milliseconds; only on Output events.
    std::optional<double> response_time;

    /// Throws InvalidArgument if the response-time invariant is broken.
    void validate() const;

    friend auto operator<=>(const Event&, const Event&) = default;
    friend bool operator==(const Event&, const Event&) = default;
};

Event high_input(int value);
Event low_input(int value);
Event high_output(int value, std::optional<double> rt = std::nullopt);
Event low_output(int value, std::optional<double> rt = std::nullopt);

struct Trace {
    std::vector<Event> events;

    friend auto operator<=>(const Trace&, const Trace&) = default;
    friend bool operator==(const Trace&, const Trace&) = default;
};

/// Ordered set; its iteration order is the canonical trace order.
using TraceSet = std::set<Trace>;

/// Compact text form, e.g. "[Hin(1), Lout(0)@3]".
std::string to_string(const Event& e);
std::string to_string(const Trace& t);
std::string to_string(const TraceSet& s);

struct PropertyVerdict {
    bool passed = true;
    std::optional<Trace> offending;
    std::optional<double> statistic;
};

using TracePredicate = std::function<bool(const Trace&)>;
using HyperPredicate = std::function<bool(const TraceSet&)>;

/// Passes iff every trace satisfies `predicate`; reports the first failure in canonical order.
PropertyVerdict check_pointwise(const TraceSet& s, const TracePredicate& predicate);

/// Trace predicate: every response time in the trace is <= bound.
TracePredicate max_response_time(double bound);

/// Grand mean over all response times in all traces must be <= bound.
/// Empty sets and traces without a response time are rejected with InvalidArgument.
PropertyVerdict check_avg_response_time(const TraceSet& s, double bound);

/// Low events of t, in order.
Trace low_observation(const Trace& t);
/// t without its High input events.
Trace purge(const Trace& t);

/// Purge-style: every trace's low observation must be produced by some trace of s that
/// carries no High input.
PropertyVerdict check_noninterference(const TraceSet& s);

// ---------------------------------------------------------------------------------------
// Finite-horizon trace properties
// ---------------------------------------------------------------------------------------

/// All words of length exactly `length` over `alphabet` (completed traces); words shorter
/// than `length` are partial traces.
class TraceUniverse {
public:
    /// Throws InvalidArgument on an empty or duplicated alphabet or zero length, and
    /// CapacityError if |alphabet|^length exceeds kMaxUniverseSize.
    TraceUniverse(std::vector<std::string> alphabet, std::size_t length);

    static constexpr std::size_t kMaxUniverseSize = std::size_t{1} << 22;

    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    std::size_t symbol_count() const noexcept { return alphabet_.size(); }
    std::size_t length() const noexcept { return length_; }
    /// Number of completed traces.
    std::size_t size() const noexcept { return size_; }
    /// Number of words of length m (m <= length).
    std::size_t words_of_length(std::size_t m) const noexcept { return powers_[m]; }

    /// Words are numbered in lexicographic order; symbols by alphabet position.
    std::vector<std::size_t> decode(std::size_t index) const;
    std::size_t encode(std::span<const std::size_t> word) const;
    /// Index of the length-m prefix of completed trace `index` among words of length m.
    std::size_t prefix_index(std::size_t index, std::size_t m) const noexcept
    {
        return index / powers_[length_ - m];
    }
    std::size_t symbol_index(const std::string& symbol) const;

    friend bool operator==(const TraceUniverse& a, const TraceUniverse& b) noexcept
    {
        return a.alphabet_ == b.alphabet_ && a.length_ == b.length_;
    }

private:
    std::vector<std::string> alphabet_;
    std::size_t length_;
    std::vector<std::size_t> powers_;
    std::size_t size_;
};

/// A set of completed traces of a universe, stored as a membership bitmap.
class FiniteProperty {
public:
    explicit FiniteProperty(TraceUniverse universe);
    FiniteProperty(TraceUniverse universe, std::vector<bool> membership);

    static FiniteProperty everything(const TraceUniverse& universe);
    /// Property whose bitmap is the low |U| bits of `mask`; |U| must be <= 64.
    static FiniteProperty from_mask(const TraceUniverse& universe, std::uint64_t mask);

    const TraceUniverse& universe() const noexcept { return universe_; }
    bool contains(std::size_t index) const noexcept { return membership_[index]; }
    void insert(std::size_t index) { membership_[index] = true; }
    std::size_t size() const noexcept;
    std::vector<std::size_t> member_indices() const;
    const std::vector<bool>& membership() const noexcept { return membership_; }

    /// Throws InvalidArgument if the universes differ.
    FiniteProperty intersect(const FiniteProperty& other) const;
    FiniteProperty unite(const FiniteProperty& other) const;
    FiniteProperty complement() const;
    bool is_subset_of(const FiniteProperty& other) const;

    friend bool operator==(const FiniteProperty& a, const FiniteProperty& b) noexcept
    {
        return a.universe_ == b.universe_ && a.membership_ == b.membership_;
    }

private:
    TraceUniverse universe_;
    std::vector<bool> membership_;
};

/// Every completed trace outside p has a partial prefix (length < L) with no completion in p.
bool is_safety(const FiniteProperty& p);
/// Every partial trace, the empty one included, has a completion in p.
bool is_liveness(const FiniteProperty& p);
/// Completed traces all of whose partial prefixes extend to some member of p.
FiniteProperty safety_closure(const FiniteProperty& p);

struct Decomposition {
    FiniteProperty safe;
    FiniteProperty live;
};

/// safe = safety_closure(p), live = p ∪ (U \ safe); safe ∩ live = p.
Decomposition decompose(const FiniteProperty& p);

// ---------------------------------------------------------------------------------------
// Witnesses that a set-level predicate is not a trace property
// ---------------------------------------------------------------------------------------

/// Evidence that trace t cannot be judged in isolation: `hyper` accepts `passing` and
/// rejects `failing`, both containing `trace`, and either
///   - failing == {trace}: t is rejected alone but accepted in company, or
///   - passing == {trace}: t is accepted alone and so is every member of `failing`,
///     yet `failing` as a whole is rejected.
/// A pointwise predicate admits neither shape.
struct Witness {
    Trace trace;
    TraceSet passing;
    TraceSet failing;
};

inline constexpr std::size_t kMaxWitnessPool = 20;
inline constexpr std::size_t kMaxWitnessSetSize = 6;

/// Exhaustive search over subsets of `pool` with 1..max_set_size traces.
///
/// The pool is sorted and deduplicated first. Subsets are enumerated by size, then by
/// lexicographic index combination; the first witness is chosen by trace order, then by
/// that enumeration. Throws InvalidArgument if max_set_size < 2 and CapacityError above
/// kMaxWitnessPool distinct traces or kMaxWitnessSetSize.
std::optional<Witness> witness_non_trace_property(const HyperPredicate& hyper, std::span<const Trace> pool,
                                                  std::size_t max_set_size);

/// All traces of exactly `length` events over `alphabet`, in canonical order.
/// Throws CapacityError above kMaxWitnessPool traces.
std::vector<Trace> enumerate_traces(std::span<const Event> alphabet, std::size_t length);

} // namespace cyberdyn::hyper
