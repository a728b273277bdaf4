#include "cyberdyn/hyperprop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cyberdyn/error.hpp"

namespace cyberdyn::hyper {

void Event::validate() const
{
    if (response_time) {
        if (kind != Kind::Output)
            throw InvalidArgument("response time is only allowed on output events");
        if (!std::isfinite(*response_time) || *response_time < 0.0)
            throw InvalidArgument("response time must be a finite non-negative number");
    }
}

Event high_input(int value) { return {Level::High, Kind::Input, value, std::nullopt}; }
Event low_input(int value) { return {Level::Low, Kind::Input, value, std::nullopt}; }
Event high_output(int value, std::optional<double> rt) { return {Level::High, Kind::Output, value, rt}; }
Event low_output(int value, std::optional<double> rt) { return {Level::Low, Kind::Output, value, rt}; }

std::string to_string(const Event& e)
{
    std::ostringstream out;
    out << (e.level == Level::High ? 'H' : 'L') << (e.kind == Kind::Input ? "in" : "out") << '(' << e.value << ')';
    if (e.response_time)
        out << '@' << *e.response_time;
    return out.str();
}

std::string to_string(const Trace& t)
{
    std::string out = "[";
    for (std::size_t i = 0; i < t.events.size(); ++i)
        out += (i ? ", " : "") + to_string(t.events[i]);
    return out + "]";
}

std::string to_string(const TraceSet& s)
{
    std::string out = "{";
    bool first = true;
    for (const auto& t : s) {
        out += (first ? "" : ", ") + to_string(t);
        first = false;
    }
    return out + "}";
}

PropertyVerdict check_pointwise(const TraceSet& s, const TracePredicate& predicate)
{
    for (const auto& t : s)
        if (!predicate(t))
            return {false, t, std::nullopt};
    return {};
}

TracePredicate max_response_time(double bound)
{
    return [bound](const Trace& t) {
        return std::all_of(t.events.begin(), t.events.end(),
                           [bound](const Event& e) { return !e.response_time || *e.response_time <= bound; });
    };
}

PropertyVerdict check_avg_response_time(const TraceSet& s, double bound)
{
    if (!(bound > 0.0))
        throw InvalidArgument("response-time bound must be > 0");
    if (s.empty())
        throw InvalidArgument("average response time of an empty trace set is undefined");
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& t : s) {
        std::size_t in_trace = 0;
        for (const auto& e : t.events) {
            if (e.response_time) {
                sum += *e.response_time;
                ++in_trace;
            }
        }
        if (in_trace == 0)
            throw InvalidArgument("trace " + to_string(t) + " has no response time");
        count += in_trace;
    }
    const double mean = sum / static_cast<double>(count);
    return {mean <= bound, std::nullopt, mean};
}

Trace low_observation(const Trace& t)
{
    Trace out;
    std::copy_if(t.events.begin(), t.events.end(), std::back_inserter(out.events),
                 [](const Event& e) { return e.level == Level::Low; });
    return out;
}

Trace purge(const Trace& t)
{
    Trace out;
    std::copy_if(t.events.begin(), t.events.end(), std::back_inserter(out.events),
                 [](const Event& e) { return !(e.level == Level::High && e.kind == Kind::Input); });
    return out;
}

PropertyVerdict check_noninterference(const TraceSet& s)
{
    auto has_high_input = [](const Trace& t) {
        return std::any_of(t.events.begin(), t.events.end(),
                           [](const Event& e) { return e.level == Level::High && e.kind == Kind::Input; });
    };
    std::set<Trace> reproducible;
    for (const auto& t : s)
        if (!has_high_input(t))
            reproducible.insert(low_observation(t));
    for (const auto& t : s)
        if (!reproducible.contains(low_observation(t)))
            return {false, t, std::nullopt};
    return {};
}

// ---------------------------------------------------------------------------------------

TraceUniverse::TraceUniverse(std::vector<std::string> alphabet, std::size_t length)
    : alphabet_(std::move(alphabet)), length_(length)
{
    if (alphabet_.empty())
        throw InvalidArgument("alphabet must not be empty");
    if (length_ == 0)
        throw InvalidArgument("trace length must be >= 1");
    auto sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument("alphabet has duplicate symbols");
    powers_.assign(length_ + 1, 1);
    for (std::size_t m = 1; m <= length_; ++m) {
        if (powers_[m - 1] > kMaxUniverseSize / alphabet_.size())
            throw CapacityError("universe |alphabet|^L exceeds " + std::to_string(kMaxUniverseSize) + " traces");
        powers_[m] = powers_[m - 1] * alphabet_.size();
    }
    size_ = powers_[length_];
}

std::vector<std::size_t> TraceUniverse::decode(std::size_t index) const
{
    std::vector<std::size_t> word(length_);
    for (std::size_t i = length_; i-- > 0;) {
        word[i] = index % alphabet_.size();
        index /= alphabet_.size();
    }
    return word;
}

std::size_t TraceUniverse::encode(std::span<const std::size_t> word) const
{
    if (word.size() != length_)
        throw InvalidArgument("word length " + std::to_string(word.size()) + " != " + std::to_string(length_));
    std::size_t index = 0;
    for (auto symbol : word) {
        if (symbol >= alphabet_.size())
            throw InvalidArgument("symbol index out of range");
        index = index * alphabet_.size() + symbol;
    }
    return index;
}

std::size_t TraceUniverse::symbol_index(const std::string& symbol) const
{
    auto it = std::find(alphabet_.begin(), alphabet_.end(), symbol);
    if (it == alphabet_.end())
        throw InvalidArgument("symbol '" + symbol + "' is not in the alphabet");
    return static_cast<std::size_t>(it - alphabet_.begin());
}

FiniteProperty::FiniteProperty(TraceUniverse universe)
    : universe_(std::move(universe)), membership_(universe_.size(), false)
{
}

FiniteProperty::FiniteProperty(TraceUniverse universe, std::vector<bool> membership)
    : universe_(std::move(universe)), membership_(std::move(membership))
{
    if (membership_.size() != universe_.size())
        throw InvalidArgument("membership bitmap size does not match the universe");
}

FiniteProperty FiniteProperty::everything(const TraceUniverse& universe)
{
    return FiniteProperty(universe, std::vector<bool>(universe.size(), true));
}

FiniteProperty FiniteProperty::from_mask(const TraceUniverse& universe, std::uint64_t mask)
{
    if (universe.size() > 64)
        throw InvalidArgument("from_mask needs a universe of at most 64 traces");
    FiniteProperty p(universe);
    for (std::size_t i = 0; i < universe.size(); ++i)
        if ((mask >> i) & 1U)
            p.insert(i);
    return p;
}

std::size_t FiniteProperty::size() const noexcept
{
    return static_cast<std::size_t>(std::count(membership_.begin(), membership_.end(), true));
}

std::vector<std::size_t> FiniteProperty::member_indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < membership_.size(); ++i)
        if (membership_[i])
            out.push_back(i);
    return out;
}

namespace {

void require_same_universe(const FiniteProperty& a, const FiniteProperty& b)
{
    if (!(a.universe() == b.universe()))
        throw InvalidArgument("properties are over different universes");
}

/// extendable[m][b]: the length-m word b is a prefix of some member, for m < L.
std::vector<std::vector<bool>> extendable_prefixes(const FiniteProperty& p)
{
    const auto& u = p.universe();
    std::vector<std::vector<bool>> table(u.length());
    for (std::size_t m = 0; m < u.length(); ++m)
        table[m].assign(u.words_of_length(m), false);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (p.contains(i))
            for (std::size_t m = 0; m < u.length(); ++m)
                table[m][u.prefix_index(i, m)] = true;
    return table;
}

bool all_prefixes_extendable(const TraceUniverse& u, const std::vector<std::vector<bool>>& table, std::size_t index)
{
    for (std::size_t m = 0; m < u.length(); ++m)
        if (!table[m][u.prefix_index(index, m)])
            return false;
    return true;
}

} // namespace

FiniteProperty FiniteProperty::intersect(const FiniteProperty& other) const
{
    require_same_universe(*this, other);
    FiniteProperty out(universe_);
    for (std::size_t i = 0; i < membership_.size(); ++i)
        out.membership_[i] = membership_[i] && other.membership_[i];
    return out;
}

FiniteProperty FiniteProperty::unite(const FiniteProperty& other) const
{
    require_same_universe(*this, other);
    FiniteProperty out(universe_);
    for (std::size_t i = 0; i < membership_.size(); ++i)
        out.membership_[i] = membership_[i] || other.membership_[i];
    return out;
}

FiniteProperty FiniteProperty::complement() const
{
    FiniteProperty out(universe_);
    for (std::size_t i = 0; i < membership_.size(); ++i)
        out.membership_[i] = !membership_[i];
    return out;
}

bool FiniteProperty::is_subset_of(const FiniteProperty& other) const
{
    require_same_universe(*this, other);
    for (std::size_t i = 0; i < membership_.size(); ++i)
        if (membership_[i] && !other.membership_[i])
            return false;
    return true;
}

bool is_safety(const FiniteProperty& p)
{
    const auto& u = p.universe();
    const auto table = extendable_prefixes(p);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!p.contains(i) && all_prefixes_extendable(u, table, i))
            return false; // no bad prefix refutes i
    return true;
}

bool is_liveness(const FiniteProperty& p)
{
    for (const auto& level : extendable_prefixes(p))
        if (std::find(level.begin(), level.end(), false) != level.end())
            return false;
    return true;
}

FiniteProperty safety_closure(const FiniteProperty& p)
{
    const auto& u = p.universe();
    const auto table = extendable_prefixes(p);
    FiniteProperty out(u);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (all_prefixes_extendable(u, table, i))
            out.insert(i);
    return out;
}

Decomposition decompose(const FiniteProperty& p)
{
    auto safe = safety_closure(p);
    auto live = p.unite(safe.complement());
    return {std::move(safe), std::move(live)};
}

// ---------------------------------------------------------------------------------------

std::optional<Witness> witness_non_trace_property(const HyperPredicate& hyper, std::span<const Trace> pool,
                                                  std::size_t max_set_size)
{
    if (max_set_size < 2)
        throw InvalidArgument("max_set_size must be >= 2");
    if (max_set_size > kMaxWitnessSetSize)
        throw CapacityError("max_set_size above " + std::to_string(kMaxWitnessSetSize));
    std::vector<Trace> items(pool.begin(), pool.end());
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    if (items.size() > kMaxWitnessPool)
        throw CapacityError("witness pool has " + std::to_string(items.size()) + " distinct traces, limit is " +
                            std::to_string(kMaxWitnessPool));

    const std::size_t m = items.size();
    const std::size_t max_size = std::min(max_set_size, m);

    auto to_set = [&](std::uint32_t mask) {
        TraceSet s;
        for (std::size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1U)
                s.insert(items[i]);
        return s;
    };

    // Enumeration order: by size, then lexicographic index combinations.
    std::vector<std::uint32_t> order;
    std::vector<std::int8_t> verdict(std::size_t{1} << m, -1);
    for (std::size_t k = 1; k <= max_size; ++k) {
        std::vector<std::size_t> comb(k);
        for (std::size_t i = 0; i < k; ++i)
            comb[i] = i;
        while (true) {
            std::uint32_t mask = 0;
            for (auto i : comb)
                mask |= 1U << i;
            order.push_back(mask);
            verdict[mask] = hyper(to_set(mask)) ? 1 : 0;

            std::size_t pos = k;
            while (pos > 0 && comb[pos - 1] == m - k + pos - 1)
                --pos;
            if (pos == 0)
                break;
            ++comb[pos - 1];
            for (std::size_t i = pos; i < k; ++i)
                comb[i] = comb[i - 1] + 1;
        }
    }

    std::uint32_t alone_ok = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (verdict[std::size_t{1} << i] == 1)
            alone_ok |= 1U << i;

    for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t bit = 1U << i;
        const bool ok_alone = (alone_ok & bit) != 0;
        for (auto mask : order) {
            if (!(mask & bit))
                continue;
            if (!ok_alone && verdict[mask] == 1)
                return Witness{items[i], to_set(mask), to_set(bit)};
            if (ok_alone && verdict[mask] == 0 && (mask & ~alone_ok) == 0)
                return Witness{items[i], to_set(bit), to_set(mask)};
        }
    }
    return std::nullopt;
}

std::vector<Trace> enumerate_traces(std::span<const Event> alphabet, std::size_t length)
{
    std::vector<Event> symbols(alphabet.begin(), alphabet.end());
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    if (symbols.empty())
        throw InvalidArgument("event alphabet must not be empty");
    for (const auto& e : symbols)
        e.validate();

    std::size_t total = 1;
    for (std::size_t i = 0; i < length; ++i) {
        total *= symbols.size();
        if (total > kMaxWitnessPool)
            throw CapacityError("trace universe exceeds the witness pool limit of " +
                                std::to_string(kMaxWitnessPool));
    }

    std::vector<Trace> out;
    out.reserve(total);
    std::vector<std::size_t> digits(length, 0);
    for (std::size_t n = 0; n < total; ++n) {
        Trace t;
        for (auto d : digits)
            t.events.push_back(symbols[d]);
        out.push_back(std::move(t));
        for (std::size_t i = length; i-- > 0;) {
            if (++digits[i] < symbols.size())
                break;
            digits[i] = 0;
        }
    }
    return out;
}

} // namespace cyberdyn::hyper
