#include "cyberdyn/hyperprop_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>

#include "cyberdyn/error.hpp"

namespace cyberdyn::hyper {

using nlohmann::json;

namespace {

json load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto offset = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
        throw ParseError(path.string() + ": malformed JSON", line);
    }
}

json trace_to_json(const Trace& t)
{
    auto events = json::array();
    for (const auto& e : t.events)
        events.push_back(event_to_json(e));
    return {{"events", std::move(events)}};
}

json set_to_json(const TraceSet& s)
{
    auto out = json::array();
    for (const auto& t : s)
        out.push_back(trace_to_json(t));
    return out;
}

} // namespace

json event_to_json(const Event& e)
{
    json j = {{"level", e.level == Level::High ? "H" : "L"},
              {"kind", e.kind == Kind::Input ? "in" : "out"},
              {"value", e.value}};
    if (e.response_time)
        j["rt"] = *e.response_time;
    return j;
}

Event event_from_json(const json& j, const std::string& field)
{
    if (!j.is_object())
        throw ParseError("expected an event object", 0, field);
    Event e;
    const auto level = j.value("level", std::string{});
    if (level == "H")
        e.level = Level::High;
    else if (level == "L")
        e.level = Level::Low;
    else
        throw ParseError("level must be \"H\" or \"L\"", 0, field + ".level");
    const auto kind = j.value("kind", std::string{});
    if (kind == "in")
        e.kind = Kind::Input;
    else if (kind == "out")
        e.kind = Kind::Output;
    else
        throw ParseError("kind must be \"in\" or \"out\"", 0, field + ".kind");
    if (!j.contains("value") || !j["value"].is_number_integer())
        throw ParseError("expected an integer", 0, field + ".value");
    e.value = j["value"].get<int>();
    if (j.contains("rt")) {
        if (!j["rt"].is_number())
            throw ParseError("expected a number", 0, field + ".rt");
        e.response_time = j["rt"].get<double>();
    }
    try {
        e.validate();
    } catch (const InvalidArgument& err) {
        throw ParseError(err.what(), 0, field);
    }
    return e;
}

json traces_to_json(const std::vector<Trace>& traces)
{
    auto out = json::array();
    for (const auto& t : traces)
        out.push_back(trace_to_json(t));
    return {{"traces", std::move(out)}};
}

std::vector<Trace> traces_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("traces") || !j["traces"].is_array())
        throw ParseError("expected an object with a \"traces\" array");
    std::vector<Trace> out;
    const auto& traces = j["traces"];
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const std::string field = "traces[" + std::to_string(i) + "]";
        if (!traces[i].is_object() || !traces[i].contains("events") || !traces[i]["events"].is_array())
            throw ParseError("expected an object with an \"events\" array", 0, field);
        Trace t;
        const auto& events = traces[i]["events"];
        for (std::size_t k = 0; k < events.size(); ++k)
            t.events.push_back(event_from_json(events[k], field + ".events[" + std::to_string(k) + "]"));
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Trace> read_traces(const std::filesystem::path& path)
{
    const auto j = load(path);
    try {
        return traces_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Event parse_event_symbol(const std::string& symbol)
{
    auto fail = [&] {
        throw InvalidArgument("event symbol must look like Hin:1 or Lout:0@2.5, got '" + symbol + "'");
    };
    Event e;
    if (symbol.empty())
        fail();
    if (symbol[0] == 'H')
        e.level = Level::High;
    else if (symbol[0] == 'L')
        e.level = Level::Low;
    else
        fail();
    std::size_t pos = 1;
    if (symbol.compare(pos, 3, "in:") == 0) {
        e.kind = Kind::Input;
        pos += 3;
    } else if (symbol.compare(pos, 4, "out:") == 0) {
        e.kind = Kind::Output;
        pos += 4;
    } else {
        fail();
    }
    const auto at = symbol.find('@', pos);
    const auto value_text = symbol.substr(pos, at == std::string::npos ? std::string::npos : at - pos);
    auto [vp, vec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), e.value);
    if (value_text.empty() || vec != std::errc{} || vp != value_text.data() + value_text.size())
        fail();
    if (at != std::string::npos) {
        const auto rt_text = symbol.substr(at + 1);
        double rt = 0.0;
        auto [rp, rec] = std::from_chars(rt_text.data(), rt_text.data() + rt_text.size(), rt);
        if (rt_text.empty() || rec != std::errc{} || rp != rt_text.data() + rt_text.size())
            fail();
        e.response_time = rt;
    }
    e.validate();
    return e;
}

json property_to_json(const FiniteProperty& p)
{
    const auto& u = p.universe();
    auto members = json::array();
    for (auto index : p.member_indices()) {
        auto word = json::array();
        for (auto symbol : u.decode(index))
            word.push_back(u.alphabet()[symbol]);
        members.push_back(std::move(word));
    }
    return {{"sigma", u.alphabet()}, {"L", u.length()}, {"members", std::move(members)}};
}

FiniteProperty property_from_json(const json& j)
{
    if (!j.is_object())
        throw ParseError("expected an object with keys sigma, L, members");
    if (!j.contains("sigma") || !j["sigma"].is_array())
        throw ParseError("expected an array of symbols", 0, "sigma");
    std::vector<std::string> sigma;
    for (std::size_t i = 0; i < j["sigma"].size(); ++i) {
        if (!j["sigma"][i].is_string())
            throw ParseError("expected a string", 0, "sigma[" + std::to_string(i) + "]");
        sigma.push_back(j["sigma"][i].get<std::string>());
    }
    if (!j.contains("L") || !j["L"].is_number_integer() || j["L"].get<std::int64_t>() < 1)
        throw ParseError("expected a positive integer", 0, "L");
    if (!j.contains("members") || !j["members"].is_array())
        throw ParseError("expected an array of words", 0, "members");

    std::optional<TraceUniverse> universe;
    try {
        universe.emplace(std::move(sigma), j["L"].get<std::size_t>());
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 0, "sigma");
    }
    FiniteProperty p(*universe);
    const auto& members = j["members"];
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::string field = "members[" + std::to_string(i) + "]";
        const auto& word = members[i];
        if (!word.is_array() || word.size() != universe->length())
            throw ParseError("expected a word of exactly " + std::to_string(universe->length()) + " symbols", 0, field);
        std::vector<std::size_t> symbols;
        for (std::size_t k = 0; k < word.size(); ++k) {
            const std::string sym_field = field + "[" + std::to_string(k) + "]";
            if (!word[k].is_string())
                throw ParseError("expected a string", 0, sym_field);
            try {
                symbols.push_back(universe->symbol_index(word[k].get<std::string>()));
            } catch (const InvalidArgument& e) {
                throw ParseError(e.what(), 0, sym_field);
            }
        }
        p.insert(universe->encode(symbols));
    }
    return p;
}

FiniteProperty read_property(const std::filesystem::path& path)
{
    const auto j = load(path);
    try {
        return property_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

json witness_to_json(const Witness& w)
{
    return {{"trace", trace_to_json(w.trace)}, {"passing", set_to_json(w.passing)}, {"failing", set_to_json(w.failing)}};
}

} // namespace cyberdyn::hyper
