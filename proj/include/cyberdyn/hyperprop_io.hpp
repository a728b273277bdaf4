#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyberdyn/hyperprop.hpp"

namespace cyberdyn::hyper {

// Trace-set file:
//   {"traces": [{"events": [{"level": "H"|"L", "kind": "in"|"out", "value": <int>, "rt": <number>?}]}]}
// Property file:
//   {"sigma": [<symbol>, ...], "L": <int>, "members": [[<symbol>, ...], ...]}

nlohmann::json event_to_json(const Event& e);
Event event_from_json(const nlohmann::json& j, const std::string& field = "event");

nlohmann::json traces_to_json(const std::vector<Trace>& traces);
/// Keeps file order and duplicates; callers build a TraceSet when they need one.
std::vector<Trace> traces_from_json(const nlohmann::json& j);
std::vector<Trace> read_traces(const std::filesystem::path& path);

/// Event symbol grammar used on the command line: <H|L><in|out>:<value>[@<rt>], e.g. "Lout:0@3.5".
Event parse_event_symbol(const std::string& symbol);

nlohmann::json property_to_json(const FiniteProperty& p);
FiniteProperty property_from_json(const nlohmann::json& j);
FiniteProperty read_property(const std::filesystem::path& path);

nlohmann::json witness_to_json(const Witness& w);

} // namespace cyberdyn::hyper
