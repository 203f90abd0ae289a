#ifndef SEATARR_IO_HPP
#define SEATARR_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seatarr/generators.hpp"
#include "seatarr/model.hpp"
#include "seatarr/solve.hpp"

namespace seatarr {

using Json = nlohmann::ordered_json;

/// Instance plus its serialization context: agent names and the optional
/// generator metadata sidecar.
struct NamedInstance {
    Instance instance;
    std::vector<std::string> agent_names;
    Json metadata;  // null when absent

    explicit NamedInstance(Instance inst)
        : instance(std::move(inst)), metadata(nullptr) {
        for (int i = 0; i < instance.agent_count(); ++i)
            agent_names.push_back("p" + std::to_string(i + 1));
    }
    NamedInstance(Instance inst, std::vector<std::string> names, Json meta = nullptr)
        : instance(std::move(inst)), agent_names(std::move(names)), metadata(std::move(meta)) {
        if (static_cast<int>(agent_names.size()) != instance.agent_count())
            throw std::invalid_argument("instance io: name count mismatch");
    }
};

inline NamedInstance to_named(GeneratedInstance g) {
    Json meta;
    meta["kind"] = g.kind;
    if (g.planted_threshold) meta["planted_threshold"] = g.planted_threshold->str();
    if (g.h) meta["h"] = *g.h;
    return NamedInstance(std::move(g.instance), std::move(g.agent_names), std::move(meta));
}

// ---------------------------------------------------------------------------
// Instance files

inline Json instance_to_json(const NamedInstance& named) {
    Json j;
    j["agents"] = named.agent_names;
    Json prefs = Json::array();
    for (const Arc& a : named.instance.profile.arcs()) {
        Json entry;
        entry["from"] = a.from;
        entry["to"] = a.to;
        entry["value"] = a.weight.str();
        prefs.push_back(std::move(entry));
    }
    j["preferences"] = std::move(prefs);
    Json seats;
    seats["n"] = named.instance.seats.vertex_count();
    Json edges = Json::array();
    for (auto [u, v] : named.instance.seats.edges()) edges.push_back(Json::array({u, v}));
    seats["edges"] = std::move(edges);
    j["seats"] = std::move(seats);
    if (!named.metadata.is_null()) j["metadata"] = named.metadata;
    return j;
}

inline Rational rational_from_json(const Json& v) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw std::invalid_argument("instance io: preference value must be a rational string");
}

inline NamedInstance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("agents") || !j.contains("seats"))
        throw std::invalid_argument("instance io: missing agents or seats");
    std::vector<std::string> names = j.at("agents").get<std::vector<std::string>>();
    const int n = static_cast<int>(names.size());
    const Json& seats_j = j.at("seats");
    if (seats_j.at("n").get<int>() != n)
        throw std::invalid_argument("instance io: seats.n must equal the number of agents");
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : seats_j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("instance io: malformed edge");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<Arc> arcs;
    if (j.contains("preferences"))
        for (const Json& p : j.at("preferences"))
            arcs.push_back(
                {p.at("from").get<int>(), p.at("to").get<int>(), rational_from_json(p.at("value"))});
    Json meta = j.contains("metadata") ? j.at("metadata") : Json(nullptr);
    return NamedInstance(Instance(PreferenceProfile(n, std::move(arcs)), SeatGraph(n, edges)),
                         std::move(names), std::move(meta));
}

inline std::string serialize_instance(const NamedInstance& named) {
    return instance_to_json(named).dump(2) + "\n";
}

inline NamedInstance parse_instance(const std::string& text) {
    return instance_from_json(Json::parse(text));
}

inline NamedInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

// ---------------------------------------------------------------------------
// Arrangement files: either a bare JSON array (agent index -> seat index)
// or {"assignment": [...]}.

inline Arrangement arrangement_from_json(const Json& j, int n) {
    const Json& arr = j.is_object() && j.contains("assignment") ? j.at("assignment") : j;
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
        throw std::invalid_argument("arrangement io: expected an array of n seat indices");
    std::vector<int> seats;
    for (const Json& v : arr) seats.push_back(v.get<int>());
    return Arrangement(std::move(seats));
}

inline Arrangement load_arrangement_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open arrangement file '" + path + "'");
    Json j = Json::parse(in);
    return arrangement_from_json(j, n);
}

// ---------------------------------------------------------------------------
// Result files

inline Json outcome_to_json(const SolveOutcome& out, long long wall_time_ms) {
    Json j;
    j["problem"] = problem_name(out.problem);
    j["algorithm"] = out.algorithm;
    if (out.value) j["value"] = out.value->str();
    if (out.exists) j["exists"] = *out.exists;
    if (out.certificate) j["certificate"] = out.certificate->assignment();
    j["seed"] = out.seed;
    j["trials_run"] = out.trials_run;
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

inline std::string serialize_outcome(const SolveOutcome& out, long long wall_time_ms) {
    return outcome_to_json(out, wall_time_ms).dump(2) + "\n";
}

}  // namespace seatarr

#endif
