#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fctp/errors.hpp"
#include "fctp/instance.hpp"
#include "fctp/model.hpp"
#include "fctp/rational.hpp"

namespace fctp {

using Json = nlohmann::ordered_json;

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io_error, "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    if (!in.good() && !in.eof()) raise(Errc::io_error, "cannot read " + path);
    return out.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io_error, "cannot open " + path + " for writing");
    out << text;
    if (!out.good()) raise(Errc::io_error, "cannot write " + path);
}

namespace detail {

// Rationals serialize as plain integers when they fit, else "num/den"
// strings; floating-point JSON numbers are rejected to keep exactness.
inline Json rational_to_json(const Rational& r) {
    if (is_integer(r)) {
        BigInt num = numerator(r);
        if (num >= std::numeric_limits<std::int64_t>::min() &&
            num <= std::numeric_limits<std::int64_t>::max())
            return Json(static_cast<std::int64_t>(num));
    }
    return Json(to_string(r));
}

inline Rational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Rational(BigInt(j.get<std::uint64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    raise(Errc::parse_error, field + ": expected integer or rational string");
}

inline Cap cap_from_json(const Json& j, const std::string& field) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        raise(Errc::parse_error, field + ": expected integer");
    if (j.is_number_unsigned() &&
        j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Cap>::max()))
        raise(Errc::parse_error, field + ": out of range");
    return j.get<std::int64_t>();
}

inline const Json& need(const Json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end()) raise(Errc::parse_error, std::string("missing field ") + field);
    return *it;
}

}  // namespace detail

inline Json instance_to_document(const Instance& inst) {
    Json doc;
    doc["version"] = 1;
    Json nodes = Json::array();
    for (int v = 1; v <= inst.num_nodes(); ++v)
        nodes.push_back(Json{{"id", v}, {"b", inst.node_cap(v)}});
    doc["nodes"] = std::move(nodes);
    Json arcs = Json::array();
    for (const Arc& arc : inst.arcs)
        arcs.push_back(Json{{"i", arc.i},
                            {"j", arc.j},
                            {"p", detail::rational_to_json(arc.p)},
                            {"q", detail::rational_to_json(arc.q)}});
    doc["arcs"] = std::move(arcs);
    Json variant;
    bool any_eq = false;
    Json sense = Json::object();
    for (int v = 1; v <= inst.num_nodes(); ++v)
        if (inst.variant.sense_of(v) == Sense::EQ) {
            sense[std::to_string(v)] = "eq";
            any_eq = true;
        }
    if (any_eq) variant["node_sense"] = std::move(sense);
    variant["link_lower"] = inst.variant.link_lower;
    doc["variant"] = std::move(variant);
    if (!inst.provenance.empty()) {
        Json prov = Json::parse(inst.provenance, nullptr, false);
        doc["provenance"] = prov.is_discarded() ? Json(inst.provenance) : prov;
    }
    return doc;
}

inline Instance instance_from_document(const Json& doc) {
    if (!doc.is_object()) raise(Errc::parse_error, "document is not an object");
    if (detail::need(doc, "version") != 1) raise(Errc::parse_error, "version: expected 1");
    const Json& nodes = detail::need(doc, "nodes");
    if (!nodes.is_array() || nodes.empty()) raise(Errc::parse_error, "nodes: expected array");
    std::vector<Cap> b(nodes.size(), 0);
    std::vector<bool> seen(nodes.size(), false);
    for (const Json& node : nodes) {
        Cap id = detail::cap_from_json(detail::need(node, "id"), "nodes.id");
        if (id < 1 || id > static_cast<Cap>(nodes.size()))
            raise(Errc::parse_error, "nodes.id: ids must be 1..|V|");
        if (seen[static_cast<std::size_t>(id - 1)])
            raise(Errc::parse_error, "nodes.id: duplicate id " + std::to_string(id));
        seen[static_cast<std::size_t>(id - 1)] = true;
        b[static_cast<std::size_t>(id - 1)] = detail::cap_from_json(detail::need(node, "b"), "nodes.b");
    }
    const Json& arcs_json = detail::need(doc, "arcs");
    if (!arcs_json.is_array()) raise(Errc::parse_error, "arcs: expected array");
    std::vector<std::pair<int, int>> arcs;
    std::vector<Rational> p, q;
    for (const Json& arc : arcs_json) {
        arcs.emplace_back(static_cast<int>(detail::cap_from_json(detail::need(arc, "i"), "arcs.i")),
                          static_cast<int>(detail::cap_from_json(detail::need(arc, "j"), "arcs.j")));
        p.push_back(detail::rational_from_json(detail::need(arc, "p"), "arcs.p"));
        q.push_back(detail::rational_from_json(detail::need(arc, "q"), "arcs.q"));
    }
    Variant variant;
    if (auto vit = doc.find("variant"); vit != doc.end()) {
        if (auto sit = vit->find("node_sense"); sit != vit->end()) {
            variant.node_sense.assign(nodes.size(), Sense::LE);
            for (auto it = sit->begin(); it != sit->end(); ++it) {
                Cap id = 0;
                try {
                    id = std::stoll(it.key());
                } catch (...) {
                    raise(Errc::parse_error, "node_sense: bad node id " + it.key());
                }
                if (id < 1 || id > static_cast<Cap>(nodes.size()))
                    raise(Errc::parse_error, "node_sense: bad node id " + it.key());
                std::string s = it->is_string() ? it->get<std::string>() : "";
                if (s != "eq" && s != "le") raise(Errc::parse_error, "node_sense: expected le or eq");
                variant.node_sense[static_cast<std::size_t>(id - 1)] =
                    s == "eq" ? Sense::EQ : Sense::LE;
            }
        }
        if (auto lit = vit->find("link_lower"); lit != vit->end()) {
            if (!lit->is_boolean()) raise(Errc::parse_error, "link_lower: expected boolean");
            variant.link_lower = lit->get<bool>();
        }
    }
    Instance inst = new_instance(b, arcs, p, q, variant);
    if (auto pit = doc.find("provenance"); pit != doc.end())
        inst.provenance = pit->is_string() ? pit->get<std::string>()
                                           : pit->dump(-1, ' ', false,
                                                       Json::error_handler_t::strict);
    return inst;
}

inline void write_instance(const Instance& inst, const std::string& path) {
    write_text(path, instance_to_document(inst).dump(2) + "\n");
}

inline Instance read_instance(const std::string& path) {
    Json doc;
    try {
        doc = Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& err) {
        raise(Errc::parse_error, err.what());
    }
    return instance_from_document(doc);
}

inline Json solution_to_document(const Instance& inst, const Solution& sol) {
    Json doc;
    doc["version"] = 1;
    doc["objective"] = detail::rational_to_json(sol.objective);
    Json arcs = Json::array();
    for (std::size_t e = 0; e < inst.arcs.size(); ++e)
        arcs.push_back(Json{{"i", inst.arcs[e].i},
                            {"j", inst.arcs[e].j},
                            {"x", sol.x[e]},
                            {"y", sol.y[e]}});
    doc["arcs"] = std::move(arcs);
    return doc;
}

inline Solution solution_from_document(const Instance& inst, const Json& doc) {
    if (detail::need(doc, "version") != 1) raise(Errc::parse_error, "version: expected 1");
    const Json& arcs = detail::need(doc, "arcs");
    if (!arcs.is_array() || arcs.size() != inst.arcs.size())
        raise(Errc::parse_error, "arcs: expected one entry per instance arc");
    std::vector<Cap> x;
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Json& arc = arcs[e];
        if (detail::cap_from_json(detail::need(arc, "i"), "arcs.i") != inst.arcs[e].i ||
            detail::cap_from_json(detail::need(arc, "j"), "arcs.j") != inst.arcs[e].j)
            raise(Errc::parse_error, "arcs: order does not match the instance");
        x.push_back(detail::cap_from_json(detail::need(arc, "x"), "arcs.x"));
    }
    Solution sol = solution_from_flows(inst, x);
    Rational claimed = detail::rational_from_json(detail::need(doc, "objective"), "objective");
    if (claimed != sol.objective) raise(Errc::validation_error, "objective does not match flows");
    return sol;
}

inline void write_solution(const Instance& inst, const Solution& sol, const std::string& path) {
    write_text(path, solution_to_document(inst, sol).dump(2) + "\n");
}

inline Json assignment_to_document(const Assignment& pt) {
    Json doc;
    doc["version"] = 1;
    doc["claims_integrality"] = pt.claims_integrality;
    Json values = Json::object();
    for (const auto& [name, val] : pt.values) values[name] = detail::rational_to_json(val);
    doc["values"] = std::move(values);
    return doc;
}

inline Assignment assignment_from_document(const Json& doc) {
    if (detail::need(doc, "version") != 1) raise(Errc::parse_error, "version: expected 1");
    Assignment pt;
    if (auto it = doc.find("claims_integrality"); it != doc.end())
        pt.claims_integrality = it->get<bool>();
    for (auto it = detail::need(doc, "values").begin(); it != detail::need(doc, "values").end(); ++it)
        pt.values[it.key()] = detail::rational_from_json(*it, "values." + it.key());
    return pt;
}

}  // namespace fctp
