#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/instance.hpp"
#include "fctp/rational.hpp"

namespace fctp {

enum class VarKind { Continuous, Binary, Integer };
enum class RowSense { LE, EQ, GE };

inline const char* row_sense_str(RowSense s) {
    switch (s) {
        case RowSense::LE: return "<=";
        case RowSense::EQ: return "=";
        case RowSense::GE: return ">=";
    }
    return "?";
}

struct ModelVar {
    std::string name;
    std::optional<Rational> lower;  // nullopt = -inf
    std::optional<Rational> upper;  // nullopt = +inf
    VarKind kind = VarKind::Continuous;
};

struct ModelRow {
    std::string name;
    std::vector<std::pair<int, Rational>> terms;  // (variable index, coefficient)
    RowSense sense = RowSense::LE;
    Rational rhs;
};

// Solver-agnostic minimization model. Builders append variables and rows in
// a fixed order, so identical instances yield byte-identical serializations.
struct Model {
    std::string formulation;
    std::string fingerprint;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<ModelVar> variables;
    std::vector<ModelRow> constraints;
    std::vector<std::pair<int, Rational>> objective;  // sense: minimize

    int add_var(std::string name, std::optional<Rational> lower, std::optional<Rational> upper,
                VarKind kind) {
        int idx = static_cast<int>(variables.size());
        auto [it, fresh] = index_.emplace(name, idx);
        if (!fresh) raise(Errc::validation_error, "duplicate variable name " + name);
        variables.push_back({std::move(name), std::move(lower), std::move(upper), kind});
        return idx;
    }

    int var_index(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    void add_objective_term(int var, Rational coef) {
        if (coef != 0) objective.emplace_back(var, std::move(coef));
    }

    ModelRow& add_row(std::string name, RowSense sense, Rational rhs) {
        constraints.push_back({std::move(name), {}, sense, std::move(rhs)});
        return constraints.back();
    }

private:
    std::unordered_map<std::string, int> index_;
};

inline void add_term(ModelRow& row, int var, Rational coef) {
    if (coef != 0) row.terms.emplace_back(var, std::move(coef));
}

// Sparse point in a model's variable space; unlisted variables are zero.
struct Assignment {
    std::map<std::string, Rational> values;
    bool claims_integrality = false;

    void set(const std::string& name, Rational v) {
        if (v != 0) values[name] = std::move(v);
    }
    Rational get(const std::string& name) const {
        auto it = values.find(name);
        return it == values.end() ? Rational(0) : it->second;
    }
};

struct PointViolation {
    std::string name;
    Rational lhs;
    RowSense sense = RowSense::LE;
    Rational rhs;
};

// Exact evaluation of every bound and row of the model at the point.
// Integrality is enforced only when the point claims it.
inline std::vector<PointViolation> check_point(const Model& model, const Assignment& pt) {
    std::vector<Rational> val(model.variables.size(), Rational(0));
    for (const auto& [name, v] : pt.values) {
        int idx = model.var_index(name);
        if (idx < 0) raise(Errc::unknown_variable, name);
        val[static_cast<std::size_t>(idx)] = v;
    }

    std::vector<PointViolation> out;
    for (std::size_t i = 0; i < model.variables.size(); ++i) {
        const ModelVar& v = model.variables[i];
        if (v.lower && val[i] < *v.lower) out.push_back({"lb:" + v.name, val[i], RowSense::GE, *v.lower});
        if (v.upper && val[i] > *v.upper) out.push_back({"ub:" + v.name, val[i], RowSense::LE, *v.upper});
        if (pt.claims_integrality && v.kind != VarKind::Continuous && !is_integer(val[i]))
            out.push_back({"int:" + v.name, val[i], RowSense::EQ,
                           Rational(numerator(val[i]) / denominator(val[i]))});
    }
    for (const ModelRow& row : model.constraints) {
        Rational lhs = 0;
        for (const auto& [var, coef] : row.terms) lhs += coef * val[static_cast<std::size_t>(var)];
        bool bad = false;
        switch (row.sense) {
            case RowSense::LE: bad = lhs > row.rhs; break;
            case RowSense::EQ: bad = lhs != row.rhs; break;
            case RowSense::GE: bad = lhs < row.rhs; break;
        }
        if (bad) out.push_back({row.name, lhs, row.sense, row.rhs});
    }
    return out;
}

inline Rational objective_value(const Model& model, const Assignment& pt) {
    Rational out = 0;
    for (const auto& [var, coef] : model.objective)
        out += coef * pt.get(model.variables[static_cast<std::size_t>(var)].name);
    return out;
}

// ---- variable-name grammar (decimal indices, original node ids) ----

inline std::string x_name(int i, int j) { return "x_" + std::to_string(i) + "_" + std::to_string(j); }
inline std::string y_name(int i, int j) { return "y_" + std::to_string(i) + "_" + std::to_string(j); }
inline std::string z_name(int i, int j, Cap l) {
    return "z_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(l);
}
inline std::string u_name(int i, int j, Cap kp, Cap k) {
    return "u_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(kp) + "_" +
           std::to_string(k);
}
inline std::string v_name(int i, int j, Cap l, Cap k) {
    return "v_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(l) + "_" +
           std::to_string(k);
}
inline std::string f_name(int i, int j, Cap kp, Cap k) {
    return "f_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(kp) + "_" +
           std::to_string(k);
}

// FNV-1a over a canonical text form of the semantic fields (provenance is
// not semantic and does not alter the fingerprint).
inline std::string instance_fingerprint(const Instance& inst) {
    std::string text = "b:";
    for (Cap b : inst.b) text += std::to_string(b) + ",";
    text += ";arcs:";
    for (const Arc& arc : inst.arcs)
        text += "(" + std::to_string(arc.i) + "," + std::to_string(arc.j) + "," + to_string(arc.p) +
                "," + to_string(arc.q) + ")";
    text += ";sense:";
    for (int v = 1; v <= inst.num_nodes(); ++v)
        text += inst.variant.sense_of(v) == Sense::EQ ? "E" : "L";
    text += ";link:";
    text += inst.variant.link_lower ? "1" : "0";

    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace fctp
