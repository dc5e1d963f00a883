#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/json_io.hpp"
#include "fctp/model.hpp"
#include "fctp/rational.hpp"

namespace fctp {

namespace lp_detail {

constexpr std::size_t kWrapColumn = 78;

// Exact decimal rendering for places that cannot be scaled (objective,
// bounds). Non-terminating rationals are an error there.
inline std::string strict_decimal(const Rational& r, const char* where) {
    if (!has_finite_decimal(r))
        raise(Errc::io_error, std::string(where) + ": " + to_string(r) +
                                  " has no finite decimal form and the row cannot be scaled");
    return to_decimal_string(r);
}

// Least common multiple of the denominators of a row; multiplying through
// preserves the relation while clearing non-terminating coefficients.
inline Rational row_scale(const ModelRow& row) {
    bool all_finite = has_finite_decimal(row.rhs);
    for (const auto& [var, coef] : row.terms) all_finite = all_finite && has_finite_decimal(coef);
    if (all_finite) return 1;
    BigInt l = denominator(row.rhs);
    for (const auto& [var, coef] : row.terms) l = lcm(l, denominator(coef));
    return Rational(l);
}

inline void append_wrapped(std::string& out, const std::string& head,
                           const std::vector<std::string>& pieces) {
    std::string line = head;
    for (const std::string& piece : pieces) {
        if (line.size() + 1 + piece.size() > kWrapColumn && line != " ") {
            out += line;
            out += '\n';
            line = " ";
        }
        line += " " + piece;
    }
    out += line;
    out += '\n';
}

inline std::vector<std::string> term_pieces(const Model& model,
                                            const std::vector<std::pair<int, Rational>>& terms,
                                            const Rational& scale) {
    std::vector<std::string> pieces;
    for (const auto& [var, coef] : terms) {
        Rational c = coef * scale;
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        std::string body = mag == 1 ? "" : to_decimal_string(mag) + " ";
        body += model.variables[static_cast<std::size_t>(var)].name;
        pieces.push_back((pieces.empty() ? (neg ? "- " : "") : (neg ? "- " : "+ ")) + body);
    }
    if (pieces.empty()) pieces.emplace_back("0");
    return pieces;
}

}  // namespace lp_detail

// Deterministic LP-format rendering: metadata comments, Minimize/Subject
// To/Bounds/Binaries/Generals sections, exact decimals, and per-row LCM
// scaling where a coefficient does not terminate.
inline std::string write_model_lp(const Model& model) {
    std::string out;
    for (const auto& [key, value] : model.metadata) out += "\\ " + key + ": " + value + "\n";
    out += "Minimize\n";
    for (const auto& [var, coef] : model.objective)
        lp_detail::strict_decimal(coef, "objective coefficient");
    lp_detail::append_wrapped(out, " obj:",
                              lp_detail::term_pieces(model, model.objective, Rational(1)));
    out += "Subject To\n";
    for (const ModelRow& row : model.constraints) {
        Rational scale = lp_detail::row_scale(row);
        std::vector<std::string> pieces = lp_detail::term_pieces(model, row.terms, scale);
        pieces.push_back(std::string(row_sense_str(row.sense)) + " " +
                         to_decimal_string(row.rhs * scale));
        lp_detail::append_wrapped(out, " " + row.name + ":", pieces);
    }
    std::string bounds;
    for (const ModelVar& v : model.variables) {
        if (v.kind == VarKind::Binary) continue;
        if (!v.lower && !v.upper) {
            bounds += " " + v.name + " free\n";
        } else if (v.lower && *v.lower == 0) {
            if (v.upper)
                bounds += " 0 <= " + v.name + " <= " +
                          lp_detail::strict_decimal(*v.upper, "bound") + "\n";
        } else if (!v.lower) {
            bounds += " " + v.name + " free\n";
            bounds += " " + v.name + " <= " +
                      lp_detail::strict_decimal(v.upper ? *v.upper : Rational(0), "bound") + "\n";
        } else if (!v.upper) {
            bounds += " " + v.name + " >= " + lp_detail::strict_decimal(*v.lower, "bound") + "\n";
        } else {
            bounds += " " + lp_detail::strict_decimal(*v.lower, "bound") + " <= " + v.name +
                      " <= " + lp_detail::strict_decimal(*v.upper, "bound") + "\n";
        }
    }
    if (!bounds.empty()) out += "Bounds\n" + bounds;
    std::vector<std::string> binaries, generals;
    for (const ModelVar& v : model.variables) {
        if (v.kind == VarKind::Binary) binaries.push_back(v.name);
        if (v.kind == VarKind::Integer) generals.push_back(v.name);
    }
    if (!binaries.empty()) {
        out += "Binaries\n";
        lp_detail::append_wrapped(out, "", binaries);
    }
    if (!generals.empty()) {
        out += "Generals\n";
        lp_detail::append_wrapped(out, "", generals);
    }
    out += "End\n";
    return out;
}

inline void write_model_lp(const Model& model, const std::string& path) {
    write_text(path, write_model_lp(model));
}

// Free MPS rendering with the same scaling rules. Names above the guard
// length are rejected rather than truncated.
inline std::string write_model_mps(const Model& model) {
    auto guard = [](const std::string& name) {
        if (name.size() > 255) raise(Errc::name_too_long, name.substr(0, 32) + "...");
        return name;
    };
    std::string out = "NAME " + guard(model.formulation + "_" + model.fingerprint) + "\n";
    out += "ROWS\n N obj\n";
    std::vector<Rational> scale;
    for (const ModelRow& row : model.constraints) {
        scale.push_back(lp_detail::row_scale(row));
        char s = row.sense == RowSense::LE ? 'L' : row.sense == RowSense::GE ? 'G' : 'E';
        out += std::string(" ") + s + " " + guard(row.name) + "\n";
    }
    std::vector<std::vector<std::pair<std::size_t, Rational>>> column(model.variables.size());
    for (std::size_t r = 0; r < model.constraints.size(); ++r)
        for (const auto& [var, coef] : model.constraints[r].terms)
            column[static_cast<std::size_t>(var)].emplace_back(r, coef * scale[r]);
    std::vector<Rational> obj_coef(model.variables.size(), Rational(0));
    for (const auto& [var, coef] : model.objective) {
        lp_detail::strict_decimal(coef, "objective coefficient");
        obj_coef[static_cast<std::size_t>(var)] = coef;
    }
    out += "COLUMNS\n";
    bool integer_block = false;
    for (std::size_t i = 0; i < model.variables.size(); ++i) {
        const ModelVar& v = model.variables[i];
        bool wants_integer = v.kind != VarKind::Continuous;
        if (wants_integer != integer_block) {
            out += wants_integer ? " MARKER 'MARKER' 'INTORG'\n" : " MARKER 'MARKER' 'INTEND'\n";
            integer_block = wants_integer;
        }
        guard(v.name);
        if (obj_coef[i] != 0)
            out += " " + v.name + " obj " + to_decimal_string(obj_coef[i]) + "\n";
        for (const auto& [r, coef] : column[i])
            out += " " + v.name + " " + model.constraints[r].name + " " + to_decimal_string(coef) +
                   "\n";
    }
    if (integer_block) out += " MARKER 'MARKER' 'INTEND'\n";
    out += "RHS\n";
    for (std::size_t r = 0; r < model.constraints.size(); ++r) {
        Rational rhs = model.constraints[r].rhs * scale[r];
        if (rhs != 0) out += " RHS " + model.constraints[r].name + " " + to_decimal_string(rhs) + "\n";
    }
    std::string bnd;
    for (const ModelVar& v : model.variables) {
        if (v.kind == VarKind::Binary) {
            bnd += " BV BND " + v.name + "\n";
            continue;
        }
        const char* up_tag = v.kind == VarKind::Integer ? "UI" : "UP";
        const char* lo_tag = v.kind == VarKind::Integer ? "LI" : "LO";
        if (!v.lower && !v.upper) {
            bnd += " FR BND " + v.name + "\n";
            continue;
        }
        if (!v.lower)
            bnd += " MI BND " + v.name + "\n";
        else if (*v.lower != 0)
            bnd += std::string(" ") + lo_tag + " BND " + v.name + " " +
                   lp_detail::strict_decimal(*v.lower, "bound") + "\n";
        if (v.upper)
            bnd += std::string(" ") + up_tag + " BND " + v.name + " " +
                   lp_detail::strict_decimal(*v.upper, "bound") + "\n";
    }
    if (!bnd.empty()) out += "BOUNDS\n" + bnd;
    out += "ENDATA\n";
    return out;
}

inline void write_model_mps(const Model& model, const std::string& path) {
    write_text(path, write_model_mps(model));
}

namespace lp_detail {

enum class TokKind { Word, RowName, Number, Sign, SenseTok, Keyword, EndOfInput };

struct Token {
    TokKind kind = TokKind::EndOfInput;
    std::string text;
};

struct Lexer {
    std::vector<Token> tokens;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::size_t pos = 0;

    explicit Lexer(const std::string& text) {
        std::string body;
        std::size_t line_start = 0;
        while (line_start <= text.size()) {
            std::size_t nl = text.find('\n', line_start);
            if (nl == std::string::npos) nl = text.size();
            std::string line = text.substr(line_start, nl - line_start);
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first != std::string::npos && line[first] == '\\') {
                std::string rest = line.substr(first + 1);
                if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
                std::size_t sep = rest.find(": ");
                if (sep == std::string::npos)
                    metadata.emplace_back("note", rest);
                else
                    metadata.emplace_back(rest.substr(0, sep), rest.substr(sep + 2));
            } else {
                body += line;
                body += '\n';
            }
            line_start = nl + 1;
        }
        lex(body);
    }

    void lex(const std::string& s) {
        std::size_t i = 0;
        auto is_word = [](char c) {
            return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                   c == '_';
        };
        while (i < s.size()) {
            char c = s[i];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++i;
                continue;
            }
            if (c == '+' || c == '-') {
                tokens.push_back({TokKind::Sign, std::string(1, c)});
                ++i;
                continue;
            }
            if (c == '<' || c == '>' || c == '=') {
                std::string t(1, c);
                if (i + 1 < s.size() && s[i + 1] == '=' && c != '=') t += '=';
                i += t.size();
                if (t == "<") t = "<=";
                if (t == ">") t = ">=";
                tokens.push_back({TokKind::SenseTok, t});
                continue;
            }
            if ((c >= '0' && c <= '9') || c == '.') {
                std::size_t j = i;
                while (j < s.size() && ((s[j] >= '0' && s[j] <= '9') || s[j] == '.' || s[j] == '/'))
                    ++j;
                tokens.push_back({TokKind::Number, s.substr(i, j - i)});
                i = j;
                continue;
            }
            if (is_word(c)) {
                std::size_t j = i;
                while (j < s.size() && is_word(s[j])) ++j;
                std::string word = s.substr(i, j - i);
                i = j;
                if (word == "Subject") {
                    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
                    if (s.compare(i, 2, "To") != 0)
                        raise(Errc::parse_error, "expected 'Subject To'");
                    i += 2;
                    tokens.push_back({TokKind::Keyword, "SubjectTo"});
                    continue;
                }
                if (word == "Minimize" || word == "Maximize" || word == "Bounds" ||
                    word == "Binaries" || word == "Generals" || word == "End" || word == "free") {
                    tokens.push_back({TokKind::Keyword, word});
                    continue;
                }
                if (i < s.size() && s[i] == ':') {
                    ++i;
                    tokens.push_back({TokKind::RowName, word});
                } else {
                    tokens.push_back({TokKind::Word, word});
                }
                continue;
            }
            raise(Errc::parse_error, "unexpected character '" + std::string(1, c) + "'");
        }
    }

    const Token& peek() const {
        static const Token kEnd{TokKind::EndOfInput, ""};
        return pos < tokens.size() ? tokens[pos] : kEnd;
    }
    Token take() {
        Token t = peek();
        if (pos < tokens.size()) ++pos;
        return t;
    }
    Token expect(TokKind kind, const char* what) {
        Token t = take();
        if (t.kind != kind) raise(Errc::parse_error, std::string("expected ") + what +
                                                         " near '" + t.text + "'");
        return t;
    }
};

}  // namespace lp_detail

// Reader for the dialect produced by write_model_lp. Variables register on
// first appearance with the builder defaults (continuous, lower bound 0).
inline Model read_model_lp(const std::string& text) {
    lp_detail::Lexer lx(text);
    Model model;
    model.metadata = lx.metadata;
    for (const auto& [key, value] : lx.metadata) {
        if (key == "formulation") model.formulation = value;
        if (key == "instance") model.fingerprint = value;
    }
    auto var_of = [&model](const std::string& name) {
        int idx = model.var_index(name);
        return idx >= 0 ? idx : model.add_var(name, Rational(0), std::nullopt, VarKind::Continuous);
    };
    auto parse_signed = [&lx]() {
        Rational sign = 1;
        while (lx.peek().kind == lp_detail::TokKind::Sign)
            if (lx.take().text == "-") sign = -sign;
        return sign * parse_rational(lx.expect(lp_detail::TokKind::Number, "number").text);
    };
    auto parse_terms = [&](std::vector<std::pair<int, Rational>>& terms) {
        while (true) {
            lp_detail::TokKind k = lx.peek().kind;
            if (k == lp_detail::TokKind::Sign || k == lp_detail::TokKind::Number) {
                Rational sign = 1;
                while (lx.peek().kind == lp_detail::TokKind::Sign)
                    if (lx.take().text == "-") sign = -sign;
                Rational coef = sign;
                if (lx.peek().kind == lp_detail::TokKind::Number)
                    coef = sign * parse_rational(lx.take().text);
                if (lx.peek().kind == lp_detail::TokKind::Word) {
                    terms.emplace_back(var_of(lx.take().text), coef);
                } else if (coef != 0) {
                    raise(Errc::parse_error, "constant term in row");
                }
            } else if (k == lp_detail::TokKind::Word) {
                terms.emplace_back(var_of(lx.take().text), Rational(1));
            } else {
                return;
            }
        }
    };

    if (lx.take().text != "Minimize") raise(Errc::parse_error, "expected Minimize");
    if (lx.expect(lp_detail::TokKind::RowName, "objective name").text != "obj")
        raise(Errc::parse_error, "expected objective row 'obj'");
    parse_terms(model.objective);
    if (lx.take().text != "SubjectTo") raise(Errc::parse_error, "expected Subject To");
    while (lx.peek().kind == lp_detail::TokKind::RowName) {
        std::string name = lx.take().text;
        std::vector<std::pair<int, Rational>> terms;
        parse_terms(terms);
        std::string sense = lx.expect(lp_detail::TokKind::SenseTok, "row sense").text;
        Rational rhs = parse_signed();
        ModelRow& row = model.add_row(name,
                                      sense == "<=" ? RowSense::LE
                                                    : sense == ">=" ? RowSense::GE : RowSense::EQ,
                                      rhs);
        row.terms = std::move(terms);
    }
    while (lx.peek().kind == lp_detail::TokKind::Keyword) {
        std::string section = lx.take().text;
        if (section == "End") {
            return model;
        } else if (section == "Bounds") {
            while (true) {
                lp_detail::TokKind k = lx.peek().kind;
                if (k == lp_detail::TokKind::Number || k == lp_detail::TokKind::Sign) {
                    Rational lo = parse_signed();
                    lx.expect(lp_detail::TokKind::SenseTok, "<=");
                    int v = var_of(lx.expect(lp_detail::TokKind::Word, "variable").text);
                    lx.expect(lp_detail::TokKind::SenseTok, "<=");
                    model.variables[static_cast<std::size_t>(v)].lower = lo;
                    model.variables[static_cast<std::size_t>(v)].upper = parse_signed();
                } else if (k == lp_detail::TokKind::Word) {
                    int v = var_of(lx.take().text);
                    if (lx.peek().kind == lp_detail::TokKind::Keyword && lx.peek().text == "free") {
                        lx.take();
                        model.variables[static_cast<std::size_t>(v)].lower = std::nullopt;
                        model.variables[static_cast<std::size_t>(v)].upper = std::nullopt;
                    } else {
                        std::string s = lx.expect(lp_detail::TokKind::SenseTok, "bound sense").text;
                        Rational val = parse_signed();
                        if (s == "<=")
                            model.variables[static_cast<std::size_t>(v)].upper = val;
                        else if (s == ">=")
                            model.variables[static_cast<std::size_t>(v)].lower = val;
                        else
                            raise(Errc::parse_error, "bad bound sense for " +
                                                         model.variables[static_cast<std::size_t>(v)].name);
                    }
                } else {
                    break;
                }
            }
        } else if (section == "Binaries" || section == "Generals") {
            while (lx.peek().kind == lp_detail::TokKind::Word) {
                int v = var_of(lx.take().text);
                ModelVar& mv = model.variables[static_cast<std::size_t>(v)];
                if (section == "Binaries") {
                    mv.kind = VarKind::Binary;
                    mv.lower = Rational(0);
                    mv.upper = Rational(1);
                } else {
                    mv.kind = VarKind::Integer;
                }
            }
        } else {
            raise(Errc::parse_error, "unexpected section " + section);
        }
    }
    raise(Errc::parse_error, "missing End");
}

inline Model read_model_lp_file(const std::string& path) { return read_model_lp(read_text(path)); }

// Name-based semantic equality: same rows, bounds, integrality, objective,
// and metadata, independent of internal variable numbering.
inline bool models_equal(const Model& a, const Model& b) {
    if (a.formulation != b.formulation || a.fingerprint != b.fingerprint ||
        a.metadata != b.metadata || a.variables.size() != b.variables.size() ||
        a.constraints.size() != b.constraints.size())
        return false;
    for (const ModelVar& va : a.variables) {
        int ib = b.var_index(va.name);
        if (ib < 0) return false;
        const ModelVar& vb = b.variables[static_cast<std::size_t>(ib)];
        if (va.lower != vb.lower || va.upper != vb.upper || va.kind != vb.kind) return false;
    }
    auto named_terms = [](const Model& m, const std::vector<std::pair<int, Rational>>& terms) {
        std::vector<std::pair<std::string, Rational>> out;
        for (const auto& [var, coef] : terms)
            out.emplace_back(m.variables[static_cast<std::size_t>(var)].name, coef);
        return out;
    };
    if (named_terms(a, a.objective) != named_terms(b, b.objective)) return false;
    for (std::size_t r = 0; r < a.constraints.size(); ++r) {
        const ModelRow& ra = a.constraints[r];
        const ModelRow& rb = b.constraints[r];
        if (ra.name != rb.name || ra.sense != rb.sense || ra.rhs != rb.rhs ||
            named_terms(a, ra.terms) != named_terms(b, rb.terms))
            return false;
    }
    return true;
}

}  // namespace fctp
