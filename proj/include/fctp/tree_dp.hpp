#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/instance.hpp"
#include "fctp/tree.hpp"

namespace fctp {

// Rational extended with an absorbing +infinity, the sentinel for DP states
// whose restricted problem has no feasible assignment.
class DpValue {
public:
    DpValue() : finite_(true), v_(0) {}
    explicit DpValue(Rational v) : finite_(true), v_(std::move(v)) {}
    static DpValue infinity() {
        DpValue d;
        d.finite_ = false;
        return d;
    }

    bool finite() const { return finite_; }
    const Rational& value() const {
        if (!finite_) raise(Errc::corrupt_tables, "reading an infinite DP value");
        return v_;
    }

    DpValue operator+(const DpValue& o) const {
        if (!finite_ || !o.finite_) return infinity();
        return DpValue(v_ + o.v_);
    }
    DpValue operator+(const Rational& r) const {
        if (!finite_) return infinity();
        return DpValue(v_ + r);
    }
    // strict order with infinity above every rational
    bool operator<(const DpValue& o) const {
        if (!finite_) return false;
        if (!o.finite_) return true;
        return v_ < o.v_;
    }

private:
    bool finite_;
    Rational v_;
};

// Cost of routing l units over an arc: 0 when the arc is closed, l*p + q once
// it opens.
inline Rational arc_cost(Cap l, const Rational& p, const Rational& q) {
    if (l < 0) raise(Errc::validation_error, "negative arc level");
    if (l == 0) return Rational(0);
    return p * l + q;
}

// Value tables of the tree DP plus argmin back-pointers.
//
//   beta[e][l]        optimum of the subtree hanging below arc e when the arc
//                     carries l units (always finite; zero flow is feasible)
//   alpha[i][t][k]    optimum over node i's first t+1 child subtrees with k
//                     units leaving i into them; infeasible k are sentineled
//   back_alpha        split k' chosen at alpha[i][t][k], t >= 1
//   back_beta         child-side total k chosen at beta[e][l] (nonleaf child)
//   root_value        the overall optimum
//
// Indexing: i is a BFS position of the RootedTree, t a 0-based child
// position, e an instance arc index.
struct DpTables {
    std::vector<std::vector<Rational>> beta;
    std::vector<std::vector<Cap>> back_beta;
    std::vector<std::vector<std::vector<DpValue>>> alpha;
    std::vector<std::vector<std::vector<Cap>>> back_alpha;
    Rational root_value;
    Cap root_back = 0;

    std::size_t alpha_cell_count() const {
        std::size_t n = 0;
        for (const auto& node : alpha)
            for (const auto& pos : node) n += pos.size();
        return n;
    }
    std::size_t beta_cell_count() const {
        std::size_t n = 0;
        for (const auto& arc : beta) n += arc.size();
        return n;
    }
};

namespace detail {

inline void require_default_variant(const RootedTree& rt, const char* op) {
    if (!rt.instance.variant.is_default())
        raise(Errc::unsupported_variant, std::string(op) + " covers only the default variant");
}

}  // namespace detail

inline Solution recover_solution(const DpTables& tables, const RootedTree& rt);

// Bottom-up evaluation of the alpha/beta recursions; leaves first, so every
// child's tables exist when its parent arc is folded in.
inline std::pair<DpTables, Solution> solve_tree(const RootedTree& rt) {
    detail::require_default_variant(rt, "solve_tree");
    const Instance& inst = rt.instance;
    const int n = rt.num_nodes();

    DpTables t;
    t.beta.resize(inst.num_arcs());
    t.back_beta.resize(inst.num_arcs());
    t.alpha.resize(static_cast<std::size_t>(n));
    t.back_alpha.resize(static_cast<std::size_t>(n));

    for (int node = n - 1; node >= 0; --node) {
        const auto& kids = rt.children[static_cast<std::size_t>(node)];
        const Cap b = rt.cap(node);

        if (!kids.empty()) {
            auto& al = t.alpha[static_cast<std::size_t>(node)];
            auto& bk = t.back_alpha[static_cast<std::size_t>(node)];
            al.assign(kids.size(), std::vector<DpValue>(static_cast<std::size_t>(b) + 1));
            bk.assign(kids.size(), std::vector<Cap>(static_cast<std::size_t>(b) + 1, -1));
            for (std::size_t pos = 0; pos < kids.size(); ++pos) {
                const int e = rt.parent_arc[static_cast<std::size_t>(kids[pos])];
                const Cap a = inst.arcs[static_cast<std::size_t>(e)].a;
                const auto& beta_e = t.beta[static_cast<std::size_t>(e)];
                for (Cap k = 0; k <= b; ++k) {
                    auto& cell = al[pos][static_cast<std::size_t>(k)];
                    if (pos == 0) {
                        cell = k <= a ? DpValue(beta_e[static_cast<std::size_t>(k)]) : DpValue::infinity();
                        continue;
                    }
                    cell = DpValue::infinity();
                    Cap lo = k > a ? k - a : 0;
                    for (Cap kp = lo; kp <= k; ++kp) {
                        const DpValue& prev = al[pos - 1][static_cast<std::size_t>(kp)];
                        if (!prev.finite()) continue;
                        DpValue cand = prev + beta_e[static_cast<std::size_t>(k - kp)];
                        if (cand < cell) {
                            cell = cand;
                            bk[pos][static_cast<std::size_t>(k)] = kp;
                        }
                    }
                }
            }
        }

        if (node != 0) {
            const int e = rt.parent_arc[static_cast<std::size_t>(node)];
            const Arc& arc = inst.arcs[static_cast<std::size_t>(e)];
            auto& beta_e = t.beta[static_cast<std::size_t>(e)];
            auto& back_e = t.back_beta[static_cast<std::size_t>(e)];
            beta_e.assign(static_cast<std::size_t>(arc.a) + 1, Rational(0));
            back_e.assign(static_cast<std::size_t>(arc.a) + 1, -1);
            for (Cap l = 0; l <= arc.a; ++l) {
                Rational c = arc_cost(l, arc.p, arc.q);
                if (kids.empty()) {
                    beta_e[static_cast<std::size_t>(l)] = c;
                    continue;
                }
                const auto& last = t.alpha[static_cast<std::size_t>(node)].back();
                DpValue best = DpValue::infinity();
                Cap arg = -1;
                for (Cap k = 0; k <= b - l; ++k) {
                    const DpValue& cand = last[static_cast<std::size_t>(k)];
                    if (cand < best) {
                        best = cand;
                        arg = k;
                    }
                }
                // k = 0 is always feasible, so the minimum is finite
                beta_e[static_cast<std::size_t>(l)] = best.value() + c;
                back_e[static_cast<std::size_t>(l)] = arg;
            }
        }
    }

    if (rt.children[0].empty()) {
        t.root_value = 0;
        t.root_back = 0;
    } else {
        const auto& last = t.alpha[0].back();
        DpValue best = DpValue::infinity();
        Cap arg = -1;
        for (Cap k = 0; k <= rt.cap(0); ++k) {
            if (last[static_cast<std::size_t>(k)] < best) {
                best = last[static_cast<std::size_t>(k)];
                arg = k;
            }
        }
        t.root_value = best.value();
        t.root_back = arg;
    }

    Solution sol = recover_solution(t, rt);
    return {std::move(t), std::move(sol)};
}

// Walks the argmin back-pointers from the root downward and rebuilds the
// optimal integer flow.
inline Solution recover_solution(const DpTables& tables, const RootedTree& rt) {
    const Instance& inst = rt.instance;
    std::vector<Cap> x(inst.num_arcs(), 0);

    // (node, child position, units over that node's first pos+1 child arcs)
    std::vector<std::tuple<int, std::size_t, Cap>> stack;
    auto descend = [&](int child, Cap l) {
        if (rt.is_leaf(child)) return;
        const int e = rt.parent_arc[static_cast<std::size_t>(child)];
        Cap k = tables.back_beta.at(static_cast<std::size_t>(e)).at(static_cast<std::size_t>(l));
        if (k < 0 || k > rt.cap(child) - l)
            raise(Errc::corrupt_tables, "beta back-pointer out of range");
        stack.emplace_back(child, rt.children[static_cast<std::size_t>(child)].size() - 1, k);
    };

    if (!rt.children[0].empty()) {
        if (tables.root_back < 0 || tables.root_back > rt.cap(0))
            raise(Errc::corrupt_tables, "root back-pointer out of range");
        stack.emplace_back(0, rt.children[0].size() - 1, tables.root_back);
    }
    while (!stack.empty()) {
        auto [node, pos, k] = stack.back();
        stack.pop_back();
        const int child = rt.children[static_cast<std::size_t>(node)][pos];
        const int e = rt.parent_arc[static_cast<std::size_t>(child)];
        const Cap a = inst.arcs[static_cast<std::size_t>(e)].a;
        Cap l = 0;
        if (pos == 0) {
            l = k;
        } else {
            Cap kp = tables.back_alpha.at(static_cast<std::size_t>(node)).at(pos).at(static_cast<std::size_t>(k));
            if (kp < 0 || kp > k || k - kp > a)
                raise(Errc::corrupt_tables, "alpha back-pointer out of range");
            l = k - kp;
            stack.emplace_back(node, pos - 1, kp);
        }
        if (l > a) raise(Errc::corrupt_tables, "recovered flow exceeds arc capacity");
        x[static_cast<std::size_t>(e)] = l;
        descend(child, l);
    }

    Solution sol = solution_from_flows(inst, std::move(x));
    if (sol.objective != tables.root_value)
        raise(Errc::corrupt_tables, "recovered objective " + to_string(sol.objective) +
                                        " differs from DP value " + to_string(tables.root_value));
    return sol;
}

// Primal point of the DP dual polyhedron witnessing the cost of an integer
// flow. Keys are (arc index, k', k) for u and (arc index, l, k) for v; the
// root pseudo-arc uses arc index -1.
struct DpCertificate {
    static constexpr int kPseudoArc = -1;
    std::map<std::tuple<int, Cap, Cap>, Rational> u;
    std::map<std::tuple<int, Cap, Cap>, Rational> v;
    Rational objective;
};

// Encodes a feasible integer flow as the 0/1 point of the DP dual: child
// arcs carry prefix-sum transitions of the parent's scan, every arc's v
// records (its flow, the child-side total below it).
inline DpCertificate encode_uv(const RootedTree& rt, const std::vector<Cap>& x) {
    detail::require_default_variant(rt, "encode_uv");
    const Instance& inst = rt.instance;
    if (x.size() != inst.num_arcs()) raise(Errc::infeasible_flow, "flow vector length differs");
    {
        Solution probe = solution_from_flows(inst, x);
        if (!validate_solution(inst, probe).empty())
            raise(Errc::infeasible_flow, "flow violates instance constraints");
    }

    DpCertificate cert;
    cert.objective = 0;
    const int n = rt.num_nodes();
    std::vector<Cap> child_total(static_cast<std::size_t>(n), 0);
    for (int node = 0; node < n; ++node) {
        Cap prefix = 0;
        for (int child : rt.children[static_cast<std::size_t>(node)]) {
            const int e = rt.parent_arc[static_cast<std::size_t>(child)];
            Cap l = x[static_cast<std::size_t>(e)];
            cert.u[{e, prefix, prefix + l}] = 1;
            prefix += l;
        }
        child_total[static_cast<std::size_t>(node)] = prefix;
    }
    for (int child = 1; child < n; ++child) {
        const int e = rt.parent_arc[static_cast<std::size_t>(child)];
        const Arc& arc = inst.arcs[static_cast<std::size_t>(e)];
        Cap l = x[static_cast<std::size_t>(e)];
        cert.v[{e, l, child_total[static_cast<std::size_t>(child)]}] = 1;
        cert.objective += arc_cost(l, arc.p, arc.q);
    }
    cert.v[{DpCertificate::kPseudoArc, 0, child_total[0]}] = 1;
    return cert;
}

// Verifies that the DP tables, with infeasible cells replaced by explicit
// large finite values, satisfy every inequality of the DP's LP form. Together
// with an encode_uv point of equal objective this certifies that the DP value
// is the exact optimum of the dual polyhedron's LP relaxation.
inline bool dp_tables_lp_feasible(const RootedTree& rt, const DpTables& t) {
    const Instance& inst = rt.instance;
    const int n = rt.num_nodes();

    Rational big = 1;
    for (const Arc& arc : inst.arcs) {
        Rational c1 = abs(arc.p + arc.q);
        Rational ca = abs(arc.p * arc.a + arc.q);
        big += c1 < ca ? ca : c1;
    }
    const Rational two_c = 2 * big;

    // substitute: infeasible alpha[i][t][k] := (t_i - t) * 2C, so values fall
    // by 2C per position and every finite row stays slack
    auto alpha_hat = [&](int node, std::size_t pos, Cap k) -> Rational {
        const DpValue& cell = t.alpha[static_cast<std::size_t>(node)][pos][static_cast<std::size_t>(k)];
        if (cell.finite()) return cell.value();
        auto t_i = static_cast<Cap>(rt.children[static_cast<std::size_t>(node)].size());
        return two_c * (t_i - static_cast<Cap>(pos));
    };

    for (int node = 0; node < n; ++node) {
        const auto& kids = rt.children[static_cast<std::size_t>(node)];
        const Cap b = rt.cap(node);
        for (std::size_t pos = 0; pos < kids.size(); ++pos) {
            const int e = rt.parent_arc[static_cast<std::size_t>(kids[pos])];
            const Cap a = inst.arcs[static_cast<std::size_t>(e)].a;
            const auto& beta_e = t.beta[static_cast<std::size_t>(e)];
            for (Cap k = 0; k <= b; ++k) {
                if (pos == 0) {
                    if (k <= a && alpha_hat(node, pos, k) > beta_e[static_cast<std::size_t>(k)]) return false;
                    continue;
                }
                Cap lo = k > a ? k - a : 0;
                for (Cap kp = lo; kp <= k; ++kp)
                    if (alpha_hat(node, pos, k) >
                        alpha_hat(node, pos - 1, kp) + beta_e[static_cast<std::size_t>(k - kp)])
                        return false;
            }
        }
    }
    for (int child = 1; child < n; ++child) {
        const int e = rt.parent_arc[static_cast<std::size_t>(child)];
        const Arc& arc = inst.arcs[static_cast<std::size_t>(e)];
        const auto& beta_e = t.beta[static_cast<std::size_t>(e)];
        const auto& kids = rt.children[static_cast<std::size_t>(child)];
        for (Cap l = 0; l <= arc.a; ++l) {
            Rational c = arc_cost(l, arc.p, arc.q);
            if (kids.empty()) {
                if (beta_e[static_cast<std::size_t>(l)] > c) return false;
                continue;
            }
            for (Cap k = 0; k <= rt.cap(child) - l; ++k)
                if (beta_e[static_cast<std::size_t>(l)] > alpha_hat(child, kids.size() - 1, k) + c)
                    return false;
        }
    }
    if (!rt.children[0].empty()) {
        for (Cap k = 0; k <= rt.cap(0); ++k)
            if (t.root_value > alpha_hat(0, rt.children[0].size() - 1, k)) return false;
    } else if (t.root_value != 0) {
        return false;
    }
    return true;
}

}  // namespace fctp
