#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/instance.hpp"
#include "fctp/model.hpp"
#include "fctp/tree.hpp"
#include "fctp/tree_dp.hpp"

namespace fctp {

namespace detail {

inline RowSense row_sense(Sense s) { return s == Sense::EQ ? RowSense::EQ : RowSense::LE; }

inline std::string cap_row_name(int v) { return "cap_" + std::to_string(v); }

// Per-node capacity rows over the incident x variables, in arc-index order.
inline void add_cap_rows(Model& m, const Instance& inst, const std::vector<int>& x_var) {
    for (int v = 1; v <= inst.num_nodes(); ++v) {
        ModelRow& row = m.add_row(cap_row_name(v), row_sense(inst.variant.sense_of(v)),
                                  Rational(inst.node_cap(v)));
        for (std::size_t e = 0; e < inst.arcs.size(); ++e)
            if (inst.arcs[e].i == v || inst.arcs[e].j == v) add_term(row, x_var[e], 1);
    }
}

}  // namespace detail

// Mixed-binary formulation: x_ij in [0, a_ij], y_ij binary, per-node
// capacity rows with the variant's sense, x_ij <= a_ij * y_ij, and
// optionally y_ij <= x_ij.
inline Model build_ip(const Instance& inst) {
    Model m;
    m.formulation = "ip";
    m.fingerprint = instance_fingerprint(inst);
    m.metadata.emplace_back("formulation", m.formulation);
    m.metadata.emplace_back("instance", m.fingerprint);

    std::vector<int> x_var, y_var;
    for (const Arc& arc : inst.arcs)
        x_var.push_back(m.add_var(x_name(arc.i, arc.j), Rational(0), Rational(arc.a),
                                  VarKind::Continuous));
    for (const Arc& arc : inst.arcs)
        y_var.push_back(m.add_var(y_name(arc.i, arc.j), Rational(0), Rational(1), VarKind::Binary));

    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        m.add_objective_term(x_var[e], inst.arcs[e].p);
        m.add_objective_term(y_var[e], inst.arcs[e].q);
    }

    detail::add_cap_rows(m, inst, x_var);
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        ModelRow& row = m.add_row("ub_" + std::to_string(arc.i) + "_" + std::to_string(arc.j),
                                  RowSense::LE, Rational(0));
        add_term(row, x_var[e], 1);
        add_term(row, y_var[e], Rational(-arc.a));
    }
    if (inst.variant.link_lower) {
        for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
            const Arc& arc = inst.arcs[e];
            ModelRow& row = m.add_row("lb_" + std::to_string(arc.i) + "_" + std::to_string(arc.j),
                                      RowSense::LE, Rational(0));
            add_term(row, y_var[e], 1);
            add_term(row, x_var[e], -1);
        }
    }
    return m;
}

// Unary expansion: binaries z_ijl (l = 0..a_ij) with
//   sum_l l * z_ijl = x_ij,  sum_{l>=1} z_ijl <= y_ij,  sum_l z_ijl = 1.
inline Model build_ip_z(const Instance& inst) {
    Model m = build_ip(inst);
    m.formulation = "ipz";
    m.metadata[0].second = m.formulation;

    std::vector<std::vector<int>> z_var(inst.arcs.size());
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        for (Cap l = 0; l <= arc.a; ++l)
            z_var[e].push_back(m.add_var(z_name(arc.i, arc.j, l), Rational(0), Rational(1),
                                         VarKind::Binary));
    }

    // zsum rows come first so every z appears in index order on first use.
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        std::string suffix = std::to_string(arc.i) + "_" + std::to_string(arc.j);
        ModelRow& row = m.add_row("zsum_" + suffix, RowSense::EQ, Rational(1));
        for (Cap l = 0; l <= arc.a; ++l) add_term(row, z_var[e][static_cast<std::size_t>(l)], 1);
    }
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        std::string suffix = std::to_string(arc.i) + "_" + std::to_string(arc.j);
        ModelRow& row = m.add_row("xz_" + suffix, RowSense::EQ, Rational(0));
        for (Cap l = 1; l <= arc.a; ++l)
            add_term(row, z_var[e][static_cast<std::size_t>(l)], Rational(l));
        add_term(row, m.var_index(x_name(arc.i, arc.j)), -1);
    }
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        std::string suffix = std::to_string(arc.i) + "_" + std::to_string(arc.j);
        ModelRow& row = m.add_row("yz_" + suffix, RowSense::LE, Rational(0));
        for (Cap l = 1; l <= arc.a; ++l) add_term(row, z_var[e][static_cast<std::size_t>(l)], 1);
        add_term(row, m.var_index(y_name(arc.i, arc.j)), -1);
    }
    return m;
}

namespace detail {

// Index ranges shared by the scan formulations. For the first child of a
// node only prefix 0 exists; a leaf's parent block has prefix 0 only; the
// root's pseudo-arc has capacity 0, collapsing its block to the diagonal.
struct ScanRange {
    Cap kp_max;   // largest admissible k'
    Cap step;     // largest k - k'
    Cap k_cap;    // upper bound on k
};

inline ScanRange child_block_range(const RootedTree& rt, int node_bfs, int pos) {
    int child = rt.children[static_cast<std::size_t>(node_bfs)][static_cast<std::size_t>(pos)];
    Cap a = rt.instance.arcs[static_cast<std::size_t>(rt.parent_arc[static_cast<std::size_t>(child)])].a;
    Cap b = rt.cap(node_bfs);
    return {pos == 0 ? 0 : b, a, b};
}

inline ScanRange parent_block_range(const RootedTree& rt, int node_bfs) {
    Cap b = rt.cap(node_bfs);
    if (node_bfs == 0) return {b, 0, b};
    Cap a = rt.instance.arcs[static_cast<std::size_t>(rt.parent_arc[static_cast<std::size_t>(node_bfs)])].a;
    return {rt.is_leaf(node_bfs) ? 0 : b, a, b};
}

template <typename Fn>
inline void for_each_pair(const ScanRange& r, Fn&& fn) {
    for (Cap kp = 0; kp <= r.kp_max; ++kp)
        for (Cap k = kp; k <= std::min(kp + r.step, r.k_cap); ++k) fn(kp, k);
}

}  // namespace detail

// LP dual of the tree DP recursion. Default variant only; the root carries
// pseudo-arc (0, root) with capacity 0, so its v block has l = 0 only.
inline Model build_qdp(const RootedTree& rt) {
    detail::require_default_variant(rt, "build_qdp");
    const Instance& inst = rt.instance;
    Model m;
    m.formulation = "qdp";
    m.fingerprint = instance_fingerprint(inst);
    m.metadata.emplace_back("formulation", m.formulation);
    m.metadata.emplace_back("instance", m.fingerprint);
    m.metadata.emplace_back("projection_x", "x_i_j = sum over l,k of l * v_i_j_l_k");
    m.metadata.emplace_back("projection_y", "y_i_j = sum over l >= 1, k of v_i_j_l_k");

    int root_orig = rt.orig_id(0);
    Cap b_root = rt.cap(0);
    bool root_leaf = rt.is_leaf(0);
    for (Cap k = 0; k <= (root_leaf ? 0 : b_root); ++k)
        m.add_var(v_name(0, root_orig, 0, k), Rational(0), std::nullopt, VarKind::Continuous);

    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        int child = rt.child_of_arc(static_cast<int>(e));
        int parent = rt.parent[static_cast<std::size_t>(child)];
        int pi = rt.orig_id(parent);
        int pj = rt.orig_id(child);
        int pos = rt.child_pos(child);
        Cap a = inst.arcs[e].a;
        Cap b_parent = rt.cap(parent);
        for (Cap kp = 0; kp <= (pos == 0 ? 0 : b_parent); ++kp)
            for (Cap k = kp; k <= std::min(kp + a, b_parent); ++k)
                m.add_var(u_name(pi, pj, kp, k), Rational(0), std::nullopt, VarKind::Continuous);
        Cap k_hi = rt.is_leaf(child) ? 0 : rt.cap(child);
        for (Cap l = 0; l <= a; ++l)
            for (Cap k = 0; k <= k_hi - (rt.is_leaf(child) ? 0 : l); ++k) {
                int idx = m.add_var(v_name(pi, pj, l, k), Rational(0), std::nullopt,
                                    VarKind::Continuous);
                m.add_objective_term(idx, arc_cost(l, inst.arcs[e].p, inst.arcs[e].q));
            }
    }

    // dual_flowuv: the k-th scan state of arc (i,j) flows into the next
    // sibling's block, or into the parent-side v block after the last child.
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        int child = rt.child_of_arc(static_cast<int>(e));
        int parent = rt.parent[static_cast<std::size_t>(child)];
        int pi = rt.orig_id(parent);
        int pj = rt.orig_id(child);
        int pos = rt.child_pos(child);
        Cap a = inst.arcs[e].a;
        Cap b_parent = rt.cap(parent);
        const auto& siblings = rt.children[static_cast<std::size_t>(parent)];
        for (Cap k = 0; k <= b_parent; ++k) {
            ModelRow& row = m.add_row(
                "flow_" + std::to_string(pi) + "_" + std::to_string(pj) + "_" + std::to_string(k),
                RowSense::EQ, Rational(0));
            Cap kp_lo = pos == 0 ? 0 : std::max<Cap>(0, k - a);
            Cap kp_hi = pos == 0 ? 0 : k;
            for (Cap kp = kp_lo; kp <= kp_hi; ++kp)
                if (k - kp <= a) add_term(row, m.var_index(u_name(pi, pj, kp, k)), 1);
            if (pos + 1 < static_cast<int>(siblings.size())) {
                int nxt = siblings[static_cast<std::size_t>(pos) + 1];
                int nj = rt.orig_id(nxt);
                Cap na = inst.arcs[static_cast<std::size_t>(rt.parent_arc[static_cast<std::size_t>(nxt)])].a;
                for (Cap kk = k; kk <= std::min(k + na, b_parent); ++kk)
                    add_term(row, m.var_index(u_name(pi, nj, k, kk)), -1);
            } else if (parent == 0) {
                add_term(row, m.var_index(v_name(0, pi, 0, k)), -1);
            } else {
                int gp = rt.orig_id(rt.parent[static_cast<std::size_t>(parent)]);
                Cap pa = inst.arcs[static_cast<std::size_t>(
                                       rt.parent_arc[static_cast<std::size_t>(parent)])].a;
                for (Cap l = 0; l <= std::min(pa, b_parent - k); ++l)
                    add_term(row, m.var_index(v_name(gp, pi, l, k)), -1);
            }
        }
    }
    // dual_revuv: v mass of arc (i,j) at level l equals the u mass with
    // increment l.
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        int child = rt.child_of_arc(static_cast<int>(e));
        int parent = rt.parent[static_cast<std::size_t>(child)];
        int pi = rt.orig_id(parent);
        int pj = rt.orig_id(child);
        int pos = rt.child_pos(child);
        Cap a = inst.arcs[e].a;
        Cap b_parent = rt.cap(parent);
        Cap k_hi = rt.is_leaf(child) ? 0 : rt.cap(child);
        for (Cap l = 0; l <= a; ++l) {
            ModelRow& row = m.add_row(
                "rev_" + std::to_string(pi) + "_" + std::to_string(pj) + "_" + std::to_string(l),
                RowSense::EQ, Rational(0));
            for (Cap k = 0; k <= k_hi - (rt.is_leaf(child) ? 0 : l); ++k)
                add_term(row, m.var_index(v_name(pi, pj, l, k)), 1);
            for (Cap kp = 0; kp <= (pos == 0 ? 0 : b_parent - l); ++kp)
                if (kp + l <= b_parent) add_term(row, m.var_index(u_name(pi, pj, kp, kp + l)), -1);
        }
    }
    {
        ModelRow& row = m.add_row("unit", RowSense::EQ, Rational(1));
        for (Cap k = 0; k <= (root_leaf ? 0 : b_root); ++k)
            add_term(row, m.var_index(v_name(0, root_orig, 0, k)), 1);
    }
    return m;
}

// Scan formulation: one block of f variables per (node, neighbor) in scan
// order (children first, then the parent; the root scans pseudo-arc (1,0)).
// with_z replaces the direct link rows by two rows sharing a continuous z.
inline Model build_qsn(const RootedTree& rt, bool with_z) {
    detail::require_default_variant(rt, "build_qsn");
    const Instance& inst = rt.instance;
    Model m;
    m.formulation = with_z ? "qsnz" : "qsn";
    m.fingerprint = instance_fingerprint(inst);
    m.metadata.emplace_back("formulation", m.formulation);
    m.metadata.emplace_back("instance", m.fingerprint);
    m.metadata.emplace_back("projection_x", "x_i_j = sum over k',k of (k - k') * f_i_j_k'_k");
    m.metadata.emplace_back("projection_y", "y_i_j = sum over k' < k of f_i_j_k'_k");

    for (int node = 0; node < rt.num_nodes(); ++node) {
        int oi = rt.orig_id(node);
        const auto& kids = rt.children[static_cast<std::size_t>(node)];
        for (std::size_t pos = 0; pos < kids.size(); ++pos) {
            int oc = rt.orig_id(kids[pos]);
            detail::for_each_pair(detail::child_block_range(rt, node, static_cast<int>(pos)),
                                  [&](Cap kp, Cap k) {
                                      m.add_var(f_name(oi, oc, kp, k), Rational(0), std::nullopt,
                                                VarKind::Continuous);
                                  });
        }
        int op = node == 0 ? 0 : rt.orig_id(rt.parent[static_cast<std::size_t>(node)]);
        detail::for_each_pair(detail::parent_block_range(rt, node), [&](Cap kp, Cap k) {
            int idx = m.add_var(f_name(oi, op, kp, k), Rational(0), std::nullopt,
                                VarKind::Continuous);
            if (node != 0) {
                std::size_t e = static_cast<std::size_t>(rt.parent_arc[static_cast<std::size_t>(node)]);
                m.add_objective_term(idx, arc_cost(k - kp, inst.arcs[e].p, inst.arcs[e].q));
            }
        });
    }
    std::vector<std::vector<int>> z_var;
    if (with_z) {
        z_var.resize(inst.arcs.size());
        for (std::size_t e = 0; e < inst.arcs.size(); ++e)
            for (Cap l = 0; l <= inst.arcs[e].a; ++l)
                z_var[e].push_back(m.add_var(z_name(inst.arcs[e].i, inst.arcs[e].j, l), Rational(0),
                                             Rational(1), VarKind::Continuous));
    }

    for (int node = 0; node < rt.num_nodes(); ++node) {
        int oi = rt.orig_id(node);
        Cap b = rt.cap(node);
        const auto& kids = rt.children[static_cast<std::size_t>(node)];
        for (std::size_t pos = 0; pos < kids.size(); ++pos) {
            int oc = rt.orig_id(kids[pos]);
            detail::ScanRange cur = detail::child_block_range(rt, node, static_cast<int>(pos));
            for (Cap k = 0; k <= b; ++k) {
                ModelRow& row = m.add_row("flow_" + std::to_string(oi) + "_" + std::to_string(oc) +
                                              "_" + std::to_string(k),
                                          RowSense::EQ, Rational(0));
                for (Cap kp = std::max<Cap>(0, k - cur.step); kp <= std::min(cur.kp_max, k); ++kp)
                    add_term(row, m.var_index(f_name(oi, oc, kp, k)), 1);
                if (pos + 1 < kids.size()) {
                    int on = rt.orig_id(kids[pos + 1]);
                    detail::ScanRange nxt =
                        detail::child_block_range(rt, node, static_cast<int>(pos) + 1);
                    for (Cap kk = k; kk <= std::min(k + nxt.step, b); ++kk)
                        add_term(row, m.var_index(f_name(oi, on, k, kk)), -1);
                } else {
                    int op = node == 0 ? 0 : rt.orig_id(rt.parent[static_cast<std::size_t>(node)]);
                    detail::ScanRange par = detail::parent_block_range(rt, node);
                    for (Cap kk = k; kk <= std::min(k + par.step, b); ++kk)
                        add_term(row, m.var_index(f_name(oi, op, k, kk)), -1);
                }
            }
        }
        int op = node == 0 ? 0 : rt.orig_id(rt.parent[static_cast<std::size_t>(node)]);
        ModelRow& unit = m.add_row("unit_" + std::to_string(oi), RowSense::EQ, Rational(1));
        detail::for_each_pair(detail::parent_block_range(rt, node), [&](Cap kp, Cap k) {
            add_term(unit, m.var_index(f_name(oi, op, kp, k)), 1);
        });
    }

    // Link rows couple the two endpoint scans of each real arc level by level.
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        int child = rt.child_of_arc(static_cast<int>(e));
        int parent = rt.parent[static_cast<std::size_t>(child)];
        int pi = rt.orig_id(parent);
        int pj = rt.orig_id(child);
        Cap a = inst.arcs[e].a;
        int pos = rt.child_pos(child);
        detail::ScanRange down = detail::child_block_range(rt, parent, pos);
        detail::ScanRange up = detail::parent_block_range(rt, child);
        std::string suffix = std::to_string(pi) + "_" + std::to_string(pj) + "_";
        for (Cap l = 0; l <= a; ++l) {
            auto add_level = [&](ModelRow& row, const detail::ScanRange& r, int a_id, int b_id,
                                 Rational coef) {
                for (Cap kp = 0; kp <= r.kp_max; ++kp)
                    if (kp + l <= r.k_cap && l <= r.step)
                        add_term(row, m.var_index(f_name(a_id, b_id, kp, kp + l)), coef);
            };
            if (with_z) {
                ModelRow& r1 = m.add_row("link1_" + suffix + std::to_string(l), RowSense::EQ,
                                         Rational(0));
                add_level(r1, down, pi, pj, 1);
                add_term(r1, z_var[e][static_cast<std::size_t>(l)], -1);
                ModelRow& r2 = m.add_row("link2_" + suffix + std::to_string(l), RowSense::EQ,
                                         Rational(0));
                add_level(r2, up, pj, pi, 1);
                add_term(r2, z_var[e][static_cast<std::size_t>(l)], -1);
            } else {
                ModelRow& row = m.add_row("link_" + suffix + std::to_string(l), RowSense::EQ,
                                          Rational(0));
                add_level(row, down, pi, pj, 1);
                add_level(row, up, pj, pi, -1);
            }
        }
    }
    return m;
}

// Integral solution as a sparse point of build_ip / build_ip_z space; the
// unary levels put all mass on z_{ij,x_ij}.
inline Assignment solution_assignment(const Instance& inst, const Solution& sol, bool with_z) {
    Assignment pt;
    pt.claims_integrality = true;
    for (std::size_t e = 0; e < inst.arcs.size(); ++e) {
        const Arc& arc = inst.arcs[e];
        pt.set(x_name(arc.i, arc.j), Rational(sol.x[e]));
        pt.set(y_name(arc.i, arc.j), Rational(sol.y[e]));
        if (with_z) pt.set(z_name(arc.i, arc.j, sol.x[e]), 1);
    }
    return pt;
}

// Names a DP dual certificate in build_qdp's variable grammar so it can be
// checked or serialized.
inline Assignment certificate_assignment(const RootedTree& rt, const DpCertificate& cert) {
    Assignment pt;
    auto arc_pair = [&rt](int e) {
        if (e == DpCertificate::kPseudoArc) return std::pair<int, int>{0, rt.orig_id(0)};
        int child = rt.child_of_arc(e);
        return std::pair<int, int>{rt.orig_id(rt.parent[static_cast<std::size_t>(child)]),
                                   rt.orig_id(child)};
    };
    for (const auto& [key, val] : cert.u) {
        auto [pi, pj] = arc_pair(std::get<0>(key));
        pt.set(u_name(pi, pj, std::get<1>(key), std::get<2>(key)), val);
    }
    for (const auto& [key, val] : cert.v) {
        auto [pi, pj] = arc_pair(std::get<0>(key));
        pt.set(v_name(pi, pj, std::get<1>(key), std::get<2>(key)), val);
    }
    return pt;
}

}  // namespace fctp
