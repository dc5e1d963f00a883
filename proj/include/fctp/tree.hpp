#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fctp/errors.hpp"
#include "fctp/instance.hpp"

namespace fctp {

// A tree instance rooted at `root`, renumbered breadth-first so that each
// node's children occupy consecutive BFS numbers. All per-node arrays below
// are indexed by 0-based BFS position; original ids are kept for reporting
// and for variable naming.
struct RootedTree {
    Instance instance;
    int root = 1;

    std::vector<int> orig_of_bfs;  // BFS position -> original id
    std::vector<int> bfs_of_orig;  // original id (1-based) -> BFS position
    std::vector<int> parent;       // BFS position -> parent BFS position, -1 at root
    std::vector<std::vector<int>> children;  // BFS positions, ascending
    std::vector<int> parent_arc;   // BFS position -> instance arc index, -1 at root

    int num_nodes() const { return static_cast<int>(orig_of_bfs.size()); }
    int orig_id(int bfs) const { return orig_of_bfs[static_cast<std::size_t>(bfs)]; }
    Cap cap(int bfs) const { return instance.node_cap(orig_id(bfs)); }
    bool is_leaf(int bfs) const { return children[static_cast<std::size_t>(bfs)].empty(); }
    const Arc& arc(int arc_idx) const { return instance.arcs[static_cast<std::size_t>(arc_idx)]; }

    // 1-based BFS numbering (root = 1), used for formulation variable names.
    int bfs_number(int orig) const { return bfs_of_orig[static_cast<std::size_t>(orig)] + 1; }

    // Parent map over original ids, 0 at the root.
    int parent_of(int orig) const {
        int b = bfs_of_orig[static_cast<std::size_t>(orig)];
        int p = parent[static_cast<std::size_t>(b)];
        return p < 0 ? 0 : orig_id(p);
    }

    // Instance arc index for the (parent, child) pair, original ids.
    int arc_of(int parent_orig, int child_orig) const {
        int cb = bfs_of_orig[static_cast<std::size_t>(child_orig)];
        if (parent[static_cast<std::size_t>(cb)] < 0 ||
            orig_id(parent[static_cast<std::size_t>(cb)]) != parent_orig)
            raise(Errc::validation_error, "arc_of: not a (parent, child) pair");
        return parent_arc[static_cast<std::size_t>(cb)];
    }

    // BFS position of the child endpoint of an instance arc.
    int child_of_arc(int arc_idx) const {
        int bi = bfs_of_orig[static_cast<std::size_t>(arc(arc_idx).i)];
        int bj = bfs_of_orig[static_cast<std::size_t>(arc(arc_idx).j)];
        if (parent_arc[static_cast<std::size_t>(bi)] == arc_idx) return bi;
        if (parent_arc[static_cast<std::size_t>(bj)] == arc_idx) return bj;
        raise(Errc::corrupt_tables, "arc not on the tree");
    }

    // Position of a non-root node within its parent's child list.
    int child_pos(int child_bfs) const {
        int p = parent[static_cast<std::size_t>(child_bfs)];
        if (p < 0) raise(Errc::validation_error, "root has no child position");
        const auto& kids = children[static_cast<std::size_t>(p)];
        for (std::size_t s = 0; s < kids.size(); ++s)
            if (kids[s] == child_bfs) return static_cast<int>(s);
        raise(Errc::corrupt_tables, "child missing from parent list");
    }
};

inline RootedTree root_tree(Instance instance, int root = 1) {
    const int n = instance.num_nodes();
    if (root < 1 || root > n) raise(Errc::validation_error, "root out of range");
    if (static_cast<int>(instance.num_arcs()) != n - 1)
        raise(Errc::not_a_tree, "graph has " + std::to_string(instance.num_arcs()) + " arcs, expected " +
                                    std::to_string(n - 1));

    // adjacency with arc indices; neighbors visited in increasing original id
    std::vector<std::map<int, int>> adj(static_cast<std::size_t>(n + 1));
    for (std::size_t e = 0; e < instance.arcs.size(); ++e) {
        const Arc& a = instance.arcs[e];
        adj[static_cast<std::size_t>(a.i)].emplace(a.j, static_cast<int>(e));
        adj[static_cast<std::size_t>(a.j)].emplace(a.i, static_cast<int>(e));
    }

    RootedTree rt;
    rt.root = root;
    rt.orig_of_bfs.reserve(static_cast<std::size_t>(n));
    rt.bfs_of_orig.assign(static_cast<std::size_t>(n + 1), -1);
    rt.orig_of_bfs.push_back(root);
    rt.bfs_of_orig[static_cast<std::size_t>(root)] = 0;
    rt.parent.push_back(-1);
    rt.parent_arc.push_back(-1);
    for (int head = 0; head < static_cast<int>(rt.orig_of_bfs.size()); ++head) {
        int u = rt.orig_of_bfs[static_cast<std::size_t>(head)];
        for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
            if (rt.bfs_of_orig[static_cast<std::size_t>(v)] >= 0) continue;
            rt.bfs_of_orig[static_cast<std::size_t>(v)] = static_cast<int>(rt.orig_of_bfs.size());
            rt.orig_of_bfs.push_back(v);
            rt.parent.push_back(head);
            rt.parent_arc.push_back(e);
        }
    }
    if (static_cast<int>(rt.orig_of_bfs.size()) != n)
        raise(Errc::not_a_tree, "graph is disconnected");

    rt.children.assign(static_cast<std::size_t>(n), {});
    for (int v = 1; v < n; ++v)
        rt.children[static_cast<std::size_t>(rt.parent[static_cast<std::size_t>(v)])].push_back(v);
    rt.instance = std::move(instance);
    return rt;
}

inline bool is_tree(const Instance& instance) {
    try {
        root_tree(instance, 1);
        return true;
    } catch (const Error& e) {
        if (e.code() == Errc::not_a_tree) return false;
        throw;
    }
}

}  // namespace fctp
