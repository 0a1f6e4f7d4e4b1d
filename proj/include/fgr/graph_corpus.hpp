#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fgr/embedding.hpp"
#include "fgr/perm.hpp"

namespace fgr {

/// Edge list over vertices 0..v-1; loops and parallel edges allowed.
using EdgeList = std::vector<std::pair<int, int>>;

/// Turns an edge list into a graph: edge i owns half-edges 2i+1 (at its first end) and
/// 2i+2 (at its second end); vertices are named v1, v2, ...
inline UnderlyingGraph graph_from_edges(int num_vertices, const EdgeList& edges) {
    std::vector<Vertex> vs(static_cast<std::size_t>(num_vertices));
    for (int i = 0; i < num_vertices; ++i)
        vs[static_cast<std::size_t>(i)].name = "v" + std::to_string(i + 1);
    std::vector<Cycle> pairs;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto a = static_cast<Label>(2 * i + 1), b = static_cast<Label>(2 * i + 2);
        vs[static_cast<std::size_t>(edges[i].first)].rotation.push_back(a);
        vs[static_cast<std::size_t>(edges[i].second)].rotation.push_back(b);
        pairs.push_back({a, b});
    }
    return {Permutation::from_cycles(2 * edges.size(), pairs), std::move(vs)};
}

namespace detail {

inline bool connected_without_isolated(int v, const EdgeList& edges) {
    std::vector<int> parent(static_cast<std::size_t>(v));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    std::vector<bool> touched(static_cast<std::size_t>(v), false);
    for (const auto& [a, b] : edges) {
        touched[static_cast<std::size_t>(a)] = touched[static_cast<std::size_t>(b)] = true;
        parent[static_cast<std::size_t>(find(a))] = find(b);
    }
    for (int i = 0; i < v; ++i)
        if (!touched[static_cast<std::size_t>(i)] || find(i) != find(0))
            return false;
    return true;
}

inline EdgeList canonical_edges(int v, const EdgeList& edges) {
    std::vector<int> perm(static_cast<std::size_t>(v));
    std::iota(perm.begin(), perm.end(), 0);
    EdgeList best;
    bool first = true;
    do {
        EdgeList relabeled;
        for (const auto& [a, b] : edges) {
            const int x = perm[static_cast<std::size_t>(a)], y = perm[static_cast<std::size_t>(b)];
            relabeled.emplace_back(std::min(x, y), std::max(x, y));
        }
        std::sort(relabeled.begin(), relabeled.end());
        if (first || relabeled < best) {
            best = std::move(relabeled);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace detail

/// Every connected multigraph (loops allowed) with exactly `num_edges` edges, one per
/// isomorphism class, as (vertex count, edge list).
inline std::vector<std::pair<int, EdgeList>> connected_multigraphs(int num_edges) {
    std::vector<std::pair<int, EdgeList>> out;
    for (int v = 1; v <= num_edges + 1; ++v) {
        std::vector<std::pair<int, int>> slots;
        for (int a = 0; a < v; ++a)
            for (int b = a; b < v; ++b)
                slots.emplace_back(a, b);
        std::set<EdgeList> seen;
        EdgeList current;
        // Multisets of edge slots, as non-decreasing index sequences.
        auto rec = [&](auto&& self, std::size_t from) -> void {
            if (static_cast<int>(current.size()) == num_edges) {
                if (!detail::connected_without_isolated(v, current))
                    return;
                EdgeList canon = detail::canonical_edges(v, current);
                if (seen.insert(canon).second)
                    out.emplace_back(v, std::move(canon));
                return;
            }
            for (std::size_t s = from; s < slots.size(); ++s) {
                current.push_back(slots[s]);
                self(self, s);
                current.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

/// All connected multigraphs with 1..max_edges edges.
inline std::vector<UnderlyingGraph> graph_corpus(int max_edges) {
    std::vector<UnderlyingGraph> out;
    for (int e = 1; e <= max_edges; ++e)
        for (const auto& [v, edges] : connected_multigraphs(e))
            out.push_back(graph_from_edges(v, edges));
    return out;
}

} // namespace fgr
