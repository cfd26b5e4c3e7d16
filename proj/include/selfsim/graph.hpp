#pragma once

// The directed overlap graph on the uncovered words V = Omega^n0 \ W^n0:
// an edge i -> j exists when the (n0-1)-suffix of i equals the
// (n0-1)-prefix of j. For n0 = 1 the overlap is the empty word, so the
// condition holds vacuously and the graph is complete with self-loops.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "selfsim/errors.hpp"
#include "selfsim/words.hpp"

namespace selfsim {

struct OverlapGraph {
    int n0 = 0;
    int N = 0;
    std::vector<std::uint32_t> verts;            // word indices, ascending (= lexicographic)
    std::vector<std::vector<std::uint32_t>> adj; // successor positions into verts

    std::size_t vertex_count() const { return verts.size(); }

    std::size_t edge_count() const
    {
        std::size_t e = 0;
        for (const auto& a : adj)
            e += a.size();
        return e;
    }

    Word vertex_word(std::size_t pos) const { return word_from_index(verts[pos], n0, N); }
};

inline OverlapGraph build_graph(const WordSet& V)
{
    OverlapGraph g;
    g.n0 = V.level();
    g.N = V.alphabet_max();
    if (g.n0 < 1)
        fail(Errc::internal, "overlap graph needs level >= 1");
    g.verts = V.members();

    std::size_t overlap_slots = 1;
    for (int i = 0; i < g.n0 - 1; ++i)
        overlap_slots *= static_cast<std::size_t>(g.N + 1);

    // Bucket vertices by their (n0-1)-prefix; successors of i are exactly
    // the bucket of i's (n0-1)-suffix.
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> by_prefix;
    for (std::uint32_t pos = 0; pos < g.verts.size(); ++pos) {
        std::uint32_t prefix = g.verts[pos] / static_cast<std::uint32_t>(g.N + 1);
        by_prefix[prefix].push_back(pos);
    }
    g.adj.resize(g.verts.size());
    for (std::uint32_t pos = 0; pos < g.verts.size(); ++pos) {
        std::uint32_t suffix = static_cast<std::uint32_t>(g.verts[pos] % overlap_slots);
        auto it = by_prefix.find(suffix);
        if (it != by_prefix.end())
            g.adj[pos] = it->second; // bucket entries are already ascending
    }
    return g;
}

// Deterministic three-color depth-first search in lexicographic vertex
// order. Returns a closed walk (first == last) when a cycle exists.
inline std::optional<std::vector<std::uint32_t>> has_cycle(const OverlapGraph& g)
{
    enum : unsigned char { white, gray, black };
    std::vector<unsigned char> color(g.verts.size(), white);
    std::vector<std::uint32_t> path;

    struct Frame {
        std::uint32_t pos;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;

    for (std::uint32_t root = 0; root < g.verts.size(); ++root) {
        if (color[root] != white)
            continue;
        stack.push_back({ root, 0 });
        color[root] = gray;
        path.push_back(root);
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < g.adj[f.pos].size()) {
                std::uint32_t succ = g.adj[f.pos][f.next++];
                if (color[succ] == gray) {
                    auto it = std::find(path.begin(), path.end(), succ);
                    std::vector<std::uint32_t> cycle(it, path.end());
                    cycle.push_back(succ);
                    for (std::uint32_t& p : cycle)
                        p = g.verts[p];
                    return cycle;
                }
                if (color[succ] == white) {
                    color[succ] = gray;
                    path.push_back(succ);
                    stack.push_back({ succ, 0 });
                }
            } else {
                color[f.pos] = black;
                path.pop_back();
                stack.pop_back();
            }
        }
    }
    return std::nullopt;
}

// Length in edges of the longest directed path; requires an acyclic graph.
inline int longest_path_length(const OverlapGraph& g)
{
    std::vector<std::size_t> indeg(g.verts.size(), 0);
    for (const auto& succs : g.adj)
        for (std::uint32_t s : succs)
            ++indeg[s];
    std::vector<std::uint32_t> order;
    order.reserve(g.verts.size());
    for (std::uint32_t pos = 0; pos < g.verts.size(); ++pos)
        if (indeg[pos] == 0)
            order.push_back(pos);
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (std::uint32_t s : g.adj[order[head]])
            if (--indeg[s] == 0)
                order.push_back(s);
    }
    if (order.size() != g.verts.size())
        fail(Errc::has_cycle, "longest path undefined on a cyclic graph");

    int best = 0;
    std::vector<int> dist(g.verts.size(), 0); // longest path ending at vertex
    for (std::uint32_t pos : order) {
        for (std::uint32_t s : g.adj[pos]) {
            dist[s] = std::max(dist[s], dist[pos] + 1);
            best = std::max(best, dist[s]);
        }
    }
    return best;
}

} // namespace selfsim
