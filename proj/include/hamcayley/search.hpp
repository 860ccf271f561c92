/*
   Copyright 2026 The hamcayley Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "graph.hpp"

namespace hamcayley {

enum class SearchStatus { found, no_cycle, timeout };

constexpr std::string_view to_string(SearchStatus s) noexcept {
    switch (s) {
        case SearchStatus::found: return "Found";
        case SearchStatus::no_cycle: return "NoCycle";
        case SearchStatus::timeout: return "Timeout";
    }
    return "?";
}

struct SearchResult {
    SearchStatus status = SearchStatus::no_cycle;
    std::optional<Walk> walk;
    std::uint64_t expansions = 0;
};

/// Backtracking hamiltonian-cycle search from vertex 0. Moves go toward the
/// neighbour with the fewest unvisited neighbours; ties are broken by a seeded
/// random vertex priority, then by label priority (seed 0 keeps arc order). A branch is cut when an
/// unvisited vertex is left with fewer than two possible path neighbours or the
/// start vertex can no longer be re-entered. `budget` caps node expansions.
template <ArcGraph G>
SearchResult ham_search(const G& graph, std::uint64_t budget, std::uint64_t seed = 0) {
    const std::size_t n = graph.vertex_count();
    SearchResult result;
    if (n == 0) return result;

    // label priority, indexed by label value + max_index
    int max_index = 0;
    for (Vertex v = 0; v < n; ++v)
        for (const Arc& a : graph.arcs(v)) max_index = std::max(max_index, a.label.index());
    std::vector<int> rank(2 * static_cast<std::size_t>(max_index) + 1, 0);
    std::vector<std::uint32_t> vprio(n, 0);
    {
        std::vector<int> order;
        for (Vertex v = 0; v < n; ++v)
            for (const Arc& a : graph.arcs(v))
                if (std::find(order.begin(), order.end(), a.label.value) == order.end()) order.push_back(a.label.value);
        if (seed != 0) {
            std::mt19937_64 rng(seed);
            std::shuffle(order.begin(), order.end(), rng);
            for (auto& x : vprio) x = static_cast<std::uint32_t>(rng());
        }
        for (std::size_t i = 0; i < order.size(); ++i) rank[order[i] + max_index] = static_cast<int>(i);
    }
    auto rank_of = [&](Label l) { return rank[l.value + max_index]; };

    if (n <= 2) {
        // needs a loop (n = 1) or two distinct parallel arcs (n = 2)
        const Vertex target = n == 1 ? 0 : 1;
        std::vector<Label> via;
        for (const Arc& a : graph.arcs(0))
            if (a.to == target) via.push_back(a.label);
        result.expansions = 1;
        if (n == 1 && !via.empty()) {
            result.status = SearchStatus::found;
            result.walk = Walk{0, {via.front()}};
        } else if (n == 2 && via.size() >= 2) {
            result.status = SearchStatus::found;
            result.walk = Walk{0, {via[0], via[1].inverse()}};
        }
        return result;
    }

    // simple-graph view: distinct neighbours, first (best-ranked) label for each
    std::vector<std::vector<std::pair<Vertex, Label>>> adj(n);
    std::vector<char> adjm(n * n, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (const Arc& a : graph.arcs(v)) {
            if (a.to == v) continue;
            auto it = std::find_if(adj[v].begin(), adj[v].end(), [&](const auto& e) { return e.first == a.to; });
            if (it == adj[v].end())
                adj[v].push_back({a.to, a.label});
            else if (rank_of(a.label) < rank_of(it->second))
                it->second = a.label;
            adjm[v * n + a.to] = 1;
            adjm[a.to * n + v] = 1;
        }
    }
    // arcs may be one-directional in a multigraph view; make adjacency symmetric
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u = 0; u < n; ++u)
            if (adjm[v * n + u] && u != v &&
                std::none_of(adj[v].begin(), adj[v].end(), [&](const auto& e) { return e.first == u; })) {
                for (const auto& e : adj[u])
                    if (e.first == v) {
                        adj[v].push_back({u, e.second.inverse()});
                        break;
                    }
            }

    const Vertex start = 0;
    std::vector<char> visited(n, 0);
    std::vector<int> free_deg(n, 0);
    for (Vertex v = 0; v < n; ++v) free_deg[v] = static_cast<int>(adj[v].size());
    auto visit = [&](Vertex v) {
        visited[v] = 1;
        for (const auto& e : adj[v]) --free_deg[e.first];
    };
    auto unvisit = [&](Vertex v) {
        visited[v] = 0;
        for (const auto& e : adj[v]) ++free_deg[e.first];
    };
    auto adjacent = [&](Vertex a, Vertex b) { return adjm[a * n + b] != 0; };

    struct Frame {
        Vertex v;
        std::vector<std::pair<Vertex, Label>> cands;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    stack.reserve(n);
    std::vector<Label> labels;
    std::size_t depth = 1;  // vertices on the path

    // candidate moves out of the current endpoint; empty when the branch is dead
    auto candidates = [&](Vertex cur, std::vector<std::pair<Vertex, Label>>& out) {
        out.clear();
        const std::size_t remaining = n - depth;
        if (remaining > 0 && free_deg[start] == 0) return;
        std::optional<std::pair<Vertex, Label>> forced;
        for (const auto& e : adj[cur]) {
            if (visited[e.first]) continue;
            const int others = free_deg[e.first] + (adjacent(e.first, start) && e.first != start ? 1 : 0);
            if (others == 0 && remaining > 1) return;  // dead end vertex
            if (others == 1 && remaining > 1) {
                if (forced) return;  // two vertices each needing to be next
                forced = e;
            }
        }
        if (forced) {
            out.push_back(*forced);
            return;
        }
        for (const auto& e : adj[cur])
            if (!visited[e.first]) out.push_back(e);
        std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
            if (free_deg[a.first] != free_deg[b.first]) return free_deg[a.first] < free_deg[b.first];
            if (vprio[a.first] != vprio[b.first]) return vprio[a.first] < vprio[b.first];
            return rank_of(a.second) < rank_of(b.second);
        });
    };

    // the vertex just left must keep two possible neighbours for all its unvisited neighbours
    auto consistent_after = [&](Vertex left, Vertex now) {
        for (const auto& e : adj[left]) {
            const Vertex x = e.first;
            if (visited[x]) continue;
            const int avail = free_deg[x] + (adjacent(x, now) ? 1 : 0) + (adjacent(x, start) ? 1 : 0);
            if (avail < 2) return false;
        }
        return true;
    };

    visit(start);
    stack.push_back(Frame{start, {}, 0});
    candidates(start, stack.back().cands);
    result.expansions = 1;

    while (!stack.empty()) {
        Frame& top = stack.back();
        if (depth == n) {
            const Vertex last = top.v;
            for (const auto& e : adj[last])
                if (e.first == start) {
                    labels.push_back(e.second);
                    result.status = SearchStatus::found;
                    result.walk = Walk{start, labels};
                    const Verdict check = verify_hamiltonian(graph, *result.walk);
                    if (!check.ok()) throw Error(ErrorCode::NotHamiltonian, "search produced an invalid cycle");
                    return result;
                }
        }
        if (depth == n || top.next >= top.cands.size()) {
            unvisit(top.v);
            stack.pop_back();
            --depth;
            if (!labels.empty()) labels.pop_back();
            continue;
        }
        const auto [u, l] = top.cands[top.next++];
        if (visited[u]) continue;
        if (result.expansions >= budget) {
            result.status = SearchStatus::timeout;
            return result;
        }
        ++result.expansions;
        const Vertex from = top.v;
        visit(u);
        ++depth;
        if (!consistent_after(from, u)) {
            unvisit(u);
            --depth;
            continue;
        }
        labels.push_back(l);
        stack.push_back(Frame{u, {}, 0});
        candidates(u, stack.back().cands);
    }
    result.status = SearchStatus::no_cycle;
    return result;
}

/// Enumerates hamiltonian cycles through vertex 0 as label sequences, so
/// parallel arcs give distinct cycles. `visit(labels)` returns true to stop.
/// Returns the number of expansions used (at most `budget`).
template <ArcGraph G, class Visit>
std::uint64_t for_each_hamiltonian_cycle(const G& graph, std::uint64_t budget, Visit&& visit) {
    const std::size_t n = graph.vertex_count();
    if (n == 0) return 0;
    struct Frame {
        Vertex v;
        std::size_t next = 0;
    };
    std::vector<char> visited(n, 0);
    std::vector<Frame> stack{{0, 0}};
    std::vector<Label> labels;
    std::uint64_t expansions = 0;
    visited[0] = 1;
    while (!stack.empty()) {
        Frame& top = stack.back();
        const auto arcs = graph.arcs(top.v);
        if (top.next == arcs.size()) {
            visited[top.v] = 0;
            stack.pop_back();
            if (!labels.empty()) labels.pop_back();
            continue;
        }
        const Arc a = arcs[top.next++];
        if (stack.size() == n) {
            if (a.to != 0) continue;
            if (n == 2 && a.label == labels.front().inverse()) continue;  // same edge twice
            labels.push_back(a.label);
            const bool stop = visit(std::span<const Label>(labels));
            labels.pop_back();
            if (stop) return expansions;
            continue;
        }
        if (visited[a.to]) continue;
        if (expansions >= budget) return expansions;
        ++expansions;
        visited[a.to] = 1;
        labels.push_back(a.label);
        stack.push_back(Frame{a.to, 0});
    }
    return expansions;
}

}  // namespace hamcayley
