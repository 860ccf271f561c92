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
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "automorphism.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "subgroup.hpp"

namespace hamcayley {

/// Signed generator index: +k is the k-th element of S (1-based), -k its inverse.
struct Label {
    int value = 0;

    static constexpr Label gen(int k) noexcept { return Label{k}; }
    constexpr Label inverse() const noexcept { return Label{-value}; }
    constexpr int index() const noexcept { return value < 0 ? -value : value; }
    constexpr bool inverted() const noexcept { return value < 0; }

    auto operator<=>(const Label&) const = default;
};

/// Group element carried by a label, or nullopt when the index is out of range.
inline std::optional<ElemId> label_element(const Group& G, std::span<const ElemId> S, Label l) noexcept {
    if (l.value == 0 || l.index() > static_cast<int>(S.size())) return std::nullopt;
    const ElemId s = S[l.index() - 1];
    return l.inverted() ? G.inv(s) : s;
}

using Vertex = std::uint32_t;

struct Arc {
    Vertex to;
    Label label;
};

struct Walk {
    Vertex start = 0;
    std::vector<Label> labels;
};

/// Anything a walk can be replayed on.
template <class G>
concept WalkableGraph = requires(const G& g, Vertex v, Label l) {
    { g.vertex_count() } -> std::convertible_to<std::size_t>;
    { g.step(v, l) } -> std::same_as<std::optional<Vertex>>;
};

/// A walkable graph that also lists its arcs (for search and export).
template <class G>
concept ArcGraph = WalkableGraph<G> && requires(const G& g, Vertex v) {
    { g.arcs(v) } -> std::convertible_to<std::span<const Arc>>;
    { g.vertex_key(v) } -> std::convertible_to<std::string>;
};

/// Cay(G;S) with the right-action convention g -> g s. Arcs are deduplicated by
/// the group element they carry, so each vertex has degree |S u S^-1|.
class CayleyGraph {
   public:
    CayleyGraph(const Group& G, Genset S) : group_(&G), gens_(std::move(S)) {
        if (gens_.empty()) throw Error(ErrorCode::BadParameters, "generating set is empty");
        for (ElemId s : gens_)
            if (s == G.identity()) throw Error(ErrorCode::IdentityGenerator, "identity is not a valid generator");
        // first label carrying each distinct element wins
        for (int k = 1; k <= static_cast<int>(gens_.size()); ++k)
            for (Label l : {Label::gen(k), Label::gen(-k)}) {
                const ElemId e = *label_element(G, gens_, l);
                if (std::none_of(arc_labels_.begin(), arc_labels_.end(),
                                 [&](Label o) { return *label_element(G, gens_, o) == e; }))
                    arc_labels_.push_back(l);
            }
        arcs_.resize(G.order());
        for (ElemId g = 0; g < G.order(); ++g)
            for (Label l : arc_labels_) arcs_[g].push_back(Arc{G.mul(g, *label_element(G, gens_, l)), l});
        connected_ = generates(G, gens_);
    }

    const Group& group() const noexcept { return *group_; }
    const Genset& genset() const noexcept { return gens_; }
    std::size_t vertex_count() const noexcept { return group_->order(); }
    std::size_t degree() const noexcept { return arc_labels_.size(); }
    bool connected() const noexcept { return connected_; }
    std::span<const Arc> arcs(Vertex v) const noexcept { return arcs_[v]; }
    std::string vertex_key(Vertex v) const { return group_->key(v); }

    std::optional<Vertex> step(Vertex v, Label l) const noexcept {
        if (v >= vertex_count()) return std::nullopt;
        const auto s = label_element(*group_, gens_, l);
        if (!s) return std::nullopt;
        return group_->mul(v, *s);
    }

    /// Sizes of the connected components (cosets g<S>), sorted.
    std::vector<std::size_t> component_sizes() const {
        std::vector<char> seen(vertex_count(), 0);
        std::vector<std::size_t> sizes;
        std::vector<Vertex> stack;
        for (Vertex r = 0; r < vertex_count(); ++r) {
            if (seen[r]) continue;
            std::size_t count = 0;
            stack.push_back(r);
            seen[r] = 1;
            while (!stack.empty()) {
                const Vertex v = stack.back();
                stack.pop_back();
                ++count;
                for (const Arc& a : arcs_[v])
                    if (!seen[a.to]) seen[a.to] = 1, stack.push_back(a.to);
            }
            sizes.push_back(count);
        }
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    }

   private:
    const Group* group_;
    Genset gens_;
    std::vector<Label> arc_labels_;
    std::vector<std::vector<Arc>> arcs_;
    bool connected_ = false;
};

inline CayleyGraph build_cayley(const Group& G, Genset S) { return CayleyGraph(G, std::move(S)); }

/// H\Cay(G;S): right cosets Hg joined once per label s with Hg s. Parallel arcs
/// are kept. Cosets are numbered by their smallest element.
class QuotientMultigraph {
   public:
    using KeyFn = std::function<std::string(const Group&, ElemId)>;

    QuotientMultigraph(const Group& G, Genset S, Subgroup H, const KeyFn& key = {})
        : group_(&G), gens_(std::move(S)), sub_(std::move(H)) {
        if (gens_.empty()) throw Error(ErrorCode::BadParameters, "generating set is empty");
        constexpr Vertex kNone = ~Vertex{0};
        coset_of_.assign(G.order(), kNone);
        for (ElemId g = 0; g < G.order(); ++g) {
            if (coset_of_[g] != kNone) continue;
            const Vertex c = static_cast<Vertex>(reps_.size());
            reps_.push_back(g);
            for (ElemId h : sub_.elements) coset_of_[G.mul(h, g)] = c;
        }
        // one arc per label; labels whose elements coincide give a single arc
        std::vector<Label> labels;
        for (int k = 1; k <= static_cast<int>(gens_.size()); ++k)
            for (Label l : {Label::gen(k), Label::gen(-k)}) {
                const ElemId e = *label_element(G, gens_, l);
                if (std::none_of(labels.begin(), labels.end(),
                                 [&](Label o) { return *label_element(G, gens_, o) == e; }))
                    labels.push_back(l);
            }
        arcs_.resize(reps_.size());
        for (Vertex c = 0; c < reps_.size(); ++c)
            for (Label l : labels) arcs_[c].push_back(Arc{coset_of_[G.mul(reps_[c], *label_element(G, gens_, l))], l});
        keys_.reserve(reps_.size());
        for (ElemId r : reps_) keys_.push_back(key ? key(G, r) : G.key(r));
    }

    const Group& group() const noexcept { return *group_; }
    const Genset& genset() const noexcept { return gens_; }
    const Subgroup& subgroup() const noexcept { return sub_; }
    std::size_t vertex_count() const noexcept { return reps_.size(); }
    std::span<const Arc> arcs(Vertex v) const noexcept { return arcs_[v]; }
    std::string vertex_key(Vertex v) const { return keys_[v]; }
    Vertex coset_of(ElemId g) const noexcept { return coset_of_[g]; }
    ElemId representative(Vertex c) const noexcept { return reps_[c]; }

    std::optional<Vertex> vertex_by_key(const std::string& k) const {
        const auto it = std::find(keys_.begin(), keys_.end(), k);
        if (it == keys_.end()) return std::nullopt;
        return static_cast<Vertex>(it - keys_.begin());
    }

    std::optional<Vertex> step(Vertex v, Label l) const noexcept {
        if (v >= vertex_count()) return std::nullopt;
        const auto s = label_element(*group_, gens_, l);
        if (!s) return std::nullopt;
        return coset_of_[group_->mul(reps_[v], *s)];
    }

   private:
    const Group* group_;
    Genset gens_;
    Subgroup sub_;
    std::vector<Vertex> coset_of_;
    std::vector<ElemId> reps_;
    std::vector<std::vector<Arc>> arcs_;
    std::vector<std::string> keys_;
};

inline QuotientMultigraph quotient_multigraph(const Group& G, Genset S, Subgroup H,
                                              const QuotientMultigraph::KeyFn& key = {}) {
    return QuotientMultigraph(G, std::move(S), std::move(H), key);
}

enum class WalkStatus { ok, bad_label, not_closed, revisit, wrong_length };

constexpr std::string_view to_string(WalkStatus s) noexcept {
    switch (s) {
        case WalkStatus::ok: return "ok";
        case WalkStatus::bad_label: return "BadLabel";
        case WalkStatus::not_closed: return "NotClosed";
        case WalkStatus::revisit: return "Revisit";
        case WalkStatus::wrong_length: return "WrongLength";
    }
    return "?";
}

/// Outcome of replaying a walk. `step` is the 0-based index of the offending
/// label (or the walk length for NotClosed / WrongLength).
struct Verdict {
    WalkStatus status = WalkStatus::ok;
    std::size_t step = 0;

    bool ok() const noexcept { return status == WalkStatus::ok; }
};

/// Vertices visited by the walk, starting vertex first; nullopt on a bad label.
template <WalkableGraph G>
std::optional<std::vector<Vertex>> trace(const G& graph, const Walk& walk) {
    std::vector<Vertex> out{walk.start};
    Vertex v = walk.start;
    for (Label l : walk.labels) {
        const auto next = graph.step(v, l);
        if (!next) return std::nullopt;
        v = *next;
        out.push_back(v);
    }
    return out;
}

/// Accepts exactly the closed walks of length |V| that visit every vertex once.
template <WalkableGraph G>
Verdict verify_hamiltonian(const G& graph, const Walk& walk) {
    const std::size_t n = graph.vertex_count();
    if (walk.start >= n) return {WalkStatus::bad_label, 0};
    std::vector<char> seen(n, 0);
    Vertex v = walk.start;
    for (std::size_t i = 0; i < walk.labels.size(); ++i) {
        const auto next = graph.step(v, walk.labels[i]);
        if (!next) return {WalkStatus::bad_label, i};
        v = *next;
        const bool last = i + 1 == walk.labels.size();
        if (last && v == walk.start) break;
        if (v == walk.start || seen[v]) return {WalkStatus::revisit, i};
        seen[v] = 1;
    }
    if (walk.labels.size() != n) return {WalkStatus::wrong_length, walk.labels.size()};
    if (v != walk.start) return {WalkStatus::not_closed, walk.labels.size()};
    return {};
}

/// Two parallel arcs: both labels take coset `from` to coset `to`.
struct DoubleEdge {
    Vertex from;
    Vertex to;
    Label first;
    Label second;
};

/// Every unordered pair of distinct cosets joined by at least two arcs. Each
/// pair is reported once, oriented from the smaller coset index, with one
/// entry per pair of parallel labels.
inline std::vector<DoubleEdge> find_double_edges(const QuotientMultigraph& Q) {
    std::vector<DoubleEdge> out;
    for (Vertex c = 0; c < Q.vertex_count(); ++c) {
        const auto arcs = Q.arcs(c);
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (arcs[i].to <= c) continue;
            for (std::size_t j = i + 1; j < arcs.size(); ++j)
                if (arcs[j].to == arcs[i].to) out.push_back(DoubleEdge{c, arcs[i].to, arcs[i].label, arcs[j].label});
        }
    }
    return out;
}

/// True when `from` and `to` are joined by parallel arcs labelled l1 and l2
/// (in either orientation, reversing the labels for the opposite direction).
inline bool has_double_edge(const QuotientMultigraph& Q, Vertex from, Vertex to, Label l1, Label l2) {
    auto goes = [&](Vertex a, Vertex b, Label l) {
        const auto t = Q.step(a, l);
        return t && *t == b;
    };
    if (from == to || l1 == l2) return false;
    const auto e1 = label_element(Q.group(), Q.genset(), l1);
    const auto e2 = label_element(Q.group(), Q.genset(), l2);
    if (!e1 || !e2 || *e1 == *e2) return false;
    return goes(from, to, l1) && goes(from, to, l2);
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}
}  // namespace detail

/// Names for labels in DOT output; defaults to "s1", "s2", ...
using LabelNamer = std::function<std::string(Label)>;

/// Deterministic DOT text. One edge per (source, positive label) arc, so an
/// undirected edge appears once and parallel arcs appear separately. Arcs
/// traversed by the optional walk are drawn red; edges joining a highlighted
/// vertex pair are drawn bold.
template <ArcGraph G>
std::string export_dot(const G& graph, const std::optional<Walk>& walk = std::nullopt, const LabelNamer& namer = {},
                       std::span<const std::pair<Vertex, Vertex>> highlight = {}) {
    const std::size_t n = graph.vertex_count();
    auto name = [&](Label l) { return namer ? namer(l) : (l.inverted() ? "s" + std::to_string(l.index()) + "^-1" : "s" + std::to_string(l.index())); };

    std::set<std::pair<Vertex, int>> marked;  // (source, positive label)
    if (walk) {
        Vertex v = walk->start;
        for (Label l : walk->labels) {
            const auto next = graph.step(v, l);
            if (!next) break;
            if (l.inverted())
                marked.insert({*next, l.index()});
            else
                marked.insert({v, l.index()});
            v = *next;
        }
    }

    struct Edge {
        std::string src, dst;
        Label label;
        Vertex from;
        Vertex to;
    };
    std::vector<Edge> edges;
    std::set<std::pair<Vertex, Vertex>> bold;
    for (auto [x, y] : highlight) bold.insert({std::min(x, y), std::max(x, y)});
    for (Vertex v = 0; v < n; ++v)
        for (const Arc& a : graph.arcs(v)) {
            if (a.label.inverted()) continue;
            edges.push_back(Edge{graph.vertex_key(v), graph.vertex_key(a.to), a.label, v, a.to});
        }
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.src, x.label.value, x.dst) < std::tie(y.src, y.label.value, y.dst);
    });

    std::vector<std::string> keys;
    for (Vertex v = 0; v < n; ++v) keys.push_back(graph.vertex_key(v));
    std::sort(keys.begin(), keys.end());

    std::ostringstream os;
    os << "digraph cayley {\n";
    for (const auto& k : keys) os << "  " << detail::dot_quote(k) << ";\n";
    for (const Edge& e : edges) {
        os << "  " << detail::dot_quote(e.src) << " -> " << detail::dot_quote(e.dst) << " [label="
           << detail::dot_quote(name(e.label));
        if (marked.count({e.from, e.label.index()})) os << ", color=red, penwidth=2";
        if (bold.count({std::min(e.from, e.to), std::max(e.from, e.to)})) os << ", style=bold";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace hamcayley
