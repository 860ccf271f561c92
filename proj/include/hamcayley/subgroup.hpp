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
#include <set>
#include <span>
#include <vector>

#include "group.hpp"
#include "modular.hpp"

namespace hamcayley {

/// A subgroup stored as the sorted list of its element ids.
struct Subgroup {
    std::vector<ElemId> elements;
    bool normal = false;

    std::size_t order() const noexcept { return elements.size(); }
    bool contains(ElemId g) const noexcept { return std::binary_search(elements.begin(), elements.end(), g); }
    bool operator==(const Subgroup& o) const noexcept { return elements == o.elements; }
};

inline bool is_normal(const Group& G, std::span<const ElemId> sorted_elements) {
    for (ElemId g = 0; g < G.order(); ++g)
        for (ElemId h : sorted_elements)
            if (!std::binary_search(sorted_elements.begin(), sorted_elements.end(), G.conjugate(h, g))) return false;
    return true;
}

inline bool is_normal(const Group& G, const Subgroup& H) { return is_normal(G, std::span<const ElemId>(H.elements)); }

/// Smallest subgroup containing the seeds. In a finite group the monoid
/// generated under right multiplication is already the subgroup.
inline Subgroup subgroup_closure(const Group& G, std::span<const ElemId> seeds) {
    std::vector<char> seen(G.order(), 0);
    std::vector<ElemId> out{G.identity()};
    seen[G.identity()] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (ElemId s : seeds) {
            const ElemId h = G.mul(out[i], s);
            if (!seen[h]) {
                seen[h] = 1;
                out.push_back(h);
            }
        }
    }
    std::sort(out.begin(), out.end());
    Subgroup H{std::move(out), false};
    H.normal = is_normal(G, H);
    return H;
}

inline Subgroup subgroup_closure(const Group& G, std::initializer_list<ElemId> seeds) {
    return subgroup_closure(G, std::span<const ElemId>(seeds.begin(), seeds.size()));
}

/// Order of <seeds> without materialising the subgroup or testing normality.
inline std::size_t closure_order(const Group& G, std::span<const ElemId> seeds, std::vector<char>& scratch,
                                 std::vector<ElemId>& queue) {
    scratch.assign(G.order(), 0);
    queue.clear();
    queue.push_back(G.identity());
    scratch[G.identity()] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (ElemId s : seeds) {
            const ElemId h = G.mul(queue[i], s);
            if (!scratch[h]) {
                scratch[h] = 1;
                queue.push_back(h);
            }
        }
    }
    return queue.size();
}

inline bool generates(const Group& G, std::span<const ElemId> seeds) {
    std::vector<char> scratch;
    std::vector<ElemId> queue;
    return closure_order(G, seeds, scratch, queue) == G.order();
}

inline Subgroup whole_group(const Group& G) {
    Subgroup H;
    H.elements.resize(G.order());
    for (ElemId g = 0; g < G.order(); ++g) H.elements[g] = g;
    H.normal = true;
    return H;
}

inline Subgroup derived_subgroup(const Group& G) {
    std::set<ElemId> comms;
    for (ElemId a = 0; a < G.order(); ++a)
        for (ElemId b = 0; b < G.order(); ++b) comms.insert(G.commutator(a, b));
    const std::vector<ElemId> seeds(comms.begin(), comms.end());
    return subgroup_closure(G, seeds);
}

inline Subgroup center(const Group& G) {
    Subgroup Z;
    for (ElemId a = 0; a < G.order(); ++a) {
        bool central = true;
        for (ElemId b = 0; b < G.order() && central; ++b) central = G.mul(a, b) == G.mul(b, a);
        if (central) Z.elements.push_back(a);
    }
    Z.normal = true;
    return Z;
}

/// Elements of `within` commuting with every element of `with`.
inline Subgroup centralizer(const Group& G, const Subgroup& within, const Subgroup& with) {
    std::vector<ElemId> out;
    for (ElemId a : within.elements) {
        bool ok = true;
        for (ElemId b : with.elements)
            if (G.mul(a, b) != G.mul(b, a)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(a);
    }
    return subgroup_closure(G, out);
}

/// Smallest normal subgroup containing the seeds.
inline Subgroup normal_closure(const Group& G, std::span<const ElemId> seeds) {
    std::set<ElemId> conj;
    for (ElemId s : seeds)
        for (ElemId g = 0; g < G.order(); ++g) conj.insert(G.conjugate(s, g));
    const std::vector<ElemId> all(conj.begin(), conj.end());
    return subgroup_closure(G, all);
}

/// A Sylow q-subgroup, grown greedily from q-elements: while a q-subgroup is not
/// Sylow, some q-element of its normalizer extends it.
inline Subgroup sylow_subgroup(const Group& G, std::int64_t q) {
    std::int64_t target = 1;
    for (std::size_t n = G.order(); n % q == 0; n /= q) target *= q;
    std::vector<ElemId> gens;
    std::size_t current = 1;
    std::vector<char> scratch;
    std::vector<ElemId> queue;
    bool grew = true;
    while (static_cast<std::int64_t>(current) < target && grew) {
        grew = false;
        for (ElemId g = 0; g < G.order() && static_cast<std::int64_t>(current) < target; ++g) {
            const int o = G.elem_order(g);
            if (o == 1 || !is_prime_power(o) || o % q != 0) continue;
            gens.push_back(g);
            const std::size_t size = closure_order(G, gens, scratch, queue);
            if (size > current && is_prime_power(static_cast<std::int64_t>(size)) && size % q == 0) {
                current = size;
                grew = true;
            } else {
                gens.pop_back();
            }
        }
    }
    return subgroup_closure(G, gens);
}

/// Number of Sylow q-subgroups, counted as distinct conjugates.
inline std::size_t sylow_count(const Group& G, std::int64_t q) {
    const Subgroup S = sylow_subgroup(G, q);
    std::set<std::vector<ElemId>> conjugates;
    for (ElemId g = 0; g < G.order(); ++g) {
        std::vector<ElemId> c;
        c.reserve(S.order());
        for (ElemId h : S.elements) c.push_back(G.conjugate(h, g));
        std::sort(c.begin(), c.end());
        conjugates.insert(std::move(c));
    }
    return conjugates.size();
}

/// Frattini subgroup of a Sylow 3-subgroup Q: generated by commutators and cubes.
inline Subgroup frattini_of_sylow3(const Group& G) {
    const Subgroup Q = sylow_subgroup(G, 3);
    std::set<ElemId> seeds;
    for (ElemId a : Q.elements) {
        seeds.insert(G.pow(a, 3));
        for (ElemId b : Q.elements) seeds.insert(G.commutator(a, b));
    }
    const std::vector<ElemId> v(seeds.begin(), seeds.end());
    return subgroup_closure(G, v);
}

enum class StructuralKind { derived, center, frattini_of_Q };

inline Subgroup structural_subgroup(const Group& G, StructuralKind kind) {
    switch (kind) {
        case StructuralKind::derived: return derived_subgroup(G);
        case StructuralKind::center: return center(G);
        case StructuralKind::frattini_of_Q: return frattini_of_sylow3(G);
    }
    return {};
}

/// True when the subgroup is cyclic (has an element of full order).
inline bool is_cyclic(const Group& G, const Subgroup& H) {
    for (ElemId h : H.elements)
        if (static_cast<std::size_t>(G.elem_order(h)) == H.order()) return true;
    return false;
}

/// The distinct nontrivial cyclic normal subgroups, largest first.
inline std::vector<Subgroup> cyclic_normal_subgroups(const Group& G) {
    std::vector<Subgroup> out;
    std::vector<char> seen_generator(G.order(), 0);
    for (ElemId g = 1; g < G.order(); ++g) {
        if (seen_generator[g]) continue;
        std::vector<ElemId> powers;
        for (ElemId x = g; x != G.identity(); x = G.mul(x, g)) powers.push_back(x);
        powers.push_back(G.identity());
        for (ElemId x : powers)
            if (G.elem_order(x) == G.elem_order(g)) seen_generator[x] = 1;
        std::sort(powers.begin(), powers.end());
        Subgroup H{std::move(powers), false};
        H.normal = is_normal(G, H);
        if (H.normal) out.push_back(std::move(H));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() > b.order();
        return a.elements < b.elements;
    });
    return out;
}

}  // namespace hamcayley
