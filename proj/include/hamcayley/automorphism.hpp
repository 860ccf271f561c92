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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "group.hpp"
#include "subgroup.hpp"

namespace hamcayley {

using Genset = std::vector<ElemId>;

/// A group homomorphism stored as its full image table.
struct Homomorphism {
    std::vector<ElemId> image;

    ElemId operator()(ElemId g) const noexcept { return image[g]; }
};

/// Extends gens[k] -> images[k] along the Cayley graph of `gens`, checking
/// phi(g s) = phi(g) phi(s) on every edge. Fails (returns false) when the map
/// is inconsistent, when `gens` does not generate `src`, or when `bijective`
/// is requested and the map is not a bijection onto `dst`.
inline bool extend_homomorphism(const Group& src, std::span<const ElemId> gens, const Group& dst,
                                std::span<const ElemId> images, bool bijective, std::vector<ElemId>& phi,
                                std::vector<ElemId>& queue) {
    constexpr ElemId kUnset = ~ElemId{0};
    phi.assign(src.order(), kUnset);
    queue.clear();
    phi[src.identity()] = dst.identity();
    queue.push_back(src.identity());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const ElemId g = queue[i];
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const ElemId h = src.mul(g, gens[k]);
            const ElemId val = dst.mul(phi[g], images[k]);
            if (phi[h] == kUnset) {
                phi[h] = val;
                queue.push_back(h);
            } else if (phi[h] != val) {
                return false;
            }
        }
    }
    if (queue.size() != src.order()) return false;
    if (bijective) {
        if (src.order() != dst.order()) return false;
        std::vector<char> hit(dst.order(), 0);
        for (ElemId v : phi) {
            if (hit[v]) return false;
            hit[v] = 1;
        }
    }
    return true;
}

inline std::optional<Homomorphism> extend_homomorphism(const Group& src, std::span<const ElemId> gens,
                                                       const Group& dst, std::span<const ElemId> images,
                                                       bool bijective) {
    Homomorphism h;
    std::vector<ElemId> queue;
    if (!extend_homomorphism(src, gens, dst, images, bijective, h.image, queue)) return std::nullopt;
    return h;
}

/// S together with inverses, sorted and without duplicates.
inline std::vector<ElemId> symmetric_closure(const Group& G, std::span<const ElemId> S) {
    std::vector<ElemId> out;
    for (ElemId s : S) {
        out.push_back(s);
        out.push_back(G.inv(s));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// An automorphism of G taking S1 u S1^-1 onto S2 u S2^-1, if one exists.
/// Backtracks over images of S1's elements inside S2 u S2^-1.
inline std::optional<Homomorphism> genset_equivalent(const Group& G, std::span<const ElemId> S1,
                                                     std::span<const ElemId> S2) {
    if (!generates(G, S1) || !generates(G, S2))
        throw Error(ErrorCode::NotGenerating, "both sets must generate the group");
    const std::vector<ElemId> target = symmetric_closure(G, S2);
    if (symmetric_closure(G, S1).size() != target.size()) return std::nullopt;

    std::vector<ElemId> images(S1.size());
    std::vector<ElemId> phi, queue;
    std::optional<Homomorphism> found;
    auto recurse = [&](auto&& self, std::size_t k) -> bool {
        if (k == S1.size()) {
            if (!extend_homomorphism(G, S1, G, images, true, phi, queue)) return false;
            std::vector<ElemId> mapped;
            for (ElemId s : S1) {
                mapped.push_back(phi[s]);
                mapped.push_back(phi[G.inv(s)]);
            }
            std::sort(mapped.begin(), mapped.end());
            mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
            if (mapped != target) return false;
            found = Homomorphism{phi};
            return true;
        }
        for (ElemId t : target) {
            if (G.elem_order(t) != G.elem_order(S1[k])) continue;
            images[k] = t;
            if (self(self, k + 1)) return true;
        }
        return false;
    };
    recurse(recurse, 0);
    return found;
}

/// Representative of g's class under g <-> g^-1.
inline ElemId inverse_class(const Group& G, ElemId g) noexcept { return std::min(g, G.inv(g)); }

/// Canonical form of a 2-element generating set up to replacing either
/// element by its inverse and swapping the two.
inline std::pair<ElemId, ElemId> genset_key(const Group& G, ElemId a, ElemId b) noexcept {
    a = inverse_class(G, a);
    b = inverse_class(G, b);
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

/// All 2-element generating sets, one per class under {a,b} ~ {a^-1,b} ~ {a,b^-1}.
/// Each is returned in canonical key form. Pairs containing the identity or
/// whose two classes coincide are 1-element sets and are left out.
inline std::vector<Genset> enumerate_gensets(const Group& G, int size = 2) {
    if (size != 2) throw Error(ErrorCode::BadParameters, "only 2-element generating sets are enumerated");
    std::vector<ElemId> reps;
    for (ElemId g = 1; g < G.order(); ++g)
        if (inverse_class(G, g) == g) reps.push_back(g);
    std::vector<Genset> out;
    std::vector<char> scratch;
    std::vector<ElemId> queue;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            const ElemId pair[2] = {reps[i], reps[j]};
            if (closure_order(G, pair, scratch, queue) == G.order()) out.push_back({reps[i], reps[j]});
        }
    return out;
}

/// Every isomorphism src -> dst, listed by the images of the generating pair
/// `gens` of src. With src == dst this is Aut(G).
inline std::vector<Homomorphism> all_isomorphisms(const Group& src, std::span<const ElemId> gens, const Group& dst,
                                                  std::size_t limit = ~std::size_t{0}) {
    std::vector<Homomorphism> out;
    if (src.order() != dst.order() || gens.size() != 2) return out;
    std::vector<ElemId> first, second;
    for (ElemId g = 0; g < dst.order(); ++g) {
        if (dst.elem_order(g) == src.elem_order(gens[0])) first.push_back(g);
        if (dst.elem_order(g) == src.elem_order(gens[1])) second.push_back(g);
    }
    std::vector<ElemId> phi, queue;
    for (ElemId g : first)
        for (ElemId h : second) {
            const ElemId images[2] = {g, h};
            if (extend_homomorphism(src, gens, dst, images, true, phi, queue)) {
                out.push_back(Homomorphism{phi});
                if (out.size() >= limit) return out;
            }
        }
    return out;
}

inline std::optional<Homomorphism> find_isomorphism(const Group& src, std::span<const ElemId> gens, const Group& dst) {
    auto all = all_isomorphisms(src, gens, dst, 1);
    if (all.empty()) return std::nullopt;
    return std::move(all.front());
}

/// Aut(G) for a 2-generated group, or empty when G has no 2-element generating set.
inline std::vector<Homomorphism> automorphism_group(const Group& G) {
    const auto gensets = enumerate_gensets(G);
    if (gensets.empty()) return {};
    return all_isomorphisms(G, gensets.front(), G);
}

}  // namespace hamcayley
