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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "group.hpp"
#include "modular.hpp"
#include "subgroup.hpp"

namespace hamcayley {

/// Cited results whose hypotheses are checked (not their constructions).
enum class CitedLemma { keating_witte, normal_easy, cyclic_normal_2p, pk_subgroup };

constexpr std::string_view to_string(CitedLemma l) noexcept {
    switch (l) {
        case CitedLemma::keating_witte: return "KeatingWitte";
        case CitedLemma::normal_easy: return "NormalEasy";
        case CitedLemma::cyclic_normal_2p: return "CyclicNormal2p";
        case CitedLemma::pk_subgroup: return "pkSubgrp";
    }
    return "?";
}

struct LemmaMatch {
    CitedLemma lemma;
    std::optional<ElemId> generator;  // the s in S the lemma is applied to
    Subgroup subgroup;                // G' or N, when the lemma names one
    std::string note;
};

/// G' cyclic of prime-power order. A trivial G' counts (abelian groups).
inline std::optional<LemmaMatch> keating_witte_match(const Group& G, const Subgroup& derived) {
    const std::size_t k = derived.order();
    if (!is_cyclic(G, derived) || (k != 1 && !is_prime_power(static_cast<std::int64_t>(k)))) return std::nullopt;
    return LemmaMatch{CitedLemma::keating_witte, std::nullopt, derived, "|G'| = " + std::to_string(k)};
}

/// Structural hypotheses of each cited lemma. Hamiltonicity of the quotient
/// Cay(G/<s>;S), which two of them also require, is not evaluated here.
inline std::vector<LemmaMatch> lemma_hypotheses(const Group& G, std::span<const ElemId> S) {
    std::vector<LemmaMatch> out;
    const Subgroup derived = derived_subgroup(G);
    if (auto m = keating_witte_match(G, derived)) out.push_back(*m);

    const Subgroup Z = center(G);
    const auto primes = prime_factors(static_cast<std::int64_t>(G.order()));

    for (ElemId s : S) {
        const Subgroup cyc = subgroup_closure(G, {s});
        if (!cyc.normal) continue;
        const int o = G.elem_order(s);
        if (Z.contains(s) || is_prime(o)) {
            out.push_back({CitedLemma::normal_easy, s, cyc, Z.contains(s) ? "s central" : "|s| prime"});
            break;
        }
    }

    for (ElemId s : S) {
        const Subgroup cyc = subgroup_closure(G, {s});
        if (!cyc.normal) continue;
        const std::int64_t o = G.elem_order(s);
        const std::int64_t index = static_cast<std::int64_t>(G.order()) / o;
        bool matched = false;
        for (std::int64_t p : primes) {
            for (std::int64_t q : primes) {
                if (p == q || (p * q) % o != 0) continue;
                if (!Z.contains(G.pow(s, p)) || index % q != 0) continue;
                out.push_back({CitedLemma::cyclic_normal_2p, s, cyc,
                               "|s| divides " + std::to_string(p) + "*" + std::to_string(q)});
                matched = true;
                break;
            }
            if (matched) break;
        }
        if (matched) break;
    }

    // smallest normal subgroup containing all s t^-1 must be a p-group
    std::vector<ElemId> diffs;
    for (ElemId s : S)
        for (ElemId t : S) diffs.push_back(G.mul(s, G.inv(t)));
    const Subgroup N = normal_closure(G, diffs);
    if (N.order() == 1 || is_prime_power(static_cast<std::int64_t>(N.order())))
        out.push_back({CitedLemma::pk_subgroup, std::nullopt, N, "|N| = " + std::to_string(N.order())});
    return out;
}

inline bool matches(const std::vector<LemmaMatch>& ms, CitedLemma l) {
    for (const auto& m : ms)
        if (m.lemma == l) return true;
    return false;
}

}  // namespace hamcayley
