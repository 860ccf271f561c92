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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "group.hpp"
#include "search.hpp"
#include "subgroup.hpp"

namespace hamcayley {

enum class Claim { full, quotient };

/// A self-contained hamiltonicity claim: everything needed to rebuild the graph
/// and replay the walk. `verified` is set only after a successful replay.
struct HamCertificate {
    GroupDescriptor group;
    std::vector<Element> genset;
    Claim claim = Claim::full;
    std::vector<Element> subgroup;  // generators of H for quotient claims
    Element start;
    std::vector<Label> labels;
    std::string method;
    bool verified = false;
};

inline std::vector<Element> to_elements(const Group& G, std::span<const ElemId> ids) {
    std::vector<Element> out;
    out.reserve(ids.size());
    for (ElemId g : ids) out.push_back(G.element(g));
    return out;
}

/// Product of the labels along a walk starting at the identity coset. The walk
/// must close up in the right-coset quotient, so the product lies in H.
inline ElemId voltage(const Group& G, std::span<const ElemId> S, std::span<const Label> walk, const Subgroup& H) {
    ElemId acc = G.identity();
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const auto s = label_element(G, S, walk[i]);
        if (!s) throw Error(ErrorCode::BadLabel, "label " + std::to_string(walk[i].value) + " at step " + std::to_string(i));
        acc = G.mul(acc, *s);
    }
    if (!H.contains(acc)) throw Error(ErrorCode::NotClosed, "walk does not return to the starting coset");
    return acc;
}

inline bool generates_subgroup(const Group& G, ElemId g, const Subgroup& H) {
    return H.contains(g) && static_cast<std::size_t>(G.elem_order(g)) == H.order();
}

namespace detail {

inline HamCertificate full_certificate(const Group& G, std::span<const ElemId> S, std::vector<Label> labels,
                                       std::string method) {
    HamCertificate cert;
    cert.group = G.descriptor();
    cert.genset = to_elements(G, S);
    cert.claim = Claim::full;
    cert.start = G.element(G.identity());
    cert.labels = std::move(labels);
    cert.method = std::move(method);
    const CayleyGraph cay(G, Genset(S.begin(), S.end()));
    const Verdict v = verify_hamiltonian(cay, Walk{G.identity(), cert.labels});
    if (!v.ok())
        throw Error(ErrorCode::NotHamiltonian, "lifted walk fails replay: " + std::string(to_string(v.status)) +
                                                   " at step " + std::to_string(v.step));
    cert.verified = true;
    return cert;
}

inline void require_quotient_cycle(const Group& G, std::span<const ElemId> S, const Subgroup& H,
                                   std::span<const Label> cycle) {
    const QuotientMultigraph Q(G, Genset(S.begin(), S.end()), H);
    const Verdict v = verify_hamiltonian(Q, Walk{Q.coset_of(G.identity()), {cycle.begin(), cycle.end()}});
    if (!v.ok())
        throw Error(ErrorCode::NotHamiltonian, "not a hamiltonian cycle of the quotient: " +
                                                   std::string(to_string(v.status)) + " at step " + std::to_string(v.step));
}

}  // namespace detail

/// Factor Group Lemma in right-coset form: when the voltage of a hamiltonian
/// cycle of H\Cay(G;S) generates the cyclic subgroup H, the cycle repeated |H|
/// times is hamiltonian in Cay(G;S). H need not be normal: the lift visits
/// v^k p_i for the prefixes p_i, one from each right coset.
inline HamCertificate fgl_lift(const Group& G, std::span<const ElemId> S, const Subgroup& H,
                               std::span<const Label> quotient_cycle, std::string method = "fgl") {
    detail::require_quotient_cycle(G, S, H, quotient_cycle);
    const ElemId v = voltage(G, S, quotient_cycle, H);
    if (!generates_subgroup(G, v, H))
        throw Error(ErrorCode::VoltageDoesNotGenerate, "voltage has order " + std::to_string(G.elem_order(v)) +
                                                           " in a subgroup of order " + std::to_string(H.order()));
    std::vector<Label> labels;
    labels.reserve(quotient_cycle.size() * H.order());
    for (std::size_t k = 0; k < H.order(); ++k) labels.insert(labels.end(), quotient_cycle.begin(), quotient_cycle.end());
    return detail::full_certificate(G, S, std::move(labels), std::move(method));
}

/// Substitutes t for some occurrences of s (s = t mod N) until the voltage
/// generates N, then lifts. At most two substitutions are tried; with |N| prime
/// one always suffices, so running out is reported as ExhaustedSubstitutions.
inline HamCertificate double_edge_lift(const Group& G, std::span<const ElemId> S, const Subgroup& N,
                                       std::span<const Label> quotient_cycle, Label s, Label t) {
    const auto es = label_element(G, S, s);
    const auto et = label_element(G, S, t);
    if (!es || !et) throw Error(ErrorCode::BadLabel, "substitution labels out of range");
    if (*es == *et) throw Error(ErrorCode::BadParameters, "s and t must be different group elements");
    if (!N.normal || !is_prime(static_cast<std::int64_t>(N.order())))
        throw Error(ErrorCode::BadParameters, "N must be a normal subgroup of prime order");
    if (!N.contains(G.mul(*es, G.inv(*et)))) throw Error(ErrorCode::BadParameters, "s and t differ modulo N");

    std::vector<std::size_t> occurrences;
    for (std::size_t i = 0; i < quotient_cycle.size(); ++i)
        if (quotient_cycle[i] == s) occurrences.push_back(i);
    if (occurrences.empty()) throw Error(ErrorCode::NoEdgeLabelled, "cycle never uses the label to be substituted");
    detail::require_quotient_cycle(G, S, N, quotient_cycle);

    std::vector<Label> walk(quotient_cycle.begin(), quotient_cycle.end());
    auto attempt = [&]() -> std::optional<HamCertificate> {
        const ElemId v = voltage(G, S, walk, N);
        if (!generates_subgroup(G, v, N)) return std::nullopt;
        return fgl_lift(G, S, N, walk, "double-edge");
    };
    if (auto c = attempt()) return *c;
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        walk[occurrences[i]] = t;
        if (auto c = attempt()) return *c;
        for (std::size_t j = i + 1; j < occurrences.size(); ++j) {
            walk[occurrences[j]] = t;
            if (auto c = attempt()) return *c;
            walk[occurrences[j]] = s;
        }
        walk[occurrences[i]] = s;
    }
    throw Error(ErrorCode::ExhaustedSubstitutions, "no substitution of at most two occurrences generates N");
}

/// The two voltages obtained by routing the cycle through either arc of a
/// double edge, and the step at which the cycle crosses it.
struct DoubleEdgeVoltages {
    std::size_t position = 0;
    Label used;
    Label alternative;
    ElemId used_voltage = 0;
    ElemId alternative_voltage = 0;
};

inline DoubleEdgeVoltages double_edge_voltages(const Group& G, std::span<const ElemId> S, const Subgroup& H,
                                               std::span<const Label> quotient_cycle, const DoubleEdge& de) {
    const QuotientMultigraph Q(G, Genset(S.begin(), S.end()), H);
    const auto visited = trace(Q, Walk{Q.coset_of(G.identity()), {quotient_cycle.begin(), quotient_cycle.end()}});
    if (!visited) throw Error(ErrorCode::BadLabel, "cycle has a label outside S");
    const auto e1 = label_element(G, S, de.first);
    const auto e2 = label_element(G, S, de.second);
    if (!e1 || !e2) throw Error(ErrorCode::BadLabel, "double edge labels out of range");
    for (std::size_t i = 0; i < quotient_cycle.size(); ++i) {
        const Vertex a = (*visited)[i], b = (*visited)[i + 1];
        const ElemId used = *label_element(G, S, quotient_cycle[i]);
        std::optional<Label> alt;
        if (a == de.from && b == de.to) {
            if (used == *e1) alt = de.second;
            else if (used == *e2) alt = de.first;
        } else if (a == de.to && b == de.from) {
            if (used == G.inv(*e1)) alt = de.second.inverse();
            else if (used == G.inv(*e2)) alt = de.first.inverse();
        }
        if (!alt) continue;
        std::vector<Label> swapped(quotient_cycle.begin(), quotient_cycle.end());
        swapped[i] = *alt;
        DoubleEdgeVoltages out;
        out.position = i;
        out.used = quotient_cycle[i];
        out.alternative = *alt;
        out.used_voltage = voltage(G, S, quotient_cycle, H);
        out.alternative_voltage = voltage(G, S, swapped, H);
        return out;
    }
    throw Error(ErrorCode::DoubleEdgeNotOnCycle, "cycle does not traverse the given double edge");
}

/// Lift through a double edge of H\Cay(G;S) for |H| prime: the two candidate
/// voltages differ by a nontrivial element of H, so one of them generates H.
inline HamCertificate multidouble_lift(const Group& G, std::span<const ElemId> S, const Subgroup& H,
                                       std::span<const Label> quotient_cycle, const DoubleEdge& de) {
    if (!is_prime(static_cast<std::int64_t>(H.order())))
        throw Error(ErrorCode::BadParameters, "H must have prime order");
    detail::require_quotient_cycle(G, S, H, quotient_cycle);
    const DoubleEdgeVoltages dv = double_edge_voltages(G, S, H, quotient_cycle, de);
    const ElemId ratio = G.mul(dv.used_voltage, G.inv(dv.alternative_voltage));
    if (ratio == G.identity() || !H.contains(ratio))
        throw Error(ErrorCode::NotClosed, "double-edge voltages do not differ inside H");
    std::vector<Label> walk(quotient_cycle.begin(), quotient_cycle.end());
    if (!generates_subgroup(G, dv.used_voltage, H)) walk[dv.position] = dv.alternative;
    return fgl_lift(G, S, H, walk, "multi-double");
}

struct FglSearchResult {
    std::optional<HamCertificate> certificate;
    std::uint64_t expansions = 0;
};

/// Looks for a hamiltonian cycle of the right-coset multigraph N\Cay(G;S)
/// whose voltage generates the cyclic subgroup N, and lifts it.
inline FglSearchResult fgl_search(const Group& G, std::span<const ElemId> S, const Subgroup& N, std::uint64_t budget,
                                  std::string method = "fgl-search") {
    FglSearchResult out;
    const QuotientMultigraph Q(G, Genset(S.begin(), S.end()), N);
    out.expansions = for_each_hamiltonian_cycle(Q, budget, [&](std::span<const Label> cycle) {
        if (!generates_subgroup(G, voltage(G, S, cycle, N), N)) return false;
        out.certificate = fgl_lift(G, S, N, cycle, method);
        return true;
    });
    return out;
}

}  // namespace hamcayley
