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

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "group.hpp"
#include "lift.hpp"
#include "subgroup.hpp"

namespace hamcayley {

using json = nlohmann::json;

namespace detail {
inline constexpr const char* kGenNames[3] = {"x", "y", "z"};

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorCode::MalformedCertificate, what); }

inline int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
    return j.get<int>();
}
}  // namespace detail

inline json to_json(const GroupDescriptor& d) {
    json j;
    j["family"] = std::string(family_name(d.family));
    if (d.family != Family::z13e27 && d.p > 1) {
        j["p"] = d.p;
        json a = json::object();
        for (int k = 0; k < q_arity(d.family); ++k) a[detail::kGenNames[k]] = d.action[k];
        j["action"] = a;
    }
    return j;
}

inline GroupDescriptor descriptor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) detail::malformed("descriptor needs a family");
    GroupDescriptor d;
    d.family = family_from_name(j["family"].get<std::string>());
    if (d.family == Family::z13e27) {
        d.p = 13;
        if (j.contains("p") && detail::as_int(j["p"], "p") != 13)
            throw Error(ErrorCode::InvalidDescriptor, "z13e27 has p = 13");
        return d;
    }
    d.p = j.contains("p") ? detail::as_int(j["p"], "p") : 1;
    if (j.contains("action")) {
        const json& a = j["action"];
        if (!a.is_object()) detail::malformed("action must be an object");
        for (auto it = a.begin(); it != a.end(); ++it) {
            int k = -1;
            for (int i = 0; i < 3; ++i)
                if (it.key() == detail::kGenNames[i]) k = i;
            if (k < 0 || k >= q_arity(d.family))
                throw Error(ErrorCode::InvalidAction, "no generator '" + it.key() + "' in this family");
            d.action[k] = detail::as_int(it.value(), "action unit");
        }
    }
    return d;
}

inline json to_json(const Element& e) {
    json j;
    if (e.family == Family::z13e27) {
        j["t"] = e.m;
        j["v"] = {e.q[0], e.q[1], e.q[2]};
    } else {
        json q = json::array();
        for (int k = 0; k < q_arity(e.family); ++k) q.push_back(e.q[k]);
        j["q"] = q;
        j["m"] = e.m;
    }
    return j;
}

/// Reads an element of the given family; range checks happen in Group::id.
inline Element element_from_json(const json& j, Family family) {
    if (!j.is_object()) detail::malformed("element must be an object");
    Element e;
    e.family = family;
    if (family == Family::z13e27) {
        if (!j.contains("t") || !j.contains("v") || !j["v"].is_array() || j["v"].size() != 3)
            detail::malformed("z13e27 element needs t and a 3-vector v");
        e.m = detail::as_int(j["t"], "t");
        for (int k = 0; k < 3; ++k) e.q[k] = detail::as_int(j["v"][k], "v entry");
    } else {
        if (!j.contains("q") || !j["q"].is_array() || static_cast<int>(j["q"].size()) != q_arity(family))
            detail::malformed("element needs q with one entry per generator of Q");
        for (int k = 0; k < q_arity(family); ++k) e.q[k] = detail::as_int(j["q"][k], "q entry");
        e.m = j.contains("m") ? detail::as_int(j["m"], "m") : 0;
    }
    return e;
}

inline json to_json(const HamCertificate& c) {
    json j;
    j["group"] = to_json(c.group);
    j["genset"] = json::array();
    for (const auto& e : c.genset) j["genset"].push_back(to_json(e));
    j["claim"] = c.claim == Claim::full ? "full" : "quotient";
    if (c.claim == Claim::quotient) {
        j["subgroup"] = json::array();
        for (const auto& e : c.subgroup) j["subgroup"].push_back(to_json(e));
    }
    j["start"] = to_json(c.start);
    j["labels"] = json::array();
    for (Label l : c.labels) j["labels"].push_back(l.value);
    j["method"] = c.method;
    j["verified"] = c.verified;
    return j;
}

inline HamCertificate certificate_from_json(const json& j) {
    if (!j.is_object()) detail::malformed("certificate must be an object");
    for (const char* k : {"group", "genset", "claim", "start", "labels", "method"})
        if (!j.contains(k)) detail::malformed(std::string("missing field '") + k + "'");
    HamCertificate c;
    c.group = descriptor_from_json(j["group"]);
    if (!j["genset"].is_array()) detail::malformed("genset must be an array");
    for (const auto& e : j["genset"]) c.genset.push_back(element_from_json(e, c.group.family));
    const json& claim = j["claim"];
    if (claim == "full")
        c.claim = Claim::full;
    else if (claim == "quotient")
        c.claim = Claim::quotient;
    else
        detail::malformed("claim must be 'full' or 'quotient'");
    if (c.claim == Claim::quotient) {
        if (!j.contains("subgroup") || !j["subgroup"].is_array()) detail::malformed("quotient claim needs subgroup");
        for (const auto& e : j["subgroup"]) c.subgroup.push_back(element_from_json(e, c.group.family));
    }
    c.start = element_from_json(j["start"], c.group.family);
    if (!j["labels"].is_array()) detail::malformed("labels must be an array");
    for (const auto& l : j["labels"]) c.labels.push_back(Label{detail::as_int(l, "label")});
    if (!j["method"].is_string()) detail::malformed("method must be a string");
    c.method = j["method"].get<std::string>();
    c.verified = false;
    return c;
}

/// Rebuilds the group and graph named by the certificate and replays its walk.
/// Throws on structurally invalid input (bad descriptor, element or genset).
inline Verdict replay_certificate(const HamCertificate& c) {
    const Group G(c.group);
    Genset S;
    for (const auto& e : c.genset) S.push_back(G.id(e));
    const ElemId start = G.id(c.start);
    if (c.claim == Claim::full) {
        const CayleyGraph cay(G, S);
        return verify_hamiltonian(cay, Walk{start, c.labels});
    }
    std::vector<ElemId> hgens;
    for (const auto& e : c.subgroup) hgens.push_back(G.id(e));
    const QuotientMultigraph Q(G, S, subgroup_closure(G, hgens));
    for (ElemId s : S)
        if (s == G.identity()) throw Error(ErrorCode::IdentityGenerator, "identity is not a valid generator");
    return verify_hamiltonian(Q, Walk{Q.coset_of(start), c.labels});
}

}  // namespace hamcayley
