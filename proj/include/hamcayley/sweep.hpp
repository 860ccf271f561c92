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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cases.hpp"
#include "search.hpp"
#include "serialize.hpp"

namespace hamcayley {

/// Every descriptor of order 27p: each Q family with each action homomorphism
/// (listed up to equality), plus Z_13 x| (Z_3)^3 when p = 13.
inline std::vector<GroupDescriptor> enumerate_descriptors(int p) {
    if (!is_prime(p) || p < 5) throw Error(ErrorCode::BadParameters, "p must be a prime >= 5");
    std::vector<int> units;
    for (int u = 1; u < p; ++u)
        if (pow_mod(u, 27, p) == 1) units.push_back(u);

    std::vector<GroupDescriptor> out;
    for (Family fam : kQFamilies) {
        const int arity = q_arity(fam);
        std::array<std::size_t, 3> pick{0, 0, 0};
        while (true) {
            GroupDescriptor d{fam, p, {1, 1, 1}};
            for (int k = 0; k < arity; ++k) d.action[k] = units[pick[k]];
            try {
                (void)Group(d);
                out.push_back(d);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::InvalidAction) throw;
            }
            int k = arity - 1;
            while (k >= 0 && ++pick[k] == units.size()) pick[k--] = 0;
            if (k < 0) break;
        }
    }
    if (p == 13) out.push_back(GroupDescriptor{Family::z13e27, 13, {1, 1, 1}});
    return out;
}

struct SweepOptions {
    std::uint64_t budget = 10'000'000;  // expansions per generating set
    std::uint64_t seed = 1;
    int attempts = 4;            // search restarts, each with budget / attempts
    bool keep_labels = false;    // retain every entry's walk (memory heavy at p = 13)
};

struct SweepEntry {
    std::size_t group = 0;  // index into SweepReport::groups
    Genset genset;
    Route route = Route::search_fallback;
    std::string method;
    SearchStatus status = SearchStatus::found;
    bool verified = false;
    std::uint64_t expansions = 0;
    std::vector<Label> labels;  // only with keep_labels
};

struct SweepReport {
    int p = 0;
    SweepOptions options;
    std::vector<GroupDescriptor> groups;
    std::vector<SweepEntry> entries;

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& e : entries) n += !e.verified;
        return n;
    }
    std::map<std::string, std::size_t> route_counts() const {
        std::map<std::string, std::size_t> m;
        for (const auto& e : entries) ++m[std::string(to_string(e.route))];
        return m;
    }
};

/// Route given only group-level facts (the pkSubgrp test needs S).
inline Route group_route(const GroupFacts& f) {
    if (f.p != 0 && !f.sylow_p_normal) return Route::z13;
    if (f.keating_witte) return Route::keating_witte;
    if (!f.q_abelian && f.p != 0) {
        if (f.q_exponent == 3) return Route::exp3;
        if (f.q_exponent == 9) return f.centralizer_has_order9 ? Route::exp9_cent : Route::exp9_no9;
    }
    return Route::search_fallback;
}

namespace detail {

/// Cyclic subgroups the fallback lifts through: the cyclic normal subgroups,
/// then a Sylow p-subgroup when it is not normal (right cosets suffice).
inline std::vector<Subgroup> lift_subgroups(const Group& G, const GroupFacts& f) {
    auto out = cyclic_normal_subgroups(G);
    if (f.p != 0 && !f.sylow_p_normal) out.push_back(sylow_subgroup(G, f.p));
    return out;
}

/// Certifies one group: canonical-case certificates are pulled back along an
/// isomorphism and spread over Aut(G)-orbits; remaining orbits are searched.
class GroupSweep {
   public:
    GroupSweep(const Group& G, std::size_t group_index, const SweepOptions& opt,
               std::map<std::string, std::optional<CaseRun>>& runs)
        : G_(G), index_(group_index), opt_(opt), runs_(runs), facts_(analyze_group(G)), U_(G),
          lift_subgroups_(lift_subgroups(G, facts_)) {
        entries_.resize(U_.gensets.size());
        done_.assign(U_.gensets.size(), 0);
    }

    std::vector<SweepEntry> run() {
        const Route R = group_route(facts_);
        for (const CaseId& c : route_cases(R)) case_source(c);
        for (std::size_t i = 0; i < U_.gensets.size(); ++i)
            if (!done_[i]) search_source(i);
        return std::move(entries_);
    }

   private:
    const CaseRun* case_run(const CaseId& c, std::int64_t r) {
        const std::string key = to_string(c) + "@" + std::to_string(r);
        auto it = runs_.find(key);
        if (it == runs_.end()) {
            std::optional<CaseRun> run;
            try {
                run = run_case(c, G_.fiber_order(), r);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::VoltageDoesNotGenerate) throw;
            }
            it = runs_.emplace(key, std::move(run)).first;
        }
        return it->second ? &*it->second : nullptr;
    }

    void case_source(const CaseId& c) {
        std::vector<std::int64_t> roots{0};
        if (!c.is_z13()) {
            const auto [r1, r2] = find_primitive_cube_roots(G_.fiber_order());
            roots = {r1, r2};
        }
        for (std::int64_t r : roots) {
            const CaseRun* run = case_run(c, r);
            if (!run) continue;
            const CaseInstance& inst = run->instance;
            std::optional<Homomorphism> psi;
            if (inst.G().descriptor() == G_.descriptor()) {
                Homomorphism id;
                id.image.resize(G_.order());
                for (ElemId g = 0; g < G_.order(); ++g) id.image[g] = g;
                psi = std::move(id);
            } else {
                psi = find_isomorphism(inst.G(), inst.genset, G_);
            }
            if (!psi) continue;
            const Genset image = {(*psi)(inst.genset[0]), (*psi)(inst.genset[1])};
            const RouteDecision d = classify(G_, facts_, image);
            if (!is_case_route(d.route)) return;
            auto labels = transport_labels(G_, *psi, inst.genset, image, run->certificate.labels);
            if (labels) spread(image, *labels, d.route, "run_case:" + to_string(c), 0);
            return;
        }
    }

    void search_source(std::size_t i) {
        const Genset& S = U_.gensets[i];
        const RouteDecision d = classify(G_, facts_, S);
        std::uint64_t spent = 0;
        SearchStatus last = SearchStatus::timeout;

        // lifted search: half the budget, shared by the cyclic subgroups to lift through
        if (!lift_subgroups_.empty()) {
            const std::uint64_t per = std::max<std::uint64_t>(1, opt_.budget / 2 / lift_subgroups_.size());
            for (const Subgroup& N : lift_subgroups_) {
                const FglSearchResult r = fgl_search(G_, S, N, per);
                spent += r.expansions;
                if (r.certificate) {
                    spread(S, r.certificate->labels, d.route, "fgl-search", spent);
                    return;
                }
            }
        }

        const CayleyGraph cay(G_, S);
        const int attempts = std::max(1, opt_.attempts);
        const std::uint64_t per = std::max<std::uint64_t>(1, (opt_.budget - std::min(spent, opt_.budget)) / attempts);
        for (int k = 0; k < attempts; ++k) {
            const SearchResult r = ham_search(cay, per, opt_.seed + static_cast<std::uint64_t>(k));
            spent += r.expansions;
            last = r.status;
            if (r.status == SearchStatus::found) {
                spread(S, r.walk->labels, d.route, "search", spent);
                return;
            }
            if (r.status == SearchStatus::no_cycle) break;
        }
        U_.for_each_in_orbit(G_, S, [&](std::size_t idx, const Homomorphism&) {
            if (done_[idx]) return;
            done_[idx] = 1;
            SweepEntry& e = entries_[idx];
            e.group = index_;
            e.genset = U_.gensets[idx];
            e.route = d.route;
            e.method = "search";
            e.status = last;
            e.verified = false;
            e.expansions = idx == i ? spent : 0;
        });
    }

    void spread(const Genset& source, const std::vector<Label>& labels, Route route, const std::string& method,
                std::uint64_t expansions) {
        const auto src_idx = U_.find(G_, source[0], source[1]);
        U_.for_each_in_orbit(G_, source, [&](std::size_t idx, const Homomorphism& phi) {
            if (done_[idx]) return;
            done_[idx] = 1;
            SweepEntry& e = entries_[idx];
            e.group = index_;
            e.genset = U_.gensets[idx];
            e.route = route;
            e.method = method;
            e.expansions = src_idx && *src_idx == idx ? expansions : 0;
            auto moved = transport_labels(G_, phi, source, e.genset, labels);
            if (!moved) {
                e.verified = false;
                return;
            }
            const CayleyView view{&G_, e.genset};
            e.verified = verify_hamiltonian(view, Walk{G_.identity(), *moved}).ok();
            if (opt_.keep_labels) e.labels = std::move(*moved);
        });
    }

    const Group& G_;
    std::size_t index_;
    const SweepOptions& opt_;
    std::map<std::string, std::optional<CaseRun>>& runs_;
    GroupFacts facts_;
    GensetUniverse U_;
    std::vector<Subgroup> lift_subgroups_;
    std::vector<SweepEntry> entries_;
    std::vector<char> done_;
};

}  // namespace detail

/// Certifies every 2-element generating set of every group of order 27p.
/// `progress` (optional) is called after each group.
inline SweepReport theorem_sweep(int p, const SweepOptions& opt = {},
                                 const std::function<void(const GroupDescriptor&, std::size_t)>& progress = {}) {
    SweepReport rep;
    rep.p = p;
    rep.options = opt;
    rep.groups = enumerate_descriptors(p);
    std::map<std::string, std::optional<CaseRun>> runs;
    for (std::size_t gi = 0; gi < rep.groups.size(); ++gi) {
        const Group G(rep.groups[gi]);
        auto entries = detail::GroupSweep(G, gi, opt, runs).run();
        if (progress) progress(rep.groups[gi], entries.size());
        for (auto& e : entries) rep.entries.push_back(std::move(e));
    }
    return rep;
}

/// Rebuilds the certificate of one sweep entry (requires keep_labels).
inline HamCertificate entry_certificate(const SweepReport& rep, const SweepEntry& e) {
    const Group G(rep.groups[e.group]);
    HamCertificate c;
    c.group = G.descriptor();
    c.genset = to_elements(G, e.genset);
    c.claim = Claim::full;
    c.start = G.element(G.identity());
    c.labels = e.labels;
    c.method = e.method;
    c.verified = e.verified;
    return c;
}

inline json to_json(const SweepReport& rep, bool inline_certificates = false) {
    json entries = json::array();
    std::vector<json> groups;
    std::vector<Family> families;
    for (const auto& d : rep.groups) {
        groups.push_back(to_json(d));
        families.push_back(d.family);
    }
    std::optional<std::size_t> cached_index;
    std::optional<Group> cached;
    for (const auto& e : rep.entries) {
        if (cached_index != e.group) {
            cached.emplace(rep.groups[e.group]);
            cached_index = e.group;
        }
        json g = json::array();
        for (ElemId s : e.genset) g.push_back(to_json(cached->element(s)));
        json cert = nullptr;
        if (inline_certificates && !e.labels.empty()) cert = to_json(entry_certificate(rep, e));
        entries.push_back({{"group", groups[e.group]},
                           {"genset", std::move(g)},
                           {"route", std::string(to_string(e.route))},
                           {"method", e.method},
                           {"status", std::string(to_string(e.status))},
                           {"verified", e.verified},
                           {"certificate", std::move(cert)},
                           {"expansions", e.expansions}});
    }
    return entries;
}

}  // namespace hamcayley
