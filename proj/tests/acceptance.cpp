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

// Acceptance harness: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <string>

#include "hamcayley.hpp"
#include "listings.hpp"

using namespace hamcayley;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

int failures = 0;

void report(int n, const char* title, const std::function<Outcome()>& body, double limit_seconds = 0) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        if (o.pass) o.detail = "took longer than " + std::to_string(limit_seconds) + " s";
        o.pass = false;
    }
    std::printf("%s %d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", n, title, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::vector<ElemId> prefix_products(const Group& G, std::span<const ElemId> S, std::span<const Label> walk) {
    std::vector<ElemId> out{G.identity()};
    for (Label l : walk) out.push_back(G.mul(out.back(), *label_element(G, S, l)));
    return out;
}

Outcome replay_displays() {
    Outcome o;
    {
        const CaseInstance inst = canonical_case(CaseId{CaseKind::exp3a}, 7, 2);
        const Group& G = inst.G();
        const auto cycle = paper_quotient_cycle(inst.id);
        const QuotientMultigraph Q = case_quotient(inst);
        o.require(verify_hamiltonian(Q, Walk{Q.coset_of(0), cycle}).ok(), "exp3a listing is not hamiltonian");
        const auto words = listings::split_words(listings::kExp3aTrace);
        const auto pre = prefix_products(G, inst.genset, cycle);
        o.require(pre.size() == words.size(), "exp3a listing length");
        for (std::size_t s = 0; s < pre.size() && s < words.size(); ++s)
            o.require(G.q_part(pre[s]) == G.q_part(words[s] == "e" ? G.identity() : G.word(words[s])),
                      "exp3a vertex " + std::to_string(s));
    }
    const std::pair<CaseKind, const std::vector<std::pair<int, int>>*> hc[] = {{CaseKind::exp9a, &listings::kHC3Trace},
                                                                                {CaseKind::exp9b, &listings::kHC9Trace}};
    for (const auto& [kind, trace] : hc) {
        const CaseInstance inst = canonical_case(CaseId{kind}, 7, 2);
        const Group& G = inst.G();
        const ElemId a = inst.a_element(), b = inst.b_element();
        const bool pre_ok = kind == CaseKind::exp9a ? hc3_preconditions(G, a, b).holds : hc9_preconditions(G, a, b).holds;
        const std::string name = kind == CaseKind::exp9a ? "HC3" : "HC9";
        o.require(pre_ok, name + " preconditions");
        const auto cycle = paper_quotient_cycle(inst.id);
        const QuotientMultigraph Q = case_quotient(inst);
        o.require(verify_hamiltonian(Q, Walk{Q.coset_of(0), cycle}).ok(), name + " is not hamiltonian");
        const auto pre = prefix_products(G, inst.genset, cycle);
        o.require(pre.size() == trace->size(), name + " length");
        for (std::size_t s = 0; s < pre.size() && s < trace->size(); ++s) {
            const auto [i, j] = (*trace)[s];
            o.require(G.q_part(pre[s]) == G.q_part(G.mul(G.pow(a, i), G.pow(b, j))), name + " vertex " + std::to_string(s));
        }
    }
    for (auto [i, j] : kZ13Pairs) {
        const CaseId c{CaseKind::z13, i, j};
        const CaseInstance inst = canonical_case(c, 13, 0);
        const auto cycle = paper_quotient_cycle(c);
        const QuotientMultigraph Q = case_quotient(inst);
        o.require(verify_hamiltonian(Q, Walk{Q.coset_of(0), cycle}).ok(), to_string(c) + " is not hamiltonian");
        const auto expected = listings::split_words(listings::kZ13Keys.at({i, j}));
        const auto pre = prefix_products(inst.G(), inst.genset, cycle);
        o.require(pre.size() == expected.size(), to_string(c) + " length");
        for (std::size_t s = 0; s < pre.size() && s < expected.size(); ++s)
            o.require(z13_coset_key(inst.G(), pre[s]) == expected[s], to_string(c) + " coset " + std::to_string(s));
    }
    return o;
}

std::int64_t listed_exponent(CaseKind k, std::int64_t r, std::int64_t p) {
    switch (k) {
        case CaseKind::exp3a: return mod(3 * r, p);
        case CaseKind::exp3b: return mod(3 * (3 * r + 2), p);
        case CaseKind::exp9a: return mod(6 * r, p);
        case CaseKind::exp9b: return mod(3 * (r + 1), p);
        case CaseKind::exp9c: return mod(-3 * (r + 2), p);
        case CaseKind::exp9d: return mod(3, p);
        case CaseKind::exp9e: return mod(3 * (r - 1), p);
        case CaseKind::exp9f: return mod(-3, p);
        default: return -1;
    }
}

Outcome endpoint_formulas() {
    Outcome o;
    std::size_t checks = 0, forms = 0;
    for (std::int64_t p : {7, 13, 19, 31}) {
        const auto [r1, r2] = find_primitive_cube_roots(p);
        for (CaseKind k : kSection2Kinds)
            for (std::int64_t r : {r1, r2}) {
                const CaseInstance inst = canonical_case(CaseId{k}, p, r);
                const std::string at = to_string(inst.id) + " p=" + std::to_string(p) + " r=" + std::to_string(r);
                const std::int64_t numeric = numeric_endpoint_exponent(inst);
                o.require(numeric == listed_exponent(k, r, p), at + " numeric " + std::to_string(numeric));
                o.require(endpoint_closed_form(inst.id, r, p) == listed_exponent(k, r, p), at + " closed form");
                ++checks;
                const CaseSpec spec = case_spec(inst.id);
                if (spec.source == CycleSource::pattern_hc3 || spec.source == CycleSource::pattern_hc9) {
                    const auto [ra, rb] = action_exponents(inst);
                    const std::int64_t m = spec.form == EndpointForm::e1 ? e1_general(ra, rb, p) : e2_general(ra, rb, p);
                    o.require(m == numeric, at + " general form");
                    ++forms;
                }
            }
    }
    o.detail = o.pass ? std::to_string(checks) + " closed forms, " + std::to_string(forms) + " E1/E2 evaluations" : o.detail;
    return o;
}

Outcome full_lifts() {
    Outcome o;
    std::size_t n = 0;
    auto check = [&](const CaseId& c, std::int64_t p, std::size_t order) {
        const CaseRun run = run_case(c, p);
        const CayleyGraph cay(run.instance.G(), run.instance.genset);
        o.require(run.certificate.verified && cay.vertex_count() == order &&
                      verify_hamiltonian(cay, Walk{0, run.certificate.labels}).ok(),
                  to_string(c) + " p=" + std::to_string(p));
        ++n;
    };
    for (CaseKind k : kSection2Kinds) {
        check(CaseId{k}, 7, 189);
        check(CaseId{k}, 13, 351);
    }
    for (const CaseId& c : z13_cases()) check(c, 13, 351);
    if (o.pass) o.detail = std::to_string(n) + " hamiltonian cycles";
    return o;
}

Outcome identities() {
    const F3Report f = verify_f3_identities();
    Outcome o;
    o.require(f.factorization, "factorization of X^13 - 1");
    o.require(f.minpoly_of_w, "minimal polynomial of W");
    o.require(f.rows_partition, "conjugacy rows");
    o.require(f.rows_match_cubics, "rows against cubics");
    return o;
}

Outcome canonicalization() {
    Outcome o;
    std::size_t groups = 0, sets = 0;
    for (int p : {7, 13}) {
        for (const auto& d : enumerate_descriptors(p)) {
            if (d.family != Family::heis27 && d.family != Family::mod27) continue;
            const Group G(d);
            const Route route = group_route(analyze_group(G));
            if (!is_case_route(route)) continue;
            const GensetUniverse U(G);
            const auto rep = genset_canonicalization_check(G, U, route);
            o.require(rep.ok(), to_json(d).dump() + ": " + std::to_string(rep.unmatched.size()) + " unmatched");
            ++groups;
            sets += rep.gensets;
        }
    }
    std::size_t shapes = 0;
    for (const auto& e : z13_shape_check()) {
        o.require(e.canonical.has_value(), "z13 pair " + std::to_string(e.i) + "," + std::to_string(e.j));
        ++shapes;
    }
    if (o.pass)
        o.detail = std::to_string(groups) + " groups, " + std::to_string(sets) + " generating pairs, " +
                   std::to_string(shapes) + " Z13 shapes";
    return o;
}

Outcome sweeps() {
    Outcome o;
    std::string counts;
    for (int p : {7, 13}) {
        SweepOptions opt;
        const SweepReport a = theorem_sweep(p, opt);
        o.require(a.failures() == 0, "p=" + std::to_string(p) + ": " + std::to_string(a.failures()) + " failures");
        for (const auto& e : a.entries)
            o.require(e.expansions <= opt.budget, "p=" + std::to_string(p) + ": budget exceeded");
        const SweepReport b = theorem_sweep(p, opt);
        o.require(to_json(a).dump() == to_json(b).dump(), "p=" + std::to_string(p) + ": report not deterministic");
        counts += (counts.empty() ? "" : ", ") + std::string("p=") + std::to_string(p) + " " +
                  std::to_string(a.groups.size()) + " groups / " + std::to_string(a.entries.size()) + " pairs";
    }
    if (o.pass) o.detail = counts;
    return o;
}

struct TrialContext {
    CaseInstance inst;
    Subgroup H;
    std::optional<QuotientMultigraph> Q;
    std::vector<Label> cycle;
    std::vector<DoubleEdge> crossed;  // double edges the listed cycle traverses
};

/// Shortest label path between two quotient vertices.
std::vector<Label> path_between(const QuotientMultigraph& Q, Vertex from, Vertex to) {
    std::vector<std::optional<std::pair<Vertex, Label>>> prev(Q.vertex_count());
    std::vector<char> seen(Q.vertex_count(), 0);
    std::queue<Vertex> q;
    q.push(from);
    seen[from] = 1;
    while (!q.empty()) {
        const Vertex v = q.front();
        q.pop();
        for (const Arc& a : Q.arcs(v))
            if (!seen[a.to]) {
                seen[a.to] = 1;
                prev[a.to] = {v, a.label};
                q.push(a.to);
            }
    }
    std::vector<Label> out;
    for (Vertex v = to; v != from; v = prev[v]->first) out.insert(out.begin(), prev[v]->second);
    return out;
}

Outcome soundness() {
    Outcome o;
    std::vector<TrialContext> ctx;
    for (const CaseId& c : all_cases()) {
        for (std::int64_t p : {7, 13, 19}) {
            if (c.is_z13() && p != 13) continue;
            const auto [r1, r2] = find_primitive_cube_roots(p);
            for (std::int64_t r : {r1, r2}) {
                if (c.is_z13() && r != r1) continue;
                TrialContext t;
                t.inst = canonical_case(c, p, r);
                t.H = t.inst.fiber();
                t.Q.emplace(case_quotient(t.inst));
                t.cycle = paper_quotient_cycle(c);
                const auto visited = *trace(*t.Q, Walk{t.Q->coset_of(0), t.cycle});
                for (const DoubleEdge& de : find_double_edges(*t.Q))
                    for (std::size_t k = 0; k < t.cycle.size(); ++k)
                        if ((visited[k] == de.from && visited[k + 1] == de.to) ||
                            (visited[k] == de.to && visited[k + 1] == de.from)) {
                            t.crossed.push_back(de);
                            break;
                        }
                ctx.push_back(std::move(t));
            }
        }
    }

    std::mt19937_64 rng(20261016);
    const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "hamcayley-acceptance.cert.json";
    std::size_t lifted = 0, rejected = 0, double_checks = 0;
    for (int trial = 0; trial < 10'000 && o.pass; ++trial) {
        TrialContext& t = ctx[rng() % ctx.size()];
        const Group& G = t.inst.G();
        const QuotientMultigraph& Q = *t.Q;
        const std::string at = "trial " + std::to_string(trial) + " " + to_string(t.inst.id);

        // random closed walk in the quotient
        std::vector<Label> walk;
        Vertex v = Q.coset_of(0);
        const std::size_t len = 1 + rng() % 60;
        for (std::size_t k = 0; k < len; ++k) {
            const auto arcs = Q.arcs(v);
            const Arc& a = arcs[rng() % arcs.size()];
            walk.push_back(a.label);
            v = a.to;
        }
        for (Label l : path_between(Q, v, Q.coset_of(0))) walk.push_back(l);
        const ElemId volt = voltage(G, t.inst.genset, walk, t.H);
        o.require(t.H.contains(volt), at + ": voltage outside H");
        o.require(volt == prefix_products(G, t.inst.genset, walk).back(), at + ": voltage is not the label product");

        // fgl_lift on a perturbed listed cycle
        std::vector<Label> cand = t.cycle;
        switch (rng() % 4) {
            case 0: break;
            case 1: std::swap(cand[rng() % cand.size()], cand[rng() % cand.size()]); break;
            case 2: cand[rng() % cand.size()] = Label::gen(static_cast<int>(1 + rng() % 2) * (rng() % 2 ? 1 : -1)); break;
            case 3:
                std::reverse(cand.begin(), cand.end());
                for (Label& l : cand) l = l.inverse();
                break;
        }
        try {
            const HamCertificate cert = fgl_lift(G, t.inst.genset, t.H, cand);
            o.require(cert.verified, at + ": unverified certificate emitted");
            const CayleyGraph cay(G, t.inst.genset);
            o.require(verify_hamiltonian(cay, Walk{0, cert.labels}).ok(), at + ": emitted certificate fails replay");
            const std::string text = to_json(cert).dump();
            int code;
            if (trial % 50 == 0) {
                cli::write_atomic(tmp, text);
                code = cli::cmd_check_certificate(tmp).code;
            } else {
                code = cli::cmd_check_certificate_text(text).code;
            }
            o.require(code == cli::kExitOk, at + ": certificate round trip exit " + std::to_string(code));
            ++lifted;
        } catch (const Error&) {
            ++rejected;
        }

        // both voltages across a traversed double edge
        if (!t.crossed.empty() && is_prime(static_cast<std::int64_t>(t.H.order()))) {
            const DoubleEdge& de = t.crossed[rng() % t.crossed.size()];
            const auto dv = double_edge_voltages(G, t.inst.genset, t.H, t.cycle, de);
            const ElemId ratio = G.mul(dv.used_voltage, G.inv(dv.alternative_voltage));
            o.require(ratio != G.identity() && t.H.contains(ratio), at + ": double-edge voltages coincide");
            const HamCertificate md = multidouble_lift(G, t.inst.genset, t.H, t.cycle, de);
            o.require(md.verified && cli::cmd_check_certificate_text(to_json(md).dump()).code == cli::kExitOk,
                      at + ": multidouble certificate round trip");
            ++double_checks;
        }
    }
    std::filesystem::remove(tmp);
    if (o.pass)
        o.detail = "10000 trials, " + std::to_string(lifted) + " lifts certified, " + std::to_string(rejected) +
                   " rejected inputs, " + std::to_string(double_checks) + " double-edge checks";
    return o;
}

}  // namespace

int main() {
    report(1, "explicit cycle replay", replay_displays, 1.0);
    report(2, "endpoint formulas", endpoint_formulas);
    report(3, "full lifts", full_lifts, 10.0);
    report(4, "algebraic identities over F_3", identities);
    report(5, "generating-set canonicalization", canonicalization, 300.0);
    report(6, "theorem sweep p=7,13", sweeps);
    report(7, "toolkit soundness properties", soundness);
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
