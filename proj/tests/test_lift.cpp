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

#include <gtest/gtest.h>

#include <array>
#include <random>

#include "hamcayley.hpp"

using namespace hamcayley;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::BadParameters;
}

/// Cay(Z_2; {1}): two vertices joined by one edge (1 = -1 collapses to one arc).
struct CayleyZ2 {
    std::array<std::array<Arc, 1>, 2> adj{{{Arc{1, Label::gen(1)}}, {Arc{0, Label::gen(1)}}}};
    std::size_t vertex_count() const noexcept { return 2; }
    std::optional<Vertex> step(Vertex v, Label l) const noexcept {
        if (l.index() != 1 || v > 1) return std::nullopt;
        return 1 - v;
    }
    std::span<const Arc> arcs(Vertex v) const noexcept { return adj[v]; }
    std::string vertex_key(Vertex v) const { return std::to_string(v); }
};

/// A hamiltonian cycle of Cay(Heis27; {x, y}) as labels over {1, 2}.
std::vector<Label> heis_cycle() {
    const Group Q(GroupDescriptor{Family::heis27, 1, {1, 1, 1}});
    const CayleyGraph cay(Q, {Q.word("x"), Q.word("y")});
    const auto r = ham_search(cay, 1'000'000, 0);
    EXPECT_EQ(r.status, SearchStatus::found);
    return r.walk->labels;
}

}  // namespace

TEST(Voltage, CaseVoltageIsPowerOfW) {
    for (std::int64_t r : {2, 4}) {
        const CaseInstance inst = canonical_case(CaseId{CaseKind::exp3a}, 7, r);
        const ElemId v = voltage(inst.G(), inst.genset, paper_quotient_cycle(inst.id), inst.fiber());
        EXPECT_EQ(v, inst.G().pow(inst.G().w(), 3 * r)) << "r = " << r;
    }
}

TEST(Voltage, BackAndForthIsTrivial) {
    const Group G(GroupDescriptor{Family::mod27, 7, {1, 2, 1}});
    const Genset S{G.word("xw"), G.word("y")};
    const Subgroup P = subgroup_closure(G, {G.w()});
    for (int l : {1, -1, 2, -2}) {
        const std::vector<Label> walk{Label::gen(l), Label::gen(-l)};
        EXPECT_EQ(voltage(G, S, walk, P), G.identity());
    }
    const std::vector<Label> open{Label::gen(1)};
    EXPECT_EQ(code_of([&] { voltage(G, S, open, P); }), ErrorCode::NotClosed);
    const std::vector<Label> bad{Label::gen(3)};
    EXPECT_EQ(code_of([&] { voltage(G, S, bad, P); }), ErrorCode::BadLabel);
}

TEST(Fgl, LiftsExp9c) {
    const CaseInstance inst = canonical_case(CaseId{CaseKind::exp9c}, 7, 2);
    const auto cycle = paper_quotient_cycle(inst.id);
    const HamCertificate c = fgl_lift(inst.G(), inst.genset, inst.fiber(), cycle);
    EXPECT_TRUE(c.verified);
    EXPECT_EQ(c.labels.size(), 189u);
    EXPECT_EQ(c.method, "fgl");
    const CayleyGraph cay(inst.G(), inst.genset);
    EXPECT_TRUE(verify_hamiltonian(cay, Walk{0, c.labels}).ok());
}

TEST(Fgl, TrivialVoltageRejected) {
    const Group G(GroupDescriptor{Family::heis27, 7, {2, 1, 1}});
    const Genset S{G.word("x"), G.word("y")};
    // {x, y} does not generate G, but the quotient by <w> is still Cay(Heis27;{x,y})
    EXPECT_EQ(code_of([&] { fgl_lift(G, S, subgroup_closure(G, {G.w()}), heis_cycle()); }),
              ErrorCode::VoltageDoesNotGenerate);
}

TEST(Fgl, RejectsNonHamiltonianQuotientWalk) {
    const CaseInstance inst = canonical_case(CaseId{CaseKind::exp9a}, 7, 2);
    auto cycle = paper_quotient_cycle(inst.id);
    std::swap(cycle[0], cycle[1]);
    std::swap(cycle[2], cycle[5]);
    EXPECT_EQ(code_of([&] { fgl_lift(inst.G(), inst.genset, inst.fiber(), cycle); }), ErrorCode::NotHamiltonian);
}

TEST(Fgl, NonNormalCyclicSubgroup) {
    const Group G(GroupDescriptor{Family::z13e27, 13, {1, 1, 1}});
    const ElemId w = G.w();
    const Genset S{w, G.mul(w, G.word("v"))};
    const Subgroup P = subgroup_closure(G, {w});
    ASSERT_FALSE(P.normal);
    const auto found = fgl_search(G, S, P, 2'000'000);
    ASSERT_TRUE(found.certificate);
    EXPECT_TRUE(found.certificate->verified);
    EXPECT_EQ(found.certificate->labels.size(), G.order());
    EXPECT_GT(found.expansions, 0u);
}

TEST(DoubleEdgeLift, SubstitutionMakesVoltageGenerate) {
    const Group G(GroupDescriptor{Family::heis27, 7, {2, 1, 1}});
    const Genset S{G.word("x"), G.word("y"), G.word("yw")};
    const Subgroup N = subgroup_closure(G, {G.w()});
    const auto cycle = heis_cycle();
    EXPECT_EQ(voltage(G, S, cycle, N), G.identity());
    const HamCertificate c = double_edge_lift(G, S, N, cycle, Label::gen(2), Label::gen(3));
    EXPECT_TRUE(c.verified);
    EXPECT_EQ(c.method, "double-edge");
    EXPECT_EQ(c.labels.size(), 189u);
    EXPECT_TRUE(std::count(c.labels.begin(), c.labels.end(), Label::gen(3)) +
                    std::count(c.labels.begin(), c.labels.end(), Label::gen(-3)) >
                0);
}

TEST(DoubleEdgeLift, Errors) {
    const Group G(GroupDescriptor{Family::heis27, 7, {2, 1, 1}});
    const Genset S{G.word("x"), G.word("y"), G.word("yw")};
    const Subgroup N = subgroup_closure(G, {G.w()});
    std::vector<Label> only_x(27, Label::gen(1));
    EXPECT_EQ(code_of([&] { double_edge_lift(G, S, N, only_x, Label::gen(2), Label::gen(3)); }),
              ErrorCode::NoEdgeLabelled);
    const auto cycle = heis_cycle();
    EXPECT_EQ(code_of([&] { double_edge_lift(G, S, N, cycle, Label::gen(1), Label::gen(3)); }), ErrorCode::BadParameters);
    EXPECT_EQ(code_of([&] { double_edge_lift(G, S, whole_group(G), cycle, Label::gen(2), Label::gen(3)); }),
              ErrorCode::BadParameters);
}

TEST(MultiDouble, Z13Listings) {
    for (auto [i, j] : kZ13Pairs) {
        const CaseRun run = run_case(CaseId{CaseKind::z13, i, j});
        EXPECT_TRUE(run.certificate.verified);
        EXPECT_EQ(run.certificate.labels.size(), 351u);
        EXPECT_LT(run.double_edge_step, 27u);
    }
}

TEST(MultiDouble, VoltagesDifferInsideH) {
    const CaseId c{CaseKind::z13, 2, 5};
    const CaseInstance inst = canonical_case(c, 13, 0);
    const QuotientMultigraph Q = case_quotient(inst);
    const auto claim = z13_claimed_double_edge(2, 5);
    const DoubleEdge de{*Q.vertex_by_key(claim.from), *Q.vertex_by_key(claim.to), claim.first, claim.second};
    const auto dv = double_edge_voltages(inst.G(), inst.genset, inst.fiber(), paper_quotient_cycle(c), de);
    const ElemId ratio = inst.G().mul(dv.used_voltage, inst.G().inv(dv.alternative_voltage));
    EXPECT_NE(ratio, inst.G().identity());
    EXPECT_TRUE(inst.fiber().contains(ratio));
    EXPECT_NE(dv.used, dv.alternative);
}

TEST(MultiDouble, EdgeNotOnCycle) {
    const CaseId c{CaseKind::z13, 1, 0};
    const CaseInstance inst = canonical_case(c, 13, 0);
    const QuotientMultigraph Q = case_quotient(inst);
    const auto cycle = paper_quotient_cycle(c);
    const auto visited = *trace(Q, Walk{Q.coset_of(0), cycle});
    // an arc between two cosets the cycle does not travel between
    std::optional<DoubleEdge> off;
    for (Vertex v = 0; v < Q.vertex_count() && !off; ++v)
        for (const Arc& a : Q.arcs(v)) {
            bool used = false;
            for (std::size_t k = 0; k + 1 < visited.size(); ++k)
                used |= (visited[k] == v && visited[k + 1] == a.to) || (visited[k] == a.to && visited[k + 1] == v);
            if (!used && a.to != v) {
                off = DoubleEdge{v, a.to, a.label, a.label};
                break;
            }
        }
    ASSERT_TRUE(off);
    EXPECT_EQ(code_of([&] { multidouble_lift(inst.G(), inst.genset, inst.fiber(), cycle, *off); }),
              ErrorCode::DoubleEdgeNotOnCycle);
}

TEST(Search, FindsAndVerifies) {
    const Group G(GroupDescriptor{Family::heis27, 1, {1, 1, 1}});
    const CayleyGraph cay(G, {G.word("x"), G.word("y")});
    for (std::uint64_t seed : {0, 1, 2, 3}) {
        const auto r = ham_search(cay, 1'000'000, seed);
        ASSERT_EQ(r.status, SearchStatus::found);
        EXPECT_TRUE(verify_hamiltonian(cay, *r.walk).ok());
    }
    EXPECT_EQ(ham_search(cay, 1'000'000, 5).walk->labels, ham_search(cay, 1'000'000, 5).walk->labels);
}

TEST(Search, NoCycleAndTimeout) {
    const Group G(GroupDescriptor{Family::heis27, 1, {1, 1, 1}});
    const CayleyGraph disconnected(G, {G.word("x")});
    EXPECT_EQ(ham_search(disconnected, 1'000'000).status, SearchStatus::no_cycle);
    const CayleyGraph cay(G, {G.word("x"), G.word("y")});
    const auto r = ham_search(cay, 1);
    EXPECT_EQ(r.status, SearchStatus::timeout);
    EXPECT_LE(r.expansions, 1u);

    EXPECT_EQ(ham_search(CayleyZ2{}, 1'000).status, SearchStatus::no_cycle);

    const Group Z(GroupDescriptor{Family::z13e27, 13, {1, 1, 1}});
    const CayleyGraph big(Z, {Z.w(), Z.mul(Z.pow(Z.w(), 5), Z.word("v"))});
    EXPECT_EQ(big.vertex_count(), 351u);
    EXPECT_EQ(ham_search(big, 10).status, SearchStatus::timeout);
}

TEST(Search, EnumeratesAllCyclesOfSmallGraph) {
    // Cay(Z_27; {x}) is a single 27-cycle: two orientations
    const Group G(GroupDescriptor{Family::z27, 1, {1, 1, 1}});
    const CayleyGraph cay(G, {G.word("x")});
    int count = 0;
    for_each_hamiltonian_cycle(cay, 1'000'000, [&](std::span<const Label> cyc) {
        EXPECT_TRUE(verify_hamiltonian(cay, Walk{0, {cyc.begin(), cyc.end()}}).ok());
        ++count;
        return false;
    });
    EXPECT_EQ(count, 2);
}

TEST(Hypotheses, Examples) {
    {
        const Group G(GroupDescriptor{Family::z27, 7, {2, 1, 1}});
        const Genset S{G.word("x"), G.word("xw")};
        const auto ms = lemma_hypotheses(G, S);
        EXPECT_TRUE(matches(ms, CitedLemma::keating_witte));
        EXPECT_TRUE(matches(ms, CitedLemma::pk_subgroup));
    }
    {
        const Group G(GroupDescriptor{Family::heis27, 7, {2, 1, 1}});
        const Genset S{G.word("x"), G.word("yw")};
        const auto ms = lemma_hypotheses(G, S);
        EXPECT_FALSE(matches(ms, CitedLemma::keating_witte));
        EXPECT_EQ(derived_subgroup(G).order(), 21u);
    }
    {
        const Group G(GroupDescriptor{Family::z27, 7, {2, 1, 1}});
        const Genset S{G.w(), G.word("x")};
        EXPECT_TRUE(matches(lemma_hypotheses(G, S), CitedLemma::normal_easy));
    }
    {
        const Group G(GroupDescriptor{Family::heis27, 7, {2, 1, 1}});
        const Genset S{G.word("x"), G.word("yw")};
        EXPECT_TRUE(lemma_hypotheses(G, S).empty());
    }
    {
        // both generators in the coset wQ
        const Group G(GroupDescriptor{Family::z13e27, 13, {1, 1, 1}});
        const Genset S{G.w(), G.mul(G.w(), G.word("v"))};
        ASSERT_TRUE(generates(G, S));
        const auto ms = lemma_hypotheses(G, S);
        ASSERT_TRUE(matches(ms, CitedLemma::pk_subgroup));
        for (const auto& m : ms) {
            if (m.lemma == CitedLemma::pk_subgroup) {
                EXPECT_EQ(m.subgroup.order(), 27u);
            }
        }
    }
    {
        const Group A(GroupDescriptor{Family::e27, 1, {1, 1, 1}});
        EXPECT_TRUE(keating_witte_match(A, derived_subgroup(A)).has_value());
    }
}

TEST(Certificate, JsonRoundTrip) {
    for (const CaseId& c : {CaseId{CaseKind::exp9e}, CaseId{CaseKind::z13, 1, 3}}) {
        const CaseRun run = run_case(c, 7);
        const json j = to_json(run.certificate);
        const HamCertificate back = certificate_from_json(json::parse(j.dump()));
        EXPECT_FALSE(back.verified);
        EXPECT_EQ(back.labels, run.certificate.labels);
        EXPECT_EQ(back.group, run.certificate.group);
        EXPECT_TRUE(replay_certificate(back).ok());
        json a = to_json(back), b = j;
        a.erase("verified");
        b.erase("verified");
        EXPECT_EQ(a, b);
    }
}

TEST(Certificate, Malformed) {
    const CaseRun run = run_case(CaseId{CaseKind::exp3a}, 7);
    json j = to_json(run.certificate);
    json missing = j;
    missing.erase("labels");
    EXPECT_EQ(code_of([&] { certificate_from_json(missing); }), ErrorCode::MalformedCertificate);
    json wrong = j;
    wrong["labels"][0] = "x";
    EXPECT_EQ(code_of([&] { certificate_from_json(wrong); }), ErrorCode::MalformedCertificate);
    json claim = j;
    claim["claim"] = "partial";
    EXPECT_EQ(code_of([&] { certificate_from_json(claim); }), ErrorCode::MalformedCertificate);

    json flipped = j;
    flipped["labels"][10] = -flipped["labels"][10].get<int>();
    const Verdict v = replay_certificate(certificate_from_json(flipped));
    EXPECT_FALSE(v.ok());
}

TEST(Certificate, RandomCorruptionNeverPasses) {
    const CaseRun run = run_case(CaseId{CaseKind::exp9b}, 13);
    std::mt19937 rng(3);
    const int choices[] = {1, -1, 2, -2};
    for (int t = 0; t < 200; ++t) {
        HamCertificate c = run.certificate;
        const std::size_t k = rng() % c.labels.size();
        Label l;
        do l = Label::gen(choices[rng() % 4]);
        while (l == c.labels[k]);
        c.labels[k] = l;
        EXPECT_FALSE(replay_certificate(c).ok());
    }
}
