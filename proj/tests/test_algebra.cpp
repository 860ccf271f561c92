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

#include <functional>
#include <random>
#include <set>
#include <vector>

#include "hamcayley.hpp"

using namespace hamcayley;

namespace {

using Matrix = std::vector<int>;  // row-major n x n

Matrix matmul(const Matrix& a, const Matrix& b, int n, int mod) {
    Matrix c(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + a[i * n + k] * b[k * n + j]) % mod;
    return c;
}

Matrix matpow(const Matrix& a, int k, int n, int mod) {
    Matrix r(n * n, 0);
    for (int i = 0; i < n; ++i) r[i * n + i] = 1;
    for (int i = 0; i < k; ++i) r = matmul(r, a, n, mod);
    return r;
}

/// Checks that `model` is an injective homomorphism from G into n x n matrices mod `mod`.
void expect_faithful(const Group& G, const std::function<Matrix(const Element&)>& model, int n, int mod) {
    std::vector<Matrix> image(G.order());
    std::set<Matrix> distinct;
    for (ElemId g = 0; g < G.order(); ++g) {
        image[g] = model(G.element(g));
        distinct.insert(image[g]);
    }
    EXPECT_EQ(distinct.size(), G.order());
    for (ElemId a = 0; a < G.order(); ++a)
        for (ElemId b = 0; b < G.order(); ++b)
            ASSERT_EQ(image[G.mul(a, b)], matmul(image[a], image[b], n, mod)) << G.key(a) << " * " << G.key(b);
}

Group heis(int p = 1, std::array<int, 3> act = {1, 1, 1}) { return Group(GroupDescriptor{Family::heis27, p, act}); }
Group mod27(int p = 1, std::array<int, 3> act = {1, 1, 1}) { return Group(GroupDescriptor{Family::mod27, p, act}); }
Group z13() { return Group(GroupDescriptor{Family::z13e27, 13, {1, 1, 1}}); }

}  // namespace

TEST(Modular, CubeRoots) {
    EXPECT_EQ(find_primitive_cube_roots(7), (std::pair<std::int64_t, std::int64_t>{2, 4}));
    EXPECT_EQ(find_primitive_cube_roots(13), (std::pair<std::int64_t, std::int64_t>{3, 9}));
    try {
        find_primitive_cube_roots(5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoCubeRoot);
    }
}

TEST(Modular, CubeRootsSatisfyQuadratic) {
    for (std::int64_t p = 7; p < 400; ++p) {
        if (!is_prime(p) || p % 3 != 1) continue;
        const auto [r, r2] = find_primitive_cube_roots(p);
        for (std::int64_t x : {r, r2}) {
            EXPECT_EQ((x * x + x + 1) % p, 0) << p;
            EXPECT_NE(x, 1);
        }
        EXPECT_EQ(r * r % p, r2);
    }
}

TEST(Modular, Basics) {
    EXPECT_EQ(mod(-3, 7), 4);
    EXPECT_EQ(pow_mod(3, 12, 13), 1);
    EXPECT_EQ(inv_mod(3, 7), 5);
    EXPECT_TRUE(is_prime(13));
    EXPECT_FALSE(is_prime(9));
    EXPECT_TRUE(is_prime_power(27));
    EXPECT_FALSE(is_prime_power(21));
}

TEST(Group, Orders) {
    EXPECT_EQ(heis(7, {2, 1, 1}).order(), 189u);
    EXPECT_EQ(z13().order(), 351u);
    const Group m = mod27(7, {1, 2, 1});
    EXPECT_EQ(m.order(), 189u);
}

TEST(Group, InvalidActionRejected) {
    // x has order 27 in Z_27, so its image must satisfy u^27 = 1; 3 has order 6 mod 7
    EXPECT_THROW(Group(GroupDescriptor{Family::z27, 7, {3, 1, 1}}), Error);
    // z = [x, y] in Heis27 must act trivially
    try {
        Group(GroupDescriptor{Family::heis27, 7, {1, 1, 2}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidAction);
    }
}

TEST(Group, HeisenbergProductRule) {
    const Group G = heis();
    EXPECT_EQ(G.element(G.mul(G.word("y"), G.word("x"))).q, (std::array<int, 3>{1, 1, 2}));
    EXPECT_EQ(G.commutator(G.word("x"), G.word("y")), G.word("z"));
    EXPECT_EQ(G.elem_order(G.word("x")), 3);
    for (ElemId g = 0; g < G.order(); ++g) EXPECT_EQ(G.pow(g, 3), G.identity());
}

TEST(Group, HeisenbergMatchesUnitriangularModel) {
    const Group G = heis();
    const Matrix x{1, 1, 0, 0, 1, 0, 0, 0, 1}, y{1, 0, 0, 0, 1, 1, 0, 0, 1};
    const Matrix xi = matpow(x, 2, 3, 3), yi = matpow(y, 2, 3, 3);
    const Matrix z = matmul(matmul(xi, yi, 3, 3), matmul(x, y, 3, 3), 3, 3);
    expect_faithful(
        G,
        [&](const Element& e) {
            return matmul(matmul(matpow(x, e.q[0], 3, 3), matpow(y, e.q[1], 3, 3), 3, 3), matpow(z, e.q[2], 3, 3), 3, 3);
        },
        3, 3);
}

TEST(Group, Mod27ProductRule) {
    const Group G = mod27();
    EXPECT_EQ(G.element(G.mul(G.word("y"), G.word("x"))).q, (std::array<int, 3>{7, 1, 0}));
    EXPECT_EQ(G.conjugate(G.word("x"), G.word("y")), G.word("x^4"));
    EXPECT_EQ(G.elem_order(G.word("x")), 9);
    int order9 = 0;
    for (ElemId g = 0; g < G.order(); ++g) order9 += G.elem_order(g) == 9;
    EXPECT_EQ(order9, 18);
}

TEST(Group, Mod27MatchesMatrixModel) {
    const Group G = mod27();
    const Matrix x{1, 1, 0, 1}, y{7, 0, 0, 1};
    expect_faithful(
        G, [&](const Element& e) { return matmul(matpow(x, e.q[0], 2, 9), matpow(y, e.q[1], 2, 9), 2, 9); }, 2, 9);
}

TEST(Group, Z13MatchesAffineModel) {
    const Group G = z13();
    Matrix W(16, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) W[i * 4 + j] = kMatrixW[i][j];
    W[15] = 1;
    expect_faithful(
        G,
        [&](const Element& e) {
            Matrix m = matpow(W, e.m, 4, 3);
            for (int j = 0; j < 3; ++j) m[12 + j] = e.q[j];
            return m;
        },
        4, 3);
}

TEST(Group, Z13InverseFromListingHeader) {
    const Group G = z13();
    const ElemId b = G.mul(G.pow(G.w(), 2), G.word("v"));
    EXPECT_EQ(G.element(G.inv(b)), (Element{Family::z13e27, {2, 2, 1}, 11}));
    const ElemId b3 = G.mul(G.pow(G.w(), 3), G.word("v"));
    EXPECT_EQ(G.element(G.inv(b3)), (Element{Family::z13e27, {0, 1, 2}, 10}));
    const ElemId b5 = G.mul(G.pow(G.w(), 5), G.word("v"));
    EXPECT_EQ(G.element(G.inv(b5)), (Element{Family::z13e27, {1, 0, 1}, 8}));
    const ElemId b6 = G.mul(G.pow(G.w(), 6), G.word("v"));
    EXPECT_EQ(G.element(G.inv(b6)), (Element{Family::z13e27, {2, 1, 1}, 7}));
}

TEST(Group, AxiomsOnSampledTriples) {
    std::mt19937 rng(5);
    for (const auto& d : {GroupDescriptor{Family::heis27, 13, {3, 1, 1}}, GroupDescriptor{Family::mod27, 13, {1, 9, 1}},
                          GroupDescriptor{Family::z27, 19, {7, 1, 1}}, GroupDescriptor{Family::z9xz3, 7, {2, 4, 1}},
                          GroupDescriptor{Family::e27, 7, {2, 4, 2}}, GroupDescriptor{Family::z13e27, 13, {1, 1, 1}}}) {
        const Group G(d);
        std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(G.order() - 1));
        for (int t = 0; t < 3000; ++t) {
            const ElemId a = pick(rng), b = pick(rng), c = pick(rng);
            ASSERT_EQ(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)));
            ASSERT_EQ(G.mul(a, G.identity()), a);
            ASSERT_EQ(G.mul(G.inv(a), a), G.identity());
            ASSERT_EQ(G.order() % static_cast<std::size_t>(G.elem_order(a)), 0u);
        }
    }
}

TEST(Group, FiberElementHasOrderP) {
    for (int p : {5, 7, 13}) EXPECT_EQ(heis(p, {1, 1, 1}).elem_order(heis(p).w()), p);
}

TEST(Group, ConjugateByIdentity) {
    const Group G = mod27(7, {1, 2, 1});
    for (ElemId g = 0; g < G.order(); ++g) EXPECT_EQ(G.conjugate(g, G.identity()), g);
}

TEST(Group, ElementRoundTripAndMismatch) {
    const Group G = heis(7, {2, 1, 1});
    for (ElemId g = 0; g < G.order(); ++g) EXPECT_EQ(G.id(G.element(g)), g);
    EXPECT_THROW(G.id(Element{Family::mod27, {1, 0, 0}, 0}), Error);
}

TEST(Subgroup, Closures) {
    const Group G = heis(7, {2, 1, 1});
    EXPECT_EQ(subgroup_closure(G, {G.w()}).order(), 7u);
    const Subgroup zw = subgroup_closure(G, {G.word("z"), G.w()});
    EXPECT_EQ(zw.order(), 21u);
    EXPECT_EQ(zw, derived_subgroup(G));
    EXPECT_EQ(subgroup_closure(G, std::span<const ElemId>{}).order(), 1u);
}

TEST(Subgroup, StructuralSubgroups) {
    const Group G = heis(7, {2, 1, 1});
    const Subgroup d = structural_subgroup(G, StructuralKind::derived);
    EXPECT_EQ(d.order(), 21u);
    EXPECT_TRUE(is_cyclic(G, d));
    const Subgroup z = structural_subgroup(G, StructuralKind::center);
    EXPECT_EQ(z, subgroup_closure(G, {G.word("z")}));
    EXPECT_EQ(structural_subgroup(G, StructuralKind::frattini_of_Q), z);
    const Group E(GroupDescriptor{Family::e27, 7, {1, 1, 1}});
    EXPECT_EQ(structural_subgroup(E, StructuralKind::derived).order(), 1u);
}

TEST(Subgroup, DerivedSubgroupFormula) {
    // G' = <Q', w^(u-1) for each action unit u>, of order 3p when Q is nonabelian and the action nontrivial
    for (int p : {7, 13}) {
        for (const auto& d : enumerate_descriptors(p)) {
            if (d.family == Family::z13e27) continue;
            const Group G(d);
            const Group Qbare(GroupDescriptor{d.family, 1, {1, 1, 1}});
            std::vector<ElemId> seeds;
            for (ElemId g : derived_subgroup(Qbare).elements) {
                Element e = Qbare.element(g);
                e.m = 0;
                seeds.push_back(G.id(Element{d.family, e.q, 0}));
            }
            bool nontrivial = false;
            for (int k = 0; k < q_arity(d.family); ++k)
                if (d.action[k] != 1) {
                    nontrivial = true;
                    seeds.push_back(G.pow(G.w(), d.action[k] - 1));
                }
            const Subgroup D = derived_subgroup(G);
            EXPECT_EQ(D, subgroup_closure(G, seeds)) << to_json(d).dump();
            if (nontrivial && derived_subgroup(Qbare).order() == 3) {
                EXPECT_EQ(D.order(), 3u * p);
            }
        }
    }
}

TEST(Subgroup, SylowCounts) {
    const Group G = heis(7, {2, 1, 1});
    const Subgroup P = sylow_subgroup(G, 7);
    EXPECT_TRUE(P.normal);
    EXPECT_EQ(sylow_count(G, 7), 1u);
    const Group Z = z13();
    EXPECT_FALSE(is_normal(Z, subgroup_closure(Z, {Z.w()})));
    EXPECT_EQ(sylow_count(Z, 13), 27u);
    EXPECT_EQ(sylow_count(Z, 3), 1u);
}

TEST(Automorphism, KnownEquivalences) {
    const Group H = heis(7, {2, 1, 1});
    const Genset a{H.word("x"), H.word("y^2w")}, b{H.word("x"), H.word("yw")};
    const auto phi = genset_equivalent(H, a, b);
    ASSERT_TRUE(phi.has_value());
    for (ElemId g = 0; g < H.order(); ++g)
        for (ElemId h = 0; h < H.order(); h += 7) ASSERT_EQ((*phi)(H.mul(g, h)), H.mul((*phi)(g), (*phi)(h)));

    const Group M = mod27(7, {2, 1, 1});
    EXPECT_TRUE(genset_equivalent(M, Genset{M.word("x"), M.word("xy^2w")}, Genset{M.word("x"), M.word("xyw")}));

    const auto id = genset_equivalent(H, b, b);
    ASSERT_TRUE(id.has_value());
    EXPECT_EQ((*id)(b[0]), b[0]);
    EXPECT_EQ((*id)(b[1]), b[1]);
}

TEST(Automorphism, NonGeneratingRejected) {
    const Group H = heis(7, {2, 1, 1});
    try {
        genset_equivalent(H, Genset{H.word("x"), H.word("y")}, Genset{H.word("x"), H.word("yw")});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotGenerating);
    }
}

TEST(Automorphism, WitnessesAreBijectiveHomomorphisms) {
    const Group M = mod27(7, {1, 2, 1});
    const auto autos = automorphism_group(M);
    ASSERT_FALSE(autos.empty());
    std::mt19937 rng(3);
    std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(M.order() - 1));
    for (std::size_t k = 0; k < autos.size(); k += 97) {
        std::set<ElemId> img(autos[k].image.begin(), autos[k].image.end());
        EXPECT_EQ(img.size(), M.order());
        for (int t = 0; t < 200; ++t) {
            const ElemId g = pick(rng), h = pick(rng);
            ASSERT_EQ(autos[k](M.mul(g, h)), M.mul(autos[k](g), autos[k](h)));
        }
    }
}

TEST(Automorphism, EnumerateGensets) {
    const Group H = heis(7, {2, 1, 1});
    const auto sets = enumerate_gensets(H);
    const auto key = genset_key(H, H.word("x"), H.word("yw"));
    EXPECT_TRUE(std::any_of(sets.begin(), sets.end(), [&](const Genset& s) { return s[0] == key.first && s[1] == key.second; }));
    for (const auto& s : sets) ASSERT_TRUE(generates(H, s));
    // {x, y} lies in Q
    const auto bad = genset_key(H, H.word("x"), H.word("y"));
    EXPECT_FALSE(std::any_of(sets.begin(), sets.end(), [&](const Genset& s) { return s[0] == bad.first && s[1] == bad.second; }));

    const Group C(GroupDescriptor{Family::z27, 7, {2, 1, 1}});
    EXPECT_FALSE(enumerate_gensets(C).empty());
}

TEST(Automorphism, EnumerationMatchesBruteForce) {
    const Group G(GroupDescriptor{Family::z9xz3, 7, {2, 1, 1}});
    std::set<std::pair<ElemId, ElemId>> brute;
    for (ElemId a = 1; a < G.order(); ++a)
        for (ElemId b = a + 1; b < G.order(); ++b) {
            const Genset s{a, b};
            if (inverse_class(G, a) == inverse_class(G, b) || !generates(G, s)) continue;
            brute.insert(genset_key(G, a, b));
        }
    std::set<std::pair<ElemId, ElemId>> listed;
    for (const auto& s : enumerate_gensets(G)) listed.insert({s[0], s[1]});
    EXPECT_EQ(listed, brute);
}

TEST(Serialize, DescriptorAndElementJson) {
    const GroupDescriptor d{Family::heis27, 7, {2, 1, 1}};
    EXPECT_EQ(to_json(d), json::parse(R"({"family":"heis27","p":7,"action":{"x":2,"y":1,"z":1}})"));
    EXPECT_EQ(descriptor_from_json(to_json(d)), d);
    EXPECT_EQ(to_json(GroupDescriptor{Family::z13e27, 13, {1, 1, 1}}), json::parse(R"({"family":"z13e27"})"));
    const Group G(d);
    EXPECT_EQ(to_json(G.element(G.word("xyw^3"))), json::parse(R"({"q":[1,1,0],"m":3})"));
    const Group Z = z13();
    EXPECT_EQ(to_json(Z.element(Z.word("w^2v"))), json::parse(R"({"t":2,"v":[1,0,0]})"));
    EXPECT_EQ(element_from_json(json::parse(R"({"t":2,"v":[1,0,0]})"), Family::z13e27), Z.element(Z.word("w^2v")));
}
