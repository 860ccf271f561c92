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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "automorphism.hpp"
#include "errors.hpp"
#include "f3poly.hpp"
#include "graph.hpp"
#include "group.hpp"
#include "hypotheses.hpp"
#include "lift.hpp"
#include "modular.hpp"
#include "pattern.hpp"
#include "subgroup.hpp"

namespace hamcayley {

// ---------------------------------------------------------------------------
// Case identifiers
// ---------------------------------------------------------------------------

enum class CaseKind { exp3a, exp3b, exp9a, exp9b, exp9c, exp9d, exp9e, exp9f, z13 };

struct CaseId {
    CaseKind kind = CaseKind::exp3a;
    int i = 0;  // (i, j) for z13 only
    int j = 0;

    bool operator==(const CaseId&) const = default;
    bool is_z13() const noexcept { return kind == CaseKind::z13; }
};

inline constexpr std::array<std::pair<int, int>, 7> kZ13Pairs = {
    {{1, 0}, {2, 0}, {1, 2}, {1, 3}, {1, 5}, {1, 6}, {2, 5}}};

inline constexpr std::array<CaseKind, 8> kSection2Kinds = {CaseKind::exp3a, CaseKind::exp3b, CaseKind::exp9a,
                                                          CaseKind::exp9b, CaseKind::exp9c, CaseKind::exp9d,
                                                          CaseKind::exp9e, CaseKind::exp9f};

inline std::string to_string(const CaseId& c) {
    switch (c.kind) {
        case CaseKind::exp3a: return "exp3a";
        case CaseKind::exp3b: return "exp3b";
        case CaseKind::exp9a: return "exp9a";
        case CaseKind::exp9b: return "exp9b";
        case CaseKind::exp9c: return "exp9c";
        case CaseKind::exp9d: return "exp9d";
        case CaseKind::exp9e: return "exp9e";
        case CaseKind::exp9f: return "exp9f";
        case CaseKind::z13: return "z13:" + std::to_string(c.i) + "," + std::to_string(c.j);
    }
    return "?";
}

/// File-name friendly form: "exp3a", "z13_1_0".
inline std::string file_stem(const CaseId& c) {
    if (!c.is_z13()) return to_string(c);
    return "z13_" + std::to_string(c.i) + "_" + std::to_string(c.j);
}

inline CaseId parse_case_id(std::string_view s) {
    for (CaseKind k : kSection2Kinds)
        if (to_string(CaseId{k}) == s) return CaseId{k};
    for (auto [i, j] : kZ13Pairs) {
        const CaseId c{CaseKind::z13, i, j};
        if (to_string(c) == s || file_stem(c) == s) return c;
    }
    throw Error(ErrorCode::BadParameters, "unknown case '" + std::string(s) + "'");
}

inline std::vector<CaseId> section2_cases() {
    std::vector<CaseId> out;
    for (CaseKind k : kSection2Kinds) out.push_back(CaseId{k});
    return out;
}

inline std::vector<CaseId> z13_cases() {
    std::vector<CaseId> out;
    for (auto [i, j] : kZ13Pairs) out.push_back(CaseId{CaseKind::z13, i, j});
    return out;
}

inline std::vector<CaseId> all_cases() {
    auto out = section2_cases();
    for (const auto& c : z13_cases()) out.push_back(c);
    return out;
}

// ---------------------------------------------------------------------------
// Static case data
// ---------------------------------------------------------------------------

enum class CycleSource { listing, pattern_hc3, pattern_hc9, pattern_exp3b };

/// Which factor carries the w-part: E1 means a lies in Q, E2 means b does.
enum class EndpointForm { e1, e2 };

struct CaseSpec {
    CaseId id;
    Family family;
    bool action_on_x;  // else the action is on y
    std::array<const char*, 2> genset_words;
    Label a;
    Label b;
    CycleSource source;
    EndpointForm form;
};

inline constexpr const char* kPatternHC = "(a^3, b^-1, a, b^-1, a^4, b^2, a^-2, b, a^2, b, a^3, b, a^-1, b^-1, a^-1, b^-2)";
inline constexpr const char* kPatternExp3b = "((a,b^2)^3#, a)^3";

/// Labels of the exponent-3 listing: a = x, b = yw; upper case is the inverse.
inline constexpr std::string_view kExp3aListing = "aabAAbbaabaababbAbaabaBaaBB";

inline CaseSpec case_spec(const CaseId& c) {
    const Label p1 = Label::gen(1), p2 = Label::gen(2);
    switch (c.kind) {
        case CaseKind::exp3a: return {c, Family::heis27, true, {"x", "yw"}, p1, p2, CycleSource::listing, EndpointForm::e1};
        case CaseKind::exp3b: return {c, Family::heis27, true, {"x", "xyw"}, p1, p2, CycleSource::pattern_exp3b, EndpointForm::e1};
        case CaseKind::exp9a: return {c, Family::mod27, true, {"x", "yw"}, p1, p2, CycleSource::pattern_hc3, EndpointForm::e1};
        case CaseKind::exp9b: return {c, Family::mod27, true, {"x", "xyw"}, p1, p2.inverse(), CycleSource::pattern_hc9, EndpointForm::e1};
        case CaseKind::exp9c: return {c, Family::mod27, false, {"xw", "y"}, p1, p2, CycleSource::pattern_hc3, EndpointForm::e2};
        case CaseKind::exp9d: return {c, Family::mod27, false, {"xyw", "y"}, p1, p2, CycleSource::pattern_hc3, EndpointForm::e2};
        case CaseKind::exp9e: return {c, Family::mod27, false, {"xy", "xw"}, p2, p1.inverse(), CycleSource::pattern_hc9, EndpointForm::e2};
        case CaseKind::exp9f: return {c, Family::mod27, false, {"xy", "x^2yw"}, p1, p2, CycleSource::pattern_hc9, EndpointForm::e1};
        case CaseKind::z13: return {c, Family::z13e27, false, {"", ""}, p1, p2, CycleSource::listing, EndpointForm::e1};
    }
    throw Error(ErrorCode::BadParameters, "unknown case");
}

/// Quotient cycle labels of the seven Z_13 listings (a = w^i, b = w^j v).
inline std::string_view z13_listing(int i, int j) {
    static const std::array<std::pair<std::pair<int, int>, std::string_view>, 7> table = {{
        {{1, 0}, "BaaaBaaabaaaaBAAAbbAABAAAAB"},
        {{2, 0}, "BaaaBAAAABABaaaBaaaabAAAAAB"},
        {{1, 2}, "BAABBaaababaaaaaaaBAAbbAAAB"},
        {{1, 3}, "BABaabaaaaaaaBAAAAAbAAAAAAB"},
        {{1, 5}, "BaaaBaaaabaBaaaaBaaabaaaaaB"},
        {{1, 6}, "BBAAbbbaaaaaaaaaabAAAAAAAAB"},
        {{2, 5}, "BabaaabbAAAAAAABaaaaaaBAAAB"},
    }};
    for (const auto& [ij, s] : table)
        if (ij == std::pair{i, j}) return s;
    throw Error(ErrorCode::BadParameters, "no listing for this pair");
}

/// The claimed double edge of each Z_13 listing, by coset keys, with its two labels.
struct ClaimedDoubleEdge {
    const char* from;
    const char* to;
    Label first;
    Label second;
};

inline ClaimedDoubleEdge z13_claimed_double_edge(int i, int j) {
    const Label a = Label::gen(1), b = Label::gen(2);
    if (i == 1 && j == 0) return {"222", "022", a.inverse(), b};
    if (i == 2 && j == 0) return {"020", "220", a, b.inverse()};
    if (i == 1 && j == 2) return {"220", "022", a, b};
    if (i == 1 && j == 3) return {"200", "020", a, b};
    if (i == 1 && j == 5) return {"220", "022", a, b.inverse()};
    if (i == 1 && j == 6) return {"021", "210", a.inverse(), b};
    if (i == 2 && j == 5) return {"112", "210", a.inverse(), b};
    throw Error(ErrorCode::BadParameters, "no double edge for this pair");
}

inline std::vector<Label> decode_listing(std::string_view s, Label a, Label b) {
    std::vector<Label> out;
    for (char ch : s) {
        switch (ch) {
            case 'a': out.push_back(a); break;
            case 'A': out.push_back(a.inverse()); break;
            case 'b': out.push_back(b); break;
            case 'B': out.push_back(b.inverse()); break;
            default: throw Error(ErrorCode::MalformedPattern, "bad listing symbol");
        }
    }
    return out;
}

/// Coset key "i1i2i3" for P-cosets of Z_13 x| (Z_3)^3 (P = <w>): the vector part.
inline std::string z13_coset_key(const Group& G, ElemId g) {
    const Element e = G.element(g);
    return std::to_string(e.q[0]) + std::to_string(e.q[1]) + std::to_string(e.q[2]);
}

// ---------------------------------------------------------------------------
// Canonical instances
// ---------------------------------------------------------------------------

inline void require_section2_prime(std::int64_t p) {
    if (!is_prime(p) || p < 7 || p % 3 != 1)
        throw Error(ErrorCode::BadParameters, "p must be a prime with p = 1 mod 3 and p >= 7 (got " + std::to_string(p) + ")");
}

inline bool is_primitive_cube_root(std::int64_t r, std::int64_t p) {
    r = mod(r, p);
    return r != 1 && pow_mod(r, 3, p) == 1;
}

/// One case's group, generating set and the (a, b) binding used by its cycle.
struct CaseInstance {
    CaseId id;
    std::shared_ptr<const Group> group;
    Genset genset;
    Label a;
    Label b;
    std::int64_t p = 13;
    std::int64_t r = 0;

    const Group& G() const noexcept { return *group; }
    ElemId a_element() const { return *label_element(*group, genset, a); }
    ElemId b_element() const { return *label_element(*group, genset, b); }
    /// P = <w>.
    Subgroup fiber() const { return subgroup_closure(*group, {group->w()}); }
};

inline GroupDescriptor case_descriptor(const CaseId& c, std::int64_t p, std::int64_t r) {
    const CaseSpec spec = case_spec(c);
    if (c.is_z13()) return GroupDescriptor{Family::z13e27, 13, {1, 1, 1}};
    require_section2_prime(p);
    if (!is_primitive_cube_root(r, p))
        throw Error(ErrorCode::BadParameters, std::to_string(r) + " is not a primitive cube root of 1 mod " + std::to_string(p));
    GroupDescriptor d{spec.family, static_cast<int>(p), {1, 1, 1}};
    d.action[spec.action_on_x ? 0 : 1] = static_cast<int>(mod(r, p));
    return d;
}

inline CaseInstance canonical_case(const CaseId& c, std::int64_t p, std::int64_t r) {
    const CaseSpec spec = case_spec(c);
    CaseInstance inst;
    inst.id = c;
    inst.group = std::make_shared<const Group>(case_descriptor(c, p, r));
    inst.a = spec.a;
    inst.b = spec.b;
    const Group& G = *inst.group;
    if (c.is_z13()) {
        if (std::find(kZ13Pairs.begin(), kZ13Pairs.end(), std::pair{c.i, c.j}) == kZ13Pairs.end())
            throw Error(ErrorCode::BadParameters, "(i,j) is not one of the seven listed pairs");
        inst.genset = {G.pow(G.w(), c.i), G.mul(G.pow(G.w(), c.j), G.word("v"))};
        inst.p = 13;
        inst.r = 0;
    } else {
        inst.genset = {G.word(spec.genset_words[0]), G.word(spec.genset_words[1])};
        inst.p = p;
        inst.r = mod(r, p);
    }
    return inst;
}

inline std::vector<Label> paper_quotient_cycle(const CaseId& c) {
    const CaseSpec spec = case_spec(c);
    switch (spec.source) {
        case CycleSource::listing:
            return c.is_z13() ? decode_listing(z13_listing(c.i, c.j), spec.a, spec.b)
                              : decode_listing(kExp3aListing, spec.a, spec.b);
        case CycleSource::pattern_exp3b: return expand_pattern(kPatternExp3b, spec.a, spec.b);
        case CycleSource::pattern_hc3:
        case CycleSource::pattern_hc9: return expand_pattern(kPatternHC, spec.a, spec.b);
    }
    return {};
}

/// The quotient multigraph the case's cycle lives in: G/P for the normal-P
/// cases, P\Cay(G;S) keyed "i1i2i3" for Z_13.
inline QuotientMultigraph case_quotient(const CaseInstance& inst) {
    if (inst.id.is_z13()) return QuotientMultigraph(inst.G(), inst.genset, inst.fiber(), z13_coset_key);
    return QuotientMultigraph(inst.G(), inst.genset, inst.fiber());
}

// ---------------------------------------------------------------------------
// Preconditions of the two 27-cycles in G/P
// ---------------------------------------------------------------------------

struct HcCheck {
    bool holds = false;
    int order_a = 0;
    int order_b = 0;
};

/// |a| = 9, |b| = 3, a^b = a^4 in G/P.
inline HcCheck hc3_preconditions(const Group& G, ElemId a, ElemId b) {
    const ElemId qa = G.q_part(a), qb = G.q_part(b);
    HcCheck c{false, G.elem_order(qa), G.elem_order(qb)};
    c.holds = c.order_a == 9 && c.order_b == 3 && G.conjugate(qa, qb) == G.pow(qa, 4);
    return c;
}

/// |a| = 9, |b| = 9, a^b = a^7, b^3 = a^6 in G/P.
inline HcCheck hc9_preconditions(const Group& G, ElemId a, ElemId b) {
    const ElemId qa = G.q_part(a), qb = G.q_part(b);
    HcCheck c{false, G.elem_order(qa), G.elem_order(qb)};
    c.holds = c.order_a == 9 && c.order_b == 9 && G.conjugate(qa, qb) == G.pow(qa, 7) && G.pow(qb, 3) == G.pow(qa, 6);
    return c;
}

// ---------------------------------------------------------------------------
// Endpoint exponents
// ---------------------------------------------------------------------------

/// m for (HC) when a lies in Q; the voltage is w_2^m.
inline std::int64_t e1_general(std::int64_t r1, std::int64_t r2, std::int64_t p) {
    return mod(-r1 * r1 % p * r2 - r1 * r1 + 2 * r1 * r2 + 2 * r1 - r2 - 1, p);
}

/// m for (HC) when b lies in Q; the voltage is w_1^m.
inline std::int64_t e2_general(std::int64_t r1, std::int64_t r2, std::int64_t p) {
    const std::int64_t r1s = r1 * r1 % p, r2s = r2 * r2 % p;
    return mod(2 * r1s % p * r2s + 3 * r1 * r2s + r2s + r1s * r2 + r1 * r2 + r2 - r1 + 1, p);
}

inline std::int64_t e1a(std::int64_t r1, std::int64_t p) { return mod(6 * r1, p); }
inline std::int64_t e1b(std::int64_t r1, std::int64_t r2, std::int64_t p) { return mod(3 * r1 * (r2 + 1), p); }
inline std::int64_t e2a(std::int64_t r2, std::int64_t p) { return mod(-3 * (r2 + 2), p); }
inline std::int64_t e2b(std::int64_t r1, std::int64_t r2, std::int64_t p) { return mod(-r1 * r2 - 2 * r1 + r2 + 2, p); }

/// Closed-form exponent of the case's voltage, relative to the w-part of the
/// generator that carries it (w_2 for E1-type cases, w_1 for E2-type).
inline std::int64_t endpoint_closed_form(const CaseId& c, std::int64_t r, std::int64_t p) {
    if (c.is_z13()) throw Error(ErrorCode::BadParameters, "Z_13 cases have no closed-form endpoint");
    require_section2_prime(p);
    if (!is_primitive_cube_root(r, p)) throw Error(ErrorCode::BadParameters, "r must be a primitive cube root of 1");
    switch (c.kind) {
        case CaseKind::exp3a: return mod(3 * r, p);
        case CaseKind::exp3b: return mod(3 * (3 * r + 2), p);
        case CaseKind::exp9a: return mod(6 * r, p);
        case CaseKind::exp9b: return mod(3 * (r + 1), p);
        case CaseKind::exp9c: return mod(-3 * (r + 2), p);
        case CaseKind::exp9d: return mod(3, p);
        case CaseKind::exp9e: return mod(3 * (r - 1), p);
        case CaseKind::exp9f: return mod(-3, p);
        default: break;
    }
    throw Error(ErrorCode::BadParameters, "unknown case");
}

/// The w-part exponent of the generator carrying the voltage.
inline std::int64_t carrier_exponent(const CaseInstance& inst) {
    const CaseSpec spec = case_spec(inst.id);
    return inst.G().fiber_part(spec.form == EndpointForm::e1 ? inst.b_element() : inst.a_element());
}

/// r1, r2 with w^a = w^r1 and w^b = w^r2.
inline std::pair<std::int64_t, std::int64_t> action_exponents(const CaseInstance& inst) {
    return {inst.G().action_of(inst.a_element()), inst.G().action_of(inst.b_element())};
}

/// Numeric voltage of the case's quotient cycle, as an exponent of the
/// carrier w_i (so that it is comparable with endpoint_closed_form).
inline std::int64_t numeric_endpoint_exponent(const CaseInstance& inst) {
    const auto cycle = paper_quotient_cycle(inst.id);
    const ElemId v = voltage(inst.G(), inst.genset, cycle, inst.fiber());
    const std::int64_t carrier = carrier_exponent(inst);
    if (carrier == 0) throw Error(ErrorCode::BadParameters, "carrier has no w-part");
    return mod(static_cast<std::int64_t>(inst.G().fiber_part(v)) * inv_mod(carrier, inst.p), inst.p);
}

// ---------------------------------------------------------------------------
// Running a case end to end
// ---------------------------------------------------------------------------

struct CaseRun {
    CaseInstance instance;
    HamCertificate certificate;
    std::int64_t endpoint = 0;     // numeric exponent (section 2 cases)
    std::int64_t closed_form = 0;  // closed-form exponent (section 2 cases)
    std::size_t double_edge_step = 0;  // Z_13 cases
};

namespace detail {

inline CaseRun run_z13_case(const CaseId& c) {
    CaseRun run;
    const auto cycle = paper_quotient_cycle(c);
    run.instance = canonical_case(c, 13, 0);
    const auto& inst = run.instance;
    const QuotientMultigraph Q = case_quotient(inst);
    const Verdict v = verify_hamiltonian(Q, Walk{Q.coset_of(inst.G().identity()), cycle});
    if (!v.ok()) throw Error(ErrorCode::NotHamiltonian, to_string(c) + ": quotient listing fails replay");
    const ClaimedDoubleEdge claim = z13_claimed_double_edge(c.i, c.j);
    const auto from = Q.vertex_by_key(claim.from), to = Q.vertex_by_key(claim.to);
    if (!from || !to || !has_double_edge(Q, *from, *to, claim.first, claim.second))
        throw Error(ErrorCode::DoubleEdgeNotOnCycle, to_string(c) + ": claimed double edge is not in the multigraph");
    const DoubleEdge de{*from, *to, claim.first, claim.second};
    run.double_edge_step = double_edge_voltages(inst.G(), inst.genset, inst.fiber(), cycle, de).position;
    run.certificate = multidouble_lift(inst.G(), inst.genset, inst.fiber(), cycle, de);
    run.certificate.method = to_string(c);
    return run;
}

inline CaseRun run_section2_case(const CaseId& c, std::int64_t p, std::int64_t r) {
    CaseRun run;
    const auto cycle = paper_quotient_cycle(c);
    run.instance = canonical_case(c, p, r);
    const auto& inst = run.instance;
    const CaseSpec spec = case_spec(c);
    if (spec.source == CycleSource::pattern_hc3 && !hc3_preconditions(inst.G(), inst.a_element(), inst.b_element()).holds)
        throw Error(ErrorCode::NotHamiltonian, to_string(c) + ": HC3 preconditions fail");
    if (spec.source == CycleSource::pattern_hc9 && !hc9_preconditions(inst.G(), inst.a_element(), inst.b_element()).holds)
        throw Error(ErrorCode::NotHamiltonian, to_string(c) + ": HC9 preconditions fail");

    const QuotientMultigraph Q = case_quotient(inst);
    const Verdict v = verify_hamiltonian(Q, Walk{Q.coset_of(inst.G().identity()), cycle});
    if (!v.ok()) throw Error(ErrorCode::NotHamiltonian, to_string(c) + ": quotient cycle fails replay");

    run.endpoint = numeric_endpoint_exponent(inst);
    run.closed_form = endpoint_closed_form(c, r, p);
    if (run.endpoint != run.closed_form)
        throw Error(ErrorCode::EndpointMismatch, to_string(c) + ": voltage exponent " + std::to_string(run.endpoint) +
                                                     " but closed form gives " + std::to_string(run.closed_form));
    run.certificate = fgl_lift(inst.G(), inst.genset, inst.fiber(), cycle, to_string(c));
    return run;
}

}  // namespace detail

/// Picks r, verifies the quotient cycle and its preconditions, checks the
/// voltage against the closed form, and lifts to a verified certificate of
/// the full Cayley graph.
inline CaseRun run_case(const CaseId& c, std::int64_t p = 13) {
    if (c.is_z13()) return detail::run_z13_case(c);
    require_section2_prime(p);
    const auto [r_small, r_large] = find_primitive_cube_roots(p);
    for (std::int64_t r : {r_small, r_large})
        if (endpoint_closed_form(c, r, p) != 0) return detail::run_section2_case(c, p, r);
    throw Error(ErrorCode::EndpointZeroForBothRoots, to_string(c) + " at p = " + std::to_string(p));
}

/// As run_case, at a fixed cube root r; a zero closed form is reported as
/// VoltageDoesNotGenerate.
inline CaseRun run_case(const CaseId& c, std::int64_t p, std::int64_t r) {
    if (c.is_z13()) return detail::run_z13_case(c);
    if (endpoint_closed_form(c, r, p) == 0)
        throw Error(ErrorCode::VoltageDoesNotGenerate, to_string(c) + ": endpoint exponent vanishes at r = " + std::to_string(r));
    return detail::run_section2_case(c, p, r);
}

// ---------------------------------------------------------------------------
// Identities over F_3
// ---------------------------------------------------------------------------

inline const std::array<f3::Poly, 4>& listed_cubics() {
    static const std::array<f3::Poly, 4> cubics = {
        f3::Poly{-1, -1, 0, 1},   // X^3 - X - 1
        f3::Poly{-1, 0, 1, 1},    // X^3 + X^2 - 1
        f3::Poly{-1, 1, 1, 1},    // X^3 + X^2 + X - 1
        f3::Poly{-1, -1, -1, 1},  // X^3 - X^2 - X - 1
    };
    return cubics;
}

inline constexpr std::array<std::array<int, 3>, 4> kConjugacyRows = {{{1, 3, 9}, {2, 5, 6}, {4, 12, 10}, {7, 8, 11}}};

struct F3Report {
    bool factorization = false;      // (X-1) * cubics = X^13 - 1
    bool minpoly_of_w = false;       // minpoly(W) = X^3 - X - 1
    bool rows_partition = false;     // equal minimal polynomials exactly along the table rows
    bool rows_match_cubics = false;  // each row's minimal polynomial is a distinct listed cubic
    std::array<f3::Poly, 13> minpolys{};

    bool ok() const noexcept { return factorization && minpoly_of_w && rows_partition && rows_match_cubics; }
};

inline F3Report verify_f3_identities() {
    F3Report rep;
    f3::Poly product{-1, 1};
    for (const auto& c : listed_cubics()) product = product * c;
    rep.factorization = product == (f3::Poly::monomial(13) - f3::Poly{1});

    const f3::Mat3 W = kMatrixW;
    for (int k = 1; k <= 12; ++k) rep.minpolys[k] = f3::minimal_polynomial(f3::power(W, k));
    rep.minpoly_of_w = rep.minpolys[1] == listed_cubics()[0];

    bool partition = true;
    for (int k = 1; k <= 12; ++k)
        for (int l = 1; l <= 12; ++l) {
            bool same_row = false;
            for (const auto& row : kConjugacyRows)
                same_row |= std::find(row.begin(), row.end(), k) != row.end() && std::find(row.begin(), row.end(), l) != row.end();
            if ((rep.minpolys[k] == rep.minpolys[l]) != same_row) partition = false;
        }
    rep.rows_partition = partition;

    std::vector<int> used;
    bool match = true;
    for (const auto& row : kConjugacyRows) {
        int which = -1;
        for (int c = 0; c < 4; ++c)
            if (rep.minpolys[row[0]] == listed_cubics()[c]) which = c;
        if (which < 0 || std::find(used.begin(), used.end(), which) != used.end()) match = false;
        used.push_back(which);
    }
    rep.rows_match_cubics = match;
    return rep;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class Route { z13, keating_witte, pk_subgroup, exp3, exp9_no9, exp9_cent, search_fallback };

constexpr std::string_view to_string(Route r) noexcept {
    switch (r) {
        case Route::z13: return "Z13Route";
        case Route::keating_witte: return "KeatingWitteRoute";
        case Route::pk_subgroup: return "PkSubgrpRoute";
        case Route::exp3: return "Exp3Route";
        case Route::exp9_no9: return "Exp9No9Route";
        case Route::exp9_cent: return "Exp9CentRoute";
        case Route::search_fallback: return "SearchFallback";
    }
    return "?";
}

inline bool is_case_route(Route r) noexcept {
    return r == Route::z13 || r == Route::exp3 || r == Route::exp9_no9 || r == Route::exp9_cent;
}

/// Cases whose canonical generating sets cover a case route.
inline std::vector<CaseId> route_cases(Route r) {
    switch (r) {
        case Route::exp3: return {{CaseKind::exp3a}, {CaseKind::exp3b}};
        case Route::exp9_no9: return {{CaseKind::exp9a}, {CaseKind::exp9b}};
        case Route::exp9_cent: return {{CaseKind::exp9c}, {CaseKind::exp9d}, {CaseKind::exp9e}, {CaseKind::exp9f}};
        case Route::z13: return z13_cases();
        default: return {};
    }
}

struct RouteDecision {
    Route route = Route::search_fallback;
    std::vector<std::string> facts;
};

/// Genset-independent structure used by classify.
struct GroupFacts {
    std::int64_t p = 0;  // the prime other than 3 dividing |G|; 0 for |G| = 27
    bool sylow_p_normal = true;
    bool keating_witte = false;
    std::size_t derived_order = 1;
    int q_exponent = 1;
    bool q_abelian = true;
    bool centralizer_has_order9 = false;
};

inline GroupFacts analyze_group(const Group& G) {
    GroupFacts f;
    for (std::int64_t q : prime_factors(static_cast<std::int64_t>(G.order())))
        if (q != 3) f.p = q;
    const Subgroup derived = derived_subgroup(G);
    f.derived_order = derived.order();
    f.keating_witte = keating_witte_match(G, derived).has_value();
    const Subgroup Q = sylow_subgroup(G, 3);
    for (ElemId a : Q.elements) {
        f.q_exponent = std::max(f.q_exponent, G.elem_order(a));
        for (ElemId b : Q.elements)
            if (G.mul(a, b) != G.mul(b, a)) f.q_abelian = false;
    }
    if (f.p != 0) {
        const Subgroup P = sylow_subgroup(G, f.p);
        f.sylow_p_normal = P.normal;
        if (P.normal) {
            const Subgroup C = centralizer(G, Q, P);
            for (ElemId c : C.elements)
                if (G.elem_order(c) == 9) f.centralizer_has_order9 = true;
        }
    }
    return f;
}

/// Route for (G, S) in the order: non-normal Sylow p, G' cyclic of prime-power
/// order, pkSubgrp hypothesis, then by the exponent of Q and C_Q(P).
inline RouteDecision classify(const Group& G, const GroupFacts& f, std::span<const ElemId> S) {
    RouteDecision d;
    if (f.p != 0 && !f.sylow_p_normal) {
        d.route = Route::z13;
        d.facts.push_back("Sylow " + std::to_string(f.p) + "-subgroup not normal");
        return d;
    }
    if (f.keating_witte) {
        d.route = Route::keating_witte;
        d.facts.push_back("G' cyclic of order " + std::to_string(f.derived_order));
        return d;
    }
    for (const auto& m : lemma_hypotheses(G, S))
        if (m.lemma == CitedLemma::pk_subgroup) {
            d.route = Route::pk_subgroup;
            d.facts.push_back("s t^-1 lie in a normal subgroup of order " + std::to_string(m.subgroup.order()));
            return d;
        }
    if (!f.q_abelian && f.p != 0) {
        if (f.q_exponent == 3) {
            d.route = Route::exp3;
            d.facts.push_back("Q nonabelian of exponent 3");
            return d;
        }
        if (f.q_exponent == 9) {
            d.route = f.centralizer_has_order9 ? Route::exp9_cent : Route::exp9_no9;
            d.facts.push_back(f.centralizer_has_order9 ? "C_Q(P) contains an element of order 9"
                                                       : "C_Q(P) has exponent 3");
            return d;
        }
    }
    d.facts.push_back("no listed case applies");
    return d;
}

inline RouteDecision classify(const Group& G, std::span<const ElemId> S) { return classify(G, analyze_group(G), S); }

// ---------------------------------------------------------------------------
// Relabelling walks along isomorphisms
// ---------------------------------------------------------------------------

/// Rewrites labels over `from` into labels over `to` = phi(from) up to
/// inverses and order. nullopt when phi(from) does not match `to`.
inline std::optional<std::vector<Label>> transport_labels(const Group& dst, const Homomorphism& phi,
                                                          std::span<const ElemId> from, std::span<const ElemId> to,
                                                          std::span<const Label> labels) {
    std::vector<Label> map(from.size() + 1);
    for (std::size_t k = 0; k < from.size(); ++k) {
        const ElemId e = phi(from[k]);
        std::optional<Label> hit;
        for (std::size_t j = 0; j < to.size() && !hit; ++j) {
            if (to[j] == e)
                hit = Label::gen(static_cast<int>(j + 1));
            else if (to[j] == dst.inv(e))
                hit = Label::gen(-static_cast<int>(j + 1));
        }
        if (!hit) return std::nullopt;
        map[k + 1] = *hit;
    }
    std::vector<Label> out;
    out.reserve(labels.size());
    for (Label l : labels) {
        if (l.value == 0 || l.index() > static_cast<int>(from.size())) return std::nullopt;
        const Label m = map[l.index()];
        out.push_back(l.inverted() ? m.inverse() : m);
    }
    return out;
}

/// Cay(G;S) replay without materialising arcs.
struct CayleyView {
    const Group* group;
    std::span<const ElemId> gens;

    std::size_t vertex_count() const noexcept { return group->order(); }
    std::optional<Vertex> step(Vertex v, Label l) const noexcept {
        const auto s = label_element(*group, gens, l);
        if (!s || v >= group->order()) return std::nullopt;
        return group->mul(v, *s);
    }
};

// ---------------------------------------------------------------------------
// Orbits of generating sets under Aut(G)
// ---------------------------------------------------------------------------

inline std::uint64_t pack_key(std::pair<ElemId, ElemId> k) noexcept {
    return (static_cast<std::uint64_t>(k.first) << 32) | k.second;
}

/// All 2-element generating sets of G (canonical key form) with Aut(G).
struct GensetUniverse {
    std::vector<Genset> gensets;
    std::unordered_map<std::uint64_t, std::size_t> index;
    std::vector<Homomorphism> automorphisms;

    explicit GensetUniverse(const Group& G) : gensets(enumerate_gensets(G)) {
        for (std::size_t i = 0; i < gensets.size(); ++i)
            index.emplace(pack_key({gensets[i][0], gensets[i][1]}), i);
        if (!gensets.empty()) automorphisms = all_isomorphisms(G, gensets.front(), G);
    }

    std::optional<std::size_t> find(const Group& G, ElemId a, ElemId b) const {
        const auto it = index.find(pack_key(genset_key(G, a, b)));
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    /// Calls visit(member index, automorphism) for each genset in the orbit of `source`,
    /// once per member (first automorphism reaching it).
    template <class Visit>
    void for_each_in_orbit(const Group& G, std::span<const ElemId> source, Visit&& visit) const {
        std::vector<char> seen(gensets.size(), 0);
        for (const auto& phi : automorphisms) {
            const auto idx = find(G, phi(source[0]), phi(source[1]));
            if (!idx || seen[*idx]) continue;
            seen[*idx] = 1;
            visit(*idx, phi);
        }
    }
};

// ---------------------------------------------------------------------------
// Canonical generating sets
// ---------------------------------------------------------------------------

struct CanonicalizationReport {
    GroupDescriptor group;
    Route route = Route::search_fallback;
    std::size_t gensets = 0;
    std::size_t automorphisms = 0;
    std::vector<std::pair<CaseId, std::size_t>> matched;  // members per canonical case orbit
    std::vector<Genset> unmatched;

    bool ok() const noexcept { return unmatched.empty() && gensets > 0; }
};

/// An isomorphism from the canonical group of `c` (trying both cube roots) to G.
inline std::optional<std::pair<CaseInstance, Homomorphism>> canonical_isomorphism(const CaseId& c, const Group& G) {
    std::vector<std::int64_t> roots{0};
    if (!c.is_z13()) {
        const auto [r1, r2] = find_primitive_cube_roots(G.fiber_order());
        roots = {r1, r2};
    }
    for (std::int64_t r : roots) {
        CaseInstance inst = canonical_case(c, G.fiber_order(), r);
        if (inst.G().descriptor() == G.descriptor()) {
            Homomorphism id;
            id.image.resize(G.order());
            for (ElemId g = 0; g < G.order(); ++g) id.image[g] = g;
            return std::pair{std::move(inst), std::move(id)};
        }
        if (auto iso = find_isomorphism(inst.G(), inst.genset, G)) return std::pair{std::move(inst), std::move(*iso)};
    }
    return std::nullopt;
}

/// Checks that every 2-element generating set of G lies in the Aut(G)-orbit
/// of the image of one of the route's canonical sets.
inline CanonicalizationReport genset_canonicalization_check(const Group& G, const GensetUniverse& U, Route route) {
    CanonicalizationReport rep;
    rep.group = G.descriptor();
    rep.route = route;
    rep.gensets = U.gensets.size();
    rep.automorphisms = U.automorphisms.size();
    std::vector<char> covered(U.gensets.size(), 0);
    for (const CaseId& c : route_cases(route)) {
        const auto iso = canonical_isomorphism(c, G);
        if (!iso) continue;
        const auto& [inst, psi] = *iso;
        const Genset image = {psi(inst.genset[0]), psi(inst.genset[1])};
        std::size_t count = 0;
        U.for_each_in_orbit(G, image, [&](std::size_t idx, const Homomorphism&) {
            if (!covered[idx]) ++count;
            covered[idx] = 1;
        });
        rep.matched.emplace_back(c, count);
    }
    for (std::size_t i = 0; i < U.gensets.size(); ++i)
        if (!covered[i]) rep.unmatched.push_back(U.gensets[i]);
    return rep;
}

inline CanonicalizationReport genset_canonicalization_check(const Group& G) {
    const GensetUniverse U(G);
    const GroupFacts f = analyze_group(G);
    Route route = Route::search_fallback;
    if (!U.gensets.empty()) route = classify(G, f, U.gensets.front()).route;
    return genset_canonicalization_check(G, U, route);
}

/// For Z_13 x| (Z_3)^3: every {w^i, w^j v} with i != 0 and j != +-i, and the
/// listed pair (i', j') it is Aut-equivalent to (nullopt when none). With
/// j = -i the inverse of w^j v lies in w^i Q, so like j = i the set sits in
/// one coset of Q up to inverses.
struct Z13ShapeEntry {
    int i;
    int j;
    std::optional<std::pair<int, int>> canonical;
};

inline std::vector<Z13ShapeEntry> z13_shape_check() {
    const Group G(GroupDescriptor{Family::z13e27, 13, {1, 1, 1}});
    const GensetUniverse U(G);
    std::vector<std::optional<std::pair<int, int>>> label_of(U.gensets.size());
    for (auto [ci, cj] : kZ13Pairs) {
        const Genset src = {G.pow(G.w(), ci), G.mul(G.pow(G.w(), cj), G.word("v"))};
        U.for_each_in_orbit(G, src, [&](std::size_t idx, const Homomorphism&) {
            if (!label_of[idx]) label_of[idx] = std::pair{ci, cj};
        });
    }
    std::vector<Z13ShapeEntry> out;
    for (int i = 1; i <= 12; ++i)
        for (int j = 0; j <= 12; ++j) {
            if (j == i || j == 13 - i) continue;
            const ElemId a = G.pow(G.w(), i), b = G.mul(G.pow(G.w(), j), G.word("v"));
            const auto idx = U.find(G, a, b);
            out.push_back({i, j, idx ? label_of[*idx] : std::nullopt});
        }
    return out;
}

}  // namespace hamcayley
