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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "cases.hpp"
#include "serialize.hpp"
#include "sweep.hpp"

namespace hamcayley::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
    int code = kExitOk;
    std::string summary;                 // human-readable log lines
    std::string output;                  // payload for stdout when no file was requested
    std::vector<std::string> artifacts;  // files written

    void line(const std::string& s) { summary += s + "\n"; }
    void fail(int c) { code = std::max(code, c); }
};

/// Writes through a temporary file in the same directory and renames it over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::BadParameters, "cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw Error(ErrorCode::BadParameters, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// HAMCAYLEY_SEED, when set, replaces the --seed flag.
inline std::uint64_t effective_seed(std::uint64_t flag_seed) {
    const char* env = std::getenv("HAMCAYLEY_SEED");
    if (env == nullptr || *env == '\0') return flag_seed;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string_view(env).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadParameters, std::string("HAMCAYLEY_SEED is not an unsigned integer: ") + env);
    }
}

inline std::string certificate_filename(const CaseId& c, std::int64_t p) {
    return file_stem(c) + "-" + std::to_string(c.is_z13() ? 13 : p) + ".cert.json";
}

// ---------------------------------------------------------------------------
// check-certificate
// ---------------------------------------------------------------------------

inline CommandResult cmd_check_certificate_text(const std::string& text, const std::string& name = "certificate") {
    CommandResult res;
    HamCertificate cert;
    try {
        cert = certificate_from_json(json::parse(text));
    } catch (const json::exception& e) {
        res.line(name + ": malformed JSON (" + e.what() + ")");
        res.fail(kExitUsage);
        return res;
    } catch (const Error& e) {
        res.line(name + ": " + e.what());
        res.fail(kExitUsage);
        return res;
    }
    Verdict v;
    try {
        v = replay_certificate(cert);
    } catch (const Error& e) {
        res.line(name + ": " + e.what());
        res.fail(kExitUsage);
        return res;
    }
    if (!v.ok()) {
        res.line(name + ": FAIL " + std::string(to_string(v.status)) + " at step " + std::to_string(v.step));
        res.fail(kExitFailure);
        return res;
    }
    res.line(name + ": OK (" + std::to_string(cert.labels.size()) + " steps, " + cert.method + ")");
    return res;
}

inline CommandResult cmd_check_certificate(const std::filesystem::path& path) {
    const auto text = read_file(path);
    if (!text) {
        CommandResult res;
        res.line(path.string() + ": cannot read");
        res.fail(kExitUsage);
        return res;
    }
    return cmd_check_certificate_text(*text, path.string());
}

// ---------------------------------------------------------------------------
// verify-paper
// ---------------------------------------------------------------------------

struct VerifyPaperOptions {
    std::vector<std::int64_t> primes{7, 13};
    std::optional<std::string> case_name;  // restrict to one case
    std::filesystem::path out_dir = "certs";
};

namespace detail {

inline void emit_certificate(CommandResult& res, const HamCertificate& cert, const std::filesystem::path& path) {
    write_atomic(path, to_json(cert).dump(2) + "\n");
    res.artifacts.push_back(path.string());
    const CommandResult check = cmd_check_certificate(path);
    if (check.code != kExitOk) {
        res.line("  round trip failed: " + check.summary);
        res.fail(kExitFailure);
    }
}

inline void verify_case(CommandResult& res, const CaseId& c, std::int64_t p, const std::filesystem::path& dir) {
    try {
        const CaseRun run = run_case(c, p);
        if (!run.certificate.verified) {
            res.line("FAIL " + to_string(c) + ": certificate did not verify");
            res.fail(kExitFailure);
            return;
        }
        std::string detail;
        if (c.is_z13())
            detail = "double edge at step " + std::to_string(run.double_edge_step);
        else
            detail = "p=" + std::to_string(p) + " r=" + std::to_string(run.instance.r) + " exponent " +
                     std::to_string(run.endpoint) + " = closed form " + std::to_string(run.closed_form);
        res.line("PASS " + to_string(c) + " " + detail + " (" + std::to_string(run.certificate.labels.size()) +
                 "-step cycle)");
        emit_certificate(res, run.certificate, dir / certificate_filename(c, p));
    } catch (const Error& e) {
        res.line("FAIL " + to_string(c) + (c.is_z13() ? "" : " p=" + std::to_string(p)) + ": " + e.what());
        res.fail(kExitFailure);
    }
}

inline void verify_identities(CommandResult& res) {
    const F3Report f = verify_f3_identities();
    res.line(std::string(f.factorization ? "PASS" : "FAIL") + " (X-1) times the four cubics equals X^13 - 1 over F_3");
    res.line(std::string(f.minpoly_of_w ? "PASS" : "FAIL") + " minpoly(W) = " + f.minpolys[1].to_string());
    res.line(std::string(f.rows_partition && f.rows_match_cubics ? "PASS" : "FAIL") +
             " powers of W share minimal polynomials exactly along the conjugacy rows");
    if (!f.ok()) res.fail(kExitFailure);
}

inline void verify_canonical_sets(CommandResult& res, std::int64_t p) {
    for (const auto& d : enumerate_descriptors(static_cast<int>(p))) {
        if (d.family != Family::heis27 && d.family != Family::mod27) continue;
        const Group G(d);
        const GroupFacts f = analyze_group(G);
        const Route route = group_route(f);
        if (!is_case_route(route)) continue;
        const GensetUniverse U(G);
        const CanonicalizationReport rep = genset_canonicalization_check(G, U, route);
        res.line(std::string(rep.ok() ? "PASS" : "FAIL") + " canonical sets " + to_json(d).dump() + " " +
                 std::string(to_string(route)) + ": " + std::to_string(rep.gensets) + " generating pairs, " +
                 std::to_string(rep.unmatched.size()) + " unmatched");
        if (!rep.ok()) res.fail(kExitFailure);
    }
}

inline void verify_z13_shapes(CommandResult& res) {
    std::size_t unmatched = 0, total = 0;
    for (const auto& e : z13_shape_check()) {
        ++total;
        if (!e.canonical) ++unmatched;
    }
    res.line(std::string(unmatched == 0 ? "PASS" : "FAIL") + " every {w^i, w^j v} with j != +-i reduces to a listed pair (" +
             std::to_string(total) + " pairs, " + std::to_string(unmatched) + " unmatched)");
    if (unmatched != 0) res.fail(kExitFailure);
}

}  // namespace detail

inline CommandResult cmd_verify_paper(const VerifyPaperOptions& opt) {
    CommandResult res;
    try {
        if (opt.primes.empty()) throw Error(ErrorCode::BadParameters, "no primes given");
        for (std::int64_t p : opt.primes) require_section2_prime(p);
    } catch (const Error& e) {
        res.line(e.what());
        res.fail(kExitUsage);
        return res;
    }
    std::optional<CaseId> only;
    if (opt.case_name) {
        try {
            only = parse_case_id(*opt.case_name);
        } catch (const Error& e) {
            res.line(e.what());
            res.fail(kExitUsage);
            return res;
        }
    }

    std::vector<CaseId> cases = only ? std::vector<CaseId>{*only} : all_cases();
    for (const CaseId& c : cases) {
        if (c.is_z13()) {
            detail::verify_case(res, c, 13, opt.out_dir);
            continue;
        }
        for (std::int64_t p : opt.primes) detail::verify_case(res, c, p, opt.out_dir);
    }
    if (!only) {
        detail::verify_identities(res);
        for (std::int64_t p : opt.primes) detail::verify_canonical_sets(res, p);
        detail::verify_z13_shapes(res);
    }
    res.line(std::to_string(res.artifacts.size()) + " certificates written to " + opt.out_dir.string() +
             (res.code == kExitOk ? "; all checks passed" : "; some checks FAILED"));
    return res;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepCommandOptions {
    std::int64_t p = 7;
    SweepOptions sweep;
    std::optional<std::filesystem::path> output;  // report JSON; stdout payload when absent
    bool inline_certificates = false;
};

inline CommandResult cmd_sweep(SweepCommandOptions opt) {
    CommandResult res;
    if (!is_prime(opt.p) || opt.p < 5) {
        res.line("p must be a prime >= 5 (got " + std::to_string(opt.p) + ")");
        res.fail(kExitUsage);
        return res;
    }
    if (opt.sweep.budget == 0 || opt.sweep.attempts < 1) {
        res.line("budget and attempts must be positive");
        res.fail(kExitUsage);
        return res;
    }
    opt.sweep.keep_labels = opt.inline_certificates;
    const SweepReport rep = theorem_sweep(static_cast<int>(opt.p), opt.sweep);
    const std::string text = to_json(rep, opt.inline_certificates).dump() + "\n";
    if (opt.output) {
        write_atomic(*opt.output, text);
        res.artifacts.push_back(opt.output->string());
    } else {
        res.output = text;
    }
    res.line("p=" + std::to_string(opt.p) + ": " + std::to_string(rep.groups.size()) + " groups, " +
             std::to_string(rep.entries.size()) + " generating pairs, " + std::to_string(rep.failures()) + " failures");
    for (const auto& [route, n] : rep.route_counts()) res.line("  " + route + ": " + std::to_string(n));
    if (rep.failures() != 0) res.fail(kExitFailure);
    return res;
}

// ---------------------------------------------------------------------------
// export-dot
// ---------------------------------------------------------------------------

struct ExportDotOptions {
    std::string case_name;
    std::int64_t p = 7;
    bool quotient = false;
    std::optional<std::filesystem::path> output;
};

inline LabelNamer case_label_namer(const CaseId& c) {
    std::array<std::string, 2> names;
    if (c.is_z13()) {
        names = {"w^" + std::to_string(c.i), c.j == 0 ? "v" : "w^" + std::to_string(c.j) + "v"};
    } else {
        const CaseSpec spec = case_spec(c);
        names = {spec.genset_words[0], spec.genset_words[1]};
    }
    return [names](Label l) {
        const std::string& base = names[static_cast<std::size_t>(l.index() - 1)];
        return l.inverted() ? "(" + base + ")^-1" : base;
    };
}

inline CommandResult cmd_export_dot(const ExportDotOptions& opt) {
    CommandResult res;
    CaseId c;
    try {
        c = parse_case_id(opt.case_name);
        if (!c.is_z13()) require_section2_prime(opt.p);
    } catch (const Error& e) {
        res.line(e.what());
        res.fail(kExitUsage);
        return res;
    }
    std::string dot;
    try {
        const CaseRun run = run_case(c, opt.p);
        const CaseInstance& inst = run.instance;
        if (opt.quotient) {
            const QuotientMultigraph Q = case_quotient(inst);
            std::vector<std::pair<Vertex, Vertex>> highlight;
            if (c.is_z13()) {
                const ClaimedDoubleEdge de = z13_claimed_double_edge(c.i, c.j);
                highlight.push_back({*Q.vertex_by_key(de.from), *Q.vertex_by_key(de.to)});
            }
            dot = export_dot(Q, Walk{Q.coset_of(inst.G().identity()), paper_quotient_cycle(c)}, case_label_namer(c),
                             highlight);
        } else {
            const CayleyGraph cay(inst.G(), inst.genset);
            dot = export_dot(cay, Walk{inst.G().identity(), run.certificate.labels}, case_label_namer(c));
        }
    } catch (const Error& e) {
        res.line("FAIL " + to_string(c) + ": " + e.what());
        res.fail(kExitFailure);
        return res;
    }
    if (opt.output) {
        write_atomic(*opt.output, dot);
        res.artifacts.push_back(opt.output->string());
        res.line("wrote " + opt.output->string());
    } else {
        res.output = dot;
    }
    return res;
}

// ---------------------------------------------------------------------------
// list-families / equiv-gensets
// ---------------------------------------------------------------------------

inline CommandResult cmd_list_families(std::optional<std::int64_t> p) {
    CommandResult res;
    if (!p) {
        for (Family f : kQFamilies)
            res.line(std::string(family_name(f)) + "  Q of order 27 on " + std::to_string(q_arity(f)) +
                     " generators; descriptor {\"family\", \"p\", \"action\"}");
        res.line(std::string(family_name(Family::z13e27)) + "  Z_13 acting on (Z_3)^3 by W; order 351");
        return res;
    }
    if (!is_prime(*p) || *p < 5) {
        res.line("p must be a prime >= 5");
        res.fail(kExitUsage);
        return res;
    }
    for (const auto& d : enumerate_descriptors(static_cast<int>(*p))) {
        const Group G(d);
        res.line(to_json(d).dump() + "  " + std::string(to_string(group_route(analyze_group(G)))));
    }
    return res;
}

struct EquivOptions {
    GroupDescriptor group;
    std::vector<std::string> first;
    std::vector<std::string> second;
};

inline CommandResult cmd_equiv_gensets(const EquivOptions& opt) {
    CommandResult res;
    std::optional<Group> G;
    Genset S1, S2;
    try {
        G.emplace(opt.group);
        for (const auto& w : opt.first) S1.push_back(G->word(w));
        for (const auto& w : opt.second) S2.push_back(G->word(w));
        if (S1.empty() || S2.empty()) throw Error(ErrorCode::BadParameters, "both generating sets must be nonempty");
        const auto phi = genset_equivalent(*G, S1, S2);
        if (!phi) {
            res.line("not equivalent under Aut(G)");
            res.fail(kExitFailure);
            return res;
        }
        std::string images;
        for (std::size_t k = 0; k < S1.size(); ++k)
            images += (k ? ", " : "") + opt.first[k] + " -> " + G->key((*phi)(S1[k]));
        res.line("equivalent: " + images);
    } catch (const Error& e) {
        res.line(e.what());
        res.fail(e.code() == ErrorCode::NotGenerating ? kExitFailure : kExitUsage);
    }
    return res;
}

}  // namespace hamcayley::cli
