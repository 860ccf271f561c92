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

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hamcayley.hpp"

namespace {

using namespace hamcayley;
using cli::CommandResult;

std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

int finish(const CommandResult& r) {
    std::cerr << r.summary;
    std::cout << r.output;
    return r.code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian cycles in Cayley graphs of order 27p: certificates, case checks and sweeps"};
    app.require_subcommand(1);

    std::string primes = "7,13";
    std::optional<std::string> case_name;
    std::string out_dir = "certs";
    auto* verify = app.add_subcommand("verify-paper", "Verify every explicit cycle, voltage and identity; write certificates");
    verify->add_option("--p", primes, "Comma-separated primes p = 1 (mod 3), p >= 7")->capture_default_str();
    verify->add_option("--case", case_name, "Only this case (exp3a..exp9f, z13:i,j)");
    verify->add_option("--out", out_dir, "Certificate directory")->capture_default_str();

    std::string cert_path;
    auto* check = app.add_subcommand("check-certificate", "Replay a certificate file");
    check->add_option("path", cert_path, "Certificate JSON")->required();

    std::int64_t sweep_p = 7;
    std::uint64_t budget = 10'000'000, seed = 1;
    int attempts = 4;
    std::optional<std::string> report_path;
    bool inline_certs = false;
    auto* sweep = app.add_subcommand("sweep", "Certify every 2-element generating set of every group of order 27p");
    sweep->add_option("--p", sweep_p, "Prime p >= 5")->capture_default_str();
    sweep->add_option("--budget", budget, "Search expansions per generating set")->capture_default_str();
    sweep->add_option("--seed", seed, "Search seed (HAMCAYLEY_SEED overrides)")->capture_default_str();
    sweep->add_option("--attempts", attempts, "Search restarts")->capture_default_str();
    sweep->add_option("--out", report_path, "Report JSON path (default: stdout)");
    sweep->add_flag("--inline-certificates", inline_certs, "Embed every certificate in the report");

    std::string dot_case;
    std::int64_t dot_p = 7;
    bool dot_quotient = false;
    std::optional<std::string> dot_out;
    auto* dot = app.add_subcommand("export-dot", "Write a case's graph and cycle as Graphviz DOT");
    dot->add_option("--case", dot_case, "Case id")->required();
    dot->add_option("--p", dot_p, "Prime for exp3*/exp9* cases")->capture_default_str();
    dot->add_flag("--quotient", dot_quotient, "Draw the quotient multigraph with the case's cycle");
    dot->add_option("--out", dot_out, "DOT path (default: stdout)");

    std::optional<std::int64_t> list_p;
    auto* list = app.add_subcommand("list-families", "List group families, or every descriptor of order 27p");
    list->add_option("--p", list_p, "Enumerate descriptors for this prime");

    std::string family = "heis27", action = "1,1,1", s1, s2;
    std::int64_t equiv_p = 7;
    auto* equiv = app.add_subcommand("equiv-gensets", "Decide whether two generating sets are Aut(G)-equivalent");
    equiv->add_option("--family", family, "Group family")->capture_default_str();
    equiv->add_option("--p", equiv_p, "Prime (1 for the bare 3-group)")->capture_default_str();
    equiv->add_option("--action", action, "Images of w under x,y,z as exponents")->capture_default_str();
    equiv->add_option("--s1", s1, "First set, comma-separated words, e.g. x,yw")->required();
    equiv->add_option("--s2", s2, "Second set")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    try {
        if (*verify) {
            cli::VerifyPaperOptions opt;
            try {
                opt.primes = parse_list(primes);
            } catch (const std::exception&) {
                std::cerr << "--p expects comma-separated integers\n";
                return cli::kExitUsage;
            }
            opt.case_name = case_name;
            opt.out_dir = out_dir;
            return finish(cli::cmd_verify_paper(opt));
        }
        if (*check) return finish(cli::cmd_check_certificate(cert_path));
        if (*sweep) {
            cli::SweepCommandOptions opt;
            opt.p = sweep_p;
            opt.sweep.budget = budget;
            opt.sweep.seed = cli::effective_seed(seed);
            opt.sweep.attempts = attempts;
            if (report_path) opt.output = *report_path;
            opt.inline_certificates = inline_certs;
            return finish(cli::cmd_sweep(opt));
        }
        if (*dot) {
            cli::ExportDotOptions opt{dot_case, dot_p, dot_quotient, std::nullopt};
            if (dot_out) opt.output = *dot_out;
            return finish(cli::cmd_export_dot(opt));
        }
        if (*list) return finish(cli::cmd_list_families(list_p));
        if (*equiv) {
            cli::EquivOptions opt;
            opt.group.family = family_from_name(family);
            opt.group.p = static_cast<int>(equiv_p);
            std::vector<std::int64_t> a;
            try {
                a = parse_list(action);
            } catch (const std::exception&) {
                std::cerr << "--action expects comma-separated integers\n";
                return cli::kExitUsage;
            }
            for (std::size_t k = 0; k < a.size() && k < 3; ++k) opt.group.action[k] = static_cast<int>(a[k]);
            opt.first = split_words(s1);
            opt.second = split_words(s2);
            return finish(cli::cmd_equiv_gensets(opt));
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    }
    return cli::kExitUsage;
}
