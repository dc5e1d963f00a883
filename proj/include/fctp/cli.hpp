#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fctp/formulations.hpp"
#include "fctp/generators.hpp"
#include "fctp/json_io.hpp"
#include "fctp/lp_format.hpp"
#include "fctp/oracle.hpp"
#include "fctp/tree.hpp"
#include "fctp/tree_dp.hpp"
#include "fctp/verify.hpp"

namespace fctp {

namespace cli_detail {

// Bare file names honour FCTP_OUT_DIR; anything with a slash is used as-is.
inline std::string resolve_out(const std::string& path) {
    if (path.empty() || path.find('/') != std::string::npos) return path;
    const char* dir = std::getenv("FCTP_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    return std::string(dir) + "/" + path;
}

inline void emit_instance(const Instance& inst, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << instance_to_document(inst).dump(2) << "\n";
    else
        write_instance(inst, resolve_out(path));
}

inline void emit_text(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << text;
    else
        write_text(resolve_out(path), text);
}

inline Model build_by_name(const Instance& inst, const std::string& formulation, int root = 1) {
    if (formulation == "ip") return build_ip(inst);
    if (formulation == "ipz") return build_ip_z(inst);
    RootedTree rt = root_tree(inst, root);
    if (formulation == "qdp") return build_qdp(rt);
    if (formulation == "qsn") return build_qsn(rt, false);
    if (formulation == "qsnz") return build_qsn(rt, true);
    raise(Errc::validation_error, "unknown formulation " + formulation);
}

}  // namespace cli_detail

// Entry point shared by the binary and the tests; args exclude the program
// name. Exit codes: 0 success, 1 verification failure, 2 usage or domain
// error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fixed-charge transportation toolkit"};
    app.name("fctp");
    app.require_subcommand(1);

    // gen
    CLI::App* gen = app.add_subcommand("gen", "generate an instance");
    gen->require_subcommand(1);

    int bip_n = 0;
    std::int64_t bip_B = 0;
    std::string bip_r = "1";
    std::uint64_t bip_seed = 0;
    std::int64_t bip_cost_lo = 200, bip_cost_hi = 800;
    std::string bip_p = "0", bip_out;
    CLI::App* bip = gen->add_subcommand("bipartite", "random complete bipartite instance");
    bip->add_option("--n", bip_n, "suppliers (= customers)")->required();
    bip->add_option("--B", bip_B, "capacity upper bound")->required();
    bip->add_option("--r", bip_r, "demand/supply target ratio (rational)");
    bip->add_option("--seed", bip_seed, "RNG seed");
    bip->add_option("--cost-lo", bip_cost_lo, "fixed-cost lower bound");
    bip->add_option("--cost-hi", bip_cost_hi, "fixed-cost upper bound");
    bip->add_option("--variable-cost", bip_p, "variable cost on every arc (rational)");
    bip->add_option("-o,--output", bip_out, "instance file (default stdout)");

    int tree_n = 0;
    std::int64_t tree_bmax = 0;
    std::uint64_t tree_seed = 0;
    std::string tree_out;
    CLI::App* tre = gen->add_subcommand("tree", "random tree instance");
    tre->add_option("-n,--nodes", tree_n, "node count")->required();
    tre->add_option("-b,--b-max", tree_bmax, "capacity upper bound")->required();
    tre->add_option("--seed", tree_seed, "RNG seed");
    tre->add_option("-o,--output", tree_out, "instance file (default stdout)");

    std::vector<std::int64_t> tp_numbers;
    std::int64_t tp_b = 0;
    std::string tp_out;
    CLI::App* tp = gen->add_subcommand("from-3partition", "hardness-reduction instance");
    tp->add_option("--numbers", tp_numbers, "3n item sizes, comma separated")
        ->required()
        ->delimiter(',');
    tp->add_option("-b,--bound", tp_b, "per-triple target")->required();
    tp->add_option("-o,--output", tp_out, "instance file (default stdout)");

    // solve
    std::string solve_in, solve_method = "tree-dp", solve_cert, solve_out;
    std::int64_t solve_limit = kDefaultOracleBudget;
    int solve_root = 1;
    CLI::App* solve = app.add_subcommand("solve", "solve an instance to optimality");
    solve->add_option("instance", solve_in, "instance file")->required();
    solve->add_option("--method", solve_method, "tree-dp | brute")
        ->check(CLI::IsMember({"tree-dp", "brute"}));
    solve->add_option("--certificate", solve_cert, "write the optimality certificate (tree-dp)");
    solve->add_option("--limit", solve_limit, "state budget for brute");
    solve->add_option("--root", solve_root, "root node for tree-dp");
    solve->add_option("-o,--output", solve_out, "solution file");

    // export
    std::string exp_in, exp_formulation, exp_format = "lp", exp_out;
    int exp_root = 1;
    bool exp_relax_eq = false;
    CLI::App* exp = app.add_subcommand("export", "write a formulation of an instance");
    exp->add_option("instance", exp_in, "instance file")->required();
    exp->add_option("--formulation", exp_formulation, "ip | ipz | qdp | qsn | qsnz")
        ->required()
        ->check(CLI::IsMember({"ip", "ipz", "qdp", "qsn", "qsnz"}));
    exp->add_option("--format", exp_format, "lp | mps")->check(CLI::IsMember({"lp", "mps"}));
    exp->add_option("--root", exp_root, "root node for the tree formulations");
    exp->add_flag("--relax-eq", exp_relax_eq, "export with every node sense relaxed to <=");
    exp->add_option("-o,--output", exp_out, "model file (default stdout)");

    // verify
    std::string ver_suite = "all";
    int ver_trials = 0;
    std::uint64_t ver_seed = 1;
    CLI::App* ver = app.add_subcommand("verify", "run a self-check suite");
    ver->add_option("--suite", ver_suite, "suite name or all")
        ->check(CLI::IsMember({"dp-oracle", "certificates", "lift-z", "pi-chain", "reduction",
                               "generator-contract", "counts-roundtrip", "state-counts", "all"}));
    ver->add_option("--trials", ver_trials, "override the suite's trial count");
    ver->add_option("--seed", ver_seed, "RNG seed");

    // stats
    std::string stats_in;
    CLI::App* stats = app.add_subcommand("stats", "print formulation sizes");
    stats->add_option("instance", stats_in, "instance file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (bip->parsed()) {
            GenConfig cfg;
            cfg.n = bip_n;
            cfg.B = bip_B;
            cfg.r = parse_rational(bip_r);
            cfg.seed = bip_seed;
            cfg.cost_lo = bip_cost_lo;
            cfg.cost_hi = bip_cost_hi;
            cfg.variable_cost = parse_rational(bip_p);
            cli_detail::emit_instance(gen_bipartite(cfg), bip_out, out);
        } else if (tre->parsed()) {
            cli_detail::emit_instance(gen_tree(tree_n, tree_bmax, tree_seed), tree_out, out);
        } else if (tp->parsed()) {
            ThreePartitionInput inp{tp_numbers, tp_b};
            cli_detail::emit_instance(reduce_3partition(inp), tp_out, out);
        } else if (solve->parsed()) {
            Instance inst = read_instance(cli_detail::resolve_out(solve_in));
            Solution sol;
            if (solve_method == "tree-dp") {
                RootedTree rt = root_tree(inst, solve_root);
                auto [tables, dp_sol] = solve_tree(rt);
                sol = std::move(dp_sol);
                if (!solve_cert.empty()) {
                    DpCertificate cert = encode_uv(rt, sol.x);
                    Json doc = assignment_to_document(certificate_assignment(rt, cert));
                    doc["objective"] = detail::rational_to_json(cert.objective);
                    write_text(cli_detail::resolve_out(solve_cert), doc.dump(2) + "\n");
                }
            } else {
                if (!solve_cert.empty())
                    raise(Errc::validation_error, "--certificate needs --method tree-dp");
                sol = brute_force_solve(inst, solve_limit);
            }
            out << "objective " << to_string(sol.objective) << "\n";
            if (!solve_out.empty()) write_solution(inst, sol, cli_detail::resolve_out(solve_out));
        } else if (exp->parsed()) {
            Instance inst = read_instance(cli_detail::resolve_out(exp_in));
            if (exp_relax_eq) inst.variant.node_sense.clear();
            Model m = cli_detail::build_by_name(inst, exp_formulation, exp_root);
            std::string text = exp_format == "lp" ? write_model_lp(m) : write_model_mps(m);
            cli_detail::emit_text(text, exp_out, out);
        } else if (ver->parsed()) {
            std::vector<SuiteReport> reports;
            auto want = [&ver_suite](const char* name) {
                return ver_suite == "all" || ver_suite == name;
            };
            if (want("dp-oracle"))
                reports.push_back(verify_dp_oracle(ver_trials ? ver_trials : 200, ver_seed));
            if (want("certificates"))
                reports.push_back(verify_certificates(ver_trials ? ver_trials : 200, ver_seed));
            if (want("lift-z"))
                reports.push_back(verify_lift_z(ver_trials ? ver_trials : 20, ver_seed));
            if (want("pi-chain"))
                reports.push_back(verify_pi_chain(ver_trials ? ver_trials : 20, ver_seed));
            if (want("reduction")) reports.push_back(verify_reduction());
            if (want("generator-contract")) reports.push_back(verify_generator_contract());
            if (want("counts-roundtrip")) reports.push_back(verify_counts_roundtrip());
            if (want("state-counts"))
                reports.push_back(verify_state_counts(ver_trials ? ver_trials : 200, ver_seed));
            bool all_ok = true;
            for (const SuiteReport& rep : reports) {
                out << rep.summary() << "\n";
                all_ok = all_ok && rep.ok();
                for (const std::string& note : rep.notes) err << "  " << note << "\n";
            }
            if (!all_ok) return 1;
        } else if (stats->parsed()) {
            Instance inst = read_instance(cli_detail::resolve_out(stats_in));
            out << "nodes " << inst.num_nodes() << "\n";
            out << "arcs " << inst.num_arcs() << "\n";
            out << "fingerprint " << instance_fingerprint(inst) << "\n";
            for (const char* name : {"ip", "ipz", "qdp", "qsn", "qsnz"}) {
                try {
                    Model m = cli_detail::build_by_name(inst, name);
                    out << name << " " << m.variables.size() << " variables "
                        << m.constraints.size() << " rows\n";
                } catch (const Error&) {
                    // scan/dual formulations need a default-variant tree
                }
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";  // what() carries the errc name
        return 2;
    }
    return 0;
}

}  // namespace fctp
