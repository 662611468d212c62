#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "otg/erasure.hpp"
#include "otg/errors.hpp"
#include "otg/hsp.hpp"
#include "otg/instances.hpp"
#include "otg/landauer.hpp"
#include "otg/simplify.hpp"

namespace otg::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    // Write-then-rename: a failed run never leaves a partial file behind.
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open output file '" + tmp.string() + "'");
        out << content;
        if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

OracleSpec load_oracle(const std::string& instance, const std::string& file) {
    if (!instance.empty() && !file.empty()) throw ConfigError("pass either --instance or --oracle-file, not both");
    if (!instance.empty()) return builtin_instance(instance);
    if (file.empty()) throw ConfigError("one of --instance or --oracle-file is required");
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open oracle file '" + file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_oracle(ss.str());
}

Subgroup resolve_k(const OracleSpec& oracle, const std::vector<std::string>& tokens) {
    if (!tokens.empty()) {
        std::vector<GroupElement> gens;
        for (const auto& t : tokens) gens.push_back(GroupElement::parse(oracle.group, t));
        return Subgroup::span(oracle.group, gens);
    }
    if (!oracle.k_generators.empty()) return Subgroup::span(oracle.group, oracle.k_generators);
    throw ConfigError("no intermediate subgroup: pass --k-generators or annotate the oracle");
}

ordered_json subgroup_json(const Subgroup& s) {
    ordered_json j;
    j["order"] = s.order();
    ordered_json elems = ordered_json::array();
    for (uint32_t e : s.element_indices()) elems.push_back(GroupElement::from_index(s.parent(), e).to_string());
    j["elements"] = std::move(elems);
    return j;
}

ordered_json ledger_json(const WorkLedger& ledger) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : ledger.entries) entries.push_back({{"label", e.label}, {"amount", e.amount}});
    return ordered_json{{"entries", std::move(entries)}, {"total", ledger.total()}};
}

ordered_json distribution_json(const AbelianGroup& g, const std::vector<double>& dist) {
    ordered_json arr = ordered_json::array();
    for (uint32_t i = 0; i < dist.size(); ++i)
        arr.push_back({{"element", GroupElement::from_index(g, i).to_string()}, {"p", dist[i]}});
    return arr;
}

std::string distribution_csv(const AbelianGroup& g, const std::vector<double>& dist) {
    std::ostringstream out;
    out << "element,probability\n";
    for (uint32_t i = 0; i < dist.size(); ++i)
        out << GroupElement::from_index(g, i).to_string() << ',' << fmt_double(dist[i]) << '\n';
    return out.str();
}

std::string samples_string(const std::vector<GroupElement>& samples, ordered_json& arr) {
    std::string flat;
    for (const auto& s : samples) {
        arr.push_back(s.to_string());
        flat += s.to_string() + " ";
    }
    return flat;
}

struct CommonOpts {
    std::string instance;
    std::string oracle_file;
    std::string out;
    std::string format = "json";
    uint32_t shots = 0;
    uint64_t seed = 0;
};

void add_oracle_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--instance", o.instance, "built-in instance name (pfa8, pfa16, dlog8-a3, z2z4)");
    cmd->add_option("--oracle-file", o.oracle_file, "oracle description file");
    cmd->add_option("--out", o.out, "output path (stdout when omitted)");
    cmd->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
}

int cmd_run(const CommonOpts& o, const std::string& strategy_name, const std::vector<std::string>& k_tokens,
            const std::string& witness_file) {
    OracleSpec oracle = load_oracle(o.instance, o.oracle_file);
    Strategy strategy;
    if (strategy_name == "brute")
        strategy = Strategy::brute;
    else if (strategy_name == "side-info")
        strategy = Strategy::side_info;
    else if (strategy_name == "battery")
        strategy = Strategy::battery;
    else
        throw ConfigError("unknown strategy '" + strategy_name + "'");

    std::optional<FactorizationWitness> witness;
    if (strategy != Strategy::brute) {
        if (!witness_file.empty()) {
            std::ifstream in(witness_file);
            if (!in) throw ConfigError("cannot open witness file '" + witness_file + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            witness = parse_witness(ss.str());
            validate_witness(oracle, *witness);
        } else {
            witness = witness_from_subgroup(oracle, resolve_k(oracle, k_tokens));
        }
    }

    RunOptions opt{o.shots, o.seed};
    StrategyOutcome outcome = run_with_strategy(oracle, strategy, witness, opt);
    const bool ok = outcome.result.recovered == oracle.hidden;

    if (o.format == "csv") {
        write_output(o.out, distribution_csv(oracle.group, outcome.result.final_distribution));
    } else {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = "run";
        j["instance"] = o.instance.empty() ? o.oracle_file : o.instance;
        j["group"] = oracle.group.to_string();
        j["strategy"] = strategy_name;
        j["seed"] = o.seed;
        j["qubits"] = outcome.result.qubits_used;
        j["oracle_calls"] = outcome.result.oracle_calls;
        ordered_json samples = ordered_json::array();
        samples_string(outcome.result.samples, samples);
        j["samples"] = std::move(samples);
        j["distribution"] = distribution_json(oracle.group, outcome.result.final_distribution);
        j["recovered_subgroup"] = subgroup_json(outcome.result.recovered);
        j["declared_hidden"] = subgroup_json(oracle.hidden);
        j["ledger"] = ledger_json(outcome.ledger);
        j["recovered_matches_hidden"] = ok;
        write_output(o.out, j.dump(2) + "\n");
    }
    return ok ? 0 : 1;
}

int cmd_entangle(const CommonOpts& o) {
    OracleSpec oracle = load_oracle(o.instance, o.oracle_file);
    const double h_s_given_g = erasure_bound_bits(post_oracle_state(oracle));
    const uint32_t ell_max = max_bell_pairs(oracle.group, oracle.hidden);
    const uint32_t m = oracle.codomain_bits;

    struct Row {
        std::string gens;
        uint32_t order, ell;
        double ledger;
    };
    std::vector<Row> rows;
    for (const auto& k : intermediate_subgroups(oracle.hidden)) {
        const uint32_t ell = oracle.group.qubits() - log2_exact(k.order());
        std::string gens;
        for (uint32_t g : k.generator_indices()) {
            if (!gens.empty()) gens += ' ';
            gens += GroupElement::from_index(oracle.group, g).to_string();
        }
        rows.push_back({std::move(gens), k.order(), ell, static_cast<double>(m) - 2.0 * ell});
    }

    if (o.format == "csv") {
        std::ostringstream out;
        out << "k_order,bell_pairs,predicted_ledger,k_generators\n";
        // Generators are quoted: coordinates carry commas of their own.
        for (const auto& r : rows)
            out << r.order << ',' << r.ell << ',' << fmt_double(r.ledger) << ",\"" << r.gens << "\"\n";
        write_output(o.out, out.str());
    } else {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = "entangle";
        j["instance"] = o.instance.empty() ? o.oracle_file : o.instance;
        j["group"] = oracle.group.to_string();
        j["aux_qubits"] = m;
        j["conditional_entropy_bits"] = h_s_given_g;
        j["max_bell_pairs"] = ell_max;
        ordered_json table = ordered_json::array();
        for (const auto& r : rows)
            table.push_back({{"k_generators", r.gens},
                             {"k_order", r.order},
                             {"bell_pairs", r.ell},
                             {"predicted_ledger", r.ledger}});
        j["k_table"] = std::move(table);
        write_output(o.out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_simplify(const CommonOpts& o, const std::vector<std::string>& k_tokens, const std::string& access,
                 const std::string& witness_file) {
    OracleSpec oracle = load_oracle(o.instance, o.oracle_file);
    if (access == "open")
        oracle.access = OracleAccess::open_circuit;
    else if (access == "black-box")
        oracle.access = OracleAccess::black_box;
    else if (!access.empty())
        throw ConfigError("unknown access mode '" + access + "'");

    SimplifiedOracle so = [&]() {
        if (!witness_file.empty()) {
            std::ifstream in(witness_file);
            if (!in) throw ConfigError("cannot open witness file '" + witness_file + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            FactorizationWitness w = parse_witness(ss.str());
            validate_witness(oracle, w);
            return build_simplified(oracle, w);
        }
        return build_simplified(oracle, resolve_k(oracle, k_tokens));
    }();
    RunOptions opt{o.shots, o.seed};
    HspRunResult res = run_simplified(so, opt);

    WorkLedger ledger;
    const uint32_t m = oracle.codomain_bits, ell = so.witness.bell_pairs;
    if (m > ell) ledger.add("brute-force erasure of simplified aux", static_cast<double>(m - ell));
    if (ell > 0) ledger.add("reverse erasure of freed pure main qubits", -static_cast<double>(ell));

    const bool ok = res.recovered == oracle.hidden;
    if (o.format == "csv") {
        write_output(o.out, distribution_csv(oracle.group, res.final_distribution));
    } else {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = "simplify";
        j["instance"] = o.instance.empty() ? o.oracle_file : o.instance;
        j["group"] = oracle.group.to_string();
        j["access"] = oracle.access == OracleAccess::black_box ? "black-box" : "open";
        j["seed"] = o.seed;
        j["bell_pairs"] = ell;
        j["qubit_savings"] = so.qubit_savings;
        j["qft_dimension"] = so.k_domain.order(); // the transform now runs over K, not G
        j["qubits"] = res.qubits_used;
        j["oracle_calls"] = res.oracle_calls;
        j["ledger"] = ledger_json(ledger);
        j["recovered"] = subgroup_json(res.recovered);
        j["distribution"] = distribution_json(oracle.group, res.final_distribution);
        j["recovered_matches_hidden"] = ok;
        write_output(o.out, j.dump(2) + "\n");
    }
    return ok ? 0 : 1;
}

int cmd_landauer(const std::vector<uint32_t>& ns, const std::vector<double>& bds, double p_init,
                 const std::string& mode, const std::string& out_path) {
    if (ns.empty() || bds.empty()) throw ConfigError("landauer: need --n and --beta-delta");
    if (mode == "reverse") p_init = 0.0; // extraction starts from the pure state
    auto run_one = [&](uint32_t n, double bd) {
        landauer::BathSpec bath{n, bd};
        if (mode == "classical") return landauer::run_classical(bath, p_init);
        if (mode == "quantum") return landauer::run_quantum(bath, p_init);
        if (mode == "truncated") return landauer::run_truncated(bath, p_init);
        if (mode == "reverse") return landauer::run_reverse(bath);
        throw ConfigError("unknown landauer mode '" + mode + "'");
    };

    std::ostringstream out;
    out << "n,beta_delta,mode,p_init,step,p_excited,cumulative_work_kbt_ln2\n";
    const bool sweep = ns.size() * bds.size() > 1;
    for (uint32_t n : ns) {
        for (double bd : bds) {
            const landauer::ErasureTrace trace = run_one(n, bd);
            const double to_kbt = bd / std::numbers::ln2;
            if (sweep) {
                out << n << ',' << fmt_double(bd) << ',' << mode << ',' << fmt_double(p_init) << ','
                    << trace.steps.size() << ',' << fmt_double(trace.residual_excited) << ','
                    << fmt_double(trace.total_work_kbt_ln2) << '\n';
            } else {
                double cumulative = 0.0;
                for (size_t i = 0; i < trace.steps.size(); ++i) {
                    const auto& step = trace.steps[i];
                    cumulative += -step.storage_energy_delta * to_kbt;
                    out << n << ',' << fmt_double(bd) << ',' << mode << ',' << fmt_double(p_init) << ',' << (i + 1)
                        << ',' << fmt_double(step.p_excited) << ',' << fmt_double(cumulative) << '\n';
                }
            }
        }
    }
    write_output(out_path, out.str());
    return 0;
}

} // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Exact simulator for on-the-go erasure in Abelian hidden-subgroup algorithms"};
    app.require_subcommand(1);

    CommonOpts run_opts, ent_opts, simp_opts;
    std::string strategy = "brute", witness_file, access;
    std::vector<std::string> run_k, simp_k;

    CLI::App* run = app.add_subcommand("run", "run the standard algorithm with an erasure strategy");
    add_oracle_opts(run, run_opts);
    run->add_option("--strategy", strategy, "brute|side-info|battery")
        ->check(CLI::IsMember({"brute", "side-info", "battery"}));
    run->add_option("--k-generators", run_k, "generators of an intermediate subgroup (e.g. 2 or 3,1)");
    run->add_option("--witness-file", witness_file, "explicit factorization witness");
    run->add_option("--shots", run_opts.shots, "shot budget (default 8*log2|G|)")->check(CLI::PositiveNumber);
    run->add_option("--seed", run_opts.seed, "PRNG seed")->required();

    CLI::App* ent = app.add_subcommand("entangle", "report H(S|G), max Bell pairs and the per-K table");
    add_oracle_opts(ent, ent_opts);

    std::string simp_witness_file;
    CLI::App* simp = app.add_subcommand("simplify", "build and run the reduced-oracle algorithm over K");
    add_oracle_opts(simp, simp_opts);
    simp->add_option("--k-generators", simp_k, "generators of the intermediate subgroup");
    simp->add_option("--witness-file", simp_witness_file, "explicit factorization witness instead of K");
    simp->add_option("--access", access, "open|black-box (overrides the oracle annotation)")
        ->check(CLI::IsMember({"open", "black-box"}));
    simp->add_option("--shots", simp_opts.shots, "shot budget")->check(CLI::PositiveNumber);
    simp->add_option("--seed", simp_opts.seed, "PRNG seed")->required();

    std::vector<uint32_t> land_n{1};
    std::vector<double> land_bd{1.0};
    double p_init = 0.5;
    std::string mode = "classical", land_out;
    CLI::App* land = app.add_subcommand("landauer", "explicit thermodynamic erasure ladder");
    land->add_option("--n", land_n, "bath qubit counts (list for a sweep)")->required()->delimiter(',');
    land->add_option("--beta-delta", land_bd, "beta*Delta values (list for a sweep)")->required()->delimiter(',');
    land->add_option("--p-init", p_init, "initial excited population (default 0.5)");
    land->add_option("--mode", mode, "classical|quantum|truncated|reverse")
        ->check(CLI::IsMember({"classical", "quantum", "truncated", "reverse"}));
    land->add_option("--out", land_out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_opts, strategy, run_k, witness_file);
        if (ent->parsed()) return cmd_entangle(ent_opts);
        if (simp->parsed()) return cmd_simplify(simp_opts, simp_k, access, simp_witness_file);
        if (land->parsed()) return cmd_landauer(land_n, land_bd, p_init, mode, land_out);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const OracleValidationError& e) {
        std::cerr << "oracle validation error: " << e.what() << '\n';
        return 3;
    } catch (const FactorizationError& e) {
        std::cerr << "factorization error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    }
}

} // namespace otg::cli
