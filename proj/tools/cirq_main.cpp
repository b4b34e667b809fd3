// Command-line surface for the cirquent calculus toolkit.
//
// Conventions: machine-readable output is JSON (or CSV for bench) on stdout
// and is byte-deterministic across runs; human diagnostics and timings go to
// stderr.  Exit codes: 0 = success / provable / valid proof; 1 = not provable
// / refuted / invalid proof / out of budget; 2 = usage or input error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cirq/cirquent.hpp"
#include "cirq/decide.hpp"
#include "cirq/formula.hpp"
#include "cirq/instances.hpp"
#include "cirq/oracle.hpp"
#include "cirq/proof.hpp"
#include "cirq/reduce.hpp"
#include "cirq/search.hpp"

namespace {

using cirq::Formula;
using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

json load_json(const std::string& path) { return json::parse(read_file(path)); }

void emit(const json& out) { std::cout << out.dump(2) << '\n'; }

// Shared --formula/--file source for commands that take one formula.
struct FormulaSource {
    std::string text;
    std::string file;

    void add_flags(CLI::App* cmd) {
        auto* t = cmd->add_option("--formula", text, "formula text, e.g. '~P | P'");
        auto* f = cmd->add_option("--file", file, "file containing the formula text");
        t->excludes(f);
        f->excludes(t);
    }
    Formula load() const {
        if (text.empty() && file.empty())
            throw CLI::ValidationError("one of --formula or --file is required");
        return cirq::parse_formula(file.empty() ? text : read_file(file));
    }
};

json metrics_to_json(const cirq::ProofMetrics& m) {
    return json{{"size", m.size},
                {"rule_count", m.rule_count},
                {"max_width", m.max_width},
                {"rule_counts", m.rule_counts}};
}

const char* outcome_name(cirq::SearchOutcome o) {
    switch (o) {
        case cirq::SearchOutcome::Proved: return "proved";
        case cirq::SearchOutcome::Refuted: return "refuted";
        case cirq::SearchOutcome::BudgetExceeded: return "budget_exceeded";
    }
    return "?";
}

struct BudgetFlags {
    int rules = 0;
    std::int64_t nodes = 0;
    int dup_cap = -2;
    int width = 0;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--budget-rules", rules,
                        "per-branch cap on non-exchange rule applications (0 = derived)");
        cmd->add_option("--budget-nodes", nodes, "total search-node cap (0 = default)");
        cmd->add_option("--duplication-cap", dup_cap,
                        "per-branch growth-reversal allowance (-1 = derived)");
        cmd->add_option("--width-cap", width, "ogroup-count cap per cirquent (0 = derived)");
    }
    cirq::SearchBudget to_budget() const {
        cirq::SearchBudget b;
        if (rules > 0) b.max_nonexchange_rules = rules;
        if (nodes > 0) b.max_nodes_expanded = nodes;
        if (dup_cap >= -1) b.duplication_cap = dup_cap;
        if (width > 0) b.max_width_override = width;
        return b;
    }
};

json budget_to_json(const cirq::SearchBudget& b) {
    return json{{"max_nonexchange_rules", b.max_nonexchange_rules},
                {"max_width", b.max_width_override ? json(*b.max_width_override) : json()},
                {"max_nodes_expanded", b.max_nodes_expanded},
                {"duplication_cap", b.duplication_cap}};
}

int run_parse(const FormulaSource& src, const std::string& format) {
    Formula f = src.load();
    if (format == "text") {
        std::cout << cirq::render_formula(f) << '\n';
        return kExitSuccess;
    }
    emit(json{{"formula", cirq::render_formula(f)},
              {"length", cirq::formula_length(f)},
              {"connectives", cirq::connective_count(f)},
              {"positive_occurrences", cirq::positive_occurrence_count(f)},
              {"atoms", cirq::collect_atoms(f)},
              {"binary", cirq::is_binary(f)},
              {"normal_binary", cirq::is_normal_binary(f)}});
    return kExitSuccess;
}

int run_render_cirquent(const std::string& cirquent_path, const FormulaSource& src,
                        const std::string& format) {
    cirq::Cirquent c;
    if (!cirquent_path.empty()) {
        std::vector<std::string> warnings;
        c = cirq::cirquent_from_json(load_json(cirquent_path), &warnings);
        for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    } else {
        c = cirq::formula_cirquent(src.load());
    }
    if (format == "json")
        emit(cirq::cirquent_to_json(c));
    else if (format == "dot")
        std::cout << cirq::render_dot(c);
    else
        std::cout << cirq::render_text(c) << '\n';
    return kExitSuccess;
}

int run_check(const std::string& system_name, const std::string& proof_path) {
    cirq::SystemId system = cirq::system_from_name(system_name);
    cirq::Proof proof = cirq::proof_from_json(load_json(proof_path));
    cirq::CheckReport report = cirq::check(system, proof);
    json issues = json::array();
    for (const cirq::CheckIssue& issue : report.issues) {
        issues.push_back({{"path", issue.path},
                          {"rule", issue.rule},
                          {"diagnostic", issue.diagnostic},
                          {"message", issue.message}});
        std::cerr << "issue at [";
        for (std::size_t i = 0; i < issue.path.size(); ++i)
            std::cerr << (i ? "," : "") << issue.path[i];
        std::cerr << "] " << issue.rule << " " << issue.diagnostic << ": " << issue.message
                  << '\n';
    }
    emit(json{{"valid", report.ok},
              {"system", cirq::system_name(system)},
              {"conclusion", cirq::render_text(proof.cirquent)},
              {"metrics", metrics_to_json(cirq::metrics(proof))},
              {"issues", issues}});
    return report.ok ? kExitSuccess : kExitNegative;
}

int run_prove(const std::string& system_name, const FormulaSource& src,
              const BudgetFlags& flags, const std::string& emit_proof_path) {
    cirq::SystemId system = cirq::system_from_name(system_name);
    Formula goal = src.load();
    cirq::SearchBudget budget = flags.to_budget();
    cirq::SearchResult result = cirq::prove(system, goal, budget);

    json out{{"system", cirq::system_name(system)},
             {"formula", cirq::render_formula(goal)},
             {"outcome", outcome_name(result.outcome)},
             {"budget", budget_to_json(cirq::resolve_budget(system, goal, budget))}};
    if (result.proof) {
        out["metrics"] = metrics_to_json(cirq::metrics(*result.proof));
        if (!emit_proof_path.empty())
            write_file(emit_proof_path, cirq::proof_to_json(*result.proof).dump(2) + "\n");
    }
    std::cerr << "nodes_expanded=" << result.stats.nodes_expanded
              << " memo_hits=" << result.stats.memo_hits
              << " elapsed_s=" << result.stats.elapsed_seconds << '\n';
    emit(out);
    return result.outcome == cirq::SearchOutcome::Proved ? kExitSuccess : kExitNegative;
}

int run_decide(const std::string& system_name, const FormulaSource& src,
               const std::string& witness_path) {
    cirq::SystemId system = cirq::system_from_name(system_name);
    if (!witness_path.empty() && system != cirq::SystemId::CL5)
        throw CLI::ValidationError("--witness applies to --system cl5 only");
    Formula goal = src.load();

    json out;
    bool provable = false;
    switch (system) {
        case cirq::SystemId::CCC: {
            cirq::CccResult r = cirq::decide_ccc(goal);
            provable = r.provable;
            out["result"] = provable ? "provable" : "not_provable";
            if (!provable) out["countermodel"] = r.countermodel;
            break;
        }
        case cirq::SystemId::CL5: {
            cirq::Cl5Result r = cirq::decide_cl5(goal);
            provable = r.provable;
            out["result"] = provable ? "provable" : "not_provable";
            if (r.witness) {
                out["witness"] = cirq::witness_to_json(*r.witness);
                if (!witness_path.empty())
                    write_file(witness_path, out["witness"].dump(2) + "\n");
            }
            break;
        }
        case cirq::SystemId::CL5Minus: {
            // No semantic characterization is available here; the derived
            // budgets make the search itself a decision procedure.
            cirq::SearchResult r = cirq::prove(system, goal);
            if (r.outcome == cirq::SearchOutcome::BudgetExceeded) {
                out["result"] = "unknown";
                out["reason"] = "budget_exceeded";
            } else {
                provable = r.outcome == cirq::SearchOutcome::Proved;
                out["result"] = provable ? "provable" : "not_provable";
            }
            break;
        }
    }
    out["system"] = cirq::system_name(system);
    out["formula"] = cirq::render_formula(goal);
    emit(out);
    return provable ? kExitSuccess : kExitNegative;
}

int run_reduce_vc(const std::string& graph_path, int k, const std::string& format,
                  const std::string& out_path) {
    cirq::VCInstance inst{cirq::parse_graph_text(read_file(graph_path)), k};
    cirq::ReductionOutput out = cirq::reduce_vertex_cover(inst);
    std::string text = cirq::render_formula(out.formula);
    if (!out_path.empty()) write_file(out_path, text + "\n");
    if (format == "text")
        std::cout << text << '\n';
    else
        emit(json{{"formula", text}, {"metadata", out.metadata}});
    return kExitSuccess;
}

int run_reduce_qbf(const std::string& input_path, const std::string& format,
                   const std::string& out_path) {
    cirq::Sigma2Instance inst = cirq::parse_sigma2_text(read_file(input_path));
    cirq::ReductionOutput out = cirq::reduce_sigma2(inst);
    std::string text = cirq::render_formula(out.formula);
    if (!out_path.empty()) write_file(out_path, text + "\n");
    if (format == "text")
        std::cout << text << '\n';
    else
        emit(json{{"formula", text}, {"metadata", out.metadata}});
    return kExitSuccess;
}

Formula identity_chain(int n) {
    std::vector<Formula> parts;
    for (int i = 1; i <= n; ++i) {
        std::string name = "P" + std::to_string(i);
        parts.push_back(Formula::disj(Formula::neg_atom(name), Formula::atom(name)));
    }
    Formula acc = parts.back();
    for (auto it = std::next(parts.rbegin()); it != parts.rend(); ++it)
        acc = Formula::conj(*it, acc);
    return acc;
}

cirq::VCInstance random_vc_instance(std::mt19937_64& rng) {
    int m = std::uniform_int_distribution<int>(2, 4)(rng);
    cirq::Graph g;
    for (int i = 1; i <= m; ++i) g.vertices.push_back("v" + std::to_string(i));
    std::bernoulli_distribution keep(0.5);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (keep(rng)) g.edges.emplace_back(g.vertices[i], g.vertices[j]);
    if (g.edges.empty()) g.edges.emplace_back(g.vertices[0], g.vertices[1]);
    int k = std::uniform_int_distribution<int>(1, m)(rng);
    return {std::move(g), k};
}

cirq::Sigma2Instance random_sigma2_instance(std::mt19937_64& rng) {
    int nx = std::uniform_int_distribution<int>(0, 2)(rng);
    int ny = std::uniform_int_distribution<int>(0, 2)(rng);
    if (nx + ny == 0) nx = 1;
    cirq::Sigma2Instance inst;
    std::vector<std::string> vars;
    for (int i = 1; i <= nx; ++i) {
        inst.exists_vars.push_back("x" + std::to_string(i));
        vars.push_back(inst.exists_vars.back());
    }
    for (int i = 1; i <= ny; ++i) {
        inst.forall_vars.push_back("y" + std::to_string(i));
        vars.push_back(inst.forall_vars.back());
    }
    int conjuncts = std::uniform_int_distribution<int>(1, 3)(rng);
    std::uniform_int_distribution<int> pick_var(0, static_cast<int>(vars.size()) - 1);
    std::bernoulli_distribution negate(0.5);
    for (int c = 0; c < conjuncts; ++c) {
        int lits = std::uniform_int_distribution<int>(1, 2)(rng);
        std::vector<cirq::DnfLiteral> conjunct;
        for (int l = 0; l < lits; ++l) conjunct.push_back({vars[pick_var(rng)], negate(rng)});
        inst.dnf.push_back(std::move(conjunct));
    }
    return inst;
}

int run_bench(const std::string& family, int count, std::uint64_t seed, bool seed_given,
              const std::string& system_override, const BudgetFlags& flags) {
    if (family != "identity" && !seed_given)
        throw CLI::ValidationError("--seed is required for the " + family + " family");
    cirq::SystemId system = cirq::SystemId::CL5Minus;
    if (!system_override.empty())
        system = cirq::system_from_name(system_override);
    else if (family == "qbf")
        system = cirq::SystemId::CL5;

    struct Row {
        std::string id;
        Formula formula;
    };
    std::vector<Row> rows;
    std::mt19937_64 rng(seed);
    for (int i = 1; i <= count; ++i) {
        if (family == "identity") {
            rows.push_back({"identity_" + std::to_string(i), identity_chain(i)});
        } else if (family == "vc") {
            rows.push_back({"vc_" + std::to_string(seed) + "_" + std::to_string(i),
                            cirq::vc_to_cl5minus(random_vc_instance(rng))});
        } else {
            rows.push_back({"qbf_" + std::to_string(seed) + "_" + std::to_string(i),
                            cirq::tqbf_to_cl5(random_sigma2_instance(rng))});
        }
    }

    // Keep default runs bounded: hard random instances report
    // budget_exceeded rather than stalling the whole table.
    cirq::SearchBudget budget = flags.to_budget();
    if (flags.nodes <= 0) budget.max_nodes_expanded = 10'000;

    std::cout << "instance,k,result,rule_count,size,max_width,elapsed_ms\n";
    for (const Row& row : rows) {
        auto start = std::chrono::steady_clock::now();
        cirq::SearchResult result = cirq::prove(system, row.formula, budget);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
        cirq::ProofMetrics m;
        if (result.proof) m = cirq::metrics(*result.proof);
        char elapsed[32];
        std::snprintf(elapsed, sizeof elapsed, "%.3f", ms);
        std::cout << row.id << ',' << cirq::formula_length(row.formula) << ','
                  << outcome_name(result.outcome) << ',' << m.rule_count << ',' << m.size << ','
                  << m.max_width << ',' << elapsed << '\n';
    }
    return kExitSuccess;
}

int run_oracle_vc(const std::string& graph_path, int k) {
    cirq::VCInstance inst{cirq::parse_graph_text(read_file(graph_path)), k};
    auto cover = cirq::brute_force_vc(inst);
    emit(json{{"cover", cover ? json(*cover) : json()}});
    return cover ? kExitSuccess : kExitNegative;
}

int run_oracle_sigma2(const std::string& input_path) {
    bool value = cirq::eval_sigma2(cirq::parse_sigma2_text(read_file(input_path)));
    emit(json{{"true", value}});
    return value ? kExitSuccess : kExitNegative;
}

int run_oracle_taut(const FormulaSource& src) {
    bool value = cirq::brute_force_tautology(src.load());
    emit(json{{"tautology", value}});
    return value ? kExitSuccess : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cirquent calculus toolkit: check, search, decide, reduce"};
    app.require_subcommand(1);

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "parse a formula and report its shape");
    FormulaSource parse_src;
    parse_src.add_flags(parse_cmd);
    std::string parse_format = "json";
    parse_cmd->add_option("--format", parse_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    // render-cirquent
    auto* render_cmd =
        app.add_subcommand("render-cirquent", "render a cirquent as text, JSON, or DOT");
    std::string render_cirquent_path;
    render_cmd->add_option("--cirquent", render_cirquent_path, "cirquent JSON file");
    FormulaSource render_src;
    render_src.add_flags(render_cmd);
    std::string render_format = "text";
    render_cmd->add_option("--format", render_format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    // check
    auto* check_cmd = app.add_subcommand("check", "verify a proof tree against a system");
    std::string check_system;
    check_cmd->add_option("--system", check_system, "ccc, cl5, or cl5minus")->required();
    std::string check_proof_path;
    check_cmd->add_option("--proof", check_proof_path, "proof JSON file")->required();

    // prove
    auto* prove_cmd = app.add_subcommand("prove", "backward proof search for a formula");
    std::string prove_system;
    prove_cmd->add_option("--system", prove_system, "ccc, cl5, or cl5minus")->required();
    FormulaSource prove_src;
    prove_src.add_flags(prove_cmd);
    BudgetFlags prove_budget;
    prove_budget.add_flags(prove_cmd);
    std::string emit_proof_path;
    prove_cmd->add_option("--emit-proof", emit_proof_path, "write the found proof JSON here");

    // decide
    auto* decide_cmd =
        app.add_subcommand("decide", "semantic decision procedure for a formula");
    std::string decide_system;
    decide_cmd->add_option("--system", decide_system, "ccc, cl5, or cl5minus")->required();
    FormulaSource decide_src;
    decide_src.add_flags(decide_cmd);
    std::string witness_path;
    decide_cmd->add_option("--witness", witness_path,
                           "write the binary-tautology witness JSON here (cl5 only)");

    // reduce-vc
    auto* rvc_cmd =
        app.add_subcommand("reduce-vc", "encode a vertex-cover instance as a formula");
    std::string rvc_graph;
    rvc_cmd->add_option("--graph", rvc_graph, "graph text file (edge per line)")->required();
    int rvc_k = 0;
    rvc_cmd->add_option("--k", rvc_k, "cover budget (>= 1)")->required();
    std::string rvc_format = "json";
    rvc_cmd->add_option("--format", rvc_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    std::string rvc_out;
    rvc_cmd->add_option("--out", rvc_out, "also write the bare formula text here");

    // reduce-qbf
    auto* rqbf_cmd = app.add_subcommand(
        "reduce-qbf", "encode an exists/forall DNF instance as a formula");
    std::string rqbf_input;
    rqbf_cmd->add_option("--input", rqbf_input, "instance text file (exists/forall/dnf lines)")
        ->required();
    std::string rqbf_format = "json";
    rqbf_cmd->add_option("--format", rqbf_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    std::string rqbf_out;
    rqbf_cmd->add_option("--out", rqbf_out, "also write the bare formula text here");

    // bench
    auto* bench_cmd =
        app.add_subcommand("bench", "prove instance families and emit CSV timings");
    std::string bench_family;
    bench_cmd->add_option("--family", bench_family, "instance family")
        ->check(CLI::IsMember({"identity", "vc", "qbf"}))
        ->required();
    int bench_count = 10;
    bench_cmd->add_option("--count", bench_count, "number of instances")
        ->check(CLI::PositiveNumber);
    std::uint64_t bench_seed = 0;
    auto* seed_opt = bench_cmd->add_option("--seed", bench_seed,
                                           "generator seed (required for vc and qbf)");
    std::string bench_system;
    bench_cmd->add_option("--system", bench_system,
                          "override the proof system (default: cl5minus; qbf: cl5)");
    BudgetFlags bench_budget;
    bench_budget.add_flags(bench_cmd);

    // oracle
    auto* oracle_cmd =
        app.add_subcommand("oracle", "brute-force reference checks for small inputs");
    oracle_cmd->require_subcommand(1);
    auto* ovc_cmd = oracle_cmd->add_subcommand("vc", "smallest vertex cover within budget");
    std::string ovc_graph;
    ovc_cmd->add_option("--graph", ovc_graph, "graph text file")->required();
    int ovc_k = 0;
    ovc_cmd->add_option("--k", ovc_k, "cover budget")->required();
    auto* os2_cmd = oracle_cmd->add_subcommand("sigma2", "exists/forall DNF truth by table");
    std::string os2_input;
    os2_cmd->add_option("--input", os2_input, "instance text file")->required();
    auto* otaut_cmd = oracle_cmd->add_subcommand("taut", "tautology by full truth table");
    FormulaSource otaut_src;
    otaut_src.add_flags(otaut_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (parse_cmd->parsed()) return run_parse(parse_src, parse_format);
        if (render_cmd->parsed())
            return run_render_cirquent(render_cirquent_path, render_src, render_format);
        if (check_cmd->parsed()) return run_check(check_system, check_proof_path);
        if (prove_cmd->parsed())
            return run_prove(prove_system, prove_src, prove_budget, emit_proof_path);
        if (decide_cmd->parsed()) return run_decide(decide_system, decide_src, witness_path);
        if (rvc_cmd->parsed()) return run_reduce_vc(rvc_graph, rvc_k, rvc_format, rvc_out);
        if (rqbf_cmd->parsed()) return run_reduce_qbf(rqbf_input, rqbf_format, rqbf_out);
        if (bench_cmd->parsed())
            return run_bench(bench_family, bench_count, bench_seed, seed_opt->count() > 0,
                             bench_system, bench_budget);
        if (oracle_cmd->parsed()) {
            if (ovc_cmd->parsed()) return run_oracle_vc(ovc_graph, ovc_k);
            if (os2_cmd->parsed()) return run_oracle_sigma2(os2_input);
            if (otaut_cmd->parsed()) return run_oracle_taut(otaut_src);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
