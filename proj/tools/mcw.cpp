// mcw: command-line front end. Exit codes: 0 success / yes, 1 no (or a
// failed check), 2 usage or input error, 3 refusal (instance too large).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcw/eds.hpp"
#include "mcw/fuzz.hpp"
#include "mcw/generate.hpp"
#include "mcw/hamcycle.hpp"
#include "mcw/lbgen/audit.hpp"
#include "mcw/lbgen/expression.hpp"
#include "mcw/lbgen/instance.hpp"
#include "mcw/maxcut.hpp"
#include "mcw/normalize.hpp"
#include "mcw/oracles.hpp"
#include "mcw/parse.hpp"

using json = nlohmann::ordered_json;
using namespace mcw;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path);
}

// phases in wall-clock ms; only printed with --timing
class Clock {
public:
    template <class F>
    auto run(const char* phase, F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        auto guard = [&] { ms_[phase] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count(); };
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            guard();
        } else {
            auto r = f();
            guard();
            return r;
        }
    }
    const json& ms() const { return ms_; }

private:
    json ms_ = json::object();
};

struct Common {
    bool json_out = false;
    bool timing = false;
    Clock clock;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_flag("--json", c.json_out, "machine-readable output");
    sub->add_flag("--timing", c.timing, "include wall-clock timings");
}

json stats_of(const MultiExpr& e, const Evaluation& ev) {
    json s;
    s["n"] = ev.graph.n();
    s["m"] = ev.graph.m();
    s["k"] = e.k_max;
    s["nodes"] = e.size();
    return s;
}

void emit(const Common& c, json j, const std::string& human) {
    if (c.timing) j["timing_ms"] = c.clock.ms();
    if (c.json_out) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << human;
    if (c.timing)
        for (auto& [k, v] : c.clock.ms().items()) std::cout << "time." << k << ": " << v.get<double>() << " ms\n";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// an expression file or a g/v/e graph file
SimpleGraph load_graph(const std::string& path, Clock& clock) {
    std::string text = clock.run("parse", [&] { return slurp(path); });
    auto p = text.find_first_not_of(" \t\r\n");
    while (p != std::string::npos && text[p] == ';') {
        p = text.find('\n', p);
        if (p != std::string::npos) p = text.find_first_not_of(" \t\r\n", p);
    }
    if (p != std::string::npos && text[p] == 'g') return SimpleGraph::from(read_graph_text(text));
    MultiExpr e = parse(text);
    auto r = validate(e);
    if (!r.ok()) throw ValidationError(r.findings[0].message);
    return SimpleGraph::from(evaluate(e).graph);
}

MultiExpr load_expr(const std::string& path, Clock& clock) {
    return clock.run("parse", [&] { return parse(slurp(path)); });
}

// ---- commands

int cmd_validate(const std::string& file, Common& c) {
    MultiExpr e = load_expr(file, c.clock);
    auto r = c.clock.run("validate", [&] { return validate(e); });
    json j;
    j["command"] = "validate";
    j["input"] = file;
    j["ok"] = r.ok();
    j["findings"] = json::array();
    std::string human = r.ok() ? "valid\n" : "invalid\n";
    for (const auto& f : r.findings) {
        const char* kind = f.kind == Finding::DuplicateId ? "duplicate-id" : f.kind == Finding::JoinPrecondition ? "join-precondition" : "label-range";
        j["findings"].push_back({{"kind", kind}, {"node", f.node}, {"message", f.message}});
        human += std::string(kind) + " at node " + std::to_string(f.node) + ": " + f.message + "\n";
    }
    if (r.ok()) {
        auto ev = evaluate(e);
        j["stats"] = stats_of(e, ev);
        j["linear"] = is_linear(e);
        j["irredundant"] = ev.irredundant();
    }
    emit(c, j, human);
    return r.ok() ? 0 : 1;
}

int cmd_normalize(const std::string& file, const std::string& out, Common& c) {
    MultiExpr e = load_expr(file, c.clock);
    auto r = validate(e);
    if (!r.ok()) throw ValidationError(r.findings[0].message);
    MultiExpr ne = c.clock.run("normalize", [&] { return normalize(e); });
    std::string text = serialize(ne);
    if (!out.empty()) spit(out, text + "\n");
    json j;
    j["command"] = "normalize";
    j["input"] = file;
    j["nodes_before"] = e.size();
    j["nodes_after"] = ne.size();
    j["expr"] = text;
    emit(c, j, out.empty() ? text + "\n" : "wrote " + out + "\n");
    return 0;
}

int cmd_eval(const std::string& file, const std::string& out, Common& c) {
    MultiExpr e = load_expr(file, c.clock);
    auto r = validate(e);
    if (!r.ok()) throw ValidationError(r.findings[0].message);
    auto ev = c.clock.run("evaluate", [&] { return evaluate(e); });
    std::string text = write_graph_text(ev.graph);
    if (!out.empty()) spit(out, text);
    json j;
    j["command"] = "eval";
    j["input"] = file;
    j["stats"] = stats_of(e, ev);
    j["linear"] = is_linear(e);
    j["irredundant"] = ev.irredundant();
    j["graph"] = text;
    emit(c, j, out.empty() ? text : "wrote " + out + "\n");
    return 0;
}

int cmd_solve_hc(const std::string& file, bool no_reduce, Common& c) {
    MultiExpr e = load_expr(file, c.clock);
    HcOptions opt;
    opt.reduce = !no_reduce;
    auto r = c.clock.run("solve", [&] { return solve_hc(e, opt); });
    json j;
    j["command"] = "solve hc";
    j["input"] = file;
    j["answer"] = r.answer;
    j["edges_tried"] = r.edges_tried;
    j["max_family"] = r.max_family;
    j["stats"] = stats_of(e, evaluate(e));
    emit(c, j, "hamiltonian: " + yes_no(r.answer) + "\nedges tried: " + std::to_string(r.edges_tried) + "\nmax family: " + std::to_string(r.max_family) + "\n");
    return r.answer ? 0 : 1;
}

int cmd_solve_eds(const std::string& file, std::optional<long> budget, bool optimum, Common& c) {
    if (!budget && !optimum) throw CLI::ValidationError("solve eds", "--budget or --optimum is required");
    MultiExpr e = load_expr(file, c.clock);
    if (budget && *budget < 0) throw ValidationError("eds: budget must be >= 0");
    auto r = c.clock.run("solve", [&] { return solve_eds_opt(e); });
    json j;
    j["command"] = "solve eds";
    j["input"] = file;
    std::string human;
    if (budget) {
        bool yes = r.optimum <= *budget;
        j["answer"] = yes;
        human += "eds of size <= " + std::to_string(*budget) + ": " + yes_no(yes) + "\n";
    } else {
        j["answer"] = nullptr;
    }
    j["optimum"] = r.optimum;
    j["max_set"] = r.max_set;
    j["stats"] = stats_of(e, evaluate(e));
    human += "optimum: " + std::to_string(r.optimum) + "\n";
    emit(c, j, human);
    return budget && r.optimum > *budget ? 1 : 0;
}

int cmd_solve_maxcut(const std::string& file, std::optional<long> budget, Common& c) {
    MultiExpr e = load_expr(file, c.clock);
    auto r = c.clock.run("solve", [&] { return solve_max_cut(e, budget); });
    json j;
    j["command"] = "solve maxcut";
    j["input"] = file;
    j["optimum"] = r.optimum;
    if (r.answer) j["answer"] = *r.answer;
    else j["answer"] = nullptr;
    j["fallback"] = r.fallback;
    j["max_table"] = r.max_table;
    j["stats"] = stats_of(e, evaluate(e));
    std::string human = "optimum: " + std::to_string(r.optimum) + "\n";
    if (r.answer) human += "cut >= " + std::to_string(*budget) + ": " + yes_no(*r.answer) + "\n";
    if (r.fallback) human += "fallback: oracle (redundant join)\n";
    emit(c, j, human);
    return r.answer && !*r.answer ? 1 : 0;
}

int cmd_oracle(const std::string& which, const std::string& file, std::optional<long> budget, Common& c) {
    SimpleGraph g = load_graph(file, c.clock);
    json j;
    j["command"] = "oracle " + which;
    j["input"] = file;
    j["n"] = g.n();
    j["m"] = g.m();
    std::string human;
    int code = 0;
    if (which == "hc") {
        bool a = c.clock.run("oracle", [&] { return oracle_hamiltonian_cycle(g); });
        j["answer"] = a;
        human = "hamiltonian: " + yes_no(a) + "\n";
        code = a ? 0 : 1;
    } else {
        long opt = c.clock.run("oracle", [&] { return which == "eds" ? long(oracle_eds(g)) : oracle_max_cut(g); });
        if (budget) {
            bool yes = which == "eds" ? opt <= *budget : opt >= *budget;
            j["answer"] = yes;
            human = (which == "eds" ? "eds of size <= " : "cut >= ") + std::to_string(*budget) + ": " + yes_no(yes) + "\n";
            code = yes ? 0 : 1;
        } else {
            j["answer"] = nullptr;
        }
        j["optimum"] = opt;
        human += "optimum: " + std::to_string(opt) + "\n";
    }
    emit(c, j, human);
    return code;
}

int cmd_gen_lb(const std::string& mis_file, std::optional<long> oc, std::optional<long> od, const std::string& prefix, std::size_t cap, Common& c) {
    auto mis = lb::read_mis(c.clock.run("parse", [&] { return slurp(mis_file); }));
    lb::Overrides ov{oc, od};
    auto inst = c.clock.run("instance", [&] { return lb::build_instance(mis, ov, cap); });
    auto e = c.clock.run("expression", [&] { return lb::build_expression(mis, ov, cap); });
    auto ev = c.clock.run("evaluate", [&] { return evaluate(e); });
    const auto& p = inst.params;

    json j;
    j["command"] = "gen lb";
    j["input"] = mis_file;
    j["budget"] = inst.b;
    json params;
    params["k_prime"] = mis.kp;
    params["k_prime_padded"] = p.kp;
    params["n_prime"] = p.np;
    params["n"] = p.n;
    params["m"] = p.m;
    params["k"] = p.k;
    params["C"] = p.C;
    params["D"] = p.D;
    params["L1"] = p.L1;
    params["L2"] = p.L2;
    params["L"] = p.L;
    params["N"] = p.N;
    params["C_meets_hypothesis"] = p.c_large;
    params["overridden"] = bool(oc || od);
    j["params"] = params;
    j["budget_per_copy"] = p.budget_j;
    json counts;
    counts["vertices"] = inst.graph.n();
    counts["edges"] = inst.graph.m();
    counts["expr_nodes"] = e.size();
    counts["labels"] = e.k_max;
    counts["linear"] = is_linear(e);
    counts["irredundant"] = ev.irredundant();
    counts["graph_matches_expression"] = equal_by_id(inst.graph, SimpleGraph::from(ev.graph));
    j["counts"] = counts;
    j["files"] = {prefix + ".expr", prefix + ".graph", prefix + ".json"};

    spit(prefix + ".expr", serialize(e) + "\n");
    spit(prefix + ".graph", write_graph_text(inst.graph));
    spit(prefix + ".json", j.dump(2) + "\n");

    std::string human = "budget: " + std::to_string(inst.b) + "\nk=" + std::to_string(p.k) + " n=" + std::to_string(p.n) + " m=" + std::to_string(p.m) +
                        " C=" + std::to_string(p.C) + " D=" + std::to_string(p.D) + "\nvertices: " + std::to_string(inst.graph.n()) +
                        "\nedges: " + std::to_string(inst.graph.m()) + "\nwrote " + prefix + ".{expr,graph,json}\n";
    emit(c, j, human);
    return 0;
}

int cmd_gen_random(int n, int k, std::uint64_t seed, const std::string& profile, const std::string& out, Common& c) {
    GeneratorProfile p;
    if (profile == "dense") p = dense_profile();
    else if (profile == "linear") p.linear = true;
    else if (profile == "irredundant") p.irredundant = true;
    MultiExpr e = c.clock.run("generate", [&] { return profile == "dense" ? gen_dense_expr(n, k, seed) : gen_random_expr(n, k, seed, p); });
    std::string text = serialize(e);
    if (!out.empty()) spit(out, text + "\n");
    auto ev = evaluate(e);
    json j;
    j["command"] = "gen random";
    j["seed"] = seed;
    j["profile"] = profile;
    j["stats"] = stats_of(e, ev);
    j["expr"] = text;
    emit(c, j, out.empty() ? text + "\n" : "wrote " + out + "\n");
    return 0;
}

int cmd_check_gadgets(long C, long D, int n, Common& c) {
    auto r = c.clock.run("audit", [&] { return lb::audit_gadgets(C, D, n); });
    json j;
    j["command"] = "check gadgets";
    j["C"] = C;
    j["D"] = D;
    j["n"] = n;
    j["C_meets_hypothesis"] = r.c_large;
    j["ok"] = r.ok();
    j["items"] = json::array();
    std::string human;
    for (const auto& i : r.items) {
        j["items"].push_back({{"name", i.name}, {"pass", i.pass}, {"in_scope", i.in_scope}, {"detail", i.detail}});
        human += std::string(i.pass ? "PASS " : i.in_scope ? "FAIL " : "note ") + i.name + "  " + i.detail + "\n";
    }
    human += r.ok() ? "all in-scope items hold\n" : std::to_string(r.failures().size()) + " in-scope item(s) fail\n";
    emit(c, j, human);
    return r.ok() ? 0 : 1;
}

int cmd_fuzz(const FuzzConfig& cfg, const std::string& dir, Common& c) {
    auto r = c.clock.run("fuzz", [&] { return run_fuzz(cfg); });
    json j;
    j["command"] = "fuzz";
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["count"] = cfg.count;
    j["seed"] = cfg.seed;
    j["which"] = cfg.which;
    j["results"] = json::array();
    std::string human;
    for (const auto& t : r.tallies) {
        j["results"].push_back({{"which", t.which}, {"agreed", t.agreed}, {"mismatches", t.mismatches}, {"refused", t.refused}});
        human += t.which + ": " + std::to_string(t.agreed) + "/" + std::to_string(cfg.count) + " agree with the oracle";
        if (t.refused) human += ", " + std::to_string(t.refused) + " refused";
        human += "\n";
    }
    j["failures"] = json::array();
    if (!r.failures.empty()) std::filesystem::create_directories(dir);
    for (const auto& f : r.failures) {
        std::string path = dir + "/" + f.which + "-seed" + std::to_string(cfg.seed) + "-case" + std::to_string(f.index) + ".expr";
        spit(path, "; solver " + std::to_string(f.solver) + ", oracle " + std::to_string(f.oracle) + "\n" + f.expr + "\n; original\n; " + f.original + "\n");
        j["failures"].push_back({{"case", f.index},
                                 {"which", f.which},
                                 {"solver", f.solver},
                                 {"oracle", f.oracle},
                                 {"nodes", f.nodes},
                                 {"original_nodes", f.original_nodes},
                                 {"expr", f.expr},
                                 {"file", path}});
        human += "MISMATCH " + f.which + " case " + std::to_string(f.index) + ": solver " + std::to_string(f.solver) + ", oracle " +
                 std::to_string(f.oracle) + " -> " + path + "\n  " + f.expr + "\n";
    }
    emit(c, j, human);
    return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-clique-width toolkit"};
    app.require_subcommand(1);
    Common c;

    std::string file, out;
    std::optional<long> budget;

    auto* validate_c = app.add_subcommand("validate", "check an expression file");
    validate_c->add_option("file", file, "expression file")->required();
    add_common(validate_c, c);

    auto* normalize_c = app.add_subcommand("normalize", "rewrite into single-label intros and special relabels");
    normalize_c->add_option("file", file)->required();
    normalize_c->add_option("-o,--out", out, "write the expression here");
    add_common(normalize_c, c);

    auto* eval_c = app.add_subcommand("eval", "evaluate to a labeled graph");
    eval_c->add_option("file", file)->required();
    eval_c->add_option("-o,--out", out, "write the graph here");
    add_common(eval_c, c);

    auto* solve = app.add_subcommand("solve", "run a solver on an expression");
    solve->require_subcommand(1);
    bool no_reduce = false, optimum = false;
    auto* s_hc = solve->add_subcommand("hc", "Hamiltonian cycle");
    s_hc->add_option("file", file)->required();
    s_hc->add_flag("--no-reduce", no_reduce, "keep every auxiliary multigraph");
    add_common(s_hc, c);
    auto* s_eds = solve->add_subcommand("eds", "edge dominating set of size <= budget");
    s_eds->add_option("file", file)->required();
    s_eds->add_option("--budget", budget, "size bound t");
    s_eds->add_flag("--optimum", optimum, "report the optimum (always included)");
    add_common(s_eds, c);
    auto* s_mc = solve->add_subcommand("maxcut", "maximum cut, optionally against a budget");
    s_mc->add_option("file", file)->required();
    s_mc->add_option("--budget", budget, "decision: cut >= budget");
    add_common(s_mc, c);

    auto* oracle = app.add_subcommand("oracle", "brute-force reference on an expression or graph file");
    oracle->require_subcommand(1);
    std::string oracle_which;
    for (const char* w : {"hc", "eds", "maxcut"}) {
        auto* o = oracle->add_subcommand(w);
        o->add_option("file", file)->required();
        if (std::string(w) != "hc") o->add_option("--budget", budget);
        o->callback([&oracle_which, w] { oracle_which = w; });
        add_common(o, c);
    }

    auto* gen = app.add_subcommand("gen", "generators");
    gen->require_subcommand(1);
    std::string mis_file, prefix, profile = "default";
    std::optional<long> oc, od;
    std::size_t cap = lb::kDefaultVertexCap;
    auto* g_lb = gen->add_subcommand("lb", "Max Cut instance from a multicolored independent set instance");
    g_lb->add_option("--mis", mis_file, "MIS file")->required();
    g_lb->add_option("--override-C", oc, "gadget multiplicity C")->check(CLI::PositiveNumber);
    g_lb->add_option("--override-D", od, "column length D")->check(CLI::PositiveNumber);
    g_lb->add_option("-o,--out", prefix, "output prefix")->required();
    g_lb->add_option("--vertex-cap", cap, "refuse larger instances");
    add_common(g_lb, c);
    int gn = 8, gk = 3;
    std::uint64_t seed = 1;
    auto* g_rand = gen->add_subcommand("random", "random valid expression");
    g_rand->add_option("--n", gn, "vertices")->required();
    g_rand->add_option("--k", gk, "labels")->required();
    g_rand->add_option("--seed", seed);
    g_rand->add_option("--profile", profile)->check(CLI::IsMember({"default", "dense", "linear", "irredundant"}));
    g_rand->add_option("-o,--out", out);
    add_common(g_rand, c);

    auto* check = app.add_subcommand("check", "audits");
    check->require_subcommand(1);
    long aC = 1, aD = 1;
    int an = 1;
    auto* c_gad = check->add_subcommand("gadgets", "exhaustive gadget audit");
    c_gad->add_option("--C", aC)->required()->check(CLI::PositiveNumber);
    c_gad->add_option("--D", aD)->required()->check(CLI::PositiveNumber);
    c_gad->add_option("--n", an)->required()->check(CLI::PositiveNumber);
    add_common(c_gad, c);

    FuzzConfig fc;
    std::string fdir = "fuzz-failures";
    auto* fuzz = app.add_subcommand("fuzz", "differential test: solvers against oracles");
    fuzz->add_option("--n", fc.n)->check(CLI::PositiveNumber);
    fuzz->add_option("--k", fc.k)->check(CLI::Range(1, kMaxLabel));
    fuzz->add_option("--count", fc.count)->check(CLI::NonNegativeNumber);
    fuzz->add_option("--seed", fc.seed);
    fuzz->add_option("--which", fc.which)->check(CLI::IsMember({"hc", "eds", "maxcut", "all"}));
    fuzz->add_option("--out", fdir, "directory for failing cases");
    add_common(fuzz, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*validate_c) return cmd_validate(file, c);
        if (*normalize_c) return cmd_normalize(file, out, c);
        if (*eval_c) return cmd_eval(file, out, c);
        if (*s_hc) return cmd_solve_hc(file, no_reduce, c);
        if (*s_eds) return cmd_solve_eds(file, budget, optimum, c);
        if (*s_mc) return cmd_solve_maxcut(file, budget, c);
        if (*oracle) return cmd_oracle(oracle_which, file, budget, c);
        if (*g_lb) return cmd_gen_lb(mis_file, oc, od, prefix, cap, c);
        if (*g_rand) return cmd_gen_random(gn, gk, seed, profile, out, c);
        if (*c_gad) return cmd_check_gadgets(aC, aD, an, c);
        if (*fuzz) return cmd_fuzz(fc, fdir, c);
    } catch (const CLI::Error& e) {
        std::cerr << "mcw: " << e.what() << "\n";
        return 2;
    } catch (const TooLarge& e) {
        std::cerr << "mcw: refused: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "mcw: parse error at " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mcw: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
