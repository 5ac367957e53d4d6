// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance <mcw-binary> <samples-dir> [criterion...]
// Exit status is nonzero when any selected criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mcw/eds.hpp"
#include "mcw/generate.hpp"
#include "mcw/hamcycle.hpp"
#include "mcw/lbgen/audit.hpp"
#include "mcw/lbgen/expression.hpp"
#include "mcw/lbgen/instance.hpp"
#include "mcw/maxcut.hpp"
#include "mcw/normalize.hpp"
#include "mcw/oracles.hpp"

using namespace mcw;

namespace {

struct Outcome {
    bool pass;
    std::string summary;
};

std::string mcw_bin, samples_dir;

// ---- 1. HC differential

Outcome hc_differential() {
    int total = 0, agree = 0, yes = 0;
    std::string first_bad;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        for (int c = 0; c < 100; ++c) {
            int n = 3 + c % 8, k = 1 + (c / 8) % 4;
            auto e = gen_dense_expr(n, k, seed * 1000 + c);
            bool want = oracle_hamiltonian_cycle(SimpleGraph::from(evaluate(e).graph));
            bool got = solve_hc(e).answer;
            ++total;
            yes += want;
            if (got == want) ++agree;
            else if (first_bad.empty()) first_bad = serialize(e);
        }
    std::string s = std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(yes) + " Hamiltonian), n<=10, k<=4, 5 seeds";
    if (!first_bad.empty()) s += "; first mismatch " + first_bad;
    return {agree == total, s};
}

// ---- 2. reduce soundness and the family size bound

Outcome hc_reduce() {
    HcOptions raw;
    raw.reduce = false;
    int total = 0, agree = 0;
    long families = 0, violations = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        int n = 1 + int(seed % 7), k = 1 + int(seed / 7 % 3);
        auto e = gen_dense_expr(n, k, 7000 + seed);
        HcOptions opt;
        long vn = long(e.vertex_count());
        opt.observe = [&](int, const AuxFamily& f, long) {
            ++families;
            if (double(f.size()) > family_size_bound(vn, e.k_max + 2)) ++violations;
        };
        bool a = solve_hc(e, opt).answer;
        bool b = solve_hc(e, raw).answer;
        ++total;
        agree += a == b;
    }
    return {agree == total && violations == 0,
            std::to_string(agree) + "/" + std::to_string(total) + " agree with and without reduce (n<=7, k<=3); " + std::to_string(violations) +
                " bound violations over " + std::to_string(families) + " node families"};
}

// ---- 3. reduce keeps a representative family

void blue_multigraphs(int order, int edges, std::vector<AuxMultigraph>& out) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= order; ++a)
        for (int b = a; b <= order; ++b) pairs.push_back({a, b});
    AuxMultigraph g(order);
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (left == 0) {
            out.push_back(g);
            return;
        }
        for (std::size_t p = from; p < pairs.size(); ++p) {
            g.add(pairs[p].first, pairs[p].second);
            rec(p, left - 1);
            g.add(pairs[p].first, pairs[p].second, -1);
        }
    };
    rec(0, edges);
}

Outcome representation() {
    std::mt19937_64 rng(3);
    int families = 0;
    long checks = 0, counterexamples = 0;
    for (; families < 120; ++families) {
        int order = 2 + int(rng() % 3), edges = 1 + int(rng() % 4);
        AuxFamily f;
        int members = 2 + int(rng() % 11);
        for (int i = 0; i < members; ++i) {
            AuxMultigraph g(order);
            for (int x = 0; x < edges; ++x) g.add(1 + int(rng() % order), 1 + int(rng() % order));
            f.push_back(g);
        }
        AuxFamily red = reduce(f);
        std::vector<AuxMultigraph> blues;
        blue_multigraphs(order, edges, blues);
        for (const auto& b : blues) {
            ++checks;
            bool by_f = std::any_of(f.begin(), f.end(), [&](const AuxMultigraph& a) { return check_red_blue_eulerian(a, b); });
            bool by_red = std::any_of(red.begin(), red.end(), [&](const AuxMultigraph& a) { return check_red_blue_eulerian(a, b); });
            if (by_f && !by_red) ++counterexamples;
        }
    }
    return {counterexamples == 0, std::to_string(families) + " families (k'<=4, <=4 edges/member), " + std::to_string(checks) + " blue multigraphs, " +
                                      std::to_string(counterexamples) + " counterexamples"};
}

// ---- 4. EDS differential

Outcome eds_differential() {
    int total = 0, agree = 0;
    long thresholds = 0, threshold_bad = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        int n = 2 + int(seed % 9), k = 1 + int(seed / 9 % 4);
        auto e = gen_dense_expr(n, k, 9000 + seed);
        auto g = SimpleGraph::from(evaluate(e).graph);
        long want = oracle_eds(g);
        long got = eds_optimum(e);
        ++total;
        agree += got == want;
        for (long t = 0; t <= long(g.m()); ++t) {
            ++thresholds;
            if (solve_eds(e, t) != (want <= t)) ++threshold_bad;
        }
    }
    return {agree == total && threshold_bad == 0, std::to_string(agree) + "/" + std::to_string(total) + " optima equal (n<=10, k<=4); " +
                                                      std::to_string(thresholds - threshold_bad) + "/" + std::to_string(thresholds) + " thresholds t in [0,m] agree"};
}

// ---- 5. EDS as min over vertex covers, on every graph up to 7 vertices

// graphs as edge masks over pairs (u < v) in a fixed order
struct SmallGraphs {
    static int pair_index(int u, int v, int n) {
        if (u > v) std::swap(u, v);
        int idx = 0;
        for (int a = 0; a < u; ++a) idx += n - 1 - a;
        return idx + (v - u - 1);
    }

    static std::uint32_t canonical(std::uint32_t mask, int n) {
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (mask >> pair_index(u, v, n) & 1) es.push_back({u, v});
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::uint32_t best = ~0u;
        do {
            std::uint32_t m = 0;
            for (auto [u, v] : es) m |= 1u << pair_index(perm[u], perm[v], n);
            best = std::min(best, m);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    // one representative per isomorphism class, grown one vertex at a time
    static std::vector<std::vector<std::uint32_t>> up_to(int max_n) {
        std::vector<std::vector<std::uint32_t>> out(max_n + 1);
        out[0] = {0};
        for (int n = 1; n <= max_n; ++n) {
            std::set<std::uint32_t> seen;
            for (std::uint32_t prev : out[n - 1]) {
                std::uint32_t base = 0;
                for (int u = 0; u < n - 1; ++u)
                    for (int v = u + 1; v < n - 1; ++v)
                        if (prev >> pair_index(u, v, n - 1) & 1) base |= 1u << pair_index(u, v, n);
                for (std::uint32_t nb = 0; nb < (1u << (n - 1)); ++nb) {
                    std::uint32_t m = base;
                    for (int u = 0; u < n - 1; ++u)
                        if (nb >> u & 1) m |= 1u << pair_index(u, n - 1, n);
                    seen.insert(canonical(m, n));
                }
            }
            out[n].assign(seen.begin(), seen.end());
        }
        return out;
    }
};

int max_matching(const std::vector<std::pair<int, int>>& es, std::uint32_t within) {
    int best = 0;
    std::function<void(std::size_t, std::uint32_t, int)> rec = [&](std::size_t i, std::uint32_t used, int size) {
        best = std::max(best, size);
        for (std::size_t j = i; j < es.size(); ++j) {
            auto [u, v] = es[j];
            std::uint32_t b = (1u << u) | (1u << v);
            if ((within & b) == b && !(used & b)) rec(j + 1, used | b, size + 1);
        }
    };
    rec(0, 0, 0);
    return best;
}

bool dominates(const std::vector<std::pair<int, int>>& es, std::uint32_t ends) {
    return std::all_of(es.begin(), es.end(), [&](auto e) { return (ends >> e.first & 1) || (ends >> e.second & 1); });
}

Outcome eds_reformulation() {
    auto all = SmallGraphs::up_to(7);
    long graphs = 0, exceptions = 0;
    for (int n = 0; n <= 7; ++n)
        for (std::uint32_t mask : all[n]) {
            ++graphs;
            std::vector<std::pair<int, int>> es;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (mask >> SmallGraphs::pair_index(u, v, n) & 1) es.push_back({u, v});
            const int m = int(es.size());

            // direct: smallest edge subset whose ends touch every edge
            int direct = -1;
            std::uint32_t direct_set = 0;
            for (int size = 0; size <= m && direct < 0; ++size) {
                std::vector<int> pick(size);
                std::function<bool(int, int)> rec = [&](int pos, int from) {
                    if (pos == size) {
                        std::uint32_t ends = 0, set = 0;
                        for (int p : pick) {
                            ends |= (1u << es[p].first) | (1u << es[p].second);
                            set |= 1u << p;
                        }
                        if (!dominates(es, ends)) return false;
                        direct_set = set;
                        return true;
                    }
                    for (int j = from; j < m; ++j) {
                        pick[pos] = j;
                        if (rec(pos + 1, j + 1)) return true;
                    }
                    return false;
                };
                if (rec(0, 0)) direct = size;
            }

            // via covers
            int via = n + 1;
            std::uint32_t via_cover = 0;
            for (std::uint32_t s = 0; s < (1u << n); ++s) {
                if (!dominates(es, s)) continue;
                int v = std::popcount(s) - max_matching(es, s);
                if (v < via) via = v, via_cover = s;
            }
            if (n == 0) via = 0;
            if (direct != via) {
                ++exceptions;
                continue;
            }

            // direct -> cover: V(F) is a cover with |V(F)| - nu <= |F|
            std::uint32_t ends = 0;
            for (int p = 0; p < m; ++p)
                if (direct_set >> p & 1) ends |= (1u << es[p].first) | (1u << es[p].second);
            if (!dominates(es, ends) || std::popcount(ends) - max_matching(es, ends) > direct) ++exceptions;

            // cover -> edges: a maximum matching of G[S] plus one edge per
            // unmatched cover vertex dominates and has |S| - nu edges
            if (n > 0 && via_cover) {
                int nu = max_matching(es, via_cover);
                // greedy maximum: retry matchings until one of size nu is found
                std::uint32_t matched = 0;
                std::vector<int> chosen;
                std::function<bool(std::size_t, std::uint32_t, std::vector<int>&)> find = [&](std::size_t i, std::uint32_t used, std::vector<int>& acc) {
                    if (int(acc.size()) == nu) {
                        matched = used;
                        chosen = acc;
                        return true;
                    }
                    for (std::size_t j = i; j < es.size(); ++j) {
                        auto [u, v] = es[j];
                        std::uint32_t b = (1u << u) | (1u << v);
                        if ((via_cover & b) != b || (used & b)) continue;
                        acc.push_back(int(j));
                        if (find(j + 1, used | b, acc)) return true;
                        acc.pop_back();
                    }
                    return false;
                };
                std::vector<int> acc;
                find(0, 0, acc);
                std::uint32_t built = matched;
                int count = int(chosen.size());
                bool ok = true;
                for (int x = 0; x < n; ++x) {
                    if (!(via_cover >> x & 1) || (matched >> x & 1)) continue;
                    auto it = std::find_if(es.begin(), es.end(), [&](auto e) { return e.first == x || e.second == x; });
                    if (it == es.end()) {
                        ok = false;  // an isolated vertex in an optimal cover can't happen
                        break;
                    }
                    built |= (1u << it->first) | (1u << it->second);
                    ++count;
                }
                if (!ok || count != via || !dominates(es, built)) ++exceptions;
            }
        }
    return {exceptions == 0, std::to_string(graphs) + " graphs (all isomorphism classes, 0..7 vertices), " + std::to_string(exceptions) + " exceptions"};
}

// ---- 6. Max Cut differential

Outcome maxcut_differential() {
    int total = 0, agree = 0, dp = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        GeneratorProfile p;
        p.irredundant = true;
        p.joins_per_union = 2.0;
        int n = 2 + int(seed % 13), k = 1 + int(seed / 13 % 3);
        auto e = gen_random_expr(n, k, 11000 + seed, p);
        auto r = solve_max_cut(e);
        long want = oracle_max_cut(SimpleGraph::from(evaluate(e).graph));
        ++total;
        dp += !r.fallback;
        agree += r.optimum == want && !r.fallback;
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " class-DP optima equal the oracle (irredundant, n<=14, k<=3; " +
                                std::to_string(dp) + " ran the DP)"};
}

// ---- 7. gadget audit

Outcome gadget_audit() {
    int runs = 0, failing_runs = 0, items = 0;
    std::string failed;
    for (long C = 1; C <= 3; ++C)
        for (long D = 1; D <= 2; ++D) {
            auto r = lb::audit_gadgets(C, D, 1);
            ++runs;
            for (const auto& i : r.items) items += i.in_scope;
            if (r.ok()) continue;
            ++failing_runs;
            failed += " [C=" + std::to_string(C) + ",D=" + std::to_string(D) + ":";
            for (const auto& f : r.failures()) failed += " " + f;
            failed += "]";
        }
    std::string s = std::to_string(runs - failing_runs) + "/" + std::to_string(runs) + " (C,D) settings hold on every in-scope item (" + std::to_string(items) + " item checks, exhaustive partitions)";
    if (failing_runs) s += "; failing:" + failed;
    return {failing_runs == 0, s};
}

// ---- 8. lbgen structure on the minimal instance

Outcome lbgen_structure() {
    lb::MisInstance mis;
    mis.kp = 3;
    mis.np = 2;
    mis.edges = {{1, 0, 2, 1}};
    auto inst = lb::build_instance(mis);
    const auto& p = inst.params;
    const auto& g = inst.graph;
    auto roles = inst.roles();
    std::vector<std::string> bad;

    // hand-plugged: D = m(4k' C(n,2) + 2k'(2k'-1) n^2) = 2*3*5 = 30; C = D^2 C(2n,2) + 1
    if (p.D != 30) bad.push_back("D=" + std::to_string(p.D));
    if (p.C != 901) bad.push_back("C=" + std::to_string(p.C));

    long ab = 0;
    for (auto [u, v] : g.edges) {
        bool a = roles[u] == "A" || roles[u] == "B", b = roles[v] == "A" || roles[v] == "B";
        ab += a && b;
    }
    if (ab != p.D) bad.push_back("|E(A,B)|=" + std::to_string(ab));

    auto adj = g.adjacency();
    auto outer = [&](int v) { return roles[v] == "anchor" || roles[v] == "A" || roles[v] == "B"; };
    long paths = 0;
    for (int v = 0; v < g.n(); ++v) {
        if (roles[v] != "Fprime" || g.ids[v].back() != 'l') continue;
        int end1 = -1, mid = -1;
        for (int w : adj[v]) (roles[w] == "Fprime" ? mid : end1) = w;
        int end2 = -1;
        for (int w : adj[mid])
            if (w != v) end2 = w;
        paths += outer(end1) && outer(end2);
    }
    if (paths != p.N * p.C) bad.push_back("outer F' count=" + std::to_string(paths / p.C) + " vs N=" + std::to_string(p.N));

    auto e = lb::build_expression(mis);
    auto ev = evaluate(e);
    if (!equal_by_id(SimpleGraph::from(ev.graph), g)) bad.push_back("expression graph differs");
    if (!is_linear(e)) bad.push_back("not linear");
    LabelSet used;
    for (const Node& n : e.nodes) {
        used = used | n.s;
        if (n.op != Op::Intro) used.add(n.i);
        if (n.op == Op::Join) used.add(n.j);
    }
    if (used.size() > 3 * p.k + 32) bad.push_back(std::to_string(used.size()) + " labels");
    long redundant = 0, joins = 0;
    for (int x = 0; x < int(e.size()); ++x)
        if (e[x].op == Op::Join) {
            ++joins;
            redundant += !ev.ann[x].irredundant;
        }
    if (redundant) bad.push_back(std::to_string(redundant) + "/" + std::to_string(joins) + " joins redundant (A-B selection joins)");

    std::string s = "D=" + std::to_string(p.D) + " C=" + std::to_string(p.C) + " |E(A,B)|=" + std::to_string(ab) + " N=" + std::to_string(paths / p.C) +
                    " |V|=" + std::to_string(g.n()) + " labels=" + std::to_string(used.size()) + "/" + std::to_string(3 * p.k + 32);
    if (!bad.empty()) {
        s += "; failing:";
        for (const auto& b : bad) s += " " + b + ";";
        s.pop_back();
    }
    return {bad.empty(), s};
}

// ---- 9. normalization

Outcome normalization() {
    int total = 0, ok = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        GeneratorProfile p;
        p.max_intro_labels = 3;
        p.relabels_per_union = 1.0;
        auto e = gen_random_expr(1 + int(seed % 12), 1 + int(seed % 6), 13000 + seed, p);
        auto ne = normalize(e);
        ++total;
        ok += is_normalized(ne) && equal_labeled(evaluate(e).graph, evaluate(ne).graph);
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " normalized expressions are equivalent and in special-relabel form"};
}

// ---- 10. CLI determinism

std::pair<int, std::string> run(const std::string& cmd) {
    std::string out;
    FILE* f = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!f) return {-1, ""};
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), got);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

Outcome cli_determinism() {
    if (mcw_bin.empty()) return {false, "no mcw binary given"};
    auto tmp = std::filesystem::temp_directory_path() / "mcw-acceptance";
    std::filesystem::create_directories(tmp);
    std::string s = samples_dir + "/", t = tmp.string() + "/";
    std::vector<std::string> cmds = {
        "validate " + s + "c4.expr",
        "normalize " + s + "c4.expr",
        "eval " + s + "c4.expr",
        "solve hc " + s + "c4.expr",
        "solve hc " + s + "k2.expr --no-reduce",
        "solve eds " + s + "k2.expr --budget 0",
        "solve maxcut " + s + "c4.expr --budget 3",
        "oracle hc " + s + "c4.expr",
        "oracle eds " + s + "c4.expr --budget 2",
        "oracle maxcut " + s + "k2.expr",
        "gen random --n 9 --k 3 --seed 4",
        "gen random --n 9 --k 3 --seed 4 --profile irredundant",
        "gen lb --mis " + s + "minimal.mis --override-C 2 --override-D 3 -o " + t + "lb",
        "check gadgets --C 2 --D 1 --n 1",
        "fuzz --n 6 --k 2 --count 30 --seed 9 --out " + t + "fuzz",
    };
    int same = 0;
    std::string diff;
    for (const auto& c : cmds) {
        auto a = run(mcw_bin + " " + c + " --json");
        auto b = run(mcw_bin + " " + c + " --json");
        bool ok = a == b && a.first >= 0 && a.first != 2 && !a.second.empty();
        same += ok;
        if (!ok) diff += " [" + c + "]";
    }
    std::string out = std::to_string(same) + "/" + std::to_string(cmds.size()) + " commands give byte-identical JSON on repeat";
    if (!diff.empty()) out += "; differing:" + diff;
    return {same == int(cmds.size()), out};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) mcw_bin = argv[1];
    if (argc > 2) samples_dir = argv[2];
    std::set<int> only;
    for (int i = 3; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"HC differential", hc_differential},
        {"HC reduce soundness", hc_reduce},
        {"representation check", representation},
        {"EDS differential", eds_differential},
        {"EDS reformulation", eds_reformulation},
        {"Max Cut differential", maxcut_differential},
        {"gadget audit", gadget_audit},
        {"lbgen structure", lbgen_structure},
        {"normalization", normalization},
        {"CLI determinism", cli_determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = int(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && o.pass;
        std::printf("criterion %2d %-22s %s  %s (%.1fs)\n", id, criteria[i].first, o.pass ? "PASS" : "FAIL", o.summary.c_str(), s);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
