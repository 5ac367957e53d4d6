#pragma once

// Differential harness: random expressions, solver against oracle. Failing
// cases are shrunk by deleting nodes while the expression stays valid and
// keeps failing.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mcw/eds.hpp"
#include "mcw/generate.hpp"
#include "mcw/hamcycle.hpp"
#include "mcw/maxcut.hpp"
#include "mcw/oracles.hpp"

namespace mcw {

struct FuzzConfig {
    int n = 8, k = 3, count = 100;
    std::uint64_t seed = 1;
    std::string which = "all";  // hc | eds | maxcut | all
};

// hc answers are 0/1
struct FuzzSolvers {
    std::function<long(const MultiExpr&)> hc = [](const MultiExpr& e) { return long(solve_hc(e).answer); };
    std::function<long(const MultiExpr&)> eds = [](const MultiExpr& e) { return eds_optimum(e); };
    std::function<long(const MultiExpr&)> maxcut = [](const MultiExpr& e) { return solve_max_cut(e).optimum; };
};

struct FuzzTally {
    std::string which;
    int agreed = 0, mismatches = 0, refused = 0;
};

struct FuzzFailure {
    int index = 0;
    std::string which;
    long solver = 0, oracle = 0;  // on the minimized expression
    std::string expr, original;
    std::size_t original_nodes = 0, nodes = 0;
};

struct FuzzReport {
    FuzzConfig config;
    std::vector<FuzzTally> tallies;
    std::vector<FuzzFailure> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

// e with node x replaced by its child number `side` (0 = a, 1 = b);
// nullopt when the result is not a valid expression
inline std::optional<MultiExpr> drop_node(const MultiExpr& e, int x, int side) {
    const int sz = int(e.size());
    std::vector<char> reach(sz, 0);
    std::vector<int> st{e.root()};
    while (!st.empty()) {
        int y = st.back();
        st.pop_back();
        reach[y] = 1;
        const Node& n = e[y];
        if (y == x) {
            st.push_back(side ? n.b : n.a);
        } else {
            if (n.a >= 0) st.push_back(n.a);
            if (n.b >= 0) st.push_back(n.b);
        }
    }
    try {
        ExprBuilder b;
        std::vector<int> nm(sz, -1);
        for (int y = 0; y < sz; ++y) {
            if (!reach[y]) continue;
            const Node& n = e[y];
            if (y == x) {
                nm[y] = nm[side ? n.b : n.a];
                continue;
            }
            switch (n.op) {
                case Op::Intro: nm[y] = b.intro(e.id_of(y), n.s); break;
                case Op::Union: nm[y] = b.unite(nm[n.a], nm[n.b]); break;
                case Op::Join: nm[y] = b.join(n.i, n.j, nm[n.a]); break;
                case Op::Relabel: nm[y] = b.relabel(n.i, n.s, nm[n.a]); break;
            }
        }
        MultiExpr out = b.finish(nm[e.root()], e.k_max);
        if (!validate(out).ok()) return std::nullopt;
        return out;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace detail

// greedy: keep deleting the highest node whose removal still fails
inline MultiExpr minimize_expr(MultiExpr e, const std::function<bool(const MultiExpr&)>& fails) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (int x = e.root(); x >= 0 && !progress; --x) {
            const Node& n = e[x];
            if (n.op == Op::Intro) continue;
            for (int side = 0; side < (n.op == Op::Union ? 2 : 1) && !progress; ++side) {
                auto c = detail::drop_node(e, x, side);
                if (c && fails(*c)) {
                    e = std::move(*c);
                    progress = true;
                }
            }
        }
    }
    return e;
}

inline std::vector<std::string> fuzz_targets(const std::string& which) {
    if (which == "all") return {"hc", "eds", "maxcut"};
    if (which == "hc" || which == "eds" || which == "maxcut") return {which};
    throw ValidationError("fuzz: unknown target '" + which + "'");
}

inline FuzzReport run_fuzz(const FuzzConfig& cfg, const FuzzSolvers& solvers = {}) {
    if (cfg.n < 1 || cfg.k < 1 || cfg.count < 0) throw ValidationError("fuzz: need n >= 1, k >= 1, count >= 0");
    auto targets = fuzz_targets(cfg.which);
    for (const auto& w : targets) {
        int cap = oracle_cap(w == "hc" ? kHamiltonCap : w == "eds" ? kEdsCap : kMaxCutCap);
        if (cfg.n > cap) throw TooLarge("fuzz: n = " + std::to_string(cfg.n) + " exceeds the " + w + " oracle cap " + std::to_string(cap));
    }
    FuzzReport r;
    r.config = cfg;
    for (const auto& w : targets) r.tallies.push_back({w});

    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.count; ++i) {
        std::uint64_t s = rng();
        for (auto& t : r.tallies) {
            const auto& w = t.which;
            MultiExpr e;
            if (w == "maxcut") {
                GeneratorProfile p;
                p.irredundant = true;
                e = gen_random_expr(cfg.n, cfg.k, s, p);
            } else {
                e = gen_dense_expr(cfg.n, cfg.k, s);
            }
            auto solve = w == "hc" ? solvers.hc : w == "eds" ? solvers.eds : solvers.maxcut;
            auto oracle = [&w](const MultiExpr& x) -> long {
                auto g = SimpleGraph::from(evaluate(x).graph);
                if (w == "hc") return oracle_hamiltonian_cycle(g);
                if (w == "eds") return oracle_eds(g);
                return oracle_max_cut(g);
            };
            auto fails = [&](const MultiExpr& x) {
                try {
                    return solve(x) != oracle(x);
                } catch (const TooLarge&) {
                    return false;
                }
            };
            long got, want;
            try {
                got = solve(e);
                want = oracle(e);
            } catch (const TooLarge&) {
                ++t.refused;
                continue;
            }
            if (got == want) {
                ++t.agreed;
                continue;
            }
            ++t.mismatches;
            MultiExpr m = minimize_expr(e, fails);
            FuzzFailure f;
            f.index = i;
            f.which = w;
            f.solver = solve(m);
            f.oracle = oracle(m);
            f.expr = serialize(m);
            f.original = serialize(e);
            f.original_nodes = e.size();
            f.nodes = m.size();
            r.failures.push_back(std::move(f));
        }
    }
    return r;
}

}  // namespace mcw
