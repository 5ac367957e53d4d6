#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/evaluate.hpp"
#include "mcw/expr.hpp"

namespace mcw {

struct GeneratorProfile {
    int max_intro_labels = 2;
    double joins_per_union = 1.5;    // expected joins after each union
    double relabels_per_union = 0.6;
    double forget_share = 0.25;      // share of relabels that forget
    bool linear = false;
    bool irredundant = false;        // never re-add an existing edge
    std::size_t min_edges = 0;       // resample until the graph has this many edges
};

namespace detail {

class Gen {
public:
    Gen(int n, int k, std::uint64_t seed, const GeneratorProfile& pr) : n_(n), k_(k), pr_(pr), rng_(seed) {}

    MultiExpr run() {
        lab_.assign(n_, {});
        std::vector<Sub> pool;
        for (int t = 0; t < n_; ++t) pool.push_back(intro(t));
        if (pr_.linear) {
            Sub acc = std::move(pool[0]);
            for (int t = 1; t < n_; ++t) {
                acc = coin(0.5) ? unite(std::move(acc), std::move(pool[t])) : unite(std::move(pool[t]), std::move(acc));
                ops(acc);
            }
            pool.assign(1, std::move(acc));
        } else {
            while (pool.size() > 1) {
                std::size_t x = pick(pool.size()), y = pick(pool.size() - 1);
                if (y >= x) ++y;
                Sub s = unite(std::move(pool[x]), std::move(pool[y]));
                ops(s);
                if (x < y) std::swap(x, y);
                pool.erase(pool.begin() + x);
                pool.erase(pool.begin() + y);
                pool.push_back(std::move(s));
            }
        }
        if (n_ == 1 && coin(0.5)) relabel(pool[0]);
        return b_.finish(pool[0].node, k_);
    }

private:
    struct Sub {
        int node;
        std::vector<int> verts;
    };

    std::uint64_t pick(std::uint64_t m) { return rng_() % m; }
    bool coin(double p) { return double(rng_() >> 11) * 0x1.0p-53 < p; }
    int count(double rate) {
        int c = int(rate);
        return c + (coin(rate - c) ? 1 : 0);
    }

    Sub intro(int t) {
        int q = 1 + int(pick(std::min(pr_.max_intro_labels, k_)));
        LabelSet s;
        while (s.size() < q) s.add(1 + int(pick(k_)));
        lab_[t] = s;
        return {b_.intro("v" + std::to_string(t), s), {t}};
    }

    Sub unite(Sub a, Sub c) {
        Sub s{b_.unite(a.node, c.node), std::move(a.verts)};
        s.verts.insert(s.verts.end(), c.verts.begin(), c.verts.end());
        return s;
    }

    void ops(Sub& s) {
        int j = count(pr_.joins_per_union), r = count(pr_.relabels_per_union);
        // interleave in random order
        while (j + r > 0) {
            if (pick(j + r) < std::uint64_t(j)) {
                --j;
                join(s);
            } else {
                --r;
                relabel(s);
            }
        }
    }

    // uniform over label pairs that give a legal join adding at least one edge
    void join(Sub& s) {
        std::vector<std::pair<Label, Label>> ok;
        for (Label i = 1; i <= k_; ++i)
            for (Label j = i + 1; j <= k_; ++j) {
                bool hi = false, hj = false, bad = false;
                for (int v : s.verts) {
                    hi |= lab_[v].has(i);
                    hj |= lab_[v].has(j);
                    bad |= lab_[v].has(i) && lab_[v].has(j);
                }
                if (!hi || !hj || bad) continue;
                if (pr_.irredundant) {
                    for (int u : s.verts)
                        for (int v : s.verts)
                            if (lab_[u].has(i) && lab_[v].has(j) && adj_.count(edge_key(u, v))) bad = true;
                    if (bad) continue;
                }
                ok.push_back({i, j});
            }
        if (ok.empty()) return;
        auto [i, j] = ok[pick(ok.size())];
        if (coin(0.5)) std::swap(i, j);
        for (int u : s.verts)
            for (int v : s.verts)
                if (lab_[u].has(i) && lab_[v].has(j)) adj_.insert(edge_key(u, v));
        s.node = b_.join(i, j, s.node);
    }

    void relabel(Sub& s) {
        LabelSet present;
        for (int v : s.verts) present = present | lab_[v];
        if (present.empty()) return;
        auto ls = present.labels();
        Label i = ls[pick(ls.size())];
        LabelSet S;
        if (!coin(pr_.forget_share)) {
            int q = 1 + int(pick(2));
            while (S.size() < q && S.size() < k_) S.add(1 + int(pick(k_)));
            if (coin(0.5)) S.add(i);
        }
        for (int v : s.verts) lab_[v] = lab_[v].relabeled(i, S);
        s.node = b_.relabel(i, S, s.node);
    }

    int n_, k_;
    GeneratorProfile pr_;
    std::mt19937_64 rng_;
    ExprBuilder b_;
    std::vector<LabelSet> lab_;
    std::unordered_set<std::uint64_t> adj_;
};

}  // namespace detail

inline MultiExpr gen_random_expr(int n, int k, std::uint64_t seed, const GeneratorProfile& profile = {}) {
    if (n < 1 || k < 1 || k > kMaxLabel) throw ValidationError("gen_random_expr: need n >= 1 and 1 <= k <= 64");
    if (profile.max_intro_labels < 1) throw GenerationFailed("profile allows no intro labels");
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        MultiExpr e = detail::Gen(n, k, seed + attempt * 0x9e3779b97f4a7c15ULL, profile).run();
        if (profile.min_edges == 0 || evaluate(e).graph.m() >= profile.min_edges) return e;
    }
    throw GenerationFailed("no expression with " + std::to_string(profile.min_edges) + " edges after 64 attempts");
}

// single-label intros, more joins, aim for at least n edges; drops the edge
// floor when it can't be met (e.g. a triangle with two labels is rare)
inline GeneratorProfile dense_profile() {
    GeneratorProfile p;
    p.max_intro_labels = 1;
    p.joins_per_union = 2.0;
    p.relabels_per_union = 0.5;
    p.forget_share = 0.15;
    return p;
}

inline MultiExpr gen_dense_expr(int n, int k, std::uint64_t seed, GeneratorProfile p = dense_profile()) {
    p.min_edges = std::size_t(n);
    try {
        return gen_random_expr(n, k, seed, p);
    } catch (const GenerationFailed&) {
        p.min_edges = 0;
        return gen_random_expr(n, k, seed, p);
    }
}

}  // namespace mcw
