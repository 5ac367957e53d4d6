#pragma once

// Hamiltonian Cycle over a multi-k-expression. Partial solutions (path packings
// with a label choice per endpoint) are only ever seen through their auxiliary
// multigraphs: one edge per path, between the labels chosen at its two ends.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/evaluate.hpp"
#include "mcw/expr.hpp"
#include "mcw/multigraph.hpp"
#include "mcw/normalize.hpp"

namespace mcw {

using AuxFamily = std::vector<AuxMultigraph>;  // sorted, no duplicates

namespace detail {

struct VecHash {
    template <class T>
    std::size_t operator()(const std::vector<T>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) h = (h ^ std::uint64_t(x)) * 0x100000001b3ULL;
        return std::size_t(h ^ (h >> 29));
    }
};

inline void sort_unique(AuxFamily& f) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
}

}  // namespace detail

// degree vector followed by component representatives
inline std::vector<int> reduce_key(const AuxMultigraph& g) {
    auto k = degree_vector(g);
    auto c = component_ids(g);
    k.insert(k.end(), c.begin(), c.end());
    return k;
}

// Collects multigraphs; with reduction on keeps the lexicographically smallest
// member of each (degrees, components) class, otherwise exact duplicates only.
class FamilyAccumulator {
public:
    explicit FamilyAccumulator(bool reduce) : reduce_(reduce) {}

    // true if g became a member (new class, or a smaller representative)
    bool add(const AuxMultigraph& g) {
        if (!reduce_) return exact_.insert(g.m).second;
        auto [it, fresh] = best_.try_emplace(reduce_key(g), g);
        if (fresh) return true;
        if (g < it->second) {
            it->second = g;
            return true;
        }
        return false;
    }
    std::size_t size() const { return reduce_ ? best_.size() : exact_.size(); }

    AuxFamily take(int order) {
        AuxFamily out;
        out.reserve(size());
        if (reduce_) {
            for (auto& [k, g] : best_) out.push_back(std::move(g));
        } else {
            for (auto& m : exact_) {
                AuxMultigraph g(order);
                g.m = m;
                out.push_back(std::move(g));
            }
        }
        std::sort(out.begin(), out.end());
        best_.clear();
        exact_.clear();
        return out;
    }

private:
    bool reduce_;
    std::unordered_map<std::vector<int>, AuxMultigraph, detail::VecHash> best_;
    std::unordered_set<std::vector<std::uint16_t>, detail::VecHash> exact_;
};

// one member per (degrees, components) class: the lexicographically smallest matrix
inline AuxFamily reduce(const AuxFamily& f) {
    if (f.empty()) return {};
    FamilyAccumulator acc(true);
    for (const auto& g : f) acc.add(g);
    return acc.take(f[0].order);
}

inline AuxFamily leaf_family(Label i, int order) {
    AuxMultigraph g(order);
    g.add(i, i);
    return {g};
}

inline AuxFamily forget_family(const AuxFamily& f, Label i) {
    AuxFamily out;
    for (const auto& g : f)
        if (degree_vector(g)[i - 1] == 0) out.push_back(g);
    return out;
}

// every way of moving path ends from label i to the new label j
inline void add_label_into(const AuxFamily& f, Label i, Label j, FamilyAccumulator& out) {
    for (const auto& g : f) {
        int k = g.order;
        std::vector<int> others;  // a ∉ {i,j} with {a,i}-edges
        for (int a = 1; a <= k; ++a)
            if (a != i && a != j && g.mult(a, i)) others.push_back(a);
        int mij = g.mult(i, j), mii = g.mult(i, i);

        std::vector<int> q(others.size(), 0);
        for (;;) {
            AuxMultigraph base = g;
            for (std::size_t t = 0; t < others.size(); ++t) {
                base.at(others[t], i) -= q[t];
                base.at(others[t], j) += q[t];
            }
            for (int qj = 0; qj <= mij; ++qj)
                for (int q1 = 0; q1 <= mii; ++q1)
                    for (int q2 = 0; q1 + q2 <= mii; ++q2) {
                        AuxMultigraph h = base;
                        h.at(i, j) -= qj;
                        h.at(j, j) += qj;
                        h.at(i, i) -= q1 + q2;
                        h.at(i, j) += q1;
                        h.at(j, j) += q2;
                        out.add(h);
                    }
            // odometer over q
            std::size_t t = 0;
            while (t < q.size() && q[t] == g.mult(others[t], i)) q[t++] = 0;
            if (t == q.size()) break;
            ++q[t];
        }
    }
}

inline AuxFamily add_label_raw(const AuxFamily& f, Label i, Label j) {
    if (f.empty()) return {};
    FamilyAccumulator acc(false);
    add_label_into(f, i, j, acc);
    return acc.take(f[0].order);
}

inline AuxFamily add_label_family(const AuxFamily& f, Label i, Label j) {
    if (f.empty()) return {};
    FamilyAccumulator acc(true);
    add_label_into(f, i, j, acc);
    return acc.take(f[0].order);
}

inline void union_into(const AuxFamily& f1, const AuxFamily& f2, FamilyAccumulator& out) {
    AuxMultigraph c;
    for (const auto& a : f1)
        for (const auto& b : f2) {
            c = a;
            for (std::size_t t = 0; t < c.m.size(); ++t) c.m[t] += b.m[t];
            out.add(c);
        }
}

inline AuxFamily union_raw(const AuxFamily& f1, const AuxFamily& f2) {
    if (f1.empty() || f2.empty()) return {};
    FamilyAccumulator acc(false);
    union_into(f1, f2, acc);
    return acc.take(f1[0].order);
}

inline AuxFamily union_family(const AuxFamily& f1, const AuxFamily& f2) {
    if (f1.empty() || f2.empty()) return {};
    FamilyAccumulator acc(true);
    union_into(f1, f2, acc);
    return acc.take(f1[0].order);
}

// A + {i,j}: connect an i-end and a j-end of two different paths
inline AuxFamily join_step(const AuxMultigraph& g, Label i, Label j) {
    AuxFamily out;
    for (int a = 1; a <= g.order; ++a) {
        if (!g.mult(a, i)) continue;
        for (int b = 1; b <= g.order; ++b) {
            if (!g.mult(b, j)) continue;
            if (a == j && b == i && g.mult(i, j) < 2) continue;  // same edge twice
            AuxMultigraph h = g;
            h.at(a, i) -= 1;
            h.at(b, j) -= 1;
            h.at(a, b) += 1;
            out.push_back(std::move(h));
        }
    }
    return out;
}

// up to vx-1 rounds of F ∪ (F + {i,j}), stopping at a fixpoint. Only members that
// entered in the previous round are expanded; older ones already were.
inline AuxFamily join_family(const AuxFamily& f, Label i, Label j, long vx, bool use_reduce = true) {
    if (f.empty()) return {};
    FamilyAccumulator acc(use_reduce);
    AuxFamily fresh;
    for (const auto& g : f)
        if (acc.add(g)) fresh.push_back(g);
    if (use_reduce) fresh = reduce(fresh);
    for (long round = 1; round < vx && !fresh.empty(); ++round) {
        AuxFamily next;
        for (const auto& g : fresh)
            for (auto& h : join_step(g, i, j))
                if (acc.add(h)) next.push_back(std::move(h));
        fresh = std::move(next);
    }
    return acc.take(f[0].order);
}

inline bool root_accepts(const AuxFamily& f, Label lu, Label lv) {
    for (const auto& g : f)
        if (g.edges() == 1 && g.mult(lu, lv) == 1) return true;
    return false;
}

// n^{k'} · 2^{k'(log2 k' + 1)}
inline double family_size_bound(long n, int order) {
    return std::pow(double(n), order) * std::pow(2.0, order * (std::log2(double(order)) + 1));
}

// Closed walk through every edge once, colours alternating (R red, B blue).
inline bool check_red_blue_eulerian(const AuxMultigraph& r, const AuxMultigraph& b) {
    struct E {
        int x, y, colour;
    };
    std::vector<E> es;
    for (int c = 0; c < 2; ++c) {
        const AuxMultigraph& g = c ? b : r;
        for (int x = 1; x <= g.order; ++x)
            for (int y = x; y <= g.order; ++y)
                for (int t = 0; t < g.mult(x, y); ++t) es.push_back({x, y, c});
    }
    if (es.size() > 12) throw TooLarge("check_red_blue_eulerian: more than 12 edges");
    if (es.empty() || r.edges() != b.edges()) return false;

    int total = int(es.size());
    std::vector<bool> used(total, false);
    int start = 0;  // a red edge; any closed walk can be rotated to begin there
    std::function<bool(int, int, int)> walk = [&](int at, int colour, int done) -> bool {
        if (done == total) return at == start;
        for (int e = 0; e < total; ++e) {
            if (used[e] || es[e].colour != colour || (es[e].x != at && es[e].y != at)) continue;
            bool twin = false;  // parallel copy already tried at this depth
            for (int f = 0; f < e && !twin; ++f)
                twin = !used[f] && es[f].colour == colour && es[f].x == es[e].x && es[f].y == es[e].y;
            if (twin) continue;
            used[e] = true;
            int to = es[e].x == at ? es[e].y : es[e].x;
            if (walk(to, 1 - colour, done + 1)) return true;
            used[e] = false;
        }
        return false;
    };
    const E& first = es[0];
    used[0] = true;
    for (int o = 0; o < 2; ++o) {
        start = o ? first.y : first.x;
        int to = o ? first.x : first.y;
        if (walk(to, 1, 1)) return true;
        if (first.x == first.y) break;
    }
    return false;
}

struct HcOptions {
    bool reduce = true;
    // drop members with path ends on labels that can only be forgotten later
    bool prune_doomed = true;
    // sees every node family of every per-edge pass: (node, family, |V_x|)
    std::function<void(int, const AuxFamily&, long)> observe;
};

struct HcResult {
    bool answer = false;
    long edges_tried = 0;
    std::size_t max_family = 0;
};

namespace detail {

// doomed[x]: labels whose path ends at x can never be consumed before they are
// forgotten (or reach the root, where only lu-lv may remain). Members with such
// ends would be filtered out later anyway.
inline std::vector<LabelSet> doomed_labels(const MultiExpr& ne, int order, Label lu, Label lv) {
    std::vector<LabelSet> d(ne.size());
    LabelSet all;
    for (Label l = 1; l <= order; ++l) all.add(l);
    d[ne.root()] = all.minus(LabelSet{lu, lv});
    for (int x = ne.root(); x >= 0; --x) {
        const Node& n = ne[x];
        switch (n.op) {
            case Op::Intro: break;
            case Op::Union: d[n.a] = d[n.b] = d[x]; break;
            case Op::Join: d[n.a] = d[x].minus(LabelSet{n.i, n.j}); break;
            case Op::Relabel:
                if (n.s.empty()) {
                    d[n.a] = d[x] | LabelSet::single(n.i);
                } else {
                    // ends at i may stay or move to j; doomed only if both are
                    Label j = n.s.minus(LabelSet::single(n.i)).min();
                    d[n.a] = d[x];
                    if (!d[x].has(j)) d[n.a].remove(n.i);
                }
                break;
        }
    }
    return d;
}

inline AuxFamily drop_doomed(AuxFamily f, LabelSet doomed) {
    if (doomed.empty()) return f;
    auto dead = [&](const AuxMultigraph& g) {
        auto deg = degree_vector(g);
        for (int a = 0; a < g.order; ++a)
            if (deg[a] && doomed.has(a + 1)) return true;
        return false;
    };
    f.erase(std::remove_if(f.begin(), f.end(), dead), f.end());
    return f;
}

// One bottom-up pass over a normalized expression; vertices u and v additionally
// carry private labels lu = k+1, lv = k+2.
inline bool hc_pass(const MultiExpr& ne, const std::vector<NodeAnnotation>& ann, int u, int v, const HcOptions& opt,
                    HcResult& res) {
    int k = ne.k_max, order = k + 2;
    Label lu = k + 1, lv = k + 2;
    std::vector<LabelSet> doomed;
    if (opt.prune_doomed) doomed = doomed_labels(ne, order, lu, lv);
    std::vector<AuxFamily> fam(ne.size());
    FamilyAccumulator acc(opt.reduce);
    for (int x = 0; x < int(ne.size()); ++x) {
        const Node& n = ne[x];
        AuxFamily f;
        switch (n.op) {
            case Op::Intro: {
                Label i = n.s.min();
                if (n.vid == u || n.vid == v) {
                    Label l = n.vid == u ? lu : lv;
                    add_label_into(leaf_family(l, order), l, i, acc);
                    f = acc.take(order);
                } else {
                    f = leaf_family(i, order);
                }
                break;
            }
            case Op::Union:
                union_into(fam[n.a], fam[n.b], acc);
                f = acc.take(order);
                fam[n.b] = AuxFamily{};
                break;
            case Op::Join:
                f = join_family(fam[n.a], n.i, n.j, ann[x].nv, opt.reduce);
                break;
            case Op::Relabel:
                if (n.s.empty()) {
                    f = forget_family(fam[n.a], n.i);
                } else {
                    add_label_into(fam[n.a], n.i, n.s.minus(LabelSet::single(n.i)).min(), acc);
                    f = acc.take(order);
                }
                break;
        }
        if (n.op != Op::Intro) fam[n.a] = AuxFamily{};
        if (opt.prune_doomed) f = drop_doomed(std::move(f), doomed[x]);
        res.max_family = std::max(res.max_family, f.size());
        if (opt.observe) opt.observe(x, f, ann[x].nv);
        fam[x] = std::move(f);
    }
    return root_accepts(fam.back(), lu, lv);
}

}  // namespace detail

inline HcResult solve_hc(const MultiExpr& e, const HcOptions& opt = {}) {
    auto report = validate(e);
    if (!report.ok()) throw ValidationError(report.findings[0].message);
    if (e.k_max + 2 > kMaxLabel) throw TooLarge("solve_hc: needs k + 2 <= 64 labels");
    HcResult res;
    auto ev = evaluate(e);
    if (ev.graph.n() < 3) return res;
    MultiExpr ne = normalize(e);
    auto ann = evaluate(ne).ann;
    for (auto [u, v] : ev.graph.edges) {
        ++res.edges_tried;
        if (detail::hc_pass(ne, ann, u, v, opt, res)) {
            res.answer = true;
            break;
        }
    }
    return res;
}

}  // namespace mcw
