#pragma once

// Edge Dominating Set via footprints. A partial solution in G_x is a vertex
// cover S of G_x together with a matching M inside S; every cover vertex left
// unmatched is assigned one of its labels (it hopes to be matched through a
// later join on that label) or the star label (it stays unmatched for good).
// The footprint keeps I = labels of vertices outside S, how many unmatched
// cover vertices sit on each label, and |M|. Cost of a root footprint is
// |M| + (unmatched cover vertices) = |S| - |M|.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/evaluate.hpp"
#include "mcw/expr.hpp"
#include "mcw/normalize.hpp"

namespace mcw {

struct Footprint {
    LabelSet I;
    std::vector<std::uint32_t> psi;  // psi[l-1] for labels 1..order
    std::uint32_t ell = 0;

    long mass() const {
        long s = ell;
        for (auto p : psi) s += p;
        return s;
    }
    auto tie() const { return std::tie(I.bits, psi, ell); }
    bool operator==(const Footprint& o) const { return tie() == o.tie(); }
    bool operator<(const Footprint& o) const { return tie() < o.tie(); }
};

using FootprintSet = std::vector<Footprint>;  // sorted, no duplicates

namespace detail {

struct FootprintHash {
    std::size_t operator()(const Footprint& f) const {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ f.I.bits;
        h = (h ^ f.ell) * 0x100000001b3ULL;
        for (auto x : f.psi) h = (h ^ x) * 0x100000001b3ULL;
        return std::size_t(h ^ (h >> 29));
    }
};

// (I, psi) only; used when keeping the smallest matching size per pair
struct ShapeHash {
    std::size_t operator()(const Footprint& f) const {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ f.I.bits;
        for (auto x : f.psi) h = (h ^ x) * 0x100000001b3ULL;
        return std::size_t(h ^ (h >> 29));
    }
};
struct ShapeEq {
    bool operator()(const Footprint& a, const Footprint& b) const { return a.I == b.I && a.psi == b.psi; }
};

}  // namespace detail

// exact: dedupe on the whole triple. compact: per (I, psi) keep only the
// smallest ell -- a larger matching with the same (I, psi) can never be cheaper,
// since every later step adds the same amount to both.
class FootprintAccumulator {
public:
    explicit FootprintAccumulator(bool compact = false) : compact_(compact) {}

    void add(Footprint f) {
        if (!compact_) {
            exact_.insert(std::move(f));
            return;
        }
        std::uint32_t ell = f.ell;
        f.ell = 0;
        auto [it, fresh] = best_.try_emplace(std::move(f), ell);
        if (!fresh) it->second = std::min(it->second, ell);
    }
    std::size_t size() const { return compact_ ? best_.size() : exact_.size(); }

    FootprintSet take() {
        FootprintSet out;
        out.reserve(size());
        if (compact_)
            for (auto& [f, ell] : best_) out.push_back({f.I, f.psi, ell});
        else
            for (auto& f : exact_) out.push_back(f);
        std::sort(out.begin(), out.end());
        best_.clear();
        exact_.clear();
        return out;
    }

private:
    bool compact_;
    std::unordered_set<Footprint, detail::FootprintHash> exact_;
    std::unordered_map<Footprint, std::uint32_t, detail::ShapeHash, detail::ShapeEq> best_;  // ell lives in the value
};

inline FootprintSet eds_leaf(Label i, int order) {
    if (i < 1 || i > order) throw ValidationError("eds_leaf: label out of range");
    Footprint in_cover{LabelSet{}, std::vector<std::uint32_t>(order, 0), 0};
    in_cover.psi[i - 1] = 1;
    Footprint outside{LabelSet::single(i), std::vector<std::uint32_t>(order, 0), 0};
    FootprintSet s{in_cover, outside};
    std::sort(s.begin(), s.end());
    return s;
}

inline void eds_forget_into(const FootprintSet& s, Label i, FootprintAccumulator& out) {
    for (const auto& f : s) {
        if (f.psi[i - 1] > 0) continue;
        Footprint g = f;
        g.I.remove(i);
        out.add(std::move(g));
    }
}

inline void eds_add_label_into(const FootprintSet& s, Label i, Label j, FootprintAccumulator& out) {
    for (const auto& f : s) {
        Footprint g = f;
        if (f.I.has(i)) g.I.add(j);
        for (std::uint32_t r = 0; r <= f.psi[i - 1]; ++r) {
            g.psi[i - 1] = f.psi[i - 1] - r;
            g.psi[j - 1] = f.psi[j - 1] + r;
            out.add(g);
        }
    }
}

inline void eds_union_into(const FootprintSet& a, const FootprintSet& b, FootprintAccumulator& out) {
    for (const auto& f : a)
        for (const auto& h : b) {
            Footprint g{f.I | h.I, f.psi, f.ell + h.ell};
            for (std::size_t l = 0; l < g.psi.size(); ++l) g.psi[l] += h.psi[l];
            out.add(std::move(g));
        }
}

inline void eds_join_into(const FootprintSet& s, Label i, Label j, FootprintAccumulator& out) {
    for (const auto& f : s) {
        if (f.I.has(i) && f.I.has(j)) continue;  // an uncovered edge would appear
        std::uint32_t top = std::min(f.psi[i - 1], f.psi[j - 1]);
        Footprint g = f;
        for (std::uint32_t r = 0; r <= top; ++r) {
            g.psi[i - 1] = f.psi[i - 1] - r;
            g.psi[j - 1] = f.psi[j - 1] - r;
            g.ell = f.ell + r;
            out.add(g);
        }
    }
}

// exact-dedupe wrappers, one per operation
inline FootprintSet eds_forget(const FootprintSet& s, Label i) {
    FootprintAccumulator acc;
    eds_forget_into(s, i, acc);
    return acc.take();
}
inline FootprintSet eds_add_label(const FootprintSet& s, Label i, Label j) {
    if (i == j) throw ValidationError("eds_add_label: i == j");
    FootprintAccumulator acc;
    eds_add_label_into(s, i, j, acc);
    return acc.take();
}
inline FootprintSet eds_union(const FootprintSet& a, const FootprintSet& b) {
    FootprintAccumulator acc;
    eds_union_into(a, b, acc);
    return acc.take();
}
inline FootprintSet eds_join(const FootprintSet& s, Label i, Label j) {
    if (i == j) throw ValidationError("eds_join: i == j");
    FootprintAccumulator acc;
    eds_join_into(s, i, j, acc);
    return acc.take();
}

inline double footprint_set_bound(long n, int order) {
    return std::pow(2.0, order) * std::pow(double(n + 1), order) * double((n + 1) / 2 + 1);
}

// normalize, then put ρ_{i→{i,⋆}} right above every intro, ⋆ = k+1
inline MultiExpr star_expression(const MultiExpr& e) {
    if (e.k_max + 1 > kMaxLabel) throw TooLarge("eds: needs k + 1 <= 64 labels");
    MultiExpr ne = normalize(e);
    Label star = e.k_max + 1;
    ExprBuilder b;
    b.reserve(ne.size() + ne.vertex_count());
    std::vector<int> map(ne.size());
    for (int x = 0; x < int(ne.size()); ++x) {
        const Node& n = ne[x];
        switch (n.op) {
            case Op::Intro: map[x] = b.add_label(n.s.min(), star, b.intro(ne.id_of(x), n.s)); break;
            case Op::Union: map[x] = b.unite(map[n.a], map[n.b]); break;
            case Op::Join: map[x] = b.join(n.i, n.j, map[n.a]); break;
            case Op::Relabel: map[x] = b.relabel(n.i, n.s, map[n.a]); break;
        }
    }
    return b.finish(map[ne.root()], star);
}

struct EdsOptions {
    bool compact = true;  // keep min ell per (I, psi)
    std::function<void(int node, const FootprintSet&, long vx)> observe;
};

struct EdsResult {
    long optimum = 0;  // minimum edge dominating set size
    std::size_t max_set = 0;
};

inline EdsResult solve_eds_opt(const MultiExpr& e, const EdsOptions& opt = {}) {
    auto report = validate(e);
    if (!report.ok()) throw ValidationError(report.findings[0].message);
    MultiExpr se = star_expression(e);
    int order = se.k_max;
    std::vector<FootprintSet> at(se.size());
    std::vector<long> vx(se.size(), 0);
    EdsResult res;
    for (int x = 0; x < int(se.size()); ++x) {
        const Node& n = se[x];
        FootprintAccumulator acc(opt.compact);
        switch (n.op) {
            case Op::Intro:
                at[x] = eds_leaf(n.s.min(), order);
                vx[x] = 1;
                break;
            case Op::Union:
                eds_union_into(at[n.a], at[n.b], acc);
                vx[x] = vx[n.a] + vx[n.b];
                break;
            case Op::Join:
                eds_join_into(at[n.a], n.i, n.j, acc);
                vx[x] = vx[n.a];
                break;
            case Op::Relabel:
                if (n.s.empty())
                    eds_forget_into(at[n.a], n.i, acc);
                else {
                    LabelSet t = n.s;
                    t.remove(n.i);
                    eds_add_label_into(at[n.a], n.i, t.min(), acc);
                }
                vx[x] = vx[n.a];
                break;
        }
        if (n.op != Op::Intro) at[x] = acc.take();
        if (n.op == Op::Union) {
            FootprintSet().swap(at[n.a]);
            FootprintSet().swap(at[n.b]);
        } else if (n.op != Op::Intro) {
            FootprintSet().swap(at[n.a]);
        }
        res.max_set = std::max(res.max_set, at[x].size());
        if (opt.observe) opt.observe(x, at[x], vx[x]);
    }
    long best = std::numeric_limits<long>::max();
    for (const auto& f : at[se.root()]) best = std::min(best, f.mass());
    res.optimum = best;
    return res;
}

inline long eds_optimum(const MultiExpr& e) { return solve_eds_opt(e).optimum; }

inline bool solve_eds(const MultiExpr& e, long t) {
    if (t < 0) throw ValidationError("solve_eds: budget must be >= 0");
    return eds_optimum(e) <= t;
}

}  // namespace mcw
