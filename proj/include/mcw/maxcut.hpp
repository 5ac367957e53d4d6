#pragma once

// Max Cut over a multi-k-expression, one class per distinct label set. The
// state stores, for every class, how many of its vertices are on side 1; the
// table maps such a count vector to the most crossed edges so far. This is the
// cut DP on the 2^k-expression you get by treating each label set as a label.
// Only valid while every join adds fresh edges: with a redundant join the
// class counts no longer say which edges are already there.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/evaluate.hpp"
#include "mcw/expr.hpp"
#include "mcw/graph.hpp"
#include "mcw/oracles.hpp"

namespace mcw {

// classes in increasing label-set order; table index is mixed radix with
// class 0 least significant, digit c in [0, cnt]
struct ClassState {
    std::vector<LabelSet> sets;
    std::vector<long> cnt;
    std::vector<long> table;

    std::vector<long> strides() const {
        std::vector<long> s(sets.size());
        long acc = 1;
        for (std::size_t c = 0; c < sets.size(); ++c) {
            s[c] = acc;
            acc *= cnt[c] + 1;
        }
        return s;
    }
    long best() const { return table.empty() ? 0 : *std::max_element(table.begin(), table.end()); }
    long vertices() const {
        long v = 0;
        for (auto c : cnt) v += c;
        return v;
    }
};

inline constexpr long kMaxCutTableCap = 50'000'000;

namespace detail {

inline long table_size(const std::vector<long>& cnt) {
    long p = 1;
    for (auto c : cnt) {
        p *= c + 1;
        if (p > kMaxCutTableCap) throw InstanceTooLarge("maxcut: class table exceeds " + std::to_string(kMaxCutTableCap) + " states");
    }
    return p;
}

// For each old class, the new label set it becomes (empty = drop, the class
// is projected out by maximizing over it). Returns the merged classes and, for
// every old state, its contribution to the new index.
struct Remap {
    std::vector<LabelSet> sets;
    std::vector<long> cnt;
    std::vector<long> offset;  // per old state
};

inline Remap remap(const ClassState& a, const std::vector<LabelSet>& target) {
    Remap r;
    for (std::size_t c = 0; c < a.sets.size(); ++c)
        if (!target[c].empty()) r.sets.push_back(target[c]);
    std::sort(r.sets.begin(), r.sets.end(), [](LabelSet x, LabelSet y) { return x.bits < y.bits; });
    r.sets.erase(std::unique(r.sets.begin(), r.sets.end()), r.sets.end());
    r.cnt.assign(r.sets.size(), 0);
    std::vector<int> where(a.sets.size(), -1);
    for (std::size_t c = 0; c < a.sets.size(); ++c) {
        if (target[c].empty()) continue;
        where[c] = int(std::lower_bound(r.sets.begin(), r.sets.end(), target[c], [](LabelSet x, LabelSet y) { return x.bits < y.bits; }) - r.sets.begin());
        r.cnt[where[c]] += a.cnt[c];
    }
    std::vector<long> ns(r.sets.size());
    long acc = 1;
    for (std::size_t c = 0; c < ns.size(); ++c) {
        ns[c] = acc;
        acc *= r.cnt[c] + 1;
    }
    // odometer over old states
    r.offset.assign(a.table.size(), 0);
    std::vector<long> digit(a.sets.size(), 0);
    long off = 0;
    for (std::size_t s = 0; s < a.table.size(); ++s) {
        r.offset[s] = off;
        for (std::size_t c = 0; c < digit.size(); ++c) {
            long step = where[c] < 0 ? 0 : ns[where[c]];
            if (digit[c] < a.cnt[c]) {
                ++digit[c];
                off += step;
                break;
            }
            off -= step * digit[c];
            digit[c] = 0;
        }
    }
    return r;
}

}  // namespace detail

inline ClassState mc_leaf(LabelSet s) {
    if (s.empty()) throw ValidationError("mc_leaf: empty label set");
    return {{s}, {1}, {0, 0}};
}

// relabel every class by f, merging collisions; classes mapped to ∅ vanish
inline ClassState mc_map(const ClassState& a, const std::function<LabelSet(LabelSet)>& f) {
    std::vector<LabelSet> target(a.sets.size());
    for (std::size_t c = 0; c < a.sets.size(); ++c) target[c] = f(a.sets[c]);
    auto r = detail::remap(a, target);
    ClassState out{r.sets, r.cnt, {}};
    out.table.assign(detail::table_size(out.cnt), -1);
    for (std::size_t s = 0; s < a.table.size(); ++s) out.table[r.offset[s]] = std::max(out.table[r.offset[s]], a.table[s]);
    return out;
}

inline ClassState mc_relabel(const ClassState& a, Label i, LabelSet S) {
    return mc_map(a, [&](LabelSet L) { return L.relabeled(i, S); });
}

inline ClassState mc_union(const ClassState& a, const ClassState& b) {
    // stack both class lists, then merge equal sets with the identity map
    ClassState both;
    both.sets = a.sets;
    both.sets.insert(both.sets.end(), b.sets.begin(), b.sets.end());
    both.cnt = a.cnt;
    both.cnt.insert(both.cnt.end(), b.cnt.begin(), b.cnt.end());
    // offsets of a-states and b-states against the merged layout
    ClassState out;
    std::vector<LabelSet> all = both.sets;
    std::sort(all.begin(), all.end(), [](LabelSet x, LabelSet y) { return x.bits < y.bits; });
    all.erase(std::unique(all.begin(), all.end()), all.end());
    out.sets = all;
    out.cnt.assign(all.size(), 0);
    auto pos = [&](LabelSet s) {
        return std::lower_bound(all.begin(), all.end(), s, [](LabelSet x, LabelSet y) { return x.bits < y.bits; }) - all.begin();
    };
    for (std::size_t c = 0; c < both.sets.size(); ++c) out.cnt[pos(both.sets[c])] += both.cnt[c];
    auto ns = out.strides();
    auto offsets = [&](const ClassState& x) {
        std::vector<long> off(x.table.size(), 0);
        std::vector<long> digit(x.sets.size(), 0);
        long o = 0;
        for (std::size_t s = 0; s < x.table.size(); ++s) {
            off[s] = o;
            for (std::size_t c = 0; c < digit.size(); ++c) {
                long step = ns[pos(x.sets[c])];
                if (digit[c] < x.cnt[c]) {
                    ++digit[c];
                    o += step;
                    break;
                }
                o -= step * digit[c];
                digit[c] = 0;
            }
        }
        return off;
    };
    auto oa = offsets(a), ob = offsets(b);
    out.table.assign(detail::table_size(out.cnt), -1);
    for (std::size_t s = 0; s < a.table.size(); ++s)
        for (std::size_t t = 0; t < b.table.size(); ++t) {
            long& v = out.table[oa[s] + ob[t]];
            v = std::max(v, a.table[s] + b.table[t]);
        }
    return out;
}

// adds, per state, the crossed edges among the new i–j pairs; returns the
// number of edges the join creates (assuming they are all new)
inline ClassState mc_join(const ClassState& a, Label i, Label j, long* edges_added = nullptr) {
    ClassState out = a;
    std::vector<int> I, J;
    for (std::size_t c = 0; c < a.sets.size(); ++c) {
        bool hi = a.sets[c].has(i), hj = a.sets[c].has(j);
        if (hi && hj) throw JoinPreconditionViolated("mc_join: a class holds both labels");
        if (hi) I.push_back(int(c));
        if (hj) J.push_back(int(c));
    }
    if (edges_added) {
        long e = 0;
        for (int s : I)
            for (int t : J) e += a.cnt[s] * a.cnt[t];
        *edges_added = e;
    }
    if (I.empty() || J.empty()) return out;
    std::vector<long> digit(a.sets.size(), 0);
    for (std::size_t s = 0; s < a.table.size(); ++s) {
        long ci = 0, ni = 0, cj = 0, nj = 0;
        for (int c : I) ci += digit[c], ni += a.cnt[c];
        for (int c : J) cj += digit[c], nj += a.cnt[c];
        // side-1 i-vertices see side-0 j-vertices and vice versa
        out.table[s] += ci * (nj - cj) + (ni - ci) * cj;
        for (std::size_t c = 0; c < digit.size(); ++c) {
            if (digit[c] < a.cnt[c]) {
                ++digit[c];
                break;
            }
            digit[c] = 0;
        }
    }
    return out;
}

struct MaxCutResult {
    long optimum = 0;
    std::optional<bool> answer;  // set when a budget was given
    bool fallback = false;       // redundant join: answered by the oracle
    long edges_counted = 0;      // sum of edges created by joins (DP path only)
    std::size_t max_table = 0;
};

struct MaxCutOptions {
    std::function<void(int node, const ClassState&)> observe;
};

inline MaxCutResult solve_max_cut(const MultiExpr& e, std::optional<long> budget = std::nullopt, const MaxCutOptions& opt = {}) {
    auto report = validate(e);
    if (!report.ok()) throw ValidationError(report.findings[0].message);
    auto ev = evaluate(e);
    MaxCutResult res;
    if (!ev.irredundant()) {
        if (ev.graph.n() > long(kMaxCutCap)) throw RedundantExpressionTooLarge("maxcut: expression has a redundant join and " + std::to_string(ev.graph.n()) + " vertices (oracle limit " + std::to_string(kMaxCutCap) + ")");
        res.fallback = true;
        res.optimum = oracle_max_cut(SimpleGraph::from(ev.graph));
    } else {
        std::vector<ClassState> at(e.size());
        for (int x = 0; x < int(e.size()); ++x) {
            const Node& n = e[x];
            switch (n.op) {
                case Op::Intro: at[x] = mc_leaf(n.s); break;
                case Op::Union: at[x] = mc_union(at[n.a], at[n.b]); break;
                case Op::Join: {
                    long added = 0;
                    at[x] = mc_join(at[n.a], n.i, n.j, &added);
                    res.edges_counted += added;
                    break;
                }
                case Op::Relabel: at[x] = mc_relabel(at[n.a], n.i, n.s); break;
            }
            if (n.op == Op::Union) {
                at[n.a] = {};
                at[n.b] = {};
            } else if (n.op != Op::Intro) {
                at[n.a] = {};
            }
            res.max_table = std::max(res.max_table, at[x].table.size());
            if (opt.observe) opt.observe(x, at[x]);
        }
        res.optimum = at[e.root()].best();
    }
    if (budget) res.answer = res.optimum >= *budget;
    return res;
}

}  // namespace mcw
