#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/expr.hpp"

namespace mcw {

struct LabeledGraph {
    std::vector<std::string> ids;
    std::vector<LabelSet> lab;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted
    int k_max = 0;

    std::size_t n() const { return ids.size(); }
    std::size_t m() const { return edges.size(); }
};

struct NodeAnnotation {
    long nv = 0;  // |V_x|
    long ne = 0;  // |E_x|
    bool irredundant = true;  // Join only
};

struct Finding {
    enum Kind { DuplicateId, JoinPrecondition, LabelRange } kind;
    int node;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;
    bool ok() const { return findings.empty(); }
};

struct Evaluation {
    LabeledGraph graph;
    std::vector<NodeAnnotation> ann;
    bool irredundant() const {
        return std::all_of(ann.begin(), ann.end(), [](const NodeAnnotation& a) { return a.irredundant; });
    }
};

namespace detail {

// vertices of one subexpression grouped by the labels they hold
struct Part {
    std::vector<std::pair<Label, std::vector<int>>> buckets;

    std::vector<int>* find(Label l) {
        for (auto& [k, v] : buckets)
            if (k == l) return &v;
        return nullptr;
    }
    std::vector<int>& get(Label l) {
        if (auto* p = find(l)) return *p;
        buckets.push_back({l, {}});
        return buckets.back().second;
    }
    void drop(Label l) {
        for (std::size_t x = 0; x < buckets.size(); ++x)
            if (buckets[x].first == l) {
                buckets[x] = std::move(buckets.back());
                buckets.pop_back();
                return;
            }
    }
};

inline std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t(u) << 32) | std::uint32_t(v);
}

// shared core of evaluate/validate; violations go to report when given, else throw
inline Evaluation run_eval(const MultiExpr& e, ValidationReport* report) {
    Evaluation out;
    LabeledGraph& g = out.graph;
    g.k_max = e.k_max;
    g.ids = e.ids;
    g.lab.assign(e.ids.size(), LabelSet{});
    out.ann.assign(e.size(), {});

    std::vector<Part> parts(e.size());
    std::unordered_set<std::uint64_t> edges;
    std::vector<std::pair<int, int>> edge_list;

    for (int x = 0; x < int(e.size()); ++x) {
        const Node& n = e[x];
        NodeAnnotation& an = out.ann[x];
        Part& p = parts[x];
        switch (n.op) {
            case Op::Intro: {
                g.lab[n.vid] = n.s;
                n.s.for_each([&](Label l) { p.get(l).push_back(n.vid); });
                an.nv = 1;
                break;
            }
            case Op::Union: {
                int a = n.a, b = n.b;
                if (out.ann[a].nv < out.ann[b].nv) std::swap(a, b);
                p = std::move(parts[a]);
                for (auto& [l, vs] : parts[b].buckets) {
                    auto& dst = p.get(l);
                    dst.insert(dst.end(), vs.begin(), vs.end());
                }
                parts[b] = Part{};
                an.nv = out.ann[a].nv + out.ann[b].nv;
                an.ne = out.ann[a].ne + out.ann[b].ne;
                break;
            }
            case Op::Join: {
                p = std::move(parts[n.a]);
                an.nv = out.ann[n.a].nv;
                an.ne = out.ann[n.a].ne;
                auto* bi = p.find(n.i);
                auto* bj = p.find(n.j);
                if (!bi || !bj) break;
                for (int u : *bi) {
                    if (g.lab[u].has(n.j)) {
                        std::string msg = "join " + std::to_string(n.i) + " " + std::to_string(n.j) + ": vertex " + g.ids[u] + " holds both labels";
                        if (!report) throw JoinPreconditionViolated(msg);
                        report->findings.push_back({Finding::JoinPrecondition, x, msg});
                    }
                }
                for (int u : *bi)
                    for (int v : *bj) {
                        if (u == v) continue;
                        if (edges.insert(edge_key(u, v)).second) {
                            edge_list.push_back({std::min(u, v), std::max(u, v)});
                            ++an.ne;
                        } else {
                            an.irredundant = false;
                        }
                    }
                break;
            }
            case Op::Relabel: {
                p = std::move(parts[n.a]);
                an.nv = out.ann[n.a].nv;
                an.ne = out.ann[n.a].ne;
                auto* bi = p.find(n.i);
                if (!bi || n.s == LabelSet::single(n.i)) break;
                std::vector<int> holders = *bi;
                for (int v : holders) {
                    LabelSet before = g.lab[v];
                    g.lab[v] = before.relabeled(n.i, n.s);
                    n.s.minus(before).for_each([&](Label l) { p.get(l).push_back(v); });
                }
                if (!n.s.has(n.i)) p.drop(n.i);
                break;
            }
        }
        if (n.op != Op::Intro) {
            // children are dead now
            parts[n.a] = Part{};
        }
    }
    std::sort(edge_list.begin(), edge_list.end());
    g.edges = std::move(edge_list);
    return out;
}

}  // namespace detail

inline Evaluation evaluate(const MultiExpr& e) { return detail::run_eval(e, nullptr); }

inline ValidationReport validate(const MultiExpr& e) {
    ValidationReport r;
    std::unordered_set<std::string> seen;
    for (int x = 0; x < int(e.size()); ++x) {
        const Node& n = e[x];
        if (n.op == Op::Intro && !seen.insert(e.id_of(x)).second)
            r.findings.push_back({Finding::DuplicateId, x, "duplicate vertex id " + e.id_of(x)});
        Label m = std::max({n.i, n.j, n.s.max()});
        if (m > e.k_max) r.findings.push_back({Finding::LabelRange, x, "label " + std::to_string(m) + " exceeds k=" + std::to_string(e.k_max)});
    }
    detail::run_eval(e, &r);
    return r;
}

}  // namespace mcw
