#pragma once

#include <vector>

#include "mcw/expr.hpp"

namespace mcw {

// Rewrites so that every Intro has one label and every Relabel is ρ_{i→∅} or
// ρ_{i→{i,j}}: ρ_{i→S} becomes add(i,j) for each j∈S∖{i} ascending, then
// forget(i) when i∉S. No fresh labels are needed.
inline MultiExpr normalize(const MultiExpr& e) {
    ExprBuilder b;
    b.reserve(e.size() * 2);
    std::vector<int> map(e.size());
    for (int x = 0; x < int(e.size()); ++x) {
        const Node& n = e[x];
        int r = -1;
        switch (n.op) {
            case Op::Intro: {
                Label first = n.s.min();
                r = b.intro(e.id_of(x), LabelSet::single(first));
                LabelSet rest = n.s;
                rest.remove(first);
                rest.for_each([&](Label j) { r = b.add_label(first, j, r); });
                break;
            }
            case Op::Union: r = b.unite(map[n.a], map[n.b]); break;
            case Op::Join: r = b.join(n.i, n.j, map[n.a]); break;
            case Op::Relabel: {
                r = map[n.a];
                LabelSet extra = n.s;
                extra.remove(n.i);
                extra.for_each([&](Label j) { r = b.add_label(n.i, j, r); });
                if (!n.s.has(n.i)) r = b.forget(n.i, r);
                break;
            }
        }
        map[x] = r;
    }
    return b.finish(map[e.root()], e.k_max);
}

// every Relabel is forget or add-one-label, every Intro single-label
inline bool is_normalized(const MultiExpr& e) {
    for (const Node& n : e.nodes) {
        if (n.op == Op::Intro && n.s.size() != 1) return false;
        if (n.op == Op::Relabel && !(n.s.empty() || (n.s.size() == 2 && n.s.has(n.i)))) return false;
    }
    return true;
}

}  // namespace mcw
