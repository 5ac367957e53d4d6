#pragma once

// Multi-k-expressions stored as an arena: children always sit at lower indices
// than their parent and the root is the last node, so a forward scan is a
// bottom-up traversal. Everything that walks an expression is iterative; the
// lower-bound expressions are ~10^6 nodes deep.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/label_set.hpp"

namespace mcw {

enum class Op : std::uint8_t { Intro, Union, Join, Relabel };

struct Node {
    Op op = Op::Intro;
    int a = -1, b = -1;  // children (b only for Union)
    Label i = 0, j = 0;  // Join i j / Relabel i
    LabelSet s;          // Intro labels / Relabel target
    int vid = -1;        // Intro: index into MultiExpr::ids
};

class MultiExpr {
public:
    std::vector<Node> nodes;
    std::vector<std::string> ids;  // one per Intro, in node order
    int k_max = 0;

    int root() const { return int(nodes.size()) - 1; }
    std::size_t size() const { return nodes.size(); }
    const Node& operator[](int x) const { return nodes[x]; }
    const std::string& id_of(int x) const { return ids[nodes[x].vid]; }
    std::size_t vertex_count() const { return ids.size(); }

    Label max_label_used() const {
        Label m = 0;
        for (const Node& n : nodes) {
            m = std::max({m, n.i, n.j, n.s.max()});
        }
        return m;
    }
};

// structural equality (same tree shape, ops, labels, ids, k_max); node order may differ
inline bool structurally_equal(const MultiExpr& x, const MultiExpr& y) {
    if (x.k_max != y.k_max || x.size() != y.size()) return false;
    if (x.size() == 0) return true;
    std::vector<std::pair<int, int>> st{{x.root(), y.root()}};
    while (!st.empty()) {
        auto [p, q] = st.back();
        st.pop_back();
        const Node& a = x[p];
        const Node& b = y[q];
        if (a.op != b.op || a.i != b.i || a.j != b.j || a.s != b.s) return false;
        switch (a.op) {
            case Op::Intro:
                if (x.id_of(p) != y.id_of(q)) return false;
                break;
            case Op::Union:
                st.push_back({a.b, b.b});
                [[fallthrough]];
            default:
                st.push_back({a.a, b.a});
        }
    }
    return true;
}

inline void check_label(Label l) {
    if (l < 1 || l > kMaxLabel) throw ValidationError("label " + std::to_string(l) + " outside 1..64");
}

class ExprBuilder {
public:
    int intro(std::string id, LabelSet ls) {
        if (ls.empty()) throw ValidationError("intro " + id + " needs at least one label");
        Node n;
        n.op = Op::Intro;
        n.s = ls;
        n.vid = int(e_.ids.size());
        e_.ids.push_back(std::move(id));
        return push(n);
    }
    int unite(int a, int b) {
        Node n;
        n.op = Op::Union;
        n.a = take(a);
        n.b = take(b);
        return push(n);
    }
    int join(Label i, Label j, int c) {
        check_label(i);
        check_label(j);
        if (i == j) throw ValidationError("join " + std::to_string(i) + " " + std::to_string(j) + ": labels must differ");
        Node n;
        n.op = Op::Join;
        n.i = i;
        n.j = j;
        n.a = take(c);
        return push(n);
    }
    int relabel(Label i, LabelSet s, int c) {
        check_label(i);
        Node n;
        n.op = Op::Relabel;
        n.i = i;
        n.s = s;
        n.a = take(c);
        return push(n);
    }
    int forget(Label i, int c) { return relabel(i, LabelSet{}, c); }
    int add_label(Label i, Label j, int c) { return relabel(i, LabelSet{i, j}, c); }

    std::size_t size() const { return e_.nodes.size(); }
    void reserve(std::size_t n) {
        e_.nodes.reserve(n);
        used_.reserve(n);
    }

    // k_max == 0 infers the maximum label mentioned
    MultiExpr finish(int root, int k_max = 0) {
        if (e_.nodes.empty()) throw ValidationError("empty expression");
        if (root != e_.root()) throw ValidationError("root must be the last node built");
        if (open_ != 1) throw ValidationError("expression has dangling subtrees");
        Label m = e_.max_label_used();
        if (k_max == 0) k_max = m;
        if (k_max < 1 || k_max > kMaxLabel) throw ValidationError("k out of range");
        if (m > k_max) throw UnknownLabel("label " + std::to_string(m) + " exceeds declared k=" + std::to_string(k_max));
        e_.k_max = k_max;
        used_.clear();
        open_ = 0;
        return std::exchange(e_, MultiExpr{});
    }

private:
    int push(const Node& n) {
        for (int l : n.s.labels()) check_label(l);
        e_.nodes.push_back(n);
        used_.push_back(false);
        ++open_;
        return e_.root();
    }
    int take(int x) {
        if (x < 0 || x >= int(e_.nodes.size())) throw ValidationError("bad node reference");
        if (used_[x]) throw ValidationError("subexpression used twice");
        used_[x] = true;
        --open_;
        return x;
    }

    MultiExpr e_;
    std::vector<bool> used_;
    long open_ = 0;  // nodes without a parent
};

// compact single-line canonical form
inline std::string serialize(const MultiExpr& e) {
    std::string out;
    bool wrap = e.k_max != e.max_label_used();
    if (wrap) out += "(mcw " + std::to_string(e.k_max) + " ";
    // (node, stage): stage 0 = open, 1 = between children, 2 = close
    std::vector<std::pair<int, int>> st{{e.root(), 0}};
    while (!st.empty()) {
        auto& [x, stage] = st.back();
        const Node& n = e[x];
        if (n.op == Op::Intro) {
            out += "(intro " + e.id_of(x) + " " + n.s.str() + ")";
            st.pop_back();
            if (!st.empty()) out += ' ';
            continue;
        }
        if (stage == 0) {
            switch (n.op) {
                case Op::Union: out += "(union "; break;
                case Op::Join: out += "(join " + std::to_string(n.i) + " " + std::to_string(n.j) + " "; break;
                default: out += "(relabel " + std::to_string(n.i) + " " + n.s.str() + " "; break;
            }
            stage = 1;
            st.push_back({n.a, 0});
        } else if (stage == 1 && n.op == Op::Union) {
            stage = 2;
            st.push_back({n.b, 0});
        } else {
            if (out.back() == ' ') out.pop_back();
            out += ')';
            st.pop_back();
            if (!st.empty()) out += ' ';
        }
    }
    if (wrap) out += ')';
    return out;
}

// literal check: every Union has an Intro child
inline bool is_linear(const MultiExpr& e) {
    for (const Node& n : e.nodes)
        if (n.op == Op::Union && e[n.a].op != Op::Intro && e[n.b].op != Op::Intro) return false;
    return true;
}

}  // namespace mcw
