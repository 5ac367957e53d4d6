#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/evaluate.hpp"

namespace mcw {

struct SimpleGraph {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> edges;  // u < v

    int n() const { return int(ids.size()); }
    std::size_t m() const { return edges.size(); }

    int add_vertex(std::string id) {
        ids.push_back(std::move(id));
        return n() - 1;
    }
    void add_edge(int u, int v) {
        if (u == v) throw ValidationError("self-loop at " + ids[u]);
        edges.push_back({std::min(u, v), std::max(u, v)});
    }

    static SimpleGraph from(const LabeledGraph& g) { return {g.ids, g.edges}; }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(n());
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }

    // only for n <= 32
    std::vector<std::uint32_t> adj_masks() const {
        std::vector<std::uint32_t> adj(n(), 0);
        for (auto [u, v] : edges) {
            adj[u] |= 1u << v;
            adj[v] |= 1u << u;
        }
        return adj;
    }

    // sorted, deduplicated; throws on parallel edges
    void canonicalize() {
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw ValidationError("parallel edge");
    }
};

inline SimpleGraph make_graph(int n, const std::vector<std::pair<int, int>>& es) {
    SimpleGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
    for (auto [u, v] : es) g.add_edge(u, v);
    return g;
}

// ---- edge-list text: g <n> <m> <k> / v <id> <label>* / e <id> <id>

inline std::string write_graph_text(const LabeledGraph& g) {
    std::string s = "g " + std::to_string(g.n()) + " " + std::to_string(g.m()) + " " + std::to_string(g.k_max) + "\n";
    for (std::size_t v = 0; v < g.n(); ++v) {
        s += "v " + g.ids[v];
        g.lab[v].for_each([&](Label l) { s += " " + std::to_string(l); });
        s += "\n";
    }
    for (auto [u, v] : g.edges) s += "e " + g.ids[u] + " " + g.ids[v] + "\n";
    return s;
}

inline std::string write_graph_text(const SimpleGraph& g) {
    LabeledGraph lg;
    lg.ids = g.ids;
    lg.lab.assign(g.n(), LabelSet{});
    lg.edges = g.edges;
    return write_graph_text(lg);
}

inline LabeledGraph read_graph_text(const std::string& text) {
    LabeledGraph g;
    std::unordered_map<std::string, int> index;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long want_n = -1, want_m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto c = line.find(';'); c != std::string::npos) line.resize(c);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "g") {
            if (!(ls >> want_n >> want_m >> g.k_max)) throw ParseError(lineno, 1, "bad header");
        } else if (tag == "v") {
            std::string id;
            if (!(ls >> id)) throw ParseError(lineno, 1, "vertex id expected");
            if (!index.emplace(id, int(g.ids.size())).second) throw ParseError(lineno, 1, "duplicate vertex " + id);
            LabelSet s;
            int l;
            while (ls >> l) {
                if (l < 1 || l > kMaxLabel) throw ParseError(lineno, 1, "label out of range");
                s.add(l);
            }
            g.ids.push_back(id);
            g.lab.push_back(s);
        } else if (tag == "e") {
            std::string a, b;
            if (!(ls >> a >> b)) throw ParseError(lineno, 1, "edge needs two ids");
            auto ia = index.find(a), ib = index.find(b);
            if (ia == index.end() || ib == index.end()) throw ParseError(lineno, 1, "edge references unknown vertex");
            if (ia->second == ib->second) throw ParseError(lineno, 1, "self-loop");
            g.edges.push_back({std::min(ia->second, ib->second), std::max(ia->second, ib->second)});
        } else {
            throw ParseError(lineno, 1, "unknown line tag '" + tag + "'");
        }
    }
    if (want_n < 0) throw ParseError(1, 1, "missing 'g' header");
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) throw ParseError(lineno, 1, "parallel edge");
    if (want_n != long(g.n()) || want_m != long(g.m())) throw ParseError(1, 1, "header counts do not match body");
    return g;
}

// same vertex ids and same edges (as id pairs); vertex order may differ
inline bool equal_by_id(const std::vector<std::string>& ids_a, const std::vector<std::pair<int, int>>& ea,
                        const std::vector<std::string>& ids_b, const std::vector<std::pair<int, int>>& eb) {
    if (ids_a.size() != ids_b.size() || ea.size() != eb.size()) return false;
    std::unordered_map<std::string, int> pos;
    pos.reserve(ids_b.size());
    for (int v = 0; v < int(ids_b.size()); ++v) pos.emplace(ids_b[v], v);
    if (pos.size() != ids_b.size()) return false;
    std::vector<int> to_b(ids_a.size());
    for (int v = 0; v < int(ids_a.size()); ++v) {
        auto it = pos.find(ids_a[v]);
        if (it == pos.end()) return false;
        to_b[v] = it->second;
    }
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(ea.size());
    for (auto [u, v] : ea) mapped.push_back({std::min(to_b[u], to_b[v]), std::max(to_b[u], to_b[v])});
    std::sort(mapped.begin(), mapped.end());
    std::vector<std::pair<int, int>> sb = eb;
    std::sort(sb.begin(), sb.end());
    return mapped == sb;
}

inline bool equal_by_id(const SimpleGraph& a, const SimpleGraph& b) { return equal_by_id(a.ids, a.edges, b.ids, b.edges); }

// also compares final label sets
inline bool equal_labeled(const LabeledGraph& a, const LabeledGraph& b) {
    if (!equal_by_id(a.ids, a.edges, b.ids, b.edges)) return false;
    std::unordered_map<std::string, LabelSet> la;
    for (std::size_t v = 0; v < a.n(); ++v) la[a.ids[v]] = a.lab[v];
    for (std::size_t v = 0; v < b.n(); ++v)
        if (la[b.ids[v]] != b.lab[v]) return false;
    return true;
}

}  // namespace mcw
