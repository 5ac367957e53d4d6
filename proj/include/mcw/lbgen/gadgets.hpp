#pragma once

// Max Cut gadgets F, F', T, H and H-if, built into a graph with named
// vertices. Internal vertex names are derived from the endpoints so that the
// graph builder and the expression builder agree on every id.

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/graph.hpp"

namespace mcw::lb {

inline constexpr std::size_t kDefaultVertexCap = 4'000'000;

// ---- names. Base names never contain '_', so '_' separates endpoints.

inline std::string f_name(const std::string& u, const std::string& v, long c) { return "f_" + u + "_" + v + "." + std::to_string(c); }
// path u - l - r - v
inline std::string fp_name(const std::string& u, const std::string& v, long c, char side) {
    return "g_" + u + "_" + v + "." + std::to_string(c) + "." + side;
}
inline std::string col_name(const std::string& gadget, int col, long q) { return gadget + ".p." + std::to_string(col) + "." + std::to_string(q); }
inline std::string r_name(const std::string& gadget, int t) { return gadget + ".r." + std::to_string(t); }

class NamedGraph {
public:
    explicit NamedGraph(std::size_t cap = kDefaultVertexCap) : cap_(cap) {}

    int add(const std::string& name) {
        if (g_.ids.size() >= cap_) throw InstanceTooLarge("lbgen: more than " + std::to_string(cap_) + " vertices");
        auto [it, fresh] = index_.try_emplace(name, g_.n());
        if (!fresh) throw ValidationError("lbgen: vertex " + name + " created twice");
        return g_.add_vertex(name);
    }
    int at(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw ValidationError("lbgen: unknown vertex " + name);
        return it->second;
    }
    bool has(const std::string& name) const { return index_.count(name) > 0; }
    void edge(int u, int v) { g_.add_edge(u, v); }
    void edge(const std::string& u, const std::string& v) { edge(at(u), at(v)); }
    const SimpleGraph& graph() const { return g_; }
    SimpleGraph take() { return std::move(g_); }

private:
    std::size_t cap_;
    SimpleGraph g_;
    std::unordered_map<std::string, int> index_;
};

// C paths u - x - v
inline void make_F(NamedGraph& g, const std::string& u, const std::string& v, long C) {
    for (long c = 1; c <= C; ++c) {
        int x = g.add(f_name(u, v, c));
        g.edge(g.at(u), x);
        g.edge(x, g.at(v));
    }
}

// C paths u - l - r - v
inline void make_Fprime(NamedGraph& g, const std::string& u, const std::string& v, long C) {
    for (long c = 1; c <= C; ++c) {
        int l = g.add(fp_name(u, v, c, 'l')), r = g.add(fp_name(u, v, c, 'r'));
        g.edge(g.at(u), l);
        g.edge(l, r);
        g.edge(r, g.at(v));
    }
}

// three F' gadgets; orientation p-r, z-p, r-z matches the expression order
inline void make_T(NamedGraph& g, const std::string& p, const std::string& r, const std::string& z, long C) {
    make_Fprime(g, p, r, C);
    make_Fprime(g, z, p, C);
    make_Fprime(g, r, z, C);
}

struct HifShape {
    int n = 1;
    long D = 1;
    long C = 1;
    int alpha = 0;
    int t = 1;

    int t_columns() const { return std::max(n - alpha, 0); }
    int free_columns() const { return 2 * n - t - t_columns(); }
};

// the column indices that are neither attached to an entry nor to a T-gadget
inline std::vector<int> free_column_ids(const HifShape& s) {
    std::vector<int> out;
    for (int c = 1; c <= 2 * s.n; ++c) {
        bool attached = c <= s.t;
        bool tcol = c > s.n && c <= s.n + s.t_columns();
        if (!attached && !tcol) out.push_back(c);
    }
    return out;
}

// 2n columns of D vertices, F-gadgets along each column, complete 2n-partite
inline void make_H(NamedGraph& g, const std::string& gadget, int n, long D, long C) {
    for (int c = 1; c <= 2 * n; ++c) {
        for (long q = 1; q <= D; ++q) g.add(col_name(gadget, c, q));
        for (long q = 1; q < D; ++q) make_F(g, col_name(gadget, c, q), col_name(gadget, c, q + 1), C);
    }
    for (int c = 1; c <= 2 * n; ++c)
        for (int c2 = c + 1; c2 <= 2 * n; ++c2)
            for (long q = 1; q <= D; ++q)
                for (long q2 = 1; q2 <= D; ++q2) g.edge(col_name(gadget, c, q), col_name(gadget, c2, q2));
}

// H-if_{alpha,t}(x_1..x_t, y, z); entry points must already exist
inline void make_Hif(NamedGraph& g, const std::string& gadget, const HifShape& s, const std::vector<std::string>& x, const std::string& y,
                     const std::string& z) {
    if (int(x.size()) != s.t) throw ValidationError("make_Hif: need t entries");
    if (s.t < 1 || s.t > 2 * s.n || s.alpha < 0) throw ValidationError("make_Hif: bad alpha/t");
    make_H(g, gadget, s.n, s.D, s.C);
    for (int i = 1; i <= s.t; ++i) make_F(g, col_name(gadget, i, s.D), x[i - 1], s.C);
    for (int i = 1; i <= s.t_columns(); ++i) {
        std::string r = r_name(gadget, i);
        g.add(r);
        make_F(g, r, y, s.C);
        make_T(g, col_name(gadget, s.n + i, s.D), r, z, s.C);
    }
}

// ---- closed forms for mcut of each gadget

inline long mcut_F(long C) { return 2 * C; }
inline long mcut_Fprime(long C) { return 3 * C; }
inline long mcut_T(long C) { return 3 * mcut_Fprime(C) - C; }
inline long mcut_H(int n, long D, long C) { return 2L * n * (D - 1) * mcut_F(C) + long(n) * n * D * D; }
inline long mcut_Hif(const HifShape& s) {
    return mcut_H(s.n, s.D, s.C) + (s.t + s.t_columns()) * mcut_F(s.C) + s.t_columns() * mcut_T(s.C);
}

}  // namespace mcw::lb
