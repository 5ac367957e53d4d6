#pragma once

// The Max Cut instance (G*, b) built directly as a graph. The expression
// builder uses the same names, so the two can be compared by vertex id.

#include <string>
#include <vector>

#include "mcw/graph.hpp"
#include "mcw/lbgen/gadgets.hpp"
#include "mcw/lbgen/params.hpp"

namespace mcw::lb {

inline std::string a_name(LabelSet S, int i, int j) { return "aS" + std::to_string(S.bits) + "i" + std::to_string(i) + "j" + std::to_string(j); }
inline std::string b_name(LabelSet S, int i, int j) { return "bS" + std::to_string(S.bits) + "i" + std::to_string(i) + "j" + std::to_string(j); }
inline std::string z_name(const std::string& kind, int j) { return kind + "j" + std::to_string(j); }
inline std::string gadget_name(const std::string& kind, int j) { return "h" + kind + "j" + std::to_string(j); }

// the entry points x_1..x_t of a copy's gadget
inline std::vector<std::string> gadget_entries(const Params& p, const CopyShape& s, const std::string& kind, int j) {
    std::vector<std::string> x;
    if (kind == "Z") {
        for (const auto& g : copy_gadgets(p, s))
            if (g.kind != "Z") x.push_back(z_name(g.kind, j));
        return x;
    }
    LabelSet S = kind == "z1lt" ? s.S1 : kind == "z1gt" ? p.complement(s.S1) : kind == "z2lt" ? s.S2 : p.complement(s.S2);
    for (int i = 1; i <= p.n; ++i) x.push_back(a_name(S, i, j));
    return x;
}

// coarse provenance, read off the naming scheme
inline std::string role_of(const std::string& name) {
    if (name == "d1" || name == "d2" || name == "d2p") return "anchor";
    if (name.rfind("f_", 0) == 0) return "F";
    if (name.rfind("g_", 0) == 0) return "Fprime";
    if (name.rfind("aS", 0) == 0) return "A";
    if (name.rfind("bS", 0) == 0) return "B";
    if (name.find(".p.") != std::string::npos) return "column";
    if (name.find(".r.") != std::string::npos) return "r";
    return "z";
}

struct LbInstance {
    Params params;
    SimpleGraph graph;
    long b = 0;

    std::vector<std::string> roles() const {
        std::vector<std::string> out;
        out.reserve(graph.ids.size());
        for (const auto& id : graph.ids) out.push_back(role_of(id));
        return out;
    }
};

inline LbInstance build_instance(const MisInstance& mis, const Overrides& ov = {}, std::size_t cap = kDefaultVertexCap) {
    Params p = compute_params(mis, ov);
    NamedGraph g(cap);
    const long C = p.C;
    const int n = p.n, m = p.m;
    auto sets = p.all_sets();

    g.add("d1");
    g.add("d2");
    g.add("d2p");
    make_Fprime(g, "d1", "d2", C);
    make_F(g, "d2p", "d2", C);

    for (int j = 1; j <= m; ++j) {
        for (auto S : sets)
            for (int i = 1; i <= n; ++i) {
                g.add(a_name(S, i, j));
                g.add(b_name(S, i, j));
            }
        for (auto S : sets)
            for (int i = 1; i <= n; ++i)
                for (int i2 = 1; i2 < i; ++i2) {
                    g.edge(a_name(S, i, j), a_name(S, i2, j));
                    g.edge(b_name(S, i, j), b_name(S, i2, j));
                }
        for (auto S : sets)
            for (auto T : sets) {
                if (T == p.complement(S)) continue;
                for (int i = 1; i <= n; ++i)
                    for (int i2 = 1; i2 <= n; ++i2) g.edge(a_name(S, i, j), b_name(T, i2, j));
            }
        for (auto S : p.family)
            for (int i = 1; i <= n; ++i) make_Fprime(g, a_name(S, i, j), a_name(p.complement(S), i, j), C);

        CopyShape s = copy_shape(p, p.mis.edges[j - 1]);
        for (const auto& z : gadget_entries(p, s, "Z", j)) g.add(z);
        for (const auto& plan : copy_gadgets(p, s)) {
            std::string z = plan.kind == "Z" ? "d2p" : z_name(plan.kind, j);
            make_Hif(g, gadget_name(plan.kind, j), plan.shape, gadget_entries(p, s, plan.kind, j), "d2", z);
        }
    }
    for (int j = 1; j < m; ++j)
        for (auto S : sets)
            for (int i = 1; i <= n; ++i) make_Fprime(g, b_name(S, i, j), a_name(S, i, j + 1), C);

    LbInstance out;
    out.params = p;
    out.b = p.b;
    out.graph = g.take();
    return out;
}

}  // namespace mcw::lb
