#pragma once

// Multicolored Independent Set input and the reduction's parameters.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/label_set.hpp"
#include "mcw/lbgen/gadgets.hpp"

namespace mcw::lb {

struct MisEdge {
    int i1, a, i2, b;  // u_{i1}^a -- u_{i2}^b, parts 1-based, a,b in [0, n'-1]
};

struct MisInstance {
    int kp = 0;  // k'
    int np = 0;  // n'
    std::vector<MisEdge> edges;

    int n() const { return np - 1; }
};

inline void check_mis(const MisInstance& g) {
    if (g.kp < 1) throw ValidationError("mis: need k' >= 1");
    if (g.np < 1) throw ValidationError("mis: need n' >= 1");
    for (const auto& e : g.edges) {
        if (e.i1 < 1 || e.i1 > g.kp || e.i2 < 1 || e.i2 > g.kp) throw ValidationError("mis: part index out of range");
        if (e.i1 == e.i2) throw ValidationError("mis: edge inside a part");
        if (e.a < 0 || e.a >= g.np || e.b < 0 || e.b >= g.np) throw ValidationError("mis: vertex index out of range");
    }
}

// "mis k' n'" then "e i1 a i2 b" lines; '#' or ';' start comments
inline MisInstance read_mis(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    MisInstance g;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.resize(cut);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "mis") {
            if (header) throw ParseError(lineno, 1, "second mis header");
            if (!(ls >> g.kp >> g.np)) throw ParseError(lineno, 1, "mis header needs k' and n'");
            header = true;
        } else if (tag == "e") {
            if (!header) throw ParseError(lineno, 1, "edge before mis header");
            MisEdge e{};
            if (!(ls >> e.i1 >> e.a >> e.i2 >> e.b)) throw ParseError(lineno, 1, "edge needs i1 a i2 b");
            g.edges.push_back(e);
        } else {
            throw ParseError(lineno, 1, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, 1, "trailing token '" + extra + "'");
    }
    if (!header) throw ParseError(lineno, 1, "missing mis header");
    check_mis(g);
    return g;
}

inline long binom(long a, long b) {
    if (b < 0 || b > a) return 0;
    long r = 1;
    for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

// smallest even k with C(k, k/2)/2 >= k'
inline int k_for(int kp) {
    for (int k = 2;; k += 2)
        if (binom(k, k / 2) / 2 >= kp) return k;
}

// Pads with parts that have no edges; any choice there is independent, so the
// answer is unchanged.
inline MisInstance pad(const MisInstance& g) {
    MisInstance out = g;
    out.kp = int(binom(k_for(g.kp), k_for(g.kp) / 2) / 2);
    return out;
}

// brute force: one vertex per part, pairwise non-adjacent
inline bool has_multicolored_is(const MisInstance& g) {
    std::vector<int> pick(g.kp, 0);
    while (true) {
        bool ok = true;
        for (const auto& e : g.edges)
            if (pick[e.i1 - 1] == e.a && pick[e.i2 - 1] == e.b) ok = false;
        if (ok) return true;
        int p = 0;
        while (p < g.kp && ++pick[p] == g.np) pick[p++] = 0;
        if (p == g.kp) return false;
    }
}

struct Overrides {
    std::optional<long> C, D;
};

struct Params {
    MisInstance mis;  // padded
    int kp = 0, np = 0, n = 0, m = 0, k = 0;
    long C = 0, D = 0;
    long L1 = 0, L2 = 0, L = 0, N = 0;
    long b = 0;
    std::vector<long> budget_j;
    std::vector<LabelSet> family;  // S in ascending bitmask order, all contain 1; phi(i) = family[i-1]
    bool c_large = true;           // C satisfies C > D^2 * C(2n, 2)

    LabelSet complement(LabelSet S) const { return LabelSet(((1ULL << k) - 1) & ~S.bits); }
    // all k/2-subsets: the family and the complements
    std::vector<LabelSet> all_sets() const {
        std::vector<LabelSet> out = family;
        for (auto S : family) out.push_back(complement(S));
        return out;
    }
};

// the one-indexed endpoints of copy j and which z-vertices exist
struct CopyShape {
    LabelSet S1, S2;
    int alpha, beta;
    bool z1lt, z1gt, z2lt, z2gt;
    int zcount() const { return z1lt + z1gt + z2lt + z2gt; }
};

inline CopyShape copy_shape(const Params& p, const MisEdge& e) {
    CopyShape s;
    s.S1 = p.family[e.i1 - 1];
    s.S2 = p.family[e.i2 - 1];
    s.alpha = e.a;
    s.beta = e.b;
    s.z1lt = e.a != 0;
    s.z1gt = e.a != p.n;
    s.z2lt = e.b != 0;
    s.z2gt = e.b != p.n;
    return s;
}

// the H-if gadgets of one copy, in construction order: z1lt, z1gt, z2lt,
// z2gt (those that exist), then the one over Z
struct GadgetPlan {
    std::string kind;
    HifShape shape;
};

inline std::vector<GadgetPlan> copy_gadgets(const Params& p, const CopyShape& s) {
    std::vector<GadgetPlan> out;
    auto add = [&](const char* kind, int alpha, int t) { out.push_back({kind, HifShape{p.n, p.D, p.C, alpha, t}}); };
    if (s.z1lt) add("z1lt", s.alpha - 1, p.n);
    if (s.z1gt) add("z1gt", p.n - (s.alpha + 1), p.n);
    if (s.z2lt) add("z2lt", s.beta - 1, p.n);
    if (s.z2gt) add("z2gt", p.n - (s.beta + 1), p.n);
    add("Z", s.zcount() - 1, s.zcount());
    return out;
}

inline Params compute_params(const MisInstance& raw, const Overrides& ov = {}) {
    check_mis(raw);
    if (raw.np < 2) throw ValidationError("lbgen: need n' > 1");
    if (raw.edges.empty()) throw ValidationError("lbgen: need at least one edge (m >= 1)");
    MisInstance g = pad(raw);
    Params p;
    p.mis = g;
    p.kp = g.kp;
    p.np = g.np;
    p.n = g.n();
    p.m = int(g.edges.size());
    p.k = k_for(g.kp);
    if (3 * p.k + 32 > kMaxLabel) throw TooLarge("lbgen: k' = " + std::to_string(raw.kp) + " needs 3k+32 > 64 labels");
    for (std::uint64_t mask = 0; mask < (1ULL << p.k); ++mask)
        if (std::popcount(mask) == p.k / 2 && (mask & 1)) p.family.push_back(LabelSet(mask));
    long n = p.n, kp = p.kp, m = p.m;
    p.D = ov.D.value_or(m * (4 * kp * binom(n, 2) + 2 * kp * (2 * kp - 1) * n * n));
    p.C = ov.C.value_or(p.D * p.D * binom(2 * n, 2) + 1);
    p.c_large = p.C > p.D * p.D * binom(2 * n, 2);
    p.L1 = kp * (2 * kp - 2) * n * n;
    p.L2 = 2 * kp * n * n;
    p.L = p.L1 + p.L2;
    p.N = 1 + m * kp * n + (m - 1) * 2 * kp * n;
    long total = 0;
    for (const auto& e : g.edges) {
        long bj = 0;
        for (const auto& g : copy_gadgets(p, copy_shape(p, e))) bj += mcut_Hif(g.shape);
        p.budget_j.push_back(bj);
        total += bj;
    }
    p.b = p.N * mcut_Fprime(p.C) + mcut_F(p.C) + total + m * p.L;
    return p;
}

}  // namespace mcw::lb
