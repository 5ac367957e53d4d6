#pragma once

// Exhaustive checks of the gadget properties on small parameters. F and F' paths
// are degree-2 chains, so the cut is maximized over the remaining "core"
// vertices only: a chain of L edges between u and v contributes L or L-1
// depending on whether the parity of L matches the sides of u and v.
// H-if shapes with n < t <= 2n are audited too (the construction uses them)
// but only t <= n is judged.

#include <algorithm>
#include <bit>
#include <limits>
#include <functional>
#include <string>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/graph.hpp"
#include "mcw/lbgen/gadgets.hpp"
#include "mcw/lbgen/instance.hpp"
#include "mcw/lbgen/params.hpp"

namespace mcw::lb {

inline constexpr int kAuditCoreCap = 26;

// max cut per assignment of the core vertices
class CoreCut {
public:
    CoreCut(const SimpleGraph& g, const std::vector<int>& keep) {
        int n = g.n();
        auto adj = g.adjacency();
        std::vector<char> is_core(n, 0), seen(n, 0);
        for (int v = 0; v < n; ++v) is_core[v] = adj[v].size() != 2;
        for (int v : keep) is_core[v] = 1;
        where_.assign(n, -1);
        auto make_core = [&](int v) {
            is_core[v] = 1;
            where_[v] = int(core_.size());
            core_.push_back(v);
        };
        for (int v = 0; v < n; ++v)
            if (is_core[v]) make_core(v);
        struct Chain {
            int u, v;
            long len;
        };
        std::vector<Chain> chains;
        auto walk_from = [&](int u) {
            for (int first : adj[u]) {
                if (is_core[first]) {
                    if (u < first) chains.push_back({u, first, 1});
                    continue;
                }
                if (seen[first]) continue;
                int prev = u, cur = first;
                long len = 1;
                while (!is_core[cur]) {
                    seen[cur] = 1;
                    int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                    prev = cur;
                    cur = next;
                    ++len;
                }
                chains.push_back({u, cur, len});
            }
        };
        for (std::size_t c = 0; c < core_.size(); ++c) walk_from(core_[c]);
        // cycles with no core vertex on them
        for (int v = 0; v < n; ++v)
            if (!is_core[v] && !seen[v]) {
                make_core(v);
                walk_from(v);
            }
        int c = int(core_.size());
        if (c > kAuditCoreCap) throw TooLarge("audit: " + std::to_string(c) + " core vertices (cap " + std::to_string(kAuditCoreCap) + ")");

        long base = 0;
        struct Pair {
            int a, b;
            long same, diff;
        };
        std::vector<Pair> pairs;
        for (const auto& ch : chains) {
            long even = ch.len % 2 == 0 ? ch.len : ch.len - 1;  // best with equal end sides
            long odd = ch.len % 2 == 1 ? ch.len : ch.len - 1;   // best with different end sides
            if (ch.u == ch.v) {
                base += even;
                continue;
            }
            pairs.push_back({where_[ch.u], where_[ch.v], even, odd});
        }
        values_.assign(std::size_t(1) << c, base);
        for (std::size_t mask = 0; mask < values_.size(); ++mask)
            for (const auto& p : pairs) values_[mask] += ((mask >> p.a) & 1) != ((mask >> p.b) & 1) ? p.diff : p.same;
    }

    int bit(int v) const {
        if (where_[v] < 0) throw ValidationError("audit: vertex is not in the core");
        return where_[v];
    }
    long best() const { return *std::max_element(values_.begin(), values_.end()); }
    // best over core assignments accepted by pred; LONG_MIN when none is
    long best(const std::function<bool(std::uint32_t)>& pred) const {
        long b = std::numeric_limits<long>::min();
        for (std::size_t mask = 0; mask < values_.size(); ++mask)
            if (pred(std::uint32_t(mask))) b = std::max(b, values_[mask]);
        return b;
    }
    int core_size() const { return int(core_.size()); }

private:
    std::vector<int> core_, where_;
    std::vector<long> values_;
};

struct AuditItem {
    std::string name;
    bool pass = false;
    std::string detail;
    bool in_scope = true;  // H-if with t > n lies outside the definition; reported, not judged
};

struct AuditReport {
    long C = 0, D = 0;
    int n = 0;
    bool c_large = false;  // C > D^2 * C(2n, 2)
    std::vector<AuditItem> items;

    bool ok() const {
        return std::all_of(items.begin(), items.end(), [](const AuditItem& i) { return i.pass || !i.in_scope; });
    }
    std::vector<std::string> failures(bool in_scope = true) const {
        std::vector<std::string> out;
        for (const auto& i : items)
            if (!i.pass && i.in_scope == in_scope) out.push_back(i.name);
        return out;
    }
};

namespace detail {

inline std::string num(long v) { return v == std::numeric_limits<long>::min() ? "none" : std::to_string(v); }

// is side(v) == s for each listed core bit
inline bool sides_are(std::uint32_t mask, const std::vector<int>& bits, std::uint32_t want) {
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (((mask >> bits[i]) & 1) != ((want >> i) & 1)) return false;
    return true;
}

inline void audit_two_ended(AuditReport& r, long C) {
    auto build = [&](bool prime) {
        NamedGraph g;
        g.add("u");
        g.add("v");
        prime ? make_Fprime(g, "u", "v", C) : make_F(g, "u", "v", C);
        return g.take();
    };
    auto F = build(false), Fp = build(true);
    CoreCut cf(F, {0, 1}), cfp(Fp, {0, 1});
    std::vector<int> fb{cf.bit(0), cf.bit(1)}, fpb{cfp.bit(0), cfp.bit(1)};
    auto at = [](const CoreCut& cc, const std::vector<int>& b, std::uint32_t w) { return cc.best([&](std::uint32_t m) { return sides_are(m, b, w); }); };
    long mf = cf.best(), mfp = cfp.best();
    r.items.push_back({"F.mcut", mf == mcut_F(C) && mfp == mcut_Fprime(C), "mcut(F)=" + num(mf) + " mcut(F')=" + num(mfp)});
    long split = std::max(at(cf, fb, 1), at(cf, fb, 2));
    r.items.push_back({"F.split-loss", split == mf - C, "best with u,v apart=" + num(split)});
    long same = std::max(at(cfp, fpb, 0), at(cfp, fpb, 3));
    r.items.push_back({"F'.same-loss", same == mfp - C, "best with u,v together=" + num(same)});
    bool ext = at(cf, fb, 0) == mf && at(cf, fb, 3) == mf && at(cfp, fpb, 1) == mfp && at(cfp, fpb, 2) == mfp;
    r.items.push_back({"F.extend", ext, "satisfying end placements reach mcut"});
}

inline void audit_T(AuditReport& r, long C) {
    NamedGraph g;
    for (auto v : {"u", "v", "w"}) g.add(v);
    make_T(g, "u", "v", "w", C);
    auto G = g.take();
    CoreCut cc(G, {0, 1, 2});
    std::vector<int> b{cc.bit(0), cc.bit(1), cc.bit(2)};
    long m = cc.best();
    r.items.push_back({"T.mcut", m == mcut_T(C), "mcut(T)=" + num(m)});
    long mono = cc.best([&](std::uint32_t x) { return sides_are(x, b, 0) || sides_are(x, b, 7); });
    r.items.push_back({"T.mono-loss", mono <= m - 2 * C, "best with u,v,w together=" + num(mono)});
    bool ext = true;
    for (std::uint32_t w = 1; w < 7; ++w) ext = ext && cc.best([&](std::uint32_t x) { return sides_are(x, b, w); }) == m;
    r.items.push_back({"T.extend", ext, "every split of u,v,w reaches mcut"});
}

inline void audit_H(AuditReport& r, int n, long D, long C) {
    NamedGraph g;
    make_H(g, "h", n, D, C);
    auto G = g.take();
    std::vector<std::vector<int>> cols(2 * n);
    std::vector<int> keep;
    for (int v = 0; v < G.n(); ++v)
        if (role_of(G.ids[v]) == "column") keep.push_back(v);
    CoreCut cc(G, keep);
    for (int v : keep) {
        int col = std::stoi(G.ids[v].substr(G.ids[v].find(".p.") + 3));
        cols[col - 1].push_back(cc.bit(v));
    }
    // column side: 0/1 when monochromatic, -1 when mixed
    auto col_side = [&](std::uint32_t x, int c) {
        int s = (x >> cols[c][0]) & 1;
        for (int b : cols[c])
            if (int((x >> b) & 1) != s) return -1;
        return s;
    };
    auto balanced = [&](std::uint32_t x) {
        int ones = 0;
        for (int c = 0; c < 2 * n; ++c) {
            int s = col_side(x, c);
            if (s < 0) return false;
            ones += s;
        }
        return ones == n;
    };
    long m = cc.best();
    r.items.push_back({"H.mcut", m == mcut_H(n, D, C), "mcut(H)=" + num(m) + " formula=" + num(mcut_H(n, D, C))});
    long bad = cc.best([&](std::uint32_t x) { return !balanced(x); });
    r.items.push_back({"H.optimal-balanced", bad < m, "best unbalanced=" + num(bad)});
    bool ext = true;
    for (std::uint32_t pick = 0; pick < (1u << (2 * n)); ++pick) {
        if (std::popcount(pick) != n) continue;
        long v = cc.best([&](std::uint32_t x) {
            for (int c = 0; c < 2 * n; ++c)
                if (col_side(x, c) != int((pick >> c) & 1)) return false;
            return true;
        });
        ext = ext && v == m;
    }
    r.items.push_back({"H.extend", ext, "every choice of n columns reaches mcut"});
    r.items.push_back({"H.unbalanced-loss", bad <= m - D * D, "best unbalanced=" + num(bad) + " bound=" + num(m - D * D)});
}

inline void audit_Hif(AuditReport& r, int n, long D, long C, int alpha, int t) {
    NamedGraph g;
    std::vector<std::string> x;
    for (int i = 1; i <= t; ++i) {
        x.push_back("x" + std::to_string(i));
        g.add(x.back());
    }
    g.add("y");
    g.add("z");
    HifShape s{n, D, C, alpha, t};
    make_Hif(g, "h", s, x, "y", "z");
    std::vector<int> keep;
    for (int i = 0; i < t + 2; ++i) keep.push_back(i);
    auto G = g.take();
    CoreCut cc(G, keep);
    std::vector<int> xb;
    for (int i = 0; i < t; ++i) xb.push_back(cc.bit(i));
    int yb = cc.bit(t), zb = cc.bit(t + 1);
    auto ones = [&](std::uint32_t m) {
        int c = 0;
        for (int b : xb) c += (m >> b) & 1;
        return c;
    };
    auto yz_low = [&](std::uint32_t m) { return !((m >> yb) & 1) && !((m >> zb) & 1); };
    bool scope = t <= n;
    std::string tag = "H-if[a=" + std::to_string(alpha) + ",t=" + std::to_string(t) + "]";
    long m = cc.best();
    r.items.push_back({tag + ".mcut", m == mcut_Hif(s), "mcut=" + num(m) + " formula=" + num(mcut_Hif(s)), scope});
    long over = cc.best([&](std::uint32_t mask) { return yz_low(mask) && ones(mask) > alpha; });
    r.items.push_back({tag + ".at-most-alpha", over < m, "best with y,z in V2 and > alpha selected=" + num(over), scope});
    bool ext = true;
    for (std::uint32_t w = 0; w < (1u << (t + 2)); ++w) {
        int sel = std::popcount(w & ((1u << t) - 1));
        bool y1 = (w >> t) & 1, z1 = (w >> (t + 1)) & 1;
        bool allowed = (!y1 && !z1 && sel <= alpha) || (!y1 && z1);
        if (!allowed) continue;
        std::vector<int> bits = xb;
        bits.push_back(yb);
        bits.push_back(zb);
        ext = ext && cc.best([&](std::uint32_t mask) { return sides_are(mask, bits, w); }) == m;
    }
    r.items.push_back({tag + ".extend", ext, "allowed entry placements reach mcut", scope});
    r.items.push_back({tag + ".over-loss", over <= m - D * D, "best violating=" + num(over) + " bound=" + num(m - D * D), scope});
}

}  // namespace detail

inline AuditReport audit_gadgets(long C, long D, int n) {
    if (C < 1 || D < 1 || n < 1) throw ValidationError("audit: need C, D, n >= 1");
    AuditReport r;
    r.C = C;
    r.D = D;
    r.n = n;
    r.c_large = C > D * D * binom(2 * n, 2);
    detail::audit_two_ended(r, C);
    detail::audit_T(r, C);
    detail::audit_H(r, n, D, C);
    for (int t = 1; t <= 2 * n; ++t)
        for (int alpha = 0; alpha <= t; ++alpha) detail::audit_Hif(r, n, D, C, alpha, t);
    return r;
}

}  // namespace mcw::lb
