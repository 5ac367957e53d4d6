#include <gtest/gtest.h>

#include <random>

#include "mcw/evaluate.hpp"
#include "mcw/graph.hpp"
#include "mcw/lbgen/audit.hpp"
#include "mcw/lbgen/expression.hpp"
#include "mcw/lbgen/instance.hpp"
#include "mcw/oracles.hpp"

using namespace mcw;
using namespace mcw::lb;

namespace {

MisInstance minimal() { return read_mis("mis 3 2\ne 1 0 2 1\n"); }

MisInstance random_mis(int kp, int np, int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    MisInstance g{kp, np, {}};
    for (int e = 0; e < m; ++e) {
        int i1 = 1 + int(rng() % kp), i2 = 1 + int(rng() % (kp - 1));
        if (i2 >= i1) ++i2;
        g.edges.push_back({i1, int(rng() % np), i2, int(rng() % np)});
    }
    return g;
}

long count_labels(const MultiExpr& e) {
    LabelSet used;
    for (const auto& n : e.nodes) {
        used = used | n.s;
        if (n.i) used.add(n.i);
        if (n.j) used.add(n.j);
    }
    return used.size();
}

}  // namespace

TEST(LbParams, MinimalInstance) {
    auto p = compute_params(minimal());
    EXPECT_EQ(p.k, 4);
    EXPECT_EQ(p.kp, 3);
    EXPECT_EQ(p.n, 1);
    EXPECT_EQ(p.D, 30);
    EXPECT_EQ(p.C, 901);
    EXPECT_EQ(p.L1, 12);
    EXPECT_EQ(p.L2, 6);
    EXPECT_EQ(p.L, 18);
    EXPECT_EQ(p.N, 4);
    EXPECT_TRUE(p.c_large);
    // by hand: gadgets z1gt, z2lt (alpha 0, t 1) and Z (alpha 1, t 2)
    EXPECT_EQ(p.budget_j, (std::vector<long>{341476}));
    EXPECT_EQ(p.b, 354108);
}

TEST(LbParams, Families) {
    auto p = compute_params(minimal());
    ASSERT_EQ(p.family.size(), 3u);
    for (auto S : p.family) {
        EXPECT_TRUE(S.has(1));
        EXPECT_EQ(S.size(), 2);
        EXPECT_FALSE(p.complement(S).has(1));
        EXPECT_EQ((S & p.complement(S)).size(), 0);
    }
    auto all = p.all_sets();
    std::sort(all.begin(), all.end(), [](LabelSet a, LabelSet b) { return a.bits < b.bits; });
    EXPECT_EQ(std::unique(all.begin(), all.end()) - all.begin(), 6);
}

TEST(LbParams, RejectsDegenerateInputs) {
    EXPECT_THROW(compute_params(read_mis("mis 3 1\n")), ValidationError);
    EXPECT_THROW(compute_params(read_mis("mis 3 2\n")), ValidationError);
    EXPECT_THROW(read_mis("mis 3 2\ne 1 0 1 1\n"), ValidationError);
    EXPECT_THROW(read_mis("e 1 0 2 1\n"), ParseError);
    EXPECT_THROW(read_mis("mis 3 2\ne 1 0 2\n"), ParseError);
    EXPECT_THROW(read_mis("mis 3 2\ne 1 0 2 5\n"), ValidationError);
}

TEST(LbParams, PaddingKeepsAnswer) {
    int yes = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        int kp = 2 + int(seed % 3), np = 2 + int(seed % 2);
        auto g = random_mis(kp, np, 1 + int(seed % 9), seed);
        auto padded = pad(g);
        EXPECT_GE(padded.kp, g.kp);
        EXPECT_EQ(binom(k_for(g.kp), k_for(g.kp) / 2) / 2, padded.kp);
        bool want = has_multicolored_is(g);
        EXPECT_EQ(has_multicolored_is(padded), want);
        yes += want;
    }
    EXPECT_GT(yes, 20);
    EXPECT_LT(yes, 190);
}

TEST(LbGadgets, ClosedFormsOnSmallFragments) {
    NamedGraph f;
    f.add("u");
    f.add("v");
    make_F(f, "u", "v", 2);
    EXPECT_EQ(f.graph().n(), 4);
    EXPECT_EQ(oracle_max_cut(f.graph()), 4);
    NamedGraph fp;
    fp.add("u");
    fp.add("v");
    make_Fprime(fp, "u", "v", 2);
    EXPECT_EQ(fp.graph().n(), 4 + 2);
    EXPECT_EQ(oracle_max_cut(fp.graph()), 6);
    NamedGraph h;
    make_H(h, "h", 1, 1, 1);
    EXPECT_EQ(h.graph().n(), 2);
    EXPECT_EQ(h.graph().m(), 1u);
    NamedGraph h2;
    make_H(h2, "h", 1, 2, 1);
    EXPECT_EQ(oracle_max_cut(h2.graph()), mcut_H(1, 2, 1));
}

TEST(LbGadgets, HifTinyMatchesFormula) {
    NamedGraph g;
    for (auto v : {"x", "y", "z"}) g.add(v);
    HifShape s{1, 1, 1, 0, 1};
    make_Hif(g, "h", s, {"x"}, "y", "z");
    EXPECT_EQ(oracle_max_cut(g.graph()), mcut_Hif(s));
    EXPECT_THROW(make_Hif(g, "h2", HifShape{1, 1, 1, 0, 3}, {"x", "y", "z"}, "y", "z"), ValidationError);
}

TEST(LbGadgets, NamesAndCaps) {
    NamedGraph g(2);
    g.add("a");
    EXPECT_THROW(g.add("a"), ValidationError);
    g.add("b");
    EXPECT_THROW(g.add("c"), InstanceTooLarge);
    EXPECT_EQ(role_of("aS3i1j1"), "A");
    EXPECT_EQ(role_of("f_d2p_d2.1"), "F");
    EXPECT_EQ(role_of("g_d1_d2.1.l"), "Fprime");
    EXPECT_EQ(role_of("hZj1.p.2.3"), "column");
    EXPECT_EQ(role_of("hZj1.r.1"), "r");
    EXPECT_EQ(role_of("z1ltj2"), "z");
}

TEST(LbBuild, ExpressionMatchesGraphSmall) {
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
        int kp = 2 + int(seed % 4), np = 2 + int(seed % 3);
        auto mis = random_mis(kp, np, 1 + int(seed % 3), seed);
        Overrides ov{1 + long(seed % 2), 1 + long(seed % 3)};
        auto inst = build_instance(mis, ov);
        auto e = build_expression(mis, ov);
        ASSERT_TRUE(validate(e).ok());
        auto ev = evaluate(e);
        EXPECT_TRUE(equal_by_id(SimpleGraph::from(ev.graph), inst.graph)) << "seed " << seed;
        EXPECT_TRUE(is_linear(e));
        EXPECT_LE(count_labels(e), 3 * inst.params.k + 32);
        EXPECT_EQ(e.k_max, 3 * inst.params.k + 32);
    }
}

TEST(LbBuild, MinimalInstanceStructure) {
    auto inst = build_instance(minimal());
    const auto& g = inst.graph;
    auto roles = inst.roles();
    // edges inside A and B of every copy
    long ab = 0;
    for (auto [u, v] : g.edges) {
        bool inu = roles[u] == "A" || roles[u] == "B", inv = roles[v] == "A" || roles[v] == "B";
        ab += inu && inv;
    }
    EXPECT_EQ(ab, inst.params.D);
    // F' gadgets between outer vertices: count l-side path vertices whose
    // two path ends are anchors / A / B
    auto adj = g.adjacency();
    auto outer = [&](int v) { return roles[v] == "anchor" || roles[v] == "A" || roles[v] == "B"; };
    long paths = 0;
    for (int v = 0; v < g.n(); ++v) {
        if (roles[v] != "Fprime" || g.ids[v].back() != 'l') continue;
        int end1 = -1, mid = -1;
        for (int w : adj[v]) (roles[w] == "Fprime" ? mid : end1) = w;
        int end2 = -1;
        for (int w : adj[mid])
            if (w != v) end2 = w;
        paths += outer(end1) && outer(end2);
    }
    EXPECT_EQ(paths % inst.params.C, 0);
    EXPECT_EQ(paths / inst.params.C, inst.params.N);

    auto e = build_expression(minimal());
    EXPECT_TRUE(is_linear(e));
    EXPECT_LE(count_labels(e), 3 * 4 + 32);
    auto ev = evaluate(e);
    EXPECT_TRUE(equal_by_id(SimpleGraph::from(ev.graph), g));
}

// The A(j)-B(j) edges come from k sequential joins q^a_old x q^b; a pair
// a_S, b_T with |S ∩ T| >= 2 gets its edge from the first shared q, and
// every later shared q re-adds it. Everything else is irredundant.
TEST(LbBuild, OnlyTheSelectionJoinsAreRedundant) {
    auto mis = minimal();
    Overrides ov{1, 1};
    auto e = build_expression(mis, ov);
    auto ev = evaluate(e);
    int k = compute_params(mis, ov).k;
    long redundant = 0;
    for (int x = 0; x < int(e.size()); ++x) {
        if (e[x].op != Op::Join || ev.ann[x].irredundant) continue;
        ++redundant;
        EXPECT_LE(e[x].i, k) << "join " << e[x].i << " " << e[x].j;
        EXPECT_GT(e[x].j, 2 * k);
    }
    EXPECT_GT(redundant, 0);
    EXPECT_FALSE(ev.irredundant());
}

TEST(LbBuild, VertexCap) {
    EXPECT_THROW(build_instance(minimal(), {}, 1000), InstanceTooLarge);
    EXPECT_THROW(build_expression(minimal(), {}, 1000), InstanceTooLarge);
}

TEST(LbAudit, CoreCutMatchesOracle) {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        int n = 2 + int(rng() % 13);
        SimpleGraph g;
        for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
        // sparse, so that degree-2 chains and chain-only cycles show up
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 100 < 25) g.add_edge(u, v);
        EXPECT_EQ(CoreCut(g, {}).best(), oracle_max_cut(g)) << write_graph_text(g);
    }
    NamedGraph h;
    for (auto v : {"x1", "y", "z"}) h.add(v);
    make_Hif(h, "h", HifShape{1, 2, 1, 0, 1}, {"x1"}, "y", "z");
    ASSERT_LE(h.graph().n(), 26);
    EXPECT_EQ(CoreCut(h.graph(), {0, 1, 2}).best(), oracle_max_cut(h.graph()));
}

TEST(LbAudit, HoldsUnderTheSizeHypothesis) {
    for (auto [C, D, n] : std::vector<std::tuple<long, long, int>>{{2, 1, 1}, {3, 1, 1}, {5, 2, 1}, {7, 1, 2}}) {
        auto r = audit_gadgets(C, D, n);
        EXPECT_TRUE(r.c_large);
        EXPECT_TRUE(r.ok()) << C << " " << D << " " << n << ": " << r.failures().front();
    }
}

// With C <= D^2 a mixed column or one extra selected entry costs less than D^2.
TEST(LbAudit, LossItemsNeedLargeC) {
    auto r = audit_gadgets(1, 2, 1);
    EXPECT_FALSE(r.c_large);
    EXPECT_EQ(r.failures(), (std::vector<std::string>{"H.unbalanced-loss", "H-if[a=0,t=1].over-loss"}));
    EXPECT_EQ(audit_gadgets(3, 2, 1).failures(), (std::vector<std::string>{"H-if[a=0,t=1].over-loss"}));
    // the non-loss items still hold
    for (const auto& i : r.items) {
        if (!i.in_scope || i.name.find("loss") != std::string::npos) continue;
        EXPECT_TRUE(i.pass) << i.name;
    }
}

// t > n (used for the gadget over Z) does not bound the selected entries.
TEST(LbAudit, WideHifIsOutOfScope) {
    auto r = audit_gadgets(5, 2, 1);
    auto out = r.failures(false);
    EXPECT_FALSE(out.empty());
    for (const auto& name : out) EXPECT_NE(name.find(",t=2]"), std::string::npos);
}
