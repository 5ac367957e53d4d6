#include <gtest/gtest.h>

#include "mcw/fuzz.hpp"
#include "mcw/parse.hpp"

using namespace mcw;

TEST(Fuzz, AllSolversAgreeSmall) {
    FuzzConfig cfg;
    cfg.n = 6;
    cfg.k = 2;
    cfg.count = 50;
    auto r = run_fuzz(cfg);
    EXPECT_TRUE(r.ok());
    ASSERT_EQ(r.tallies.size(), 3u);
    for (const auto& t : r.tallies) EXPECT_EQ(t.agreed + t.refused, 50) << t.which;
}

// off by one as soon as there is an edge
TEST(Fuzz, CorruptedSolverIsCaughtAndShrunk) {
    FuzzConfig cfg;
    cfg.n = 7;
    cfg.k = 3;
    cfg.count = 20;
    cfg.which = "maxcut";
    FuzzSolvers bad;
    bad.maxcut = [](const MultiExpr& e) {
        long v = solve_max_cut(e).optimum;
        return v > 0 ? v + 1 : v;
    };
    auto r = run_fuzz(cfg, bad);
    ASSERT_FALSE(r.ok());
    for (const auto& f : r.failures) {
        EXPECT_EQ(f.solver, f.oracle + 1);
        EXPECT_LE(f.nodes, f.original_nodes);
        // one edge is all it takes: two intros, a union, a join, at most
        // one relabel the join depends on
        EXPECT_EQ(evaluate(parse(f.expr)).graph.m(), 1u) << f.expr;
        EXPECT_LE(f.nodes, 5u) << f.expr;
    }
}

TEST(Fuzz, DeterministicForFixedSeed) {
    FuzzConfig cfg;
    cfg.n = 6;
    cfg.k = 3;
    cfg.count = 10;
    cfg.seed = 42;
    FuzzSolvers bad;
    bad.hc = [](const MultiExpr&) { return 1L; };
    auto a = run_fuzz(cfg, bad), b = run_fuzz(cfg, bad);
    ASSERT_EQ(a.failures.size(), b.failures.size());
    for (std::size_t i = 0; i < a.failures.size(); ++i) EXPECT_EQ(a.failures[i].expr, b.failures[i].expr);
    EXPECT_EQ(a.tallies[1].agreed, b.tallies[1].agreed);
}

TEST(Fuzz, RefusesAboveOracleCap) {
    FuzzConfig cfg;
    cfg.n = 30;
    EXPECT_THROW(run_fuzz(cfg), TooLarge);
    cfg.n = 4;
    cfg.which = "bogus";
    EXPECT_THROW(run_fuzz(cfg), ValidationError);
}

TEST(Minimize, DropNodeKeepsValidity) {
    auto e = parse("(join 1 2 (union (intro a (1)) (relabel 3 (2) (intro b (3)))))");
    auto m = minimize_expr(e, [](const MultiExpr& x) { return evaluate(x).graph.n() == 2; });
    EXPECT_EQ(serialize(m), "(union (intro a (1)) (intro b (3)))");
}
