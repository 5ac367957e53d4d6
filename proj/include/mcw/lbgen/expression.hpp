#pragma once

// Linear multi-expression of G* with 3k+32 labels. Follows the construction
// order: anchors, then per copy j = 1..m+1, per S in the family, per i in
// [n]: a_S^i(j) with its attached gadget columns, a_{S̄}^i(j), the F' pair,
// b_S^i(j-1) and b_{S̄}^i(j-1), clique joins; after the last S the A(j-1)-B(j-1)
// joins; finally the rest of the copy's H-if gadgets.

#include <string>
#include <vector>

#include "mcw/expr.hpp"
#include "mcw/lbgen/instance.hpp"

namespace mcw::lb {

struct LbLabels {
    int k;
    Label qa_old(int q) const { return Label(q); }
    Label qa(int q) const { return Label(k + q); }
    Label qb(int q) const { return Label(2 * k + q); }
    Label at(int off) const { return Label(3 * k + off); }

    Label w1() const { return at(1); }
    Label w2() const { return at(2); }
    Label w2p() const { return at(3); }
    Label f() const { return at(4); }
    Label fl() const { return at(5); }
    Label fr() const { return at(6); }
    Label fle() const { return at(7); }
    Label fre() const { return at(8); }
    Label la() const { return at(9); }
    Label la_bar() const { return at(10); }
    Label lb() const { return at(11); }
    Label lb_bar() const { return at(12); }
    Label la_old() const { return at(13); }
    Label la_bar_old() const { return at(14); }
    Label lb_old() const { return at(15); }
    Label lb_bar_old() const { return at(16); }
    Label lp() const { return at(17); }
    Label lr() const { return at(18); }
    Label col(int c) const { return at(18 + c); }      // c in 1..5
    Label col_old(int c) const { return at(23 + c); }  // c in 1..5
    Label z(int c) const { return at(28 + c); }        // c in 1..4
    int count() const { return 3 * k + 32; }
};

namespace detail {

// Appends every intro under a union with the running expression. Tracks which
// labels are held by someone, so operations on vertices that do not exist
// (B(0), A(m+1)) drop out on their own.
class LinearBuilder {
public:
    explicit LinearBuilder(std::size_t cap) : cap_(cap) {}

    void intro(const std::string& id, LabelSet ls) {
        if (++vertices_ > cap_) throw InstanceTooLarge("lbgen: more than " + std::to_string(cap_) + " vertices");
        int x = b_.intro(id, ls);
        acc_ = acc_ < 0 ? x : b_.unite(acc_, x);
        held_ = held_ | ls;
    }
    void join(Label i, Label j) {
        if (held_.has(i) && held_.has(j)) acc_ = b_.join(i, j, acc_);
    }
    void forget(Label i) {
        if (!held_.has(i)) return;
        acc_ = b_.forget(i, acc_);
        held_.remove(i);
    }
    void relabel(Label i, Label j) {
        if (!held_.has(i)) return;
        acc_ = b_.relabel(i, LabelSet::single(j), acc_);
        held_.remove(i);
        held_.add(j);
    }
    MultiExpr finish(int k_max) { return b_.finish(acc_, k_max); }

private:
    std::size_t cap_;
    std::size_t vertices_ = 0;
    ExprBuilder b_;
    int acc_ = -1;
    LabelSet held_;
};

class LbExprWriter {
public:
    LbExprWriter(const Params& p, std::size_t cap) : p_(p), L{p.k}, e_(cap) {}

    MultiExpr run() {
        anchors();
        auto sets = p_.family;
        for (int j = 1; j <= p_.m + 1; ++j) {
            bool has_a = j <= p_.m, has_b = j >= 2;
            CopyShape s{};
            if (has_a) s = copy_shape(p_, p_.mis.edges[j - 1]);
            for (std::size_t si = 0; si < sets.size(); ++si) {
                LabelSet S = sets[si], Sb = p_.complement(S);
                for (int i = 1; i <= p_.n; ++i) {
                    if (has_a) {
                        e_.intro(a_name(S, i, j), qa_set(S) | LabelSet::single(L.la()));
                        if (S == s.S1 && s.z1lt) attached_column(gadget_name("z1lt", j), i, 1, a_name(S, i, j), L.la());
                        if (S == s.S2 && s.z2lt) attached_column(gadget_name("z2lt", j), i, 2, a_name(S, i, j), L.la());
                        e_.intro(a_name(Sb, i, j), qa_set(Sb) | LabelSet::single(L.la_bar()));
                        if (S == s.S1 && s.z1gt) attached_column(gadget_name("z1gt", j), i, 3, a_name(Sb, i, j), L.la_bar());
                        if (S == s.S2 && s.z2gt) attached_column(gadget_name("z2gt", j), i, 4, a_name(Sb, i, j), L.la_bar());
                        fprime(a_name(S, i, j), a_name(Sb, i, j), L.la(), L.la_bar());
                    }
                    if (has_b) {
                        e_.intro(b_name(S, i, j - 1), qb_set(S) | LabelSet::single(L.lb()));
                        if (has_a) fprime(b_name(S, i, j - 1), a_name(S, i, j), L.lb(), L.la());
                        e_.intro(b_name(Sb, i, j - 1), qb_set(Sb) | LabelSet::single(L.lb_bar()));
                        if (has_a) fprime(b_name(Sb, i, j - 1), a_name(Sb, i, j), L.lb_bar(), L.la_bar());
                    }
                    join_relabel(L.la(), L.la_old());
                    join_relabel(L.la_bar(), L.la_bar_old());
                    join_relabel(L.lb(), L.lb_old());
                    join_relabel(L.lb_bar(), L.lb_bar_old());
                    if (i == p_.n) {
                        e_.forget(L.la_old());
                        e_.forget(L.la_bar_old());
                        e_.forget(L.lb_old());
                        e_.forget(L.lb_bar_old());
                    }
                }
            }
            for (int q = 1; q <= p_.k; ++q) {
                e_.join(L.qa_old(q), L.qb(q));
                e_.forget(L.qa_old(q));
                e_.forget(L.qb(q));
                e_.relabel(L.qa(q), L.qa_old(q));
            }
            if (has_a) finish_gadgets(s, j);
        }
        return e_.finish(L.count());
    }

private:
    LabelSet qa_set(LabelSet S) const {
        LabelSet out;
        S.for_each([&](Label q) { out.add(L.qa(q)); });
        return out;
    }
    LabelSet qb_set(LabelSet S) const {
        LabelSet out;
        S.for_each([&](Label q) { out.add(L.qb(q)); });
        return out;
    }

    void join_relabel(Label cur, Label old) {
        e_.join(cur, old);
        e_.relabel(cur, old);
    }

    void f_vertices(const std::string& u, const std::string& v) {
        for (long c = 1; c <= p_.C; ++c) e_.intro(f_name(u, v, c), {L.f()});
    }
    // F'(u, v): the l side is joined to lu, the r side to lv
    void fprime(const std::string& u, const std::string& v, Label lu, Label lv) {
        for (long c = 1; c <= p_.C; ++c) {
            e_.intro(fp_name(u, v, c, 'l'), {L.fl(), L.fle()});
            e_.intro(fp_name(u, v, c, 'r'), {L.fr(), L.fre()});
            e_.join(L.fle(), L.fre());
            e_.forget(L.fle());
            e_.forget(L.fre());
        }
        e_.join(lu, L.fl());
        e_.forget(L.fl());
        e_.join(lv, L.fr());
        e_.forget(L.fr());
    }

    void anchors() {
        e_.intro("d1", {L.w1()});
        e_.intro("d2", {L.w2()});
        e_.intro("d2p", {L.w2p()});
        fprime("d1", "d2", L.w1(), L.w2());
        f_vertices("d2p", "d2");
        e_.join(L.f(), L.w2p());
        e_.join(L.f(), L.w2());
        e_.forget(L.f());
    }

    // column vertex q, then the F-gadget towards `next`
    void column_step(const std::string& gadget, int col, long q, Label c, const std::string& next) {
        std::string v = col_name(gadget, col, q);
        e_.intro(v, {L.lp(), c});
        e_.join(L.lp(), L.f());
        e_.forget(L.f());
        f_vertices(v, next);
        e_.join(L.lp(), L.f());
        e_.forget(L.lp());
    }
    // the last column vertex without an outgoing F; leaves lp on it
    void column_top(const std::string& gadget, int col, Label c) {
        e_.intro(col_name(gadget, col, p_.D), {L.lp(), c});
        e_.join(L.lp(), L.f());
        e_.forget(L.f());
    }

    // D vertices ending in an F-gadget to x, which holds `attach`
    void attached_column(const std::string& gadget, int col, int c, const std::string& x, Label attach) {
        for (long q = 1; q <= p_.D; ++q) column_step(gadget, col, q, L.col(c), q < p_.D ? col_name(gadget, col, q + 1) : x);
        e_.join(attach, L.f());
        e_.forget(L.f());
        join_relabel(L.col(c), L.col_old(c));
    }

    void free_column(const std::string& gadget, int col, int c) {
        for (long q = 1; q < p_.D; ++q) column_step(gadget, col, q, L.col(c), col_name(gadget, col, q + 1));
        column_top(gadget, col, L.col(c));
        e_.forget(L.lp());
        join_relabel(L.col(c), L.col_old(c));
    }

    // column with T(p, r, z) and F(r, d2)
    void t_column(const std::string& gadget, int col, int t, int c, const std::string& z, Label lz) {
        std::string r = r_name(gadget, t), pD = col_name(gadget, col, p_.D);
        e_.intro(r, {L.lr()});
        for (long q = 1; q < p_.D; ++q) column_step(gadget, col, q, L.col(c), col_name(gadget, col, q + 1));
        column_top(gadget, col, L.col(c));
        fprime(pD, r, L.lp(), L.lr());
        fprime(z, pD, lz, L.lp());
        e_.forget(L.lp());
        fprime(r, z, L.lr(), lz);
        f_vertices(r, "d2");
        e_.join(L.lr(), L.f());
        e_.join(L.f(), L.w2());
        e_.forget(L.f());
        e_.forget(L.lr());
        join_relabel(L.col(c), L.col_old(c));
    }

    void finish_gadgets(const CopyShape& s, int j) {
        auto plans = copy_gadgets(p_, s);
        const GadgetPlan& Zp = plans.back();
        std::string hz = gadget_name("Z", j);
        int zpos = 0;
        for (const auto& g : plans) {
            if (g.kind == "Z") continue;
            ++zpos;
            int c = g.kind == "z1lt" ? 1 : g.kind == "z2lt" ? 2 : g.kind == "z1gt" ? 3 : 4;
            Label lz = L.z(g.kind == "z1lt" ? 1 : g.kind == "z1gt" ? 2 : g.kind == "z2lt" ? 3 : 4);
            std::string h = gadget_name(g.kind, j), z = z_name(g.kind, j);
            e_.intro(z, {lz});
            for (int t = 1; t <= g.shape.t_columns(); ++t) t_column(h, p_.n + t, t, c, z, lz);
            for (int col : free_column_ids(g.shape)) free_column(h, col, c);
            e_.forget(L.col_old(c));
            // this z's column of the gadget over Z
            for (long q = 1; q <= p_.D; ++q) column_step(hz, zpos, q, L.col(5), q < p_.D ? col_name(hz, zpos, q + 1) : z);
            e_.join(L.f(), lz);
            e_.forget(L.f());
            e_.forget(lz);
            join_relabel(L.col(5), L.col_old(5));
        }
        for (int col : free_column_ids(Zp.shape)) free_column(hz, col, 5);
        for (int t = 1; t <= Zp.shape.t_columns(); ++t) t_column(hz, p_.n + t, t, 5, "d2p", L.w2p());
        e_.forget(L.col_old(5));
    }

    const Params& p_;
    LbLabels L;
    LinearBuilder e_;
};

}  // namespace detail

inline MultiExpr build_expression(const MisInstance& mis, const Overrides& ov = {}, std::size_t cap = kDefaultVertexCap) {
    Params p = compute_params(mis, ov);
    return detail::LbExprWriter(p, cap).run();
}

}  // namespace mcw::lb
