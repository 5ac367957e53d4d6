#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "mcw/errors.hpp"
#include "mcw/expr.hpp"

namespace mcw {

namespace detail {

struct Tok {
    enum Kind { LP, RP, Atom, End } kind;
    std::string_view text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Tok next() {
        skip();
        Tok t{Tok::End, {}, line_, col_};
        if (p_ >= s_.size()) return t;
        char c = s_[p_];
        if (c == '(' || c == ')') {
            t.kind = c == '(' ? Tok::LP : Tok::RP;
            t.text = s_.substr(p_, 1);
            bump();
            return t;
        }
        std::size_t b = p_;
        while (p_ < s_.size() && !std::isspace((unsigned char)s_[p_]) && s_[p_] != '(' && s_[p_] != ')' && s_[p_] != ';') bump();
        t.kind = Tok::Atom;
        t.text = s_.substr(b, p_ - b);
        return t;
    }

private:
    void bump() {
        if (s_[p_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++p_;
    }
    void skip() {
        while (p_ < s_.size()) {
            char c = s_[p_];
            if (c == ';') {
                while (p_ < s_.size() && s_[p_] != '\n') bump();
            } else if (std::isspace((unsigned char)c)) {
                bump();
            } else {
                break;
            }
        }
    }

    std::string_view s_;
    std::size_t p_ = 0;
    int line_ = 1, col_ = 1;
};

inline bool valid_vid(std::string_view v) {
    if (v.empty()) return false;
    for (char c : v)
        if (!(std::isalnum((unsigned char)c) || c == '_' || c == '.' || c == '-')) return false;
    return true;
}

}  // namespace detail

inline MultiExpr parse(std::string_view text) {
    using detail::Tok;
    detail::Lexer lx(text);
    int declared_k = 0;

    auto fail = [](const Tok& t, const std::string& why) -> ParseError { return ParseError(t.line, t.col, why); };
    auto expect = [&](Tok::Kind k, const char* what) {
        Tok t = lx.next();
        if (t.kind != k) throw fail(t, std::string("expected ") + what);
        return t;
    };
    auto integer = [&](const Tok& t) {
        int v = 0;
        if (t.kind != Tok::Atom) throw fail(t, "expected integer");
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || p != t.text.data() + t.text.size()) throw fail(t, "expected integer, got '" + std::string(t.text) + "'");
        return v;
    };
    auto label = [&](const Tok& t) {
        int v = integer(t);
        if (v < 1 || v > kMaxLabel) throw fail(t, "label " + std::to_string(v) + " outside 1..64");
        if (declared_k && v > declared_k)
            throw UnknownLabel(std::to_string(t.line) + ":" + std::to_string(t.col) + ": label " + std::to_string(v) + " exceeds declared k=" + std::to_string(declared_k));
        return v;
    };
    auto label_list = [&](bool nonempty) {
        expect(Tok::LP, "'('");
        LabelSet s;
        for (;;) {
            Tok t = lx.next();
            if (t.kind == Tok::RP) {
                if (nonempty && s.empty()) throw fail(t, "intro needs at least one label");
                return s;
            }
            s.add(label(t));
        }
    };

    struct Frame {
        Op op;
        Label i = 0;
        LabelSet s;
        int need;
        std::vector<int> kids;
    };

    ExprBuilder b;
    std::vector<Frame> st;
    bool wrapped = false;
    int root = -1;

    Tok t = expect(Tok::LP, "'('");
    Tok head = lx.next();
    if (head.kind == Tok::Atom && head.text == "mcw") {
        Tok kt = lx.next();
        int k = integer(kt);
        if (k < 1 || k > kMaxLabel) throw fail(kt, "k must be in 1..64");
        declared_k = k;
        wrapped = true;
        t = expect(Tok::LP, "'('");
        head = lx.next();
    }

    // head holds the keyword of an expression whose '(' was just consumed
    for (;;) {
        int done = -1;
        if (head.kind != Tok::Atom) throw fail(head, "expected keyword");
        if (head.text == "intro") {
            Tok v = lx.next();
            if (v.kind != Tok::Atom || !detail::valid_vid(v.text)) throw fail(v, "expected vertex id");
            LabelSet s = label_list(true);
            expect(Tok::RP, "')'");
            done = b.intro(std::string(v.text), s);
        } else if (head.text == "union") {
            st.push_back({Op::Union, 0, {}, 2, {}});
        } else if (head.text == "join") {
            Tok ti = lx.next();
            Label i = label(ti);
            Label j = label(lx.next());
            if (i == j) throw fail(ti, "join labels must differ");
            st.push_back({Op::Join, i, LabelSet::single(j), 1, {}});
        } else if (head.text == "relabel") {
            Label i = label(lx.next());
            LabelSet s = label_list(false);
            st.push_back({Op::Relabel, i, s, 1, {}});
        } else {
            throw fail(head, "unknown keyword '" + std::string(head.text) + "'");
        }

        // close finished frames
        while (done >= 0) {
            if (st.empty()) {
                root = done;
                break;
            }
            Frame& f = st.back();
            f.kids.push_back(done);
            if (int(f.kids.size()) < f.need) {
                done = -1;
                break;
            }
            expect(Tok::RP, "')'");
            if (f.op == Op::Union)
                done = b.unite(f.kids[0], f.kids[1]);
            else if (f.op == Op::Join)
                done = b.join(f.i, f.s.min(), f.kids[0]);
            else
                done = b.relabel(f.i, f.s, f.kids[0]);
            st.pop_back();
        }
        if (root >= 0) break;
        expect(Tok::LP, "'(' starting a subexpression");
        head = lx.next();
    }
    if (wrapped) expect(Tok::RP, "')' closing mcw");
    Tok end = lx.next();
    if (end.kind != Tok::End) throw fail(end, "trailing input");
    return b.finish(root, declared_k);
}

}  // namespace mcw
