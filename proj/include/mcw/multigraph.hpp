#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace mcw {

// Loop-allowing multigraph on labels 1..k', kept as the upper triangle of its
// multiplicity matrix (row-major, diagonal included). Comparing `m` lexicographically
// is the same as comparing full matrices row by row.
struct AuxMultigraph {
    int order = 0;
    std::vector<std::uint16_t> m;

    AuxMultigraph() = default;
    explicit AuxMultigraph(int k) : order(k), m(std::size_t(k) * (k + 1) / 2, 0) {}

    std::size_t idx(int a, int b) const {
        if (a > b) std::swap(a, b);
        --a, --b;
        return std::size_t(a) * order - std::size_t(a) * (a - 1) / 2 + (b - a);
    }
    std::uint16_t mult(int a, int b) const { return m[idx(a, b)]; }
    std::uint16_t& at(int a, int b) { return m[idx(a, b)]; }
    void add(int a, int b, int c = 1) { at(a, b) += c; }

    long edges() const { return std::accumulate(m.begin(), m.end(), 0L); }

    bool operator==(const AuxMultigraph&) const = default;
    bool operator<(const AuxMultigraph& o) const { return m < o.m; }

    std::string str() const {
        std::string s = "{";
        for (int a = 1; a <= order; ++a)
            for (int b = a; b <= order; ++b)
                if (int c = mult(a, b)) {
                    if (s.size() > 1) s += ", ";
                    s += std::to_string(a) + "-" + std::to_string(b);
                    if (c > 1) s += "x" + std::to_string(c);
                }
        return s + "}";
    }
};

inline std::vector<int> degree_vector(const AuxMultigraph& g) {
    std::vector<int> d(g.order, 0);
    for (int a = 1; a <= g.order; ++a)
        for (int b = a; b <= g.order; ++b) {
            int c = g.mult(a, b);
            if (a == b) {
                d[a - 1] += 2 * c;
            } else {
                d[a - 1] += c;
                d[b - 1] += c;
            }
        }
    return d;
}

// comp[a-1] = smallest label in a's component; loops connect nothing
inline std::vector<int> component_ids(const AuxMultigraph& g) {
    std::vector<int> p(g.order);
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    };
    for (int a = 1; a <= g.order; ++a)
        for (int b = a + 1; b <= g.order; ++b)
            if (g.mult(a, b)) {
                int x = find(a - 1), y = find(b - 1);
                if (x != y) p[std::max(x, y)] = std::min(x, y);
            }
    std::vector<int> c(g.order);
    for (int a = 0; a < g.order; ++a) c[a] = find(a) + 1;
    return c;
}

inline std::vector<std::vector<int>> components(const AuxMultigraph& g) {
    auto c = component_ids(g);
    std::vector<int> slot(g.order + 1, -1);
    std::vector<std::vector<int>> blocks;
    for (int a = 1; a <= g.order; ++a) {
        int r = c[a - 1];
        if (slot[r] < 0) {
            slot[r] = int(blocks.size());
            blocks.push_back({});
        }
        blocks[slot[r]].push_back(a);
    }
    return blocks;
}

}  // namespace mcw
