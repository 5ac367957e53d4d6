#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mcw {

using Label = int;

// labels are 1..64; bit (l-1) set means l is a member
inline constexpr int kMaxLabel = 64;

struct LabelSet {
    std::uint64_t bits = 0;

    constexpr LabelSet() = default;
    constexpr explicit LabelSet(std::uint64_t b) : bits(b) {}
    constexpr LabelSet(std::initializer_list<Label> ls) {
        for (Label l : ls) bits |= bit(l);
    }

    static constexpr std::uint64_t bit(Label l) { return std::uint64_t{1} << (l - 1); }
    static constexpr LabelSet single(Label l) { return LabelSet(bit(l)); }

    constexpr bool has(Label l) const { return (bits >> (l - 1)) & 1u; }
    constexpr bool empty() const { return bits == 0; }
    constexpr int size() const { return std::popcount(bits); }
    constexpr Label max() const { return bits ? 64 - std::countl_zero(bits) : 0; }
    constexpr Label min() const { return bits ? std::countr_zero(bits) + 1 : 0; }

    constexpr void add(Label l) { bits |= bit(l); }
    constexpr void remove(Label l) { bits &= ~bit(l); }

    constexpr LabelSet operator|(LabelSet o) const { return LabelSet(bits | o.bits); }
    constexpr LabelSet operator&(LabelSet o) const { return LabelSet(bits & o.bits); }
    constexpr LabelSet minus(LabelSet o) const { return LabelSet(bits & ~o.bits); }
    constexpr bool subset_of(LabelSet o) const { return (bits & ~o.bits) == 0; }
    constexpr bool operator==(const LabelSet&) const = default;
    constexpr auto operator<=>(const LabelSet&) const = default;

    // ρ_{i→S} applied to this set
    constexpr LabelSet relabeled(Label i, LabelSet s) const {
        if (!has(i)) return *this;
        LabelSet r(bits & ~bit(i));
        return r | s;
    }

    std::vector<Label> labels() const {
        std::vector<Label> out;
        for (std::uint64_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::uint64_t b = bits; b; b &= b - 1) f(Label(std::countr_zero(b) + 1));
    }

    std::string str() const {
        std::string s = "(";
        bool first = true;
        for_each([&](Label l) {
            if (!first) s += ' ';
            s += std::to_string(l);
            first = false;
        });
        return s + ")";
    }
};

}  // namespace mcw
