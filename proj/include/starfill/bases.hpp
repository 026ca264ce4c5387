#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace starfill {

/// Gap marker used in star-model columns and text formats.
inline constexpr char kGap = '-';

/// Canonical nucleotide order used for display and set iteration.
inline constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

constexpr bool is_base(char c) {
    return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

/// Uppercases a/c/g/t; returns 0 for anything that is not a nucleotide.
constexpr char canonical_base(char c) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    return is_base(c) ? c : 0;
}

/// Subset of {A,C,G,T} as a 4-bit mask.
class BaseSet {
public:
    constexpr BaseSet() = default;

    static constexpr BaseSet of(std::string_view bases) {
        BaseSet s;
        for (char c : bases) s.add(c);
        return s;
    }

    static constexpr BaseSet all() { return of("ACGT"); }

    constexpr void add(char base) { mask_ |= bit(base); }
    constexpr bool contains(char base) const { return (mask_ & bit(base)) != 0; }
    constexpr bool empty() const { return mask_ == 0; }

    constexpr int size() const {
        int n = 0;
        for (char b : kBases) n += contains(b) ? 1 : 0;
        return n;
    }

    /// Members in canonical A,C,G,T order, e.g. "CT" for {T,C}.
    std::string to_string() const {
        std::string out;
        for (char b : kBases)
            if (contains(b)) out.push_back(b);
        return out;
    }

    constexpr bool operator==(const BaseSet&) const = default;

private:
    static constexpr std::uint8_t bit(char base) {
        switch (base) {
        case 'A': return 1u << 0;
        case 'C': return 1u << 1;
        case 'G': return 1u << 2;
        case 'T': return 1u << 3;
        default: return 0;
        }
    }

    std::uint8_t mask_ = 0;
};

} // namespace starfill
