#pragma once

// Shared fixtures for the test binaries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "starfill/grammar.hpp"
#include "starfill/starmodel.hpp"

namespace testutil {

inline constexpr const char* kGrammarText =
    "alphabet: A C G T\n"
    "axiom: C\n"
    "A -> CTG\n"
    "C -> CCA\n"
    "T -> TGC\n"
    "G -> GAC\n";

inline const starfill::LSystemSpec& base_spec() {
    static const starfill::LSystemSpec spec = starfill::parse_spec(kGrammarText);
    return spec;
}

// Fifth expansion of base_spec(), 243 symbols.
inline const std::string kFifthExpansion =
    "CCACCACTGCCACCACTGCCATGCGACCCACCACTGCCACCACTGCCATGCGACCCACCA"
    "CTGTGCGACCCAGACCTGCCACCACCACTGCCACCACTGCCATGCGACCCACCACTGCCA"
    "CCACTGCCATGCGACCCACCACTGTGCGACCCAGACCTGCCACCACCACTGCCACCACTG"
    "CCATGCGACTGCGACCCAGACCTGCCACCACCACTGGACCTGCCACCATGCGACCCACCA"
    "CTG";

struct Trio {
    std::vector<starfill::NucleotideSequence> inputs; // three aligned sequences
    std::string gapped;                               // expected consensus columns
};

// Three copies of `base` made to disagree at exactly the columns covered by
// `runs`. Runs must be disjoint and non-adjacent or the consensus would
// merge them.
inline Trio make_trio(const std::string& base, const std::vector<starfill::GapRun>& runs) {
    Trio trio;
    trio.gapped = base;
    std::vector<std::string> rows(3, base);
    for (const starfill::GapRun& run : runs) {
        for (std::size_t col = run.start; col < run.start + run.length; ++col) {
            trio.gapped[col] = starfill::kGap;
            for (std::size_t j = 0; j < 3; ++j)
                rows[j][col] = starfill::kBases[(col + j) % 4];
        }
    }
    for (std::size_t j = 0; j < 3; ++j)
        trio.inputs.push_back({"seq" + std::to_string(j), rows[j]});
    return trio;
}

// Random gapped layout: length <= max_length, maximal runs of length 1..4
// separated by at least one consensus column.
inline Trio random_trio(std::uint32_t seed, std::size_t max_length = 200) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> length_dist(8, max_length);
    std::uniform_int_distribution<int> base_dist(0, 3);
    std::uniform_int_distribution<int> run_length_dist(1, 4);
    std::uniform_int_distribution<int> coin(0, 9);

    std::size_t length = length_dist(rng);
    std::string base(length, 'A');
    for (char& c : base) c = starfill::kBases[base_dist(rng)];

    std::vector<starfill::GapRun> runs;
    std::size_t pos = 1; // keep column 0 as consensus
    while (pos + 1 < length) {
        if (coin(rng) == 0) {
            std::size_t run_length = static_cast<std::size_t>(run_length_dist(rng));
            if (pos + run_length + 1 > length) break;
            runs.push_back({pos, run_length});
            pos += run_length + 1; // gap between runs
        } else {
            ++pos;
        }
    }
    return make_trio(base, runs);
}

} // namespace testutil
