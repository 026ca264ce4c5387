#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "starfill/bases.hpp"
#include "starfill/errors.hpp"

namespace starfill {

/// A labelled sequence over {A,C,G,T}, uppercase canonical.
struct NucleotideSequence {
    std::string id;
    std::string bases;

    std::size_t size() const { return bases.size(); }
};

/// Validates `raw` (accepting lowercase) and returns the canonical sequence.
/// Throws ValidationError naming the first offending character and its
/// 1-based position, or on an empty sequence.
NucleotideSequence make_sequence(std::string id, std::string_view raw);

/// Maximal block of consecutive gap columns; `start` is 0-based.
struct GapRun {
    std::size_t start = 0;
    std::size_t length = 0;

    bool operator==(const GapRun&) const = default;
};

/// Columnwise consensus of pre-aligned, equal-length sequences: a column
/// holds the unanimous base, or kGap where the inputs disagree. gap_runs
/// lists the maximal gap blocks left to right.
struct StarModel {
    std::string columns;          // over {A,C,G,T,'-'}
    std::vector<GapRun> gap_runs; // covers exactly the '-' positions
    std::size_t source_count = 0;

    std::size_t size() const { return columns.size(); }
    std::size_t total_gap_columns() const;
};

/// Scans a column string for maximal gap runs.
std::vector<GapRun> derive_gap_runs(std::string_view columns);

/// Builds the consensus from at least two equal-length sequences.
/// Throws StarBuildError on fewer than two inputs or length disagreement
/// (the report names the offending record indices).
StarModel build_star(const std::vector<NucleotideSequence>& seqs);

struct GapStats {
    std::map<std::size_t, std::size_t> histogram; // run length -> run count
    std::size_t total_gap_columns = 0;
    std::size_t max_run_length = 0;
};

GapStats gap_stats(const StarModel& model);

} // namespace starfill
