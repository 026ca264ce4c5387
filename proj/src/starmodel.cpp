#include "starfill/starmodel.hpp"

#include <algorithm>
#include <sstream>

namespace starfill {

NucleotideSequence make_sequence(std::string id, std::string_view raw) {
    if (raw.empty())
        throw ValidationError("sequence '" + id + "' is empty");
    std::string bases;
    bases.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = canonical_base(raw[i]);
        if (c == 0)
            throw ValidationError("sequence '" + id + "': invalid character '" +
                                  std::string(1, raw[i]) + "' at position " +
                                  std::to_string(i + 1));
        bases.push_back(c);
    }
    return NucleotideSequence{std::move(id), std::move(bases)};
}

std::size_t StarModel::total_gap_columns() const {
    std::size_t total = 0;
    for (const GapRun& run : gap_runs) total += run.length;
    return total;
}

std::vector<GapRun> derive_gap_runs(std::string_view columns) {
    std::vector<GapRun> runs;
    std::size_t i = 0;
    while (i < columns.size()) {
        if (columns[i] != kGap) { ++i; continue; }
        std::size_t start = i;
        while (i < columns.size() && columns[i] == kGap) ++i;
        runs.push_back(GapRun{start, i - start});
    }
    return runs;
}

StarModel build_star(const std::vector<NucleotideSequence>& seqs) {
    if (seqs.size() < 2)
        throw StarBuildError("need at least 2 sequences, got " + std::to_string(seqs.size()));

    const std::size_t length = seqs.front().bases.size();
    std::string offenders;
    for (std::size_t i = 1; i < seqs.size(); ++i) {
        if (seqs[i].bases.size() != length) {
            if (!offenders.empty()) offenders += ", ";
            offenders += std::to_string(i) + " ('" + seqs[i].id + "', length " +
                         std::to_string(seqs[i].bases.size()) + ")";
        }
    }
    if (!offenders.empty())
        throw StarBuildError("sequences are not equal length: record 0 ('" + seqs.front().id +
                             "') has length " + std::to_string(length) +
                             " but record(s) " + offenders + " disagree");

    StarModel model;
    model.columns.reserve(length);
    for (std::size_t col = 0; col < length; ++col) {
        char base = seqs.front().bases[col];
        bool unanimous = std::all_of(seqs.begin() + 1, seqs.end(),
                                     [&](const NucleotideSequence& s) {
                                         return s.bases[col] == base;
                                     });
        model.columns.push_back(unanimous ? base : kGap);
    }
    model.gap_runs = derive_gap_runs(model.columns);
    model.source_count = seqs.size();
    return model;
}

GapStats gap_stats(const StarModel& model) {
    GapStats stats;
    for (const GapRun& run : model.gap_runs) {
        stats.histogram[run.length] += 1;
        stats.total_gap_columns += run.length;
        stats.max_run_length = std::max(stats.max_run_length, run.length);
    }
    return stats;
}

} // namespace starfill
