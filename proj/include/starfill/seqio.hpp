#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "starfill/errors.hpp"
#include "starfill/gapfill.hpp"
#include "starfill/starmodel.hpp"

namespace starfill {

struct FastaRecord {
    std::string header; // text after '>'
    std::string bases;  // canonical uppercase ACGT
};

/// Parses FASTA text: '>' header lines followed by sequence lines wrapped
/// arbitrarily. Lowercase bases are canonicalized. Throws ParseError when
/// there is no record, a sequence precedes the first header, a record has
/// no bases, or a character outside a/c/g/t appears (named with its record
/// and 1-based position).
std::vector<FastaRecord> read_fasta(std::string_view text);

/// 60-column-wrapped FASTA; inverse of read_fasta. Throws ValidationError
/// on an empty record list.
std::string write_fasta(const std::vector<FastaRecord>& records);

std::vector<NucleotideSequence> to_sequences(const std::vector<FastaRecord>& records);

/// Star-model text: a ">star n=<source_count>" header, then the column
/// string with '-' for gaps, wrapped at 60 characters.
std::string write_star_model(const StarModel& model);
StarModel read_star_model(std::string_view text);

/// Tab-separated audit trace, one line per fill event, '.' for unavailable
/// context positions. Columns:
/// pass run_start column prev2 prev1 next1 next2 rule_id allowed stream_index skipped chosen
std::string write_trace_tsv(const FillTrace& trace);
FillTrace read_trace_tsv(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace starfill
