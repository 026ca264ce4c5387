#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "starfill/gapfill.hpp"

namespace starfill::cli {

/// Exit codes shared by the subcommands. Diagnostics go to the error
/// stream; data goes to files or the output stream only.
enum ExitCode : int {
    kOk = 0,
    kParseError = 2,      // grammar/FASTA/arguments malformed (expand: also 2)
    kStarError = 3,       // star construction failed; expand: length guard hit
    kStreamExhausted = 4, // symbol stream ended before the gaps were filled
    kPolicyFailure = 5,   // fail-on-mismatch policy triggered
    kIoError = 6,         // filesystem failure
};

struct PipelineConfig {
    std::filesystem::path grammar_path;
    std::filesystem::path fasta_path;
    std::string policy = "skip"; // skip | substitute | fail
    std::optional<unsigned> iterations;
    int frame = 0;
    std::filesystem::path out_dir;
};

FillPolicy parse_policy(const std::string& name);

/// expand: write expand(grammar, n) as FASTA to `out` ("-" or empty: stdout).
int cmd_expand(const std::filesystem::path& grammar_path, unsigned iterations,
               const std::filesystem::path& out, std::ostream& out_stream,
               std::ostream& err);

/// star: build the consensus from a FASTA file and write the star-model text.
int cmd_star(const std::filesystem::path& fasta_path, const std::filesystem::path& out,
             std::ostream& out_stream, std::ostream& err);

/// fill: fill a star model (from --star, or built from --fasta) using the
/// grammar stream; writes filled.fasta and trace.tsv into out_dir.
int cmd_fill(const std::filesystem::path& grammar_path,
             const std::optional<std::filesystem::path>& star_path,
             const std::optional<std::filesystem::path>& fasta_path,
             const std::string& policy, std::optional<unsigned> iterations,
             const std::filesystem::path& out_dir, std::ostream& err);

/// check: scan every record of a FASTA file for in-frame stop codons.
int cmd_check(const std::filesystem::path& fasta_path, int frame,
              std::ostream& out_stream, std::ostream& err);

/// identity: first record vs each later record; hamming when lengths match,
/// plus global-alignment identity. TSV records with `tsv = true`.
int cmd_identity(const std::filesystem::path& fasta_path, bool tsv,
                 std::ostream& out_stream, std::ostream& err);

/// pipeline: star -> stream iteration choice -> fill -> validation; writes
/// star.txt, filled.fasta, trace.tsv, identity.tsv and report.txt into
/// config.out_dir.
int cmd_pipeline(const PipelineConfig& config, std::ostream& err);

} // namespace starfill::cli
