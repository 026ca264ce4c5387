#include "starfill/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

#include "starfill/grammar.hpp"
#include "starfill/seqcheck.hpp"
#include "starfill/seqio.hpp"

namespace starfill::cli {

namespace {

int map_error(const std::exception& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    if (dynamic_cast<const ParseError*>(&e)) return kParseError;
    if (dynamic_cast<const StarBuildError*>(&e)) return kStarError;
    if (dynamic_cast<const StreamExhaustedError*>(&e)) return kStreamExhausted;
    if (dynamic_cast<const PolicyMismatchError*>(&e)) return kPolicyFailure;
    if (dynamic_cast<const IoError*>(&e)) return kIoError;
    if (dynamic_cast<const ValidationError*>(&e)) return kParseError;
    return 1;
}

std::string fraction4(double value) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

void emit(const std::filesystem::path& out, std::ostream& out_stream, std::string_view text) {
    if (out.empty() || out == "-") out_stream << text;
    else write_file(out, text);
}

std::string identity_tsv(const std::vector<std::pair<std::string, IdentityReport>>& rows) {
    std::string out = "name\tmatches\tcompared\tfraction\n";
    for (const auto& [name, report] : rows) {
        out += name + "\t" + std::to_string(report.matches) + "\t" +
               std::to_string(report.compared) + "\t" + fraction4(report.fraction) + "\n";
    }
    return out;
}

} // namespace

FillPolicy parse_policy(const std::string& name) {
    FillPolicy policy;
    if (name == "skip") policy.mismatch = MismatchHandling::SkipUntilAllowed;
    else if (name == "substitute") policy.mismatch = MismatchHandling::SubstituteFirstAllowed;
    else if (name == "fail") policy.mismatch = MismatchHandling::FailOnMismatch;
    else
        throw ValidationError("unknown policy '" + name + "' (expected skip, substitute or fail)");
    return policy;
}

int cmd_expand(const std::filesystem::path& grammar_path, unsigned iterations,
               const std::filesystem::path& out, std::ostream& out_stream, std::ostream& err) {
    try {
        LSystemSpec spec = parse_spec(read_file(grammar_path));
        std::string sequence = expand(spec, iterations);
        std::string header = "expansion n=" + std::to_string(iterations) +
                             " len=" + std::to_string(sequence.size());
        emit(out, out_stream, write_fasta({FastaRecord{header, sequence}}));
        return kOk;
    } catch (const ExpansionLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kStarError; // expand maps a guard breach to 3
    } catch (const std::exception& e) {
        return map_error(e, err);
    }
}

int cmd_star(const std::filesystem::path& fasta_path, const std::filesystem::path& out,
             std::ostream& out_stream, std::ostream& err) {
    try {
        StarModel model = build_star(to_sequences(read_fasta(read_file(fasta_path))));
        emit(out, out_stream, write_star_model(model));
        GapStats stats = gap_stats(model);
        err << "star model: " << model.size() << " columns, " << stats.total_gap_columns
            << " gap columns in " << model.gap_runs.size() << " runs\n";
        return kOk;
    } catch (const std::exception& e) {
        return map_error(e, err);
    }
}

namespace {

struct FillOutcome {
    StarModel model;
    FillResult result;
    unsigned iteration = 0;
    std::size_t stream_length = 0;
};

FillOutcome run_fill(const LSystemSpec& spec, const StarModel& model,
                     const std::string& policy_name, std::optional<unsigned> iterations) {
    FillOutcome outcome;
    outcome.model = model;
    FillPolicy policy = parse_policy(policy_name);
    if (iterations) {
        std::string symbols = expand(spec, *iterations);
        outcome.iteration = *iterations;
        outcome.stream_length = symbols.size();
        StringSource stream(std::move(symbols));
        outcome.result = fill(model, stream, ConstraintRuleTable::standard(), policy);
    } else {
        // Smallest iteration whose output covers every gap column.
        std::size_t gaps = model.total_gap_columns();
        LazyExpansion stream(spec, gaps == 0 ? 1 : gaps);
        outcome.iteration = stream.iteration();
        outcome.stream_length = stream.target_length();
        outcome.result = fill(model, stream, ConstraintRuleTable::standard(), policy);
    }
    return outcome;
}

} // namespace

int cmd_fill(const std::filesystem::path& grammar_path,
             const std::optional<std::filesystem::path>& star_path,
             const std::optional<std::filesystem::path>& fasta_path, const std::string& policy,
             std::optional<unsigned> iterations, const std::filesystem::path& out_dir,
             std::ostream& err) {
    try {
        if (star_path.has_value() == fasta_path.has_value())
            throw ValidationError("provide exactly one of --star or --fasta");
        LSystemSpec spec = parse_spec(read_file(grammar_path));

        StarModel model;
        if (star_path) {
            model = read_star_model(read_file(*star_path));
        } else {
            model = build_star(to_sequences(read_fasta(read_file(*fasta_path))));
        }

        FillOutcome outcome = run_fill(spec, model, policy, iterations);

        std::filesystem::create_directories(out_dir);
        if (!star_path)
            write_file(out_dir / "star.txt", write_star_model(model));
        write_file(out_dir / "filled.fasta",
                   write_fasta({FastaRecord{outcome.result.sequence.id,
                                            outcome.result.sequence.bases}}));
        write_file(out_dir / "trace.tsv", write_trace_tsv(outcome.result.trace));
        err << "filled " << model.total_gap_columns() << " gap column(s) in "
            << outcome.result.passes << " pass(es) from iteration " << outcome.iteration
            << " (stream length " << outcome.stream_length << ")\n";
        return kOk;
    } catch (const std::exception& e) {
        return map_error(e, err);
    }
}

int cmd_check(const std::filesystem::path& fasta_path, int frame, std::ostream& out_stream,
              std::ostream& err) {
    try {
        std::vector<FastaRecord> records = read_fasta(read_file(fasta_path));
        for (const FastaRecord& record : records) {
            NucleotideSequence seq{record.header, record.bases};
            std::vector<StopHit> hits = scan_stops(seq, frame);
            std::size_t codons = (seq.bases.size() - static_cast<std::size_t>(frame)) / 3;
            out_stream << record.header << "\tframe " << frame << "\t";
            if (hits.empty()) {
                out_stream << "no stop codons\n";
                continue;
            }
            bool internal = has_internal_stop(seq, frame);
            out_stream << hits.size() << " stop codon(s):";
            for (const StopHit& hit : hits) {
                out_stream << ' ' << hit.codon << '@' << hit.codon_index;
                if (hit.codon_index + 1 == codons) out_stream << "(terminal)";
            }
            out_stream << (internal ? "\tinternal stops present" : "\tterminal stop only")
                       << '\n';
        }
        return kOk;
    } catch (const std::exception& e) {
        return map_error(e, err);
    }
}

int cmd_identity(const std::filesystem::path& fasta_path, bool tsv, std::ostream& out_stream,
                 std::ostream& err) {
    try {
        std::vector<FastaRecord> records = read_fasta(read_file(fasta_path));
        if (records.size() < 2)
            throw ValidationError("identity needs at least 2 records, got " +
                                  std::to_string(records.size()));
        NucleotideSequence first{records[0].header, records[0].bases};
        std::vector<std::pair<std::string, IdentityReport>> rows;
        for (std::size_t i = 1; i < records.size(); ++i) {
            NucleotideSequence other{records[i].header, records[i].bases};
            if (first.bases.size() == other.bases.size()) {
                rows.emplace_back(first.id + ":" + other.id + ":hamming",
                                  identity_hamming(first, other));
            }
            rows.emplace_back(first.id + ":" + other.id + ":aligned",
                              identity_aligned(first, other));
        }
        if (tsv) {
            out_stream << identity_tsv(rows);
        } else {
            for (const auto& [name, report] : rows)
                out_stream << name << ' ' << format_identity(report) << '\n';
        }
        return kOk;
    } catch (const std::exception& e) {
        return map_error(e, err);
    }
}

int cmd_pipeline(const PipelineConfig& config, std::ostream& err) {
    try {
        LSystemSpec spec = parse_spec(read_file(config.grammar_path));
        std::vector<FastaRecord> records = read_fasta(read_file(config.fasta_path));
        std::vector<NucleotideSequence> inputs = to_sequences(records);
        StarModel model = build_star(inputs);
        GapStats stats = gap_stats(model);

        FillOutcome outcome = run_fill(spec, model, config.policy, config.iterations);
        const NucleotideSequence& filled = outcome.result.sequence;

        std::vector<Violation> violations = validate_trace(
            model, outcome.result.trace, filled, ConstraintRuleTable::standard());

        std::vector<StopHit> stops = scan_stops(filled, config.frame);
        bool internal = has_internal_stop(filled, config.frame);

        std::vector<std::pair<std::string, IdentityReport>> identities;
        for (const NucleotideSequence& input : inputs)
            identities.emplace_back(input.id, identity_hamming(filled, input));

        std::ostringstream report;
        report << "inputs: " << inputs.size() << " sequences of length " << model.size() << '\n';
        report << "gap columns: " << stats.total_gap_columns << " in " << model.gap_runs.size()
               << " run(s), max run " << stats.max_run_length << '\n';
        report << "run lengths:";
        for (const auto& [length, count] : stats.histogram)
            report << ' ' << length << "bp x" << count;
        report << '\n';
        report << "iteration: " << outcome.iteration << " (stream length "
               << outcome.stream_length << ")\n";
        report << "policy: " << config.policy << '\n';
        report << "passes: " << outcome.result.passes << ", stream symbols used: "
               << outcome.result.symbols_consumed << '\n';
        report << "trace validation: " << violations.size() << " violation(s)\n";
        report << "stop scan (frame " << config.frame << "): ";
        if (stops.empty()) report << "none\n";
        else if (!internal) report << "terminal stop only\n";
        else {
            report << stops.size() << " stop codon(s) at codon index";
            for (const StopHit& hit : stops) report << ' ' << hit.codon_index;
            report << '\n';
        }
        for (const auto& [name, identity] : identities)
            report << "identity vs " << name << ": " << format_identity(identity) << '\n';

        std::filesystem::create_directories(config.out_dir);
        write_file(config.out_dir / "star.txt", write_star_model(model));
        write_file(config.out_dir / "filled.fasta",
                   write_fasta({FastaRecord{filled.id, filled.bases}}));
        write_file(config.out_dir / "trace.tsv", write_trace_tsv(outcome.result.trace));
        write_file(config.out_dir / "identity.tsv", identity_tsv(identities));
        write_file(config.out_dir / "report.txt", report.str());

        err << "pipeline complete: " << stats.total_gap_columns << " gap column(s) filled, "
            << violations.size() << " trace violation(s)\n";
        return kOk;
    } catch (const std::exception& e) {
        return map_error(e, err);
    }
}

} // namespace starfill::cli
