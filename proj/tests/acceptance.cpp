// Acceptance suite. Prints one verdict line per criterion; the process exit
// code is the number of failed criteria, so a fully green run exits 0.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "starfill/cli.hpp"
#include "starfill/gapfill.hpp"
#include "starfill/grammar.hpp"
#include "starfill/seqcheck.hpp"
#include "starfill/seqio.hpp"
#include "starfill/starmodel.hpp"

#include "alignment_oracle.hpp"
#include "helpers.hpp"

using namespace starfill;
namespace fs = std::filesystem;

namespace {

// Every tolerance the suite applies, pinned in one place.
constexpr double kTwoStepLimitMs = 1.0;     // criterion 1
constexpr double kFifthLimitMs = 1.0;       // criterion 2
constexpr double kLawsLimitMs = 1000.0;     // criterion 3
constexpr double kPropertyLimitMs = 30000.0;// criterion 5
constexpr double kOracleLimitMs = 10000.0;  // criterion 8
constexpr double kPerfLimitMs = 1000.0;     // criterion 11
constexpr std::size_t kPropertyModels = 1000;
constexpr std::size_t kModelColumns = 936;
constexpr std::size_t kModelMismatches = 108;
constexpr unsigned kPerfIteration = 12;
constexpr std::size_t kPerfLength = 531441; // 3^12

// Frozen transcription of the assembled 926 bp sequence, exactly as
// published; the 936-column claim about it is asserted by criterion 6.
const std::string kAssembled =
    "ATGGATGGAGCCAACCAGAGTGAGTCCTCACAGTTCCTTCTCCTGGGGATGTCAGAGAGT"
    "CCTGAGCAGCAGCAGATCCTGTTTTGGATGTTCTGTCCATGTACCTGGTCACGGTGTGGG"
    "AAATGTGCTCATCATCTGGCCATCAGCTCTGATTCCCCCTGCACACCCCCGTGTACTTCT"
    "TCCTGGCCAACCTCTCCTTCACTGACCTCTTCTTTGTACCAACACAATCCCCAAGATGCT"
    "GGTGAACCTCCAGTCCCAGAACAAGCCATCTCCTATGCAGGGTGTCTGACACAGCTCTAC"
    "TTCCTGGTCTCCTTGGTGACCCTGGACAACCTCATCCTGGCCGTGATGGCCTATGATCGC"
    "TATGTGGCCAGCTGCTGCCCCCTCCACTACGCCACAGCCATGAGCCCTGCGCTCTGTCTC"
    "TTCTCCTGTCCTTGTGTTGGGCGCTGTCAGTCCTCTATGGCCTCCTGCCACCGTCCTCAT"
    "GACCAGCGTGACCTTCTGTGGGCCTCGAGACATCCACTACGTCTTCTGTGACATGTACCT"
    "GGTGCTGCGGTTGGCATGTTCCAACAGCCACATGAATCACACAGCGCTGATTGCCACGGG"
    "CTGCTTCATCTTCTCACTCCCTTGGGATTCCTGACCAGGTCTATGTCCCCATTGTCAGAC"
    "CCATCCTGGGAATACCCTCCGCCTCTAAGAAATACAAAGCCTTCTCCACCTGTGCCTCCC"
    "ATTTGGGTGGAGTCTCCCTCTTATATGGGACCTTCTCTATGGTTTACCTGGAGCCCCTCC"
    "ATACCTACTCCCTGAAGGACTCAGTAGCCACAGTGATGTATGCTGTGGTGACACCCATGA"
    "TGAACCCGTTTCATCTACAGCCTGAGGAACAAGGACATGCATGGGGCTCAGGAAGACTCC"
    "TACGCAGACCCTTTGAGAGGCAAACA";

struct Verdict {
    int id = 0;
    bool pass = false;
    std::string label;
    std::string detail;
};

void expect(std::vector<std::string>& problems, bool ok, std::string message) {
    if (!ok && problems.size() < 6) problems.push_back(std::move(message));
}

template <typename F>
double best_of_ms(int reps, F&& body) {
    double best = 1e18;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        body();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

std::string ms_str(double ms) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), ms < 10 ? "%.3f ms" : "%.1f ms", ms);
    return buffer;
}

std::string timed_detail(double ms, double limit) {
    return "best " + ms_str(ms) + ", limit " + ms_str(limit);
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const std::string& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

} // namespace

int main() {
    const LSystemSpec& spec = testutil::base_spec();
    std::vector<Verdict> verdicts;
    bool frozen_check_executed = false; // criterion 6 ran to a verdict

    auto run = [&](int id, std::string label, auto&& body) {
        std::vector<std::string> problems;
        std::string detail;
        try {
            detail = body(problems);
        } catch (const std::exception& e) {
            expect(problems, false, std::string("exception: ") + e.what());
        }
        Verdict v;
        v.id = id;
        v.pass = problems.empty();
        v.label = std::move(label);
        v.detail = v.pass ? detail : join(problems);
        verdicts.push_back(std::move(v));
    };

    run(1, "expansions n=1 and n=2 are CCA and CCACCACTG", [&](auto& problems) {
        std::string one, two;
        double ms = best_of_ms(5, [&] {
            one = expand(spec, 1);
            two = expand(spec, 2);
        });
        expect(problems, one == "CCA", "expand(1) = " + one);
        expect(problems, two == "CCACCACTG", "expand(2) = " + two);
        expect(problems, ms < kTwoStepLimitMs, "took " + ms_str(ms));
        return timed_detail(ms, kTwoStepLimitMs);
    });

    run(2, "expansion n=5 matches the frozen 243 bp sequence", [&](auto& problems) {
        std::string fifth;
        double ms = best_of_ms(5, [&] { fifth = expand(spec, 5); });
        expect(problems, fifth.size() == 243,
               "length " + std::to_string(fifth.size()) + " (expected 243)");
        expect(problems, fifth == testutil::kFifthExpansion, "bytes differ from transcription");
        expect(problems, ms < kFifthLimitMs, "took " + ms_str(ms));
        return timed_detail(ms, kFifthLimitMs);
    });

    run(3, "length 3^n and prefix laws hold for n = 0..10", [&](auto& problems) {
        double ms = best_of_ms(1, [&] {
            std::string prev = expand(spec, 0);
            std::size_t power = 1;
            for (unsigned n = 0; n <= 10; ++n) {
                expect(problems, prev.size() == power,
                       "|expand(" + std::to_string(n) + ")| = " + std::to_string(prev.size()) +
                           " (expected " + std::to_string(power) + ")");
                std::string next = expand(spec, n + 1);
                expect(problems, next.compare(0, prev.size(), prev) == 0,
                       "expand(" + std::to_string(n) + ") is not a prefix of the next step");
                prev = std::move(next);
                power *= 3;
            }
        });
        expect(problems, ms < kLawsLimitMs, "took " + ms_str(ms));
        return timed_detail(ms, kLawsLimitMs);
    });

    run(4, "the 16 constraint rules yield their documented allowed sets", [&](auto& problems) {
        struct RuleCheck {
            const char* id;
            GapClass cls;
            std::optional<char> p2, p1, n1, n2;
            const char* allowed;
        };
        const RuleCheck checks[] = {
            {"A1", GapClass::Single, 'T', 'A', 'A', 'A', "C"},
            {"A2", GapClass::Single, 'T', 'A', 'G', 'A', "C"},
            {"A3", GapClass::Single, 'T', 'A', 'T', 'G', "CT"},
            {"A4", GapClass::Single, 'T', 'G', 'A', 'A', "CG"},
            {"A5", GapClass::Single, 'T', 'G', 'G', 'A', "CG"},
            {"A6", GapClass::Single, 'T', 'G', 'C', 'T', "CGT"},
            {"A7", GapClass::Single, 'C', 'T', 'A', 'C', "CT"},
            {"A8", GapClass::Single, 'C', 'T', 'A', 'G', "C"},
            {"A9", GapClass::Single, 'A', 'T', 'G', 'A', "CG"},
            {"A10", GapClass::Single, 'G', 'T', 'G', 'G', "CGT"},
            {"A11", GapClass::Single, 'A', 'C', 'A', 'A', "ACG"},
            {"A12", GapClass::Single, 'T', 'C', 'G', 'A', "ACG"},
            {"A13", GapClass::Single, 'A', 'A', 'A', 'A', "ACGT"},
            {"B1", GapClass::Multi, 'T', 'A', std::nullopt, std::nullopt, "CT"},
            {"B2", GapClass::Multi, 'T', 'G', std::nullopt, std::nullopt, "CTG"},
            {"B3", GapClass::Multi, 'C', 'C', std::nullopt, std::nullopt, "ACGT"},
        };
        const ConstraintRuleTable& table = ConstraintRuleTable::standard();
        for (const RuleCheck& check : checks) {
            GapContext ctx{check.p2, check.p1, check.n1, check.n2};
            auto [allowed, id] = allowed_set(ctx, check.cls, table);
            expect(problems, id == check.id,
                   std::string(check.id) + ": rule " + id + " fired instead");
            expect(problems, allowed == BaseSet::of(check.allowed),
                   std::string(check.id) + ": allowed {" + allowed.to_string() +
                       "} (expected {" + check.allowed + "})");
        }
        return std::string("16 canonical contexts checked");
    });

    run(5, "fill properties hold on 1000 randomized star models", [&](auto& problems) {
        std::size_t columns_filled = 0;
        double ms = best_of_ms(1, [&] {
            for (std::uint32_t seed = 1; seed <= kPropertyModels; ++seed) {
                const std::string tag = "seed " + std::to_string(seed) + ": ";
                testutil::Trio trio = testutil::random_trio(seed);
                StarModel model = build_star(trio.inputs);
                expect(problems, model.columns == trio.gapped,
                       tag + "consensus disagrees with the generator");
                GapStats stats = gap_stats(model);
                std::size_t gaps = model.total_gap_columns();

                // Skipped symbols are not refunded, so stream past the gap
                // count; every allowed set contains C and the expansions
                // never run more than a few symbols without one.
                LazyExpansion stream(spec, gaps * 8 + 16);
                FillResult result = fill(model, stream);

                expect(problems, result.sequence.bases.find(kGap) == std::string::npos,
                       tag + "output incomplete");
                bool consensus_kept = true;
                for (std::size_t i = 0; i < model.size(); ++i)
                    if (model.columns[i] != kGap &&
                        result.sequence.bases[i] != model.columns[i])
                        consensus_kept = false;
                expect(problems, consensus_kept, tag + "consensus column changed");

                bool chosen_ok = true, increasing = true;
                std::optional<std::size_t> prev_index;
                for (const FillEvent& event : result.trace) {
                    if (!event.allowed.contains(event.chosen)) chosen_ok = false;
                    if (prev_index && event.stream_index <= *prev_index) increasing = false;
                    prev_index = event.stream_index;
                }
                expect(problems, chosen_ok, tag + "chosen base outside its allowed set");
                expect(problems, increasing, tag + "stream indices not strictly increasing");
                expect(problems, result.trace.size() == gaps,
                       tag + "trace length != gap count");
                expect(problems, result.passes == stats.max_run_length,
                       tag + "passes " + std::to_string(result.passes) + " != max run " +
                           std::to_string(stats.max_run_length));

                std::vector<Violation> violations = validate_trace(
                    model, result.trace, result.sequence, ConstraintRuleTable::standard());
                expect(problems, violations.empty(),
                       tag + std::to_string(violations.size()) + " trace violation(s)" +
                           (violations.empty() ? "" : ": " + violations.front().message));
                columns_filled += gaps;
            }
        });
        expect(problems, ms < kPropertyLimitMs, "took " + ms_str(ms));
        return std::to_string(kPropertyModels) + " models, " +
               std::to_string(columns_filled) + " gap columns filled, " +
               timed_detail(ms, kPropertyLimitMs);
    });

    run(6, "assembled sequence spans all 936 model columns with frame 0 open",
        [&](auto& problems) {
            NucleotideSequence assembled = make_sequence("assembled", kAssembled);
            std::vector<StopHit> hits = scan_stops(assembled, 0);
            bool internal = has_internal_stop(assembled, 0);
            frozen_check_executed = true;

            expect(problems, assembled.size() == kModelColumns,
                   "length " + std::to_string(assembled.size()) + " (expected " +
                       std::to_string(kModelColumns) + ")");
            if (internal) {
                std::size_t codons = assembled.size() / 3;
                std::string indices;
                std::size_t count = 0;
                for (const StopHit& hit : hits)
                    if (hit.codon_index + 1 < codons) {
                        indices += ' ' + std::to_string(hit.codon_index);
                        ++count;
                    }
                expect(problems, false,
                       std::to_string(count) + " internal frame-0 stop(s) at codon index" +
                           indices);
            }
            return std::string("length and frame-0 stop scan checked");
        });

    run(7, "108 mismatches in 936 columns report identity 0.8846", [&](auto& problems) {
        std::string a(kModelColumns, 'A');
        std::string b = a;
        for (std::size_t i = 0; i < kModelMismatches; ++i) b[i] = 'C';
        IdentityReport report =
            identity_hamming(make_sequence("a", a), make_sequence("b", b));
        expect(problems, report.matches == kModelColumns - kModelMismatches,
               "matches " + std::to_string(report.matches));
        expect(problems, report.compared == kModelColumns,
               "compared " + std::to_string(report.compared));
        expect(problems,
               report.fraction == static_cast<double>(kModelColumns - kModelMismatches) /
                                      static_cast<double>(kModelColumns),
               "fraction is not the exact quotient");
        std::string formatted = format_identity(report);
        expect(problems, formatted == "matches=828 compared=936 fraction=0.8846",
               "formatted as '" + formatted + "'");
        return std::string("828/936 = 0.8846 exact");
    });

    run(8, "aligned identity matches the exhaustive oracle on short pairs",
        [&](auto& problems) {
            const std::vector<std::string> corpus = {
                "A",    "C",    "G",    "T",    "AC",    "CT",     "GA",    "ACG",
                "GCA",  "TTT",  "ACGT", "TGCA", "AACC",  "CCAAC",  "ACGTAC", "GATTAC"};
            std::size_t pairs = 0;
            double ms = best_of_ms(1, [&] {
                pairs = 0;
                for (const std::string& s : corpus) {
                    for (const std::string& t : corpus) {
                        testutil::OracleAlignment oracle = testutil::oracle_align(s, t);
                        IdentityReport report = identity_aligned(make_sequence("s", s),
                                                                 make_sequence("t", t));
                        bool same = report.matches == oracle.matches &&
                                    report.compared == oracle.length;
                        expect(problems, same, s + " vs " + t + ": got " +
                                                   std::to_string(report.matches) + "/" +
                                                   std::to_string(report.compared) +
                                                   ", oracle " +
                                                   std::to_string(oracle.matches) + "/" +
                                                   std::to_string(oracle.length));
                        ++pairs;
                    }
                }
            });
            expect(problems, pairs >= 200,
                   "only " + std::to_string(pairs) + " pairs covered");
            expect(problems, ms < kOracleLimitMs, "took " + ms_str(ms));
            return std::to_string(pairs) + " ordered pairs, " +
                   timed_detail(ms, kOracleLimitMs);
        });

    run(9, "pipeline artifacts are deterministic and formats round-trip",
        [&](auto& problems) {
            fs::path dir = fs::temp_directory_path() / "starfill_acceptance";
            fs::remove_all(dir);
            fs::create_directories(dir);

            testutil::Trio trio = testutil::make_trio(
                testutil::kFifthExpansion.substr(0, 60),
                {{3, 1}, {10, 2}, {20, 3}, {30, 4}, {40, 1}, {50, 2}});
            std::vector<FastaRecord> records;
            for (const NucleotideSequence& input : trio.inputs)
                records.push_back({input.id, input.bases});
            write_file(dir / "inputs.fasta", write_fasta(records));
            write_file(dir / "grammar.txt", testutil::kGrammarText);

            cli::PipelineConfig config;
            config.grammar_path = dir / "grammar.txt";
            config.fasta_path = dir / "inputs.fasta";
            config.out_dir = dir / "run1";
            std::ostringstream sink;
            int rc1 = cli::cmd_pipeline(config, sink);
            config.out_dir = dir / "run2";
            int rc2 = cli::cmd_pipeline(config, sink);
            expect(problems, rc1 == 0 && rc2 == 0,
                   "pipeline exit codes " + std::to_string(rc1) + ", " + std::to_string(rc2));

            const char* names[] = {"star.txt", "filled.fasta", "trace.tsv", "identity.tsv",
                                   "report.txt"};
            for (const char* name : names) {
                if (rc1 != 0 || rc2 != 0) break;
                expect(problems,
                       read_file(dir / "run1" / name) == read_file(dir / "run2" / name),
                       std::string(name) + " differs between runs");
            }

            if (rc1 == 0) {
                std::string fasta_text = read_file(dir / "run1" / "filled.fasta");
                expect(problems, write_fasta(read_fasta(fasta_text)) == fasta_text,
                       "FASTA round trip not byte-stable");
                std::string star_text = read_file(dir / "run1" / "star.txt");
                expect(problems, write_star_model(read_star_model(star_text)) == star_text,
                       "star-model round trip not byte-stable");
                std::string trace_text = read_file(dir / "run1" / "trace.tsv");
                expect(problems, write_trace_tsv(read_trace_tsv(trace_text)) == trace_text,
                       "trace round trip not byte-stable");
            }
            return std::string("5 artifacts byte-identical across runs; 3 formats round-trip");
        });

    run(10, "substitute checks cover the unreproducible full-model regeneration",
        [&](auto& problems) {
            // The 936-column model itself is not available as data, so there
            // is no golden end-to-end target; the rule-table checks (4), the
            // randomized fill properties (5) and the frozen-sequence check
            // (6) stand in for it.
            bool rule_table_ok = false, properties_ok = false;
            for (const Verdict& v : verdicts) {
                if (v.id == 4) rule_table_ok = v.pass;
                if (v.id == 5) properties_ok = v.pass;
            }
            expect(problems, rule_table_ok, "rule-table criterion 4 did not pass");
            expect(problems, properties_ok, "property criterion 5 did not pass");
            expect(problems, frozen_check_executed,
                   "frozen-sequence criterion 6 did not execute");
            return std::string("criteria 4 and 5 passed, criterion 6 executed");
        });

    run(11, "expansion to n=12 stays within the guard and under 1 s", [&](auto& problems) {
        expect(problems, expansion_length(spec, kPerfIteration) == kPerfLength,
               "computed length differs from 3^12");
        std::string big;
        double ms = best_of_ms(3, [&] { big = expand(spec, kPerfIteration); });
        expect(problems, big.size() == kPerfLength,
               "expanded length " + std::to_string(big.size()));
        expect(problems, ms < kPerfLimitMs, "took " + ms_str(ms));
        return std::to_string(kPerfLength) + " symbols, " + timed_detail(ms, kPerfLimitMs);
    });

    int failed = 0;
    for (const Verdict& v : verdicts) {
        std::string suffix = v.detail.empty() ? "" : " (" + v.detail + ")";
        std::printf("criterion %2d %s  %s%s\n", v.id, v.pass ? "PASS" : "FAIL",
                    v.label.c_str(), suffix.c_str());
        if (!v.pass) ++failed;
    }
    std::printf("acceptance: %d of %zu criteria passed, %d failed\n",
                static_cast<int>(verdicts.size()) - failed, verdicts.size(), failed);
    return failed;
}
