#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "starfill/cli.hpp"

using namespace starfill;

int main(int argc, char** argv) {
    CLI::App app{"L-system star-model gap-filling toolkit"};
    app.require_subcommand(1);

    std::string grammar, fasta, star, out, policy = "skip";
    unsigned n = 0;
    std::optional<unsigned> iterations;
    int frame = 0;
    bool tsv = false;

    auto* expand = app.add_subcommand("expand", "expand a grammar n times, write FASTA");
    expand->add_option("--grammar", grammar, "grammar file")->required();
    expand->add_option("-n,--iterations", n, "iteration count")->required();
    expand->add_option("--out", out, "output file ('-' for stdout)");

    auto* star_cmd = app.add_subcommand("star", "build a star model from aligned FASTA");
    star_cmd->add_option("--fasta", fasta, "aligned sequences")->required();
    star_cmd->add_option("--out", out, "output file ('-' for stdout)");

    auto* fill = app.add_subcommand("fill", "fill star-model gaps from the grammar stream");
    fill->add_option("--grammar", grammar, "grammar file")->required();
    fill->add_option("--star", star, "star-model file");
    fill->add_option("--fasta", fasta, "aligned sequences (alternative to --star)");
    fill->add_option("--policy", policy, "skip | substitute | fail");
    fill->add_option("--iterations", iterations, "fixed iteration (default: smallest covering)");
    fill->add_option("--out", out, "output directory")->required();

    auto* check = app.add_subcommand("check", "scan FASTA records for in-frame stop codons");
    check->add_option("--fasta", fasta, "sequences")->required();
    check->add_option("--frame", frame, "reading frame")->check(CLI::Range(0, 2));

    auto* identity = app.add_subcommand("identity", "first record vs the rest");
    identity->add_option("--fasta", fasta, "sequences")->required();
    identity->add_flag("--tsv", tsv, "TSV output");

    auto* pipeline = app.add_subcommand("pipeline", "star -> fill -> validate, end to end");
    pipeline->add_option("--grammar", grammar, "grammar file")->required();
    pipeline->add_option("--fasta", fasta, "aligned sequences")->required();
    pipeline->add_option("--policy", policy, "skip | substitute | fail");
    pipeline->add_option("--iterations", iterations, "fixed iteration");
    pipeline->add_option("--frame", frame, "reading frame")->check(CLI::Range(0, 2));
    pipeline->add_option("--out", out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kParseError;
    }

    auto opt_path = [](const std::string& value) -> std::optional<std::filesystem::path> {
        if (value.empty()) return std::nullopt;
        return std::filesystem::path(value);
    };

    if (expand->parsed()) return cli::cmd_expand(grammar, n, out, std::cout, std::cerr);
    if (star_cmd->parsed()) return cli::cmd_star(fasta, out, std::cout, std::cerr);
    if (fill->parsed())
        return cli::cmd_fill(grammar, opt_path(star), opt_path(fasta), policy, iterations, out,
                             std::cerr);
    if (check->parsed()) return cli::cmd_check(fasta, frame, std::cout, std::cerr);
    if (identity->parsed()) return cli::cmd_identity(fasta, tsv, std::cout, std::cerr);
    if (pipeline->parsed()) {
        cli::PipelineConfig config;
        config.grammar_path = grammar;
        config.fasta_path = fasta;
        config.policy = policy;
        config.iterations = iterations;
        config.frame = frame;
        config.out_dir = out;
        return cli::cmd_pipeline(config, std::cerr);
    }
    return cli::kParseError;
}
