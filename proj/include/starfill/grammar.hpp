#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starfill/errors.hpp"

namespace starfill {

/// Default output-length cap for expansions (2^26 symbols).
inline constexpr std::size_t kDefaultExpansionCap = std::size_t{1} << 26;

/// A deterministic context-free (D0L) rewriting system: every symbol of the
/// current string is replaced simultaneously by its production at each
/// iteration. All symbols in the axiom and in every replacement must belong
/// to the alphabet, and every alphabet symbol has exactly one production.
struct LSystemSpec {
    std::string alphabet;                   // declaration order, unique
    std::string axiom;                      // non-empty
    std::map<char, std::string> productions; // total over alphabet, non-empty RHS

    const std::string& production(char symbol) const { return productions.at(symbol); }
};

/// Outcome summary of one expansion; `sequence` is absent when the caller
/// only streamed or measured the result.
struct ExpansionReport {
    unsigned iteration = 0;
    std::size_t length = 0;
    std::optional<std::string> sequence;
};

/// Parses the line-oriented grammar-file format:
///
///     # comment
///     alphabet: A C G T
///     axiom: C
///     A -> CTG
///
/// `#` starts a comment anywhere on a line; blank lines are ignored.
/// Throws ParseError (with 1-based line/column) on malformed syntax,
/// duplicate rules, symbols outside the alphabet, a missing axiom, or a
/// missing production for some alphabet symbol.
LSystemSpec parse_spec(std::string_view text);

/// Serializes a spec back to the grammar-file format.
std::string format_spec(const LSystemSpec& spec);

/// Applies all productions simultaneously `n` times to the axiom.
/// expand(spec, 0) returns the axiom. Throws ExpansionLimitError when the
/// result (or any intermediate string) would exceed `cap` symbols.
std::string expand(const LSystemSpec& spec, unsigned n,
                   std::size_t cap = kDefaultExpansionCap);

/// Length of expand(spec, n) without materializing the string.
std::size_t expansion_length(const LSystemSpec& spec, unsigned n,
                             std::size_t cap = kDefaultExpansionCap);

ExpansionReport expand_report(const LSystemSpec& spec, unsigned n,
                              bool with_sequence = true,
                              std::size_t cap = kDefaultExpansionCap);

/// Single-consumer source of symbols. next() returns one symbol at a time
/// and std::nullopt once the source is exhausted.
class SymbolSource {
public:
    virtual ~SymbolSource() = default;
    virtual std::optional<char> next() = 0;
};

/// Fixed-string source, mainly for tests and replays.
class StringSource final : public SymbolSource {
public:
    explicit StringSource(std::string symbols) : symbols_(std::move(symbols)) {}

    std::optional<char> next() override {
        if (pos_ >= symbols_.size()) return std::nullopt;
        return symbols_[pos_++];
    }

private:
    std::string symbols_;
    std::size_t pos_ = 0;
};

/// Lazily yields the symbols of expand(spec, n*) where n* is the smallest
/// iteration whose length reaches `min_length`. Only one production string
/// per nesting level is held in memory; the full expansion is never
/// materialized. The spec must outlive the stream.
///
/// Throws StreamExhaustedError at construction when the system can never
/// grow to `min_length` (length fixed point or cycle), and
/// ExpansionLimitError when the selected iteration would exceed `cap`.
class LazyExpansion final : public SymbolSource {
public:
    LazyExpansion(const LSystemSpec& spec, std::size_t min_length,
                  std::size_t cap = kDefaultExpansionCap);

    std::optional<char> next() override;

    /// The selected iteration n*.
    unsigned iteration() const { return iteration_; }
    /// |expand(spec, n*)| — total symbols this stream will yield.
    std::size_t target_length() const { return target_length_; }
    /// Symbols yielded so far.
    std::size_t position() const { return emitted_; }

    ExpansionReport report() const {
        return ExpansionReport{iteration_, target_length_, std::nullopt};
    }

private:
    struct Frame {
        const std::string* text;
        std::size_t pos;
    };

    const LSystemSpec* spec_;
    unsigned iteration_ = 0;
    std::size_t target_length_ = 0;
    std::size_t emitted_ = 0;
    std::vector<Frame> stack_;
};

} // namespace starfill
