#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starfill/bases.hpp"
#include "starfill/errors.hpp"
#include "starfill/grammar.hpp"
#include "starfill/starmodel.hpp"

namespace starfill {

/// Whether a rule applies while its run still has several unfilled columns
/// (Multi) or exactly one (Single).
enum class GapClass { Single, Multi };

/// One slot of a context pattern. A wildcard slot matches anything,
/// including a missing neighbour; a base-set slot matches only a position
/// that exists, is already filled, and holds one of its bases.
struct PatternSlot {
    bool any = true;
    BaseSet set;

    static PatternSlot wildcard() { return PatternSlot{}; }
    static PatternSlot one_of(std::string_view bases) {
        return PatternSlot{false, BaseSet::of(bases)};
    }

    bool matches(std::optional<char> observed) const {
        if (any) return true;
        return observed.has_value() && set.contains(*observed);
    }
};

/// Context window around a gap: two positions to its left (prev2, prev1)
/// and two to its right (next1, next2), innermost first on each side.
struct ContextPattern {
    PatternSlot prev2, prev1, next1, next2;
};

/// The observed neighbourhood of a gap column at fill time. A position is
/// nullopt when it lies outside the sequence or is itself an unfilled gap.
struct GapContext {
    std::optional<char> prev2, prev1, next1, next2;

    bool operator==(const GapContext&) const = default;
};

/// One first-match rewrite constraint: when `pattern` matches the gap's
/// context, the fill must come from `allowed`.
struct ConstraintRule {
    std::string id;
    GapClass applicability = GapClass::Single;
    ContextPattern pattern;
    BaseSet allowed;

    bool matches(const GapContext& ctx) const {
        return pattern.prev2.matches(ctx.prev2) && pattern.prev1.matches(ctx.prev1) &&
               pattern.next1.matches(ctx.next1) && pattern.next2.matches(ctx.next2);
    }
};

/// Ordered rule list, evaluated first-match within a gap class. Every class
/// must end in a catch-all so lookup is total; standard() carries the
/// built-in table (single-gap rules A1..A13, multi-gap rules B1..B3).
class ConstraintRuleTable {
public:
    static const ConstraintRuleTable& standard();

    /// Throws ValidationError unless each gap class has a rule with an
    /// all-wildcard pattern and a non-empty allowed set on every rule.
    explicit ConstraintRuleTable(std::vector<ConstraintRule> rules);

    const std::vector<ConstraintRule>& rules() const { return rules_; }

    /// First rule of `gap_class` whose pattern matches.
    const ConstraintRule& match(const GapContext& ctx, GapClass gap_class) const;

private:
    std::vector<ConstraintRule> rules_;
};

/// Allowed bases for a gap with the given context, plus the id of the rule
/// that fired. Total: the catch-all always matches.
std::pair<BaseSet, std::string> allowed_set(const GapContext& ctx, GapClass gap_class,
                                            const ConstraintRuleTable& table);

/// Parses a rule-override file, one rule per line:
///
///     A1  TA_A(A|G) -> {C}
///     A13 else      -> {A,C,G,T}
///     B1  TA_       -> {C,T}
///
/// Pattern: positions left of `_` are prev2,prev1 (right-aligned), positions
/// right of `_` are next1,next2; each is a base, a set `(A|G)`, or a
/// wildcard `.`; omitted trailing/leading positions are wildcards; `else`
/// is all-wildcard. Rule ids starting with 'B' are multi-gap, all others
/// single-gap. `#` starts a comment.
ConstraintRuleTable parse_rule_table(std::string_view text);

/// One rule in the override-file syntax (round-trips through parse_rule_table).
std::string format_rule(const ConstraintRule& rule);

/// What to do when the next stream symbol is outside the allowed set.
enum class MismatchHandling {
    SkipUntilAllowed,       // advance past disallowed symbols, counting them
    SubstituteFirstAllowed, // consume one symbol; emit first allowed by priority
    FailOnMismatch,         // raise PolicyMismatchError
};

struct FillPolicy {
    MismatchHandling mismatch = MismatchHandling::SkipUntilAllowed;
    std::string substitution_order = "CTGA"; // permutation of ACGT
};

/// Audit record of one fill: where, under which rule, from which stream
/// position, and what was written.
struct FillEvent {
    std::size_t pass = 0;      // 1-based pass number
    std::size_t run_start = 0; // start column of the gap run
    std::size_t column = 0;    // filled column
    GapContext context;        // snapshot at fill time
    std::string rule_id;
    BaseSet allowed;
    std::size_t stream_index = 0; // index of the consumed stream symbol
    std::size_t skipped = 0;      // symbols passed over before consuming
    char chosen = 0;
};

using FillTrace = std::vector<FillEvent>;

struct FillResult {
    NucleotideSequence sequence;
    FillTrace trace;
    std::size_t symbols_consumed = 0; // consumed + skipped stream symbols
    std::size_t passes = 0;
};

/// Fills every gap of `model` from `stream`, one column per gap run per
/// pass, until no gap remains.
///
/// Within each pass the runs are visited left to right and the leftmost
/// unfilled column of each run receives one base: under the multi-gap rules
/// while more than one column of the run is unfilled, under the single-gap
/// rules when exactly one remains. Context is read from the current state,
/// so earlier fills are visible to later ones. The base comes from the
/// stream according to `policy`.
///
/// Throws StreamExhaustedError when the stream ends early and
/// PolicyMismatchError under FailOnMismatch.
FillResult fill(const StarModel& model, SymbolSource& stream,
                const ConstraintRuleTable& table = ConstraintRuleTable::standard(),
                const FillPolicy& policy = {});

struct Violation {
    std::optional<std::size_t> event_index; // absent for whole-output findings
    std::string message;
};

/// Independent replay check of a claimed fill result. Reconstructs the fill
/// from the model and the trace alone: re-derives each event's run, pass
/// number, leftmost-unfilled column, context, matching rule and allowed set,
/// checks the chosen base and stream ordering, and finally compares the
/// replayed sequence against `output` (consensus columns included).
/// Returns all violations found; empty means consistent.
std::vector<Violation> validate_trace(const StarModel& model, const FillTrace& trace,
                                      const NucleotideSequence& output,
                                      const ConstraintRuleTable& table);

} // namespace starfill
