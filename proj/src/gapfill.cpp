#include "starfill/gapfill.hpp"

#include <algorithm>
#include <sstream>

namespace starfill {

namespace {

ContextPattern pattern4(PatternSlot prev2, PatternSlot prev1, PatternSlot next1,
                        PatternSlot next2) {
    return ContextPattern{prev2, prev1, next1, next2};
}

PatternSlot any() { return PatternSlot::wildcard(); }
PatternSlot one(std::string_view bases) { return PatternSlot::one_of(bases); }

std::vector<ConstraintRule> standard_rules() {
    using GC = GapClass;
    std::vector<ConstraintRule> r;
    // Single-gap rules: both neighbours on each side are consulted.
    r.push_back({"A1", GC::Single, pattern4(one("T"), one("A"), one("A"), one("AG")), BaseSet::of("C")});
    r.push_back({"A2", GC::Single, pattern4(one("T"), one("A"), one("G"), one("A")), BaseSet::of("C")});
    r.push_back({"A3", GC::Single, pattern4(one("T"), one("A"), one("TC"), any()), BaseSet::of("CT")});
    r.push_back({"A4", GC::Single, pattern4(one("T"), one("G"), one("A"), one("AG")), BaseSet::of("CG")});
    r.push_back({"A5", GC::Single, pattern4(one("T"), one("G"), one("G"), one("A")), BaseSet::of("CG")});
    r.push_back({"A6", GC::Single, pattern4(one("T"), one("G"), one("TC"), any()), BaseSet::of("CGT")});
    r.push_back({"A7", GC::Single, pattern4(any(), one("T"), one("A"), one("CT")), BaseSet::of("TC")});
    r.push_back({"A8", GC::Single, pattern4(any(), one("T"), one("A"), one("AG")), BaseSet::of("C")});
    r.push_back({"A9", GC::Single, pattern4(any(), one("T"), one("G"), one("A")), BaseSet::of("GC")});
    r.push_back({"A10", GC::Single, pattern4(any(), one("T"), one("G"), one("CTG")), BaseSet::of("TCG")});
    r.push_back({"A11", GC::Single, pattern4(any(), one("C"), one("A"), one("AG")), BaseSet::of("CGA")});
    r.push_back({"A12", GC::Single, pattern4(any(), one("C"), one("G"), one("A")), BaseSet::of("CGA")});
    r.push_back({"A13", GC::Single, pattern4(any(), any(), any(), any()), BaseSet::all()});
    // Multi-gap rules: only the two previous states matter.
    r.push_back({"B1", GC::Multi, pattern4(one("T"), one("A"), any(), any()), BaseSet::of("CT")});
    r.push_back({"B2", GC::Multi, pattern4(one("T"), one("G"), any(), any()), BaseSet::of("CTG")});
    r.push_back({"B3", GC::Multi, pattern4(any(), any(), any(), any()), BaseSet::all()});
    return r;
}

bool is_catch_all(const ConstraintRule& rule) {
    return rule.pattern.prev2.any && rule.pattern.prev1.any && rule.pattern.next1.any &&
           rule.pattern.next2.any;
}

std::string context_to_string(const GapContext& ctx) {
    auto show = [](std::optional<char> c) { return c ? std::string(1, *c) : std::string("."); };
    return show(ctx.prev2) + show(ctx.prev1) + "_" + show(ctx.next1) + show(ctx.next2);
}

} // namespace

ConstraintRuleTable::ConstraintRuleTable(std::vector<ConstraintRule> rules)
    : rules_(std::move(rules)) {
    bool single_total = false;
    bool multi_total = false;
    for (const ConstraintRule& rule : rules_) {
        if (rule.allowed.empty())
            throw ValidationError("rule " + rule.id + " allows no base");
        if (is_catch_all(rule)) {
            if (rule.applicability == GapClass::Single) single_total = true;
            else multi_total = true;
        }
    }
    if (!single_total)
        throw ValidationError("rule table has no catch-all single-gap rule");
    if (!multi_total)
        throw ValidationError("rule table has no catch-all multi-gap rule");
}

const ConstraintRuleTable& ConstraintRuleTable::standard() {
    static const ConstraintRuleTable table(standard_rules());
    return table;
}

const ConstraintRule& ConstraintRuleTable::match(const GapContext& ctx,
                                                 GapClass gap_class) const {
    for (const ConstraintRule& rule : rules_) {
        if (rule.applicability != gap_class) continue;
        if (rule.matches(ctx)) return rule;
    }
    throw ValidationError("no rule matched; table lacks a catch-all"); // unreachable for valid tables
}

std::pair<BaseSet, std::string> allowed_set(const GapContext& ctx, GapClass gap_class,
                                            const ConstraintRuleTable& table) {
    const ConstraintRule& rule = table.match(ctx, gap_class);
    return {rule.allowed, rule.id};
}

namespace {

// --- rule-override file -----------------------------------------------

PatternSlot parse_slot(std::string_view token, std::size_t lineno) {
    if (token == "." || token == "·") return PatternSlot::wildcard();
    std::string bases;
    if (token.starts_with('(')) {
        if (!token.ends_with(')'))
            throw ParseError("unterminated base set '" + std::string(token) + "'", lineno);
        std::string_view inner = token.substr(1, token.size() - 2);
        for (char c : inner) {
            if (c == '|' || c == ',') continue;
            if (!is_base(c))
                throw ParseError(std::string("invalid base '") + c + "' in pattern", lineno);
            bases.push_back(c);
        }
    } else {
        if (token.size() != 1 || !is_base(token[0]))
            throw ParseError("invalid pattern position '" + std::string(token) + "'", lineno);
        bases.push_back(token[0]);
    }
    if (bases.empty())
        throw ParseError("empty base set in pattern", lineno);
    return PatternSlot::one_of(bases);
}

// Splits "TA_A(A|G)" into up to two slots per side of '_'.
std::vector<std::string_view> tokenize_side(std::string_view side, std::size_t lineno) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < side.size()) {
        if (side[i] == '(') {
            std::size_t close = side.find(')', i);
            if (close == std::string_view::npos)
                throw ParseError("unterminated '(' in pattern", lineno);
            tokens.push_back(side.substr(i, close - i + 1));
            i = close + 1;
        } else if (static_cast<unsigned char>(side[i]) == 0xc2 && i + 1 < side.size() &&
                   static_cast<unsigned char>(side[i + 1]) == 0xb7) {
            tokens.push_back(side.substr(i, 2)); // UTF-8 middle dot
            i += 2;
        } else {
            tokens.push_back(side.substr(i, 1));
            i += 1;
        }
    }
    if (tokens.size() > 2)
        throw ParseError("pattern side lists more than two positions", lineno);
    return tokens;
}

ContextPattern parse_pattern(std::string_view text, std::size_t lineno) {
    ContextPattern pattern; // all wildcard
    if (text == "else") return pattern;
    std::size_t gap = text.find('_');
    if (gap == std::string_view::npos)
        throw ParseError("pattern must contain '_' for the gap (or be 'else')", lineno);
    auto prev = tokenize_side(text.substr(0, gap), lineno);
    auto next = tokenize_side(text.substr(gap + 1), lineno);
    // Previous positions are right-aligned against the gap: the last token
    // is prev1. Next positions read outward: the first token is next1.
    if (prev.size() >= 1) pattern.prev1 = parse_slot(prev.back(), lineno);
    if (prev.size() == 2) pattern.prev2 = parse_slot(prev.front(), lineno);
    if (next.size() >= 1) pattern.next1 = parse_slot(next.front(), lineno);
    if (next.size() == 2) pattern.next2 = parse_slot(next.back(), lineno);
    return pattern;
}

BaseSet parse_allowed(std::string_view text, std::size_t lineno) {
    if (!text.starts_with('{') || !text.ends_with('}'))
        throw ParseError("allowed set must be written as {C,T}", lineno);
    BaseSet set;
    for (char c : text.substr(1, text.size() - 2)) {
        if (c == ',' || c == ' ') continue;
        if (!is_base(c))
            throw ParseError(std::string("invalid base '") + c + "' in allowed set", lineno);
        set.add(c);
    }
    if (set.empty())
        throw ParseError("allowed set is empty", lineno);
    return set;
}

} // namespace

ConstraintRuleTable parse_rule_table(std::string_view text) {
    std::vector<ConstraintRule> rules;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string line(text.substr(start, end == std::string_view::npos
                                                ? std::string_view::npos
                                                : end - start));
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++lineno;

        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        // normalize the arrow so one tokenizer handles both spellings
        if (auto arrow = line.find("→"); arrow != std::string::npos)
            line.replace(arrow, 3, " -> ");

        std::istringstream is(line);
        std::string id, pattern_text, arrow, allowed_text;
        if (!(is >> id)) continue; // blank
        if (!(is >> pattern_text))
            throw ParseError("rule " + id + ": missing pattern", lineno);
        if (!(is >> arrow) || arrow != "->")
            throw ParseError("rule " + id + ": expected '->'", lineno);
        if (!(is >> allowed_text))
            throw ParseError("rule " + id + ": missing allowed set", lineno);
        std::string extra;
        if (is >> extra)
            throw ParseError("rule " + id + ": unexpected trailing text '" + extra + "'", lineno);

        ConstraintRule rule;
        rule.id = id;
        rule.applicability = id.starts_with('B') ? GapClass::Multi : GapClass::Single;
        rule.pattern = parse_pattern(pattern_text, lineno);
        rule.allowed = parse_allowed(allowed_text, lineno);
        rules.push_back(std::move(rule));
    }
    if (rules.empty()) throw ParseError("rule table is empty");
    return ConstraintRuleTable(std::move(rules));
}

std::string format_rule(const ConstraintRule& rule) {
    auto slot = [](const PatternSlot& s) -> std::string {
        if (s.any) return ".";
        std::string bases = s.set.to_string();
        if (bases.size() == 1) return bases;
        std::string out = "(";
        for (std::size_t i = 0; i < bases.size(); ++i) {
            if (i) out += '|';
            out += bases[i];
        }
        return out + ")";
    };
    std::string pattern;
    if (is_catch_all(rule)) {
        pattern = "else";
    } else {
        pattern = slot(rule.pattern.prev2) + slot(rule.pattern.prev1) + "_" +
                  slot(rule.pattern.next1) + slot(rule.pattern.next2);
    }
    std::string allowed = "{";
    std::string bases = rule.allowed.to_string();
    for (std::size_t i = 0; i < bases.size(); ++i) {
        if (i) allowed += ',';
        allowed += bases[i];
    }
    allowed += '}';
    return rule.id + " " + pattern + " -> " + allowed;
}

namespace {

// --- filling -----------------------------------------------------------

std::optional<char> observe(const std::string& state, std::size_t length, std::ptrdiff_t pos) {
    if (pos < 0 || static_cast<std::size_t>(pos) >= length) return std::nullopt;
    char c = state[static_cast<std::size_t>(pos)];
    if (c == kGap) return std::nullopt;
    return c;
}

GapContext context_at(const std::string& state, std::size_t column) {
    auto p = static_cast<std::ptrdiff_t>(column);
    return GapContext{observe(state, state.size(), p - 2), observe(state, state.size(), p - 1),
                      observe(state, state.size(), p + 1), observe(state, state.size(), p + 2)};
}

void check_policy(const FillPolicy& policy) {
    std::string order = policy.substitution_order;
    std::sort(order.begin(), order.end());
    if (order != "ACGT")
        throw ValidationError("substitution order '" + policy.substitution_order +
                              "' is not a permutation of ACGT");
}

char first_allowed(const BaseSet& allowed, const std::string& order) {
    for (char c : order)
        if (allowed.contains(c)) return c;
    return 0; // unreachable: allowed sets are non-empty
}

} // namespace

FillResult fill(const StarModel& model, SymbolSource& stream, const ConstraintRuleTable& table,
                const FillPolicy& policy) {
    check_policy(policy);

    std::string state = model.columns;
    std::vector<std::size_t> remaining;
    remaining.reserve(model.gap_runs.size());
    for (const GapRun& run : model.gap_runs) remaining.push_back(run.length);

    FillResult result;
    std::size_t stream_pos = 0; // index of the next stream symbol
    std::size_t pass = 0;
    bool incomplete = !model.gap_runs.empty();

    while (incomplete) {
        ++pass;
        incomplete = false;
        for (std::size_t r = 0; r < model.gap_runs.size(); ++r) {
            if (remaining[r] == 0) continue;
            const GapRun& run = model.gap_runs[r];

            std::size_t column = run.start;
            while (state[column] != kGap) ++column;

            GapClass gap_class = remaining[r] > 1 ? GapClass::Multi : GapClass::Single;
            GapContext ctx = context_at(state, column);
            auto [allowed, rule_id] = allowed_set(ctx, gap_class, table);

            FillEvent event;
            event.pass = pass;
            event.run_start = run.start;
            event.column = column;
            event.context = ctx;
            event.rule_id = rule_id;
            event.allowed = allowed;

            auto exhausted = [&]() {
                std::size_t left = 0;
                for (std::size_t x : remaining) left += x;
                return StreamExhaustedError(
                    "symbol stream exhausted after " + std::to_string(stream_pos) +
                    " symbols with " + std::to_string(left) + " gap column(s) unfilled (next: column " +
                    std::to_string(column) + ")");
            };

            char chosen = 0;
            switch (policy.mismatch) {
            case MismatchHandling::SkipUntilAllowed: {
                std::size_t skipped = 0;
                for (;;) {
                    std::optional<char> symbol = stream.next();
                    if (!symbol) throw exhausted();
                    std::size_t index = stream_pos++;
                    if (allowed.contains(*symbol)) {
                        event.stream_index = index;
                        event.skipped = skipped;
                        chosen = *symbol;
                        break;
                    }
                    ++skipped;
                }
                break;
            }
            case MismatchHandling::SubstituteFirstAllowed: {
                std::optional<char> symbol = stream.next();
                if (!symbol) throw exhausted();
                event.stream_index = stream_pos++;
                event.skipped = 0;
                chosen = allowed.contains(*symbol)
                             ? *symbol
                             : first_allowed(allowed, policy.substitution_order);
                break;
            }
            case MismatchHandling::FailOnMismatch: {
                std::optional<char> symbol = stream.next();
                if (!symbol) throw exhausted();
                event.stream_index = stream_pos++;
                event.skipped = 0;
                if (!allowed.contains(*symbol))
                    throw PolicyMismatchError(
                        "stream symbol '" + std::string(1, *symbol) + "' (index " +
                        std::to_string(event.stream_index) + ") is outside allowed set {" +
                        allowed.to_string() + "} at column " + std::to_string(column) +
                        ", context " + context_to_string(ctx));
                chosen = *symbol;
                break;
            }
            }

            event.chosen = chosen;
            state[column] = chosen;
            result.trace.push_back(std::move(event));
            if (--remaining[r] > 0) incomplete = true;
        }
    }

    result.sequence = NucleotideSequence{"filled", std::move(state)};
    result.symbols_consumed = stream_pos;
    result.passes = pass;
    return result;
}

std::vector<Violation> validate_trace(const StarModel& model, const FillTrace& trace,
                                      const NucleotideSequence& output,
                                      const ConstraintRuleTable& table) {
    std::vector<Violation> violations;
    auto flag = [&](std::optional<std::size_t> index, std::string message) {
        violations.push_back(Violation{index, std::move(message)});
    };

    if (model.gap_runs != derive_gap_runs(model.columns))
        flag(std::nullopt, "model gap runs do not match its columns");

    std::string state = model.columns;
    std::vector<std::size_t> filled_in_run(model.gap_runs.size(), 0);

    auto run_of = [&](std::size_t column) -> std::ptrdiff_t {
        for (std::size_t r = 0; r < model.gap_runs.size(); ++r) {
            const GapRun& run = model.gap_runs[r];
            if (column >= run.start && column < run.start + run.length)
                return static_cast<std::ptrdiff_t>(r);
        }
        return -1;
    };

    std::size_t prev_stream_index = 0;
    bool have_prev_index = false;

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const FillEvent& event = trace[i];
        std::ptrdiff_t r = run_of(event.column);
        if (r < 0) {
            flag(i, "event " + std::to_string(i) + ": column " + std::to_string(event.column) +
                        " is not a gap column of the model");
            continue;
        }
        const GapRun& run = model.gap_runs[static_cast<std::size_t>(r)];
        if (event.run_start != run.start)
            flag(i, "event " + std::to_string(i) + ": records run start " +
                        std::to_string(event.run_start) + ", expected " +
                        std::to_string(run.start));

        // Leftmost-unfilled discipline and per-run pass accounting.
        std::size_t expected_column = run.start;
        while (expected_column < run.start + run.length && state[expected_column] != kGap)
            ++expected_column;
        if (expected_column >= run.start + run.length) {
            flag(i, "event " + std::to_string(i) + ": run at " + std::to_string(run.start) +
                        " is already complete");
            continue;
        }
        if (event.column != expected_column)
            flag(i, "event " + std::to_string(i) + ": fills column " +
                        std::to_string(event.column) + " but the leftmost unfilled column is " +
                        std::to_string(expected_column));
        std::size_t expected_pass = filled_in_run[static_cast<std::size_t>(r)] + 1;
        if (event.pass != expected_pass)
            flag(i, "event " + std::to_string(i) + ": records pass " + std::to_string(event.pass) +
                        ", expected " + std::to_string(expected_pass));

        std::size_t unfilled = 0;
        for (std::size_t c = run.start; c < run.start + run.length; ++c)
            if (state[c] == kGap) ++unfilled;
        GapClass gap_class = unfilled > 1 ? GapClass::Multi : GapClass::Single;

        GapContext ctx = context_at(state, event.column);
        if (ctx != event.context)
            flag(i, "event " + std::to_string(i) + ": recorded context " +
                        context_to_string(event.context) + " differs from replay context " +
                        context_to_string(ctx));

        auto [allowed, rule_id] = allowed_set(ctx, gap_class, table);
        if (rule_id != event.rule_id)
            flag(i, "event " + std::to_string(i) + ": recorded rule " + event.rule_id +
                        " but " + rule_id + " matches first");
        if (allowed != event.allowed)
            flag(i, "event " + std::to_string(i) + ": recorded allowed set {" +
                        event.allowed.to_string() + "} differs from {" + allowed.to_string() + "}");
        if (!allowed.contains(event.chosen))
            flag(i, "event " + std::to_string(i) + ": chosen base '" +
                        std::string(1, event.chosen) + "' is outside allowed set {" +
                        allowed.to_string() + "}");

        if (have_prev_index && event.stream_index <= prev_stream_index)
            flag(i, "event " + std::to_string(i) + ": stream index " +
                        std::to_string(event.stream_index) + " does not increase (previous " +
                        std::to_string(prev_stream_index) + ")");
        std::size_t expected_index = have_prev_index ? prev_stream_index + 1 + event.skipped
                                                     : event.skipped;
        if (event.stream_index != expected_index)
            flag(i, "event " + std::to_string(i) + ": stream index " +
                        std::to_string(event.stream_index) + " is inconsistent with " +
                        std::to_string(event.skipped) + " skipped symbol(s), expected " +
                        std::to_string(expected_index));
        prev_stream_index = event.stream_index;
        have_prev_index = true;

        if (event.chosen != 0 && is_base(event.chosen) && state[event.column] == kGap) {
            state[event.column] = event.chosen;
            filled_in_run[static_cast<std::size_t>(r)] += 1;
        } else if (!is_base(event.chosen)) {
            flag(i, "event " + std::to_string(i) + ": chosen '" + std::string(1, event.chosen) +
                        "' is not a nucleotide");
        }
    }

    if (state.find(kGap) != std::string::npos)
        flag(std::nullopt, "trace ends with unfilled gap column(s)");
    if (output.bases.size() != model.columns.size())
        flag(std::nullopt, "output length " + std::to_string(output.bases.size()) +
                               " differs from model width " +
                               std::to_string(model.columns.size()));
    else {
        for (std::size_t c = 0; c < model.columns.size(); ++c) {
            if (model.columns[c] != kGap && output.bases[c] != model.columns[c]) {
                flag(std::nullopt, "consensus altered at column " + std::to_string(c));
                break;
            }
        }
        if (state != output.bases)
            flag(std::nullopt, "replayed sequence differs from the claimed output");
    }
    return violations;
}

} // namespace starfill
