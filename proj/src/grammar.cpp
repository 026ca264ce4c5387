#include "starfill/grammar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace starfill {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

struct LineCursor {
    std::string_view text;
    std::size_t lineno; // 1-based

    std::size_t column_of(std::string_view token) const {
        // token must point into text
        return static_cast<std::size_t>(token.data() - text.data()) + 1;
    }
};

// Total length after applying the productions to the current per-symbol
// counts; detects cap breaches before anything is materialized.
class LengthSimulator {
public:
    LengthSimulator(const LSystemSpec& spec, std::size_t cap)
        : spec_(&spec), cap_(cap) {
        for (char c : spec.axiom) counts_[c] += 1;
        length_ = spec.axiom.size();
        check_cap();
    }

    std::size_t length() const { return length_; }

    void step() {
        std::map<char, unsigned long long> next;
        unsigned __int128 total = 0;
        for (const auto& [symbol, count] : counts_) {
            for (char t : spec_->production(symbol)) {
                next[t] += count;
            }
            total += static_cast<unsigned __int128>(count) * spec_->production(symbol).size();
        }
        if (total > cap_)
            throw ExpansionLimitError("expansion exceeds the output-length cap of " +
                                      std::to_string(cap_) + " symbols");
        counts_ = std::move(next);
        length_ = static_cast<std::size_t>(total);
    }

    std::string count_signature() const {
        std::ostringstream os;
        for (const auto& [symbol, count] : counts_) os << symbol << ':' << count << ';';
        return os.str();
    }

private:
    void check_cap() const {
        if (length_ > cap_)
            throw ExpansionLimitError("expansion exceeds the output-length cap of " +
                                      std::to_string(cap_) + " symbols");
    }

    const LSystemSpec* spec_;
    std::size_t cap_;
    std::map<char, unsigned long long> counts_;
    std::size_t length_ = 0;
};

} // namespace

LSystemSpec parse_spec(std::string_view text) {
    LSystemSpec spec;
    bool saw_alphabet = false;
    bool saw_axiom = false;
    std::size_t alphabet_line = 0;

    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view raw = text.substr(start, end == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++lineno;

        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto column_of = [&](std::string_view token) {
            return static_cast<std::size_t>(token.data() - raw.data()) + 1;
        };

        if (line.starts_with("alphabet:")) {
            if (saw_alphabet)
                throw ParseError("duplicate alphabet declaration", lineno, column_of(line));
            saw_alphabet = true;
            alphabet_line = lineno;
            std::string_view rest = line.substr(9);
            std::size_t i = 0;
            while (i < rest.size()) {
                if (rest[i] == ' ' || rest[i] == '\t') { ++i; continue; }
                std::string_view token = rest.substr(i);
                if (token.size() > 1 && token[1] != ' ' && token[1] != '\t')
                    throw ParseError("alphabet symbols must be single characters", lineno,
                                     column_of(token));
                char symbol = token[0];
                if (spec.alphabet.find(symbol) != std::string::npos)
                    throw ParseError(std::string("duplicate alphabet symbol '") + symbol + "'",
                                     lineno, column_of(token));
                spec.alphabet.push_back(symbol);
                ++i;
            }
            if (spec.alphabet.empty())
                throw ParseError("alphabet declaration lists no symbols", lineno, column_of(line));
            continue;
        }

        if (line.starts_with("axiom:")) {
            if (saw_axiom)
                throw ParseError("duplicate axiom declaration", lineno, column_of(line));
            saw_axiom = true;
            std::string_view rest = trim(line.substr(6));
            if (rest.empty())
                throw ParseError("axiom declaration is empty", lineno, column_of(line));
            if (rest.find(' ') != std::string_view::npos ||
                rest.find('\t') != std::string_view::npos)
                throw ParseError("axiom must be a single symbol string", lineno, column_of(rest));
            if (!saw_alphabet)
                throw ParseError("axiom declared before alphabet", lineno, column_of(line));
            for (std::size_t k = 0; k < rest.size(); ++k) {
                if (spec.alphabet.find(rest[k]) == std::string::npos)
                    throw ParseError(std::string("axiom symbol '") + rest[k] +
                                         "' is not in the alphabet",
                                     lineno, column_of(rest) + k);
            }
            spec.axiom = std::string(rest);
            continue;
        }

        // Rule line: X -> YZW
        std::size_t arrow = line.find("->");
        if (arrow == std::string_view::npos)
            throw ParseError("expected 'alphabet:', 'axiom:' or a rule 'X -> YZW'", lineno,
                             column_of(line));
        std::string_view lhs = trim(line.substr(0, arrow));
        std::string_view rhs = trim(line.substr(arrow + 2));
        if (lhs.size() != 1)
            throw ParseError("rule left-hand side must be a single symbol", lineno,
                             column_of(lhs.empty() ? line : lhs));
        if (!saw_alphabet)
            throw ParseError("rule declared before alphabet", lineno, column_of(line));
        char symbol = lhs[0];
        if (spec.alphabet.find(symbol) == std::string::npos)
            throw ParseError(std::string("rule symbol '") + symbol + "' is not in the alphabet",
                             lineno, column_of(lhs));
        if (rhs.empty())
            throw ParseError(std::string("empty replacement for symbol '") + symbol + "'",
                             lineno, column_of(line) + arrow + 2);
        if (rhs.find(' ') != std::string_view::npos || rhs.find('\t') != std::string_view::npos)
            throw ParseError("replacement must be a single symbol string", lineno,
                             column_of(rhs));
        if (spec.productions.contains(symbol))
            throw ParseError(std::string("duplicate rule for symbol '") + symbol + "'", lineno,
                             column_of(lhs));
        for (std::size_t k = 0; k < rhs.size(); ++k) {
            if (spec.alphabet.find(rhs[k]) == std::string::npos)
                throw ParseError(std::string("replacement symbol '") + rhs[k] +
                                     "' is not in the alphabet",
                                 lineno, column_of(rhs) + k);
        }
        spec.productions.emplace(symbol, std::string(rhs));
    }

    if (!saw_alphabet) throw ParseError("missing alphabet declaration");
    if (!saw_axiom) throw ParseError("missing axiom declaration");
    for (char symbol : spec.alphabet) {
        if (!spec.productions.contains(symbol))
            throw ParseError(std::string("no rule for alphabet symbol '") + symbol + "'",
                             alphabet_line);
    }
    return spec;
}

std::string format_spec(const LSystemSpec& spec) {
    std::ostringstream os;
    os << "alphabet:";
    for (char c : spec.alphabet) os << ' ' << c;
    os << '\n' << "axiom: " << spec.axiom << '\n';
    for (char c : spec.alphabet) os << c << " -> " << spec.production(c) << '\n';
    return os.str();
}

std::string expand(const LSystemSpec& spec, unsigned n, std::size_t cap) {
    if (spec.axiom.size() > cap)
        throw ExpansionLimitError("axiom alone exceeds the output-length cap");
    std::string current = spec.axiom;
    for (unsigned i = 0; i < n; ++i) {
        unsigned __int128 next_length = 0;
        for (char c : current) next_length += spec.production(c).size();
        if (next_length > cap)
            throw ExpansionLimitError("expansion exceeds the output-length cap of " +
                                      std::to_string(cap) + " symbols at iteration " +
                                      std::to_string(i + 1));
        std::string next;
        next.reserve(static_cast<std::size_t>(next_length));
        for (char c : current) next += spec.production(c);
        current = std::move(next);
    }
    return current;
}

std::size_t expansion_length(const LSystemSpec& spec, unsigned n, std::size_t cap) {
    LengthSimulator sim(spec, cap);
    for (unsigned i = 0; i < n; ++i) sim.step();
    return sim.length();
}

ExpansionReport expand_report(const LSystemSpec& spec, unsigned n, bool with_sequence,
                              std::size_t cap) {
    ExpansionReport report;
    report.iteration = n;
    if (with_sequence) {
        report.sequence = expand(spec, n, cap);
        report.length = report.sequence->size();
    } else {
        report.length = expansion_length(spec, n, cap);
    }
    return report;
}

LazyExpansion::LazyExpansion(const LSystemSpec& spec, std::size_t min_length, std::size_t cap)
    : spec_(&spec) {
    if (min_length == 0) min_length = 1;
    if (min_length > cap)
        throw ExpansionLimitError("requested minimum length " + std::to_string(min_length) +
                                  " exceeds the output-length cap of " + std::to_string(cap));

    LengthSimulator sim(spec, cap);
    unsigned iteration = 0;
    std::set<std::string> seen;
    while (sim.length() < min_length) {
        if (!seen.insert(sim.count_signature()).second)
            throw StreamExhaustedError(
                "expansion length settles at " + std::to_string(sim.length()) +
                " and can never reach the requested " + std::to_string(min_length));
        sim.step();
        ++iteration;
    }
    iteration_ = iteration;
    target_length_ = sim.length();
    stack_.push_back(Frame{&spec_->axiom, 0});
}

std::optional<char> LazyExpansion::next() {
    // Frame k rewrites its symbols k more times; a symbol surfaced from
    // frame iteration_ is final.
    while (!stack_.empty()) {
        Frame& top = stack_.back();
        if (top.pos >= top.text->size()) {
            stack_.pop_back();
            continue;
        }
        char symbol = (*top.text)[top.pos++];
        if (stack_.size() - 1 == iteration_) {
            ++emitted_;
            return symbol;
        }
        stack_.push_back(Frame{&spec_->production(symbol), 0});
    }
    return std::nullopt;
}

} // namespace starfill
