#include "starfill/seqio.hpp"

#include <fstream>
#include <sstream>

namespace starfill {

namespace {

constexpr std::size_t kWrapWidth = 60;

std::string_view strip_trailing(std::string_view line) {
    while (!line.empty() &&
           (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
        line.remove_suffix(1);
    return line;
}

template <typename LineFn>
void for_each_line(std::string_view text, LineFn&& fn) {
    std::size_t start = 0;
    std::size_t lineno = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        fn(++lineno, strip_trailing(line));
    }
}

void append_wrapped(std::string& out, std::string_view seq) {
    for (std::size_t i = 0; i < seq.size(); i += kWrapWidth) {
        out.append(seq.substr(i, kWrapWidth));
        out.push_back('\n');
    }
}

} // namespace

std::vector<FastaRecord> read_fasta(std::string_view text) {
    std::vector<FastaRecord> records;
    bool in_record = false;

    for_each_line(text, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        if (line.front() == '>') {
            std::string_view header = strip_trailing(line.substr(1));
            if (header.empty())
                throw ParseError("FASTA header is empty", lineno, 1);
            records.push_back(FastaRecord{std::string(header), ""});
            in_record = true;
            return;
        }
        if (!in_record)
            throw ParseError("sequence data before the first '>' header", lineno, 1);
        FastaRecord& record = records.back();
        for (std::size_t k = 0; k < line.size(); ++k) {
            char c = canonical_base(line[k]);
            if (c == 0)
                throw ParseError("record '" + record.header + "': invalid character '" +
                                     std::string(1, line[k]) + "' at position " +
                                     std::to_string(record.bases.size() + 1),
                                 lineno, k + 1);
            record.bases.push_back(c);
        }
    });

    if (records.empty())
        throw ParseError("no FASTA records found");
    for (const FastaRecord& record : records)
        if (record.bases.empty())
            throw ParseError("record '" + record.header + "' has no sequence");
    return records;
}

std::string write_fasta(const std::vector<FastaRecord>& records) {
    if (records.empty())
        throw ValidationError("refusing to write FASTA with no records");
    std::string out;
    for (const FastaRecord& record : records) {
        out.push_back('>');
        out.append(record.header);
        out.push_back('\n');
        append_wrapped(out, record.bases);
    }
    return out;
}

std::vector<NucleotideSequence> to_sequences(const std::vector<FastaRecord>& records) {
    std::vector<NucleotideSequence> seqs;
    seqs.reserve(records.size());
    for (const FastaRecord& record : records)
        seqs.push_back(NucleotideSequence{record.header, record.bases});
    return seqs;
}

std::string write_star_model(const StarModel& model) {
    std::string out = ">star n=" + std::to_string(model.source_count) + "\n";
    append_wrapped(out, model.columns);
    return out;
}

StarModel read_star_model(std::string_view text) {
    StarModel model;
    bool saw_header = false;

    for_each_line(text, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        if (!saw_header) {
            if (!line.starts_with(">star n="))
                throw ParseError("expected star-model header '>star n=<count>'", lineno, 1);
            std::string_view count = line.substr(8);
            std::size_t value = 0;
            for (char c : count) {
                if (c < '0' || c > '9')
                    throw ParseError("malformed source count '" + std::string(count) + "'",
                                     lineno, 9);
                value = value * 10 + static_cast<std::size_t>(c - '0');
            }
            if (count.empty() || value < 2)
                throw ParseError("star model needs a source count of at least 2", lineno, 9);
            model.source_count = value;
            saw_header = true;
            return;
        }
        for (std::size_t k = 0; k < line.size(); ++k) {
            char c = line[k] == kGap ? kGap : canonical_base(line[k]);
            if (c == 0)
                throw ParseError("invalid star-model character '" + std::string(1, line[k]) + "'",
                                 lineno, k + 1);
            model.columns.push_back(c);
        }
    });

    if (!saw_header)
        throw ParseError("empty star-model file");
    if (model.columns.empty())
        throw ParseError("star model has no columns");
    model.gap_runs = derive_gap_runs(model.columns);
    return model;
}

namespace {

std::string context_field(std::optional<char> c) {
    return c ? std::string(1, *c) : std::string(".");
}

constexpr std::string_view kTraceHeader =
    "pass\trun_start\tcolumn\tprev2\tprev1\tnext1\tnext2\trule_id\tallowed\t"
    "stream_index\tskipped\tchosen";

} // namespace

std::string write_trace_tsv(const FillTrace& trace) {
    std::string out{kTraceHeader};
    out.push_back('\n');
    for (const FillEvent& e : trace) {
        out += std::to_string(e.pass);
        out.push_back('\t');
        out += std::to_string(e.run_start);
        out.push_back('\t');
        out += std::to_string(e.column);
        out.push_back('\t');
        out += context_field(e.context.prev2);
        out.push_back('\t');
        out += context_field(e.context.prev1);
        out.push_back('\t');
        out += context_field(e.context.next1);
        out.push_back('\t');
        out += context_field(e.context.next2);
        out.push_back('\t');
        out += e.rule_id;
        out.push_back('\t');
        out += e.allowed.to_string();
        out.push_back('\t');
        out += std::to_string(e.stream_index);
        out.push_back('\t');
        out += std::to_string(e.skipped);
        out.push_back('\t');
        out.push_back(e.chosen);
        out.push_back('\n');
    }
    return out;
}

FillTrace read_trace_tsv(std::string_view text) {
    FillTrace trace;
    bool saw_header = false;

    for_each_line(text, [&](std::size_t lineno, std::string_view line) {
        if (line.empty()) return;
        if (!saw_header) {
            if (line != kTraceHeader)
                throw ParseError("unexpected trace header", lineno, 1);
            saw_header = true;
            return;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t tab = line.find('\t', start);
            fields.emplace_back(line.substr(
                start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (fields.size() != 12)
            throw ParseError("expected 12 tab-separated fields, got " +
                                 std::to_string(fields.size()),
                             lineno, 1);

        auto number = [&](const std::string& field) -> std::size_t {
            std::size_t value = 0;
            if (field.empty()) throw ParseError("empty numeric field", lineno, 1);
            for (char c : field) {
                if (c < '0' || c > '9')
                    throw ParseError("malformed number '" + field + "'", lineno, 1);
                value = value * 10 + static_cast<std::size_t>(c - '0');
            }
            return value;
        };
        auto context = [&](const std::string& field) -> std::optional<char> {
            if (field == ".") return std::nullopt;
            if (field.size() != 1 || !is_base(field[0]))
                throw ParseError("malformed context field '" + field + "'", lineno, 1);
            return field[0];
        };

        FillEvent event;
        event.pass = number(fields[0]);
        event.run_start = number(fields[1]);
        event.column = number(fields[2]);
        event.context.prev2 = context(fields[3]);
        event.context.prev1 = context(fields[4]);
        event.context.next1 = context(fields[5]);
        event.context.next2 = context(fields[6]);
        event.rule_id = fields[7];
        if (fields[8].empty())
            throw ParseError("empty allowed set", lineno, 1);
        for (char c : fields[8])
            if (!is_base(c))
                throw ParseError("malformed allowed set '" + fields[8] + "'", lineno, 1);
        event.allowed = BaseSet::of(fields[8]);
        event.stream_index = number(fields[9]);
        event.skipped = number(fields[10]);
        if (fields[11].size() != 1 || !is_base(fields[11][0]))
            throw ParseError("malformed chosen base '" + fields[11] + "'", lineno, 1);
        event.chosen = fields[11][0];
        trace.push_back(std::move(event));
    });

    if (!saw_header)
        throw ParseError("empty trace file");
    return trace;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("failed while reading '" + path.string() + "'");
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw IoError("failed while writing '" + path.string() + "'");
}

} // namespace starfill
