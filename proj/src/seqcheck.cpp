#include "starfill/seqcheck.hpp"

#include <algorithm>
#include <cstdio>

namespace starfill {

namespace {

int base_index(char c) {
    switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
    }
}

struct CodonEntry {
    const char* codon;
    char amino;
};

// Standard genetic code.
constexpr CodonEntry kStandardCode[] = {
    {"TTT", 'F'}, {"TTC", 'F'}, {"TTA", 'L'}, {"TTG", 'L'},
    {"CTT", 'L'}, {"CTC", 'L'}, {"CTA", 'L'}, {"CTG", 'L'},
    {"ATT", 'I'}, {"ATC", 'I'}, {"ATA", 'I'}, {"ATG", 'M'},
    {"GTT", 'V'}, {"GTC", 'V'}, {"GTA", 'V'}, {"GTG", 'V'},
    {"TCT", 'S'}, {"TCC", 'S'}, {"TCA", 'S'}, {"TCG", 'S'},
    {"CCT", 'P'}, {"CCC", 'P'}, {"CCA", 'P'}, {"CCG", 'P'},
    {"ACT", 'T'}, {"ACC", 'T'}, {"ACA", 'T'}, {"ACG", 'T'},
    {"GCT", 'A'}, {"GCC", 'A'}, {"GCA", 'A'}, {"GCG", 'A'},
    {"TAT", 'Y'}, {"TAC", 'Y'}, {"TAA", '*'}, {"TAG", '*'},
    {"CAT", 'H'}, {"CAC", 'H'}, {"CAA", 'Q'}, {"CAG", 'Q'},
    {"AAT", 'N'}, {"AAC", 'N'}, {"AAA", 'K'}, {"AAG", 'K'},
    {"GAT", 'D'}, {"GAC", 'D'}, {"GAA", 'E'}, {"GAG", 'E'},
    {"TGT", 'C'}, {"TGC", 'C'}, {"TGA", '*'}, {"TGG", 'W'},
    {"CGT", 'R'}, {"CGC", 'R'}, {"CGA", 'R'}, {"CGG", 'R'},
    {"AGT", 'S'}, {"AGC", 'S'}, {"AGA", 'R'}, {"AGG", 'R'},
    {"GGT", 'G'}, {"GGC", 'G'}, {"GGA", 'G'}, {"GGG", 'G'},
};

void check_frame(const NucleotideSequence& seq, int frame) {
    if (frame < 0 || frame > 2)
        throw ValidationError("frame must be 0, 1 or 2");
    if (seq.bases.size() < static_cast<std::size_t>(frame) + 3)
        throw ValidationError("sequence '" + seq.id + "' (length " +
                              std::to_string(seq.bases.size()) +
                              ") is too short for frame " + std::to_string(frame));
}

} // namespace

CodonTable::CodonTable() {
    for (const CodonEntry& entry : kStandardCode) {
        int index = base_index(entry.codon[0]) * 16 + base_index(entry.codon[1]) * 4 +
                    base_index(entry.codon[2]);
        amino_[static_cast<std::size_t>(index)] = entry.amino;
    }
}

const CodonTable& CodonTable::standard() {
    static const CodonTable table;
    return table;
}

char CodonTable::amino(std::string_view codon) const {
    if (codon.size() != 3)
        throw ValidationError("codon must have exactly 3 bases");
    int i0 = base_index(codon[0]);
    int i1 = base_index(codon[1]);
    int i2 = base_index(codon[2]);
    if (i0 < 0 || i1 < 0 || i2 < 0)
        throw ValidationError("codon '" + std::string(codon) + "' contains a non-ACGT base");
    return amino_[static_cast<std::size_t>(i0 * 16 + i1 * 4 + i2)];
}

std::vector<StopHit> scan_stops(const NucleotideSequence& seq, int frame) {
    check_frame(seq, frame);
    const CodonTable& code = CodonTable::standard();
    std::vector<StopHit> hits;
    const std::string& b = seq.bases;
    std::size_t codons = (b.size() - static_cast<std::size_t>(frame)) / 3;
    for (std::size_t i = 0; i < codons; ++i) {
        std::string_view codon(b.data() + frame + 3 * i, 3);
        if (code.is_stop(codon)) hits.push_back(StopHit{i, std::string(codon)});
    }
    return hits;
}

bool has_internal_stop(const NucleotideSequence& seq, int frame) {
    std::vector<StopHit> hits = scan_stops(seq, frame);
    if (hits.empty()) return false;
    std::size_t codons = (seq.bases.size() - static_cast<std::size_t>(frame)) / 3;
    return std::any_of(hits.begin(), hits.end(),
                       [&](const StopHit& hit) { return hit.codon_index + 1 < codons; });
}

std::string translate(const NucleotideSequence& seq, int frame) {
    check_frame(seq, frame);
    const CodonTable& code = CodonTable::standard();
    const std::string& b = seq.bases;
    std::size_t codons = (b.size() - static_cast<std::size_t>(frame)) / 3;
    std::string protein;
    protein.reserve(codons);
    for (std::size_t i = 0; i < codons; ++i)
        protein.push_back(code.amino(std::string_view(b.data() + frame + 3 * i, 3)));
    return protein;
}

IdentityReport identity_hamming(const NucleotideSequence& a, const NucleotideSequence& b) {
    if (a.bases.empty() || b.bases.empty())
        throw ValidationError("cannot compare empty sequences");
    if (a.bases.size() != b.bases.size())
        throw ValidationError("positionwise identity needs equal lengths: '" + a.id +
                              "' has " + std::to_string(a.bases.size()) + ", '" + b.id +
                              "' has " + std::to_string(b.bases.size()));
    IdentityReport report;
    report.compared = a.bases.size();
    for (std::size_t i = 0; i < a.bases.size(); ++i)
        if (a.bases[i] == b.bases[i]) ++report.matches;
    report.fraction = static_cast<double>(report.matches) / static_cast<double>(report.compared);
    return report;
}

IdentityReport identity_aligned(const NucleotideSequence& a, const NucleotideSequence& b,
                                const AlignScoring& scoring) {
    if (a.bases.empty() || b.bases.empty())
        throw ValidationError("cannot align empty sequences");

    const std::string& s = a.bases;
    const std::string& t = b.bases;
    const std::size_t n = s.size();
    const std::size_t m = t.size();

    std::vector<std::vector<int>> score(n + 1, std::vector<int>(m + 1, 0));
    for (std::size_t i = 1; i <= n; ++i) score[i][0] = static_cast<int>(i) * scoring.gap;
    for (std::size_t j = 1; j <= m; ++j) score[0][j] = static_cast<int>(j) * scoring.gap;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            int diag = score[i - 1][j - 1] +
                       (s[i - 1] == t[j - 1] ? scoring.match : scoring.mismatch);
            int up = score[i - 1][j] + scoring.gap;
            int left = score[i][j - 1] + scoring.gap;
            score[i][j] = std::max({diag, up, left});
        }
    }

    // Traceback with fixed tie-breaking: diagonal, then up, then left.
    std::size_t i = n, j = m;
    std::size_t matches = 0, length = 0;
    while (i > 0 || j > 0) {
        ++length;
        if (i > 0 && j > 0 &&
            score[i][j] == score[i - 1][j - 1] +
                               (s[i - 1] == t[j - 1] ? scoring.match : scoring.mismatch)) {
            if (s[i - 1] == t[j - 1]) ++matches;
            --i;
            --j;
        } else if (i > 0 && score[i][j] == score[i - 1][j] + scoring.gap) {
            --i;
        } else {
            --j;
        }
    }

    IdentityReport report;
    report.matches = matches;
    report.compared = length;
    report.fraction = static_cast<double>(matches) / static_cast<double>(length);
    return report;
}

std::string format_identity(const IdentityReport& report) {
    char fraction[16];
    std::snprintf(fraction, sizeof(fraction), "%.4f", report.fraction);
    return "matches=" + std::to_string(report.matches) +
           " compared=" + std::to_string(report.compared) + " fraction=" + fraction;
}

} // namespace starfill
