#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "starfill/errors.hpp"
#include "starfill/starmodel.hpp"

namespace starfill {

/// Standard genetic code, total over all 64 codons. '*' marks a stop.
class CodonTable {
public:
    static const CodonTable& standard();

    /// Amino-acid letter for a 3-base codon (uppercase ACGT).
    char amino(std::string_view codon) const;
    bool is_stop(std::string_view codon) const { return amino(codon) == '*'; }

private:
    CodonTable();
    std::array<char, 64> amino_{};
};

struct StopHit {
    std::size_t codon_index = 0; // 0-based codon ordinal within the frame
    std::string codon;
};

/// In-frame stop codons (TAA/TAG/TGA), in order; trailing partial codons
/// are ignored. Throws ValidationError when the sequence is shorter than
/// frame + 3.
std::vector<StopHit> scan_stops(const NucleotideSequence& seq, int frame);

/// True when scan_stops reports a stop strictly before the final codon of
/// the frame. A terminal stop does not count.
bool has_internal_stop(const NucleotideSequence& seq, int frame);

/// Conceptual translation: one letter per complete codon, '*' for stops.
std::string translate(const NucleotideSequence& seq, int frame);

struct IdentityReport {
    std::size_t matches = 0;
    std::size_t compared = 0;
    double fraction = 0.0;
};

/// Positionwise identity of two equal-length sequences.
/// Throws ValidationError on a length mismatch or empty input.
IdentityReport identity_hamming(const NucleotideSequence& a, const NucleotideSequence& b);

struct AlignScoring {
    int match = 1;
    int mismatch = -1;
    int gap = -2;
};

/// Global-alignment identity with linear gap penalty. The denominator is
/// the alignment length, gap columns included. Traceback tie-breaking is
/// fixed: diagonal, then up (gap in b), then left (gap in a).
IdentityReport identity_aligned(const NucleotideSequence& a, const NucleotideSequence& b,
                                const AlignScoring& scoring = {});

/// "matches=828 compared=936 fraction=0.8846" (fraction to 4 decimals).
std::string format_identity(const IdentityReport& report);

} // namespace starfill
