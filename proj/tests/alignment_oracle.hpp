#pragma once

// Exhaustive-alignment oracle. Enumerates every global alignment as a move
// string (D diagonal, U gap in b, L gap in a), keeps the maximal score, and
// picks the one whose move string read from the end is smallest under
// D < U < L. That is the alignment a diagonal-first traceback commits to.

#include <cstddef>
#include <string>

#include "starfill/seqcheck.hpp"

namespace testutil {

struct OracleAlignment {
    int score = 0;
    std::size_t matches = 0;
    std::size_t length = 0;
    std::string reversed_moves;
};

inline int move_rank(char m) { return m == 'D' ? 0 : m == 'U' ? 1 : 2; }

inline bool reversed_less(const std::string& a, const std::string& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int ra = move_rank(a[a.size() - 1 - i]);
        int rb = move_rank(b[b.size() - 1 - i]);
        if (ra != rb) return ra < rb;
    }
    return a.size() < b.size();
}

inline void enumerate(const std::string& s, const std::string& t, std::size_t i, std::size_t j,
                      std::string& moves, int score, std::size_t matches,
                      const starfill::AlignScoring& sc, OracleAlignment& best, bool& have) {
    if (i == s.size() && j == t.size()) {
        OracleAlignment cand{score, matches, moves.size(), moves};
        if (!have || cand.score > best.score ||
            (cand.score == best.score && reversed_less(cand.reversed_moves, best.reversed_moves))) {
            best = cand;
            have = true;
        }
        return;
    }
    if (i < s.size() && j < t.size()) {
        bool match = s[i] == t[j];
        moves.push_back('D');
        enumerate(s, t, i + 1, j + 1, moves, score + (match ? sc.match : sc.mismatch),
                  matches + (match ? 1 : 0), sc, best, have);
        moves.pop_back();
    }
    if (i < s.size()) {
        moves.push_back('U');
        enumerate(s, t, i + 1, j, moves, score + sc.gap, matches, sc, best, have);
        moves.pop_back();
    }
    if (j < t.size()) {
        moves.push_back('L');
        enumerate(s, t, i, j + 1, moves, score + sc.gap, matches, sc, best, have);
        moves.pop_back();
    }
}

inline OracleAlignment oracle_align(const std::string& s, const std::string& t,
                                    const starfill::AlignScoring& sc = {}) {
    OracleAlignment best;
    bool have = false;
    std::string moves;
    enumerate(s, t, 0, 0, moves, 0, 0, sc, best, have);
    return best;
}

} // namespace testutil
