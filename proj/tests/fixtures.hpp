// Shared worked examples: a 22-symbol text with several schemes over it
// (valid, looping, mid-merge), and a 32-symbol text whose scheme is a local
// minimum with all pairwise merges unique.
#pragma once

#include "bms/scheme.hpp"
#include "bms/text.hpp"

namespace fixtures {

using bms::MacroScheme;
using bms::Phrase;
using bms::Text;

// "abaababaabaababaababa" + sentinel, n = 22
inline Text demo_text() { return bms::attach_sentinel("abaababaabaababaababa"); }

// (6,6,b) (16,4,a) (0,0,b) (9,8,$): valid, forward pointers included
inline MacroScheme demo_valid_scheme() {
    MacroScheme s;
    s.phrases = {
        Phrase{1, 6, 6, 'b'},
        Phrase{8, 16, 4, 'a'},
        Phrase{13, 0, 0, 'b'},
        Phrase{14, 9, 8, bms::kSentinel},
    };
    return s;
}

// Same tiling with the second phrase pointing to 3 instead: decoding loops.
inline MacroScheme demo_looping_scheme() {
    MacroScheme s = demo_valid_scheme();
    s.phrases[1].source = 3;
    return s;
}

// Result of merging the first two phrases of demo_valid_scheme with source 9.
inline MacroScheme demo_merged_scheme() {
    MacroScheme s;
    s.phrases = {
        Phrase{1, 9, 11, 'a'},
        Phrase{13, 0, 0, 'b'},
        Phrase{14, 9, 8, bms::kSentinel},
    };
    return s;
}

// Five-phrase configuration whose first two phrases merge into "abaaba"
// (occurrences 1, 6, 9, 14): (12,2,a) (12,3,b) (3,4,a) (0,0,b) (9,8,$).
inline MacroScheme demo_pre_merge_scheme() {
    MacroScheme s;
    s.phrases = {
        Phrase{1, 12, 2, 'a'},
        Phrase{4, 12, 3, 'b'},
        Phrase{8, 3, 4, 'a'},
        Phrase{13, 0, 0, 'b'},
        Phrase{14, 9, 8, bms::kSentinel},
    };
    return s;
}

// demo_valid_scheme with the last phrase split at position 14:
// (6,6,b) (16,4,a) (0,0,b) (0,0,a) (10,7,$).
inline MacroScheme demo_split_scheme() {
    MacroScheme s;
    s.phrases = {
        Phrase{1, 6, 6, 'b'},
        Phrase{8, 16, 4, 'a'},
        Phrase{13, 0, 0, 'b'},
        Phrase{14, 0, 0, 'a'},
        Phrase{15, 10, 7, bms::kSentinel},
    };
    return s;
}

// 32-symbol text (with sentinel) and an 11-phrase local-minimum scheme over
// it: merging any two consecutive phrases yields a unique substring.
inline Text unique_pairs_text() { return bms::attach_sentinel("aaaaabaaabbaababaabbbababbabbbb"); }

inline MacroScheme unique_pairs_scheme() {
    MacroScheme s;
    s.phrases = {
        Phrase{1, 3, 2, 'a'},    Phrase{4, 1, 2, 'b'},   Phrase{7, 1, 2, 'a'},
        Phrase{10, 19, 2, 'a'},  Phrase{13, 5, 2, 'a'},  Phrase{16, 6, 2, 'a'},
        Phrase{19, 25, 2, 'b'},  Phrase{22, 5, 2, 'a'},  Phrase{25, 20, 2, 'a'},
        Phrase{28, 10, 2, 'b'},  Phrase{31, 6, 1, bms::kSentinel},
    };
    return s;
}

}  // namespace fixtures
