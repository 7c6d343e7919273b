#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bms/scheme.hpp"
#include "bms/suffix_index.hpp"

namespace bms {

// 2-approximation certificate: every two consecutive phrases concatenate to a
// text-unique substring, which forces a phrase boundary of any macro scheme
// inside each pair. The string checked per pair is the pair minus its final
// explicit letter; uniqueness of that shorter string implies uniqueness of
// the full concatenation, so this reading is at least as strong.
struct CertificateReport {
    bool holds = false;
    // First pair (i, i+1), 1-based, whose merged string recurs; set when
    // holds == false.
    std::optional<std::pair<int, int>> witness;
    int k = 0;
    int lower_bound = 0;                 // substring-complexity bound for the text
    std::optional<double> ratio_bound;   // 2.0 when the certificate holds
};

CertificateReport check_certificate(const MacroScheme& scheme, const Text& text,
                                    const SuffixIndex& idx);

// Explicit-letter positions of a scheme; an attractor of size k (and at most
// twice the smallest attractor whenever the certificate holds).
struct Attractor {
    std::vector<Pos> positions;
    int size() const { return static_cast<int>(positions.size()); }
};

Attractor attractor_of(const MacroScheme& scheme);

// Exhaustive attractor check: every substring must have an occurrence that
// covers one of the positions. Brute force; throws std::invalid_argument when
// n exceeds the cap.
bool verify_attractor(const Text& text, const std::vector<Pos>& positions, Pos cap = 256);

enum class Family { Fibonacci, ThueMorse, DeBruijn, Planted, Generic };

struct FamilyParams {
    Family family = Family::Generic;
    int order = 0;  // de Bruijn order
    int d = 0;      // planted alphabet size
};

// Best known lower bound on the size of any macro scheme for the text:
// Fibonacci -> 3; de Bruijn order t -> floor(2^t / t) + 1; planted -> d;
// Thue-Morse -> max(3, generic); generic -> max over substring lengths l of
// ceil(distinct_substrings(l) / l), l up to ceil(log2 n)^2.
int lower_bound(const FamilyParams& params, const Text& text);

// The generic rule alone (needs an index over the text).
int substring_complexity_bound(const Text& text, const SuffixIndex& idx);

}  // namespace bms
