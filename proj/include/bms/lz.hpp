#pragma once

#include "bms/scheme.hpp"
#include "bms/suffix_index.hpp"

namespace bms {

// Greedy left-to-right symbol-terminated Lempel-Ziv parse: each phrase copies
// the longest prefix of the remaining text that also occurs starting strictly
// before the current position (self-overlap allowed), then appends one
// explicit symbol. Sources are the leftmost such occurrence, so the parse is
// deterministic and left-pointing.
MacroScheme lz_parse(const Text& text, const SuffixIndex& idx);

int lz_size(const Text& text, const SuffixIndex& idx);
int lz_size(const Text& text);  // builds a throwaway index

}  // namespace bms
