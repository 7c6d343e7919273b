#pragma once

#include <cstdint>
#include <stdexcept>

#include "bms/scheme.hpp"
#include "bms/text.hpp"

namespace bms {

// Test-string families with known optima or lower bounds. All generators are
// deterministic given their parameters (plus the seed for planted).

// i-th Fibonacci word (F1 = "b", F2 = "a", F_{i+2} = F_{i+1} F_i), sentinel
// attached.
Text fibonacci(int i);

// i-th Thue-Morse word over ASCII '0'/'1' (T0 = "0", T_{i+1} = T_i
// complement(T_i)), 2^i symbols plus sentinel.
Text thue_morse(int i);

// Linearized binary de Bruijn sequence of the given order over '0'/'1':
// length 2^order + order - 1, every length-`order` window occurs exactly
// once. Built from Lyndon words in lexicographic order. 1 <= order <= 20.
Text de_bruijn(int order);

struct GiveUp : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Planted {
    Text text;
    MacroScheme scheme;  // valid, k == d, provably optimal
    long rejections = 0;
};

// Draws a text of length n (with sentinel) whose smallest macro scheme size
// is exactly d: d-1 random distinct boundary positions, the d distinct
// symbols 1..d-1 plus the sentinel as phrase terminators, random sources,
// rejection-sampled until the scheme is acyclic. Sources never cover the
// sentinel position, so the sentinel stays unique. Throws GiveUp after
// max_rejections redraws.
Planted planted(Pos n, int d, std::uint64_t seed, long max_rejections = 1000000);

}  // namespace bms
