#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bms/text.hpp"

namespace bms {

// One parse unit: a copied substring [start .. start+len-1] followed by one
// explicit symbol at start+len. Position `source` is where the copy part is
// copied from (0 when len == 0). Sources may point anywhere, including
// forward or overlapping the phrase itself.
struct Phrase {
    Pos start = 0;
    Pos source = 0;
    Pos len = 0;
    Sym letter = 0;

    Pos letter_pos() const { return start + len; }
    friend bool operator==(const Phrase&, const Phrase&) = default;
};

// Ordered phrase list tiling [1..n]. k = phrases.size() is the quantity the
// search minimizes.
struct MacroScheme {
    std::vector<Phrase> phrases;

    int k() const { return static_cast<int>(phrases.size()); }
    Pos text_len() const {
        Pos n = 0;
        for (const Phrase& p : phrases) n += p.len + 1;
        return n;
    }

    friend bool operator==(const MacroScheme&, const MacroScheme&) = default;
};

// Maps positions to phrases and to the position they decode from.
// parent_of(p) == 0 iff p holds an explicit letter.
class PhraseLookup {
public:
    explicit PhraseLookup(const MacroScheme& scheme);

    int phrase_at(Pos pos) const;  // 0-based index into scheme.phrases
    Pos parent_of(Pos pos) const;
    Sym letter_at(Pos pos) const;  // only meaningful when parent_of(pos) == 0

private:
    const MacroScheme* scheme_;
    std::vector<Pos> starts_;
};

struct DecodeOutcome {
    std::optional<Sym> symbol;
    std::vector<Pos> cycle;  // positions on the cycle (not the tail leading in)
    bool ok() const { return symbol.has_value(); }
};

// Follows pos -> source + (pos - start) until an explicit letter. A revisited
// position yields the cycle itself, excluding the tail that led into it.
DecodeOutcome decode_position(const MacroScheme& scheme, Pos pos);

struct ValidationReport {
    std::vector<std::vector<Pos>> cycles;     // disjoint, in discovery order
    std::vector<int> mismatched_phrases;      // 0-based indices with copy/source disagreement
    bool valid() const { return cycles.empty() && mismatched_phrases.empty(); }
};

// Valid iff every position decodes without looping and every len>0 phrase's
// source range reproduces its copy part in `text`.
ValidationReport validate(const MacroScheme& scheme, const Text& text);

// The unique text the scheme decodes to, or nullopt when decoding loops.
std::optional<Text> materialize(const MacroScheme& scheme);

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Textual scheme format, ASCII with LF line endings:
//   BMS 1
//   n <decimal>
//   k <decimal>
//   <source> <len> <letter byte, decimal>   (k lines)
std::string write_scheme(const MacroScheme& scheme);
MacroScheme read_scheme(std::string_view data);  // throws FormatError

}  // namespace bms
