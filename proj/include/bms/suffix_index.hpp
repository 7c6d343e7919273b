#pragma once

#include <optional>
#include <vector>

#include "bms/text.hpp"

namespace bms {

// Rank range [lo..hi] (1-based, inclusive) of all suffixes prefixed by some
// pattern of length pat_len.
struct SAInterval {
    Pos lo = 0;
    Pos hi = 0;
    Pos pat_len = 0;

    Pos count() const { return hi - lo + 1; }
    friend bool operator==(const SAInterval&, const SAInterval&) = default;
};

// Suffix array plus inverse over a sentinel-terminated text. Built once per
// run; the text must stay alive and unmoved while the index is in use.
class SuffixIndex {
public:
    static SuffixIndex build(const Text& text);

    Pos n() const { return static_cast<Pos>(sa_.size()); }
    const Text& text() const { return *text_; }

    Pos sa(Pos rank) const { return sa_[static_cast<std::size_t>(rank) - 1]; }
    Pos rank_of(Pos pos) const { return isa_[static_cast<std::size_t>(pos) - 1]; }

    // Interval of all suffixes prefixed by text[pos..pos+len-1]. Never empty
    // for spans taken from the text itself; len == 0 gives the full interval.
    std::optional<SAInterval> locate(Pos pos, Pos len) const;

    // Positions in the interval, ascending.
    std::vector<Pos> occurrences(const SAInterval& iv) const;

    // Interval of the concatenated pattern P·Q from the intervals of P and Q,
    // via the inverse array and binary search; no rescan of the pattern.
    // nullopt when P·Q does not occur.
    std::optional<SAInterval> merge(const SAInterval& left, const SAInterval& right) const;

private:
    SuffixIndex() = default;

    // Three-way compare of suffix(start) against text[pos..pos+len-1],
    // treating a proper-prefix suffix as smaller.
    int compare_suffix(Pos start, Pos pos, Pos len) const;

    const Text* text_ = nullptr;
    std::vector<Pos> sa_;   // sa_[r-1] = position of rank r
    std::vector<Pos> isa_;  // isa_[p-1] = rank of position p
};

}  // namespace bms
