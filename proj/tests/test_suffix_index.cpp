#include <set>

#include "bms/generators.hpp"
#include "bms/suffix_index.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bms;

namespace {

void check_against_oracle(const Text& t) {
    const SuffixIndex idx = SuffixIndex::build(t);
    const std::vector<Pos> expected = oracle::suffix_sort(t);
    REQUIRE(idx.n() == t.n());
    for (Pos r = 1; r <= t.n(); ++r) {
        REQUIRE(idx.sa(r) == expected[static_cast<std::size_t>(r) - 1]);
        REQUIRE(idx.rank_of(idx.sa(r)) == r);
    }
}

}  // namespace

TEST_CASE("tiny suffix arrays") {
    {
        const SuffixIndex idx = SuffixIndex::build(attach_sentinel("aa"));
        CHECK(idx.sa(1) == 3);
        CHECK(idx.sa(2) == 2);
        CHECK(idx.sa(3) == 1);
    }
    {
        const SuffixIndex idx = SuffixIndex::build(attach_sentinel("ab"));
        CHECK(idx.sa(1) == 3);
        CHECK(idx.sa(2) == 1);
        CHECK(idx.sa(3) == 2);
    }
    check_against_oracle(attach_sentinel(""));
}

TEST_CASE("suffix array matches the naive sort oracle") {
    check_against_oracle(fixtures::demo_text());
    check_against_oracle(fibonacci(13));
    check_against_oracle(thue_morse(9));
    check_against_oracle(de_bruijn(8));

    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Pos raw_len = static_cast<Pos>(rng.below(4096));
        check_against_oracle(oracle::random_text(rng, raw_len, trial % 2 == 0 ? 2 : 30));
    }
}

TEST_CASE("locate finds all occurrences of text spans") {
    const Text t = fixtures::demo_text();
    const SuffixIndex idx = SuffixIndex::build(t);

    // "abaaba" = positions 1..6
    const auto iv = idx.locate(1, 6);
    REQUIRE(iv.has_value());
    CHECK(idx.occurrences(*iv) == std::vector<Pos>{1, 6, 9, 14});

    // "abaababaaba" = positions 1..11
    const auto iv2 = idx.locate(1, 11);
    REQUIRE(iv2.has_value());
    CHECK(idx.occurrences(*iv2) == std::vector<Pos>{1, 9});

    const auto all = idx.locate(10, 0);
    REQUIRE(all.has_value());
    CHECK(all->lo == 1);
    CHECK(all->hi == t.n());
    CHECK(all->pat_len == 0);
}

TEST_CASE("occurrences always include the span's own position") {
    Rng rng(17);
    const Text t = oracle::random_text(rng, 500, 3);
    const SuffixIndex idx = SuffixIndex::build(t);
    for (int trial = 0; trial < 200; ++trial) {
        const Pos pos = static_cast<Pos>(1 + rng.below(static_cast<std::uint64_t>(t.n())));
        const Pos len = static_cast<Pos>(rng.below(static_cast<std::uint64_t>(t.n() - pos + 1)));
        const auto iv = idx.locate(pos, len);
        REQUIRE(iv.has_value());
        const auto occ = idx.occurrences(*iv);
        CHECK(std::find(occ.begin(), occ.end(), pos) != occ.end());
        CHECK(occ == oracle::find_all(t, t.span(pos, len)));
    }
}

TEST_CASE("interval merge composes the demo phrases") {
    const Text t = fixtures::demo_text();
    const SuffixIndex idx = SuffixIndex::build(t);
    // "abaaba" + "b" -> "abaabab", then + "abaa" -> "abaababaaba"
    const auto first = idx.locate(1, 6);
    const auto letter = idx.locate(7, 1);
    const auto full = idx.merge(*first, *letter);
    REQUIRE(full.has_value());
    const auto second_copy = idx.locate(8, 4);
    const auto w = idx.merge(*full, *second_copy);
    REQUIRE(w.has_value());
    CHECK(w->pat_len == 11);
    CHECK(idx.occurrences(*w) == std::vector<Pos>{1, 9});
    CHECK(*w == *idx.locate(1, 11));
}

TEST_CASE("merging with an empty interval is the identity") {
    const Text t = fixtures::demo_text();
    const SuffixIndex idx = SuffixIndex::build(t);
    const auto left = idx.locate(1, 6);
    const auto empty = idx.locate(9, 0);
    CHECK(*idx.merge(*left, *empty) == *left);
    CHECK(*idx.merge(*empty, *left) == *left);
}

TEST_CASE("interval merge equals locate on the concatenation") {
    Rng rng(23);
    const Text t = oracle::random_text(rng, 4000, 2);
    const SuffixIndex idx = SuffixIndex::build(t);
    int non_empty = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        // adjacent spans drawn from the text, so P·Q is a genuine substring
        // half the time; the other half uses unrelated spans
        const Pos pos = static_cast<Pos>(1 + rng.below(static_cast<std::uint64_t>(t.n() - 1)));
        const Pos max_len = t.n() - pos;
        const Pos p_len = static_cast<Pos>(rng.below(static_cast<std::uint64_t>(std::min<Pos>(max_len, 12)) + 1));
        Pos q_pos;
        Pos q_len;
        if (trial % 2 == 0) {
            q_pos = pos + p_len;
            q_len = static_cast<Pos>(
                rng.below(static_cast<std::uint64_t>(std::min<Pos>(t.n() - q_pos + 1, 12)) + 1));
        } else {
            q_pos = static_cast<Pos>(1 + rng.below(static_cast<std::uint64_t>(t.n())));
            q_len = static_cast<Pos>(
                rng.below(static_cast<std::uint64_t>(std::min<Pos>(t.n() - q_pos + 1, 12)) + 1));
        }
        const auto left = idx.locate(pos, p_len);
        const auto right = idx.locate(q_pos, q_len);
        REQUIRE(left.has_value());
        REQUIRE(right.has_value());
        const auto merged = idx.merge(*left, *right);

        const std::string concat = std::string(t.span(pos, p_len)) + std::string(t.span(q_pos, q_len));
        const std::vector<Pos> expected = oracle::find_all(t, concat);
        if (merged.has_value()) {
            ++non_empty;
            CHECK(idx.occurrences(*merged) == expected);
            CHECK(merged->pat_len == p_len + q_len);
        } else {
            CHECK(expected.empty());
        }
    }
    CHECK(non_empty > 400);
}
