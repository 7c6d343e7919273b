#include <set>

#include "bms/scheme.hpp"
#include "bms/text.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bms;

TEST_CASE("attach_sentinel appends the terminator") {
    const Text t = attach_sentinel("abaababaabaababaababa");
    CHECK(t.n() == 22);
    CHECK(t.at(22) == kSentinel);
    CHECK(t.at(1) == 'a');
    CHECK(t.at(7) == 'b');
}

TEST_CASE("attach_sentinel on empty input yields the sentinel alone") {
    const Text t = attach_sentinel("");
    CHECK(t.n() == 1);
    CHECK(t.at(1) == kSentinel);
}

TEST_CASE("attach_sentinel rejects input containing the sentinel byte") {
    const std::string bad{'a', '\0', 'b'};
    CHECK_THROWS_AS(attach_sentinel(bad), SentinelCollision);
}

TEST_CASE("decode chain follows pointers to the explicit letter") {
    const MacroScheme s = fixtures::demo_valid_scheme();
    // position 4 resolves through 9 and 17 to the letter at 12
    const DecodeOutcome out = decode_position(s, 4);
    REQUIRE(out.ok());
    CHECK(*out.symbol == 'a');
}

TEST_CASE("decoding an explicit position returns its letter directly") {
    const DecodeOutcome out = decode_position(fixtures::demo_valid_scheme(), 7);
    REQUIRE(out.ok());
    CHECK(*out.symbol == 'b');
}

TEST_CASE("decode reports only the cycle, not the tail leading into it") {
    const MacroScheme s = fixtures::demo_looping_scheme();
    const DecodeOutcome out = decode_position(s, 21);  // 21 -> 16 -> 11 -> 6 -> 11
    REQUIRE(!out.ok());
    std::set<Pos> cycle(out.cycle.begin(), out.cycle.end());
    CHECK(cycle == std::set<Pos>{6, 11});
}

TEST_CASE("decode cycle positions are exactly the periodic points of the chain") {
    const MacroScheme s = fixtures::demo_looping_scheme();
    const std::vector<Pos> f = oracle::parent_map(s);
    for (Pos pos = 1; pos <= s.text_len(); ++pos) {
        const DecodeOutcome out = decode_position(s, pos);
        if (out.ok()) continue;
        for (Pos q : out.cycle) {
            Pos cur = q;
            std::size_t steps = 0;
            do {
                cur = f[static_cast<std::size_t>(cur)];
                ++steps;
                REQUIRE(steps <= out.cycle.size());
            } while (cur != q);
            CHECK(steps == out.cycle.size());
        }
    }
}

TEST_CASE("demo scheme validates and the looping variant has four cycles") {
    const Text t = fixtures::demo_text();
    CHECK(validate(fixtures::demo_valid_scheme(), t).valid());

    const ValidationReport bad = validate(fixtures::demo_looping_scheme(), t);
    CHECK(!bad.valid());
    REQUIRE(bad.cycles.size() == 4);
    std::set<std::set<Pos>> got;
    for (const auto& c : bad.cycles) got.insert(std::set<Pos>(c.begin(), c.end()));
    const std::set<std::set<Pos>> want = {{6, 11}, {3, 8}, {4, 9}, {5, 10}};
    CHECK(got == want);
}

TEST_CASE("an all-explicit scheme is always valid") {
    const Text t = attach_sentinel("mississippi");
    MacroScheme s;
    for (Pos p = 1; p <= t.n(); ++p) s.phrases.push_back(Phrase{p, 0, 0, t.at(p)});
    CHECK(validate(s, t).valid());
    CHECK(s.k() == t.n());
}

TEST_CASE("validate flags copy parts that do not match their source range") {
    const Text t = fixtures::demo_text();
    MacroScheme s = fixtures::demo_valid_scheme();
    s.phrases[1].source = 2;  // "baab" != "abaa"
    const ValidationReport rep = validate(s, t);
    CHECK(!rep.valid());
    CHECK(rep.mismatched_phrases == std::vector<int>{1});
}

TEST_CASE("materialize reproduces the demo text") {
    const auto got = materialize(fixtures::demo_valid_scheme());
    REQUIRE(got.has_value());
    CHECK(*got == fixtures::demo_text());
}

TEST_CASE("materialize of tiny schemes") {
    MacroScheme all_explicit;
    all_explicit.phrases = {Phrase{1, 0, 0, 'a'}, Phrase{2, 0, 0, kSentinel}};
    CHECK(materialize(all_explicit)->bytes() == std::string("a\0", 2));

    // second position copies the first: "aa" + sentinel
    MacroScheme chain;
    chain.phrases = {Phrase{1, 0, 0, 'a'}, Phrase{2, 1, 1, kSentinel}};
    CHECK(materialize(chain)->bytes() == std::string("aa\0", 3));
}

TEST_CASE("materialize fails on looping schemes") {
    CHECK(!materialize(fixtures::demo_looping_scheme()).has_value());
}

TEST_CASE("scheme serialization is bit-exact") {
    const std::string expected =
        "BMS 1\n"
        "n 22\n"
        "k 4\n"
        "6 6 98\n"
        "16 4 97\n"
        "0 0 98\n"
        "9 8 0\n";
    CHECK(write_scheme(fixtures::demo_valid_scheme()) == expected);
    CHECK(read_scheme(expected) == fixtures::demo_valid_scheme());
}

TEST_CASE("scheme read/write round-trips") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Text t = oracle::random_text(rng, static_cast<Pos>(rng.below(200)), 3);
        const MacroScheme s = oracle::random_scheme(rng, t);
        CHECK(read_scheme(write_scheme(s)) == s);
    }
}

TEST_CASE("read_scheme rejects malformed streams") {
    CHECK_THROWS_AS(read_scheme("BMS 2\nn 1\nk 1\n0 0 0\n"), FormatError);
    CHECK_THROWS_AS(read_scheme("BMS 1\nn 3\nk 2\n0 0 97\n"), FormatError);        // missing line
    CHECK_THROWS_AS(read_scheme("BMS 1\nn 3\nk 1\n0 0 97\n"), FormatError);        // tiling short
    CHECK_THROWS_AS(read_scheme("BMS 1\nn 2\nk 2\n0 0 97\n0 0 0\nx\n"), FormatError);  // trailing
    CHECK_THROWS_AS(read_scheme("BMS 1\nn 2\nk 1\n0 zz 0\n"), FormatError);        // non-integer
    CHECK_THROWS_AS(read_scheme("BMS 1\nn 3\nk 2\n5 0 97\n0 0 0\n"), FormatError);  // len 0, source != 0
    CHECK_THROWS_AS(read_scheme("BMS 1\nn 3\nk 2\n1 1 97\n0 0 0\n"), FormatError);  // source == start
    CHECK_THROWS_AS(read_scheme("BMS 1\nn 3\nk 2\n3 2 97\n0 0 0\n"), FormatError);  // range past n
}

TEST_CASE("validate agrees with the naive chain-following oracle") {
    Rng rng(1234);
    int invalid_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const Pos raw_len = static_cast<Pos>(rng.below(999));
        const Text t = oracle::random_text(rng, raw_len, trial % 2 == 0 ? 2 : 4);
        MacroScheme s = oracle::random_scheme(rng, t);
        if (trial % 3 != 0) {
            oracle::corrupt_scheme(rng, t, s, trial % 6 == 1);
            oracle::corrupt_scheme(rng, t, s);
        }
        const ValidationReport rep = validate(s, t);
        CHECK(rep.valid() == oracle::naive_valid(s, t));
        if (!rep.valid()) ++invalid_seen;
        // reported cycles must match the oracle's cycle sets exactly
        std::set<std::vector<Pos>> got;
        for (auto c : rep.cycles) {
            std::sort(c.begin(), c.end());
            got.insert(c);
        }
        CHECK(got == oracle::naive_cycles(s));
        if (rep.cycles.empty() && rep.mismatched_phrases.empty()) {
            const auto text2 = materialize(s);
            REQUIRE(text2.has_value());
            CHECK(*text2 == t);
        }
    }
    CHECK(invalid_seen > 10);  // the corruption actually exercised the invalid path
}

TEST_CASE("k is at least the number of distinct symbols") {
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const Text t = oracle::random_text(rng, 30 + static_cast<Pos>(rng.below(100)), 5);
        const MacroScheme s = oracle::random_scheme(rng, t);
        if (!validate(s, t).valid()) continue;
        std::set<Sym> distinct;
        for (Pos p = 1; p <= t.n(); ++p) distinct.insert(t.at(p));
        CHECK(s.k() >= static_cast<int>(distinct.size()));
    }
}
