#include "bms/link_cut_forest.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bms;
using LinkStatus = DecodeForest::LinkStatus;

namespace {

// Forest of the demo scheme's decoding paths: parents j -> source + (j - start).
DecodeForest demo_forest() {
    DecodeForest f(22);
    for (const Phrase& p : fixtures::demo_valid_scheme().phrases)
        for (Pos j = p.start; j < p.start + p.len; ++j)
            REQUIRE(f.link(j, p.source + (j - p.start)) == LinkStatus::Ok);
    return f;
}

}  // namespace

TEST_CASE("root queries on the demo forest") {
    DecodeForest f = demo_forest();
    CHECK(f.find_root(21) == 12);  // 21,16,11,19,14,9,17,12
    CHECK(f.path_to_root_length(21) == 7);
    CHECK(f.kth_on_path(21, 0) == 21);
    CHECK(f.kth_on_path(21, 1) == 16);
    CHECK(f.kth_on_path(21, 7) == 12);
    CHECK(f.on_root_path(21, 19));
    CHECK(f.on_root_path(21, 14));
    CHECK(!f.on_root_path(21, 5));  // 5 hangs under root 13
    CHECK(f.find_root(2) == 7);
    CHECK(f.is_root(12));
    CHECK(!f.is_root(21));
    CHECK_THROWS_AS(f.kth_on_path(21, 8), std::out_of_range);
    CHECK_THROWS_AS(f.kth_on_path(21, -1), std::out_of_range);
}

TEST_CASE("cut makes the child a root; relinking restores the forest") {
    DecodeForest f = demo_forest();
    CHECK(f.parent_of(14) == 9);
    CHECK(f.cut(14));
    CHECK(f.is_root(14));
    CHECK(f.find_root(21) == 14);
    CHECK(!f.cut(14));  // already a root
    CHECK(f.link(14, 9) == LinkStatus::Ok);
    CHECK(f.find_root(21) == 12);
}

TEST_CASE("links that would close a cycle are refused") {
    DecodeForest f = demo_forest();
    // detach the second phrase's positions, as a merge attempt would
    for (Pos j : {8, 9, 10, 11}) CHECK(f.cut(j));
    CHECK(f.on_root_path(3, 8));  // 3's parent is 8
    CHECK(f.link(8, 3) == LinkStatus::WouldCycle);
    CHECK(f.link(9, 9) == LinkStatus::WouldCycle);  // self-loop
    CHECK(f.link(3, 9) == LinkStatus::NotRoot);     // 3 still has a parent
    // restoring the original edges works
    for (Pos j : {8, 9, 10, 11}) CHECK(f.link(j, j + 8) == LinkStatus::Ok);
    CHECK(f.find_root(21) == 12);
}

TEST_CASE("forest agrees with a parent-array oracle over random operations") {
    const Pos n = 1000;
    DecodeForest forest(n);
    oracle::NaiveForest naive(n);
    Rng rng(2024);

    int links = 0, cuts = 0, queries = 0;
    for (int op = 0; op < 100000; ++op) {
        switch (rng.below(6)) {
            case 0:
            case 1: {  // link a random pair
                const Pos c = static_cast<Pos>(1 + rng.below(n));
                const Pos p = static_cast<Pos>(1 + rng.below(n));
                const bool root = naive.is_root(c);
                const bool cyc = root && naive.would_cycle(c, p);
                const LinkStatus got = forest.link(c, p);
                if (!root)
                    CHECK(got == LinkStatus::NotRoot);
                else if (cyc)
                    CHECK(got == LinkStatus::WouldCycle);
                else {
                    CHECK(got == LinkStatus::Ok);
                    REQUIRE(naive.link(c, p));
                    ++links;
                }
                break;
            }
            case 2: {  // cut
                const Pos c = static_cast<Pos>(1 + rng.below(n));
                CHECK(forest.cut(c) == naive.cut(c));
                ++cuts;
                break;
            }
            case 3: {  // root / parent / length
                const Pos v = static_cast<Pos>(1 + rng.below(n));
                CHECK(forest.find_root(v) == naive.find_root(v));
                CHECK(forest.parent_of(v) == naive.parent_of(v));
                CHECK(forest.path_to_root_length(v) == naive.path_length(v));
                ++queries;
                break;
            }
            case 4: {  // k-th node on the root path
                const Pos v = static_cast<Pos>(1 + rng.below(n));
                const int len = naive.path_length(v);
                const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(len) + 1));
                CHECK(forest.kth_on_path(v, k) == naive.kth(v, k));
                ++queries;
                break;
            }
            case 5: {  // membership of the root path
                const Pos v = static_cast<Pos>(1 + rng.below(n));
                const Pos u = static_cast<Pos>(1 + rng.below(n));
                CHECK(forest.on_root_path(v, u) == naive.on_path(v, u));
                ++queries;
                break;
            }
        }
    }
    CHECK(links > 1000);
    CHECK(cuts > 1000);
    CHECK(queries > 1000);
}
