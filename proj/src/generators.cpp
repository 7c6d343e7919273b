#include "bms/generators.hpp"

#include <algorithm>
#include <cassert>

#include "bms/rng.hpp"

namespace bms {

Text fibonacci(int i) {
    if (i < 1) throw std::invalid_argument("fibonacci: index must be >= 1");
    std::string prev = "b";  // F1
    std::string cur = "a";   // F2
    if (i == 1) return attach_sentinel(prev);
    for (int j = 2; j < i; ++j) {
        std::string next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return attach_sentinel(cur);
}

Text thue_morse(int i) {
    if (i < 0) throw std::invalid_argument("thue_morse: index must be >= 0");
    std::string word = "0";
    for (int j = 0; j < i; ++j) {
        std::string flipped = word;
        for (char& c : flipped) c = c == '0' ? '1' : '0';
        word += flipped;
    }
    return attach_sentinel(word);
}

Text de_bruijn(int order) {
    if (order < 1 || order > 20) throw std::invalid_argument("de_bruijn: order must be in [1, 20]");
    // Lyndon words over {0,1} of length dividing `order`, in lexicographic
    // order, give the least cyclic de Bruijn sequence of length 2^order.
    std::string seq;
    std::vector<int> a(static_cast<std::size_t>(order) + 1, 0);
    const auto gen = [&](auto&& self, int t, int p) -> void {
        if (t > order) {
            if (order % p == 0)
                for (int j = 1; j <= p; ++j) seq += static_cast<char>('0' + a[static_cast<std::size_t>(j)]);
            return;
        }
        a[static_cast<std::size_t>(t)] = a[static_cast<std::size_t>(t - p)];
        self(self, t + 1, p);
        for (int j = a[static_cast<std::size_t>(t - p)] + 1; j <= 1; ++j) {
            a[static_cast<std::size_t>(t)] = j;
            self(self, t + 1, t);
        }
    };
    gen(gen, 1, 1);
    seq += seq.substr(0, static_cast<std::size_t>(order) - 1);  // linearize the cycle
    return attach_sentinel(seq);
}

namespace {

// d-1 distinct values from [1..limit], unsorted, uniform over subsets
// (Floyd's algorithm).
std::vector<Pos> sample_distinct(Rng& rng, int count, Pos limit) {
    std::vector<Pos> out;
    out.reserve(static_cast<std::size_t>(count));
    for (Pos j = limit - count + 1; j <= limit; ++j) {
        const Pos t = static_cast<Pos>(rng.range(1, j));
        if (std::find(out.begin(), out.end(), t) != out.end())
            out.push_back(j);
        else
            out.push_back(t);
    }
    return out;
}

}  // namespace

Planted planted(Pos n, int d, std::uint64_t seed, long max_rejections) {
    if (d < 2 || d > 255 || d > n) throw std::invalid_argument("planted: need 2 <= d <= min(n, 255)");
    Rng rng(seed);
    Planted result;
    for (long attempt = 0;; ++attempt) {
        if (attempt > max_rejections)
            throw GiveUp("planted: no valid scheme after " + std::to_string(max_rejections) +
                         " redraws");
        // boundaries: explicit-letter positions of the first d-1 phrases;
        // position n is reserved for the sentinel phrase
        std::vector<Pos> bounds = sample_distinct(rng, d - 1, n - 1);
        std::sort(bounds.begin(), bounds.end());
        bounds.push_back(n);

        std::vector<Sym> letters(static_cast<std::size_t>(d - 1));
        for (int i = 0; i < d - 1; ++i) letters[static_cast<std::size_t>(i)] = static_cast<Sym>(i + 1);
        for (int i = d - 2; i > 0; --i)
            std::swap(letters[static_cast<std::size_t>(i)],
                      letters[static_cast<std::size_t>(rng.range(0, i))]);
        letters.push_back(kSentinel);

        MacroScheme scheme;
        scheme.phrases.reserve(static_cast<std::size_t>(d));
        Pos start = 1;
        bool feasible = true;
        for (int i = 0; i < d && feasible; ++i) {
            const Pos end = bounds[static_cast<std::size_t>(i)];
            const Pos len = end - start;
            Pos source = 0;
            if (len > 0) {
                // whole occurrences that avoid the sentinel position: the
                // source range must fit inside [1..n-1]
                const Pos limit = n - len;
                const Pos candidates = limit - (start <= limit ? 1 : 0);
                if (candidates < 1) {
                    feasible = false;
                    break;
                }
                Pos pick = static_cast<Pos>(rng.range(1, candidates));
                if (pick >= start) ++pick;
                source = pick;
            }
            scheme.phrases.push_back(Phrase{start, source, len, letters[static_cast<std::size_t>(i)]});
            start = end + 1;
        }
        if (!feasible) continue;

        std::optional<Text> text = materialize(scheme);
        if (!text) continue;  // decoding loops; redraw

        assert(validate(scheme, *text).valid());
        result.text = std::move(*text);
        result.scheme = std::move(scheme);
        result.rejections = attempt;
        return result;
    }
}

}  // namespace bms
