#include "bms/lz.hpp"

#include <algorithm>

namespace bms {

namespace {

// Min text position over a suffix-array rank range; sparse-table-free
// segment tree to keep memory linear.
class RankRangeMin {
public:
    explicit RankRangeMin(const SuffixIndex& idx) : n_(idx.n()), tree_(2 * static_cast<std::size_t>(n_)) {
        for (Pos r = 1; r <= n_; ++r) tree_[static_cast<std::size_t>(n_ + r - 1)] = idx.sa(r);
        for (Pos i = n_ - 1; i >= 1; --i)
            tree_[static_cast<std::size_t>(i)] = std::min(tree_[2 * static_cast<std::size_t>(i)],
                                                          tree_[2 * static_cast<std::size_t>(i) + 1]);
    }

    Pos min(Pos lo, Pos hi) const {  // 1-based inclusive ranks
        Pos best = n_ + 1;
        std::size_t l = static_cast<std::size_t>(n_ + lo - 1);
        std::size_t r = static_cast<std::size_t>(n_ + hi - 1) + 1;
        for (; l < r; l >>= 1, r >>= 1) {
            if (l & 1) best = std::min(best, tree_[l++]);
            if (r & 1) best = std::min(best, tree_[--r]);
        }
        return best;
    }

private:
    Pos n_;
    std::vector<Pos> tree_;
};

}  // namespace

MacroScheme lz_parse(const Text& text, const SuffixIndex& idx) {
    const Pos n = text.n();
    const RankRangeMin rmq(idx);

    // True iff text[pos..pos+len-1] occurs starting strictly before pos.
    const auto has_earlier = [&](Pos pos, Pos len) {
        if (len == 0) return true;
        const auto iv = idx.locate(pos, len);
        return iv && rmq.min(iv->lo, iv->hi) < pos;
    };

    MacroScheme scheme;
    Pos pos = 1;
    while (pos <= n) {
        // longest copy part; monotone in len, so binary search
        Pos lo = 0, hi = n - pos;
        while (lo < hi) {
            const Pos mid = lo + (hi - lo + 1) / 2;
            if (has_earlier(pos, mid))
                lo = mid;
            else
                hi = mid - 1;
        }
        const Pos len = lo;
        Pos source = 0;
        if (len > 0) {
            const auto iv = idx.locate(pos, len);
            source = rmq.min(iv->lo, iv->hi);  // leftmost occurrence
        }
        scheme.phrases.push_back(Phrase{pos, source, len, text.at(pos + len)});
        pos += len + 1;
    }
    return scheme;
}

int lz_size(const Text& text, const SuffixIndex& idx) { return lz_parse(text, idx).k(); }

int lz_size(const Text& text) {
    const SuffixIndex idx = SuffixIndex::build(text);
    return lz_size(text, idx);
}

}  // namespace bms
