#include "bms/suffix_index.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>

namespace bms {

namespace {

// Sorts the cyclic shifts of s by prefix doubling with counting sorts. With a
// unique smallest final byte, cyclic order equals suffix order.
std::vector<int> sort_cyclic_shifts(const std::string& s) {
    const int n = static_cast<int>(s.size());
    const int alphabet = 256;
    std::vector<int> p(n), c(n), cnt(std::max(alphabet, n), 0);
    for (int i = 0; i < n; i++) cnt[static_cast<unsigned char>(s[i])]++;
    for (int i = 1; i < alphabet; i++) cnt[i] += cnt[i - 1];
    for (int i = 0; i < n; i++) p[--cnt[static_cast<unsigned char>(s[i])]] = i;
    c[p[0]] = 0;
    int classes = 1;
    for (int i = 1; i < n; i++) {
        if (s[p[i]] != s[p[i - 1]]) classes++;
        c[p[i]] = classes - 1;
    }
    std::vector<int> pn(n), cn(n);
    for (int h = 0; (1 << h) < n; ++h) {
        const int shift = 1 << h;
        for (int i = 0; i < n; i++) {
            pn[i] = p[i] - shift;
            if (pn[i] < 0) pn[i] += n;
        }
        std::fill(cnt.begin(), cnt.begin() + classes, 0);
        for (int i = 0; i < n; i++) cnt[c[pn[i]]]++;
        for (int i = 1; i < classes; i++) cnt[i] += cnt[i - 1];
        for (int i = n - 1; i >= 0; i--) p[--cnt[c[pn[i]]]] = pn[i];
        cn[p[0]] = 0;
        classes = 1;
        for (int i = 1; i < n; i++) {
            const int cur2 = c[(p[i] + shift) % n];
            const int prev2 = c[(p[i - 1] + shift) % n];
            if (c[p[i]] != c[p[i - 1]] || cur2 != prev2) ++classes;
            cn[p[i]] = classes - 1;
        }
        c.swap(cn);
        if (classes == n) break;
    }
    return p;
}

}  // namespace

SuffixIndex SuffixIndex::build(const Text& text) {
    const Pos n = text.n();
    assert(n >= 1 && text.at(n) == kSentinel);
    SuffixIndex idx;
    idx.text_ = &text;
    std::vector<int> p = sort_cyclic_shifts(text.bytes());
    idx.sa_.resize(static_cast<std::size_t>(n));
    idx.isa_.resize(static_cast<std::size_t>(n));
    for (Pos r = 0; r < n; ++r) {
        idx.sa_[static_cast<std::size_t>(r)] = p[static_cast<std::size_t>(r)] + 1;
        idx.isa_[static_cast<std::size_t>(p[static_cast<std::size_t>(r)])] = r + 1;
    }
    return idx;
}

int SuffixIndex::compare_suffix(Pos start, Pos pos, Pos len) const {
    const Pos n_ = n();
    const Pos avail = n_ - start + 1;
    const Pos m = std::min(avail, len);
    const char* a = text_->bytes().data() + start - 1;
    const char* b = text_->bytes().data() + pos - 1;
    const int c = std::memcmp(a, b, static_cast<std::size_t>(m));
    if (c != 0) return c;
    if (avail < len) return -1;  // proper prefix sorts first
    return 0;
}

std::optional<SAInterval> SuffixIndex::locate(Pos pos, Pos len) const {
    const Pos n_ = n();
    if (len == 0) return SAInterval{1, n_, 0};
    // first rank whose suffix >= pattern
    Pos lo = 1, hi = n_ + 1;
    while (lo < hi) {
        const Pos mid = lo + (hi - lo) / 2;
        if (compare_suffix(sa(mid), pos, len) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    const Pos first = lo;
    // first rank whose suffix > pattern as prefix
    hi = n_ + 1;
    while (lo < hi) {
        const Pos mid = lo + (hi - lo) / 2;
        if (compare_suffix(sa(mid), pos, len) <= 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (first >= lo) return std::nullopt;
    return SAInterval{first, lo - 1, len};
}

std::vector<Pos> SuffixIndex::occurrences(const SAInterval& iv) const {
    std::vector<Pos> out;
    out.reserve(static_cast<std::size_t>(iv.count()));
    for (Pos r = iv.lo; r <= iv.hi; ++r) out.push_back(sa(r));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<SAInterval> SuffixIndex::merge(const SAInterval& left,
                                             const SAInterval& right) const {
    if (right.pat_len == 0) return left;
    const Pos n_ = n();
    const Pos p = left.pat_len;
    // Within left's range all suffixes share the same first p symbols, so
    // ordering is decided by the continuation at offset p: its rank is
    // nondecreasing across the range (0 stands for "suffix ends here").
    const auto key = [&](Pos r) -> Pos {
        const Pos q = sa(r) + p;
        return q > n_ ? 0 : rank_of(q);
    };
    Pos lo = left.lo, hi = left.hi + 1;
    while (lo < hi) {
        const Pos mid = lo + (hi - lo) / 2;
        if (key(mid) < right.lo)
            lo = mid + 1;
        else
            hi = mid;
    }
    const Pos first = lo;
    hi = left.hi + 1;
    while (lo < hi) {
        const Pos mid = lo + (hi - lo) / 2;
        if (key(mid) <= right.hi)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (first >= lo) return std::nullopt;
    return SAInterval{first, lo - 1, left.pat_len + right.pat_len};
}

}  // namespace bms
