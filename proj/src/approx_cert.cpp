#include "bms/approx_cert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bms {

CertificateReport check_certificate(const MacroScheme& scheme, const Text& text,
                                    const SuffixIndex& idx) {
    CertificateReport report;
    report.k = scheme.k();
    report.lower_bound = substring_complexity_bound(text, idx);
    report.holds = true;
    for (std::size_t i = 0; i + 1 < scheme.phrases.size(); ++i) {
        const Phrase& a = scheme.phrases[i];
        const Phrase& b = scheme.phrases[i + 1];
        // pair string minus its final explicit letter
        const Pos len = a.len + 1 + b.len;
        const auto iv = idx.locate(a.start, len);
        if (iv && iv->count() > 1) {
            report.holds = false;
            report.witness = std::make_pair(static_cast<int>(i) + 1, static_cast<int>(i) + 2);
            break;
        }
    }
    if (report.holds) report.ratio_bound = 2.0;
    return report;
}

Attractor attractor_of(const MacroScheme& scheme) {
    Attractor att;
    att.positions.reserve(scheme.phrases.size());
    for (const Phrase& p : scheme.phrases) att.positions.push_back(p.letter_pos());
    return att;
}

bool verify_attractor(const Text& text, const std::vector<Pos>& positions, Pos cap) {
    const Pos n = text.n();
    if (n > cap) throw std::invalid_argument("verify_attractor: text longer than the brute-force cap");

    // next attractor position at or after p (n+1 when none)
    std::vector<Pos> next_gamma(static_cast<std::size_t>(n) + 2, n + 1);
    std::vector<char> is_gamma(static_cast<std::size_t>(n) + 1, 0);
    for (Pos g : positions)
        if (g >= 1 && g <= n) is_gamma[static_cast<std::size_t>(g)] = 1;
    for (Pos p = n; p >= 1; --p)
        next_gamma[static_cast<std::size_t>(p)] =
            is_gamma[static_cast<std::size_t>(p)] ? p : next_gamma[static_cast<std::size_t>(p) + 1];

    // enumerate substrings T[i..j], extending occurrence lists incrementally
    std::vector<Pos> occ;
    for (Pos i = 1; i <= n; ++i) {
        occ.clear();
        for (Pos p = 1; p <= n; ++p)
            if (text.at(p) == text.at(i)) occ.push_back(p);
        for (Pos j = i; j <= n; ++j) {
            const Pos len = j - i + 1;
            if (j > i) {
                std::size_t keep = 0;
                for (Pos p : occ)
                    if (p + len - 1 <= n && text.at(p + len - 1) == text.at(j)) occ[keep++] = p;
                occ.resize(keep);
            }
            bool covered = false;
            for (Pos p : occ)
                if (next_gamma[static_cast<std::size_t>(p)] <= p + len - 1) {
                    covered = true;
                    break;
                }
            if (!covered) return false;
        }
    }
    return true;
}

namespace {

// lcp[r] (r in [2..n]) = longest common prefix of the suffixes at ranks r-1
// and r, by Kasai's method.
std::vector<Pos> adjacent_lcp(const Text& text, const SuffixIndex& idx) {
    const Pos n = idx.n();
    std::vector<Pos> lcp(static_cast<std::size_t>(n) + 1, 0);
    Pos h = 0;
    for (Pos p = 1; p <= n; ++p) {
        const Pos r = idx.rank_of(p);
        if (r == 1) {
            h = 0;
            continue;
        }
        const Pos q = idx.sa(r - 1);
        if (h > 0) --h;
        while (p + h <= n && q + h <= n && text.at(p + h) == text.at(q + h)) ++h;
        lcp[static_cast<std::size_t>(r)] = h;
    }
    return lcp;
}

}  // namespace

int substring_complexity_bound(const Text& text, const SuffixIndex& idx) {
    const Pos n = text.n();
    const int log2n = static_cast<int>(std::ceil(std::log2(std::max(n, static_cast<Pos>(2)))));
    const Pos max_len = std::min<Pos>(n, log2n * log2n);

    const std::vector<Pos> lcp = adjacent_lcp(text, idx);
    // ge[l] = number of ranks whose lcp with the previous suffix is >= l
    std::vector<Pos> ge(static_cast<std::size_t>(max_len) + 2, 0);
    for (Pos r = 2; r <= n; ++r) {
        const Pos v = std::min(lcp[static_cast<std::size_t>(r)], max_len + 1);
        if (v >= 1) ge[static_cast<std::size_t>(v)]++;
    }
    for (Pos l = max_len; l >= 1; --l) ge[static_cast<std::size_t>(l)] += ge[static_cast<std::size_t>(l) + 1];

    int best = 1;
    for (Pos l = 1; l <= max_len; ++l) {
        const Pos distinct = (n - l + 1) - ge[static_cast<std::size_t>(l)];
        const int bound = static_cast<int>((distinct + l - 1) / l);
        best = std::max(best, bound);
    }
    return best;
}

int lower_bound(const FamilyParams& params, const Text& text) {
    switch (params.family) {
        case Family::Fibonacci:
            return 3;
        case Family::ThueMorse: {
            const SuffixIndex idx = SuffixIndex::build(text);
            return std::max(3, substring_complexity_bound(text, idx));
        }
        case Family::DeBruijn: {
            if (params.order < 1 || params.order > 30)
                throw std::invalid_argument("lower_bound: bad de Bruijn order");
            const long long total = 1LL << params.order;
            return static_cast<int>(total / params.order) + 1;
        }
        case Family::Planted:
            return params.d;
        case Family::Generic: {
            const SuffixIndex idx = SuffixIndex::build(text);
            return substring_complexity_bound(text, idx);
        }
    }
    return 1;
}

}  // namespace bms
