#include "bms/annealing.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "bms/approx_cert.hpp"
#include "bms/lz.hpp"

namespace bms {

void AnnealParams::validate() const {
    if (!(t0 > 0)) throw std::invalid_argument("t0 must be positive");
    if (!(alpha > 0) || alpha > 1) throw std::invalid_argument("alpha must be in (0, 1]");
    if (cool_every < 1) throw std::invalid_argument("cool_every must be >= 1");
    if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
    if (retries < 1) throw std::invalid_argument("retries must be >= 1");
}

bool accept(double delta, double t, double p) { return delta <= -t * std::log(p); }

// ---------------------------------------------------------------- IndexedSet

bool Annealer::IndexedSet::contains(int id) const {
    return id < static_cast<int>(member_.size()) && member_[static_cast<std::size_t>(id)] != 0;
}

void Annealer::IndexedSet::ensure(int id) {
    if (id < static_cast<int>(member_.size())) return;
    int cap = member_.empty() ? 64 : static_cast<int>(member_.size());
    while (cap <= id) cap *= 2;
    rebuild(cap);
}

void Annealer::IndexedSet::rebuild(int cap) {
    member_.resize(static_cast<std::size_t>(cap), 0);
    tree_.assign(static_cast<std::size_t>(cap) + 1, 0);
    for (int id = 0; id < cap; ++id)
        if (member_[static_cast<std::size_t>(id)])
            for (int i = id + 1; i <= cap; i += i & -i) tree_[static_cast<std::size_t>(i)]++;
}

bool Annealer::IndexedSet::insert(int id) {
    ensure(id);
    if (member_[static_cast<std::size_t>(id)]) return false;
    member_[static_cast<std::size_t>(id)] = 1;
    ++count_;
    const int cap = static_cast<int>(member_.size());
    for (int i = id + 1; i <= cap; i += i & -i) tree_[static_cast<std::size_t>(i)]++;
    return true;
}

bool Annealer::IndexedSet::erase(int id) {
    if (!contains(id)) return false;
    member_[static_cast<std::size_t>(id)] = 0;
    --count_;
    const int cap = static_cast<int>(member_.size());
    for (int i = id + 1; i <= cap; i += i & -i) tree_[static_cast<std::size_t>(i)]--;
    return true;
}

int Annealer::IndexedSet::select(int rank) const {
    assert(rank >= 0 && rank < count_);
    const int cap = static_cast<int>(member_.size());
    int target = rank + 1;
    int idx = 0;
    int bit = 1;
    while (bit * 2 <= cap) bit *= 2;
    for (; bit > 0; bit /= 2) {
        const int next = idx + bit;
        if (next <= cap && tree_[static_cast<std::size_t>(next)] < target) {
            idx = next;
            target -= tree_[static_cast<std::size_t>(idx)];
        }
    }
    return idx;  // 0-based id (Fenwick index idx+1 holds it)
}

// ------------------------------------------------------------------ Annealer

Annealer::Annealer(const Text& text, const SuffixIndex& idx, const AnnealParams& params)
    : text_(text),
      idx_(idx),
      params_(params),
      rng_(params.seed),
      forest_(text.n()),
      temperature_(params.t0) {
    params_.validate();
    MacroScheme initial;
    if (params_.init == AnnealParams::Init::Lz) {
        initial = lz_parse(text_, idx_);
    } else {
        initial.phrases.reserve(static_cast<std::size_t>(text_.n()));
        for (Pos p = 1; p <= text_.n(); ++p)
            initial.phrases.push_back(Phrase{p, 0, 0, text_.at(p)});
    }
    build_from(initial);
}

Annealer::Annealer(const Text& text, const SuffixIndex& idx, const AnnealParams& params,
                   const MacroScheme& initial)
    : text_(text),
      idx_(idx),
      params_(params),
      rng_(params.seed),
      forest_(text.n()),
      temperature_(params.t0) {
    params_.validate();
    build_from(initial);
}

void Annealer::build_from(const MacroScheme& initial) {
    const Pos n = text_.n();
    if (initial.text_len() != n) throw std::invalid_argument("initial scheme does not tile the text");

    slots_.reserve(initial.phrases.size() * 2);
    Pos expect = 1;
    int prev = -1;
    for (const Phrase& p : initial.phrases) {
        if (p.start != expect || p.len < 0 || p.letter_pos() > n)
            throw std::invalid_argument("initial scheme does not tile the text");
        if (p.len > 0 && (p.source < 1 || p.source + p.len - 1 > n || p.source == p.start))
            throw std::invalid_argument("initial scheme has a bad source");
        const int id = new_slot();
        PhraseNode& node = slots_[static_cast<std::size_t>(id)];
        node.start = p.start;
        node.source = p.len == 0 ? 0 : p.source;
        node.len = p.len;
        node.letter = p.letter;
        node.prev = prev;
        node.alive = true;
        if (prev != -1)
            slots_[static_cast<std::size_t>(prev)].next = id;
        else
            head_ = id;
        by_start_[p.start] = id;
        prev = id;
        expect = p.letter_pos() + 1;
    }
    k_ = static_cast<int>(initial.phrases.size());

    for (const Phrase& p : initial.phrases)
        for (Pos j = p.start; j < p.start + p.len; ++j)
            if (forest_.link(j, p.source + (j - p.start)) != DecodeForest::LinkStatus::Ok)
                throw std::invalid_argument("initial scheme has decoding cycles");

    for (int id = head_; id != -1; id = slots_[static_cast<std::size_t>(id)].next)
        if (slots_[static_cast<std::size_t>(id)].next != -1) adm_.insert(id);

    // single-letter intervals, used to extend a copy part by its phrase letter
    letter_interval_.assign(256, std::nullopt);
    std::vector<Pos> first(256, 0);
    for (Pos p = n; p >= 1; --p) first[text_.at(p)] = p;
    for (int b = 0; b < 256; ++b)
        if (first[static_cast<std::size_t>(b)] != 0)
            letter_interval_[static_cast<std::size_t>(b)] =
                *idx_.locate(first[static_cast<std::size_t>(b)], 1);
}

int Annealer::new_slot() {
    slots_.emplace_back();
    const int id = static_cast<int>(slots_.size()) - 1;
    adm_.ensure(id);
    return id;
}

int Annealer::phrase_at(Pos pos) const {
    auto it = by_start_.upper_bound(pos);
    assert(it != by_start_.begin());
    --it;
    return it->second;
}

bool Annealer::is_explicit_position(Pos pos) const {
    const PhraseNode& node = slots_[static_cast<std::size_t>(phrase_at(pos))];
    return node.start + node.len == pos;
}

SAInterval Annealer::copy_interval(int id) {
    PhraseNode& node = slots_[static_cast<std::size_t>(id)];
    if (!node.copy_cache) {
        if (node.len == 0)
            node.copy_cache = SAInterval{1, idx_.n(), 0};
        else
            node.copy_cache = *idx_.locate(node.start, node.len);
        journal_.push_back({JournalEntry::Op::CacheFill, id, 0, 0});
    }
    return *node.copy_cache;
}

SAInterval Annealer::merged_interval(int l_id, int r_id) {
    const SAInterval left = copy_interval(l_id);
    const auto& letter = letter_interval_[slots_[static_cast<std::size_t>(l_id)].letter];
    const auto full = idx_.merge(left, *letter);
    assert(full);
    const SAInterval right = copy_interval(r_id);
    const auto w = idx_.merge(*full, right);
    assert(w);  // W occurs at the pair's own start
    return *w;
}

Pos Annealer::sample_source(const SAInterval& w, Pos exclude) {
    const Pos ex_rank = idx_.rank_of(exclude);
    assert(ex_rank >= w.lo && ex_rank <= w.hi);
    Pos r = w.lo + static_cast<Pos>(rng_.below(static_cast<std::uint64_t>(w.count() - 1)));
    if (r >= ex_rank) ++r;
    return idx_.sa(r);
}

void Annealer::adm_insert_checked(int id) {
    if (slots_[static_cast<std::size_t>(id)].next == -1) return;  // never the last phrase
    if (adm_.insert(id)) journal_.push_back({JournalEntry::Op::AdmInsert, id, 0, 0});
}

void Annealer::adm_remove_checked(int id) {
    if (adm_.erase(id)) journal_.push_back({JournalEntry::Op::AdmRemove, id, 0, 0});
}

int Annealer::apply_merge_table(int l_id, int r_id, Pos source, const SAInterval& w) {
    const PhraseNode L = slots_[static_cast<std::size_t>(l_id)];
    const PhraseNode R = slots_[static_cast<std::size_t>(r_id)];
    const int m = new_slot();
    PhraseNode& M = slots_[static_cast<std::size_t>(m)];
    M.start = L.start;
    M.source = source;
    M.len = L.len + 1 + R.len;
    M.letter = R.letter;
    M.prev = L.prev;
    M.next = R.next;
    M.alive = true;
    M.copy_cache = w;  // the interval just computed for the merge

    if (L.prev != -1)
        slots_[static_cast<std::size_t>(L.prev)].next = m;
    else
        head_ = m;
    if (R.next != -1) slots_[static_cast<std::size_t>(R.next)].prev = m;
    slots_[static_cast<std::size_t>(l_id)].alive = false;
    slots_[static_cast<std::size_t>(r_id)].alive = false;
    by_start_[L.start] = m;
    by_start_.erase(R.start);
    --k_;
    journal_.push_back({JournalEntry::Op::TableMerge, l_id, r_id, m});

    adm_remove_checked(l_id);
    adm_remove_checked(r_id);
    adm_insert_checked(m);
    if (L.prev != -1) adm_insert_checked(L.prev);
    return m;
}

void Annealer::apply_split_table(int id, Pos q) {
    const PhraseNode P = slots_[static_cast<std::size_t>(id)];
    assert(q >= P.start && q < P.start + P.len);
    const int lft = new_slot();
    const int rgt = new_slot();
    {
        PhraseNode& node = slots_[static_cast<std::size_t>(lft)];
        node.start = P.start;
        node.len = q - P.start;
        node.source = node.len == 0 ? 0 : P.source;  // left part keeps its source
        node.letter = text_.at(q);
        node.prev = P.prev;
        node.next = rgt;
        node.alive = true;
    }
    {
        PhraseNode& node = slots_[static_cast<std::size_t>(rgt)];
        node.start = q + 1;
        node.len = P.len - (q - P.start) - 1;
        // right part points past the consumed left part
        node.source = node.len == 0 ? 0 : P.source + (q + 1 - P.start);
        node.letter = P.letter;
        node.prev = lft;
        node.next = P.next;
        node.alive = true;
    }
    if (P.prev != -1)
        slots_[static_cast<std::size_t>(P.prev)].next = lft;
    else
        head_ = lft;
    if (P.next != -1) slots_[static_cast<std::size_t>(P.next)].prev = rgt;
    slots_[static_cast<std::size_t>(id)].alive = false;
    by_start_[P.start] = lft;
    by_start_[q + 1] = rgt;
    ++k_;
    journal_.push_back({JournalEntry::Op::TableSplit, id, lft, rgt});

    adm_remove_checked(id);
    adm_insert_checked(lft);
    adm_insert_checked(rgt);
    if (P.prev != -1) adm_insert_checked(P.prev);
}

void Annealer::cut_copy_edges(int id) {
    const PhraseNode node = slots_[static_cast<std::size_t>(id)];
    for (Pos j = node.start; j < node.start + node.len; ++j) {
        const bool ok = forest_.cut(j);
        assert(ok);
        (void)ok;
        journal_.push_back({JournalEntry::Op::ForestCut, j, node.source + (j - node.start), 0});
    }
}

bool Annealer::try_relink_clean(int l_id, int r_id, Pos source, const SAInterval& w) {
    const std::size_t mark = journal_.size();
    const std::size_t smark = slots_.size();
    const Pos start = slots_[static_cast<std::size_t>(l_id)].start;
    const Pos wlen = slots_[static_cast<std::size_t>(l_id)].len + 1 +
                     slots_[static_cast<std::size_t>(r_id)].len;

    cut_copy_edges(l_id);
    cut_copy_edges(r_id);
    apply_merge_table(l_id, r_id, source, w);
    for (Pos j = start; j < start + wlen; ++j) {
        const auto st = forest_.link(j, source + (j - start));
        assert(st != DecodeForest::LinkStatus::NotRoot);
        if (st != DecodeForest::LinkStatus::Ok) {
            undo_to(mark);
            slots_.resize(smark);
            return false;
        }
        journal_.push_back({JournalEntry::Op::ForestLink, j, 0, 0});
    }
    return true;
}

void Annealer::make_explicit(Pos q, Pos in_flight) {
    const int pid = phrase_at(q);
    if (q != in_flight) {
        // q is linked; its table parent matches the forest by coherence
        const PhraseNode& P = slots_[static_cast<std::size_t>(pid)];
        const Pos parent = P.source + (q - P.start);
        const bool ok = forest_.cut(q);
        assert(ok);
        (void)ok;
        journal_.push_back({JournalEntry::Op::ForestCut, q, parent, 0});
    }
    apply_split_table(pid, q);
}

int Annealer::relink_with_splits(int l_id, int r_id, Pos source, const SAInterval& w) {
    const Pos start = slots_[static_cast<std::size_t>(l_id)].start;
    const Pos wlen = slots_[static_cast<std::size_t>(l_id)].len + 1 +
                     slots_[static_cast<std::size_t>(r_id)].len;

    int splits = 0;
    cut_copy_edges(l_id);
    cut_copy_edges(r_id);
    apply_merge_table(l_id, r_id, source, w);
    for (Pos j = start; j < start + wlen; ++j) {
        if (is_explicit_position(j)) continue;  // an earlier split landed here
        const Pos target = source + (j - start);
        for (;;) {
            const auto st = forest_.link(j, target);
            assert(st != DecodeForest::LinkStatus::NotRoot);
            if (st == DecodeForest::LinkStatus::Ok) {
                journal_.push_back({JournalEntry::Op::ForestLink, j, 0, 0});
                break;
            }
            // the would-be cycle is target's root path (the root is j itself):
            // pick one of its nodes uniformly and make it an explicit letter
            const int path_len = forest_.path_to_root_length(target);
            const int pick = static_cast<int>(rng_.below(static_cast<std::uint64_t>(path_len) + 1));
            const Pos q = forest_.kth_on_path(target, pick);
            make_explicit(q, j);
            ++splits;
            if (q == j) break;  // j itself became explicit; nothing to link
        }
    }
    return splits;
}

void Annealer::undo_to(std::size_t mark) {
    while (journal_.size() > mark) {
        const JournalEntry e = journal_.back();
        journal_.pop_back();
        switch (e.op) {
            case JournalEntry::Op::ForestCut: {
                const auto st = forest_.link(e.a, e.b);
                assert(st == DecodeForest::LinkStatus::Ok);
                (void)st;
                break;
            }
            case JournalEntry::Op::ForestLink: {
                const bool ok = forest_.cut(e.a);
                assert(ok);
                (void)ok;
                break;
            }
            case JournalEntry::Op::TableMerge: {
                const int l = e.a, r = e.b, m = e.c;
                slots_[static_cast<std::size_t>(m)].alive = false;
                PhraseNode& L = slots_[static_cast<std::size_t>(l)];
                PhraseNode& R = slots_[static_cast<std::size_t>(r)];
                L.alive = true;
                R.alive = true;
                if (L.prev != -1)
                    slots_[static_cast<std::size_t>(L.prev)].next = l;
                else
                    head_ = l;
                if (R.next != -1) slots_[static_cast<std::size_t>(R.next)].prev = r;
                by_start_[L.start] = l;
                by_start_[R.start] = r;
                ++k_;
                break;
            }
            case JournalEntry::Op::TableSplit: {
                const int pid = e.a, lft = e.b, rgt = e.c;
                slots_[static_cast<std::size_t>(lft)].alive = false;
                slots_[static_cast<std::size_t>(rgt)].alive = false;
                PhraseNode& P = slots_[static_cast<std::size_t>(pid)];
                P.alive = true;
                if (P.prev != -1)
                    slots_[static_cast<std::size_t>(P.prev)].next = pid;
                else
                    head_ = pid;
                if (P.next != -1) slots_[static_cast<std::size_t>(P.next)].prev = pid;
                by_start_.erase(slots_[static_cast<std::size_t>(rgt)].start);
                by_start_[P.start] = pid;
                --k_;
                break;
            }
            case JournalEntry::Op::AdmInsert:
                adm_.erase(e.a);
                break;
            case JournalEntry::Op::AdmRemove:
                adm_.insert(e.a);
                break;
            case JournalEntry::Op::CacheFill:
                slots_[static_cast<std::size_t>(e.a)].copy_cache.reset();
                break;
        }
    }
}

void Annealer::commit() { journal_.clear(); }

Transition Annealer::step() {
    if (exhausted()) throw std::logic_error("step: admissible set is empty");
    assert(journal_.empty());
    const std::size_t slots0 = slots_.size();

    Transition tr;
    tr.t = temperature_;

    const int l_id = adm_.select(static_cast<int>(rng_.below(static_cast<std::uint64_t>(adm_.size()))));
    tr.phrase_start = slots_[static_cast<std::size_t>(l_id)].start;
    const int r_id = slots_[static_cast<std::size_t>(l_id)].next;
    assert(r_id != -1);

    const SAInterval w = merged_interval(l_id, r_id);
    const Pos w_start = slots_[static_cast<std::size_t>(l_id)].start;
    if (w.count() - 1 == 0) {
        // the pair string is unique in the text: merging i is impossible until
        // the pair changes shape, so drop i from the admissible set for good
        undo_to(0);
        slots_.resize(slots0);
        adm_.erase(l_id);
        tr.kind = Transition::Kind::Unmergeable;
        if (params_.audit) check_coherence();
        return tr;
    }

    bool clean = false;
    for (int att = 0; att < params_.retries && !clean; ++att)
        clean = try_relink_clean(l_id, r_id, sample_source(w, w_start), w);

    if (clean) {
        tr.kind = Transition::Kind::CleanMerge;
        tr.delta = -1;
        tr.accepted = true;
        commit();
    } else {
        // a fresh draw, then force the merge through by splitting cycles
        tr.splits = relink_with_splits(l_id, r_id, sample_source(w, w_start), w);
        tr.kind = Transition::Kind::MergeWithSplits;
        tr.delta = tr.splits - 1;
        tr.p = rng_.open_unit();
        tr.accepted = accept(tr.delta, tr.t, tr.p);
        if (tr.accepted) {
            commit();
        } else {
            undo_to(0);
            slots_.resize(slots0);
        }
    }
    if (params_.audit) check_coherence();
    return tr;
}

MacroScheme Annealer::scheme() const {
    MacroScheme out;
    out.phrases.reserve(static_cast<std::size_t>(k_));
    for (int id = head_; id != -1; id = slots_[static_cast<std::size_t>(id)].next) {
        const PhraseNode& node = slots_[static_cast<std::size_t>(id)];
        out.phrases.push_back(Phrase{node.start, node.source, node.len, node.letter});
    }
    return out;
}

std::vector<Pos> Annealer::admissible_starts() const {
    std::vector<Pos> out;
    for (const auto& [start, id] : by_start_)
        if (adm_.contains(id)) out.push_back(start);
    return out;
}

void Annealer::check_coherence() {
    const Pos n = text_.n();
    Pos expect = 1;
    int count = 0;
    int adm_seen = 0;
    int prev = -1;
    for (int id = head_; id != -1; id = slots_[static_cast<std::size_t>(id)].next) {
        const PhraseNode& node = slots_[static_cast<std::size_t>(id)];
        if (!node.alive) throw std::logic_error("coherence: dead phrase in the list");
        if (node.prev != prev) throw std::logic_error("coherence: broken list links");
        if (node.start != expect) throw std::logic_error("coherence: phrases do not tile");
        if (node.len < 0 || node.start + node.len > n) throw std::logic_error("coherence: bad extent");
        if (node.len > 0 &&
            (node.source < 1 || node.source + node.len - 1 > n || node.source == node.start))
            throw std::logic_error("coherence: bad source");
        if (node.len == 0 && node.source != 0) throw std::logic_error("coherence: bad empty source");
        auto it = by_start_.find(node.start);
        if (it == by_start_.end() || it->second != id)
            throw std::logic_error("coherence: start map out of sync");
        if (node.copy_cache) {
            const auto iv = node.len == 0 ? SAInterval{1, n, 0} : *idx_.locate(node.start, node.len);
            if (!(*node.copy_cache == iv)) throw std::logic_error("coherence: stale interval cache");
        }
        for (Pos j = node.start; j < node.start + node.len; ++j)
            if (forest_.parent_of(j) != node.source + (j - node.start))
                throw std::logic_error("coherence: forest parent mismatch");
        if (forest_.parent_of(node.start + node.len) != 0)
            throw std::logic_error("coherence: explicit position is not a root");
        if (adm_.contains(id)) {
            ++adm_seen;
            if (node.next == -1) throw std::logic_error("coherence: last phrase is admissible");
        }
        expect = node.start + node.len + 1;
        ++count;
        prev = id;
    }
    if (expect != n + 1) throw std::logic_error("coherence: phrases do not cover the text");
    if (count != k_) throw std::logic_error("coherence: k out of sync");
    if (static_cast<int>(by_start_.size()) != count)
        throw std::logic_error("coherence: start map size mismatch");
    if (adm_seen != adm_.size()) throw std::logic_error("coherence: admissible set holds dead ids");
}

Annealer::Snapshot Annealer::snapshot() {
    Snapshot snap;
    snap.scheme = scheme();
    snap.copy_caches.reserve(snap.scheme.phrases.size());
    for (int id = head_; id != -1; id = slots_[static_cast<std::size_t>(id)].next)
        snap.copy_caches.push_back(slots_[static_cast<std::size_t>(id)].copy_cache);
    snap.admissible_starts = admissible_starts();
    snap.parents.reserve(static_cast<std::size_t>(text_.n()));
    for (Pos p = 1; p <= text_.n(); ++p) snap.parents.push_back(forest_.parent_of(p));
    snap.k = k_;
    return snap;
}

RunResult run(const Text& text, const SuffixIndex& idx, const AnnealParams& params,
              const RunHooks* hooks) {
    params.validate();
    Annealer engine(text, idx, params);

    long iter = 0;
    long last_trace = -1;
    const auto emit_trace = [&](long iteration) {
        if (hooks && hooks->on_trace) {
            hooks->on_trace(TraceRow{iteration, engine.k(), engine.temperature()});
            last_trace = iteration;
        }
    };
    emit_trace(0);

    StopReason reason;
    for (;;) {
        if (engine.exhausted()) {
            reason = StopReason::LocalMinimum;
            break;
        }
        if (iter >= params.max_iters) {
            reason = StopReason::Budget;
            break;
        }
        ++iter;
        const Transition tr = engine.step();
        if (hooks && hooks->on_transition && tr.kind != Transition::Kind::Unmergeable)
            hooks->on_transition(tr);
        if (iter % params.cool_every == 0) engine.cool();
        if (iter % 100 == 0) emit_trace(iter);
    }
    if (last_trace != iter) emit_trace(iter);

    RunResult result;
    result.scheme = engine.scheme();
    result.k = result.scheme.k();
    result.iterations = iter;
    result.stop_reason = reason;
    result.certificate = check_certificate(result.scheme, text, idx).holds;
    return result;
}

}  // namespace bms
