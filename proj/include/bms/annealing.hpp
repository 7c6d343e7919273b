#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "bms/link_cut_forest.hpp"
#include "bms/rng.hpp"
#include "bms/scheme.hpp"
#include "bms/suffix_index.hpp"

namespace bms {

struct AnnealParams {
    double t0 = 1.0;        // initial temperature
    double alpha = 0.99;    // geometric cooling factor
    int cool_every = 100;   // iterations between cooling steps
    long max_iters = 20000;
    int retries = 4;        // source samples before split-resolution
    std::uint64_t seed = 0;
    enum class Init { Explicit, Lz } init = Init::Explicit;
    bool audit = false;     // full state/forest coherence scan after every step

    void validate() const;  // throws std::invalid_argument
};

// Accepts a transition iff delta <= -t * ln(p). Shrinking and neutral
// transitions (delta <= 0) are always accepted.
bool accept(double delta, double t, double p);

struct Transition {
    enum class Kind { CleanMerge, MergeWithSplits, Unmergeable };
    Kind kind = Kind::Unmergeable;
    Pos phrase_start = 0;  // start of the selected phrase
    int delta = 0;         // k_after - k_before
    double p = 1.0;        // Eq. draw; 1.0 when no acceptance decision was needed
    double t = 0.0;        // temperature at decision time
    bool accepted = false;
    int splits = 0;
};

// The annealing search state: phrase table, decode forest, admissible set,
// cached suffix-array intervals, undo journal and RNG. One instance per run;
// independent runs (different seeds) may execute concurrently as long as they
// share only the immutable text and index.
class Annealer {
public:
    Annealer(const Text& text, const SuffixIndex& idx, const AnnealParams& params);
    // Starts from an arbitrary valid scheme (throws std::invalid_argument if
    // the scheme does not tile the text or contains a cycle).
    Annealer(const Text& text, const SuffixIndex& idx, const AnnealParams& params,
             const MacroScheme& initial);

    // True when the admissible set is empty: the state is a local minimum
    // where every pairwise merge is known to produce a unique substring.
    bool exhausted() const { return adm_.size() == 0; }

    // One annealing iteration: select an admissible phrase uniformly, try the
    // merge, resolve cycles by splitting after `retries` failed source
    // samples, then accept or roll back. Throws std::logic_error when
    // exhausted.
    Transition step();

    void cool() { temperature_ *= params_.alpha; }

    int k() const { return k_; }
    double temperature() const { return temperature_; }
    MacroScheme scheme() const;
    std::vector<Pos> admissible_starts() const;  // sorted by text order

    // Full-scan invariant check: tiling, roots == explicit positions, every
    // copy position's parent matches its phrase source. Throws
    // std::logic_error on any violation.
    void check_coherence();

    // Deep state snapshot for rollback tests (caches included).
    struct Snapshot {
        MacroScheme scheme;
        std::vector<std::optional<SAInterval>> copy_caches;  // aligned with scheme.phrases
        std::vector<Pos> admissible_starts;
        std::vector<Pos> parents;  // parents[p-1], 0 for roots
        int k = 0;
        friend bool operator==(const Snapshot&, const Snapshot&) = default;
    };
    Snapshot snapshot();

private:
    struct PhraseNode {
        Pos start = 0;
        Pos source = 0;
        Pos len = 0;
        Sym letter = 0;
        int prev = -1;
        int next = -1;
        bool alive = false;
        std::optional<SAInterval> copy_cache;  // interval of text[start..start+len-1]
    };

    // Duplicate-free id set with O(log) insert/erase/uniform selection,
    // backed by a Fenwick tree over membership bits.
    class IndexedSet {
    public:
        bool contains(int id) const;
        bool insert(int id);  // false if already present
        bool erase(int id);   // false if absent
        int size() const { return count_; }
        int select(int rank) const;  // rank in [0, size())
        void ensure(int id);

    private:
        void rebuild(int cap);
        std::vector<int> tree_;
        std::vector<char> member_;
        int count_ = 0;
    };

    struct JournalEntry {
        enum class Op : unsigned char {
            ForestCut,   // a = child, b = old parent
            ForestLink,  // a = child
            TableMerge,  // a = left id, b = right id, c = merged id
            TableSplit,  // a = split id, b = left id, c = right id
            AdmInsert,   // a = id
            AdmRemove,   // a = id
            CacheFill,   // a = id
        };
        Op op;
        int a = 0, b = 0, c = 0;
    };

    void build_from(const MacroScheme& initial);
    int new_slot();
    int phrase_at(Pos pos) const;
    bool is_explicit_position(Pos pos) const;

    SAInterval copy_interval(int id);              // fills the cache (journaled)
    SAInterval merged_interval(int l_id, int r_id);
    Pos sample_source(const SAInterval& w, Pos exclude);

    void adm_insert_checked(int id);
    void adm_remove_checked(int id);
    int apply_merge_table(int l_id, int r_id, Pos source, const SAInterval& w);
    void apply_split_table(int id, Pos q);
    void make_explicit(Pos q, Pos in_flight);

    void cut_copy_edges(int id);
    bool try_relink_clean(int l_id, int r_id, Pos source, const SAInterval& w);
    int relink_with_splits(int l_id, int r_id, Pos source, const SAInterval& w);

    void undo_to(std::size_t mark);
    void commit();

    const Text& text_;
    const SuffixIndex& idx_;
    AnnealParams params_;
    Rng rng_;
    DecodeForest forest_;
    double temperature_;

    std::vector<PhraseNode> slots_;
    int head_ = -1;
    int k_ = 0;
    std::map<Pos, int> by_start_;
    IndexedSet adm_;
    std::vector<JournalEntry> journal_;
    std::vector<std::optional<SAInterval>> letter_interval_;  // per byte value
};

struct TraceRow {
    long iteration = 0;
    int k = 0;
    double temperature = 0.0;
};

enum class StopReason { LocalMinimum, Budget };

struct RunResult {
    MacroScheme scheme;
    int k = 0;
    long iterations = 0;
    StopReason stop_reason = StopReason::Budget;
    bool certificate = false;
};

struct RunHooks {
    // Row 0 (initial state), every 100 iterations, and a final row at stop.
    std::function<void(const TraceRow&)> on_trace;
    // Every merge proposal (clean or with splits); unmergeable discoveries
    // are not transitions and are not reported here.
    std::function<void(const Transition&)> on_transition;
};

// Full annealing run: steps until the admissible set empties (LocalMinimum)
// or the iteration budget is exhausted (Budget), cooling every cool_every
// iterations. The returned scheme always validates; `certificate` reports the
// 2-approximation condition of the final scheme.
RunResult run(const Text& text, const SuffixIndex& idx, const AnnealParams& params,
              const RunHooks* hooks = nullptr);

}  // namespace bms
