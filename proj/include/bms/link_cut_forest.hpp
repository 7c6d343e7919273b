#pragma once

#include <vector>

#include "bms/text.hpp"

namespace bms {

// Dynamic rooted forest over positions [1..n]; node v's parent is the
// position v decodes from, roots hold explicit letters. Splay-based link-cut
// trees without evert: edges stay directed child -> parent, so all path
// queries run along root paths. Amortized O(log n) per operation.
//
// Single writer; hand the whole forest between threads only between calls.
class DecodeForest {
public:
    enum class LinkStatus { Ok, WouldCycle, NotRoot };

    explicit DecodeForest(Pos n);

    Pos size() const { return n_; }

    // child must currently be a root; refuses edges that would close a cycle
    // (including child == parent).
    LinkStatus link(Pos child, Pos parent);

    // Detaches child from its parent. Returns false when child is already a
    // root.
    bool cut(Pos child);

    bool is_root(Pos v);
    Pos find_root(Pos v);
    Pos parent_of(Pos v);  // 0 for roots

    // Number of edges on v's root path.
    int path_to_root_length(Pos v);

    // k-th node walking up from v: kth_on_path(v, 0) == v and
    // kth_on_path(v, path_to_root_length(v)) == find_root(v).
    // Throws std::out_of_range for k outside [0, path_to_root_length(v)].
    Pos kth_on_path(Pos v, int k);

    // True iff u lies on v's root path (inclusive of v and the root).
    bool on_root_path(Pos v, Pos u);

private:
    struct Node {
        int l = 0, r = 0, p = 0;
        int sz = 1;
    };

    bool is_splay_root(int x) const;
    void update(int x);
    void rotate(int x);
    void splay(int x);
    // Makes the root path of x one splay tree with x at its splay root and no
    // right child; in-order = root .. x by depth.
    void access(int x);

    Pos n_;
    std::vector<Node> nodes_;  // index 0 is the null node
};

}  // namespace bms
