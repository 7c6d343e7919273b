#include "bms/link_cut_forest.hpp"

#include <cassert>
#include <stdexcept>

namespace bms {

DecodeForest::DecodeForest(Pos n) : n_(n), nodes_(static_cast<std::size_t>(n) + 1) {
    nodes_[0].sz = 0;
}

bool DecodeForest::is_splay_root(int x) const {
    const int p = nodes_[x].p;
    return p == 0 || (nodes_[p].l != x && nodes_[p].r != x);
}

void DecodeForest::update(int x) {
    nodes_[x].sz = 1 + nodes_[nodes_[x].l].sz + nodes_[nodes_[x].r].sz;
}

void DecodeForest::rotate(int x) {
    const int p = nodes_[x].p;
    const int g = nodes_[p].p;
    const bool left = nodes_[p].l == x;
    const int mid = left ? nodes_[x].r : nodes_[x].l;

    if (left) {
        nodes_[x].r = p;
        nodes_[p].l = mid;
    } else {
        nodes_[x].l = p;
        nodes_[p].r = mid;
    }
    if (mid) nodes_[mid].p = p;
    nodes_[p].p = x;
    nodes_[x].p = g;
    if (g) {
        if (nodes_[g].l == p)
            nodes_[g].l = x;
        else if (nodes_[g].r == p)
            nodes_[g].r = x;
        // otherwise p was a path child; x inherits the path parent via x.p
    }
    update(p);
    update(x);
}

void DecodeForest::splay(int x) {
    while (!is_splay_root(x)) {
        const int p = nodes_[x].p;
        if (!is_splay_root(p)) {
            const int g = nodes_[p].p;
            const bool zigzig = (nodes_[g].l == p) == (nodes_[p].l == x);
            rotate(zigzig ? p : x);
        }
        rotate(x);
    }
}

void DecodeForest::access(int x) {
    splay(x);
    if (nodes_[x].r) {
        // the detached child keeps x as its path parent
        nodes_[x].r = 0;
        update(x);
    }
    while (nodes_[x].p) {
        const int w = nodes_[x].p;
        splay(w);
        nodes_[w].r = x;  // previous preferred child becomes path-parented
        update(w);
        splay(x);
    }
}

DecodeForest::LinkStatus DecodeForest::link(Pos child, Pos parent) {
    if (!is_root(child)) return LinkStatus::NotRoot;
    if (find_root(parent) == child) return LinkStatus::WouldCycle;
    access(child);
    access(parent);
    nodes_[child].p = parent;  // path parent; child's splay tree is {child}
    return LinkStatus::Ok;
}

bool DecodeForest::cut(Pos child) {
    access(child);
    const int l = nodes_[child].l;
    if (l == 0) return false;
    nodes_[l].p = 0;
    nodes_[child].l = 0;
    update(child);
    return true;
}

bool DecodeForest::is_root(Pos v) {
    access(v);
    return nodes_[v].l == 0;
}

Pos DecodeForest::find_root(Pos v) {
    access(v);
    int x = v;
    while (nodes_[x].l) x = nodes_[x].l;
    splay(x);
    return x;
}

Pos DecodeForest::parent_of(Pos v) {
    access(v);
    int x = nodes_[v].l;
    if (x == 0) return 0;
    while (nodes_[x].r) x = nodes_[x].r;
    splay(x);
    return x;
}

int DecodeForest::path_to_root_length(Pos v) {
    access(v);
    return nodes_[v].sz - 1;
}

Pos DecodeForest::kth_on_path(Pos v, int k) {
    access(v);
    const int sz = nodes_[v].sz;
    if (k < 0 || k >= sz) throw std::out_of_range("kth_on_path: k outside the root path");
    // in-order = root .. v, so walking k up from v is in-order index sz-1-k
    int idx = sz - 1 - k;
    int x = v;
    for (;;) {
        const int ls = nodes_[nodes_[x].l].sz;
        if (idx < ls) {
            x = nodes_[x].l;
        } else if (idx == ls) {
            break;
        } else {
            idx -= ls + 1;
            x = nodes_[x].r;
        }
    }
    splay(x);
    return x;
}

bool DecodeForest::on_root_path(Pos v, Pos u) {
    if (find_root(v) != find_root(u)) return false;
    const int du = path_to_root_length(u);
    const int dv = path_to_root_length(v);
    if (du > dv) return false;
    return kth_on_path(v, dv - du) == u;
}

}  // namespace bms
