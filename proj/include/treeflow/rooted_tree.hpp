#pragma once

#include "treeflow/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace treeflow {

struct InvalidParamsError : std::invalid_argument {
    InvalidParamsError(const std::string& what) : std::invalid_argument(what) {}
};
struct NotAnEdgeError : std::invalid_argument {
    NotAnEdgeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Canonical unordered rooted tree. Children are kept sorted by their
/// parenthesis encodings, so two trees are equal iff their encodings are.
/// The single vertex is "()"; in general encode(T) = "(" + sorted child
/// encodings + ")".
class RootedTree {
  public:
    RootedTree() : enc_("()"), size_(1) {}
    explicit RootedTree(std::vector<RootedTree> children) : children_(std::move(children)) {
        std::sort(children_.begin(), children_.end());
        enc_ = "(";
        size_ = 1;
        for (const auto& c : children_) {
            enc_ += c.enc_;
            size_ += c.size_;
        }
        enc_ += ")";
    }

    static RootedTree leaf() { return RootedTree(); }
    static RootedTree b_plus(std::vector<RootedTree> children) {
        return RootedTree(std::move(children));
    }

    const std::string& encode() const { return enc_; }
    const std::vector<RootedTree>& children() const { return children_; }
    std::size_t size() const { return size_; }
    bool is_leaf() const { return children_.empty(); }

    std::size_t height() const {
        std::size_t h = 0;
        for (const auto& c : children_) h = std::max(h, c.height() + 1);
        return h;
    }
    std::size_t num_leaves() const {
        if (children_.empty()) return 1;
        std::size_t n = 0;
        for (const auto& c : children_) n += c.num_leaves();
        return n;
    }
    std::size_t num_nonleaf() const { return size_ - num_leaves(); }
    bool is_linear() const {
        return children_.empty() || (children_.size() == 1 && children_[0].is_linear());
    }
    bool is_corolla() const { return height() <= 1; }

    /// Order of the automorphism group: product over distinct child classes
    /// of aut(c)^m * m!.
    Int aut() const {
        Int r = 1;
        std::size_t i = 0;
        while (i < children_.size()) {
            std::size_t j = i;
            while (j < children_.size() && children_[j].enc_ == children_[i].enc_) ++j;
            std::size_t m = j - i;
            Int a = children_[i].aut();
            for (std::size_t k = 0; k < m; ++k) r *= a;
            r *= factorial(static_cast<long long>(m));
            i = j;
        }
        return r;
    }

    friend bool operator==(const RootedTree& a, const RootedTree& b) {
        return a.enc_ == b.enc_;
    }
    friend bool operator!=(const RootedTree& a, const RootedTree& b) { return !(a == b); }
    friend bool operator<(const RootedTree& a, const RootedTree& b) {
        return a.enc_ < b.enc_;
    }

    static RootedTree parse(const std::string& s) {
        std::size_t pos = 0;
        RootedTree t = parse_at(s, pos);
        if (pos != s.size()) throw ParseError("trailing characters in tree encoding: " + s);
        return t;
    }

  private:
    static RootedTree parse_at(const std::string& s, std::size_t& pos) {
        if (pos >= s.size() || s[pos] != '(')
            throw ParseError("bad tree encoding at position " + std::to_string(pos));
        ++pos;
        std::vector<RootedTree> children;
        while (pos < s.size() && s[pos] == '(') children.push_back(parse_at(s, pos));
        if (pos >= s.size() || s[pos] != ')')
            throw ParseError("unbalanced tree encoding at position " + std::to_string(pos));
        ++pos;
        return RootedTree(std::move(children));
    }

    std::vector<RootedTree> children_;
    std::string enc_;
    std::size_t size_ = 1;
};

/// Linear tree with n vertices.
inline RootedTree linear_tree(std::size_t n) {
    if (n < 1) throw InvalidParamsError("Lnr_n needs n >= 1");
    RootedTree t;
    for (std::size_t i = 1; i < n; ++i) t = RootedTree::b_plus({t});
    return t;
}

/// Corolla with n + 1 vertices (n leaves on a common root); Crl_0 is the leaf.
inline RootedTree corolla(std::size_t n) {
    return RootedTree::b_plus(std::vector<RootedTree>(n, RootedTree::leaf()));
}

/// Fork with i + l vertices: stem of size i carrying a corolla of l leaves.
/// Frk_{1,l} = Crl_l and Frk_{k+1,l} = B_+(Frk_{k,l}).
inline RootedTree fork(std::size_t i, std::size_t l) {
    if (i < 1) throw InvalidParamsError("Frk_{i,l} needs i >= 1");
    RootedTree t = corolla(l);
    for (std::size_t k = 1; k < i; ++k) t = RootedTree::b_plus({t});
    return t;
}

/// Flattened view of a canonical tree: vertices in preorder (root = 0),
/// children in canonical order, so vertex indices are stable addresses.
struct TreeShape {
    std::vector<int> parent;                 // parent[0] = -1
    std::vector<std::vector<int>> children;  // canonical order
    std::vector<int> height;

    std::size_t size() const { return parent.size(); }
    bool is_leaf(int v) const { return children[v].empty(); }

    explicit TreeShape(const RootedTree& t) {
        build(t, -1);
    }

    /// Subtree rooted at v, re-canonicalized.
    RootedTree subtree(int v) const {
        std::vector<RootedTree> ch;
        for (int c : children[v]) ch.push_back(subtree(c));
        return RootedTree::b_plus(std::move(ch));
    }

    /// Whole tree with an extra leaf attached under vertex v.
    RootedTree with_leaf_on(int v) const { return rebuild(0, v, -1); }

    /// Whole tree with vertex skip (and its subtree) removed; skip != root.
    RootedTree without_subtree(int skip) const { return rebuild(0, -1, skip); }

    std::vector<int> vertices_below(int v) const {  // v and its descendants
        std::vector<int> out{v};
        for (std::size_t i = 0; i < out.size(); ++i)
            for (int c : children[out[i]]) out.push_back(c);
        return out;
    }

  private:
    int build(const RootedTree& t, int par) {
        int id = static_cast<int>(parent.size());
        parent.push_back(par);
        children.emplace_back();
        height.push_back(par < 0 ? 0 : height[par] + 1);
        for (const auto& c : t.children()) {
            int cid = build(c, id);
            children[id].push_back(cid);
        }
        return id;
    }

    RootedTree rebuild(int v, int add_leaf_at, int skip) const {
        std::vector<RootedTree> ch;
        for (int c : children[v])
            if (c != skip) ch.push_back(rebuild(c, add_leaf_at, skip));
        if (v == add_leaf_at) ch.push_back(RootedTree::leaf());
        return RootedTree::b_plus(std::move(ch));
    }
};

/// The trees entering the pull-up identities for an edge v -> u of T
/// (u = parent of v): T with a new leaf w on v, T with w on u, the bottom
/// tree S (T with everything above v removed), the top trees hanging off v,
/// and S' = the subtree of T<-_v w rooted at v.
struct TreeSurgeryContext {
    RootedTree base;
    RootedTree t_vw;              // T <-_v w
    RootedTree t_uw;              // T <-_u w
    RootedTree bottom;            // S
    std::vector<RootedTree> tops; // T_1 .. T_k
    RootedTree s_prime;           // S'
};

/// Surgery at the edge v -> parent(v) of T; v addressed by preorder index in
/// the canonical flattening.
inline TreeSurgeryContext surgery(const RootedTree& t, int v) {
    TreeShape shape(t);
    if (v <= 0 || v >= static_cast<int>(shape.size()))
        throw NotAnEdgeError("surgery: vertex " + std::to_string(v) +
                             " does not head an edge of " + t.encode());
    int u = shape.parent[v];
    TreeSurgeryContext ctx;
    ctx.base = t;
    ctx.t_vw = shape.with_leaf_on(v);
    ctx.t_uw = shape.with_leaf_on(u);
    for (int c : shape.children[v]) ctx.tops.push_back(shape.subtree(c));
    // S: strip the subtrees hanging off v, keeping v as a leaf.
    std::function<RootedTree(int)> rebuild = [&](int x) -> RootedTree {
        if (x == v) return RootedTree::leaf();
        std::vector<RootedTree> ch;
        for (int c : shape.children[x]) ch.push_back(rebuild(c));
        return RootedTree::b_plus(std::move(ch));
    };
    ctx.bottom = rebuild(0);
    std::vector<RootedTree> sprime_children = ctx.tops;
    sprime_children.push_back(RootedTree::leaf());
    ctx.s_prime = RootedTree::b_plus(std::move(sprime_children));
    return ctx;
}

/// All canonical rooted trees with n vertices, in lexicographic encoding
/// order.
inline std::vector<RootedTree> enumerate_rooted_trees(std::size_t n) {
    if (n < 1) throw InvalidParamsError("enumerate_rooted_trees needs n >= 1");
    static std::mutex mu;
    static std::map<std::size_t, std::vector<RootedTree>> cache;
    {
        std::scoped_lock lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<RootedTree> out;
    if (n == 1) {
        out.push_back(RootedTree::leaf());
    } else {
        // Pool of candidate subtrees, smallest sizes first.
        std::vector<RootedTree> pool;
        for (std::size_t m = 1; m < n; ++m)
            for (const auto& t : enumerate_rooted_trees(m)) pool.push_back(t);
        // Multisets of pool entries with sizes summing to n - 1, chosen as
        // nondecreasing index sequences.
        std::vector<RootedTree> chosen;
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t budget,
                                                                std::size_t from) {
            if (budget == 0) {
                out.push_back(RootedTree::b_plus(chosen));
                return;
            }
            for (std::size_t i = from; i < pool.size(); ++i) {
                if (pool[i].size() > budget) continue;
                chosen.push_back(pool[i]);
                rec(budget - pool[i].size(), i);
                chosen.pop_back();
            }
        };
        rec(n - 1, 0);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    std::scoped_lock lk(mu);
    cache[n] = out;
    return out;
}

/// Graft s on top of vertex v of t (the summand of the pre-Lie product
/// t <- s attached at v).
inline RootedTree graft_at(const RootedTree& t, int v, const RootedTree& s) {
    TreeShape shape(t);
    if (v < 0 || v >= static_cast<int>(shape.size()))
        throw InvalidParamsError("graft_at: no such vertex");
    std::function<RootedTree(int)> rebuild = [&](int x) -> RootedTree {
        std::vector<RootedTree> ch;
        for (int c : shape.children[x]) ch.push_back(rebuild(c));
        if (x == v) ch.push_back(s);
        return RootedTree::b_plus(std::move(ch));
    };
    return rebuild(0);
}

}  // namespace treeflow
