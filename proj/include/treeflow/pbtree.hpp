#pragma once

#include "treeflow/rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace treeflow {

struct UnitTreeError : std::domain_error {
    UnitTreeError(const char* what) : std::domain_error(what) {}
};

/// Planar binary tree: either the unit tree (no internal vertex) or an
/// ordered pair of planar binary trees joined below a new internal vertex.
/// Immutable, with shared structure; degree is the internal vertex count.
/// Encoding: "." for the unit, "(L R)" for a join.
class PBTree {
  public:
    PBTree() = default;  // unit tree
    PBTree(const PBTree& l, const PBTree& r);

    static PBTree unit() { return PBTree(); }
    static PBTree vertex() { return PBTree(unit(), unit()); }

    bool is_unit() const { return node_ == nullptr; }
    std::size_t degree() const;
    const PBTree& left() const;
    const PBTree& right() const;
    const std::string& encode() const;

    friend bool operator==(const PBTree& a, const PBTree& b) {
        if (a.node_ == b.node_) return true;
        return a.encode() == b.encode();
    }
    friend bool operator!=(const PBTree& a, const PBTree& b) { return !(a == b); }
    friend bool operator<(const PBTree& a, const PBTree& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.encode() < b.encode();
    }

    /// Left-right mirror.
    PBTree reversal() const {
        if (is_unit()) return *this;
        return PBTree(right().reversal(), left().reversal());
    }

    /// The +/- word with one letter per non-extreme leaf: '-' for a left
    /// child, '+' for a right child. Length degree() - 1; needs degree >= 1.
    std::string canopy() const {
        if (is_unit()) throw UnitTreeError("canopy of the unit tree");
        std::string full = full_canopy();
        return full.substr(1, full.size() - 2);
    }
    /// canopy with '-' prepended and '+' appended (one letter per leaf).
    std::string full_canopy() const {
        if (is_unit()) throw UnitTreeError("canopy of the unit tree");
        std::string w;
        collect_leaves(*this, w);
        return w;
    }
    std::string left_completed_canopy() const { return "-" + canopy(); }
    std::string right_completed_canopy() const { return canopy() + "+"; }

    static PBTree parse(const std::string& s) {
        std::size_t pos = 0;
        PBTree t = parse_at(s, pos);
        if (pos != s.size()) throw ParseError("trailing characters in pbtree encoding: " + s);
        return t;
    }

  private:
    struct Node;

    // Leaves visited left to right; a leaf that is a left child contributes
    // '-', a right child '+'. The extreme leaves supply the full-canopy caps.
    static void collect_leaves(const PBTree& t, std::string& w) {
        if (t.is_unit()) return;
        if (t.left().is_unit())
            w += '-';
        else
            collect_leaves(t.left(), w);
        if (t.right().is_unit())
            w += '+';
        else
            collect_leaves(t.right(), w);
    }

    static PBTree parse_at(const std::string& s, std::size_t& pos) {
        if (pos < s.size() && s[pos] == '.') {
            ++pos;
            return PBTree();
        }
        if (pos >= s.size() || s[pos] != '(')
            throw ParseError("bad pbtree encoding at position " + std::to_string(pos));
        ++pos;
        PBTree l = parse_at(s, pos);
        if (pos >= s.size() || s[pos] != ' ')
            throw ParseError("bad pbtree encoding at position " + std::to_string(pos));
        ++pos;
        PBTree r = parse_at(s, pos);
        if (pos >= s.size() || s[pos] != ')')
            throw ParseError("bad pbtree encoding at position " + std::to_string(pos));
        ++pos;
        return PBTree(l, r);
    }

    std::shared_ptr<const Node> node_;
};

struct PBTree::Node {
    PBTree left, right;
    std::size_t degree;
    std::string enc;
};

inline PBTree::PBTree(const PBTree& l, const PBTree& r)
    : node_(std::make_shared<const Node>(
          Node{l, r, l.degree() + r.degree() + 1, "(" + l.encode() + " " + r.encode() + ")"})) {}

inline std::size_t PBTree::degree() const { return node_ ? node_->degree : 0; }

inline const PBTree& PBTree::left() const {
    if (!node_) throw UnitTreeError("unit tree has no subtrees");
    return node_->left;
}
inline const PBTree& PBTree::right() const {
    if (!node_) throw UnitTreeError("unit tree has no subtrees");
    return node_->right;
}
inline const std::string& PBTree::encode() const {
    static const std::string kUnit = ".";
    return node_ ? node_->enc : kUnit;
}

/// All planar binary trees with n internal vertices (Catalan(n) of them),
/// ordered by left-subtree degree, recursively.
inline std::vector<PBTree> enumerate_pbtrees(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::vector<PBTree>> cache;
    {
        std::scoped_lock lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<PBTree> out;
    if (n == 0) {
        out.push_back(PBTree::unit());
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& l : enumerate_pbtrees(i))
                for (const auto& r : enumerate_pbtrees(n - 1 - i)) out.emplace_back(l, r);
    }
    std::scoped_lock lk(mu);
    cache[n] = out;
    return out;
}

/// Left comb with n internal vertices: every internal vertex hangs left;
/// canopy (+)^(n-1).
inline PBTree left_comb(std::size_t n) {
    PBTree t = PBTree::vertex();
    for (std::size_t i = 1; i < n; ++i) t = PBTree(t, PBTree::unit());
    return t;
}

/// Right comb with n internal vertices; canopy (-)^(n-1).
inline PBTree right_comb(std::size_t n) {
    PBTree t = PBTree::vertex();
    for (std::size_t i = 1; i < n; ++i) t = PBTree(PBTree::unit(), t);
    return t;
}

}  // namespace treeflow
