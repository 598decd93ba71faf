#pragma once

#include "treeflow/rooted_tree.hpp"

#include <numeric>
#include <optional>
#include <vector>

namespace treeflow {

enum class FlowClass { All, Small, Closed, Connected, ConnectedExitOne, Saturated };

inline const char* flow_class_name(FlowClass c) {
    switch (c) {
        case FlowClass::All: return "all";
        case FlowClass::Small: return "small";
        case FlowClass::Closed: return "closed";
        case FlowClass::Connected: return "connected";
        case FlowClass::ConnectedExitOne: return "connected-exit-1";
        case FlowClass::Saturated: return "saturated";
    }
    return "?";
}

/// A flow on a rooted tree: a set of output vertices (each absorbing 1) and
/// an input multiset on the remaining vertices, such that every edge rate,
/// computed bottom-up, is a nonnegative integer. Vertices are preorder
/// indices of the canonical TreeShape; rate[v] is the rate leaving v, so
/// rate[0] is the exit rate.
struct Flow {
    std::vector<char> output;
    std::vector<int> input;
    std::vector<long long> rate;
    std::size_t size = 0;    // number of outputs
    long long exit_rate = 0;

    bool is_closed() const { return exit_rate == 0; }
    bool is_small() const { return !output[0] && input[0] == 0; }
};

/// Rates for the given outputs/inputs, or nullopt when some edge would carry
/// a negative rate (not a flow).
inline std::optional<Flow> make_flow(const TreeShape& shape, std::vector<char> output,
                                     std::vector<int> input) {
    std::size_t n = shape.size();
    Flow f;
    f.output = std::move(output);
    f.input = std::move(input);
    f.rate.assign(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        long long r = f.input[i];
        for (int c : shape.children[i]) r += f.rate[c];
        if (f.output[i]) {
            r -= 1;
            ++f.size;
            if (f.input[i] != 0) return std::nullopt;  // outputs carry no input
        }
        if (r < 0) return std::nullopt;
        f.rate[i] = r;
    }
    f.exit_rate = f.rate[0];
    return f;
}

/// One positive-rate component containing every vertex (vacuous on the
/// single-vertex tree).
inline bool flow_is_connected(const TreeShape& shape, const Flow& f) {
    std::size_t n = shape.size();
    std::vector<int> root_of(n);
    std::iota(root_of.begin(), root_of.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (root_of[x] != x) x = root_of[x] = root_of[root_of[x]];
        return x;
    };
    std::size_t comps = n;
    for (std::size_t v = 1; v < n; ++v) {
        if (f.rate[v] <= 0) continue;
        int a = find(static_cast<int>(v)), b = find(shape.parent[v]);
        if (a != b) {
            root_of[a] = b;
            --comps;
        }
    }
    return comps == 1;
}

inline bool flow_is_saturated(const TreeShape& shape, const Flow& f) {
    if (!f.is_closed() || !flow_is_connected(shape, f)) return false;
    for (std::size_t v = 0; v < shape.size(); ++v)
        if (!shape.is_leaf(static_cast<int>(v)) && !f.output[v]) return false;
    return true;
}

inline bool flow_in_class(const TreeShape& shape, const Flow& f, FlowClass cls) {
    switch (cls) {
        case FlowClass::All: return true;
        case FlowClass::Small: return f.is_small();
        case FlowClass::Closed: return f.is_closed();
        case FlowClass::Connected: return flow_is_connected(shape, f);
        case FlowClass::ConnectedExitOne:
            return f.exit_rate == 1 && flow_is_connected(shape, f);
        case FlowClass::Saturated: return flow_is_saturated(shape, f);
    }
    return false;
}

namespace detail {

// Compositions of total over the index set avail, emitted in lexicographic
// order of the multiplicity vector.
template <class Fn>
void for_each_input_multiset(const std::vector<int>& avail, std::size_t slot, int remaining,
                             std::vector<int>& mult, Fn&& fn) {
    if (slot + 1 == avail.size()) {
        mult[avail[slot]] = remaining;
        fn();
        mult[avail[slot]] = 0;
        return;
    }
    for (int m = 0; m <= remaining; ++m) {
        mult[avail[slot]] = m;
        for_each_input_multiset(avail, slot + 1, remaining - m, mult, fn);
        mult[avail[slot]] = 0;
    }
}

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
    std::size_t k = idx.size();
    for (std::size_t j = k; j-- > 0;) {
        if (idx[j] < m - k + j) {
            ++idx[j];
            for (std::size_t l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// All flows of the class with exit rate <= max_exit, exhaustively: outputs
/// run over subsets of non-leaf vertices (an output at a leaf forces a
/// negative rate) and the input multiset of a size-k, exit-i flow has total
/// k + i by rate conservation. Deterministic order.
inline std::vector<Flow> enumerate_flows(const RootedTree& tree, FlowClass cls,
                                         long long max_exit) {
    TreeShape shape(tree);
    std::size_t n = shape.size();
    std::vector<int> nonleaf;
    for (std::size_t v = 0; v < n; ++v)
        if (!shape.is_leaf(static_cast<int>(v))) nonleaf.push_back(static_cast<int>(v));

    long long lo_exit = 0, hi_exit = max_exit;
    if (cls == FlowClass::Closed || cls == FlowClass::Saturated) hi_exit = 0;
    if (cls == FlowClass::ConnectedExitOne) lo_exit = hi_exit = 1;

    std::vector<Flow> out;
    for (std::size_t k = 0; k <= nonleaf.size(); ++k) {
        // Output subsets of the non-leaf vertices, in combination order.
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            std::vector<char> output(n, 0);
            for (std::size_t j : idx) output[nonleaf[j]] = 1;
            std::vector<int> avail;
            for (std::size_t v = 0; v < n; ++v)
                if (!output[v]) avail.push_back(static_cast<int>(v));
            for (long long i = lo_exit; i <= hi_exit; ++i) {
                long long total = static_cast<long long>(k) + i;
                std::vector<int> mult(n, 0);
                auto consider = [&] {
                    auto f = make_flow(shape, output, mult);
                    if (f && f->exit_rate == i && flow_in_class(shape, *f, cls))
                        out.push_back(std::move(*f));
                };
                if (avail.empty()) {
                    if (total == 0) consider();
                    continue;
                }
                detail::for_each_input_multiset(avail, 0, static_cast<int>(total), mult,
                                                consider);
            }
        } while (detail::next_combination(idx, nonleaf.size()));
    }
    return out;
}

/// counts[k][i] = number of flows of the class with size k and exit rate i.
inline std::vector<std::vector<long long>> flow_slice_counts(const RootedTree& tree,
                                                             FlowClass cls,
                                                             long long max_exit) {
    TreeShape shape(tree);
    std::size_t maxk = 0;
    for (std::size_t v = 0; v < shape.size(); ++v)
        if (!shape.is_leaf(static_cast<int>(v))) ++maxk;
    std::vector<std::vector<long long>> counts(maxk + 1,
                                               std::vector<long long>(max_exit + 1, 0));
    for (const auto& f : enumerate_flows(tree, cls, max_exit))
        if (f.exit_rate <= max_exit) ++counts[f.size][f.exit_rate];
    return counts;
}

}  // namespace treeflow
