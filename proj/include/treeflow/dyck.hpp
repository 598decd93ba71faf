#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace treeflow {

struct NotDyckError : std::invalid_argument {
    NotDyckError(const std::string& what) : std::invalid_argument(what) {}
};

/// Dyck path as a word over {U, R}: every prefix has at least as many U as R
/// and the totals agree.
class DyckPath {
  public:
    explicit DyckPath(std::string word) : w_(std::move(word)) {
        int level = 0;
        for (char c : w_) {
            if (c == 'U')
                ++level;
            else if (c == 'R')
                --level;
            else
                throw NotDyckError("bad step '" + std::string(1, c) + "'");
            if (level < 0) throw NotDyckError("prefix dips below the diagonal: " + w_);
        }
        if (level != 0) throw NotDyckError("unbalanced word: " + w_);
    }

    const std::string& word() const { return w_; }
    std::size_t half_length() const { return w_.size() / 2; }

    friend bool operator==(const DyckPath& a, const DyckPath& b) { return a.w_ == b.w_; }
    friend bool operator<(const DyckPath& a, const DyckPath& b) { return a.w_ < b.w_; }

    /// The unique factorization into indecomposable Dyck paths (paths that
    /// touch the diagonal only at their endpoints).
    std::vector<DyckPath> indecomposable_factors() const {
        std::vector<DyckPath> out;
        int level = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            level += w_[i] == 'U' ? 1 : -1;
            if (level == 0) {
                out.push_back(DyckPath(w_.substr(start, i + 1 - start)));
                start = i + 1;
            }
        }
        return out;
    }

    std::size_t peaks() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i + 1 < w_.size(); ++i)
            if (w_[i] == 'U' && w_[i + 1] == 'R') ++n;
        return n;
    }

    /// Matched pairs (U, R) with a Dyck factor strictly between them; every U
    /// is matched with exactly one R, so this is half_length() in total and
    /// the statistic below drops the peaks.
    std::size_t matched_nonpeak_pairs() const { return half_length() - peaks(); }

  private:
    std::string w_;
};

/// All Dyck paths of length 2n, lexicographic with U < R.
inline std::vector<DyckPath> enumerate_dyck_paths(std::size_t n) {
    std::vector<DyckPath> out;
    std::string w;
    auto rec = [&](auto&& self, std::size_t ups, std::size_t downs) -> void {
        if (w.size() == 2 * n) {
            out.push_back(DyckPath(w));
            return;
        }
        if (ups < n) {
            w += 'U';
            self(self, ups + 1, downs);
            w.pop_back();
        }
        if (downs < ups) {
            w += 'R';
            self(self, ups, downs + 1);
            w.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace treeflow
