#pragma once

// Incremental activation bookkeeping shared by the search-based solvers.
// Tracks, under a changing selection/ban state:
//   missing[k]      |R_k \ S|            (0 = pair active)
//   blocked[k]      # banned reasons in R_k
//   cover_count[e]  # active pairs covering element e
//   uncovered       # elements with cover_count == 0
// All transitions are O(pairs touching the flipped reason).

#include "scpr/core.hpp"

namespace scpr {

class CoverState {
public:
    explicit CoverState(const Instance& inst)
        : inst_(&inst),
          pairs_of_reason_(inst.num_reasons),
          pairs_of_element_(inst.universe_size),
          missing_(inst.pairs.size(), 0),
          blocked_(inst.pairs.size(), 0),
          selected_(inst.num_reasons, 0),
          banned_(inst.num_reasons, 0),
          cover_count_(inst.universe_size, 0),
          uncovered_(inst.universe_size) {
        for (std::size_t k = 0; k < inst.pairs.size(); ++k) {
            const Pair& p = inst.pairs[k];
            missing_[k] = static_cast<Index>(p.reasons.size());
            for (Index q : p.reasons) pairs_of_reason_[q].push_back(k);
            for (Index e : p.covering) pairs_of_element_[e].push_back(k);
            if (missing_[k] == 0) activate(k);
        }
    }

    const Instance& instance() const { return *inst_; }
    Index uncovered() const { return uncovered_; }
    bool covered() const { return uncovered_ == 0; }
    bool is_selected(Index q) const { return selected_[q]; }
    bool is_banned(Index q) const { return banned_[q]; }
    Index missing(std::size_t k) const { return missing_[k]; }
    bool pair_live(std::size_t k) const { return blocked_[k] == 0; }
    bool element_covered(Index e) const { return cover_count_[e] > 0; }
    const std::vector<std::size_t>& pairs_of_element(Index e) const {
        return pairs_of_element_[e];
    }
    const std::vector<std::size_t>& pairs_of_reason(Index q) const {
        return pairs_of_reason_[q];
    }

    std::size_t selection_size() const { return selection_.size(); }
    const std::vector<Index>& selection() const { return selection_; }

    void select(Index q) {
        selected_[q] = 1;
        selection_.push_back(q);
        for (std::size_t k : pairs_of_reason_[q])
            if (--missing_[k] == 0) activate(k);
    }

    void deselect(Index q) {
        selected_[q] = 0;
        selection_.pop_back();
        for (std::size_t k : pairs_of_reason_[q])
            if (missing_[k]++ == 0) deactivate(k);
    }

    void ban(Index q) {
        banned_[q] = 1;
        for (std::size_t k : pairs_of_reason_[q]) ++blocked_[k];
    }

    void unban(Index q) {
        banned_[q] = 0;
        for (std::size_t k : pairs_of_reason_[q]) --blocked_[k];
    }

    /// Count of elements an additional reason would newly cover.
    Index gain(Index q) const {
        std::vector<char> newly(inst_->universe_size, 0);
        Index g = 0;
        for (std::size_t k : pairs_of_reason_[q]) {
            if (missing_[k] != 1) continue;  // q is the last missing reason
            for (Index e : inst_->pairs[k].covering) {
                if (cover_count_[e] == 0 && !newly[e]) {
                    newly[e] = 1;
                    ++g;
                }
            }
        }
        return g;
    }

    /// Admissible lower bound on reasons still needed: greedily pick
    /// uncovered elements whose candidate pairs' missing-reason unions are
    /// pairwise disjoint; each contributes its cheapest deficit.
    Index deficit_bound() const {
        std::vector<char> used(inst_->num_reasons, 0);
        Index bound = 0;
        for (Index e = 0; e < inst_->universe_size; ++e) {
            if (cover_count_[e] > 0) continue;
            Index best = 0;
            bool any = false;
            bool disjoint = true;
            std::vector<Index> touched;
            for (std::size_t k : pairs_of_element_[e]) {
                if (blocked_[k]) continue;
                any = true;
                if (!best || missing_[k] < best) best = missing_[k];
                for (Index q : inst_->pairs[k].reasons) {
                    if (selected_[q]) continue;
                    if (used[q]) disjoint = false;
                    touched.push_back(q);
                }
            }
            if (!any || !disjoint) continue;  // dead elements handled by caller
            for (Index q : touched) used[q] = 1;
            bound += best;
        }
        return bound;
    }

    /// True when some uncovered element has no live candidate pair left.
    bool stranded() const {
        for (Index e = 0; e < inst_->universe_size; ++e) {
            if (cover_count_[e] > 0) continue;
            bool any = false;
            for (std::size_t k : pairs_of_element_[e])
                if (!blocked_[k]) { any = true; break; }
            if (!any) return true;
        }
        return false;
    }

private:
    void activate(std::size_t k) {
        for (Index e : inst_->pairs[k].covering)
            if (cover_count_[e]++ == 0) --uncovered_;
    }

    void deactivate(std::size_t k) {
        for (Index e : inst_->pairs[k].covering)
            if (--cover_count_[e] == 0) ++uncovered_;
    }

    const Instance* inst_;
    std::vector<std::vector<std::size_t>> pairs_of_reason_;
    std::vector<std::vector<std::size_t>> pairs_of_element_;
    std::vector<Index> missing_;
    std::vector<int> blocked_;
    std::vector<char> selected_;
    std::vector<char> banned_;
    std::vector<Index> cover_count_;
    Index uncovered_;
    std::vector<Index> selection_;
};

}  // namespace scpr
