#pragma once

// Test-only reference implementations for the classic set covering problem,
// kept independent of the library's reduction and solver code paths.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace scp_ref {

// columns[j] = sorted row set covered by column j
struct ScpInstance {
    std::uint32_t num_rows = 0;
    std::vector<std::vector<std::uint32_t>> columns;
};

struct ScpReduction {
    std::set<std::uint32_t> surviving_rows;
    std::set<std::uint32_t> surviving_columns;
    std::set<std::uint32_t> fixed_columns;  // C*
};

/// Classic unicost reduction: unique coverage plus column dominance (a
/// column whose rows are contained in another's is redundant; of two equal
/// columns the higher-index one goes).  Rules alternate to a fixpoint with
/// ascending-index scans.
inline ScpReduction reduce_classic(const ScpInstance& scp) {
    std::vector<char> row_alive(scp.num_rows, 1);
    std::vector<char> col_alive(scp.columns.size(), 1);
    std::vector<std::vector<std::uint32_t>> cols = scp.columns;
    ScpReduction out;

    auto drop_rows = [&](const std::vector<std::uint32_t>& rows) {
        for (std::uint32_t r : rows) row_alive[r] = 0;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (!col_alive[c]) continue;
            auto& col = cols[c];
            col.erase(std::remove_if(col.begin(), col.end(),
                                     [&](std::uint32_t r) { return !row_alive[r]; }),
                      col.end());
            if (col.empty()) col_alive[c] = 0;
        }
    };

    bool changed = true;
    while (changed) {
        changed = false;
        // unique coverage, lowest row first
        for (bool fired = true; fired;) {
            fired = false;
            for (std::uint32_t r = 0; r < scp.num_rows && !fired; ++r) {
                if (!row_alive[r]) continue;
                std::size_t holder = cols.size();
                int count = 0;
                for (std::size_t c = 0; c < cols.size() && count < 2; ++c) {
                    if (col_alive[c] &&
                        std::binary_search(cols[c].begin(), cols[c].end(), r)) {
                        holder = c;
                        ++count;
                    }
                }
                if (count == 1) {
                    out.fixed_columns.insert(static_cast<std::uint32_t>(holder));
                    drop_rows(cols[holder]);
                    fired = true;
                    changed = true;
                }
            }
        }
        // dominance, lowest dominated column first
        for (bool fired = true; fired;) {
            fired = false;
            for (std::size_t j = 0; j < cols.size() && !fired; ++j) {
                if (!col_alive[j]) continue;
                for (std::size_t i = 0; i < cols.size(); ++i) {
                    if (i == j || !col_alive[i]) continue;
                    const bool j_in_i = std::includes(cols[i].begin(), cols[i].end(),
                                                      cols[j].begin(), cols[j].end());
                    const bool i_in_j = std::includes(cols[j].begin(), cols[j].end(),
                                                      cols[i].begin(), cols[i].end());
                    if (j_in_i && (!i_in_j || i < j)) {
                        col_alive[j] = 0;
                        fired = true;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }

    for (std::uint32_t r = 0; r < scp.num_rows; ++r)
        if (row_alive[r]) out.surviving_rows.insert(r);
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (col_alive[c]) out.surviving_columns.insert(static_cast<std::uint32_t>(c));
    return out;
}

/// Smallest number of columns covering all rows, or -1 when impossible.
inline int brute_force_scp(const ScpInstance& scp) {
    const std::size_t m = scp.columns.size();
    if (scp.num_rows == 0) return 0;
    if (m > 20) return -2;  // guard: not intended for large inputs
    int best = -1;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        std::vector<char> hit(scp.num_rows, 0);
        int picked = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (!(mask >> c & 1)) continue;
            ++picked;
            for (std::uint32_t r : scp.columns[c]) hit[r] = 1;
        }
        if (best >= 0 && picked >= best) continue;
        if (std::all_of(hit.begin(), hit.end(), [](char x) { return x != 0; }))
            best = picked;
    }
    return best;
}

}  // namespace scp_ref
