#include "locomotif/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace locomotif {

void validate_ground_truth(const GroundTruth& gt) {
    std::vector<Segment> all;
    for (const auto& set : gt.motif_sets) {
        for (const Segment& seg : set) {
            if (seg.b < 1 || seg.b > seg.e) {
                throw std::invalid_argument("ground-truth segment has invalid bounds");
            }
            all.push_back(seg);
        }
    }
    std::sort(all.begin(), all.end(), [](Segment a, Segment b) { return a.b < b.b; });
    for (std::size_t k = 1; k < all.size(); ++k) {
        if (all[k].b <= all[k - 1].e) {
            throw std::invalid_argument("ground-truth segments must be pairwise non-overlapping");
        }
    }
}

std::vector<std::optional<int>> match_segments(const std::vector<Segment>& gt_segments,
                                               const std::vector<Segment>& discovered) {
    std::vector<std::optional<int>> matches(gt_segments.size());

    for (std::size_t gi = 0; gi < gt_segments.size(); ++gi) {
        const Segment beta = gt_segments[gi];
        int best = -1;
        long long best_inter = 0;
        long long best_union = 1;

        for (std::size_t ai = 0; ai < discovered.size(); ++ai) {
            const Segment alpha = discovered[ai];
            const long long inter = seg_intersection_len(alpha, beta);
            const long long uni = seg_union_len(alpha, beta);
            if (2 * inter <= uni) {
                continue;  // ratio must exceed 0.5
            }
            // Exact ratio comparison via cross-multiplication; ties prefer
            // the smaller start index, then end index, then list order.
            const long long lhs = inter * best_union;
            const long long rhs = best_inter * uni;
            if (best < 0 || lhs > rhs ||
                (lhs == rhs && (alpha.b < discovered[best].b ||
                                (alpha.b == discovered[best].b && alpha.e < discovered[best].e)))) {
                best = static_cast<int>(ai);
                best_inter = inter;
                best_union = uni;
            }
        }
        if (best >= 0) {
            matches[gi] = best;
        }
    }
    return matches;
}

std::vector<int> solve_assignment_max(const std::vector<std::vector<long long>>& score) {
    const int n = static_cast<int>(score.size());
    if (n == 0) {
        return {};
    }
    const long long INF = std::numeric_limits<long long>::max() / 4;

    // Hungarian method with potentials, minimizing the negated scores.
    std::vector<long long> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), INF);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            long long delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (!used[j]) {
                    const long long cur = -score[i0 - 1][j - 1] - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> result(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] > 0) {
            result[p[j] - 1] = j - 1;
        }
    }
    return result;
}

MatchingMatrix matching_matrix(const GroundTruth& gt,
                               const std::vector<std::vector<Segment>>& discovered_sets) {
    validate_ground_truth(gt);

    const int kp = static_cast<int>(gt.motif_sets.size());
    const int k = static_cast<int>(discovered_sets.size());

    // Identical segments can appear in different discovered sets; flatten in
    // a canonical content order so the remaining list-order tie-break (and
    // hence the metrics) cannot depend on the input ordering of the sets.
    std::vector<std::vector<Segment>> sorted_sets(discovered_sets);
    for (auto& set : sorted_sets) {
        std::sort(set.begin(), set.end(),
                  [](Segment a, Segment b) { return a.b != b.b ? a.b < b.b : a.e < b.e; });
    }
    std::vector<int> set_order(k);
    for (int j = 0; j < k; ++j) {
        set_order[j] = j;
    }
    std::stable_sort(set_order.begin(), set_order.end(), [&](int a, int b) {
        return std::lexicographical_compare(
            sorted_sets[a].begin(), sorted_sets[a].end(), sorted_sets[b].begin(),
            sorted_sets[b].end(),
            [](Segment x, Segment y) { return x.b != y.b ? x.b < y.b : x.e < y.e; });
    });

    std::vector<Segment> flat;
    std::vector<int> flat_set;
    for (int j : set_order) {
        for (const Segment& seg : discovered_sets[j]) {
            flat.push_back(seg);
            flat_set.push_back(j);
        }
    }

    std::vector<std::vector<long long>> counts_raw(kp, std::vector<long long>(k, 0));
    for (int i = 0; i < kp; ++i) {
        const auto matches = match_segments(gt.motif_sets[i], flat);
        for (const auto& m : matches) {
            if (m) {
                ++counts_raw[i][flat_set[*m]];
            }
        }
    }

    MatchingMatrix result;
    result.kappa_prime = kp;
    result.kappa = k;

    const int big = std::max(kp, k);
    std::vector<int> paired_col(kp, -1);
    if (big > 0) {
        // Ties between equally good assignments are broken toward the
        // smallest total cardinality of the discovered sets placed on the
        // diagonal, which keeps the metrics invariant under input reordering.
        long long total_card = 0;
        for (const auto& set : discovered_sets) {
            total_card += static_cast<long long>(set.size());
        }
        const long long scale = total_card + 1;

        std::vector<std::vector<long long>> score(big, std::vector<long long>(big, 0));
        for (int i = 0; i < kp; ++i) {
            for (int j = 0; j < k; ++j) {
                score[i][j] = counts_raw[i][j] * scale -
                              static_cast<long long>(discovered_sets[j].size());
            }
        }
        const std::vector<int> assign = solve_assignment_max(score);
        for (int i = 0; i < kp; ++i) {
            if (assign[i] < k) {
                paired_col[i] = assign[i];
            }
        }
    }

    // Rows paired with a real column come first so matched pairs sit on the
    // diagonal; with kp <= k every row is paired and the order is natural.
    for (int i = 0; i < kp; ++i) {
        if (paired_col[i] >= 0) {
            result.row_order.push_back(i);
        }
    }
    for (int i = 0; i < kp; ++i) {
        if (paired_col[i] < 0) {
            result.row_order.push_back(i);
        }
    }
    std::vector<char> col_used(k, 0);
    for (int r : result.row_order) {
        if (paired_col[r] >= 0) {
            result.col_order.push_back(paired_col[r]);
            col_used[paired_col[r]] = 1;
        }
    }
    for (int j = 0; j < k; ++j) {
        if (!col_used[j]) {
            result.col_order.push_back(j);
        }
    }

    result.counts.assign(kp + 1, std::vector<long long>(k + 1, 0));
    for (int r = 0; r < kp; ++r) {
        for (int c = 0; c < k; ++c) {
            result.counts[r][c] = counts_raw[result.row_order[r]][result.col_order[c]];
        }
    }
    for (int r = 0; r < kp; ++r) {
        long long matched = 0;
        for (int c = 0; c < k; ++c) {
            matched += result.counts[r][c];
        }
        result.counts[r][k] =
            static_cast<long long>(gt.motif_sets[result.row_order[r]].size()) - matched;
    }
    for (int c = 0; c < k; ++c) {
        long long matched = 0;
        for (int r = 0; r < kp; ++r) {
            matched += result.counts[r][c];
        }
        result.counts[kp][c] =
            static_cast<long long>(discovered_sets[result.col_order[c]].size()) - matched;
    }
    return result;
}

Metrics precision_recall_f1(const MatchingMatrix& m) {
    const int kp = m.kappa_prime;
    const int k = m.kappa;
    const int k_min = std::min(kp, k);

    long long diag = 0;
    for (int t = 0; t < k_min; ++t) {
        diag += m.counts[t][t];
    }
    long long precision_den = 0;
    for (int c = 0; c < k_min; ++c) {
        for (int r = 0; r <= kp; ++r) {
            precision_den += m.counts[r][c];
        }
    }
    long long recall_den = 0;
    for (int r = 0; r < kp; ++r) {
        for (int c = 0; c <= k; ++c) {
            recall_den += m.counts[r][c];
        }
    }

    Metrics metrics;
    metrics.precision = precision_den > 0 ? static_cast<double>(diag) / precision_den : 0.0;
    metrics.recall = recall_den > 0 ? static_cast<double>(diag) / recall_den : 0.0;
    metrics.f1 = metrics.precision + metrics.recall > 0.0
                     ? 2.0 * metrics.precision * metrics.recall /
                           (metrics.precision + metrics.recall)
                     : 0.0;
    return metrics;
}

}  // namespace locomotif
