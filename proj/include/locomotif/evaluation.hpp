#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "locomotif/core.hpp"

namespace locomotif {

/// Annotated true motif occurrences; all segments across all sets must be
/// pairwise non-overlapping.
struct GroundTruth {
    std::vector<std::vector<Segment>> motif_sets;
};

void validate_ground_truth(const GroundTruth& gt);

/// (kappa'+1) x (kappa+1) generalized confusion matrix after the optimal
/// set-to-set assignment. row_order/col_order record which ground-truth and
/// discovered set sits at each matrix position.
struct MatchingMatrix {
    std::vector<std::vector<long long>> counts;
    std::vector<int> row_order;  // ground-truth set index per row, size kappa'
    std::vector<int> col_order;  // discovered set index per column, size kappa
    int kappa_prime = 0;
    int kappa = 0;
};

/// For each ground-truth segment, the index of the discovered segment with
/// the highest intersection-over-union above 0.5, or nullopt. Each discovered
/// segment can be claimed at most once (guaranteed by GT disjointness); ties
/// prefer the smaller start index, then the smaller end index, then list
/// order.
std::vector<std::optional<int>> match_segments(const std::vector<Segment>& gt_segments,
                                               const std::vector<Segment>& discovered);

MatchingMatrix matching_matrix(const GroundTruth& gt,
                               const std::vector<std::vector<Segment>>& discovered_sets);

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Micro-averaged precision/recall over the matched diagonal, F1 as their
/// harmonic mean; zero denominators yield 0.
Metrics precision_recall_f1(const MatchingMatrix& m);

/// Maximum-sum assignment on a square score matrix (Hungarian method).
/// Returns the column assigned to each row.
std::vector<int> solve_assignment_max(const std::vector<std::vector<long long>>& score);

}  // namespace locomotif
