#pragma once

#include <cstdint>
#include <vector>

#include "locomotif/core.hpp"
#include "locomotif/ssm.hpp"

namespace locomotif {

struct Position {
    int i = 0;
    int j = 0;
    bool operator==(const Position&) const = default;
};

struct Step {
    int di = 0;
    int dj = 0;
};

/// Admissible steps of a local warping path. Warping mode allows
/// {(1,1),(1,2),(2,1)}, which bounds the slope between 1/2 and 2; the
/// no-warping variant restricts paths to the strict diagonal step.
class StepSet {
public:
    static StepSet warping();
    static StepSet no_warping();

    const std::vector<Step>& steps() const { return steps_; }
    bool warping_enabled() const { return steps_.size() > 1; }

private:
    explicit StepSet(std::vector<Step> steps) : steps_(std::move(steps)) {}
    std::vector<Step> steps_;
};

/// Similarity threshold and gap penalties of the accumulation function.
/// Defaults follow tau = rho-quantile of S, additive penalty 2*tau,
/// multiplicative penalty 0.5.
struct GapPenaltyParams {
    double tau = 0.0;
    double delta_add = 0.0;
    double delta_mult = 0.5;

    static GapPenaltyParams defaults(double tau) { return {tau, 2.0 * tau, 0.5}; }
};

/// Matrix of the highest aggregated similarity attainable by a local warping
/// path ending at each position.
class CumulativeMatrix {
public:
    explicit CumulativeMatrix(int n) : n_(n), values_(static_cast<std::size_t>(n) * n, 0.0) {}

    int size() const { return n_; }
    double operator()(int i, int j) const {
        return values_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
    }
    double& at(int i, int j) {
        return values_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)];
    }
    const std::vector<double>& raw() const { return values_; }

private:
    int n_;
    std::vector<double> values_;
};

/// A local warping path plus the two per-column lookup tables that make
/// subpath extraction and scoring O(1):
///   first_k_at_col(j): smallest k with j_k >= j (columns skipped by a
///   (1,2) step resolve to the next present column);
///   cum_sim_at_col(j): sum of S over p_1..p_{first_k_at_col(j)}.
class WarpingPath {
public:
    WarpingPath(std::vector<Position> positions, const SelfSimilarityMatrix& s);

    const std::vector<Position>& positions() const { return positions_; }
    int length() const { return static_cast<int>(positions_.size()); }

    Segment row_span() const { return {positions_.front().i, positions_.back().i}; }
    Segment col_span() const { return {positions_.front().j, positions_.back().j}; }

    int first_k_at_col(int j) const { return first_k_[j - col_first_]; }
    double cum_sim_at_col(int j) const { return cum_sim_[first_k_[j - col_first_]]; }

    /// Sum of S over positions k_begin..k_end (0-based, inclusive), evaluated
    /// as a prefix-sum difference plus the first entry.
    double fragment_score(int k_begin, int k_end, const SelfSimilarityMatrix& s) const {
        return cum_sim_[k_end] - cum_sim_[k_begin] + s(positions_[k_begin].i, positions_[k_begin].j);
    }

    /// Coordinate-swapped copy relating the same two segments in the other
    /// orientation.
    WarpingPath mirrored(const SelfSimilarityMatrix& s) const;

    bool is_self_mirror() const;

private:
    std::vector<Position> positions_;
    int col_first_ = 0;
    std::vector<int> first_k_;     // indexed by j - col_first_
    std::vector<double> cum_sim_;  // prefix sums indexed by k
};

/// Dense boolean mask over [1:n]^2 positions.
class PositionMask {
public:
    explicit PositionMask(int n) : n_(n), masked_(static_cast<std::size_t>(n) * n, 0) {}

    int size() const { return n_; }
    bool test(int i, int j) const {
        return masked_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)] != 0;
    }
    void set(int i, int j) {
        masked_[static_cast<std::size_t>(i - 1) * n_ + (j - 1)] = 1;
    }

private:
    int n_;
    std::vector<std::uint8_t> masked_;
};

/// Fills D with the gap-penalized accumulation recurrence: positions at or
/// above the threshold extend the best admissible predecessor by S[i,j];
/// positions below it decay it multiplicatively and additively, clamped at 0.
CumulativeMatrix compute_cumulative(const SelfSimilarityMatrix& s, const GapPenaltyParams& params,
                                    const StepSet& steps);

/// Walks backwards from `start` along maximal-D admissible predecessors,
/// stopping at a zero entry, a masked position, or the matrix border.
/// Returns the positions in forward order; empty when start is masked or
/// D[start] == 0. Predecessor ties prefer (1,1), then (2,1), then (1,2).
std::vector<Position> backtrack(const CumulativeMatrix& d, Position start, const PositionMask& mask,
                                const StepSet& steps);

/// Cross-shaped masked region of half-width floor(l_min/2) around every path
/// position, clipped to the matrix. Returned sorted and deduplicated.
std::vector<Position> vicinity(const std::vector<Position>& path, int l_min, int n);

/// Marks the vicinity of `path` in `mask` (same region as vicinity()).
void mask_vicinity(PositionMask& mask, const std::vector<Position>& path, int l_min);

struct PathSearchResult {
    std::vector<WarpingPath> paths;
    double tau = 0.0;
};

/// Extracts mutually separated local warping paths from S: repeatedly
/// backtracks from the unmasked global maximum of D (ties: smallest row,
/// then column), keeps paths whose row or column projection reaches l_min
/// (masking their vicinity and adding the coordinate-swapped mirror),
/// and masks discarded short paths position-wise. The full diagonal is
/// always among the results.
PathSearchResult find_paths_in_ssm(const SelfSimilarityMatrix& s, int l_min, double rho,
                                   const StepSet& steps);

/// Convenience wrapper computing the SSM of `ts` (assumed z-normalized).
std::vector<WarpingPath> find_paths(const TimeSeries& ts, int l_min, double rho,
                                    const StepSet& steps);

}  // namespace locomotif
