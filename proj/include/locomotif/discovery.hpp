#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "locomotif/core.hpp"
#include "locomotif/loco.hpp"
#include "locomotif/ssm.hpp"

namespace locomotif {

/// Subpath of one extracted warping path, as an inclusive 0-based index
/// range into that path's positions.
struct PathFragment {
    int path_index = 0;
    int k_begin = 0;
    int k_end = 0;
};

struct MotifSet {
    Segment representative;                        // alpha
    std::vector<Segment> members;                  // sorted by start index; contains alpha
    std::vector<std::vector<Position>> subpaths;   // aligned with members
    double fitness = 0.0;
    double norm_score = 0.0;
    double norm_coverage = 0.0;
};

struct DiscoveryConfig {
    int l_min = 0;
    int l_max = 0;
    double rho = 0.8;
    std::optional<int> kappa;
    double nu = 0.5;
    bool warping = true;
    /// Optional guidance masks, one flag per time index (1 = allowed); they
    /// constrain only the representative's start and end points.
    std::optional<std::vector<std::uint8_t>> start_mask;
    std::optional<std::vector<std::uint8_t>> end_mask;
};

struct DiscoveryResult {
    std::vector<MotifSet> motif_sets;  // emission order = discovery order
};

/// For each path in `pe_indices` (all of which must span columns b..e of
/// `alpha`), the fragment whose column projection covers alpha, located via
/// the first-column lookup tables. Sorted by member start, then end, then
/// path index.
std::vector<PathFragment> candidate_subpaths(const std::vector<WarpingPath>& paths,
                                             const std::vector<int>& pe_indices, Segment alpha);

Segment fragment_member(const WarpingPath& path, const PathFragment& frag);

struct FitnessResult {
    double fitness = 0.0;
    double norm_score = 0.0;
    double norm_coverage = 0.0;
};

/// Harmonic mean of the normalized score and coverage of a candidate motif
/// set. The self-match contributes |alpha| to both raw terms and is
/// subtracted before normalizing; a candidate with only the self-match has
/// fitness 0.
FitnessResult motif_set_fitness(Segment alpha, const std::vector<PathFragment>& fragments,
                                const std::vector<WarpingPath>& paths,
                                const SelfSimilarityMatrix& s, int n);

struct CandidateMotifSet {
    Segment representative;
    std::vector<PathFragment> fragments;
    std::vector<Segment> members;
    FitnessResult score;
};

/// One sweep of the candidate enumeration: scans every allowed segment
/// [b:e] with l_min <= |alpha| <= l_max, incrementally maintaining the path
/// sets containing b (and e), and returns the maximal-fitness candidate that
/// survives the overlap filters against `emitted`, or nullopt when every
/// candidate has fitness 0. Ties keep the earliest (smallest b, then e).
std::optional<CandidateMotifSet> best_motif_set(const std::vector<WarpingPath>& paths,
                                                const SelfSimilarityMatrix& s,
                                                const DiscoveryConfig& config,
                                                const std::vector<Segment>& emitted);

/// Full discovery pipeline: z-normalize, SSM, path extraction, then repeated
/// best-candidate emission until kappa sets are found or none is left.
DiscoveryResult discover(const TimeSeries& ts, const DiscoveryConfig& config);

/// Start/end guidance masks from rest detection: sliding windows of size
/// l_max whose per-dimension variance stays below `var_threshold` mark idle
/// indices; the allowed indices are the `fraction` of non-idle samples
/// closest to the idle mean. No idle window (or an all-idle series) allows
/// everything.
std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> guidance_mask_from_rest(
    const TimeSeries& ts, int l_max, double var_threshold, double fraction = 0.33);

}  // namespace locomotif
