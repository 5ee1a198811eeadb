#include "locomotif/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace locomotif {

namespace {

bool coincident_with_any(Segment seg, const std::vector<Segment>& emitted, double nu) {
    return std::any_of(emitted.begin(), emitted.end(),
                       [&](Segment g) { return is_coincident(seg, g, nu); });
}

/// Unordered-pair coincidence: holds iff the overlap exceeds nu times the
/// shorter segment.
bool mutually_coincident(Segment a, Segment b, double nu) {
    return seg_intersection_len(a, b) > nu * std::min(a.length(), b.length());
}

void validate_config(const DiscoveryConfig& config, int n) {
    if (config.l_min < 1 || config.l_min > n) {
        throw std::invalid_argument("l_min must lie in [1, n]");
    }
    if (config.l_min > config.l_max) {
        throw std::invalid_argument("l_min must not exceed l_max");
    }
    if (config.rho < 0.0 || config.rho > 1.0) {
        throw std::invalid_argument("rho must lie in [0, 1]");
    }
    if (config.nu < 0.0 || config.nu > 0.5) {
        throw std::invalid_argument("nu must lie in [0, 0.5]");
    }
    if (config.kappa && *config.kappa < 0) {
        throw std::invalid_argument("kappa must be nonnegative");
    }
    if (config.start_mask && static_cast<int>(config.start_mask->size()) != n) {
        throw std::invalid_argument("start mask length must equal the series length");
    }
    if (config.end_mask && static_cast<int>(config.end_mask->size()) != n) {
        throw std::invalid_argument("end mask length must equal the series length");
    }
}

}  // namespace

Segment fragment_member(const WarpingPath& path, const PathFragment& frag) {
    return {path.positions()[frag.k_begin].i, path.positions()[frag.k_end].i};
}

std::vector<PathFragment> candidate_subpaths(const std::vector<WarpingPath>& paths,
                                             const std::vector<int>& pe_indices, Segment alpha) {
    std::vector<PathFragment> fragments;
    fragments.reserve(pe_indices.size());
    for (int idx : pe_indices) {
        const WarpingPath& p = paths[idx];
        fragments.push_back({idx, p.first_k_at_col(alpha.b), p.first_k_at_col(alpha.e)});
    }
    std::sort(fragments.begin(), fragments.end(),
              [&paths](const PathFragment& a, const PathFragment& b) {
                  const Segment ma = fragment_member(paths[a.path_index], a);
                  const Segment mb = fragment_member(paths[b.path_index], b);
                  if (ma.b != mb.b) return ma.b < mb.b;
                  if (ma.e != mb.e) return ma.e < mb.e;
                  return a.path_index < b.path_index;
              });
    return fragments;
}

FitnessResult motif_set_fitness(Segment alpha, const std::vector<PathFragment>& fragments,
                                const std::vector<WarpingPath>& paths,
                                const SelfSimilarityMatrix& s, int n) {
    double score = 0.0;
    long long total_fragment_len = 0;
    long long coverage = 0;
    Segment prev{};

    for (std::size_t k = 0; k < fragments.size(); ++k) {
        const PathFragment& f = fragments[k];
        const WarpingPath& p = paths[f.path_index];
        score += p.fragment_score(f.k_begin, f.k_end, s);
        total_fragment_len += f.k_end - f.k_begin + 1;

        const Segment member = fragment_member(p, f);
        coverage += member.length();
        if (k > 0) {
            coverage -= seg_intersection_len(prev, member);  // members are sorted by start
        }
        prev = member;
    }

    FitnessResult result;
    result.norm_score =
        total_fragment_len > 0 ? (score - alpha.length()) / static_cast<double>(total_fragment_len)
                               : 0.0;
    result.norm_coverage = fragments.empty()
                               ? 0.0
                               : (static_cast<double>(coverage) - alpha.length()) / n;
    if (result.norm_score + result.norm_coverage > 0.0) {
        result.fitness =
            2.0 * result.norm_score * result.norm_coverage / (result.norm_score + result.norm_coverage);
    }
    return result;
}

std::optional<CandidateMotifSet> best_motif_set(const std::vector<WarpingPath>& paths,
                                                const SelfSimilarityMatrix& s,
                                                const DiscoveryConfig& config,
                                                const std::vector<Segment>& emitted) {
    const int n = s.size();
    validate_config(config, n);

    std::vector<std::vector<int>> starts_at(n + 1);
    for (std::size_t idx = 0; idx < paths.size(); ++idx) {
        starts_at[paths[idx].col_span().b].push_back(static_cast<int>(idx));
    }

    std::optional<CandidateMotifSet> best;
    double best_fitness = 0.0;

    std::vector<int> pb;  // paths whose column span contains b
    pb.reserve(paths.size());
    std::vector<int> pe;  // subset whose column span also contains e
    std::vector<PathFragment> kept;
    std::vector<Segment> members;

    const int b_hi = n - config.l_min + 1;
    for (int b = 1; b <= b_hi; ++b) {
        for (int idx : starts_at[b]) {
            pb.push_back(idx);
        }
        std::erase_if(pb, [&](int idx) { return paths[idx].col_span().e < b; });

        if (config.start_mask && !(*config.start_mask)[b - 1]) {
            continue;
        }

        const int e_lo = b + config.l_min - 1;
        const int e_hi = std::min(b + config.l_max - 1, n);

        pe.clear();
        for (int idx : pb) {
            if (paths[idx].col_span().e >= e_lo) {
                pe.push_back(idx);
            }
        }

        for (int e = e_lo; e <= e_hi; ++e) {
            if (e > e_lo) {
                std::erase_if(pe, [&](int idx) { return paths[idx].col_span().e < e; });
            }
            const Segment alpha{b, e};

            // Growing e only increases overlap with previously emitted
            // segments, so the whole remainder of this b can be dropped.
            if (coincident_with_any(alpha, emitted, config.nu)) {
                break;
            }
            if (config.end_mask && !(*config.end_mask)[e - 1]) {
                continue;
            }

            const std::vector<PathFragment> fragments = candidate_subpaths(paths, pe, alpha);

            kept.clear();
            members.clear();
            for (const PathFragment& f : fragments) {
                const Segment member = fragment_member(paths[f.path_index], f);
                if (!coincident_with_any(member, emitted, config.nu)) {
                    kept.push_back(f);
                    members.push_back(member);
                }
            }

            bool reject = false;
            for (std::size_t k = 1; k < members.size(); ++k) {
                if (mutually_coincident(members[k - 1], members[k], config.nu)) {
                    reject = true;
                    break;
                }
            }
            if (reject) {
                continue;
            }

            const FitnessResult fit = motif_set_fitness(alpha, kept, paths, s, n);
            if (fit.fitness > best_fitness) {
                best_fitness = fit.fitness;
                best = CandidateMotifSet{alpha, kept, members, fit};
            }
        }
    }

    return best;
}

DiscoveryResult discover(const TimeSeries& ts, const DiscoveryConfig& config) {
    validate_config(config, ts.length());

    const TimeSeries normalized = znormalize(ts);
    const SelfSimilarityMatrix s = compute_ssm(normalized);
    const StepSet steps = config.warping ? StepSet::warping() : StepSet::no_warping();
    const PathSearchResult search = find_paths_in_ssm(s, config.l_min, config.rho, steps);

    DiscoveryResult result;
    std::vector<Segment> emitted;
    while (!config.kappa ||
           static_cast<int>(result.motif_sets.size()) < *config.kappa) {
        const auto candidate = best_motif_set(search.paths, s, config, emitted);
        if (!candidate) {
            break;
        }

        MotifSet ms;
        ms.representative = candidate->representative;
        ms.members = candidate->members;
        ms.fitness = candidate->score.fitness;
        ms.norm_score = candidate->score.norm_score;
        ms.norm_coverage = candidate->score.norm_coverage;
        ms.subpaths.reserve(candidate->fragments.size());
        for (const PathFragment& f : candidate->fragments) {
            const auto& pos = search.paths[f.path_index].positions();
            ms.subpaths.emplace_back(pos.begin() + f.k_begin, pos.begin() + f.k_end + 1);
        }

        emitted.insert(emitted.end(), candidate->members.begin(), candidate->members.end());
        result.motif_sets.push_back(std::move(ms));
    }
    return result;
}

std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> guidance_mask_from_rest(
    const TimeSeries& ts, int l_max, double var_threshold, double fraction) {
    if (fraction <= 0.0 || fraction > 1.0) {
        throw std::invalid_argument("fraction must lie in (0, 1]");
    }
    const int n = ts.length();
    const int d = ts.dims();

    std::vector<std::uint8_t> idle(n, 0);
    bool any_idle = false;
    if (l_max >= 1 && l_max <= n) {
        // Prefix sums give per-window variances in O(n*d).
        std::vector<double> sum(static_cast<std::size_t>(n + 1) * d, 0.0);
        std::vector<double> sum_sq(static_cast<std::size_t>(n + 1) * d, 0.0);
        for (int t = 1; t <= n; ++t) {
            for (int dim = 0; dim < d; ++dim) {
                const double v = ts.value(t, dim);
                sum[static_cast<std::size_t>(t) * d + dim] =
                    sum[static_cast<std::size_t>(t - 1) * d + dim] + v;
                sum_sq[static_cast<std::size_t>(t) * d + dim] =
                    sum_sq[static_cast<std::size_t>(t - 1) * d + dim] + v * v;
            }
        }

        int marked_up_to = 0;
        for (int t = 1; t + l_max - 1 <= n; ++t) {
            bool all_low = true;
            for (int dim = 0; dim < d && all_low; ++dim) {
                const double s1 = sum[static_cast<std::size_t>(t + l_max - 1) * d + dim] -
                                  sum[static_cast<std::size_t>(t - 1) * d + dim];
                const double s2 = sum_sq[static_cast<std::size_t>(t + l_max - 1) * d + dim] -
                                  sum_sq[static_cast<std::size_t>(t - 1) * d + dim];
                const double mean = s1 / l_max;
                const double var = std::max(0.0, s2 / l_max - mean * mean);
                all_low = var < var_threshold;
            }
            if (all_low) {
                any_idle = true;
                for (int u = std::max(t, marked_up_to + 1); u <= t + l_max - 1; ++u) {
                    idle[u - 1] = 1;
                }
                marked_up_to = t + l_max - 1;
            }
        }
    }

    std::vector<std::uint8_t> allowed(n, 1);
    const long long idle_count = std::count(idle.begin(), idle.end(), 1);
    if (!any_idle || idle_count == n) {
        return {allowed, allowed};
    }

    std::vector<double> idle_mean(d, 0.0);
    for (int t = 1; t <= n; ++t) {
        if (idle[t - 1]) {
            for (int dim = 0; dim < d; ++dim) {
                idle_mean[dim] += ts.value(t, dim);
            }
        }
    }
    for (double& m : idle_mean) {
        m /= static_cast<double>(idle_count);
    }

    std::vector<std::pair<double, int>> non_idle;  // (distance to idle mean, index)
    non_idle.reserve(n - idle_count);
    for (int t = 1; t <= n; ++t) {
        if (!idle[t - 1]) {
            double sq = 0.0;
            for (int dim = 0; dim < d; ++dim) {
                const double diff = ts.value(t, dim) - idle_mean[dim];
                sq += diff * diff;
            }
            non_idle.emplace_back(std::sqrt(sq), t);
        }
    }
    std::sort(non_idle.begin(), non_idle.end());

    const std::size_t take = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(non_idle.size())));
    std::fill(allowed.begin(), allowed.end(), 0);
    for (std::size_t k = 0; k < take && k < non_idle.size(); ++k) {
        allowed[non_idle[k].second - 1] = 1;
    }
    return {allowed, allowed};
}

}  // namespace locomotif
