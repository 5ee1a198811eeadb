#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace oracles {

using namespace locomotif;

namespace {

double apply_accumulation(double sim, double sigma, const GapPenaltyParams& p) {
    return sim >= p.tau ? sigma + sim : std::max(0.0, p.delta_mult * sigma - p.delta_add);
}

}  // namespace

CumulativeMatrix brute_force_cumulative(const SelfSimilarityMatrix& s,
                                        const GapPenaltyParams& params, const StepSet& steps) {
    const int n = s.size();
    CumulativeMatrix best(n);

    // A path is its start plus a step sequence; extend every path forward,
    // carrying the aggregated similarity, and record the max per endpoint.
    std::function<void(int, int, double)> extend = [&](int i, int j, double sigma_in) {
        const double sigma = apply_accumulation(s(i, j), sigma_in, params);
        best.at(i, j) = std::max(best(i, j), sigma);
        for (const Step& st : steps.steps()) {
            const int ni = i + st.di;
            const int nj = j + st.dj;
            if (ni <= n && nj <= n) {
                extend(ni, nj, sigma);
            }
        }
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            extend(i, j, 0.0);
        }
    }
    return best;
}

namespace {

struct NaiveFragment {
    int path_index;
    int k_begin;
    int k_end;
    Segment member;
};

/// Fragment indices straight from the definition: the first position whose
/// column reaches the boundary, found on the positions themselves (column
/// indices are strictly increasing) rather than via the lookup tables.
NaiveFragment scan_fragment(const std::vector<WarpingPath>& paths, int path_index, Segment alpha) {
    const auto& pos = paths[path_index].positions();
    const auto by_col = [](const Position& p, int col) { return p.j < col; };
    const int k_begin =
        static_cast<int>(std::lower_bound(pos.begin(), pos.end(), alpha.b, by_col) - pos.begin());
    const int k_end =
        static_cast<int>(std::lower_bound(pos.begin(), pos.end(), alpha.e, by_col) - pos.begin());
    return {path_index, k_begin, k_end, {pos[k_begin].i, pos[k_end].i}};
}

bool coincident_with_any(Segment seg, const std::vector<Segment>& emitted, double nu) {
    return std::any_of(emitted.begin(), emitted.end(),
                       [&](Segment g) { return is_coincident(seg, g, nu); });
}

std::vector<NaiveFragment> collect_fragments(const std::vector<WarpingPath>& paths, Segment alpha,
                                             const std::vector<Segment>& emitted, double nu) {
    std::vector<NaiveFragment> fragments;
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        const Segment cols = paths[pi].col_span();
        if (cols.b <= alpha.b && alpha.e <= cols.e) {
            fragments.push_back(scan_fragment(paths, static_cast<int>(pi), alpha));
        }
    }
    std::sort(fragments.begin(), fragments.end(), [](const NaiveFragment& a, const NaiveFragment& b) {
        if (a.member.b != b.member.b) return a.member.b < b.member.b;
        if (a.member.e != b.member.e) return a.member.e < b.member.e;
        return a.path_index < b.path_index;
    });
    std::erase_if(fragments, [&](const NaiveFragment& f) {
        return coincident_with_any(f.member, emitted, nu);
    });
    return fragments;
}

bool any_pair_coincident(const std::vector<NaiveFragment>& fragments, double nu) {
    for (std::size_t a = 0; a < fragments.size(); ++a) {
        for (std::size_t b = a + 1; b < fragments.size(); ++b) {
            const Segment& s1 = fragments[a].member;
            const Segment& s2 = fragments[b].member;
            if (is_coincident(s1, s2, nu) || is_coincident(s2, s1, nu)) {
                return true;
            }
        }
    }
    return false;
}

FitnessResult naive_fitness(Segment alpha, const std::vector<NaiveFragment>& fragments,
                            const std::vector<WarpingPath>& paths, const SelfSimilarityMatrix& s,
                            int n) {
    double score = 0.0;
    long long total_fragment_len = 0;
    for (const NaiveFragment& f : fragments) {
        score += paths[f.path_index].fragment_score(f.k_begin, f.k_end, s);
        total_fragment_len += f.k_end - f.k_begin + 1;
    }
    long long coverage = 0;
    for (std::size_t a = 0; a < fragments.size(); ++a) {
        coverage += fragments[a].member.length();
        for (std::size_t b = a + 1; b < fragments.size(); ++b) {
            coverage -= seg_intersection_len(fragments[a].member, fragments[b].member);
        }
    }

    FitnessResult result;
    result.norm_score = total_fragment_len > 0
                            ? (score - alpha.length()) / static_cast<double>(total_fragment_len)
                            : 0.0;
    result.norm_coverage =
        fragments.empty() ? 0.0 : (static_cast<double>(coverage) - alpha.length()) / n;
    if (result.norm_score + result.norm_coverage > 0.0) {
        result.fitness = 2.0 * result.norm_score * result.norm_coverage /
                         (result.norm_score + result.norm_coverage);
    }
    return result;
}

}  // namespace

std::optional<NaiveCandidate> naive_best_motif_set(const std::vector<WarpingPath>& paths,
                                                   const SelfSimilarityMatrix& s,
                                                   const DiscoveryConfig& config,
                                                   const std::vector<Segment>& emitted) {
    const int n = s.size();
    std::optional<NaiveCandidate> best;
    double best_fitness = 0.0;

    for (int b = 1; b <= n - config.l_min + 1; ++b) {
        if (config.start_mask && !(*config.start_mask)[b - 1]) {
            continue;
        }
        for (int e = b + config.l_min - 1; e <= std::min(b + config.l_max - 1, n); ++e) {
            const Segment alpha{b, e};
            if (coincident_with_any(alpha, emitted, config.nu)) {
                continue;
            }
            if (config.end_mask && !(*config.end_mask)[e - 1]) {
                continue;
            }
            const auto fragments = collect_fragments(paths, alpha, emitted, config.nu);
            if (any_pair_coincident(fragments, config.nu)) {
                continue;
            }
            const FitnessResult fit = naive_fitness(alpha, fragments, paths, s, n);
            if (fit.fitness > best_fitness) {
                best_fitness = fit.fitness;
                NaiveCandidate cand;
                cand.representative = alpha;
                for (const NaiveFragment& f : fragments) {
                    cand.members.push_back(f.member);
                }
                cand.score = fit;
                best = std::move(cand);
            }
        }
    }
    return best;
}

SweepAudit audit_candidates(const std::vector<WarpingPath>& paths, const SelfSimilarityMatrix& s,
                            const DiscoveryConfig& config, const std::vector<Segment>& emitted) {
    const int n = s.size();
    SweepAudit audit;

    for (int b = 1; b <= n - config.l_min + 1; ++b) {
        for (int e = b + config.l_min - 1; e <= std::min(b + config.l_max - 1, n); ++e) {
            const Segment alpha{b, e};
            if (coincident_with_any(alpha, emitted, config.nu)) {
                continue;
            }
            const auto fragments = collect_fragments(paths, alpha, emitted, config.nu);
            if (any_pair_coincident(fragments, config.nu)) {
                continue;
            }
            const FitnessResult fit = naive_fitness(alpha, fragments, paths, s, n);
            ++audit.candidates;

            const double hi = 1.0 - static_cast<double>(alpha.length()) / n;
            if (fit.norm_score < 0.0 || fit.norm_score > hi + 1e-12 || fit.norm_coverage < 0.0 ||
                fit.norm_coverage > hi + 1e-12) {
                audit.bounds_ok = false;
            }
            for (const NaiveFragment& f : fragments) {
                const double ratio =
                    static_cast<double>(f.member.length()) / alpha.length();
                if (config.warping ? (ratio < 0.5 || ratio > 2.0) : ratio != 1.0) {
                    audit.ratios_ok = false;
                }
            }
        }
    }
    return audit;
}

long long brute_force_assignment_sum(const std::vector<std::vector<long long>>& counts) {
    const int rows = static_cast<int>(counts.size());
    const int cols = rows > 0 ? static_cast<int>(counts[0].size()) : 0;
    const int k = std::max(rows, cols);
    if (k == 0) {
        return 0;
    }
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) {
        perm[i] = i;
    }
    long long best = 0;
    do {
        long long sum = 0;
        for (int i = 0; i < k; ++i) {
            if (i < rows && perm[i] < cols) {
                sum += counts[i][perm[i]];
            }
        }
        best = std::max(best, sum);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

TimeSeries random_series(std::mt19937& rng, int n, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(n) * d);
    for (double& v : values) {
        v = gauss(rng);
    }
    return TimeSeries(std::move(values), n, d);
}

namespace {

// Cross-class matches need a shared sub-shape whose monotone strokes differ
// by at most the slope bound (a factor of two). The motif classes have
// strokes of 7..24 samples and opposite sign conventions, so the fillers
// stay outside their warpable range: one long ramp and four fast
// oscillations with strokes of at most ~3.4 samples, told apart by their
// amplitude envelopes (instance z-normalization erases plain amplitude
// differences between pure tones).
TimeSeries render_template(int shape, int length, double noise_sigma, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, noise_sigma);
    std::vector<double> values(length);
    for (int t = 0; t < length; ++t) {
        const double u = static_cast<double>(t) / length;
        double v = 0.0;
        switch (shape) {
            case 0:  // single symmetric cycle
                v = std::sin(2.0 * M_PI * u);
                break;
            case 1:  // two inverted cycles, small then large
                v = -std::sin(4.0 * M_PI * u) * (u < 0.5 ? 0.4 : 1.0);
                break;
            case 2:  // rising ramp
                v = 2.0 * u - 1.0;
                break;
            case 3:  // fast oscillation, flat envelope
                v = std::sin(22.0 * M_PI * u);
                break;
            case 4:  // fast oscillation, rising envelope
                v = std::sin(14.0 * M_PI * u) * u;
                break;
            case 5:  // fast oscillation, falling envelope
                v = std::sin(18.0 * M_PI * u) * (1.0 - u);
                break;
            default:  // fast oscillation, wobbling envelope
                v = std::sin(26.0 * M_PI * u) * (0.55 + 0.45 * std::cos(4.0 * M_PI * u));
                break;
        }
        values[t] = v + gauss(rng);
    }
    return TimeSeries(std::move(values), length, 1);
}

}  // namespace

LabeledInstancePool synthetic_template_pool(int instances_per_motif_class, bool stretch,
                                            std::uint64_t seed) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    std::uniform_real_distribution<double> stretch_factor(0.8, 1.25);

    LabeledInstancePool pool;
    const int base_len[2] = {48, 56};
    const char* motif_labels[2] = {"shape_a", "shape_b"};
    for (int cls = 0; cls < 2; ++cls) {
        for (int inst = 0; inst < instances_per_motif_class; ++inst) {
            int length = base_len[cls];
            if (stretch) {
                length = static_cast<int>(std::lround(length * stretch_factor(rng)));
            }
            pool.add_instance(motif_labels[cls], render_template(cls, length, 0.1, rng));
        }
    }
    const int filler_len[5] = {52, 44, 40, 60, 50};
    for (int f = 0; f < 5; ++f) {
        pool.add_instance("filler_" + std::to_string(f),
                          render_template(2 + f, filler_len[f], 0.1, rng));
    }
    return pool;
}

double mean_f1_over_suite(const LabeledInstancePool& pool, int series_count, std::uint64_t seed,
                          const DiscoveryConfig& base_config) {
    double total = 0.0;
    for (int t = 0; t < series_count; ++t) {
        const GeneratedBenchmark bench = generate_one(pool, 2, seed + t);
        const DiscoveryResult result = discover(bench.series, base_config);

        std::vector<std::vector<Segment>> discovered;
        for (const MotifSet& ms : result.motif_sets) {
            discovered.push_back(ms.members);
        }
        const Metrics metrics =
            precision_recall_f1(matching_matrix(bench.ground_truth, discovered));
        total += metrics.f1;
    }
    return total / series_count;
}

}  // namespace oracles
