#include "locomotif/loco.hpp"

#include <algorithm>
#include <stdexcept>

namespace locomotif {

StepSet StepSet::warping() {
    // Order matters for backtracking ties: diagonal first, then (2,1), then (1,2).
    return StepSet({{1, 1}, {2, 1}, {1, 2}});
}

StepSet StepSet::no_warping() {
    return StepSet({{1, 1}});
}

WarpingPath::WarpingPath(std::vector<Position> positions, const SelfSimilarityMatrix& s)
    : positions_(std::move(positions)) {
    if (positions_.empty()) {
        throw std::invalid_argument("warping path cannot be empty");
    }
    col_first_ = positions_.front().j;
    const int col_last = positions_.back().j;

    cum_sim_.resize(positions_.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < positions_.size(); ++k) {
        acc += s(positions_[k].i, positions_[k].j);
        cum_sim_[k] = acc;
    }

    first_k_.resize(col_last - col_first_ + 1);
    int k = 0;
    for (int j = col_first_; j <= col_last; ++j) {
        while (positions_[k].j < j) {
            ++k;
        }
        first_k_[j - col_first_] = k;
    }
}

WarpingPath WarpingPath::mirrored(const SelfSimilarityMatrix& s) const {
    std::vector<Position> swapped(positions_.size());
    for (std::size_t k = 0; k < positions_.size(); ++k) {
        swapped[k] = {positions_[k].j, positions_[k].i};
    }
    return WarpingPath(std::move(swapped), s);
}

bool WarpingPath::is_self_mirror() const {
    return std::all_of(positions_.begin(), positions_.end(),
                       [](const Position& p) { return p.i == p.j; });
}

CumulativeMatrix compute_cumulative(const SelfSimilarityMatrix& s, const GapPenaltyParams& params,
                                    const StepSet& steps) {
    const int n = s.size();
    CumulativeMatrix d(n);
    const auto& step_list = steps.steps();

    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            double best_pred = 0.0;  // max over an empty predecessor set is 0
            for (const Step& st : step_list) {
                const int pi = i - st.di;
                const int pj = j - st.dj;
                if (pi > 0 && pj > 0) {
                    best_pred = std::max(best_pred, d(pi, pj));
                }
            }
            const double sim = s(i, j);
            d.at(i, j) = sim >= params.tau
                             ? best_pred + sim
                             : std::max(0.0, params.delta_mult * best_pred - params.delta_add);
        }
    }
    return d;
}

namespace {

void backtrack_into(const CumulativeMatrix& d, Position start, const PositionMask& mask,
                    const StepSet& steps, std::vector<Position>& path) {
    path.clear();
    int i = start.i;
    int j = start.j;

    while (!mask.test(i, j) && d(i, j) != 0.0) {
        path.push_back({i, j});

        bool found = false;
        double best = 0.0;
        int bi = 0;
        int bj = 0;
        for (const Step& st : steps.steps()) {
            const int pi = i - st.di;
            const int pj = j - st.dj;
            if (pi > 0 && pj > 0 && (!found || d(pi, pj) > best)) {
                found = true;
                best = d(pi, pj);
                bi = pi;
                bj = pj;
            }
        }
        if (!found) {
            break;  // border of the matrix
        }
        i = bi;
        j = bj;
    }
    std::reverse(path.begin(), path.end());
}

}  // namespace

std::vector<Position> backtrack(const CumulativeMatrix& d, Position start,
                                const PositionMask& mask, const StepSet& steps) {
    std::vector<Position> path;
    backtrack_into(d, start, mask, steps, path);
    return path;
}

std::vector<Position> vicinity(const std::vector<Position>& path, int l_min, int n) {
    const int w = l_min / 2;
    std::vector<Position> region;
    region.reserve(path.size() * static_cast<std::size_t>(4 * w + 2));
    for (const Position& p : path) {
        for (int r = std::max(1, p.i - w); r <= std::min(n, p.i + w); ++r) {
            region.push_back({r, p.j});
        }
        for (int c = std::max(1, p.j - w); c <= std::min(n, p.j + w); ++c) {
            region.push_back({p.i, c});
        }
    }
    std::sort(region.begin(), region.end(), [](const Position& a, const Position& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    region.erase(std::unique(region.begin(), region.end()), region.end());
    return region;
}

void mask_vicinity(PositionMask& mask, const std::vector<Position>& path, int l_min) {
    const int w = l_min / 2;
    const int n = mask.size();
    for (const Position& p : path) {
        for (int r = std::max(1, p.i - w); r <= std::min(n, p.i + w); ++r) {
            mask.set(r, p.j);
        }
        for (int c = std::max(1, p.j - w); c <= std::min(n, p.j + w); ++c) {
            mask.set(p.i, c);
        }
    }
}

PathSearchResult find_paths_in_ssm(const SelfSimilarityMatrix& s, int l_min, double rho,
                                   const StepSet& steps) {
    const int n = s.size();
    if (l_min < 1 || l_min > n) {
        throw std::invalid_argument("minimum motif length must lie in [1, n]");
    }

    const double tau = quantile_threshold(s, rho);
    const CumulativeMatrix d = compute_cumulative(s, GapPenaltyParams::defaults(tau), steps);

    // One descending sort replaces the repeated argmax scan: the matrix never
    // changes and masking only removes candidates, so processing positive
    // entries in (value desc, row, col) order yields the same paths. Keys are
    // stored next to the indices so the sort touches memory sequentially.
    struct Entry {
        double value;
        std::uint64_t flat;
    };
    const auto& values = d.raw();
    std::vector<Entry> order;
    order.reserve(values.size() / 4);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        if (values[idx] > 0.0) {
            order.push_back({values[idx], idx});
        }
    }
    std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
        return a.value != b.value ? a.value > b.value : a.flat < b.flat;
    });

    PositionMask mask(n);
    std::vector<WarpingPath> paths;
    std::vector<Position> scratch;

    for (const Entry& entry : order) {
        const std::size_t idx = entry.flat;
        const int i = static_cast<int>(idx / n) + 1;
        const int j = static_cast<int>(idx % n) + 1;
        if (mask.test(i, j)) {
            continue;
        }
        backtrack_into(d, {i, j}, mask, steps, scratch);
        const std::vector<Position>& positions = scratch;

        const int row_len = positions.back().i - positions.front().i + 1;
        const int col_len = positions.back().j - positions.front().j + 1;
        if (row_len >= l_min || col_len >= l_min) {
            mask_vicinity(mask, positions, l_min);
            WarpingPath path(positions, s);
            const bool self_mirror = path.is_self_mirror();
            paths.push_back(std::move(path));
            if (!self_mirror) {
                WarpingPath mirror = paths.back().mirrored(s);
                mask_vicinity(mask, mirror.positions(), l_min);
                paths.push_back(std::move(mirror));
            }
        } else {
            for (const Position& p : positions) {
                mask.set(p.i, p.j);
            }
        }
    }
    return {std::move(paths), tau};
}

std::vector<WarpingPath> find_paths(const TimeSeries& ts, int l_min, double rho,
                                    const StepSet& steps) {
    return find_paths_in_ssm(compute_ssm(ts), l_min, rho, steps).paths;
}

}  // namespace locomotif
