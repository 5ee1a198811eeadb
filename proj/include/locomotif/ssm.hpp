#pragma once

#include <vector>

#include "locomotif/core.hpp"

namespace locomotif {

/// Square symmetric matrix of pairwise sample similarities in [0,1],
/// row-major, 1-based accessors.
class SelfSimilarityMatrix {
public:
    explicit SelfSimilarityMatrix(int n) : n_(n), values_(static_cast<std::size_t>(n) * n, 0.0) {}

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

/// S[i,j] = exp(-||x_i - x_j||^2) over all dimensions. The input is expected
/// to be z-normalized already; this is not re-checked.
SelfSimilarityMatrix compute_ssm(const TimeSeries& ts);

/// Linearly interpolated rho-quantile over all n^2 entries of S, diagonal
/// included. rho=0 gives the minimum, rho=1 the maximum.
double quantile_threshold(const SelfSimilarityMatrix& s, double rho);

}  // namespace locomotif
