#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace locomotif {

/// Multivariate time series: n samples of d real values, stored row-major.
/// Sample indices are 1-based throughout the library; segment and matrix
/// indices follow the same convention so the dynamic-programming code reads
/// like the underlying recurrences.
class TimeSeries {
public:
    TimeSeries(std::vector<double> values, int length, int dims);

    /// Builds a series from one row per time step. All rows must have the
    /// same, nonzero width.
    static TimeSeries from_rows(const std::vector<std::vector<double>>& rows);

    int length() const { return n_; }
    int dims() const { return d_; }

    /// Sample at 1-based time index t.
    std::span<const double> sample(int t) const {
        return {values_.data() + static_cast<std::size_t>(t - 1) * d_, static_cast<std::size_t>(d_)};
    }

    double value(int t, int dim) const {  // dim is 0-based within the sample
        return values_[static_cast<std::size_t>(t - 1) * d_ + dim];
    }

    const std::vector<double>& raw() const { return values_; }

private:
    std::vector<double> values_;
    int n_ = 0;
    int d_ = 0;
};

/// Inclusive 1-based index interval [b:e] on the time axis.
struct Segment {
    int b = 1;
    int e = 1;

    int length() const { return e - b + 1; }
    bool operator==(const Segment&) const = default;
};

/// Length of the intersection of two segments, 0 when disjoint.
int seg_intersection_len(Segment a, Segment b);

/// Length of the union (counting the gap-free covered indices).
int seg_union_len(Segment a, Segment b);

/// True iff a overlaps b by more than nu * |b|. Asymmetric: b is the
/// reference segment.
bool is_coincident(Segment a, Segment b, double nu);

/// Per-dimension z-normalization with population standard deviation.
/// Dimensions with zero variance map to all zeros.
TimeSeries znormalize(const TimeSeries& ts);

}  // namespace locomotif
