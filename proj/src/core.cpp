#include "locomotif/core.hpp"

#include <algorithm>
#include <cmath>

namespace locomotif {

TimeSeries::TimeSeries(std::vector<double> values, int length, int dims)
    : values_(std::move(values)), n_(length), d_(dims) {
    if (n_ < 1 || d_ < 1) {
        throw std::invalid_argument("time series needs at least one sample and one dimension");
    }
    if (values_.size() != static_cast<std::size_t>(n_) * d_) {
        throw std::invalid_argument("time series buffer size does not match length * dims");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("time series contains a non-finite value");
        }
    }
}

TimeSeries TimeSeries::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw std::invalid_argument("time series needs at least one sample and one dimension");
    }
    const std::size_t d = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * d);
    for (const auto& row : rows) {
        if (row.size() != d) {
            throw std::invalid_argument("time series rows have inconsistent widths");
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return TimeSeries(std::move(flat), static_cast<int>(rows.size()), static_cast<int>(d));
}

int seg_intersection_len(Segment a, Segment b) {
    return std::max(0, std::min(a.e, b.e) - std::max(a.b, b.b) + 1);
}

int seg_union_len(Segment a, Segment b) {
    return a.length() + b.length() - seg_intersection_len(a, b);
}

bool is_coincident(Segment a, Segment b, double nu) {
    return seg_intersection_len(a, b) > nu * b.length();
}

TimeSeries znormalize(const TimeSeries& ts) {
    const int n = ts.length();
    const int d = ts.dims();
    std::vector<double> out(ts.raw());

    for (int dim = 0; dim < d; ++dim) {
        double mean = 0.0;
        for (int t = 1; t <= n; ++t) {
            mean += ts.value(t, dim);
        }
        mean /= n;

        double var = 0.0;
        for (int t = 1; t <= n; ++t) {
            const double diff = ts.value(t, dim) - mean;
            var += diff * diff;
        }
        var /= n;  // population variance

        const double std_dev = std::sqrt(var);
        for (int t = 0; t < n; ++t) {
            double& cell = out[static_cast<std::size_t>(t) * d + dim];
            cell = std_dev > 0.0 ? (cell - mean) / std_dev : 0.0;
        }
    }
    return TimeSeries(std::move(out), n, d);
}

}  // namespace locomotif
