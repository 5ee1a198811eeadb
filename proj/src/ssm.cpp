#include "locomotif/ssm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locomotif {

SelfSimilarityMatrix compute_ssm(const TimeSeries& ts) {
    const int n = ts.length();
    const int d = ts.dims();
    SelfSimilarityMatrix s(n);

    for (int i = 1; i <= n; ++i) {
        const auto xi = ts.sample(i);
        s.at(i, i) = 1.0;
        for (int j = i + 1; j <= n; ++j) {
            const auto xj = ts.sample(j);
            double sq_dist = 0.0;
            for (int k = 0; k < d; ++k) {
                const double diff = xi[k] - xj[k];
                sq_dist += diff * diff;
            }
            const double sim = std::exp(-sq_dist);
            s.at(i, j) = sim;
            s.at(j, i) = sim;
        }
    }
    return s;
}

double quantile_threshold(const SelfSimilarityMatrix& s, double rho) {
    if (rho < 0.0 || rho > 1.0) {
        throw std::invalid_argument("quantile parameter must lie in [0,1]");
    }
    std::vector<double> values(s.raw());
    const std::size_t count = values.size();

    const double h = rho * static_cast<double>(count - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);

    std::nth_element(values.begin(), values.begin() + lo, values.end());
    const double v_lo = values[lo];
    if (frac == 0.0 || lo + 1 == count) {
        return v_lo;
    }
    const double v_hi = *std::min_element(values.begin() + lo + 1, values.end());
    return v_lo + frac * (v_hi - v_lo);
}

}  // namespace locomotif
