#include "qpair/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpair {

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_critical_value(std::size_t n, double alpha) {
    // c(alpha) = sqrt(-ln(alpha/2)/2), asymptotic one-sample form
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c / std::sqrt(static_cast<double>(n));
}

double chi_square_statistic(const std::array<long, 4>& observed,
                            const std::array<double, 4>& expected_probs) {
    long total = 0;
    double psum = 0.0;
    for (int i = 0; i < 4; ++i) {
        total += observed[i];
        psum += expected_probs[i];
    }
    if (total == 0 || !(psum > 0.0)) {
        throw std::invalid_argument("chi_square_statistic: empty input");
    }
    double stat = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double expected = total * expected_probs[i] / psum;
        if (expected <= 0.0) {
            if (observed[i] != 0) {
                throw std::invalid_argument(
                    "chi_square_statistic: observation in zero-probability "
                    "category");
            }
            continue;
        }
        const double diff = observed[i] - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

}  // namespace qpair
