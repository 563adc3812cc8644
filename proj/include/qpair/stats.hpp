#pragma once

#include <array>
#include <functional>
#include <vector>

namespace qpair {

/// Kolmogorov-Smirnov statistic of samples against a continuous CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

/// Asymptotic KS critical value at significance alpha (0.01 or 0.05).
double ks_critical_value(std::size_t n, double alpha);

/// Pearson chi-square statistic of observed counts against expected
/// category probabilities (which are renormalized to sum to 1).
double chi_square_statistic(const std::array<long, 4>& observed,
                            const std::array<double, 4>& expected_probs);

/// Critical value of the chi-square distribution with 3 degrees of
/// freedom at significance 0.01.
inline constexpr double kChiSquare3Dof001 = 11.344866730144373;

}  // namespace qpair
