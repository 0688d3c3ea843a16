#pragma once

#include <cstddef>
#include <vector>

namespace uassoc::stats {

struct KsResult {
    double d_stat = 0.0;
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
};

/// Survival function of the Kolmogorov distribution,
///   Q(lambda) = 2 * sum_{j>=1} (-1)^(j-1) * exp(-2 j^2 lambda^2),
/// truncated once a term drops below 1e-12 in magnitude. Tiny lambda makes
/// the series alternate without shrinking; after 100 terms the value is taken
/// as 1. Result clamped to [0, 1].
double kolmogorov_q(double lambda);

/// Two-sided two-sample Kolmogorov-Smirnov test. The statistic is the
/// largest empirical-CDF gap with both CDFs advanced past ties before each
/// comparison; the p-value uses the asymptotic Q with the effective sample
/// size n1*n2/(n1+n2). Throws std::invalid_argument on empty samples.
KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

struct Summary {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

/// Mean and extrema; throws std::invalid_argument on an empty series.
Summary summarize(const std::vector<double>& series);

}  // namespace uassoc::stats
