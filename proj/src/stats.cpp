#include "uassoc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uassoc::stats {

double kolmogorov_q(double lambda) {
    constexpr double kTermFloor = 1e-12;
    constexpr int kMaxTerms = 100;
    const double exponent_scale = -2.0 * lambda * lambda;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= kMaxTerms; ++j) {
        const double term = 2.0 * std::exp(exponent_scale * j * j);
        if (term < kTermFloor) {
            return std::clamp(sum, 0.0, 1.0);
        }
        sum += sign * term;
        sign = -sign;
    }
    return 1.0;  // no convergence: lambda is effectively zero
}

KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample: samples must be non-empty");
    }
    std::vector<double> sa = a;
    std::vector<double> sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const auto n1 = static_cast<double>(sa.size());
    const auto n2 = static_cast<double>(sb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }

    const double effective = n1 * n2 / (n1 + n2);
    const double root = std::sqrt(effective);
    const double lambda = (root + 0.12 + 0.11 / root) * d;

    KsResult result;
    result.d_stat = d;
    result.p_value = kolmogorov_q(lambda);
    result.n1 = sa.size();
    result.n2 = sb.size();
    return result;
}

Summary summarize(const std::vector<double>& series) {
    if (series.empty()) {
        throw std::invalid_argument("summarize: empty series");
    }
    Summary s;
    s.count = series.size();
    s.min = series.front();
    s.max = series.front();
    double sum = 0.0;
    for (const double v : series) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / static_cast<double>(series.size());
    return s;
}

}  // namespace uassoc::stats
