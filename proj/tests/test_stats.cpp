#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "uassoc/rng.hpp"
#include "uassoc/stats.hpp"

using namespace uassoc;

namespace {

// Reference implementations written straight from the definitions, kept
// separate from the library code they audit.

double oracle_d(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<double> support = a;
    support.insert(support.end(), b.begin(), b.end());
    double d = 0.0;
    for (const double x : support) {
        const auto below_a = static_cast<double>(
            std::upper_bound(a.begin(), a.end(), x) - a.begin());
        const auto below_b = static_cast<double>(
            std::upper_bound(b.begin(), b.end(), x) - b.begin());
        d = std::max(d, std::abs(below_a / static_cast<double>(a.size()) -
                                 below_b / static_cast<double>(b.size())));
    }
    return d;
}

double oracle_p(double d, std::size_t n1, std::size_t n2) {
    const long double ne = static_cast<long double>(n1) * static_cast<long double>(n2) /
                           (static_cast<long double>(n1) + static_cast<long double>(n2));
    const long double lambda = (std::sqrt(ne) + 0.12L + 0.11L / std::sqrt(ne)) * static_cast<long double>(d);
    if (lambda < 1e-6L) {
        return 1.0;
    }
    long double sum = 0.0L;
    for (int j = 1; j <= 500; ++j) {
        const long double term = 2.0L * std::exp(-2.0L * lambda * lambda * j * j);
        sum += (j % 2 == 1 ? term : -term);
    }
    return static_cast<double>(std::min(1.0L, std::max(0.0L, sum)));
}

}  // namespace

TEST_SUITE_BEGIN("stats");

TEST_CASE("identical samples") {
    const std::vector<double> xs{3.0, 1.0, 2.0, 2.0, 9.5};
    const auto r = stats::ks_two_sample(xs, xs);
    CHECK(r.d_stat == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.n1 == 5);
    CHECK(r.n2 == 5);
}

TEST_CASE("disjoint samples") {
    const auto r = stats::ks_two_sample({0.0, 1.0, 2.0}, {10.0, 11.0, 12.0});
    CHECK(r.d_stat == 1.0);
    CHECK(r.p_value < 0.2);
}

TEST_CASE("empty sample rejected") {
    CHECK_THROWS_AS(stats::ks_two_sample({}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(stats::ks_two_sample({1.0}, {}), std::invalid_argument);
}

TEST_CASE("matches an independently coded reference on seeded pairs") {
    rng::Engine eng(321);
    for (int pair = 0; pair < 20; ++pair) {
        const std::size_t n1 = 20 + rng::uniform_index(eng, 120);
        const std::size_t n2 = 20 + rng::uniform_index(eng, 120);
        std::vector<double> a(n1);
        std::vector<double> b(n2);
        const double shift = rng::uniform_real(eng, -0.5, 0.5);
        for (auto& x : a) x = rng::uniform_real(eng, 0.0, 1.0);
        for (auto& x : b) x = rng::uniform_real(eng, 0.0, 1.0) + shift;
        const auto r = stats::ks_two_sample(a, b);
        CHECK(r.d_stat == doctest::Approx(oracle_d(a, b)).epsilon(1e-12));
        CHECK(r.p_value == doctest::Approx(oracle_p(r.d_stat, n1, n2)).epsilon(1e-6));
    }
}

TEST_CASE("ties advance both CDFs before the gap is measured") {
    // All mass at the same point: the distributions are indistinguishable.
    const auto r = stats::ks_two_sample({1.0, 1.0, 1.0}, {1.0, 1.0});
    CHECK(r.d_stat == 0.0);
    CHECK(r.p_value == 1.0);
}

TEST_CASE("d is invariant under strictly increasing transforms") {
    rng::Engine eng(8);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> a(40);
        std::vector<double> b(55);
        for (auto& x : a) x = rng::uniform_real(eng, -3.0, 3.0);
        for (auto& x : b) x = rng::uniform_real(eng, -2.0, 4.0);
        const double d_plain = stats::ks_two_sample(a, b).d_stat;
        auto fa = a;
        auto fb = b;
        for (auto& x : fa) x = std::exp(0.5 * x) + 2.0 * x;
        for (auto& x : fb) x = std::exp(0.5 * x) + 2.0 * x;
        CHECK(stats::ks_two_sample(fa, fb).d_stat == doctest::Approx(d_plain).epsilon(1e-12));
    }
}

TEST_CASE("p decreases as d grows for fixed sizes") {
    double previous = 1.1;
    for (double d = 0.05; d <= 1.0; d += 0.05) {
        const double ne = 100.0 * 100.0 / 200.0;
        const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
        const double p = stats::kolmogorov_q(lambda);
        CHECK(p <= previous + 1e-15);
        previous = p;
    }
}

TEST_CASE("swapping samples only relabels the sizes") {
    rng::Engine eng(99);
    std::vector<double> a(30);
    std::vector<double> b(45);
    for (auto& x : a) x = rng::uniform_real(eng, 0.0, 1.0);
    for (auto& x : b) x = rng::uniform_real(eng, 0.2, 1.2);
    const auto ab = stats::ks_two_sample(a, b);
    const auto ba = stats::ks_two_sample(b, a);
    CHECK(ab.d_stat == ba.d_stat);
    CHECK(ab.p_value == ba.p_value);
    CHECK(ab.n1 == ba.n2);
    CHECK(ab.n2 == ba.n1);
}

TEST_CASE("summarize") {
    const auto s = stats::summarize({-5.0, -12.0});
    CHECK(s.mean == -8.5);
    CHECK(s.min == -12.0);
    CHECK(s.max == -5.0);
    CHECK(s.count == 2);

    const auto single = stats::summarize({42.0});
    CHECK(single.mean == 42.0);
    CHECK(single.min == 42.0);
    CHECK(single.max == 42.0);

    const auto constant = stats::summarize(std::vector<double>(17, 3.25));
    CHECK(constant.mean == 3.25);

    CHECK_THROWS_AS(stats::summarize({}), std::invalid_argument);
}

TEST_SUITE_END();
