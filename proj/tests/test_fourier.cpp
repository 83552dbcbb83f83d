#include "wiener/fourier.hpp"

#include "wiener/gallery.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace wiener;

TEST_CASE("radix-2 transform matches the direct DFT", "[fourier]") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<Complex> v(16);
    for (auto& z : v) z = Complex(u(rng), u(rng));
    std::vector<Complex> expect(v.size());
    for (std::size_t m = 0; m < v.size(); ++m) {
        Complex acc{0, 0};
        for (std::size_t k = 0; k < v.size(); ++k) {
            double ang = -2 * std::numbers::pi * double(m) * double(k) / double(v.size());
            acc += v[k] * Complex(std::cos(ang), std::sin(ang));
        }
        expect[m] = acc;
    }
    std::vector<Complex> got = v;
    detail::fft_radix2(got, -1);
    for (std::size_t m = 0; m < v.size(); ++m) CHECK(std::abs(got[m] - expect[m]) < 1e-12);

    // inverse composes to n * identity
    detail::fft_radix2(got, +1);
    for (std::size_t k = 0; k < v.size(); ++k)
        CHECK(std::abs(got[k] / double(v.size()) - v[k]) < 1e-12);

    std::vector<Complex> bad(12);
    CHECK_THROWS_AS(detail::fft_radix2(bad, -1), std::invalid_argument);
}

TEST_CASE("gaussian l1 estimate is f(0) = 1 with tiny parseval residual", "[fourier]") {
    auto est = truncated_fourier_l1(
        [](std::span<const double> x) { return Complex(std::exp(-x[0] * x[0]), 0); }, 1, 8.0, 4096);
    CHECK(est.l1_estimate == Catch::Approx(1.0).epsilon(0.02));
    CHECK(est.parseval_residual <= 1e-6);
}

TEST_CASE("hat l1 estimate is 1 (nonnegative transform)", "[fourier]") {
    auto est = truncated_fourier_l1(
        [](std::span<const double> x) { return Complex(std::max(0.0, 1 - std::abs(x[0])), 0); }, 1,
        4.0, 4096);
    CHECK(est.l1_estimate == Catch::Approx(1.0).epsilon(0.02));
}

TEST_CASE("zero input transforms to exactly zero", "[fourier]") {
    auto est = truncated_fourier_l1([](std::span<const double>) { return Complex(0, 0); }, 1, 4.0, 256);
    CHECK(est.l1_estimate == 0.0);
    CHECK(est.parseval_residual == 0.0);
}

TEST_CASE("2-D separable gaussian also lands at 1", "[fourier]") {
    auto est = truncated_fourier_l1(
        [](std::span<const double> x) {
            return Complex(std::exp(-x[0] * x[0] - x[1] * x[1]), 0);
        },
        2, 8.0, 512);
    CHECK(est.l1_estimate == Catch::Approx(1.0).epsilon(0.02));
    CHECK(est.parseval_residual <= 1e-6);
}

TEST_CASE("transform is linear on shared grids", "[fourier]") {
    auto f = [](std::span<const double> x) { return Complex(std::exp(-x[0] * x[0]), 0); };
    auto g = [](std::span<const double> x) {
        return Complex(std::cos(3 * x[0]) * std::exp(-0.5 * x[0] * x[0]), 0.2 * std::sin(x[0]));
    };
    auto sum = [&](std::span<const double> x) { return f(x) + 2.0 * g(x); };
    auto tf = sampled_transform(f, 1, 6.0, 1024);
    auto tg = sampled_transform(g, 1, 6.0, 1024);
    auto ts = sampled_transform(sum, 1, 6.0, 1024);
    double worst = 0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        worst = std::max(worst, std::abs(ts[i] - (tf[i] + 2.0 * tg[i])));
    CHECK(worst < 1e-10);
}

TEST_CASE("l1 estimate dominates |f(0)|", "[fourier]") {
    auto check_fn = [](const std::string& name, double R, int N) {
        auto g = make_gallery(name, 1);
        auto est = truncated_fourier_l1([&](std::span<const double> x) { return g.value(x); }, 1, R, N);
        double f0 = std::abs(g.value(std::array{0.0}));
        CHECK(est.l1_estimate >= f0 * 0.98);
    };
    check_fn("gaussian", 8, 2048);
    check_fn("hat", 4, 2048);
    check_fn("m:alpha=2,beta=0.8,a=1,b=2", 16, 2048);
    check_fn("m:alpha=2,beta=1.2,a=1,b=2", 16, 2048);
}

TEST_CASE("memory and argument guards", "[fourier]") {
    auto one = [](std::span<const double>) { return Complex(1, 0); };
    CHECK_THROWS_AS(truncated_fourier_l1(one, 1, 4.0, 100), std::invalid_argument);  // not a power of 2
    CHECK_THROWS_AS(truncated_fourier_l1(one, 3, 4.0, 4096), std::invalid_argument);  // budget
    CHECK_THROWS_AS(truncated_fourier_l1(one, 1, -1.0, 256), std::invalid_argument);
}

TEST_CASE("truncation ladder classifications", "[fourier]") {
    SECTION("gaussian trend is converged with near-zero slope") {
        std::vector<double> Rs{4, 6, 8, 12};
        auto trend = a_norm_trend(
            [](std::span<const double> x) { return Complex(std::exp(-x[0] * x[0]), 0); }, 1, Rs,
            0x1p-6);
        CHECK(std::abs(trend.slope) < 0.05);
        CHECK(trend.classification == "converged");
        for (std::size_t i = 1; i < trend.entries.size(); ++i)
            CHECK(trend.entries[i].R > trend.entries[i - 1].R);
    }
    SECTION("non-member m grows along the pinned ladder, member m grows strictly slower") {
        // beta/alpha = 0.4 < 1/2: truncation mass keeps growing like R^{1-beta}.
        // beta/alpha = 0.6 > 1/2: the A-norm is finite but its truncation tail
        // decays only like R^{-(beta-1)} = R^{-0.2}, so the pinned desk-scale
        // ladder still shows a positive fitted slope; the regimes separate by
        // slope magnitude, not by the converged/growing labels at this ladder.
        std::vector<double> Rs{16, 32, 64, 128};
        auto out = make_gallery("m:alpha=2,beta=0.8,a=1,b=2", 1);
        auto in = make_gallery("m:alpha=2,beta=1.2,a=1,b=2", 1);
        auto t_out = a_norm_trend([&](std::span<const double> x) { return out.value(x); }, 1, Rs,
                                  0x1p-6, {}, kDefaultMaxPoints, 4);
        auto t_in = a_norm_trend([&](std::span<const double> x) { return in.value(x); }, 1, Rs,
                                 0x1p-6, {}, kDefaultMaxPoints, 4);
        CHECK(t_out.slope > 0.1);
        CHECK(t_out.classification == "growing");
        CHECK(t_in.slope < t_out.slope - 0.1);
        CHECK(t_in.slope > 0.0);
    }
    SECTION("beyond the frequency window both regimes saturate") {
        // with spacing fixed the estimator only ever sees |xi| < pi/spacing;
        // once 2R passes that cap the estimates flatten regardless of regime
        std::vector<double> Rs{256, 512, 1024};
        auto in = make_gallery("m:alpha=2,beta=1.2,a=1,b=2", 1);
        auto t = a_norm_trend([&](std::span<const double> x) { return in.value(x); }, 1, Rs, 0x1p-5,
                              {}, kDefaultMaxPoints, 4);
        CHECK(std::abs(t.slope) < 0.05);
        CHECK(t.classification == "converged");
    }
    SECTION("argument validation") {
        auto one = [](std::span<const double>) { return Complex(1, 0); };
        std::vector<double> bad{4, 4};
        CHECK_THROWS_AS(a_norm_trend(one, 1, bad, 0.1), std::invalid_argument);
        std::vector<double> single{4};
        CHECK_THROWS_AS(a_norm_trend(one, 1, single, 0.1), std::invalid_argument);
    }
}
