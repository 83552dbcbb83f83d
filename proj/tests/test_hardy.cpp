#include "wiener/hardy.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace wiener;

namespace {

// indicator of [0, 1] sampled on a dyadic grid with half values at the jumps,
// so the interpolant integrates the indicator exactly
SampledField indicator_field(double lo, double hi, double spacing) {
    SampledField f;
    f.d = 1;
    f.origin[0] = lo;
    f.spacing[0] = spacing;
    f.counts[0] = static_cast<int>(std::llround((hi - lo) / spacing)) + 1;
    f.values.resize(static_cast<std::size_t>(f.counts[0]));
    for (int i = 0; i < f.counts[0]; ++i) {
        double t = f.coord(0, i);
        double v = 0;
        if (t > 0 && t < 1) v = 1;
        if (t == 0.0 || t == 1.0) v = 0.5;
        f.values[static_cast<std::size_t>(i)] = v;
    }
    return f;
}

SampledField gaussian_pos_1d(double halfwidth, int n) {
    return SampledField::sample(1, halfwidth, n, [](std::span<const double> x) {
        return Complex(std::exp(-x[0] * x[0]), 0);
    });
}

}  // namespace

TEST_CASE("steklov averages", "[hardy]") {
    SECTION("constant field: window of half-width 0.5 integrates to 1") {
        auto f = SampledField::sample(1, 4.0, 129, [](std::span<const double>) {
            return Complex(1, 0);
        });
        CHECK(steklov_average(f, AxisSet::of({0}), {0.5, 0, 0}, std::array{0.25}) ==
              Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("indicator with h=1 at x=0.5 covers the support") {
        auto f = indicator_field(-2.5, 3.5, 0x1p-7);
        CHECK(steklov_average(f, AxisSet::of({0}), {1.0, 0, 0}, std::array{0.5}) ==
              Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("overlap formula min(t+1,1) - max(t-1,0) off the support") {
        auto f = indicator_field(-2.5, 3.5, 0x1p-9);
        for (double t : {-0.75, -0.25, 1.25, 1.75}) {
            double expect = std::max(0.0, std::min(t + 1, 1.0) - std::max(t - 1, 0.0));
            CHECK(steklov_average(f, AxisSet::of({0}), {1.0, 0, 0}, std::array{t}) ==
                  Catch::Approx(expect).margin(1e-3));
        }
    }
    SECTION("zero field averages to zero") {
        SampledField f;
        f.d = 1;
        f.origin[0] = -1;
        f.spacing[0] = 0.1;
        f.counts[0] = 21;
        f.values.assign(21, Complex(0, 0));
        CHECK(steklov_average(f, AxisSet::of({0}), {0.7, 0, 0}, std::array{0.0}) == 0.0);
    }
    SECTION("negative or complex fields are rejected") {
        SampledField f;
        f.d = 1;
        f.origin[0] = 0;
        f.spacing[0] = 1;
        f.counts[0] = 3;
        f.values = {Complex(1, 0), Complex(-1, 0), Complex(1, 0)};
        CHECK_THROWS_AS(steklov_average(f, AxisSet::of({0}), {1, 0, 0}, std::array{1.0}),
                        std::invalid_argument);
    }
    SECTION("2-D window matches the separable product") {
        auto f = SampledField::sample(2, 3.0, 193, [](std::span<const double> x) {
            return Complex(std::exp(-x[0] * x[0]) * std::exp(-2 * x[1] * x[1]), 0);
        });
        double w = steklov_average(f, AxisSet::of({0, 1}), {0.5, 0.25, 0}, std::array{0.3, -0.2});
        auto g1 = SampledField::sample(1, 3.0, 193, [](std::span<const double> x) {
            return Complex(std::exp(-x[0] * x[0]), 0);
        });
        auto g2 = SampledField::sample(1, 3.0, 193, [](std::span<const double> x) {
            return Complex(std::exp(-2 * x[0] * x[0]), 0);
        });
        double w1 = steklov_average(g1, AxisSet::of({0}), {0.5, 0, 0}, std::array{0.3});
        double w2 = steklov_average(g2, AxisSet::of({0}), {0.25, 0, 0}, std::array{-0.2});
        CHECK(w == Catch::Approx(w1 * w2).epsilon(1e-9));
    }
}

TEST_CASE("hardy_check on the unit indicator", "[hardy]") {
    auto f = indicator_field(-2.5, 3.5, 0x1p-10);  // spacing ~9.77e-4
    auto rep = hardy_check(f, Exponent::finite(2), Exponent::finite(2), {1.0, 0, 0}, AxisSet::of({0}));
    // exact: lhs^2 = int_{-1}^{0}(t+1)^2 + int_0^1 1 + int_1^2 (2-t)^2 = 5/3
    CHECK(rep.lhs == Catch::Approx(std::sqrt(5.0 / 3.0)).margin(1e-4));
    CHECK(rep.rhs_core == Catch::Approx(1.0).margin(2e-3));
    CHECK(rep.ratio == Catch::Approx(std::sqrt(5.0 / 3.0)).margin(3e-3));
}

TEST_CASE("hardy_check parameter domain", "[hardy]") {
    auto f = indicator_field(-2.5, 3.5, 0x1p-6);
    CHECK_THROWS_AS(
        hardy_check(f, Exponent::finite(3), Exponent::finite(2), {1, 0, 0}, AxisSet::of({0})),
        std::invalid_argument);  // q > Q
    CHECK_THROWS_AS(
        hardy_check(f, Exponent::finite(1), Exponent::finite(2), {1, 0, 0}, AxisSet::of({0})),
        std::invalid_argument);  // q must exceed 1
    auto zero = f;
    for (auto& v : zero.values) v = 0;
    auto rep = hardy_check(zero, Exponent::finite(2), Exponent::finite(2), {1, 0, 0}, AxisSet::of({0}));
    CHECK(rep.lhs == 0.0);
    CHECK(rep.ratio == 0.0);
}

TEST_CASE("separable 2-D hardy ratio factors", "[hardy]") {
    int n = 385;
    auto f2 = SampledField::sample(2, 4.0, n, [](std::span<const double> x) {
        return Complex(std::exp(-x[0] * x[0]) * std::exp(-x[1] * x[1]), 0);
    });
    auto f1 = gaussian_pos_1d(4.0, n);
    auto r2 = hardy_check(f2, Exponent::finite(2), Exponent::finite(2), {0.5, 0.5, 0},
                          AxisSet::of({0, 1}));
    auto r1 = hardy_check(f1, Exponent::finite(2), Exponent::finite(2), {0.5, 0, 0}, AxisSet::of({0}));
    CHECK(r2.ratio == Catch::Approx(r1.ratio * r1.ratio).epsilon(1e-3));
}

TEST_CASE("hardy ratio is homogeneous and dilation covariant", "[hardy]") {
    SECTION("scaling F leaves the ratio invariant") {
        auto f = gaussian_pos_1d(6.0, 1537);
        auto base = hardy_check(f, Exponent::finite(2), Exponent::finite(4), {0.75, 0, 0},
                                AxisSet::of({0}));
        SampledField scaled = f;
        for (auto& v : scaled.values) v *= 8.0;
        auto rep = hardy_check(scaled, Exponent::finite(2), Exponent::finite(4), {0.75, 0, 0},
                               AxisSet::of({0}));
        CHECK(rep.lhs == Catch::Approx(8 * base.lhs).epsilon(1e-12));
        CHECK(rep.ratio == Catch::Approx(base.ratio).epsilon(1e-12));
    }
    SECTION("dilation: F(s/2) with h -> 2h keeps the ratio within 1%") {
        auto f = gaussian_pos_1d(6.0, 1537);
        auto dilated = SampledField::sample(1, 12.0, 1537, [](std::span<const double> x) {
            return Complex(std::exp(-x[0] * x[0] / 4), 0);
        });
        auto a = hardy_check(f, Exponent::finite(2), Exponent::finite(3), {0.5, 0, 0}, AxisSet::of({0}));
        auto b = hardy_check(dilated, Exponent::finite(2), Exponent::finite(3), {1.0, 0, 0},
                             AxisSet::of({0}));
        CHECK(b.ratio == Catch::Approx(a.ratio).epsilon(0.01));
    }
}

TEST_CASE("axis-subset symmetry under coordinate permutation", "[hardy]") {
    int n = 161;
    auto f = SampledField::sample(2, 3.0, n, [](std::span<const double> x) {
        double g = std::exp(-2 * (x[0] - 0.5) * (x[0] - 0.5)) * std::exp(-(x[1] + 0.3) * (x[1] + 0.3));
        return Complex(g, 0);
    });
    auto ft = SampledField::sample(2, 3.0, n, [](std::span<const double> x) {
        double g = std::exp(-2 * (x[1] - 0.5) * (x[1] - 0.5)) * std::exp(-(x[0] + 0.3) * (x[0] + 0.3));
        return Complex(g, 0);
    });
    auto ra = hardy_check(f, Exponent::finite(2), Exponent::finite(3), {0.5, 0, 0}, AxisSet::of({0}));
    auto rb = hardy_check(ft, Exponent::finite(2), Exponent::finite(3), {0, 0.5, 0}, AxisSet::of({1}));
    CHECK(ra.lhs == Catch::Approx(rb.lhs).epsilon(1e-12));
    CHECK(ra.ratio == Catch::Approx(rb.ratio).epsilon(1e-12));
}

TEST_CASE("hardy ratios stay bounded over dyadic window sweeps", "[hardy]") {
    auto f = gaussian_pos_1d(8.0, 2049);
    std::vector<double> ratios;
    for (int k = -5; k <= 5; ++k) {
        double h = std::exp2(k);
        ratios.push_back(
            hardy_check(f, Exponent::finite(2), Exponent::finite(2), {h, 0, 0}, AxisSet::of({0})).ratio);
    }
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    double maxr = sorted.back();
    CHECK(maxr / median <= 10.0);
}

TEST_CASE("empirical constant estimation", "[hardy]") {
    SECTION("single indicator trial reproduces sqrt(5/3)") {
        auto gen = [](Rng&) { return indicator_field(-2.5, 3.5, 0x1p-10); };
        Rng rng(1);
        double sup = empirical_constant(gen, rng, Exponent::finite(2), Exponent::finite(2),
                                        AxisSet::of({0}), std::array{1.0}, 1);
        CHECK(sup == Catch::Approx(std::sqrt(5.0 / 3.0)).margin(1e-3));
    }
    SECTION("zero generator yields zero") {
        auto gen = [](Rng&) {
            SampledField f;
            f.d = 1;
            f.origin[0] = -1;
            f.spacing[0] = 0.25;
            f.counts[0] = 9;
            f.values.assign(9, Complex(0, 0));
            return f;
        };
        Rng rng(2);
        CHECK(empirical_constant(gen, rng, Exponent::finite(2), Exponent::finite(2), AxisSet::of({0}),
                                 std::array{1.0}, 3) == 0.0);
    }
    SECTION("sup over random step fields is stable under more trials") {
        auto gen = [](Rng& r) {
            return make_dyadic_step_field(r, 1, 2.0, static_cast<int>(r.uniform_int(3, 5)), 513);
        };
        std::vector<double> hs;
        for (int k = -3; k <= 3; ++k) hs.push_back(std::exp2(k));
        Rng rng_a(42);
        double sup_a = empirical_constant(gen, rng_a, Exponent::finite(2), Exponent::finite(4),
                                          AxisSet::of({0}), hs, 40);
        Rng rng_b(42);
        double sup_b = empirical_constant(gen, rng_b, Exponent::finite(2), Exponent::finite(4),
                                          AxisSet::of({0}), hs, 80);
        CHECK(sup_a > 0);
        CHECK(sup_b >= sup_a);          // more trials only raise a sup
        CHECK(sup_b <= sup_a * 1.05);   // and stay within 5%
    }
}

TEST_CASE("mixed-difference sup bound", "[hardy]") {
    SECTION("hat at q=2, h=0.5: lhs 1, bound sqrt(2)") {
        auto f = SampledField::sample(1, 2.0, 4097, [](std::span<const double> x) {
            return Complex(std::max(0.0, 1 - std::abs(x[0])), 0);
        });
        auto rep = lemma_star_check(f, Exponent::finite(2), {0.5, 0, 0});
        CHECK(rep.lhs_sup == Catch::Approx(1.0).margin(1e-3));
        CHECK(rep.bound == Catch::Approx(std::sqrt(2.0)).epsilon(2e-3));
        CHECK(rep.ratio == Catch::Approx(1 / std::sqrt(2.0)).epsilon(5e-3));
    }
    SECTION("zero field has ratio 0") {
        SampledField f;
        f.d = 1;
        f.origin[0] = -1;
        f.spacing[0] = 0.05;
        f.counts[0] = 41;
        f.values.assign(41, Complex(0, 0));
        CHECK(lemma_star_check(f, Exponent::finite(2), {0.5, 0, 0}).ratio == 0.0);
    }
    SECTION("2-D smooth bump, q=3/2, dyadic sweep: a true bound") {
        Rng rng(7);
        auto f = make_bump_field(rng, 2, 3.0, 129, 4, 0.4);
        for (int k = -3; k <= 2; ++k) {
            double h = std::exp2(k);
            auto rep = lemma_star_check(f, Exponent::finite(3, 2), {h, h, 0});
            CHECK(rep.ratio <= 1.0 + 1e-2);
        }
    }
}
