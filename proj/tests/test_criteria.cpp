#include "wiener/criteria.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace wiener;

namespace {

ExponentAssignment uniform_assignment(int d, Exponent p0, Exponent rest) {
    ExponentAssignment a;
    a.d = d;
    a.table.assign(std::size_t(1) << d, rest);
    a.table[0] = p0;
    return a;
}

Rational recip(const Exponent& p) { return p.reciprocal(); }

// Independent straight-line re-evaluation of the two sums of the joint rule.
std::pair<Rational, Rational> oracle_sums(const ExponentAssignment& a) {
    Rational all(0), pos(0);
    for (std::uint32_t b = 0; b < (1u << a.d); ++b) {
        all += recip(a.table[b]);
        if (b) pos += recip(a.table[b]);
    }
    return {all, pos};
}

}  // namespace

TEST_CASE("thm1: pairwise condition", "[criteria]") {
    SECTION("d=2, p0=1, p_eta=2 certifies with margin 1/2") {
        auto v = check_theorem1(uniform_assignment(2, Exponent::finite(1), Exponent::finite(2)));
        CHECK(v.status == RuleStatus::certified);
        REQUIRE(v.margin.has_value());
        CHECK(*v.margin == make_rational(1, 2));
    }
    SECTION("d=1, p0=3, p1=2 does not certify (sum 5/6 < 1)") {
        auto v = check_theorem1(uniform_assignment(1, Exponent::finite(3), Exponent::finite(2)));
        CHECK(v.status != RuleStatus::certified);
        // in dimension one the rule is the sharp dichotomy, so this is a
        // counterexample region, not merely unknown
        CHECK(v.status == RuleStatus::counterexample_exists);
    }
    SECTION("d=2 equality boundary fails strictness with margin 0") {
        auto v = check_theorem1(uniform_assignment(2, Exponent::finite(2), Exponent::finite(2)));
        CHECK(v.status == RuleStatus::inconclusive);
        REQUIRE(v.margin.has_value());
        CHECK(*v.margin == 0);
    }
}

TEST_CASE("thm2: joint sum with derivative-sum bound", "[criteria]") {
    SECTION("d=2, p0=1, p_eta=2: sums 5/2 and 3/2") {
        auto a = uniform_assignment(2, Exponent::finite(1), Exponent::finite(2));
        auto [all, pos] = oracle_sums(a);
        CHECK(all == make_rational(5, 2));
        CHECK(pos == make_rational(3, 2));
        auto v = check_theorem2(a);
        CHECK(v.status == RuleStatus::certified);
        CHECK(*v.margin == make_rational(1, 2));
    }
    SECTION("d=2 all p=2: joint sum hits the threshold, strictness fails") {
        auto v = check_theorem2(uniform_assignment(2, Exponent::finite(2), Exponent::finite(2)));
        CHECK(v.status == RuleStatus::inconclusive);
        CHECK(*v.margin == 0);
    }
    SECTION("d=2, p0=1, p_eta=3/2 certifies via oracle-checked sums") {
        auto a = uniform_assignment(2, Exponent::finite(1), Exponent::finite(3, 2));
        auto [all, pos] = oracle_sums(a);
        CHECK(all == 3);
        CHECK(pos == 2);
        auto v = check_theorem2(a);
        CHECK(v.status == RuleStatus::certified);
    }
    SECTION("d=2 replacement branch fires when the derivative bound fails") {
        // p0 = 1, weight-1 exponents tiny enough to exceed the bound, but
        // 1/p0 + 1/p_11 > 1 rescues certification in dimension two.
        auto a = uniform_assignment(2, Exponent::finite(1), Exponent::finite(5, 4));
        auto [all, pos] = oracle_sums(a);
        CHECK(pos > 2);
        CHECK(all > 2);
        auto v = check_theorem2(a);
        CHECK(v.status == RuleStatus::certified);
        bool used_replacement = false;
        for (const auto& n : v.notes) used_replacement |= n.find("replacement") != std::string::npos;
        CHECK(used_replacement);
    }
}

TEST_CASE("thm2prime: equality form", "[criteria]") {
    SECTION("d=2, p0=inf, p_eta=2: sum 3/2 != 2, not certified") {
        auto a = uniform_assignment(2, Exponent::infinity(), Exponent::finite(2));
        auto v = check_theorem2_prime(a, Exponent::finite(4));
        CHECK(v.status == RuleStatus::inconclusive);
    }
    SECTION("d=2, p0=2, p_eta=2, p=1: sum exactly 2 certifies") {
        auto a = uniform_assignment(2, Exponent::finite(2), Exponent::finite(2));
        auto v = check_theorem2_prime(a, Exponent::finite(1));
        CHECK(v.status == RuleStatus::certified);
    }
    SECTION("d=1, p0=2, p1=2, p=1: sum exactly 1 = 2^0 certifies") {
        auto a = uniform_assignment(1, Exponent::finite(2), Exponent::finite(2));
        auto v = check_theorem2_prime(a, Exponent::finite(1));
        CHECK(v.status == RuleStatus::certified);
        // consistent with the one-dimensional rule at the same exponents:
        // p = q = 2 sits in the certifying rectangle
        CHECK(check_dim1(Exponent::finite(2), Exponent::finite(2)).status == RuleStatus::certified);
    }
    SECTION("p >= p0 is a hypothesis mismatch") {
        auto a = uniform_assignment(2, Exponent::finite(2), Exponent::finite(2));
        auto v = check_theorem2_prime(a, Exponent::finite(2));
        CHECK(v.status == RuleStatus::not_applicable);
    }
}

TEST_CASE("cor-bounded: bounded low-order derivatives", "[criteria]") {
    SECTION("flagged weight-1 entries contribute zero; sum 3/2 < 2 fails") {
        ExponentAssignment a;
        a.d = 2;
        a.table = {Exponent::finite(1), Exponent::infinity(), Exponent::infinity(),
                   Exponent::finite(2)};
        a.bounded = {0b00, 0b01, 0b10};
        auto v = check_bounded_derivative_corollary(a);
        CHECK(v.status == RuleStatus::inconclusive);
        CHECK(*v.margin == make_rational(-1, 2));
    }
    SECTION("finite exponents alongside the flags: sum 17/6 > 2 certifies") {
        ExponentAssignment a;
        a.d = 2;
        a.table = {Exponent::finite(1), Exponent::finite(3, 2), Exponent::finite(3, 2),
                   Exponent::finite(2)};
        a.bounded = {0b00, 0b01, 0b10};
        auto v = check_bounded_derivative_corollary(a);
        CHECK(v.status == RuleStatus::certified);
        CHECK(*v.margin == make_rational(17, 6) - 2);
    }
    SECTION("d=4 lattice brute force: flagged infs zero out, 61/11 < 8") {
        ExponentAssignment a;
        a.d = 4;
        a.table.assign(16, Exponent::infinity());
        a.table[0] = Exponent::finite(1);
        Rational oracle_sum(1);
        for (const auto& eta : enumerate_etas(4)) {
            if (eta.weight() <= 2) {
                a.bounded.insert(eta.bits());
            } else if (!eta.is_zero()) {
                a.table[eta.bits()] = Exponent::finite(11, 10);
                oracle_sum += make_rational(10, 11);
            }
        }
        auto v = check_bounded_derivative_corollary(a);
        CHECK(*v.margin == oracle_sum - 8);
        CHECK(v.status == RuleStatus::inconclusive);  // 61/11 < 8
    }
    SECTION("missing required flag is a hypothesis mismatch") {
        auto a = uniform_assignment(2, Exponent::finite(1), Exponent::finite(2));
        CHECK(check_bounded_derivative_corollary(a).status == RuleStatus::not_applicable);
    }
}

TEST_CASE("prop-even: even-dimension refinement", "[criteria]") {
    SECTION("boundary: sum exactly 2 does not certify") {
        // 1 + 1/4 + 1/4 + 1/2 = 2 exactly: the strict joint condition fails.
        ExponentAssignment a;
        a.d = 2;
        a.table = {Exponent::finite(1), Exponent::finite(4), Exponent::finite(4),
                   Exponent::finite(2)};
        a.bounded = {0b00};
        auto [all, pos] = oracle_sums(a);
        CHECK(all == 2);
        auto v = check_even_d_proposition(a);
        CHECK(v.status == RuleStatus::inconclusive);
    }
    SECTION("sum 13/6 > 2 with side condition 3/2 > 1 certifies") {
        ExponentAssignment a;
        a.d = 2;
        a.table = {Exponent::finite(1), Exponent::finite(3), Exponent::finite(3),
                   Exponent::finite(2)};
        a.bounded = {0b00};
        auto [all, pos] = oracle_sums(a);
        CHECK(all == make_rational(13, 6));
        auto v = check_even_d_proposition(a);
        CHECK(v.status == RuleStatus::certified);
    }
    SECTION("odd dimension gates to not_applicable") {
        auto a = uniform_assignment(3, Exponent::finite(1), Exponent::finite(2));
        a.bounded = {0b000};
        CHECK(check_even_d_proposition(a).status == RuleStatus::not_applicable);
    }
    SECTION("side condition 1/2 + 1/2 = 1 not > 1 gates to not_applicable") {
        auto a = uniform_assignment(2, Exponent::finite(2), Exponent::finite(2));
        a.bounded = {0b00};
        CHECK(check_even_d_proposition(a).status == RuleStatus::not_applicable);
    }
}

TEST_CASE("cor-decay: decay order sums", "[criteria]") {
    SECTION("d=2, all gamma = 11/10: sum 22/5 > 4, margin 2/5") {
        DecayAssignment g{2, std::vector<Rational>(4, make_rational(11, 10))};
        auto v = check_decay_corollary(g);
        CHECK(v.status == RuleStatus::certified);
        CHECK(*v.margin == make_rational(2, 5));
    }
    SECTION("d=2, all gamma = 1: boundary fails") {
        DecayAssignment g{2, std::vector<Rational>(4, Rational(1))};
        auto v = check_decay_corollary(g);
        CHECK(v.status == RuleStatus::inconclusive);
        CHECK(*v.margin == 0);
    }
    SECTION("d=3: 13 + 7/2 = 33/2 > 12") {
        DecayAssignment g{3, std::vector<Rational>(8, make_rational(1, 2))};
        g.gamma[0] = 13;
        auto v = check_decay_corollary(g);
        CHECK(v.status == RuleStatus::certified);
        CHECK(*v.margin == make_rational(33, 2) - 12);
    }
}

TEST_CASE("cor-radial: binomial-weighted sums", "[criteria]") {
    SECTION("d=2, p = (1,2,2): sum 5/2 > 2 and 1/p0 + 1/p2 = 3/2 > 1") {
        RadialAssignment r{2, {Exponent::finite(1), Exponent::finite(2), Exponent::finite(2)}, true};
        auto v = check_radial_corollary(r);
        CHECK(v.status == RuleStatus::certified);
    }
    SECTION("d=1 boundary: sum exactly 1 = 2^0 fails strictness") {
        RadialAssignment r{1, {Exponent::finite(2), Exponent::finite(2)}, true};
        auto v = check_radial_corollary(r);
        CHECK(v.status == RuleStatus::inconclusive);
        CHECK(*v.margin == 0);
    }
    SECTION("d=4 binomial sum oracle: 17/2 > 8, pair condition 3/2 > 1") {
        RadialAssignment r{4,
                           {Exponent::finite(1), Exponent::finite(2), Exponent::finite(2),
                            Exponent::finite(2), Exponent::finite(2)},
                           true};
        Rational oracle = Rational(1);
        for (int j = 1; j <= 4; ++j) oracle += Rational(binomial(4, j)) / 2;
        CHECK(oracle == make_rational(17, 2));
        auto v = check_radial_corollary(r);
        CHECK(v.status == RuleStatus::certified);
    }
    SECTION("undeclared smoothness gates to not_applicable") {
        RadialAssignment r{2, {Exponent::finite(1), Exponent::finite(2), Exponent::finite(2)}, false};
        CHECK(check_radial_corollary(r).status == RuleStatus::not_applicable);
    }
}

TEST_CASE("thm213a: three-sided window", "[criteria]") {
    SECTION("d=2, r=2, p0=1, p_j=2: 2 < 3 <= 4 certifies") {
        Theorem213Params t{2, 2, Exponent::finite(1), {Exponent::finite(2), Exponent::finite(2)}};
        auto v = check_theorem213a(t);
        CHECK(v.status == RuleStatus::certified);
        CHECK(*v.margin == 1);
    }
    SECTION("gate r > d/2 fails") {
        Theorem213Params t{2, 1, Exponent::finite(1), {Exponent::finite(2), Exponent::finite(2)}};
        CHECK(check_theorem213a(t).status == RuleStatus::not_applicable);
    }
    SECTION("d=3, r=2: upper bound attained non-strictly still certifies") {
        Theorem213Params t{3, 2, Exponent::finite(2),
                           {Exponent::finite(3, 2), Exponent::finite(3, 2), Exponent::finite(3, 2)}};
        // oracle: middle = 1/2 + 3*(2/3) = 5/2; window is (2, 5/2]
        Rational mid = make_rational(1, 2) + 3 * make_rational(2, 3);
        CHECK(mid == make_rational(5, 2));
        auto v = check_theorem213a(t);
        CHECK(v.status == RuleStatus::certified);
    }
}

TEST_CASE("thm213b: non-membership region", "[criteria]") {
    SECTION("d=2, r=2, p=q=4: 1 < 2") {
        auto v = check_theorem213b(2, 2, Exponent::finite(4), Exponent::finite(4));
        CHECK(v.status == RuleStatus::counterexample_exists);
    }
    SECTION("d=2, r=2, p=1, q=11/10: 2 + 20/11 > 2 is inconclusive") {
        auto v = check_theorem213b(2, 2, Exponent::finite(1), Exponent::finite(11, 10));
        CHECK(v.status == RuleStatus::inconclusive);
    }
    SECTION("d=r=1 agrees with the one-dimensional rule on a 10x10 grid") {
        // cross-check oracle: for d = r = 1 the region inequality reduces to
        // 1/p + 1/q < 1, exactly the dichotomy's counterexample region
        for (int pi = 0; pi < 10; ++pi) {
            for (int qi = 0; qi < 10; ++qi) {
                Exponent p = Exponent::finite(make_rational(4 + 3 * pi, 4));  // 1, 7/4, ...
                Exponent q = Exponent::finite(make_rational(5 + 3 * qi, 4));
                auto vb = check_theorem213b(1, 1, p, q);
                Rational s = p.reciprocal() + q.reciprocal();
                if (s < 1) {
                    CHECK(vb.status == RuleStatus::counterexample_exists);
                    CHECK(check_dim1(p, q).status == RuleStatus::counterexample_exists);
                } else {
                    CHECK(vb.status == RuleStatus::inconclusive);
                }
            }
        }
    }
}

TEST_CASE("thm4.1: one-dimensional dichotomy", "[criteria]") {
    SECTION("p=1, q=2 certifies") {
        CHECK(check_dim1(Exponent::finite(1), Exponent::finite(2)).status == RuleStatus::certified);
    }
    SECTION("p=q=2 certifies via the classical rectangle despite sum = 1") {
        auto v = check_dim1(Exponent::finite(2), Exponent::finite(2));
        CHECK(v.status == RuleStatus::certified);
    }
    SECTION("p=q=4 yields a counterexample with a valid witness") {
        auto v = check_dim1(Exponent::finite(4), Exponent::finite(4));
        REQUIRE(v.status == RuleStatus::counterexample_exists);
        REQUIRE(v.witness.size() >= 2);
        Rational alpha = parse_rational(v.witness[0].second);
        Rational beta = parse_rational(v.witness[1].second);
        CHECK(4 * beta > 1);
        CHECK(4 * (beta - alpha + 1) > 1);
        CHECK(beta / alpha < make_rational(1, 2));
    }
    SECTION("boundary outside the rectangle is inconclusive") {
        auto v = check_dim1(Exponent::finite(3), Exponent::finite(3, 2));
        CHECK(v.status == RuleStatus::inconclusive);
    }
    SECTION("parameter domain is enforced") {
        CHECK_THROWS_AS(check_dim1(Exponent::infinity(), Exponent::finite(2)), std::invalid_argument);
        CHECK_THROWS_AS(check_dim1(Exponent::finite(2), Exponent::finite(1)), std::invalid_argument);
    }
}

TEST_CASE("legacy rules", "[criteria]") {
    SECTION("a1d: beta=(2,2) certifies, beta=(1,1) hits the boundary") {
        CHECK(check_legacy_a1d({2, {2, 2}}).status == RuleStatus::certified);
        auto v = check_legacy_a1d({2, {1, 1}});
        CHECK(v.status == RuleStatus::inconclusive);
        CHECK(*v.margin == 0);
    }
    SECTION("a2d: p=2 certifies, p=5/2 is a hypothesis mismatch") {
        CHECK(check_legacy_a2d(Exponent::finite(2)).status == RuleStatus::certified);
        CHECK(check_legacy_a2d(Exponent::finite(5, 2)).status == RuleStatus::not_applicable);
        CHECK(check_legacy_a2d(Exponent::finite(1)).status == RuleStatus::not_applicable);
    }
    SECTION("a2d from an assignment needs p0 = 1 and one common exponent") {
        auto a = uniform_assignment(2, Exponent::finite(1), Exponent::finite(2));
        CHECK(check_legacy_a2d(a).status == RuleStatus::certified);
        a.table[0] = Exponent::finite(2);
        CHECK(check_legacy_a2d(a).status == RuleStatus::not_applicable);
    }
}

TEST_CASE("run_all and overall outcome", "[criteria]") {
    SECTION("d=1, p=1, q=2: thm1 and thm4.1 both certify") {
        CriteriaBundle b;
        b.assignment = uniform_assignment(1, Exponent::finite(1), Exponent::finite(2));
        auto verdicts = run_all(b);
        bool thm1_ok = false, dim1_ok = false;
        for (const auto& v : verdicts) {
            if (v.rule_id == "thm1") thm1_ok = v.certified();
            if (v.rule_id == "thm4.1") dim1_ok = v.certified();
        }
        CHECK(thm1_ok);
        CHECK(dim1_ok);
        CHECK(overall_outcome(verdicts) == OverallOutcome::certified);
        CHECK(std::is_sorted(verdicts.begin(), verdicts.end(),
                             [](const auto& a, const auto& c) { return a.rule_id < c.rule_id; }));
    }
    SECTION("empty bundle yields no verdicts") {
        CHECK(run_all(CriteriaBundle{}).empty());
    }
    SECTION("rules are incomparable: thm2 certifies where thm1 fails") {
        ExponentAssignment a;
        a.d = 2;
        a.table = {Exponent::finite(2), Exponent::finite(2), Exponent::finite(2),
                   Exponent::finite(4, 3)};
        auto [all, pos] = oracle_sums(a);
        CHECK(all == make_rational(9, 4));
        CHECK(pos == make_rational(7, 4));
        CHECK(check_theorem1(a).status == RuleStatus::inconclusive);
        CHECK(check_theorem2(a).status == RuleStatus::certified);
    }
}

TEST_CASE("strictness fidelity at the boundaries", "[criteria]") {
    // Strict inequalities flip certified -> not certified at equality; the
    // non-strict bounds do not.
    SECTION("thm1 strict pair") {
        auto a = uniform_assignment(2, Exponent::finite(1), Exponent::finite(2));
        a.table[0] = Exponent::finite(2);  // 1/2 + 1/2 = 1 exactly
        CHECK(check_theorem1(a).status != RuleStatus::certified);
    }
    SECTION("thm2 non-strict derivative bound tolerates equality") {
        auto a = uniform_assignment(2, Exponent::finite(1), Exponent::finite(3, 2));
        auto [all, pos] = oracle_sums(a);
        CHECK(pos == 2);  // exactly at the bound
        CHECK(check_theorem2(a).status == RuleStatus::certified);
    }
    SECTION("thm213a right bound tolerates equality, left does not") {
        Theorem213Params t{3, 2, Exponent::finite(2),
                           {Exponent::finite(3, 2), Exponent::finite(3, 2), Exponent::finite(3, 2)}};
        CHECK(check_theorem213a(t).status == RuleStatus::certified);
        // push the middle expression down to the strict lower bound
        Theorem213Params t2{2, 2, Exponent::finite(2), {Exponent::finite(2), Exponent::finite(2)}};
        // middle = 1 + 1/2 + 1/2 = 2 = r -> strict fails
        CHECK(check_theorem213a(t2).status == RuleStatus::inconclusive);
    }
}

TEST_CASE("monotonicity: decreasing exponents never revokes certification", "[criteria]") {
    // thm1 is monotone when any exponent decreases. thm2 is monotone in p_0
    // only: its derivative-sum bound is an upper bound, so lowering a
    // derivative exponent can genuinely leave the theorem's hypotheses
    // (witness d=2, p = (2, 3/2, 3/2, 2) with p_01 lowered to 9/8).
    std::mt19937_64 rng(20240817);
    auto random_exponent = [&](long long lo_num, long long hi_num) {
        std::uniform_int_distribution<long long> num(lo_num, hi_num);
        return Exponent::finite(make_rational(num(rng), 8));
    };
    int certified_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int d = 1 + static_cast<int>(rng() % 3);
        ExponentAssignment a;
        a.d = d;
        a.table.resize(std::size_t(1) << d);
        a.table[0] = random_exponent(8, 32);  // in [1, 4]
        for (std::uint32_t b = 1; b < (1u << d); ++b) a.table[b] = random_exponent(9, 32);
        auto v1 = check_theorem1(a);
        auto v2 = check_theorem2(a);

        ExponentAssignment smaller = a;
        for (std::uint32_t b = 0; b < (1u << d); ++b) {
            Rational cur = smaller.table[b].finite_value();
            Rational low = (b == 0) ? Rational(1) : make_rational(9, 8);
            if (rng() % 2 && cur > low) smaller.table[b] = Exponent::finite((cur + low) / 2);
        }
        if (v1.status == RuleStatus::certified) {
            ++certified_seen;
            CHECK(check_theorem1(smaller).status == RuleStatus::certified);
        }

        ExponentAssignment smaller_p0 = a;
        Rational cur0 = a.table[0].finite_value();
        if (cur0 > 1) smaller_p0.table[0] = Exponent::finite((cur0 + 1) / 2);
        if (v2.status == RuleStatus::certified)
            CHECK(check_theorem2(smaller_p0).status == RuleStatus::certified);
    }
    CHECK(certified_seen > 0);

    SECTION("the thm2 caveat is real: lowering a derivative exponent can leave the rule") {
        ExponentAssignment a;
        a.d = 2;
        a.table = {Exponent::finite(2), Exponent::finite(3, 2), Exponent::finite(3, 2),
                   Exponent::finite(2)};
        CHECK(check_theorem2(a).status == RuleStatus::certified);
        a.table[1] = Exponent::finite(9, 8);
        CHECK(check_theorem2(a).status == RuleStatus::inconclusive);
    }
}

TEST_CASE("exactness: scaling numerator and denominator changes nothing", "[criteria]") {
    auto a = uniform_assignment(2, Exponent::finite(make_rational(3, 2)),
                                Exponent::finite(make_rational(7, 4)));
    auto v = check_theorem2(a);
    auto b = uniform_assignment(2, Exponent::finite(make_rational(300, 200)),
                                Exponent::finite(make_rational(700, 400)));
    auto w = check_theorem2(b);
    CHECK(v.status == w.status);
    CHECK(*v.margin == *w.margin);

    std::mt19937_64 rng(4711);
    for (int trial = 0; trial < 100; ++trial) {
        long long num = 9 + static_cast<long long>(rng() % 40);
        long long scale = 2 + static_cast<long long>(rng() % 1000);
        int d = 1 + static_cast<int>(rng() % 3);
        auto plain = uniform_assignment(d, Exponent::finite(make_rational(num, 8)),
                                        Exponent::finite(make_rational(num + 3, 8)));
        auto scaled = uniform_assignment(
            d, Exponent::finite(make_rational(num * scale, 8 * scale)),
            Exponent::finite(make_rational((num + 3) * scale, 8 * scale)));
        auto v1 = check_theorem1(plain), v2 = check_theorem1(scaled);
        CHECK(v1.status == v2.status);
        if (v1.margin && v2.margin) CHECK(*v1.margin == *v2.margin);
    }
}

TEST_CASE("boundary flips for the remaining strict rules", "[criteria]") {
    SECTION("cor-bounded at the exact threshold") {
        ExponentAssignment a;
        a.d = 2;
        a.table = {Exponent::finite(1), Exponent::finite(4), Exponent::finite(4),
                   Exponent::finite(2)};
        a.bounded = {0b00, 0b01, 0b10};
        auto v = check_bounded_derivative_corollary(a);  // sum exactly 2
        CHECK(v.status == RuleStatus::inconclusive);
        CHECK(*v.margin == 0);
        a.table[3] = Exponent::finite(make_rational(199, 100));  // nudge strictly above
        CHECK(check_bounded_derivative_corollary(a).status == RuleStatus::certified);
    }
    SECTION("thm213b at the exact region boundary") {
        // d=2, r=2, p=q=2: 1 + 1 = 2 = r exactly, strictness fails
        auto v = check_theorem213b(2, 2, Exponent::finite(2), Exponent::finite(2));
        CHECK(v.status == RuleStatus::inconclusive);
        CHECK(*v.margin == 0);
        auto inside = check_theorem213b(2, 2, Exponent::finite(make_rational(201, 100)),
                                        Exponent::finite(2));
        CHECK(inside.status == RuleStatus::counterexample_exists);
    }
}

TEST_CASE("d=1 coherence between thm1 and thm4.1", "[criteria]") {
    for (int pi = 0; pi <= 12; ++pi) {
        for (int qi = 1; qi <= 12; ++qi) {
            Exponent p = Exponent::finite(make_rational(4 + pi, 4));
            Exponent q = Exponent::finite(make_rational(4 + qi, 4));
            auto a = uniform_assignment(1, p, q);
            CHECK(check_theorem1(a).status == check_dim1(p, q).status);
        }
    }
}

TEST_CASE("the 2^d table stays exact at the d = 16 engine cap", "[criteria]") {
    auto a = uniform_assignment(16, Exponent::finite(2), Exponent::finite(2));
    auto v = check_theorem2(a);  // 65536 terms of 1/2 sum to exactly 2^15
    CHECK(v.status == RuleStatus::inconclusive);
    CHECK(*v.margin == 0);
    CHECK_THROWS_AS(uniform_assignment(17, Exponent::finite(2), Exponent::finite(2)).validate(),
                    std::invalid_argument);
}

TEST_CASE("rule catalogue lists the stable ids", "[criteria]") {
    CHECK(rule_catalogue().size() == 12);
    CHECK(find_rule("thm4.1") != nullptr);
    CHECK(find_rule("thm213b")->sharpness == Sharpness::sharp);
    CHECK(find_rule("thm1")->sharpness == Sharpness::unknown);
    CHECK(find_rule("nope") == nullptr);
}
