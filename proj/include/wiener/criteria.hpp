#pragma once

#include "wiener/eta.hpp"
#include "wiener/exponent.hpp"
#include "wiener/gallery.hpp"
#include "wiener/rational.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wiener {

// ---------------------------------------------------------------------------
// Inputs
// ---------------------------------------------------------------------------

/// The full table {eta -> p_eta} over the 2^d lattice, plus the set of
/// derivatives declared essentially bounded. p_0 is always finite in [1, inf);
/// other entries are finite in (1, inf) unless flagged bounded, in which case
/// inf is allowed (its reciprocal contributes 0 to every sum).
struct ExponentAssignment {
    int d = 1;
    std::vector<Exponent> table;      // size 2^d, indexed by EtaVector::bits()
    std::set<std::uint32_t> bounded;  // eta bits with D^eta f declared in L_inf

    const Exponent& at(const EtaVector& eta) const { return table.at(eta.bits()); }
    bool is_bounded(const EtaVector& eta) const { return bounded.count(eta.bits()) > 0; }

    void validate() const {
        if (d < 1 || d > kMaxTableDim) throw std::invalid_argument("assignment dimension out of range");
        if (table.size() != (std::size_t(1) << d))
            throw std::invalid_argument("assignment table must have 2^d entries");
        for (std::uint32_t bits : bounded)
            if (bits >> d) throw std::invalid_argument("bounded flag outside the eta lattice");
        const Exponent& p0 = table[0];
        if (!p0.is_finite() || p0.finite_value() < 1)
            throw std::invalid_argument("p_0 must be finite and >= 1");
        for (std::uint32_t b = 1; b < (1u << d); ++b) {
            const Exponent& p = table[b];
            if (p.is_infinite()) {
                if (!bounded.count(b))
                    throw std::invalid_argument("p_eta = inf requires a bounded flag for that eta");
            } else if (p.finite_value() <= 1) {
                throw std::invalid_argument("p_eta must be > 1 for eta != 0");
            }
        }
    }
};

/// Pointwise decay orders |D^chi f| <= C (1+|x|)^{-gamma_chi}.
struct DecayAssignment {
    int d = 1;
    std::vector<Rational> gamma;  // size 2^d, all > 0

    void validate() const {
        if (d < 1 || d > kMaxTableDim) throw std::invalid_argument("decay dimension out of range");
        if (gamma.size() != (std::size_t(1) << d))
            throw std::invalid_argument("decay table must have 2^d entries");
        for (const Rational& g : gamma)
            if (g <= 0) throw std::invalid_argument("decay exponents must be positive");
    }
};

/// Radial profile: one exponent per derivative weight j = |eta|, plus the
/// declared smoothness/decay hypotheses on the profile f_0 that cannot be
/// checked from exponents.
struct RadialAssignment {
    int d = 1;
    std::vector<Exponent> p;  // size d+1, indexed by weight
    bool smoothness_declared = false;

    void validate() const {
        if (d < 1 || d > kMaxTableDim) throw std::invalid_argument("radial dimension out of range");
        if (p.size() != static_cast<std::size_t>(d) + 1)
            throw std::invalid_argument("radial assignment needs p_0..p_d");
        if (!p[0].is_finite() || p[0].finite_value() < 1)
            throw std::invalid_argument("p_0 must be finite and >= 1");
        for (std::size_t j = 1; j < p.size(); ++j)
            if (!p[j].is_finite() || p[j].finite_value() <= 1)
                throw std::invalid_argument("p_j must be finite and > 1 for j >= 1");
    }
};

/// Orders beta_j of the pure derivatives d^{beta_j}/dx_j^{beta_j}.
struct PureDerivativeOrders {
    int d = 1;
    std::vector<long long> beta;

    void validate() const {
        if (d < 1 || d > kMaxTableDim) throw std::invalid_argument("orders dimension out of range");
        if (beta.size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("need one order per coordinate");
        for (long long b : beta)
            if (b < 1) throw std::invalid_argument("derivative orders must be positive integers");
    }
};

/// Inputs of the pure-derivative rule of order r: f in L_{p0} plus
/// d^r/dx_j^r f in L_{p_j}.
struct Theorem213Params {
    int d = 1;
    long long r = 1;
    Exponent p0;
    std::vector<Exponent> p;  // size d, exponents of the order-r pure derivatives

    void validate() const {
        if (d < 1 || d > kMaxTableDim) throw std::invalid_argument("dimension out of range");
        if (r < 1) throw std::invalid_argument("r must be a positive integer");
        if (!p0.is_finite() || p0.finite_value() < 1)
            throw std::invalid_argument("p_0 must be finite and >= 1");
        if (p.size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("need one exponent per coordinate");
        for (const Exponent& e : p)
            if (!e.is_finite() || e.finite_value() <= 1)
                throw std::invalid_argument("p_j must be finite and > 1");
    }
};

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

enum class RuleStatus { certified, not_applicable, counterexample_exists, inconclusive };

inline std::string to_string(RuleStatus s) {
    switch (s) {
        case RuleStatus::certified: return "certified";
        case RuleStatus::not_applicable: return "not_applicable";
        case RuleStatus::counterexample_exists: return "counterexample_exists";
        case RuleStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Outcome of one named rule. `margin` is the slack of the rule's decisive
/// strict inequality (positive iff satisfied strictly); `witness` carries
/// constructed parameters for counterexample verdicts; `notes` echoes the
/// declared-but-uncheckable hypotheses and records which branch fired.
struct CriterionVerdict {
    std::string rule_id;
    RuleStatus status = RuleStatus::inconclusive;
    std::optional<Rational> margin;
    std::vector<std::pair<std::string, std::string>> witness;
    std::vector<std::string> notes;

    bool certified() const { return status == RuleStatus::certified; }
};

enum class Sharpness { sharp, unknown };

struct RuleInfo {
    const char* id;
    const char* summary;
    Sharpness sharpness;
    const char* sharpness_note;
};

/// Stable rule catalogue; ids are the CLI/test addressing scheme.
inline const std::vector<RuleInfo>& rule_catalogue() {
    static const std::vector<RuleInfo> rules = {
        {"cor-bounded", "joint reciprocal sum with low-order derivatives bounded", Sharpness::unknown,
         "sharp only for particular exponent patterns"},
        {"cor-decay", "pointwise decay orders summing above d*2^(d-1)", Sharpness::unknown,
         "sharp only for particular exponent patterns"},
        {"cor-radial", "binomial-weighted sum for radial functions", Sharpness::unknown,
         "sharp only for particular exponent patterns"},
        {"legacy-a1d", "pure-derivative L2 rule: sum 1/beta_j < 2", Sharpness::unknown, "classical"},
        {"legacy-a2d", "single exponent 1 < p <= 2 for all mixed derivatives", Sharpness::unknown,
         "classical"},
        {"prop-even", "even-dimension refinement of the bounded-derivative rule", Sharpness::unknown,
         "sharp only for particular exponent patterns"},
        {"thm1", "pairwise condition 1/p_0 + 1/p_eta > 1", Sharpness::unknown,
         "sharp for the eta = 1 pair; apparently not sharp otherwise"},
        {"thm2", "joint reciprocal-sum condition over the full lattice", Sharpness::unknown,
         "sharp only for particular exponent patterns"},
        {"thm213a", "order-r pure-derivative window condition", Sharpness::unknown,
         "paired with the thm213b non-membership region"},
        {"thm213b", "order-r non-membership region (2r-d)/p + d/q < r", Sharpness::sharp,
         "asserts existence of non-members in the stated region"},
        {"thm2prime", "equality form with f in L_p for some p < p_0", Sharpness::unknown,
         "equivalent reformulation of thm2"},
        {"thm4.1", "one-dimensional dichotomy across 1/p + 1/q = 1", Sharpness::sharp,
         "boundary case open outside the p,q <= 2 rectangle"},
    };
    return rules;
}

inline const RuleInfo* find_rule(const std::string& id) {
    for (const RuleInfo& r : rule_catalogue())
        if (id == r.id) return &r;
    return nullptr;
}

namespace detail {

inline Rational pow2(int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= 2;
    return r;
}

inline void push_witness(CriterionVerdict& v, std::string key, const Rational& val) {
    v.witness.emplace_back(std::move(key), format_rational(val));
}

/// Shared one-dimensional decision: membership above 1/p + 1/q = 1, a
/// constructed counterexample below it, and on the line itself membership only
/// inside the classical p <= 2, q <= 2 rectangle.
inline CriterionVerdict dim1_decide(const Exponent& p, const Exponent& q, std::string rule_id) {
    CriterionVerdict v;
    v.rule_id = std::move(rule_id);
    if (!p.is_finite() || p.finite_value() < 1)
        throw std::invalid_argument(v.rule_id + ": requires 1 <= p < inf");
    if (!q.is_finite() || q.finite_value() <= 1)
        throw std::invalid_argument(v.rule_id + ": requires 1 < q < inf");
    Rational s = p.reciprocal() + q.reciprocal();
    Rational margin = s - 1;
    if (p.finite_value() <= 2 && q.finite_value() <= 2) {
        v.status = RuleStatus::certified;
        // The classical rectangle certifies even on the boundary line; its own
        // strict hypothesis is q > 1.
        v.margin = (margin > 0) ? margin : (Rational(1) - q.reciprocal());
        v.notes.push_back(margin > 0 ? "branch: 1/p + 1/q > 1"
                                     : "branch: classical rectangle 1 <= p <= 2, 1 < q <= 2");
        return v;
    }
    v.margin = margin;
    if (margin > 0) {
        v.status = RuleStatus::certified;
        v.notes.push_back("branch: 1/p + 1/q > 1");
    } else if (margin < 0) {
        v.status = RuleStatus::counterexample_exists;
        auto [alpha, beta] = construct_counterexample_params(p, q);
        push_witness(v, "alpha", alpha);
        push_witness(v, "beta", beta);
        v.notes.push_back("witness oscillating model violates membership; p*beta > 1, "
                          "q*(beta-alpha+1) > 1, beta/alpha < 1/2 hold exactly");
    } else {
        v.status = RuleStatus::inconclusive;
        v.notes.push_back("boundary 1/p + 1/q = 1 outside the classical rectangle is open");
    }
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

/// thm4.1: the one-dimensional dichotomy in (p, q).
inline CriterionVerdict check_dim1(const Exponent& p, const Exponent& q) {
    return detail::dim1_decide(p, q, "thm4.1");
}

/// thm1: certified iff 1/p_0 + 1/p_eta > 1 strictly for every eta != 0.
/// In dimension one this coincides with thm4.1 and is decided by the same
/// routine, so the two rules agree everywhere.
inline CriterionVerdict check_theorem1(const ExponentAssignment& a) {
    a.validate();
    CriterionVerdict v;
    v.rule_id = "thm1";
    if (a.d == 1) {
        if (a.table[1].is_infinite()) {
            v.status = RuleStatus::not_applicable;
            v.notes.push_back("requires finite p_eta for eta != 0");
            return v;
        }
        v = detail::dim1_decide(a.table[0], a.table[1], "thm1");
        v.notes.push_back("d = 1: decided by the one-dimensional dichotomy");
        return v;
    }
    std::optional<Rational> min_margin;
    for (std::uint32_t b = 1; b < (1u << a.d); ++b) {
        if (a.table[b].is_infinite()) {
            v.status = RuleStatus::not_applicable;
            v.notes.push_back("requires finite p_eta for eta != 0");
            return v;
        }
        Rational m = a.table[0].reciprocal() + a.table[b].reciprocal() - 1;
        if (!min_margin || m < *min_margin) min_margin = m;
    }
    v.margin = *min_margin;
    v.status = (*min_margin > 0) ? RuleStatus::certified : RuleStatus::inconclusive;
    v.notes.push_back("hypotheses declared: C_0, local absolute continuity off the axes");
    return v;
}

/// thm2: certified iff the full reciprocal sum exceeds 2^(d-1) strictly while
/// the eta != 0 part does not exceed it. For d = 2 the second condition may be
/// replaced by 1/p_0 + 1/p_1 > 1; the verdict records which branch fired.
inline CriterionVerdict check_theorem2(const ExponentAssignment& a) {
    a.validate();
    CriterionVerdict v;
    v.rule_id = "thm2";
    for (std::uint32_t b = 1; b < (1u << a.d); ++b) {
        if (a.table[b].is_infinite()) {
            v.status = RuleStatus::not_applicable;
            v.notes.push_back("requires finite p_eta for eta != 0");
            return v;
        }
    }
    Rational threshold = detail::pow2(a.d - 1);
    Rational sum_all(0), sum_pos(0);
    for (std::uint32_t b = 0; b < (1u << a.d); ++b) {
        Rational r = a.table[b].reciprocal();
        sum_all += r;
        if (b != 0) sum_pos += r;
    }
    Rational joint_margin = sum_all - threshold;
    if (joint_margin <= 0) {
        v.status = RuleStatus::inconclusive;
        v.margin = joint_margin;
        v.notes.push_back("joint sum condition fails (needs strict inequality)");
        return v;
    }
    if (sum_pos <= threshold) {
        v.status = RuleStatus::certified;
        v.margin = joint_margin;
        v.notes.push_back("branch: derivative-sum bound holds");
        return v;
    }
    if (a.d == 2) {
        Rational pair_margin = a.table[0].reciprocal() + a.table[3].reciprocal() - 1;
        if (pair_margin > 0) {
            v.status = RuleStatus::certified;
            v.margin = std::min(joint_margin, pair_margin);
            v.notes.push_back("branch: d = 2 replacement 1/p_0 + 1/p_11 > 1");
            return v;
        }
    }
    v.status = RuleStatus::inconclusive;
    v.margin = threshold - sum_pos;  // negative: the non-strict bound is violated
    v.notes.push_back("derivative-sum bound fails");
    return v;
}

/// thm2prime: equality form. Certified iff the full reciprocal sum equals
/// 2^(d-1) exactly and f is declared in L_p for some 1 <= p < p_0 <= inf.
inline CriterionVerdict check_theorem2_prime(const ExponentAssignment& a, const Exponent& p_strict) {
    CriterionVerdict v;
    v.rule_id = "thm2prime";
    if (a.d < 1 || a.d > kMaxTableDim || a.table.size() != (std::size_t(1) << a.d))
        throw std::invalid_argument("assignment table must have 2^d entries");
    // Here the role of p_0 is the upper exponent and inf is permitted.
    const Exponent& p_upper = a.table[0];
    if (!p_strict.is_finite() || p_strict.finite_value() < 1)
        throw std::invalid_argument("thm2prime: requires 1 <= p < inf");
    for (std::uint32_t b = 1; b < (1u << a.d); ++b) {
        if (a.table[b].is_infinite() || a.table[b].finite_value() <= 1) {
            v.status = RuleStatus::not_applicable;
            v.notes.push_back("requires finite p_eta > 1 for eta != 0");
            return v;
        }
    }
    if (!(p_strict < p_upper)) {
        v.status = RuleStatus::not_applicable;
        v.notes.push_back("requires p < p_0 (strictly)");
        return v;
    }
    Rational sum_all(0);
    for (std::uint32_t b = 0; b < (1u << a.d); ++b) sum_all += a.table[b].reciprocal();
    Rational threshold = detail::pow2(a.d - 1);
    if (sum_all == threshold) {
        v.status = RuleStatus::certified;
        v.margin = p_strict.reciprocal() - p_upper.reciprocal();  // slack of p < p_0
        v.notes.push_back("reciprocal sum equals 2^(d-1) exactly");
    } else {
        v.status = RuleStatus::inconclusive;
        v.margin = sum_all - threshold;
        v.notes.push_back("equality form requires the sum to be exactly 2^(d-1)");
    }
    return v;
}

/// cor-bounded: requires every |eta| <= d/2 flagged bounded; then certified
/// iff the reciprocal sum (inf entries contributing 0) exceeds 2^(d-1).
inline CriterionVerdict check_bounded_derivative_corollary(const ExponentAssignment& a) {
    a.validate();
    CriterionVerdict v;
    v.rule_id = "cor-bounded";
    for (const EtaVector& eta : enumerate_etas(a.d)) {
        if (2 * eta.weight() <= a.d && !a.is_bounded(eta)) {
            v.status = RuleStatus::not_applicable;
            v.notes.push_back("requires D^eta f in L_inf for every |eta| <= d/2 (missing " +
                              eta.str() + ")");
            return v;
        }
    }
    Rational sum_all(0);
    for (std::uint32_t b = 0; b < (1u << a.d); ++b) sum_all += a.table[b].reciprocal();
    v.margin = sum_all - detail::pow2(a.d - 1);
    v.status = (*v.margin > 0) ? RuleStatus::certified : RuleStatus::inconclusive;
    v.notes.push_back("bounded flags accepted as declared hypotheses");
    return v;
}

/// prop-even: d even, |eta| <= d/2 - 1 bounded, and 1/p_0 + 1/p_1 > 1; then
/// certified iff the reciprocal sum exceeds 2^(d-1).
inline CriterionVerdict check_even_d_proposition(const ExponentAssignment& a) {
    a.validate();
    CriterionVerdict v;
    v.rule_id = "prop-even";
    if (a.d % 2 != 0) {
        v.status = RuleStatus::not_applicable;
        v.notes.push_back("requires even dimension");
        return v;
    }
    for (const EtaVector& eta : enumerate_etas(a.d)) {
        if (2 * eta.weight() <= a.d - 2 && !a.is_bounded(eta)) {
            v.status = RuleStatus::not_applicable;
            v.notes.push_back("requires D^eta f in L_inf for every |eta| <= d/2 - 1 (missing " +
                              eta.str() + ")");
            return v;
        }
    }
    Rational pair = a.table[0].reciprocal() + a.table[(1u << a.d) - 1].reciprocal();
    if (!(pair > 1)) {
        v.status = RuleStatus::not_applicable;
        v.notes.push_back("side condition 1/p_0 + 1/p_1 > 1 fails");
        return v;
    }
    Rational sum_all(0);
    for (std::uint32_t b = 0; b < (1u << a.d); ++b) sum_all += a.table[b].reciprocal();
    Rational joint = sum_all - detail::pow2(a.d - 1);
    Rational pair_slack = pair - 1;
    v.margin = std::min(joint, pair_slack);
    v.status = (joint > 0) ? RuleStatus::certified : RuleStatus::inconclusive;
    return v;
}

/// cor-decay: certified iff sum of decay orders exceeds d*2^(d-1) strictly.
inline CriterionVerdict check_decay_corollary(const DecayAssignment& g) {
    g.validate();
    CriterionVerdict v;
    v.rule_id = "cor-decay";
    Rational sum(0);
    for (const Rational& x : g.gamma) sum += x;
    v.margin = sum - Rational(g.d) * detail::pow2(g.d - 1);
    v.status = (*v.margin > 0) ? RuleStatus::certified : RuleStatus::inconclusive;
    return v;
}

/// cor-radial: binomial-weighted sum over derivative weights, with the even-d
/// side condition 1/p_0 + 1/p_d > 1 or its non-strict alternative.
inline CriterionVerdict check_radial_corollary(const RadialAssignment& r) {
    r.validate();
    CriterionVerdict v;
    v.rule_id = "cor-radial";
    if (!r.smoothness_declared) {
        v.status = RuleStatus::not_applicable;
        v.notes.push_back("profile smoothness/decay hypotheses not declared");
        return v;
    }
    v.notes.push_back("profile smoothness/decay hypotheses declared by caller");
    Rational sum(0);
    for (int j = 0; j <= r.d; ++j)
        sum += Rational(binomial(r.d, j)) * r.p[static_cast<std::size_t>(j)].reciprocal();
    Rational threshold = detail::pow2(r.d - 1);
    Rational joint = sum - threshold;
    if (r.d % 2 != 0) {
        v.margin = joint;
        v.status = (joint > 0) ? RuleStatus::certified : RuleStatus::inconclusive;
        return v;
    }
    Rational pair = r.p[0].reciprocal() + r.p[static_cast<std::size_t>(r.d)].reciprocal() - 1;
    bool pair_ok = pair > 0;
    // Alternative: half the middle binomial shell plus everything above it
    // stays within 2^(d-1) (non-strict).
    Rational upper(0);
    upper += Rational(binomial(r.d, r.d / 2)) * r.p[static_cast<std::size_t>(r.d / 2)].reciprocal() / 2;
    for (int j = r.d / 2 + 1; j <= r.d; ++j)
        upper += Rational(binomial(r.d, j)) * r.p[static_cast<std::size_t>(j)].reciprocal();
    bool alt_ok = upper <= threshold;
    if (joint > 0 && pair_ok) {
        v.status = RuleStatus::certified;
        v.margin = std::min(joint, pair);
        v.notes.push_back("branch: 1/p_0 + 1/p_d > 1");
    } else if (joint > 0 && alt_ok) {
        v.status = RuleStatus::certified;
        v.margin = joint;
        v.notes.push_back("branch: upper-shell alternative bound");
    } else {
        v.status = RuleStatus::inconclusive;
        v.margin = joint;
        if (joint > 0) v.notes.push_back("even-d side conditions both fail");
    }
    return v;
}

/// thm213a: gate r > d/2, then r < (2r-d)/p_0 + sum_j 1/p_j <= (2r-d)/p_0 + r
/// (left strict, right non-strict).
inline CriterionVerdict check_theorem213a(const Theorem213Params& t) {
    t.validate();
    CriterionVerdict v;
    v.rule_id = "thm213a";
    if (!(2 * t.r > t.d)) {
        v.status = RuleStatus::not_applicable;
        v.notes.push_back("gate r > d/2 fails");
        return v;
    }
    Rational base = Rational(2 * t.r - t.d) * t.p0.reciprocal();
    Rational mid = base;
    for (const Exponent& e : t.p) mid += e.reciprocal();
    Rational left = mid - Rational(t.r);          // must be > 0
    Rational right = base + Rational(t.r) - mid;  // must be >= 0
    v.margin = left;
    if (left > 0 && right >= 0) {
        v.status = RuleStatus::certified;
        if (right == 0) v.notes.push_back("upper bound attained (non-strict)");
    } else {
        v.status = RuleStatus::inconclusive;
        v.notes.push_back(left <= 0 ? "lower strict inequality fails" : "upper bound exceeded");
    }
    return v;
}

/// thm213b: counterexample region (2r-d)/p + d/q < r strictly.
inline CriterionVerdict check_theorem213b(int d, long long r, const Exponent& p, const Exponent& q) {
    CriterionVerdict v;
    v.rule_id = "thm213b";
    if (d < 1 || d > kMaxTableDim) throw std::invalid_argument("dimension out of range");
    if (r < 1) throw std::invalid_argument("r must be a positive integer");
    if (!p.is_finite() || p.finite_value() < 1)
        throw std::invalid_argument("thm213b: requires 1 <= p < inf");
    if (!q.is_finite() || q.finite_value() <= 1)
        throw std::invalid_argument("thm213b: requires 1 < q < inf");
    Rational lhs = Rational(2 * r - d) * p.reciprocal() + Rational(d) * q.reciprocal();
    Rational margin = Rational(r) - lhs;  // positive inside the non-membership region
    v.margin = margin;
    if (margin > 0) {
        v.status = RuleStatus::counterexample_exists;
        detail::push_witness(v, "p", p.finite_value());
        detail::push_witness(v, "q", q.finite_value());
        v.witness.emplace_back("r", std::to_string(r));
        v.notes.push_back("a function with these integrability properties exists outside A");
    } else {
        v.status = RuleStatus::inconclusive;
    }
    return v;
}

/// legacy-a1d: pure derivatives in L2 with sum of reciprocal orders below 2.
inline CriterionVerdict check_legacy_a1d(const PureDerivativeOrders& o) {
    o.validate();
    CriterionVerdict v;
    v.rule_id = "legacy-a1d";
    Rational sum(0);
    for (long long b : o.beta) sum += Rational(1, b);
    v.margin = Rational(2) - sum;
    v.status = (*v.margin > 0) ? RuleStatus::certified : RuleStatus::inconclusive;
    v.notes.push_back("hypotheses declared: f and each pure derivative in L2");
    return v;
}

/// legacy-a2d with an explicitly declared common exponent for all mixed
/// derivatives: certified iff 1 < p <= 2, hypothesis mismatch otherwise.
inline CriterionVerdict check_legacy_a2d(const Exponent& p) {
    CriterionVerdict v;
    v.rule_id = "legacy-a2d";
    v.notes.push_back("hypotheses declared: f in L1, all D^eta f in L_p");
    if (p.is_infinite() || p.finite_value() <= 1 || p.finite_value() > 2) {
        v.status = RuleStatus::not_applicable;
        v.notes.push_back("requires 1 < p <= 2");
        return v;
    }
    v.status = RuleStatus::certified;
    v.margin = p.finite_value() - 1;
    return v;
}

/// legacy-a2d derived from a full assignment: needs p_0 = 1 and one common
/// finite exponent for every eta != 0.
inline CriterionVerdict check_legacy_a2d(const ExponentAssignment& a) {
    a.validate();
    CriterionVerdict v;
    v.rule_id = "legacy-a2d";
    if (a.table[0].finite_value() != 1) {
        v.status = RuleStatus::not_applicable;
        v.notes.push_back("requires f in L1 (p_0 = 1)");
        return v;
    }
    for (std::uint32_t b = 1; b < (1u << a.d); ++b) {
        if (a.table[b] != a.table[1]) {
            v.status = RuleStatus::not_applicable;
            v.notes.push_back("requires one common exponent for all eta != 0");
            return v;
        }
    }
    return check_legacy_a2d(a.table[1]);
}

// ---------------------------------------------------------------------------
// Bundled evaluation
// ---------------------------------------------------------------------------

/// Whatever typed inputs the caller has; run_all applies every rule whose
/// inputs are present.
struct CriteriaBundle {
    std::optional<ExponentAssignment> assignment;
    std::optional<Exponent> thm2prime_p;  // the strict lower exponent of thm2prime
    std::optional<DecayAssignment> decay;
    std::optional<RadialAssignment> radial;
    std::optional<PureDerivativeOrders> pure_orders;
    std::optional<Theorem213Params> t213;
    std::optional<std::pair<Exponent, Exponent>> pq;  // (p, q) for thm4.1 / thm213b
    std::optional<long long> r;                       // order for thm213b when t213 absent
    std::optional<Exponent> a2d_p;
    std::optional<int> dim;  // required when only (p, q)-style inputs are given

    int dimension() const {
        if (assignment) return assignment->d;
        if (decay) return decay->d;
        if (radial) return radial->d;
        if (pure_orders) return pure_orders->d;
        if (t213) return t213->d;
        if (dim) return *dim;
        return 1;
    }
};

/// Applies every applicable rule; verdicts come back ordered by rule id.
/// Overall certification means at least one rule certifies.
inline std::vector<CriterionVerdict> run_all(const CriteriaBundle& bundle) {
    std::vector<CriterionVerdict> out;
    int d = bundle.dimension();
    if (bundle.assignment) {
        // An infinite p_0 is meaningful only for the equality form (where it is
        // the upper exponent); every other rule needs f in some finite L_p.
        bool p0_finite = bundle.assignment->table.at(0).is_finite();
        if (p0_finite) {
            out.push_back(check_theorem1(*bundle.assignment));
            out.push_back(check_theorem2(*bundle.assignment));
            out.push_back(check_bounded_derivative_corollary(*bundle.assignment));
            out.push_back(check_even_d_proposition(*bundle.assignment));
            if (!bundle.a2d_p) out.push_back(check_legacy_a2d(*bundle.assignment));
        }
        if (bundle.thm2prime_p)
            out.push_back(check_theorem2_prime(*bundle.assignment, *bundle.thm2prime_p));
    }
    if (bundle.a2d_p) out.push_back(check_legacy_a2d(*bundle.a2d_p));
    if (bundle.decay) out.push_back(check_decay_corollary(*bundle.decay));
    if (bundle.radial) out.push_back(check_radial_corollary(*bundle.radial));
    if (bundle.pure_orders) out.push_back(check_legacy_a1d(*bundle.pure_orders));
    if (bundle.t213) out.push_back(check_theorem213a(*bundle.t213));

    std::optional<std::pair<Exponent, Exponent>> pq = bundle.pq;
    if (!pq && bundle.assignment && bundle.assignment->d == 1 &&
        bundle.assignment->table[0].is_finite() && bundle.assignment->table[1].is_finite())
        pq = std::make_pair(bundle.assignment->table[0], bundle.assignment->table[1]);
    if (pq && d == 1) out.push_back(check_dim1(pq->first, pq->second));
    std::optional<long long> r = bundle.r;
    if (!r && bundle.t213) r = bundle.t213->r;
    if (pq && r) out.push_back(check_theorem213b(d, *r, pq->first, pq->second));

    std::sort(out.begin(), out.end(),
              [](const CriterionVerdict& a, const CriterionVerdict& b) { return a.rule_id < b.rule_id; });
    return out;
}

enum class OverallOutcome { certified, negative, inconclusive };

/// certified if any rule certifies; negative if none does but some rule
/// exhibits a counterexample region; inconclusive otherwise.
inline OverallOutcome overall_outcome(const std::vector<CriterionVerdict>& verdicts) {
    bool counterexample = false;
    for (const CriterionVerdict& v : verdicts) {
        if (v.status == RuleStatus::certified) return OverallOutcome::certified;
        if (v.status == RuleStatus::counterexample_exists) counterexample = true;
    }
    return counterexample ? OverallOutcome::negative : OverallOutcome::inconclusive;
}

inline std::string to_string(OverallOutcome o) {
    switch (o) {
        case OverallOutcome::certified: return "certified";
        case OverallOutcome::negative: return "negative";
        case OverallOutcome::inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace wiener
