#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "moyalkit/sequences.hpp"

using namespace moyalkit;

TEST_CASE("gevrey values") {
    DefiningSequence g1 = make_sequence(SeqKind::gevrey, 1.0, 32);
    CHECK(g1.a(0) == doctest::Approx(1.0));
    CHECK(g1.a(2) == doctest::Approx(4.0));
    CHECK(g1.a(3) == doctest::Approx(27.0));
    DefiningSequence g0 = make_sequence(SeqKind::gevrey, 0.0, 32);
    for (int n = 0; n <= 32; ++n) CHECK(g0.a(n) == doctest::Approx(1.0));
    DefiningSequence gh = make_sequence(SeqKind::gevrey, 0.5, 64);
    CHECK(gh.a(4) == doctest::Approx(16.0));
}

TEST_CASE("construction validates the structural conditions") {
    std::vector<double> bad_head(40, 1.0);
    bad_head[0] = 2.0;
    CHECK_THROWS_AS(make_sequence(bad_head), ConditionViolation);

    std::vector<double> decreasing(40, 1.0);
    decreasing[5] = 0.5; // breaks monotonicity (and positivity of increments)
    CHECK_THROWS_AS(make_sequence(decreasing), ConditionViolation);

    // violates log-convexity: bump in the middle
    std::vector<double> bump;
    for (int n = 0; n < 40; ++n) bump.push_back(std::pow(2.0, n));
    bump[20] *= 4.0;
    CHECK_THROWS_AS(make_sequence(bump), ConditionViolation);

    CHECK_THROWS_AS(make_sequence(SeqKind::gevrey, 1.0, 8), ConditionViolation);
    CHECK_THROWS_AS(make_sequence(SeqKind::gevrey, -1.0, 64),
                    ConditionViolation);
}

TEST_CASE("growth constants") {
    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);
    CHECK(ones.growth_base == doctest::Approx(1.0));
    CHECK(ones.growth_constant == doctest::Approx(1.0));

    // (k+n)^{k+n} <= 2^{k+n} k^k n^n is sharp at k = n, so the fit lands on
    // H = 2^alpha with K = 1.
    DefiningSequence g1 = make_sequence(SeqKind::gevrey, 1.0, 32);
    CHECK(g1.growth_base == doctest::Approx(2.0));
    CHECK(g1.growth_constant == doctest::Approx(1.0).epsilon(1e-12));
    DefiningSequence gh = make_sequence(SeqKind::gevrey, 0.5, 64);
    CHECK(gh.growth_base == doctest::Approx(std::sqrt(2.0)));
    CHECK(gh.growth_constant == doctest::Approx(1.0).epsilon(1e-12));

    // e^{0.6 n^2} outgrows K H^{k+n} even at the largest grid base
    std::vector<double> super;
    for (int n = 0; n <= 32; ++n) super.push_back(std::exp(0.6 * n * n));
    CHECK_THROWS_AS(make_sequence(super), NoFeasibleConstant);
}

TEST_CASE("weight evaluations") {
    DefiningSequence g1 = make_sequence(SeqKind::gevrey, 1.0, 64);
    WeightEvaluation zero = weight(g1, 0.0);
    CHECK(zero.value() == doctest::Approx(1.0));
    CHECK(zero.argmax_n == 0);

    // sup 10^n / n^n over integers peaks at n = 4: 10^4/4^4
    WeightEvaluation ten = weight(g1, 10.0);
    CHECK(ten.argmax_n == 4);
    CHECK(ten.value() == doctest::Approx(10000.0 / 256.0));

    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);
    CHECK(weight(ones, 0.5).value() == doctest::Approx(1.0));
    CHECK(weight(ones, 1.0).value() == doctest::Approx(1.0));
    CHECK(weight(ones, 2.0).infinite);

    DefiningSequence small = make_sequence(SeqKind::gevrey, 1.0, 32);
    CHECK_THROWS_AS(weight(small, 100.0), TruncationError);
}

TEST_CASE("weight argmax ties break to the smallest index") {
    DefiningSequence g1 = make_sequence(SeqKind::gevrey, 1.0, 64);
    // at t = 1 the n = 0 and n = 1 terms are both 1
    WeightEvaluation one = weight(g1, 1.0);
    CHECK(one.argmax_n == 0);
    CHECK(one.value() == doctest::Approx(1.0));
}

TEST_CASE("weight inequality battery") {
    DefiningSequence g1 = make_sequence(SeqKind::gevrey, 1.0, 256);
    WeightInequalityReport rep =
        check_weight_inequalities(g1, {0.0, 0.1, 1.0, 5.0, 20.0});
    CHECK(rep.pass);
    CHECK(rep.violations == 0);
    CHECK(rep.margin_midpoint >= -rep.tolerance);
    CHECK(rep.margin_square >= -rep.tolerance);
    CHECK(rep.margin_moment >= -rep.tolerance);

    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);
    WeightInequalityReport rep1 =
        check_weight_inequalities(ones, {0.0, 0.3, 0.9, 1.0});
    CHECK(rep1.pass);
}

TEST_CASE("subordination") {
    DefiningSequence g1 = make_sequence(SeqKind::gevrey, 1.0, 64);
    DefiningSequence gh = make_sequence(SeqKind::gevrey, 0.5, 64);
    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);

    SubordinationResult ok = check_subordination(ones, g1);
    REQUIRE(ok.holds);
    CHECK(ok.fit->constant == doctest::Approx(1.0));
    CHECK(ok.fit->base == doctest::Approx(1.0));

    SubordinationResult same = check_subordination(g1, g1);
    REQUIRE(same.holds);
    CHECK(same.fit->constant == doctest::Approx(1.0));
    CHECK(same.fit->base == doctest::Approx(1.0));

    SubordinationResult bad = check_subordination(g1, gh);
    CHECK_FALSE(bad.holds);
    CHECK(bad.tail_ratio_full > bad.tail_ratio_half);

    SubordinationResult rev = check_subordination(gh, g1);
    CHECK(rev.holds);
}

TEST_CASE("json round trip") {
    DefiningSequence g = make_sequence(SeqKind::gevrey, 0.5, 64);
    DefiningSequence back = sequence_from_json(sequence_to_json(g));
    CHECK(back.kind == SeqKind::gevrey);
    CHECK(back.n_max == 64);
    CHECK(back.alpha == doctest::Approx(0.5));
    CHECK(back.growth_base == doctest::Approx(g.growth_base));
    for (int n = 0; n <= 64; ++n)
        CHECK(back.log_a(n) == doctest::Approx(g.log_a(n)));

    std::vector<double> vals;
    for (int n = 0; n <= 40; ++n) vals.push_back(std::pow(2.0, n));
    DefiningSequence ex = make_sequence(vals);
    DefiningSequence ex_back = sequence_from_json(sequence_to_json(ex));
    for (int n = 0; n <= 40; ++n)
        CHECK(ex_back.a(n) == doctest::Approx(ex.a(n)).epsilon(1e-12));
}
