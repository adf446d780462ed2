#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raonet/stats.hpp"

#include <cmath>

using namespace raonet::stats;

TEST_CASE("pearson on exact linear data") {
    std::vector<double> x = {1, 2, 3};
    std::vector<double> up = {2, 4, 6};
    std::vector<double> down = {3, 2, 1};
    CHECK(pearson(x, up).value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson(x, down).value() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pearson against a direct-formula recomputation") {
    std::vector<double> x = {1, 2, 3, 4};
    std::vector<double> y = {1, 3, 2, 4};
    // independent two-pass covariance computation
    double mx = 2.5, my = 2.5, sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    double want = sxy / std::sqrt(sxx * syy);
    CHECK(pearson(x, y).value() == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("pearson flags constant input and rejects bad shapes") {
    std::vector<double> x = {1, 2, 3};
    std::vector<double> flat = {5, 5, 5};
    CHECK_FALSE(pearson(x, flat).has_value());
    std::vector<double> y2 = {1, 2};
    CHECK_THROWS_AS(pearson(x, y2), std::invalid_argument);
    std::vector<double> xs = {1, 2};
    CHECK_THROWS_AS(pearson(xs, y2), std::invalid_argument);
}

TEST_CASE("pearson is invariant under positive affine transforms") {
    std::vector<double> x = {1, 4, 2, 8, 5};
    std::vector<double> y = {2, 3, 9, 1, 7};
    double base = pearson(x, y).value();
    std::vector<double> xt(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xt[i] = 3.5 * x[i] + 11.0;
    CHECK(pearson(xt, y).value() == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("spearman") {
    std::vector<double> x = {1, 2, 3};
    std::vector<double> mono = {10, 100, 1000};
    CHECK(spearman(x, mono).value() == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> rev = {9, 4, 1};
    CHECK(spearman(x, rev).value() == doctest::Approx(-1.0).epsilon(1e-12));

    // ties: ranks of y=[1,1,2] are [1.5,1.5,3]
    std::vector<double> tied = {1, 1, 2};
    std::vector<double> hand_x = {1, 2, 3};
    std::vector<double> hand_y = {1.5, 1.5, 3};
    CHECK(spearman(x, tied).value() ==
          doctest::Approx(pearson(hand_x, hand_y).value()).epsilon(1e-14));

    // invariant under strictly increasing transforms
    std::vector<double> a = {3, 1, 4, 1.5, 9};
    std::vector<double> b = {2, 7, 1, 8, 2.5};
    std::vector<double> bt(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bt[i] = std::exp(b[i]);
    CHECK(spearman(a, bt).value() == doctest::Approx(spearman(a, b).value()).epsilon(1e-12));
}

TEST_CASE("average ranks with ties") {
    std::vector<double> v = {10, 20, 10, 30};
    auto r = average_ranks(v);
    CHECK(r == std::vector<double>{1.5, 3.0, 1.5, 4.0});
}

TEST_CASE("percentile rank uses the midpoint convention") {
    std::vector<double> v = {1, 2, 3, 4};
    CHECK(percentile_rank(v, 4) == doctest::Approx(87.5));
    CHECK(percentile_rank(v, 0) == 0.0);
    CHECK(percentile_rank(v, 1) == doctest::Approx(100.0 * 0.5 / 4.0));
    std::vector<double> same = {7, 7, 7};
    CHECK(percentile_rank(same, 7) == doctest::Approx(50.0));

    // monotone in the focal value
    std::vector<double> pool = {5, 1, 3, 3, 9, 2};
    double prev = -1;
    for (double f = 0; f <= 10; f += 0.25) {
        double pr = percentile_rank(pool, f);
        CHECK(pr >= prev);
        prev = pr;
    }
}

TEST_CASE("incomplete beta and derived tail probabilities") {
    CHECK(incomplete_beta(1, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(f_distribution_sf(1.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(student_t_two_tailed(0.0, 10.0) == doctest::Approx(1.0));
    // t = 2.228 is the 97.5% point of t(10)
    CHECK(student_t_two_tailed(2.228, 10.0) == doctest::Approx(0.05).epsilon(2e-3));
}

TEST_CASE("studentized range quantiles match published tables") {
    CHECK(std::fabs(studentized_range_quantile(0.05, 3, 12) - 3.77) <= 0.01);
    CHECK(std::fabs(studentized_range_quantile(0.05, 5, 20) - 4.23) <= 0.01);
    CHECK(std::fabs(studentized_range_quantile(0.05, 4, 60) - 3.74) <= 0.01);
    // q(0.05, 2, df) = sqrt(2) * t_{0.975}(df); t(12) = 2.1788
    CHECK(studentized_range_quantile(0.05, 2, 12) ==
          doctest::Approx(std::sqrt(2.0) * 2.1788).epsilon(2e-3));
}

TEST_CASE("identical groups give F = 0, p = 1, one subset") {
    std::vector<std::vector<double>> groups = {{1, 2, 3}, {1, 2, 3}};
    auto res = anova_tukey(groups, 0.05);
    CHECK(res.f_statistic == 0.0);
    CHECK(res.p_value == doctest::Approx(1.0));
    CHECK(res.homogeneous_subsets.size() == 1);
    CHECK(res.homogeneous_subsets[0].size() == 2);
}

TEST_CASE("separated groups are significant at any conventional alpha") {
    std::vector<std::vector<double>> groups = {{0.0, 0.01, -0.01, 0.005},
                                               {10.0, 10.01, 9.99, 10.005}};
    auto res = anova_tukey(groups, 0.01);
    CHECK(res.p_value < 1e-6);
    REQUIRE(res.pairs.size() == 1);
    CHECK(res.pairs[0].significant);
    CHECK(res.homogeneous_subsets.size() == 2);
}

TEST_CASE("k=2 Tukey agrees with the F test (q^2 = 2F)") {
    std::vector<std::vector<double>> groups = {{3.1, 4.2, 2.8, 3.9, 4.4},
                                               {4.0, 5.1, 4.9, 5.6, 4.4}};
    double alpha = 0.05;
    auto res = anova_tukey(groups, alpha);
    REQUIRE(res.pairs.size() == 1);
    CHECK(res.pairs[0].q_statistic * res.pairs[0].q_statistic ==
          doctest::Approx(2.0 * res.f_statistic).epsilon(1e-6));
    bool f_significant = res.p_value < alpha;
    CHECK(res.pairs[0].significant == f_significant);
}

TEST_CASE("F statistic is invariant under shift and positive scaling") {
    std::vector<std::vector<double>> groups = {{1, 2, 3, 2}, {4, 5, 4, 6}, {2, 3, 2, 4}};
    auto base = anova_tukey(groups, 0.05);
    for (auto& g : groups)
        for (auto& v : g) v = 2.5 * v + 100.0;
    auto moved = anova_tukey(groups, 0.05);
    CHECK(moved.f_statistic == doctest::Approx(base.f_statistic).epsilon(1e-9));
    CHECK(moved.p_value == doctest::Approx(base.p_value).epsilon(1e-9));
}

TEST_CASE("Tukey significance is consistent with the critical value") {
    std::vector<std::vector<double>> groups = {{1, 2, 3, 2, 1}, {2, 3, 4, 3, 2}, {8, 9, 10, 9, 8}};
    auto res = anova_tukey(groups, 0.05);
    for (const auto& pc : res.pairs)
        CHECK(pc.significant == (std::fabs(pc.mean_difference) > res.q_critical * pc.standard_error));
}

TEST_CASE("homogeneous subsets cover every group") {
    std::vector<std::vector<double>> groups = {
        {1, 2, 1.5, 2.5}, {2, 3, 2.5, 3.5}, {9, 10, 9.5, 10.5}, {9.2, 10.2, 9.4, 10.4}};
    auto res = anova_tukey(groups, 0.05);
    std::vector<bool> seen(groups.size(), false);
    for (const auto& subset : res.homogeneous_subsets)
        for (std::size_t g : subset) seen[g] = true;
    for (bool s : seen) CHECK(s);
    // within a subset, no pair is significant
    for (const auto& subset : res.homogeneous_subsets)
        for (std::size_t a : subset)
            for (std::size_t b : subset) {
                if (a >= b) continue;
                for (const auto& pc : res.pairs)
                    if (pc.group_a == a && pc.group_b == b) CHECK_FALSE(pc.significant);
            }
}

TEST_CASE("degenerate zero within-group variance") {
    std::vector<std::vector<double>> groups = {{1, 1, 1}, {2, 2, 2}};
    auto res = anova_tukey(groups, 0.05);
    CHECK(res.degenerate_within);
    CHECK(res.pairs[0].significant);

    std::vector<std::vector<double>> all_same = {{5, 5}, {5, 5}};
    auto flat = anova_tukey(all_same, 0.05);
    CHECK(flat.degenerate_within);
    CHECK(flat.f_statistic == 0.0);
    CHECK_FALSE(flat.pairs[0].significant);
}

TEST_CASE("anova input validation") {
    CHECK_THROWS_AS(anova_tukey({{1.0, 2.0}}, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(anova_tukey({{1.0, 2.0}, {1.0}}, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(anova_tukey({{1.0, 2.0}, {3.0, 4.0}}, 1.5), std::invalid_argument);
}

TEST_CASE("bonferroni post hoc") {
    std::vector<std::vector<double>> groups = {{1, 2, 1, 2}, {1.1, 2.1, 1.2, 2.2}, {9, 10, 9, 10}};
    auto res = anova_tukey(groups, 0.05, PostHoc::bonferroni);
    for (const auto& pc : res.pairs) {
        CHECK(pc.p_value >= 0.0);
        CHECK(pc.p_value <= 1.0);
        CHECK(pc.significant == (pc.p_value < 0.05));
    }
}

TEST_CASE("correlation matrix shape and symmetry") {
    std::vector<std::string> names = {"a", "b", "c"};
    std::vector<std::vector<double>> cols = {{1, 2, 3, 4, 5, 6},
                                             {2, 4, 6, 8, 10, 12.5},
                                             {6, 5, 4, 3, 2, 1}};
    auto cm = correlation_matrix(names, cols);
    CHECK(cm.n == 6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(cm.pearson[i][i] == 1.0);
        CHECK(cm.spearman[i][i] == 1.0);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(cm.pearson[i][j] == cm.pearson[j][i]);
            CHECK(cm.spearman[i][j] == cm.spearman[j][i]);
        }
    }
    CHECK(cm.spearman[0][1] == doctest::Approx(1.0));
    CHECK(cm.pearson[0][2] == doctest::Approx(-1.0));
    CHECK(cm.pearson_sig[0][2] == 2);
}
