#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace raonet::stats {

double gamma_ln(double x);
// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);
double normal_cdf(double x);

// Upper tail of the F distribution.
double f_distribution_sf(double f, double df1, double df2);
// Two-tailed p for Student's t.
double student_t_two_tailed(double t, double df);

// CDF of the range of k standard normal variates.
double range_cdf(double r, int k);
// Studentized range Q = range / s with s^2 ~ chi^2_df / df, by numerical
// integration over the chi distribution of the range CDF.
double studentized_range_cdf(double q, int k, double df);
// Quantile with P(Q <= q) = 1 - alpha.
double studentized_range_quantile(double alpha, int k, double df);

// Average ranks, 1-based; ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

// Product-moment correlation; empty when either input is constant.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
// Pearson over average ranks.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Midpoint convention: 100 * (below + 0.5 * equal) / n.
double percentile_rank(std::span<const double> values, double focal);

enum class PostHoc { tukey, bonferroni };

struct PairComparison {
    std::size_t group_a = 0, group_b = 0;
    double mean_difference = 0; // mean_a - mean_b
    double standard_error = 0;  // Tukey-Kramer SE
    double q_statistic = 0;
    double p_value = 1; // Bonferroni-adjusted pairwise t (bonferroni post hoc only)
    bool significant = false;
};

struct AnovaResult {
    std::size_t group_count = 0, observation_count = 0;
    double f_statistic = 0;
    double p_value = 1;
    std::size_t df_between = 0, df_within = 0;
    double ms_within = 0;
    double q_critical = 0;
    double alpha = 0.05;
    PostHoc posthoc = PostHoc::tukey;
    bool degenerate_within = false; // zero within-group variance
    std::vector<double> group_means;
    std::vector<std::size_t> group_sizes;
    std::vector<PairComparison> pairs;
    std::vector<std::vector<std::size_t>> homogeneous_subsets; // group indices
};

// One-way ANOVA with Tukey HSD (or Bonferroni-corrected pairwise t) post hoc.
// Requires k >= 2 groups with >= 2 observations each.
AnovaResult anova_tukey(const std::vector<std::vector<double>>& groups, double alpha,
                        PostHoc posthoc = PostHoc::tukey);

struct CorrelationMatrix {
    std::vector<std::string> variables;
    std::size_t n = 0;
    std::vector<std::vector<double>> pearson;  // NaN when undefined
    std::vector<std::vector<double>> spearman;
    std::vector<std::vector<int>> pearson_sig;  // 0, 1 (<.05), 2 (<.01)
    std::vector<std::vector<int>> spearman_sig; // t-approximation for both
};

CorrelationMatrix correlation_matrix(const std::vector<std::string>& names,
                                     const std::vector<std::vector<double>>& columns);

} // namespace raonet::stats
