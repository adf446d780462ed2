#include "raonet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace raonet::stats {

namespace {

double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3.0e-12;
    constexpr double fpmin = 1.0e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

// Composite 10-point Gauss-Legendre; the integrands below are smooth, so a
// modest panel count already lands far below the 1e-6 target that the
// published-table oracles check.
constexpr double kGLx[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                            0.8650633666889845, 0.9739065285171717};
constexpr double kGLw[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                            0.1494513491505806, 0.0666713443086881};

template <typename F>
double gauss_legendre(const F& f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double total = 0;
    for (int p = 0; p < panels; ++p) {
        double mid = a + h * (p + 0.5);
        double half = 0.5 * h;
        for (int i = 0; i < 5; ++i)
            total += kGLw[i] * (f(mid - half * kGLx[i]) + f(mid + half * kGLx[i]));
    }
    return total * 0.5 * h;
}

double normal_pdf(double x) {
    return 0.3989422804014327 * std::exp(-0.5 * x * x);
}

// Nodes and weighted densities of s = sqrt(chi2_df / df), precomputed so a
// quantile search reuses them across bisection steps.
struct ChiGrid {
    std::vector<double> s;
    std::vector<double> weighted_pdf;
};

ChiGrid make_chi_grid(double df) {
    double half_df = 0.5 * df;
    double log_norm = std::log(2.0) + half_df * std::log(half_df) - std::lgamma(half_df);
    auto pdf = [&](double s) {
        return std::exp(log_norm + (df - 1.0) * std::log(s) - half_df * s * s);
    };
    double spread = 12.0 / std::sqrt(2.0 * df);
    double lo = std::max(1e-10, 1.0 - spread);
    double hi = 1.0 + spread + (df < 10 ? 3.0 : 0.0);

    const int panels = 40;
    ChiGrid grid;
    double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = lo + h * (p + 0.5);
        double half = 0.5 * h;
        for (int i = 0; i < 5; ++i) {
            for (double x : {mid - half * kGLx[i], mid + half * kGLx[i]}) {
                grid.s.push_back(x);
                grid.weighted_pdf.push_back(kGLw[i] * 0.5 * h * pdf(x));
            }
        }
    }
    return grid;
}

} // namespace

double gamma_ln(double x) { return std::lgamma(x); }

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double bt = std::exp(gamma_ln(a + b) - gamma_ln(a) - gamma_ln(b) + a * std::log(x) +
                         b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865476); }

double f_distribution_sf(double f, double df1, double df2) {
    if (f <= 0) return 1.0;
    if (!std::isfinite(f)) return 0.0;
    return incomplete_beta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f));
}

double student_t_two_tailed(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double range_cdf(double r, int k) {
    if (r <= 0) return 0.0;
    if (k < 2) throw std::invalid_argument("range_cdf: k must be >= 2");
    // Condition on the maximum's position x: all others fall in [x-r, x].
    auto integrand = [r, k](double x) {
        double span = normal_cdf(x) - normal_cdf(x - r);
        return k * normal_pdf(x) * std::pow(span, k - 1);
    };
    return gauss_legendre(integrand, -8.0, 8.0, 32);
}

double studentized_range_cdf(double q, int k, double df) {
    if (q <= 0) return 0.0;
    if (df < 1) throw std::invalid_argument("studentized_range_cdf: df must be >= 1");
    ChiGrid grid = make_chi_grid(df);
    double total = 0;
    for (std::size_t i = 0; i < grid.s.size(); ++i)
        total += grid.weighted_pdf[i] * range_cdf(q * grid.s[i], k);
    return total;
}

double studentized_range_quantile(double alpha, int k, double df) {
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("studentized_range_quantile: alpha must be in (0,1)");
    if (df < 1) throw std::invalid_argument("studentized_range_quantile: df must be >= 1");
    ChiGrid grid = make_chi_grid(df);
    auto cdf = [&](double q) {
        double total = 0;
        for (std::size_t i = 0; i < grid.s.size(); ++i)
            total += grid.weighted_pdf[i] * range_cdf(q * grid.s[i], k);
        return total;
    };
    double target = 1.0 - alpha;
    double lo = 1e-6, hi = 4.0;
    while (cdf(hi) < target && hi < 1e4) hi *= 2.0;
    for (int iter = 0; iter < 80 && hi - lo > 1e-7; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 3) throw std::invalid_argument("pearson: need at least 3 observations");
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) return std::nullopt; // constant input
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    std::vector<double> rx = average_ranks(x), ry = average_ranks(y);
    return pearson(rx, ry);
}

double percentile_rank(std::span<const double> values, double focal) {
    if (values.empty()) throw std::invalid_argument("percentile_rank: empty values");
    std::size_t below = 0, equal = 0;
    for (double v : values) {
        if (v < focal) ++below;
        else if (v == focal) ++equal;
    }
    return 100.0 * (static_cast<double>(below) + 0.5 * static_cast<double>(equal)) /
           static_cast<double>(values.size());
}

AnovaResult anova_tukey(const std::vector<std::vector<double>>& groups, double alpha,
                        PostHoc posthoc) {
    const std::size_t k = groups.size();
    if (k < 2) throw std::invalid_argument("anova: need at least 2 groups");
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("anova: alpha must be in (0,1)");

    AnovaResult res;
    res.group_count = k;
    res.alpha = alpha;
    res.posthoc = posthoc;
    res.group_means.resize(k);
    res.group_sizes.resize(k);

    double grand_sum = 0;
    std::size_t n = 0;
    for (std::size_t g = 0; g < k; ++g) {
        if (groups[g].size() < 2)
            throw std::invalid_argument("anova: every group needs at least 2 observations");
        double s = 0;
        for (double v : groups[g]) s += v;
        res.group_sizes[g] = groups[g].size();
        res.group_means[g] = s / static_cast<double>(groups[g].size());
        grand_sum += s;
        n += groups[g].size();
    }
    res.observation_count = n;
    res.df_between = k - 1;
    res.df_within = n - k;
    double grand_mean = grand_sum / static_cast<double>(n);

    double ss_between = 0, ss_within = 0;
    for (std::size_t g = 0; g < k; ++g) {
        double dm = res.group_means[g] - grand_mean;
        ss_between += static_cast<double>(res.group_sizes[g]) * dm * dm;
        for (double v : groups[g]) {
            double d = v - res.group_means[g];
            ss_within += d * d;
        }
    }

    double ms_between = ss_between / static_cast<double>(res.df_between);
    res.ms_within = ss_within / static_cast<double>(res.df_within);

    if (res.ms_within == 0) {
        res.degenerate_within = true;
        res.f_statistic = ss_between > 0 ? std::numeric_limits<double>::infinity() : 0.0;
        res.p_value = ss_between > 0 ? 0.0 : 1.0;
    } else {
        res.f_statistic = ms_between / res.ms_within;
        res.p_value = f_distribution_sf(res.f_statistic, static_cast<double>(res.df_between),
                                        static_cast<double>(res.df_within));
    }

    if (posthoc == PostHoc::tukey && !res.degenerate_within)
        res.q_critical =
            studentized_range_quantile(alpha, static_cast<int>(k), static_cast<double>(res.df_within));

    const std::size_t n_pairs = k * (k - 1) / 2;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            PairComparison pc;
            pc.group_a = a;
            pc.group_b = b;
            pc.mean_difference = res.group_means[a] - res.group_means[b];
            double inv = 1.0 / static_cast<double>(res.group_sizes[a]) +
                         1.0 / static_cast<double>(res.group_sizes[b]);
            if (res.degenerate_within) {
                pc.significant = pc.mean_difference != 0;
                pc.q_statistic =
                    pc.significant ? std::numeric_limits<double>::infinity() : 0.0;
                pc.p_value = pc.significant ? 0.0 : 1.0;
            } else if (posthoc == PostHoc::tukey) {
                pc.standard_error = std::sqrt(0.5 * res.ms_within * inv); // Tukey-Kramer
                pc.q_statistic = std::fabs(pc.mean_difference) / pc.standard_error;
                pc.significant = pc.q_statistic > res.q_critical;
            } else {
                pc.standard_error = std::sqrt(res.ms_within * inv);
                double t = std::fabs(pc.mean_difference) / pc.standard_error;
                double p = student_t_two_tailed(t, static_cast<double>(res.df_within));
                pc.p_value = std::min(1.0, p * static_cast<double>(n_pairs));
                pc.significant = pc.p_value < alpha;
            }
            res.pairs.push_back(pc);
        }

    // Homogeneous subsets: maximal runs of mean-sorted groups with no
    // significant pair inside.
    auto significant = [&](std::size_t a, std::size_t b) {
        for (const PairComparison& pc : res.pairs)
            if ((pc.group_a == a && pc.group_b == b) || (pc.group_a == b && pc.group_b == a))
                return pc.significant;
        return false;
    };
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return res.group_means[a] < res.group_means[b]; });
    std::size_t prev_end = 0;
    for (std::size_t start = 0; start < k; ++start) {
        std::size_t end = start;
        bool ok = true;
        while (ok && end + 1 < k) {
            for (std::size_t t = start; t <= end; ++t)
                if (significant(order[t], order[end + 1])) {
                    ok = false;
                    break;
                }
            if (ok) ++end;
        }
        if (start == 0 || end + 1 > prev_end) {
            std::vector<std::size_t> subset;
            for (std::size_t t = start; t <= end; ++t) subset.push_back(order[t]);
            res.homogeneous_subsets.push_back(subset);
            prev_end = end + 1;
        }
        if (end + 1 >= k) break;
    }
    return res;
}

CorrelationMatrix correlation_matrix(const std::vector<std::string>& names,
                                     const std::vector<std::vector<double>>& columns) {
    if (names.size() != columns.size())
        throw std::invalid_argument("correlation_matrix: name/column count mismatch");
    const std::size_t m = names.size();
    CorrelationMatrix cm;
    cm.variables = names;
    cm.n = m > 0 ? columns[0].size() : 0;
    for (const auto& col : columns)
        if (col.size() != cm.n)
            throw std::invalid_argument("correlation_matrix: ragged columns");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    cm.pearson.assign(m, std::vector<double>(m, nan));
    cm.spearman.assign(m, std::vector<double>(m, nan));
    cm.pearson_sig.assign(m, std::vector<int>(m, 0));
    cm.spearman_sig.assign(m, std::vector<int>(m, 0));

    auto stars = [&](double r) {
        if (cm.n < 3 || std::isnan(r) || std::fabs(r) >= 1.0) return std::isnan(r) ? 0 : 2;
        double t = r * std::sqrt((static_cast<double>(cm.n) - 2.0) / (1.0 - r * r));
        double p = student_t_two_tailed(t, static_cast<double>(cm.n) - 2.0);
        if (p < 0.01) return 2;
        if (p < 0.05) return 1;
        return 0;
    };

    for (std::size_t i = 0; i < m; ++i) {
        cm.pearson[i][i] = 1.0;
        cm.spearman[i][i] = 1.0;
        if (cm.n < 3) continue; // too few observations, leave cells undefined
        for (std::size_t j = i + 1; j < m; ++j) {
            auto pr = pearson(columns[i], columns[j]);
            auto sr = spearman(columns[i], columns[j]);
            double pv = pr.value_or(nan), sv = sr.value_or(nan);
            cm.pearson[i][j] = cm.pearson[j][i] = pv;
            cm.spearman[i][j] = cm.spearman[j][i] = sv;
            int ps = std::isnan(pv) ? 0 : stars(pv);
            int ss = std::isnan(sv) ? 0 : stars(sv);
            cm.pearson_sig[i][j] = cm.pearson_sig[j][i] = ps;
            cm.spearman_sig[i][j] = cm.spearman_sig[j][i] = ss;
        }
    }
    return cm;
}

} // namespace raonet::stats
