#include "burgers/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "burgers/rng.hpp"

namespace burgers {

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

ConfidenceInterval bootstrap_mean_ci(const std::vector<double>& samples,
                                     int resamples, double alpha,
                                     std::uint64_t seed) {
    ConfidenceInterval ci;
    ci.mean = mean(samples);
    if (samples.size() < 2) {
        ci.lo = ci.hi = ci.mean;
        return ci;
    }
    SplitMix64 g(seed);
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(resamples));
    const std::size_t n = samples.size();
    for (int r = 0; r < resamples; ++r) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += samples[g.next_u64() % n];
        means.push_back(s / static_cast<double>(n));
    }
    std::sort(means.begin(), means.end());
    auto at = [&](double q) {
        const double idx = q * static_cast<double>(means.size() - 1);
        return means[static_cast<std::size_t>(std::llround(idx))];
    };
    ci.lo = at(alpha / 2.0);
    ci.hi = at(1.0 - alpha / 2.0);
    return ci;
}

ConfidenceInterval normal_mean_ci(const std::vector<double>& samples,
                                  double alpha) {
    ConfidenceInterval ci;
    ci.mean = mean(samples);
    const double z = alpha == 0.05 ? 1.959963984540054 : 2.5758293035489004;
    const double se =
        std::sqrt(variance(samples) / std::max<std::size_t>(samples.size(), 1));
    ci.lo = ci.mean - z * se;
    ci.hi = ci.mean + z * se;
    return ci;
}

ConfidenceInterval lagged_correlation(const std::vector<double>& v, int lag,
                                      double alpha) {
    ConfidenceInterval ci;
    const std::size_t n = v.size();
    if (n <= static_cast<std::size_t>(lag) + 1) return ci;
    const double m = mean(v);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) den += (v[i] - m) * (v[i] - m);
    for (std::size_t i = 0; i + lag < n; ++i)
        num += (v[i] - m) * (v[i + lag] - m);
    const double r = den > 0.0 ? num / den : 0.0;
    const double z = alpha == 0.05 ? 1.959963984540054 : 2.5758293035489004;
    const double se = 1.0 / std::sqrt(static_cast<double>(n - lag));
    ci.mean = r;
    ci.lo = r - z * se;
    ci.hi = r + z * se;
    return ci;
}

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Marsaglia & Marsaglia (2004): asymptotic CDF of the A^2 statistic.
double ad_inf(double z) {
    if (z <= 0.0) return 0.0;
    if (z < 2.0) {
        return std::pow(z, -0.5) * std::exp(-1.2337141 / z) *
               (2.00012 +
                (0.247105 -
                 (0.0649821 - (0.0347962 - (0.0116720 - 0.00168691 * z) * z) * z) *
                     z) *
                    z);
    }
    return std::exp(-std::exp(
        1.0776 -
        (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) *
            z));
}

}  // namespace

double anderson_darling_normal_p(std::vector<double> samples) {
    const std::size_t n = samples.size();
    if (n < 3) return 1.0;
    std::sort(samples.begin(), samples.end());
    double a2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double u = std_normal_cdf(samples[i]);
        u = std::min(std::max(u, 1e-15), 1.0 - 1e-15);
        const double w = 2.0 * static_cast<double>(i) + 1.0;
        a2 += w * (std::log(u) + std::log1p(-std_normal_cdf(samples[n - 1 - i])));
    }
    a2 = -static_cast<double>(n) - a2 / static_cast<double>(n);
    return 1.0 - ad_inf(a2);
}

namespace {

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        // series for P(a,x)
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    // continued fraction for Q(a,x)
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_sf(double stat, double dof) {
    return gamma_q(dof / 2.0, stat / 2.0);
}

double poisson_gof_p(const std::vector<int>& counts, double lambda) {
    if (counts.empty()) return 1.0;
    const int kmax = *std::max_element(counts.begin(), counts.end());
    const auto n = static_cast<double>(counts.size());
    // Poisson pmf per bin, tail pooled into the last bin
    std::vector<double> expected;
    double pmf = std::exp(-lambda), cum = pmf;
    expected.push_back(n * pmf);
    for (int k = 1; k <= kmax; ++k) {
        pmf *= lambda / k;
        cum += pmf;
        expected.push_back(n * pmf);
    }
    expected.push_back(n * (1.0 - cum));  // k > kmax
    std::vector<double> observed(expected.size(), 0.0);
    for (int c : counts) observed[static_cast<std::size_t>(c)] += 1.0;

    // pool adjacent bins until each expected >= 5
    std::vector<double> eo, oo;
    double e = 0.0, o = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        e += expected[i];
        o += observed[i];
        if (e >= 5.0) {
            eo.push_back(e);
            oo.push_back(o);
            e = o = 0.0;
        }
    }
    if (e > 0.0 && !eo.empty()) {
        eo.back() += e;
        oo.back() += o;
    }
    if (eo.size() < 2) return 1.0;
    double stat = 0.0;
    for (std::size_t i = 0; i < eo.size(); ++i)
        stat += (oo[i] - eo[i]) * (oo[i] - eo[i]) / eo[i];
    return chi_square_sf(stat, static_cast<double>(eo.size() - 1));
}

}  // namespace burgers
