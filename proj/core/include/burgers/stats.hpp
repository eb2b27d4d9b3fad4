#pragma once

#include <cstdint>
#include <vector>

namespace burgers {

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased

struct ConfidenceInterval {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool covers(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
};

// Percentile bootstrap CI for the mean.
ConfidenceInterval bootstrap_mean_ci(const std::vector<double>& samples,
                                     int resamples = 1000, double alpha = 0.05,
                                     std::uint64_t seed = 0x5eed);

// Normal-approximation CI for the mean.
ConfidenceInterval normal_mean_ci(const std::vector<double>& samples,
                                  double alpha = 0.05);

// Sample autocorrelation at the given lag with a +-z/sqrt(n) CI around it.
ConfidenceInterval lagged_correlation(const std::vector<double>& v, int lag,
                                      double alpha = 0.05);

// Anderson-Darling test of the fully specified standard normal
// (asymptotic p-value, Marsaglia's evaluation of the limit distribution).
double anderson_darling_normal_p(std::vector<double> samples);

// Upper tail of the chi-square distribution (regularized incomplete gamma).
double chi_square_sf(double stat, double dof);

// Pearson chi-square goodness-of-fit of observed counts against Poisson
// mean lambda (bins pooled so each expected count >= 5). Returns p-value.
double poisson_gof_p(const std::vector<int>& counts, double lambda);

}  // namespace burgers
