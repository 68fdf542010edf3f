#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace latred {

enum class ReferenceCdf { kUniform01, kStdNormal };

std::string to_string(ReferenceCdf ref);

double reference_cdf(ReferenceCdf ref, double x);

/// Kolmogorov-Smirnov distance sup_x |F_n(x) - F(x)|. The samples are copied
/// and sorted; requires at least two samples.
double ks_statistic(std::span<const double> samples, ReferenceCdf ref);

/// Asymptotic P[sqrt(N) D_N > x] (Kolmogorov distribution survival function).
double kolmogorov_survival(double x);

/// Pearson chi-squared statistic against expected counts.
double chi_squared_statistic(std::span<const std::uint64_t> observed,
                             std::span<const double> expected);

/// Upper-tail p-value of the chi-squared distribution with dof degrees of
/// freedom.
double chi_squared_pvalue(double statistic, double dof);

/// Half the L1 distance between two probability vectors.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace latred
