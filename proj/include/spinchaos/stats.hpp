// stats.hpp — small statistics helpers for sweep aggregation and checks.

#pragma once

#include <span>

namespace spinchaos::stats {

double mean(std::span<const double> values);
double population_stddev(std::span<const double> values);

// Pearson correlation coefficient; throws on length mismatch or a
// zero-variance input.
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation (average ranks for ties).
double spearman(std::span<const double> x, std::span<const double> y);

// Least-squares slope of y against x.
double linear_slope(std::span<const double> x, std::span<const double> y);

}  // namespace spinchaos::stats
