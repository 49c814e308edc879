#include "spinchaos/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace spinchaos::stats {

namespace {

std::vector<double> ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> result(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;  // average rank of ties
        for (std::size_t k = i; k <= j; ++k) result[order[k]] = rank;
        i = j + 1;
    }
    return result;
}

}  // namespace

double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean: empty input");
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double population_stddev(std::span<const double> values) {
    const double m = mean(values);
    double var = 0.0;
    for (const double v : values) var += (v - m) * (v - m);
    return std::sqrt(var / static_cast<double>(values.size()));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least 2 points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::invalid_argument("pearson: zero-variance input");
    }
    return sxy / std::sqrt(sxx * syy);
}

double spearman(std::span<const double> x, std::span<const double> y) {
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    return pearson(rx, ry);
}

double linear_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("linear_slope: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("linear_slope: need at least 2 points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_slope: degenerate x range");
    return sxy / sxx;
}

}  // namespace spinchaos::stats
