#include "nprank/umbrella.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace nprank {

double binomial_tail(std::size_t m2, std::size_t k, double alpha) {
    if (m2 == 0) throw std::invalid_argument("m2 must be positive");
    if (k < 1 || k > m2) throw std::invalid_argument("k must lie in [1, m2]");
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");

    const double n = static_cast<double>(m2);
    const double log_p = std::log1p(-alpha);  // log(1-alpha)
    const double log_q = std::log(alpha);
    const double log_n_fact = std::lgamma(n + 1.0);

    // Log-space terms, then a shifted compensated sum.
    std::vector<double> log_terms;
    log_terms.reserve(m2 - k + 1);
    double max_term = -std::numeric_limits<double>::infinity();
    for (std::size_t j = k; j <= m2; ++j) {
        const double dj = static_cast<double>(j);
        const double lt = log_n_fact - std::lgamma(dj + 1.0) - std::lgamma(n - dj + 1.0) +
                          dj * log_p + (n - dj) * log_q;
        log_terms.push_back(lt);
        max_term = std::max(max_term, lt);
    }
    double sum = 0, comp = 0;
    for (double lt : log_terms) {
        const double term = std::exp(lt - max_term);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::min(1.0, std::exp(max_term) * sum);
}

std::size_t min_left_out_size(double alpha, double delta1) {
    if (!(alpha > 0 && alpha < 1) || !(delta1 > 0 && delta1 < 1))
        throw std::invalid_argument("alpha and delta1 must lie in (0,1)");
    const double v = std::log(delta1) / std::log1p(-alpha);
    // Guard against ceil() pushing an exactly-integer ratio up one.
    const double r = std::round(v);
    if (std::abs(v - r) < 1e-9) return static_cast<std::size_t>(std::max(1.0, r));
    return static_cast<std::size_t>(std::max(1.0, std::ceil(v)));
}

std::size_t umbrella_order(std::size_t m2, double alpha, double delta1) {
    if (m2 < 1) throw std::invalid_argument("m2 must be positive");
    if (binomial_tail(m2, m2, alpha) > delta1)
        throw NoFiniteOrder("no finite order: m2 = " + std::to_string(m2) +
                            " is below the minimum left-out size " +
                            std::to_string(min_left_out_size(alpha, delta1)));
    // Tail is nonincreasing in k, so the smallest admissible k is found by
    // binary search.
    std::size_t lo = 1, hi = m2;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (binomial_tail(m2, mid, alpha) <= delta1)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

double np_threshold(std::span<const double> left_out_scores, std::size_t k_star) {
    const std::size_t m2 = left_out_scores.size();
    if (k_star < 1 || k_star > m2)
        throw OrderOutOfRange("k* = " + std::to_string(k_star) + " outside [1, " +
                              std::to_string(m2) + "]");
    std::vector<double> sorted(left_out_scores.begin(), left_out_scores.end());
    std::nth_element(sorted.begin(), sorted.begin() + (k_star - 1), sorted.end());
    return sorted[k_star - 1];
}

}  // namespace nprank
