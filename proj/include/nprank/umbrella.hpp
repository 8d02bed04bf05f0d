#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace nprank {

struct NoFiniteOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OrderOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UmbrellaConfig {
    double alpha;   // type I error cap, in (0,1)
    double delta1;  // violation rate, in (0,1)
};

// P(Bin(m2, 1-alpha) >= k), accumulated in log space; nonincreasing in k.
double binomial_tail(std::size_t m2, std::size_t k, double alpha);

// Smallest m2 admitting a finite umbrella order: ceil(log d1 / log(1-a)).
std::size_t min_left_out_size(double alpha, double delta1);

// Smallest k in 1..m2 with binomial_tail(m2, k, alpha) <= delta1.
// Throws NoFiniteOrder when even k = m2 violates the bound.
std::size_t umbrella_order(std::size_t m2, double alpha, double delta1);

// k*-th smallest element (1-indexed) of the left-out class-0 scores.
double np_threshold(std::span<const double> left_out_scores, std::size_t k_star);

}  // namespace nprank
