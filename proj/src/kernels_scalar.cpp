#include "surprise/kernels.hpp"

#include <algorithm>

namespace surprise::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double l2sq_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void minmax_sums_scalar(const double* a, const double* b, std::size_t n,
                        double* sum_min, double* sum_max) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lo += std::min(a[i], b[i]);
        hi += std::max(a[i], b[i]);
    }
    *sum_min = lo;
    *sum_max = hi;
}

}  // namespace

const Table scalar_table = {dot_scalar, l2sq_scalar, minmax_sums_scalar};

}  // namespace surprise::kernels::detail
