// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only entered when the
// dispatcher has confirmed CPU support. Each kernel keeps four independent
// accumulator lanes and reduces them in a fixed order, so results do not
// depend on anything but the input.

#include "surprise/kernels.hpp"

#ifdef SURPRISE_HAVE_AVX2

#include <immintrin.h>

namespace surprise::kernels::detail {

namespace {

inline double hsum(__m256d v) {
    // lane0 + lane1 + lane2 + lane3, left to right
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    double l0 = _mm_cvtsd_f64(lo);
    double l1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    double l2 = _mm_cvtsd_f64(hi);
    double l3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
    return ((l0 + l1) + l2) + l3;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return hsum(acc) + tail;
}

double l2sq_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        double d = a[i] - b[i];
        tail += d * d;
    }
    return hsum(acc) + tail;
}

void minmax_sums_avx2(const double* a, const double* b, std::size_t n,
                      double* sum_min, double* sum_max) {
    __m256d acc_min = _mm256_setzero_pd();
    __m256d acc_max = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc_min = _mm256_add_pd(acc_min, _mm256_min_pd(va, vb));
        acc_max = _mm256_add_pd(acc_max, _mm256_max_pd(va, vb));
    }
    double lo = hsum(acc_min), hi = hsum(acc_max);
    for (; i < n; ++i) {
        lo += a[i] < b[i] ? a[i] : b[i];
        hi += a[i] < b[i] ? b[i] : a[i];
    }
    *sum_min = lo;
    *sum_max = hi;
}

}  // namespace

const Table avx2_table = {dot_avx2, l2sq_avx2, minmax_sums_avx2};

}  // namespace surprise::kernels::detail

#endif  // SURPRISE_HAVE_AVX2
