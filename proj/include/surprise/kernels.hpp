#pragma once

#include <cstddef>

// Dense f64 inner loops behind the distance functions. A scalar reference
// implementation always exists; on x86-64 an AVX2+FMA variant is selected at
// startup when the CPU supports it. Both variants are equivalence-tested; a
// given machine always runs the same variant, so outputs stay reproducible.
namespace surprise::kernels {

enum class Impl { scalar, avx2 };

const char* impl_name(Impl impl);
bool impl_supported(Impl impl);

// Variant in use (auto-detected on first call).
Impl active();

// Override the auto-detected variant; throws std::runtime_error if the CPU
// lacks support. Intended for tests and benchmarking.
void force(Impl impl);

double dot(const double* a, const double* b, std::size_t n);

// sum_i (a_i - b_i)^2
double l2sq(const double* a, const double* b, std::size_t n);

// sum_i min(a_i, b_i) and sum_i max(a_i, b_i) in one pass.
void minmax_sums(const double* a, const double* b, std::size_t n,
                 double* sum_min, double* sum_max);

namespace detail {
struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    double (*l2sq)(const double*, const double*, std::size_t);
    void (*minmax_sums)(const double*, const double*, std::size_t, double*, double*);
};
extern const Table scalar_table;
#ifdef SURPRISE_HAVE_AVX2
extern const Table avx2_table;
#endif
}  // namespace detail

}  // namespace surprise::kernels
