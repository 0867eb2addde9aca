#include "surprise/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace surprise::kernels {

namespace {

using detail::Table;

Impl detect() {
#ifdef SURPRISE_HAVE_AVX2
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Impl::avx2;
#endif
    return Impl::scalar;
}

const Table* table_for(Impl impl) {
#ifdef SURPRISE_HAVE_AVX2
    if (impl == Impl::avx2) return &detail::avx2_table;
#endif
    (void)impl;
    return &detail::scalar_table;
}

struct State {
    Impl impl;
    const Table* table;
    State() : impl(detect()), table(table_for(impl)) {}
};

State& state() {
    static State s;
    return s;
}

}  // namespace

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::scalar: return "scalar";
        case Impl::avx2: return "avx2";
    }
    return "?";
}

bool impl_supported(Impl impl) {
    if (impl == Impl::scalar) return true;
#ifdef SURPRISE_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Impl active() { return state().impl; }

void force(Impl impl) {
    if (!impl_supported(impl))
        throw std::runtime_error(std::string("kernel variant not supported on this CPU: ") +
                                 impl_name(impl));
    state().impl = impl;
    state().table = table_for(impl);
}

double dot(const double* a, const double* b, std::size_t n) {
    return state().table->dot(a, b, n);
}

double l2sq(const double* a, const double* b, std::size_t n) {
    return state().table->l2sq(a, b, n);
}

void minmax_sums(const double* a, const double* b, std::size_t n,
                 double* sum_min, double* sum_max) {
    state().table->minmax_sums(a, b, n, sum_min, sum_max);
}

}  // namespace surprise::kernels
