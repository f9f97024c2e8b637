// AVX2+FMA variants of the hot kernels. Built only when the compiler accepts
// -mavx2 -mfma; the dispatcher additionally gates on cpuid at runtime.

#include "scorebench/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace scorebench::kernels {
namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

const __m256d kSignMask = _mm256_set1_pd(-0.0);

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return hsum(acc) + tail;
}

double cdf_sq_block(const double* cdf, const double* wdx, std::size_t begin, std::size_t end,
                    double shift) {
    const __m256d sh = _mm256_set1_pd(shift);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = begin;
    for (; i + 4 <= end; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(cdf + i), sh);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(d, d), _mm256_loadu_pd(wdx + i), acc);
    }
    double tail = 0.0;
    for (; i < end; ++i) {
        const double d = cdf[i] - shift;
        tail += d * d * wdx[i];
    }
    return hsum(acc) + tail;
}

double cdf_sq_distance_avx2(const double* cdf, const double* wdx, std::size_t n,
                            std::size_t split) {
    return cdf_sq_block(cdf, wdx, 0, split, 0.0) + cdf_sq_block(cdf, wdx, split, n, 1.0);
}

double cdf_sq_grad_block(const double* cdf, const double* wdx, std::size_t begin,
                         std::size_t end, double shift, double* grad) {
    const __m256d sh = _mm256_set1_pd(shift);
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = begin;
    for (; i + 4 <= end; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(cdf + i), sh);
        const __m256d w = _mm256_loadu_pd(wdx + i);
        const __m256d dw = _mm256_mul_pd(d, w);
        acc = _mm256_fmadd_pd(d, dw, acc);
        _mm256_storeu_pd(grad + i, _mm256_mul_pd(two, dw));
    }
    double tail = 0.0;
    for (; i < end; ++i) {
        const double d = cdf[i] - shift;
        tail += d * d * wdx[i];
        grad[i] = 2.0 * d * wdx[i];
    }
    return hsum(acc) + tail;
}

double cdf_sq_distance_grad_avx2(const double* cdf, const double* wdx, std::size_t n,
                                 std::size_t split, double* grad) {
    return cdf_sq_grad_block(cdf, wdx, 0, split, 0.0, grad) +
           cdf_sq_grad_block(cdf, wdx, split, n, 1.0, grad);
}

double abs_diff_sum_avx2(const double* xs, std::size_t n, double y) {
    const __m256d yy = _mm256_set1_pd(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xs + i), yy);
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(kSignMask, d));
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += std::fabs(xs[i] - y);
    return hsum(acc) + tail;
}

double sq_diff_sum_avx2(const double* xs, std::size_t n, double y) {
    const __m256d yy = _mm256_set1_pd(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xs + i), yy);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = xs[i] - y;
        tail += d * d;
    }
    return hsum(acc) + tail;
}

double pairwise_abs_sum_avx2(const double* xs, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        acc += abs_diff_sum_avx2(xs + i + 1, n - i - 1, xs[i]);
    }
    return 2.0 * acc;
}

double pairwise_sq_sum_avx2(const double* xs, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        acc += sq_diff_sum_avx2(xs + i + 1, n - i - 1, xs[i]);
    }
    return 2.0 * acc;
}

}  // namespace

const Ops* avx2_table() {
    static const Ops table{
        "avx2",
        dot_avx2,
        cdf_sq_distance_avx2,
        cdf_sq_distance_grad_avx2,
        abs_diff_sum_avx2,
        sq_diff_sum_avx2,
        scalar().pow_diff_sum,
        pairwise_abs_sum_avx2,
        pairwise_sq_sum_avx2,
        scalar().pairwise_pow_sum,
    };
    return &table;
}

}  // namespace scorebench::kernels
