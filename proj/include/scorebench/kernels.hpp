#pragma once

// Arithmetic inner loops shared by the scoring rules and the trainer.
// Each operation has a scalar reference implementation; on x86-64 an
// AVX2+FMA variant is selected at startup when the CPU supports it.
// SCOREBENCH_KERNELS=scalar|avx2|auto overrides the selection.
//
// The pow-based entries stay scalar in every table: there is no vectorized
// pow worth the accuracy trade, and beta values other than 1 and 2 sit off
// the hot paths.

#include <cstddef>

namespace scorebench::kernels {

struct Ops {
    const char* name;

    double (*dot)(const double* a, const double* b, std::size_t n);

    // sum_{i<split} cdf[i]^2 * wdx[i]  +  sum_{i>=split} (cdf[i]-1)^2 * wdx[i]
    // where split is the first index whose bin center reaches the observation.
    double (*cdf_sq_distance)(const double* cdf, const double* wdx, std::size_t n,
                              std::size_t split);

    // Same sum; additionally writes the derivative 2*(cdf[i]-h_i)*wdx[i]
    // into grad (h_i = step indicator, 0 below split, 1 at and above).
    double (*cdf_sq_distance_grad)(const double* cdf, const double* wdx, std::size_t n,
                                   std::size_t split, double* grad);

    double (*abs_diff_sum)(const double* xs, std::size_t n, double y);   // sum |x_i - y|
    double (*sq_diff_sum)(const double* xs, std::size_t n, double y);    // sum (x_i - y)^2
    double (*pow_diff_sum)(const double* xs, std::size_t n, double y, double beta);

    double (*pairwise_abs_sum)(const double* xs, std::size_t n);   // sum_{i,j} |x_i - x_j|
    double (*pairwise_sq_sum)(const double* xs, std::size_t n);    // sum_{i,j} (x_i - x_j)^2
    double (*pairwise_pow_sum)(const double* xs, std::size_t n, double beta);
};

const Ops& scalar();

/// AVX2 table, or nullptr when the build or the CPU lacks support.
const Ops* avx2();

/// The table in use. Resolved once (cpuid + SCOREBENCH_KERNELS) on first call.
const Ops& active();

/// Force a backend ("scalar", "avx2", "auto"). Throws if unavailable.
void select(const char* name);

}  // namespace scorebench::kernels
