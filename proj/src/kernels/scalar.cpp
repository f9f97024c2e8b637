#include "scorebench/kernels.hpp"

#include <cmath>

namespace scorebench::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double cdf_sq_distance_scalar(const double* cdf, const double* wdx, std::size_t n,
                              std::size_t split) {
    double acc = 0.0;
    for (std::size_t i = 0; i < split; ++i) acc += cdf[i] * cdf[i] * wdx[i];
    for (std::size_t i = split; i < n; ++i) {
        const double d = cdf[i] - 1.0;
        acc += d * d * wdx[i];
    }
    return acc;
}

double cdf_sq_distance_grad_scalar(const double* cdf, const double* wdx, std::size_t n,
                                   std::size_t split, double* grad) {
    double acc = 0.0;
    for (std::size_t i = 0; i < split; ++i) {
        acc += cdf[i] * cdf[i] * wdx[i];
        grad[i] = 2.0 * cdf[i] * wdx[i];
    }
    for (std::size_t i = split; i < n; ++i) {
        const double d = cdf[i] - 1.0;
        acc += d * d * wdx[i];
        grad[i] = 2.0 * d * wdx[i];
    }
    return acc;
}

double abs_diff_sum_scalar(const double* xs, std::size_t n, double y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(xs[i] - y);
    return acc;
}

double sq_diff_sum_scalar(const double* xs, std::size_t n, double y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = xs[i] - y;
        acc += d * d;
    }
    return acc;
}

double pow_diff_sum_scalar(const double* xs, std::size_t n, double y, double beta) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::fabs(xs[i] - y), beta);
    return acc;
}

// Pairwise sums run the strict upper triangle and double it; the diagonal is zero.
double pairwise_abs_sum_scalar(const double* xs, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double xi = xs[i];
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) row += std::fabs(xi - xs[j]);
        acc += row;
    }
    return 2.0 * acc;
}

double pairwise_sq_sum_scalar(const double* xs, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double xi = xs[i];
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = xi - xs[j];
            row += d * d;
        }
        acc += row;
    }
    return 2.0 * acc;
}

double pairwise_pow_sum_scalar(const double* xs, std::size_t n, double beta) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double xi = xs[i];
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) row += std::pow(std::fabs(xi - xs[j]), beta);
        acc += row;
    }
    return 2.0 * acc;
}

}  // namespace

const Ops& scalar() {
    static const Ops table{
        "scalar",
        dot_scalar,
        cdf_sq_distance_scalar,
        cdf_sq_distance_grad_scalar,
        abs_diff_sum_scalar,
        sq_diff_sum_scalar,
        pow_diff_sum_scalar,
        pairwise_abs_sum_scalar,
        pairwise_sq_sum_scalar,
        pairwise_pow_sum_scalar,
    };
    return table;
}

}  // namespace scorebench::kernels
