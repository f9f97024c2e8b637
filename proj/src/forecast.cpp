#include "scorebench/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scorebench/kernels.hpp"

namespace scorebench {

namespace {
constexpr double kSumRejectTol = 1e-6;  // renormalize inside this, reject outside
}

SupportGrid::SupportGrid(std::vector<double> edges) : edges_(std::move(edges)) {
    if (edges_.size() < 2) throw std::invalid_argument("SupportGrid: need at least 2 edges");
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        if (!std::isfinite(edges_[i]) || !(edges_[i] < edges_[i + 1])) {
            throw std::invalid_argument("SupportGrid: edges must be finite and strictly increasing");
        }
    }
    if (!std::isfinite(edges_.back())) {
        throw std::invalid_argument("SupportGrid: edges must be finite and strictly increasing");
    }
    const std::size_t n = edges_.size() - 1;
    centers_.resize(n);
    widths_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        centers_[i] = 0.5 * (edges_[i] + edges_[i + 1]);
        widths_[i] = edges_[i + 1] - edges_[i];
    }
}

SupportGrid SupportGrid::uniform(double lo, double hi, std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("SupportGrid: bins must be >= 1");
    std::vector<double> edges(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        edges[i] = lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(bins));
    }
    edges.back() = hi;
    return SupportGrid(std::move(edges));
}

double SupportGrid::max_width() const {
    return *std::max_element(widths_.begin(), widths_.end());
}

std::size_t SupportGrid::bin_of(double x) const {
    if (!std::isfinite(x) || x < lo() || x > hi()) {
        throw std::domain_error("SupportGrid: value outside the grid support");
    }
    // upper_bound gives the first edge strictly greater than x
    auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    if (it == edges_.end()) return bins() - 1;  // x == hi
    const std::size_t idx = static_cast<std::size_t>(it - edges_.begin());
    return idx == 0 ? 0 : idx - 1;
}

GridPtr make_grid(std::vector<double> edges) {
    return std::make_shared<const SupportGrid>(std::move(edges));
}

GridPtr make_uniform_grid(double lo, double hi, std::size_t bins) {
    return std::make_shared<const SupportGrid>(SupportGrid::uniform(lo, hi, bins));
}

GriddedForecast::GriddedForecast(GridPtr grid, std::vector<double> pmf)
    : grid_(std::move(grid)), pmf_(std::move(pmf)) {
    if (!grid_) throw std::invalid_argument("GriddedForecast: null grid");
    if (pmf_.size() != grid_->bins()) {
        throw std::invalid_argument("GriddedForecast: pmf length must match the bin count");
    }
    double total = 0.0;
    for (double m : pmf_) {
        if (!std::isfinite(m) || m < 0.0) {
            throw std::invalid_argument("GriddedForecast: pmf entries must be finite and >= 0");
        }
        total += m;
    }
    if (std::fabs(total - 1.0) > kSumRejectTol) {
        throw std::invalid_argument("GriddedForecast: pmf must sum to 1 within 1e-6");
    }
    cdf_.resize(pmf_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < pmf_.size(); ++i) {
        pmf_[i] /= total;
        run += pmf_[i];
        cdf_[i] = run;
    }
    // dividing the running sums by the final one pins F at the last center to 1
    const double last = cdf_.back();
    for (double& v : cdf_) v /= last;
}

double cdf_at(const GriddedForecast& f, double x) {
    if (!std::isfinite(x)) throw std::domain_error("cdf_at: non-finite x");
    const auto& centers = f.grid().centers();
    auto it = std::upper_bound(centers.begin(), centers.end(), x);
    if (it == centers.begin()) return 0.0;
    return f.cdf()[static_cast<std::size_t>(it - centers.begin()) - 1];
}

double quantile(const GriddedForecast& f, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("quantile: tau must lie in (0,1)");
    const auto& cdf = f.cdf();
    auto it = std::lower_bound(cdf.begin(), cdf.end(), tau);
    // cdf.back() == 1 > tau, so it is always dereferenceable
    return f.grid().centers()[static_cast<std::size_t>(it - cdf.begin())];
}

double dist_mean(const GriddedForecast& f) {
    const auto& c = f.grid().centers();
    return kernels::active().dot(f.pmf().data(), c.data(), c.size());
}

double dist_median(const GriddedForecast& f) {
    return quantile(f, 0.5);
}

EnsembleForecast::EnsembleForecast(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw std::invalid_argument("EnsembleForecast: need at least one sample");
    for (double s : samples_) {
        if (!std::isfinite(s)) throw std::invalid_argument("EnsembleForecast: samples must be finite");
    }
}

MvEnsembleForecast::MvEnsembleForecast(std::vector<std::vector<double>> samples)
    : samples_(std::move(samples)) {
    if (samples_.empty()) {
        throw std::invalid_argument("MvEnsembleForecast: need at least one sample");
    }
    dim_ = samples_.front().size();
    if (dim_ == 0) throw std::invalid_argument("MvEnsembleForecast: dimension must be >= 1");
    for (const auto& row : samples_) {
        if (row.size() != dim_) {
            throw std::invalid_argument("MvEnsembleForecast: inconsistent sample dimensions");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("MvEnsembleForecast: samples must be finite");
            }
        }
    }
}

PointForecast::PointForecast(double location) : location_(location) {
    if (!std::isfinite(location_)) throw std::invalid_argument("PointForecast: non-finite location");
}

}  // namespace scorebench
