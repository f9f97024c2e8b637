#pragma once

// Data model for predictive distributions: a binned support, a PMF over it,
// sample ensembles, and point (Dirac) forecasts. Everything is immutable
// after construction and safe to share across threads.

#include <cstddef>
#include <memory>
#include <vector>

namespace scorebench {

/// Strictly increasing bin edges with derived centers and widths.
class SupportGrid {
public:
    explicit SupportGrid(std::vector<double> edges);

    static SupportGrid uniform(double lo, double hi, std::size_t bins);

    std::size_t bins() const { return centers_.size(); }
    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& centers() const { return centers_; }
    const std::vector<double>& widths() const { return widths_; }
    double lo() const { return edges_.front(); }
    double hi() const { return edges_.back(); }
    double max_width() const;

    /// Index of the bin containing x; bins are [e_i, e_{i+1}), the last one
    /// closed. Throws std::domain_error outside [lo, hi].
    std::size_t bin_of(double x) const;

    bool operator==(const SupportGrid& other) const { return edges_ == other.edges_; }

private:
    std::vector<double> edges_, centers_, widths_;
};

using GridPtr = std::shared_ptr<const SupportGrid>;

GridPtr make_grid(std::vector<double> edges);
GridPtr make_uniform_grid(double lo, double hi, std::size_t bins);

/// Probability mass per bin of a SupportGrid. The constructor renormalizes
/// totals within 1e-6 of one and rejects anything further off; the stored
/// CDF ends at exactly 1.
class GriddedForecast {
public:
    GriddedForecast(GridPtr grid, std::vector<double> pmf);

    const SupportGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& pmf() const { return pmf_; }

    /// F(x_i) at each bin center, nondecreasing, back() == 1.
    const std::vector<double>& cdf() const { return cdf_; }

private:
    GridPtr grid_;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

/// Step CDF with mass located at bin centers: sum of pmf over centers <= x.
/// 0 below the first center, exactly 1 at and beyond the last.
double cdf_at(const GriddedForecast& f, double x);

/// Smallest bin center whose CDF reaches tau (left-continuous generalized
/// inverse). tau must lie in (0,1).
double quantile(const GriddedForecast& f, double tau);

double dist_mean(const GriddedForecast& f);
double dist_median(const GriddedForecast& f);

/// Univariate sample ensemble, m >= 1 finite values.
class EnsembleForecast {
public:
    explicit EnsembleForecast(std::vector<double> samples);
    const std::vector<double>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }

private:
    std::vector<double> samples_;
};

/// Ensemble of d-vectors, stored row-major, all rows the same dimension.
class MvEnsembleForecast {
public:
    explicit MvEnsembleForecast(std::vector<std::vector<double>> samples);
    const std::vector<std::vector<double>>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    std::size_t dim() const { return dim_; }

private:
    std::vector<std::vector<double>> samples_;
    std::size_t dim_;
};

/// Dirac forecast at a single finite location.
class PointForecast {
public:
    explicit PointForecast(double location);
    double location() const { return location_; }

private:
    double location_;
};

}  // namespace scorebench
