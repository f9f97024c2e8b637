#pragma once

// Distributional scoring rules over the forecast data model. All rules are
// negatively oriented: lower is better. Pure functions, safe for batch use.

#include <map>
#include <string>
#include <vector>

#include "scorebench/forecast.hpp"

namespace scorebench::rules {

enum class WeightKind { uniform, left_tail, right_tail };

const char* weight_name(WeightKind k);
WeightKind weight_from_name(const std::string& name);

/// Outcome-axis weight w(x) on [x_min, x_max]: 1 everywhere, (1-u)^2, or u^2
/// with u the normalized position of x.
struct TailWeight {
    WeightKind kind = WeightKind::uniform;
    double x_min = 0.0;
    double x_max = 1.0;

    TailWeight(WeightKind kind, double x_min, double x_max);
    double operator()(double x) const;
};

struct ScoreValue {
    double value = 0.0;
    std::string rule_id;
    std::map<std::string, double> params;
};

/// Discretized CRPS: sum over bin centers of (F(x_i) - 1{x_i >= y})^2 * dx_i.
ScoreValue crps(const GriddedForecast& f, double y);

/// CRPS with an outcome weight evaluated at bin centers; x_min/x_max are the
/// grid edges. The uniform kind reproduces crps() bit for bit.
ScoreValue weighted_crps(const GriddedForecast& f, double y, WeightKind w);

/// Support-truncated log-penalized CDF distance, discretized like the CRPS:
/// -sum log(clamp(|F(x_i) + 1{y <= x_i} - 1|, 1e-12, 1)) * dx_i.
/// The integrand is nonzero outside any finite support, so values are only
/// comparable between forecasts on a shared grid. y must lie inside the grid.
ScoreValue crls(const GriddedForecast& f, double y);

/// Central (1-alpha) prediction-interval score.
ScoreValue interval_score(const GriddedForecast& f, double y, double alpha);

/// Negative log of the predictive density mass/width at y's bin. A zero-mass
/// bin yields +infinity.
ScoreValue log_score(const GriddedForecast& f, double y);

/// Sample-based energy score for beta in (0,2]:
/// (1/m) sum|x_i-y|^beta - (1/(2m^2)) sum_{i,j}|x_i-x_j|^beta.
/// The plug-in double sum is intentionally the biased estimator; the
/// unbiased m(m-1) variant is not used. Propriety is not strict at beta = 2.
ScoreValue energy_score(const EnsembleForecast& f, double y, double beta);

/// Point-mass case: |location - y|^beta exactly.
ScoreValue energy_score(const PointForecast& f, double y, double beta);

/// Multivariate energy score with Euclidean norms; reduces to energy_score
/// at d = 1.
ScoreValue energy_score_mv(const MvEnsembleForecast& f, const std::vector<double>& y,
                           double beta);

/// Variogram score of order p with a symmetric nonnegative weight matrix.
ScoreValue variogram_score(const MvEnsembleForecast& f, const std::vector<double>& y, double p,
                           const std::vector<std::vector<double>>& weights);

/// Default weights: 1 off the diagonal, 0 on it.
ScoreValue variogram_score(const MvEnsembleForecast& f, const std::vector<double>& y, double p);

// Plain-double paths used by the batch evaluators; the ScoreValue wrappers
// above return exactly these numbers.
double crps_value(const GriddedForecast& f, double y);
double weighted_crps_value(const GriddedForecast& f, double y, WeightKind w);
double crls_value(const GriddedForecast& f, double y);
double interval_score_value(const GriddedForecast& f, double y, double alpha);
double log_score_value(const GriddedForecast& f, double y);

/// w(center_i) * width_i for every bin; the shared precomputation for the
/// weighted-CRPS family (uniform gives back the widths unchanged).
std::vector<double> weighted_widths(const SupportGrid& grid, WeightKind w);

inline constexpr double kCrlsClampFloor = 1e-12;

}  // namespace scorebench::rules
