#include "scorebench/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scorebench/kernels.hpp"

namespace scorebench::rules {

namespace {

void require_finite_obs(double y) {
    if (!std::isfinite(y)) throw std::domain_error("scoring rule: non-finite observation");
}

/// First bin index whose center reaches y; n when y is above every center.
std::size_t split_index(const SupportGrid& grid, double y) {
    const auto& c = grid.centers();
    return static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), y) - c.begin());
}

double pow_abs(double d, double beta) {
    if (beta == 1.0) return std::fabs(d);
    if (beta == 2.0) return d * d;
    return std::pow(std::fabs(d), beta);
}

void require_beta(double beta) {
    if (!(beta > 0.0 && beta <= 2.0)) {
        throw std::domain_error("energy score: beta must lie in (0,2]");
    }
}

}  // namespace

const char* weight_name(WeightKind k) {
    switch (k) {
        case WeightKind::uniform: return "uniform";
        case WeightKind::left_tail: return "left_tail";
        case WeightKind::right_tail: return "right_tail";
    }
    return "?";
}

WeightKind weight_from_name(const std::string& name) {
    if (name == "uniform") return WeightKind::uniform;
    if (name == "left_tail" || name == "left") return WeightKind::left_tail;
    if (name == "right_tail" || name == "right") return WeightKind::right_tail;
    throw std::invalid_argument("unknown weight kind '" + name + "'");
}

TailWeight::TailWeight(WeightKind kind_, double x_min_, double x_max_)
    : kind(kind_), x_min(x_min_), x_max(x_max_) {
    if (!(x_min < x_max)) throw std::invalid_argument("TailWeight: x_min must be < x_max");
}

double TailWeight::operator()(double x) const {
    if (kind == WeightKind::uniform) return 1.0;
    const double u = (x - x_min) / (x_max - x_min);
    if (kind == WeightKind::left_tail) return (1.0 - u) * (1.0 - u);
    return u * u;
}

std::vector<double> weighted_widths(const SupportGrid& grid, WeightKind w) {
    const auto& centers = grid.centers();
    const auto& widths = grid.widths();
    std::vector<double> out(widths.size());
    const TailWeight weight(w, grid.lo(), grid.hi());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = weight(centers[i]) * widths[i];
    return out;
}

double weighted_crps_value(const GriddedForecast& f, double y, WeightKind w) {
    require_finite_obs(y);
    const auto wdx = weighted_widths(f.grid(), w);
    const std::size_t split = split_index(f.grid(), y);
    return kernels::active().cdf_sq_distance(f.cdf().data(), wdx.data(), wdx.size(), split);
}

double crps_value(const GriddedForecast& f, double y) {
    return weighted_crps_value(f, y, WeightKind::uniform);
}

double crls_value(const GriddedForecast& f, double y) {
    if (!std::isfinite(y) || y < f.grid().lo() || y > f.grid().hi()) {
        throw std::domain_error("crls: observation outside the grid support");
    }
    const auto& cdf = f.cdf();
    const auto& widths = f.grid().widths();
    const std::size_t split = split_index(f.grid(), y);
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        // probability assigned to the realized side of x_i
        const double a = i < split ? 1.0 - cdf[i] : cdf[i];
        acc -= std::log(std::clamp(a, kCrlsClampFloor, 1.0)) * widths[i];
    }
    return acc;
}

double interval_score_value(const GriddedForecast& f, double y, double alpha) {
    require_finite_obs(y);
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("interval_score: alpha must lie in (0,1)");
    }
    const double l = quantile(f, alpha / 2.0);
    const double u = quantile(f, 1.0 - alpha / 2.0);
    double s = u - l;
    if (y < l) s += (2.0 / alpha) * (l - y);
    if (y > u) s += (2.0 / alpha) * (y - u);
    return s;
}

double log_score_value(const GriddedForecast& f, double y) {
    const std::size_t bin = f.grid().bin_of(y);  // throws outside the support
    const double mass = f.pmf()[bin];
    if (mass == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(mass / f.grid().widths()[bin]);
}

ScoreValue crps(const GriddedForecast& f, double y) {
    return {crps_value(f, y), "crps", {}};
}

ScoreValue weighted_crps(const GriddedForecast& f, double y, WeightKind w) {
    return {weighted_crps_value(f, y, w), "wcrps", {{"weight", static_cast<double>(w)}}};
}

ScoreValue crls(const GriddedForecast& f, double y) {
    return {crls_value(f, y), "crls", {}};
}

ScoreValue interval_score(const GriddedForecast& f, double y, double alpha) {
    return {interval_score_value(f, y, alpha), "interval_score", {{"alpha", alpha}}};
}

ScoreValue log_score(const GriddedForecast& f, double y) {
    return {log_score_value(f, y), "log_score", {}};
}

ScoreValue energy_score(const EnsembleForecast& f, double y, double beta) {
    require_finite_obs(y);
    require_beta(beta);
    const auto& xs = f.samples();
    const std::size_t m = xs.size();
    const auto& ops = kernels::active();
    double term_obs, term_pair;
    if (beta == 1.0) {
        term_obs = ops.abs_diff_sum(xs.data(), m, y);
        term_pair = ops.pairwise_abs_sum(xs.data(), m);
    } else if (beta == 2.0) {
        term_obs = ops.sq_diff_sum(xs.data(), m, y);
        term_pair = ops.pairwise_sq_sum(xs.data(), m);
    } else {
        term_obs = ops.pow_diff_sum(xs.data(), m, y, beta);
        term_pair = ops.pairwise_pow_sum(xs.data(), m, beta);
    }
    const double md = static_cast<double>(m);
    const double value = term_obs / md - term_pair / (2.0 * md * md);
    return {value, "energy_score", {{"beta", beta}}};
}

ScoreValue energy_score(const PointForecast& f, double y, double beta) {
    require_finite_obs(y);
    require_beta(beta);
    return {pow_abs(f.location() - y, beta), "energy_score", {{"beta", beta}}};
}

namespace {

// ||a - b||^beta from the squared norm, avoiding the sqrt at beta = 2
double norm_pow(double sq_norm, double beta) {
    if (beta == 2.0) return sq_norm;
    if (beta == 1.0) return std::sqrt(sq_norm);
    return std::pow(sq_norm, 0.5 * beta);
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

}  // namespace

ScoreValue energy_score_mv(const MvEnsembleForecast& f, const std::vector<double>& y,
                           double beta) {
    require_beta(beta);
    if (y.size() != f.dim()) {
        throw std::domain_error("energy_score_mv: observation dimension mismatch");
    }
    for (double v : y) require_finite_obs(v);
    const auto& xs = f.samples();
    const std::size_t m = xs.size();
    double term_obs = 0.0;
    for (const auto& x : xs) term_obs += norm_pow(sq_dist(x, y), beta);
    double upper_pair = 0.0;  // strict upper triangle; the full double sum is twice this
    for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) upper_pair += norm_pow(sq_dist(xs[i], xs[j]), beta);
    }
    const double md = static_cast<double>(m);
    const double value = term_obs / md - upper_pair / (md * md);
    return {value, "energy_score_mv", {{"beta", beta}, {"d", static_cast<double>(f.dim())}}};
}

ScoreValue variogram_score(const MvEnsembleForecast& f, const std::vector<double>& y, double p,
                           const std::vector<std::vector<double>>& weights) {
    if (!(p > 0.0)) throw std::domain_error("variogram_score: p must be > 0");
    const std::size_t d = f.dim();
    if (d < 2) throw std::domain_error("variogram_score: needs dimension >= 2");
    if (y.size() != d) throw std::domain_error("variogram_score: observation dimension mismatch");
    for (double v : y) require_finite_obs(v);
    if (weights.size() != d) throw std::domain_error("variogram_score: weight matrix shape mismatch");
    for (std::size_t j = 0; j < d; ++j) {
        if (weights[j].size() != d) {
            throw std::domain_error("variogram_score: weight matrix shape mismatch");
        }
        for (std::size_t k = 0; k < d; ++k) {
            if (!(weights[j][k] >= 0.0)) {
                throw std::domain_error("variogram_score: weights must be nonnegative");
            }
            if (weights[j][k] != weights[k][j]) {
                throw std::domain_error("variogram_score: weights must be symmetric");
            }
        }
    }
    const auto& xs = f.samples();
    const double m = static_cast<double>(xs.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            if (weights[j][k] == 0.0) continue;
            double mean_pair = 0.0;
            for (const auto& x : xs) mean_pair += std::pow(std::fabs(x[j] - x[k]), p);
            mean_pair /= m;
            const double g = std::pow(std::fabs(y[j] - y[k]), p) - mean_pair;
            acc += weights[j][k] * g * g;
        }
    }
    return {acc, "variogram_score", {{"p", p}}};
}

ScoreValue variogram_score(const MvEnsembleForecast& f, const std::vector<double>& y, double p) {
    const std::size_t d = f.dim();
    std::vector<std::vector<double>> w(d, std::vector<double>(d, 1.0));
    for (std::size_t j = 0; j < d; ++j) w[j][j] = 0.0;
    return variogram_score(f, y, p, w);
}

}  // namespace scorebench::rules
