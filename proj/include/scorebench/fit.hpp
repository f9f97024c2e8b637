#pragma once

// Optimum score estimation at desk scale: a conditional-histogram model
// trained by full-batch gradient descent on any differentiable rule, and
// binned point regressors elicited under arbitrary scoring functions.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scorebench/forecast.hpp"
#include "scorebench/pointscore.hpp"
#include "scorebench/rules.hpp"

namespace scorebench::fit {

struct TrainRule {
    enum class Kind { crps, wcrps, crls, log_score };

    Kind kind = Kind::crps;
    rules::WeightKind weight = rules::WeightKind::uniform;  // wcrps only

    std::string id() const;

    /// Accepts crps, wcrps-left, wcrps-right, wcrps-uniform, crls, log_score.
    static TrainRule parse(const std::string& text);
};

struct TrainConfig {
    // Initial line-search step. Each epoch backtracks (halves) until the
    // objective does not increase, then regrows by 1.5x, so the trace is
    // strictly nonincreasing.
    double learning_rate = 1.0;
    std::size_t max_epochs = 600;
    // Stop after this many consecutive epochs whose relative improvement is
    // below rel_tolerance.
    std::size_t patience = 12;
    double rel_tolerance = 1e-4;
    // Recorded into saved models; the optimizer itself is deterministic.
    std::uint64_t seed = 0;
};

struct ModelShape {
    std::vector<double> x_edges;  // K_x + 1, strictly increasing
    GridPtr y_grid;

    /// Equal-width bins over the data span, the y side padded by margin.
    static ModelShape from_data(std::span<const double> xs, std::span<const double> ys,
                                std::size_t x_bins, std::size_t y_bins, double y_margin = 0.5);
};

/// Per-x-bin histogram over a shared y grid, parameterized by logits
/// (row-major K_x x K_y); each row's PMF is the softmax of its logits.
class CondHistModel {
public:
    CondHistModel(std::vector<double> x_edges, GridPtr y_grid, std::vector<double> logits);

    std::size_t x_bins() const { return x_grid_.bins(); }
    std::size_t y_bins() const { return y_grid_->bins(); }
    const std::vector<double>& x_edges() const { return x_grid_.edges(); }
    const SupportGrid& y_grid() const { return *y_grid_; }
    const GridPtr& y_grid_ptr() const { return y_grid_; }
    const std::vector<double>& logits() const { return logits_; }

    std::size_t x_bin_of(double x) const { return x_grid_.bin_of(x); }
    std::vector<double> row_pmf(std::size_t row) const;
    GriddedForecast predict(double x) const;

private:
    SupportGrid x_grid_;
    GridPtr y_grid_;
    std::vector<double> logits_;
};

struct FitResult {
    CondHistModel model;
    // Training objective per epoch; [0] is the uniform-logits value and the
    // sequence never increases.
    std::vector<double> loss_trace;
    // L2 norm of the full gradient after each accepted epoch (diagnostic).
    std::vector<double> grad_norm_trace;
    std::size_t epochs = 0;
    bool stopped_early = false;
};

/// Full-batch gradient descent on the mean per-record score, from uniform
/// logits, with analytic gradients through the CDF (crps/wcrps/crls) or the
/// bin mass (log_score). Throws std::domain_error when any x or y falls
/// outside the shape, std::runtime_error (with the epoch) on a non-finite
/// objective or gradient.
FitResult fit_cond_hist(std::span<const double> xs, std::span<const double> ys,
                        const ModelShape& shape, const TrainRule& rule, const TrainConfig& cfg);

/// Mean per-record score of the model on the data under the rule.
double empirical_score(const CondHistModel& model, std::span<const double> xs,
                       std::span<const double> ys, const TrainRule& rule);

/// Max relative mismatch between the analytic gradient and central finite
/// differences (step 1e-5) over all logits. Intended for small instances.
double grad_check(const CondHistModel& model, std::span<const double> xs,
                  std::span<const double> ys, const TrainRule& rule);

struct BinnedPointFit {
    std::vector<double> x_edges;
    std::vector<std::optional<double>> values;  // nullopt marks an empty bin

    /// Fitted constant for x's bin; nullopt when that bin saw no data.
    std::optional<double> predict(double x) const;
};

/// Per-x-bin constant minimizing the empirical risk of the given loss,
/// found by golden-section search over the bin's [min y - 1, max y + 1].
BinnedPointFit fit_point_binned(std::span<const double> xs, std::span<const double> ys,
                                std::vector<double> x_edges,
                                const std::function<double(double y, double c)>& loss,
                                double search_tol = 1e-8);

/// Bregman variant; the bracket is clamped to the family's mu domain.
BinnedPointFit fit_point_binned(std::span<const double> xs, std::span<const double> ys,
                                std::vector<double> x_edges, const pointscore::BregmanFamily& fam,
                                double search_tol = 1e-8);

struct SavedModel {
    CondHistModel model;
    TrainRule rule;
    TrainConfig config;
};

void save_json(const CondHistModel& model, const TrainRule& rule, const TrainConfig& cfg,
               const std::string& path);
SavedModel load_json(const std::string& path);

}  // namespace scorebench::fit
