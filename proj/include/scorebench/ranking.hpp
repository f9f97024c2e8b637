#pragma once

// Score-and-rank harness: sweeps a scoring-rule parameter over a model suite
// and ranks the models per parameter value (1 = best).

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scorebench/pointscore.hpp"

namespace scorebench::ranking {

using LabeledForecasts = std::vector<std::pair<std::string, std::vector<double>>>;

struct ScoreMatrix {
    std::vector<std::string> models;      // rows
    std::vector<double> params;           // columns (beta or p)
    std::vector<std::vector<double>> scores;  // [row][col], finite and >= 0

    double at(std::size_t row, std::size_t col) const { return scores[row][col]; }
};

/// Competition ranking per column: ties share the lower rank and skip.
struct RankTable {
    std::vector<std::string> models;
    std::vector<double> params;
    std::vector<std::vector<int>> ranks;  // [row][col]
};

/// Mean pointwise |f_i(x) - g(x)|^beta over the grid, per model per beta.
ScoreMatrix beta_sweep(const LabeledForecasts& models, const std::vector<double>& truth,
                       std::span<const double> betas);

RankTable rank(const ScoreMatrix& matrix);

struct BregmanSweepResult {
    ScoreMatrix scores;
    RankTable ranks;
};

/// Mean power_abs Bregman divergence D_p(truth, f_i) over the grid, per model
/// per exponent; every p must be > 1.
BregmanSweepResult bregman_sweep(const LabeledForecasts& models, const std::vector<double>& truth,
                                 std::span<const double> ps);

std::string to_csv(const ScoreMatrix& m);

/// Long-format rows model,param,score,rank.
std::string to_csv(const RankTable& t, const ScoreMatrix& m);

/// Aligned text, one row per model, one column per parameter value.
std::string to_text(const RankTable& t);

}  // namespace scorebench::ranking
