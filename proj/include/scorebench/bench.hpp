#pragma once

// Benchmark evaluator: ingests predictive distributions with observations,
// computes the six-metric suite, and aggregates paired baseline-vs-candidate
// improvements with win/loss/tie counting.

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scorebench/forecast.hpp"

namespace scorebench::bench {

struct ForecastRecord {
    std::string id;
    std::string unit;  // grouping key for paired comparisons; may be empty
    double y = 0.0;
    GriddedForecast forecast;
};

/// MAE is taken on predictive medians, RMSE and R^2 on predictive means
/// (the functionals those metrics elicit); CRPS/CRLS/IS95 are per-record
/// averages. R^2 = 1 - SS_res/SS_tot.
struct MetricSuite {
    double mae = 0.0;
    double rmse = 0.0;
    double r2 = 0.0;
    double crps = 0.0;
    double crls = 0.0;
    double is95 = 0.0;

    double by_name(const std::string& name) const;
};

inline constexpr std::array<const char*, 6> kMetricNames{"mae", "rmse", "r2",
                                                         "crps", "crls", "is95"};

/// Needs >= 2 records, nonzero observation variance, and one shared grid
/// across records (CRLS values are only comparable on a shared support).
MetricSuite evaluate(std::span<const ForecastRecord> records);

struct MetricImprovement {
    double mean = 0.0;
    double stddev = 0.0;  // sample std, n-1 denominator
    double median = 0.0;
    std::size_t wins = 0, losses = 0, ties = 0;
    std::size_t flagged = 0;  // degenerate baselines, counted inside ties
};

struct PairedImprovement {
    std::size_t units = 0;
    std::map<std::string, MetricImprovement> per_metric;
};

inline constexpr double kWinLossEps = 1e-3;

/// Per-unit improvements first, aggregated after. Lower-is-better metrics
/// report (baseline - candidate)/|baseline|; R^2 reports (candidate -
/// baseline) x 100 percentage points, with the win/loss margin applied to
/// the raw difference. Positive always means better than baseline. Units
/// whose baseline magnitude is below 1e-12 on a relative metric are flagged
/// and tied.
PairedImprovement paired_improvement(std::span<const MetricSuite> baseline,
                                     std::span<const MetricSuite> candidate);

enum class Format { jsonl, csv };

/// JSONL: one record per line, {"id", "y", "pmf", "grid_edges"} with
/// optional "unit", or "grid_ref" naming an earlier record's id to share
/// its grid. CSV: first line `edges,<e0>,<e1>,...`, then `id,y,p0,p1,...`
/// rows over that shared grid. Errors carry the offending line number.
std::vector<ForecastRecord> ingest(const std::string& path, Format format);

/// Infers jsonl/csv from the file extension.
std::vector<ForecastRecord> ingest(const std::string& path);

/// Writes JSONL, emitting grid_edges once per distinct grid and grid_ref
/// afterwards, so a round trip preserves grid sharing.
void export_jsonl(std::span<const ForecastRecord> records, const std::string& path);

void export_csv(std::span<const ForecastRecord> records, const std::string& path);

/// Deterministic recursive pairwise sum (order-stable aggregation).
double pairwise_sum(std::span<const double> xs);

}  // namespace scorebench::bench
