#pragma once

// Seeded synthetic data generators. Each generator documents its per-point
// draw order, so byte-identical replication only needs the raw Rng stream.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scorebench/forecast.hpp"

namespace scorebench::toygen {

enum class SignalKind { dampened_oscillation, polynomial, rectified_trend, piecewise_sawtooth };
enum class TailSide { left, right };

const char* signal_name(SignalKind k);
SignalKind signal_from_name(const std::string& name);
const char* tail_name(TailSide t);
TailSide tail_from_name(const std::string& name);

struct DatasetMeta {
    std::string generator;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
    std::map<std::string, std::string> labels;
};

struct Dataset {
    std::vector<double> x;
    std::vector<double> y;
    DatasetMeta meta;
};

// Signal shapes for the factory. These curve choices are local defaults; the
// claims under test live in the noise process, not the signal.
double signal_value(SignalKind kind, double x);

struct FactoryConfig {
    std::size_t n = 200;
    double p_out = 0.25;
    double clean_sigma = 0.2;
    double outlier_mean = 7.0;  // magnitude; the sign comes from tail
    double outlier_sigma = 1.5;
    SignalKind signal = SignalKind::dampened_oscillation;
    TailSide tail = TailSide::left;
};

/// x ~ U(-4,4); y = f(x) + eps, eps an outlier normal with probability p_out
/// and a clean N(0, clean_sigma^2) otherwise. Draw order per point: x, the
/// outlier coin, one normal (two raw draws) regardless of the branch.
Dataset gen_factory(const FactoryConfig& cfg, std::uint64_t seed);

/// x ~ U(-4,4); y = cos(x) + eps with eps ~ N(0, 0.2^2) for x < 0 and a
/// signed Exp(0.5) for x >= 0. Draw order per point: x, then two raw draws
/// for the normal branch or one for the exponential branch.
Dataset gen_cosine_exptail(std::size_t n, std::uint64_t seed, TailSide direction);

/// x ~ U(-3,3); y from an equal-weight mixture of N(0.2x - gap/2, sigma^2)
/// and N(0.2x + gap/2, sigma^2). Draw order per point: x, the component
/// coin (low for u < 0.5), one normal.
Dataset gen_bimodal(std::size_t n, std::uint64_t seed, double gap = 2.0, double sigma = 0.15);

/// Fair die: uniform mass 1/6 on centers 1..6.
GriddedForecast die_distribution();

std::string to_csv(const Dataset& data);
std::string to_json(const Dataset& data);
void write_csv(const Dataset& data, const std::string& path);
void write_json(const Dataset& data, const std::string& path);

/// Reads the two-column x,y CSV written by write_csv.
Dataset read_csv(const std::string& path);

}  // namespace scorebench::toygen
