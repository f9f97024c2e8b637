#include "scorebench/toygen.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "scorebench/rng.hpp"
#include "scorebench/textio.hpp"

namespace scorebench::toygen {

const char* signal_name(SignalKind k) {
    switch (k) {
        case SignalKind::dampened_oscillation: return "dampened_oscillation";
        case SignalKind::polynomial: return "polynomial";
        case SignalKind::rectified_trend: return "rectified_trend";
        case SignalKind::piecewise_sawtooth: return "piecewise_sawtooth";
    }
    return "?";
}

SignalKind signal_from_name(const std::string& name) {
    if (name == "dampened_oscillation") return SignalKind::dampened_oscillation;
    if (name == "polynomial") return SignalKind::polynomial;
    if (name == "rectified_trend") return SignalKind::rectified_trend;
    if (name == "piecewise_sawtooth") return SignalKind::piecewise_sawtooth;
    throw std::invalid_argument("unknown signal kind '" + name + "'");
}

const char* tail_name(TailSide t) {
    return t == TailSide::left ? "left" : "right";
}

TailSide tail_from_name(const std::string& name) {
    if (name == "left") return TailSide::left;
    if (name == "right") return TailSide::right;
    throw std::invalid_argument("unknown tail side '" + name + "'");
}

double signal_value(SignalKind kind, double x) {
    switch (kind) {
        case SignalKind::dampened_oscillation:
            return 3.0 * std::exp(-0.5 * std::fabs(x)) * std::sin(3.0 * x);
        case SignalKind::polynomial:
            return 0.1 * x * x * x - 0.5 * x;
        case SignalKind::rectified_trend:
            return x > 0.0 ? x : 0.0;
        case SignalKind::piecewise_sawtooth:
            // period 2, amplitude 2
            return 2.0 * (x / 2.0 - std::floor(x / 2.0));
    }
    throw std::logic_error("unreachable");
}

Dataset gen_factory(const FactoryConfig& cfg, std::uint64_t seed) {
    if (cfg.n == 0) throw std::invalid_argument("gen_factory: n must be >= 1");
    if (!(cfg.p_out >= 0.0 && cfg.p_out <= 1.0)) {
        throw std::invalid_argument("gen_factory: p_out must lie in [0,1]");
    }
    if (!(cfg.clean_sigma > 0.0) || !(cfg.outlier_sigma > 0.0)) {
        throw std::invalid_argument("gen_factory: sigmas must be > 0");
    }
    Rng rng(seed);
    Dataset d;
    d.x.resize(cfg.n);
    d.y.resize(cfg.n);
    const double out_mean =
        cfg.tail == TailSide::left ? -cfg.outlier_mean : cfg.outlier_mean;
    for (std::size_t i = 0; i < cfg.n; ++i) {
        const double x = rng.uniform(-4.0, 4.0);
        const bool outlier = rng.uniform01() < cfg.p_out;
        const double eps = outlier ? rng.normal(out_mean, cfg.outlier_sigma)
                                   : rng.normal(0.0, cfg.clean_sigma);
        d.x[i] = x;
        d.y[i] = signal_value(cfg.signal, x) + eps;
    }
    d.meta.generator = "factory";
    d.meta.seed = seed;
    d.meta.params = {{"n", static_cast<double>(cfg.n)},
                     {"p_out", cfg.p_out},
                     {"clean_sigma", cfg.clean_sigma},
                     {"outlier_mean", cfg.outlier_mean},
                     {"outlier_sigma", cfg.outlier_sigma}};
    d.meta.labels = {{"signal", signal_name(cfg.signal)}, {"tail", tail_name(cfg.tail)}};
    return d;
}

Dataset gen_cosine_exptail(std::size_t n, std::uint64_t seed, TailSide direction) {
    if (n == 0) throw std::invalid_argument("gen_cosine_exptail: n must be >= 1");
    Rng rng(seed);
    Dataset d;
    d.x.resize(n);
    d.y.resize(n);
    const double sgn = direction == TailSide::left ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(-4.0, 4.0);
        const double eps = x < 0.0 ? rng.normal(0.0, 0.2) : sgn * rng.exponential(0.5);
        d.x[i] = x;
        d.y[i] = std::cos(x) + eps;
    }
    d.meta.generator = "cosine_exptail";
    d.meta.seed = seed;
    d.meta.params = {{"n", static_cast<double>(n)}, {"rate", 0.5}, {"clean_sigma", 0.2}};
    d.meta.labels = {{"direction", tail_name(direction)}};
    return d;
}

Dataset gen_bimodal(std::size_t n, std::uint64_t seed, double gap, double sigma) {
    if (n == 0) throw std::invalid_argument("gen_bimodal: n must be >= 1");
    if (!(gap >= 0.0)) throw std::invalid_argument("gen_bimodal: gap must be >= 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("gen_bimodal: sigma must be > 0");
    Rng rng(seed);
    Dataset d;
    d.x.resize(n);
    d.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(-3.0, 3.0);
        const bool low = rng.uniform01() < 0.5;
        const double mode = 0.2 * x + (low ? -0.5 : 0.5) * gap;
        d.x[i] = x;
        d.y[i] = rng.normal(mode, sigma);
    }
    d.meta.generator = "bimodal";
    d.meta.seed = seed;
    d.meta.params = {{"n", static_cast<double>(n)}, {"gap", gap}, {"sigma", sigma}};
    return d;
}

GriddedForecast die_distribution() {
    auto grid = make_uniform_grid(0.5, 6.5, 6);
    return GriddedForecast(grid, std::vector<double>(6, 1.0 / 6.0));
}

void write_csv(const Dataset& data, const std::string& path) {
    auto out = open_out(path);
    out << "x,y\n";
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        out << csv_num(data.x[i]) << ',' << csv_num(data.y[i]) << '\n';
    }
}

void write_json(const Dataset& data, const std::string& path) {
    nlohmann::json meta{{"generator", data.meta.generator}, {"seed", data.meta.seed}};
    for (const auto& [k, v] : data.meta.params) meta["params"][k] = v;
    for (const auto& [k, v] : data.meta.labels) meta["labels"][k] = v;
    nlohmann::json j{{"schema_version", 1}, {"meta", meta}, {"x", data.x}, {"y", data.y}};
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

Dataset read_csv(const std::string& path) {
    auto in = open_in(path);
    Dataset d;
    d.meta.generator = "file:" + path;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.rfind("x,", 0) == 0) continue;  // header
        if (line.empty()) continue;
        std::istringstream ss(line);
        double x, y;
        char comma;
        if (!(ss >> x >> comma >> y) || comma != ',') {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'x,y'");
        }
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": non-finite value");
        }
        d.x.push_back(x);
        d.y.push_back(y);
    }
    if (d.x.empty()) throw std::runtime_error(path + ": no data rows");
    return d;
}

}  // namespace scorebench::toygen
