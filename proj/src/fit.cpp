#include "scorebench/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "scorebench/kernels.hpp"
#include "scorebench/textio.hpp"

namespace scorebench::fit {

std::string TrainRule::id() const {
    switch (kind) {
        case Kind::crps: return "crps";
        case Kind::crls: return "crls";
        case Kind::log_score: return "log_score";
        case Kind::wcrps:
            switch (weight) {
                case rules::WeightKind::uniform: return "wcrps-uniform";
                case rules::WeightKind::left_tail: return "wcrps-left";
                case rules::WeightKind::right_tail: return "wcrps-right";
            }
    }
    return "?";
}

TrainRule TrainRule::parse(const std::string& text) {
    if (text == "crps") return {Kind::crps, rules::WeightKind::uniform};
    if (text == "crls") return {Kind::crls, rules::WeightKind::uniform};
    if (text == "log_score" || text == "logscore") return {Kind::log_score, rules::WeightKind::uniform};
    if (text == "wcrps-uniform") return {Kind::wcrps, rules::WeightKind::uniform};
    if (text == "wcrps-left") return {Kind::wcrps, rules::WeightKind::left_tail};
    if (text == "wcrps-right") return {Kind::wcrps, rules::WeightKind::right_tail};
    throw std::invalid_argument("unknown training rule '" + text + "'");
}

ModelShape ModelShape::from_data(std::span<const double> xs, std::span<const double> ys,
                                 std::size_t x_bins, std::size_t y_bins, double y_margin) {
    if (xs.empty() || xs.size() != ys.size()) {
        throw std::invalid_argument("ModelShape::from_data: bad data shape");
    }
    const auto [x_lo, x_hi] = std::minmax_element(xs.begin(), xs.end());
    const auto [y_lo, y_hi] = std::minmax_element(ys.begin(), ys.end());
    ModelShape shape;
    const SupportGrid xg = SupportGrid::uniform(*x_lo, *x_hi, x_bins);
    shape.x_edges = xg.edges();
    shape.y_grid = make_uniform_grid(*y_lo - y_margin, *y_hi + y_margin, y_bins);
    return shape;
}

CondHistModel::CondHistModel(std::vector<double> x_edges, GridPtr y_grid,
                             std::vector<double> logits)
    : x_grid_(std::move(x_edges)), y_grid_(std::move(y_grid)), logits_(std::move(logits)) {
    if (!y_grid_) throw std::invalid_argument("CondHistModel: null y grid");
    if (logits_.size() != x_grid_.bins() * y_grid_->bins()) {
        throw std::invalid_argument("CondHistModel: logits size must be x_bins * y_bins");
    }
    for (double z : logits_) {
        if (!std::isfinite(z)) throw std::invalid_argument("CondHistModel: non-finite logit");
    }
}

namespace {

void softmax_row(const double* z, std::size_t n, double* p) {
    double zmax = z[0];
    for (std::size_t i = 1; i < n; ++i) zmax = std::max(zmax, z[i]);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = std::exp(z[i] - zmax);
        total += p[i];
    }
    for (std::size_t i = 0; i < n; ++i) p[i] /= total;
}

}  // namespace

std::vector<double> CondHistModel::row_pmf(std::size_t row) const {
    if (row >= x_bins()) throw std::out_of_range("CondHistModel::row_pmf");
    const std::size_t ky = y_bins();
    std::vector<double> p(ky);
    softmax_row(logits_.data() + row * ky, ky, p.data());
    return p;
}

GriddedForecast CondHistModel::predict(double x) const {
    return GriddedForecast(y_grid_, row_pmf(x_bin_of(x)));
}

namespace {

// Precomputed training problem: records grouped by x-bin, per-record split
// (first y-bin center at or above y) for the CDF rules or the containing
// y-bin for the log score.
struct Problem {
    std::size_t kx = 0, ky = 0;
    TrainRule rule;
    std::vector<double> wdx;     // weighted widths (CDF rules) or plain widths
    std::vector<double> widths;  // y-bin widths (log score)
    std::vector<std::vector<std::size_t>> row_records;  // record indices per x-bin
    std::vector<std::size_t> split;  // per record
    std::size_t n = 0;

    // scratch, sized ky
    mutable std::vector<double> p, cdf, grad_f, grad_p;

    Problem(std::span<const double> xs, std::span<const double> ys, const SupportGrid& x_grid,
            const SupportGrid& y_grid, const TrainRule& rule_)
        : kx(x_grid.bins()), ky(y_grid.bins()), rule(rule_), n(xs.size()) {
        if (xs.size() != ys.size() || xs.empty()) {
            throw std::invalid_argument("fit: xs and ys must be nonempty and equally long");
        }
        const bool cdf_rule = rule.kind != TrainRule::Kind::log_score;
        wdx = rules::weighted_widths(
            y_grid, rule.kind == TrainRule::Kind::wcrps ? rule.weight : rules::WeightKind::uniform);
        widths = y_grid.widths();
        row_records.resize(kx);
        split.resize(n);
        const auto& centers = y_grid.centers();
        for (std::size_t r = 0; r < n; ++r) {
            if (!std::isfinite(ys[r]) || ys[r] < y_grid.lo() || ys[r] > y_grid.hi()) {
                throw std::domain_error("fit: observation outside the y grid support");
            }
            row_records[x_grid.bin_of(xs[r])].push_back(r);  // throws outside the x span
            split[r] = cdf_rule
                           ? static_cast<std::size_t>(
                                 std::lower_bound(centers.begin(), centers.end(), ys[r]) -
                                 centers.begin())
                           : y_grid.bin_of(ys[r]);
        }
        p.resize(ky);
        cdf.resize(ky);
        grad_f.resize(ky);
        grad_p.resize(ky);
    }

    // Mean per-record score; when grad is nonnull, also the gradient with
    // respect to the logits (same layout).
    double eval(const std::vector<double>& logits, std::vector<double>* grad) const {
        if (grad) std::fill(grad->begin(), grad->end(), 0.0);
        double loss = 0.0;
        const auto& ops = kernels::active();
        for (std::size_t row = 0; row < kx; ++row) {
            const auto& recs = row_records[row];
            if (recs.empty()) continue;
            softmax_row(logits.data() + row * ky, ky, p.data());
            double run = 0.0;
            for (std::size_t i = 0; i < ky; ++i) {
                run += p[i];
                cdf[i] = run;
            }
            std::fill(grad_p.begin(), grad_p.end(), 0.0);
            for (std::size_t rec : recs) {
                const std::size_t s = split[rec];
                switch (rule.kind) {
                    case TrainRule::Kind::crps:
                    case TrainRule::Kind::wcrps: {
                        if (grad) {
                            loss += ops.cdf_sq_distance_grad(cdf.data(), wdx.data(), ky, s,
                                                             grad_f.data());
                            // chain through the cumulative sum: dL/dp_j = sum_{i>=j} dL/dF_i
                            double suffix = 0.0;
                            for (std::size_t j = ky; j-- > 0;) {
                                suffix += grad_f[j];
                                grad_p[j] += suffix;
                            }
                        } else {
                            loss += ops.cdf_sq_distance(cdf.data(), wdx.data(), ky, s);
                        }
                        break;
                    }
                    case TrainRule::Kind::crls: {
                        double suffix = 0.0;  // built in the same reverse sweep
                        for (std::size_t j = ky; j-- > 0;) {
                            const double a = j < s ? 1.0 - cdf[j] : cdf[j];
                            if (a <= rules::kCrlsClampFloor) {
                                loss += -std::log(rules::kCrlsClampFloor) * widths[j];
                                // clamped flat: no gradient contribution
                            } else if (a >= 1.0) {
                                // clamped at one: log term is zero
                            } else {
                                loss += -std::log(a) * widths[j];
                                if (grad) suffix += (j < s ? widths[j] / a : -widths[j] / a);
                            }
                            if (grad) grad_p[j] += suffix;
                        }
                        break;
                    }
                    case TrainRule::Kind::log_score: {
                        const double mass = std::max(p[s], 1e-300);
                        loss += -std::log(mass / widths[s]);
                        if (grad) grad_p[s] += -1.0 / mass;
                        break;
                    }
                }
            }
            if (grad) {
                // softmax backprop: dL/dz_k = p_k (g_k - sum_j p_j g_j)
                const double inner = ops.dot(p.data(), grad_p.data(), ky);
                double* gz = grad->data() + row * ky;
                for (std::size_t k = 0; k < ky; ++k) {
                    gz[k] = p[k] * (grad_p[k] - inner) / static_cast<double>(n);
                }
            }
        }
        return loss / static_cast<double>(n);
    }
};

double l2_norm(const std::vector<double>& v) {
    return std::sqrt(kernels::active().dot(v.data(), v.data(), v.size()));
}

}  // namespace

FitResult fit_cond_hist(std::span<const double> xs, std::span<const double> ys,
                        const ModelShape& shape, const TrainRule& rule, const TrainConfig& cfg) {
    if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("fit: learning_rate must be > 0");
    if (cfg.max_epochs == 0) throw std::invalid_argument("fit: max_epochs must be >= 1");
    if (!shape.y_grid) throw std::invalid_argument("fit: shape has no y grid");

    const SupportGrid x_grid(shape.x_edges);
    const Problem prob(xs, ys, x_grid, *shape.y_grid, rule);
    const std::size_t dim = prob.kx * prob.ky;

    std::vector<double> z(dim, 0.0);  // uniform init
    std::vector<double> g(dim), z_next(dim);

    FitResult result{CondHistModel(shape.x_edges, shape.y_grid, z), {}, {}, 0, false};

    double loss = prob.eval(z, &g);
    if (!std::isfinite(loss) || !std::isfinite(l2_norm(g))) {
        throw std::runtime_error("fit: non-finite objective at initialization");
    }
    result.loss_trace.push_back(loss);
    result.grad_norm_trace.push_back(l2_norm(g));

    double step = cfg.learning_rate;
    std::size_t flat = 0;
    for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        bool accepted = false;
        double next_loss = loss;
        for (int halvings = 0; halvings < 40; ++halvings) {
            for (std::size_t i = 0; i < dim; ++i) z_next[i] = z[i] - step * g[i];
            next_loss = prob.eval(z_next, nullptr);
            if (!std::isfinite(next_loss)) {
                throw std::runtime_error("fit: non-finite objective at epoch " +
                                         std::to_string(epoch));
            }
            if (next_loss <= loss) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {  // no descent step representable: converged
            result.stopped_early = true;
            break;
        }
        flat = (loss - next_loss) < cfg.rel_tolerance * std::max(loss, 1e-300) ? flat + 1 : 0;
        z.swap(z_next);
        loss = next_loss;
        prob.eval(z, &g);
        const double gnorm = l2_norm(g);
        if (!std::isfinite(gnorm)) {
            throw std::runtime_error("fit: non-finite gradient at epoch " + std::to_string(epoch));
        }
        result.loss_trace.push_back(loss);
        result.grad_norm_trace.push_back(gnorm);
        result.epochs = epoch;
        step *= 1.5;
        if (flat >= cfg.patience) {
            result.stopped_early = true;
            break;
        }
    }

    result.model = CondHistModel(shape.x_edges, shape.y_grid, std::move(z));
    return result;
}

double empirical_score(const CondHistModel& model, std::span<const double> xs,
                       std::span<const double> ys, const TrainRule& rule) {
    const SupportGrid x_grid(model.x_edges());
    const Problem prob(xs, ys, x_grid, model.y_grid(), rule);
    return prob.eval(model.logits(), nullptr);
}

double grad_check(const CondHistModel& model, std::span<const double> xs,
                  std::span<const double> ys, const TrainRule& rule) {
    const SupportGrid x_grid(model.x_edges());
    const Problem prob(xs, ys, x_grid, model.y_grid(), rule);
    std::vector<double> analytic(model.logits().size());
    prob.eval(model.logits(), &analytic);

    constexpr double kStep = 1e-5;
    std::vector<double> z = model.logits();
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double keep = z[i];
        z[i] = keep + kStep;
        const double up = prob.eval(z, nullptr);
        z[i] = keep - kStep;
        const double down = prob.eval(z, nullptr);
        z[i] = keep;
        const double fd = (up - down) / (2.0 * kStep);
        const double denom = std::max({std::fabs(analytic[i]), std::fabs(fd), 1e-6});
        worst = std::max(worst, std::fabs(analytic[i] - fd) / denom);
    }
    return worst;
}

std::optional<double> BinnedPointFit::predict(double x) const {
    const SupportGrid g(x_edges);
    return values[g.bin_of(x)];
}

BinnedPointFit fit_point_binned(std::span<const double> xs, std::span<const double> ys,
                                std::vector<double> x_edges,
                                const std::function<double(double y, double c)>& loss,
                                double search_tol) {
    const SupportGrid x_grid(x_edges);
    if (xs.size() != ys.size() || xs.empty()) {
        throw std::invalid_argument("fit_point_binned: bad data shape");
    }
    std::vector<std::vector<double>> bin_ys(x_grid.bins());
    for (std::size_t r = 0; r < xs.size(); ++r) bin_ys[x_grid.bin_of(xs[r])].push_back(ys[r]);

    BinnedPointFit fitresult;
    fitresult.x_edges = std::move(x_edges);
    fitresult.values.resize(x_grid.bins());
    for (std::size_t b = 0; b < bin_ys.size(); ++b) {
        const auto& bucket = bin_ys[b];
        if (bucket.empty()) continue;  // flagged: predictor undefined here
        const auto [lo, hi] = std::minmax_element(bucket.begin(), bucket.end());
        pointscore::SearchBracket bracket{*lo - 1.0, *hi + 1.0, search_tol};
        fitresult.values[b] = pointscore::elicit_optimum(loss, bucket, bracket);
    }
    return fitresult;
}

BinnedPointFit fit_point_binned(std::span<const double> xs, std::span<const double> ys,
                                std::vector<double> x_edges, const pointscore::BregmanFamily& fam,
                                double search_tol) {
    // clamp the bracket into the family's mu domain
    const bool positive_mu = fam.kind == pointscore::BregmanFamily::Kind::power_shifted;
    const bool nonneg_mu = fam.kind == pointscore::BregmanFamily::Kind::poly_heavy;
    const SupportGrid x_grid(x_edges);
    if (xs.size() != ys.size() || xs.empty()) {
        throw std::invalid_argument("fit_point_binned: bad data shape");
    }
    std::vector<std::vector<double>> bin_ys(x_grid.bins());
    for (std::size_t r = 0; r < xs.size(); ++r) bin_ys[x_grid.bin_of(xs[r])].push_back(ys[r]);

    BinnedPointFit fitresult;
    fitresult.x_edges = std::move(x_edges);
    fitresult.values.resize(x_grid.bins());
    const auto loss = [&fam](double y, double c) { return pointscore::bregman(fam, y, c); };
    for (std::size_t b = 0; b < bin_ys.size(); ++b) {
        const auto& bucket = bin_ys[b];
        if (bucket.empty()) continue;
        const auto [lo, hi] = std::minmax_element(bucket.begin(), bucket.end());
        double lo_c = *lo - 1.0;
        if (positive_mu) lo_c = std::max(lo_c, 1e-9);
        if (nonneg_mu) lo_c = std::max(lo_c, 0.0);
        pointscore::SearchBracket bracket{lo_c, *hi + 1.0, search_tol};
        fitresult.values[b] = pointscore::elicit_optimum(loss, bucket, bracket);
    }
    return fitresult;
}

void save_json(const CondHistModel& model, const TrainRule& rule, const TrainConfig& cfg,
               const std::string& path) {
    std::vector<std::vector<double>> rows(model.x_bins());
    for (std::size_t r = 0; r < model.x_bins(); ++r) {
        rows[r].assign(model.logits().begin() + r * model.y_bins(),
                       model.logits().begin() + (r + 1) * model.y_bins());
    }
    nlohmann::json j{{"schema_version", 1},
                     {"x_edges", model.x_edges()},
                     {"y_edges", model.y_grid().edges()},
                     {"logits", rows},
                     {"rule", rule.id()},
                     {"config",
                      {{"learning_rate", cfg.learning_rate},
                       {"max_epochs", cfg.max_epochs},
                       {"patience", cfg.patience},
                       {"rel_tolerance", cfg.rel_tolerance},
                       {"seed", cfg.seed}}}};
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

SavedModel load_json(const std::string& path) {
    auto in = open_in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    try {
        auto x_edges = j.at("x_edges").get<std::vector<double>>();
        auto y_edges = j.at("y_edges").get<std::vector<double>>();
        auto rows = j.at("logits").get<std::vector<std::vector<double>>>();
        std::vector<double> logits;
        for (const auto& row : rows) logits.insert(logits.end(), row.begin(), row.end());
        TrainConfig cfg;
        const auto& jc = j.at("config");
        cfg.learning_rate = jc.at("learning_rate").get<double>();
        cfg.max_epochs = jc.at("max_epochs").get<std::size_t>();
        cfg.patience = jc.at("patience").get<std::size_t>();
        cfg.rel_tolerance = jc.at("rel_tolerance").get<double>();
        cfg.seed = jc.at("seed").get<std::uint64_t>();
        return SavedModel{
            CondHistModel(std::move(x_edges), make_grid(std::move(y_edges)), std::move(logits)),
            TrainRule::parse(j.at("rule").get<std::string>()), cfg};
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": bad model file: " + e.what());
    }
}

}  // namespace scorebench::fit
