#include "scorebench/ranking.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "scorebench/textio.hpp"

namespace scorebench::ranking {

namespace {

void require_models(const LabeledForecasts& models, const std::vector<double>& truth) {
    if (models.empty()) throw std::invalid_argument("sweep: no models");
    for (const auto& [label, preds] : models) {
        if (preds.size() != truth.size()) {
            throw std::invalid_argument("sweep: model '" + label + "' length mismatch with truth");
        }
    }
}

double mean_pow_error(const std::vector<double>& preds, const std::vector<double>& truth,
                      double beta) {
    double acc = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        acc += std::pow(std::fabs(preds[k] - truth[k]), beta);
    }
    return acc / static_cast<double>(truth.size());
}

}  // namespace

ScoreMatrix beta_sweep(const LabeledForecasts& models, const std::vector<double>& truth,
                       std::span<const double> betas) {
    require_models(models, truth);
    if (betas.empty()) throw std::invalid_argument("beta_sweep: no beta values");
    for (double b : betas) {
        if (!(b > 0.0 && b <= 2.0)) throw std::domain_error("beta_sweep: beta must lie in (0,2]");
    }
    ScoreMatrix m;
    m.params.assign(betas.begin(), betas.end());
    for (const auto& [label, preds] : models) {
        m.models.push_back(label);
        std::vector<double> row;
        row.reserve(betas.size());
        for (double b : betas) row.push_back(mean_pow_error(preds, truth, b));
        m.scores.push_back(std::move(row));
    }
    return m;
}

RankTable rank(const ScoreMatrix& matrix) {
    const std::size_t rows = matrix.models.size();
    const std::size_t cols = matrix.params.size();
    for (const auto& row : matrix.scores) {
        for (double v : row) {
            if (!std::isfinite(v)) throw std::invalid_argument("rank: non-finite score");
        }
    }
    RankTable t;
    t.models = matrix.models;
    t.params = matrix.params;
    t.ranks.assign(rows, std::vector<int>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t i = 0; i < rows; ++i) {
            int below = 0;
            for (std::size_t j = 0; j < rows; ++j) {
                if (matrix.scores[j][c] < matrix.scores[i][c]) ++below;
            }
            t.ranks[i][c] = below + 1;  // ties share the lower rank and skip
        }
    }
    return t;
}

BregmanSweepResult bregman_sweep(const LabeledForecasts& models, const std::vector<double>& truth,
                                 std::span<const double> ps) {
    require_models(models, truth);
    if (ps.empty()) throw std::invalid_argument("bregman_sweep: no p values");
    ScoreMatrix m;
    m.params.assign(ps.begin(), ps.end());
    std::vector<pointscore::BregmanFamily> fams;
    for (double p : ps) fams.push_back(pointscore::BregmanFamily::power_abs(p));  // enforces p > 1
    for (const auto& [label, preds] : models) {
        m.models.push_back(label);
        std::vector<double> row;
        row.reserve(ps.size());
        for (const auto& fam : fams) {
            double acc = 0.0;
            for (std::size_t k = 0; k < truth.size(); ++k) {
                acc += pointscore::bregman(fam, truth[k], preds[k]);
            }
            row.push_back(acc / static_cast<double>(truth.size()));
        }
        m.scores.push_back(std::move(row));
    }
    return {m, rank(m)};
}

std::string to_csv(const ScoreMatrix& m) {
    std::ostringstream out;
    out << "model,param,score\n";
    for (std::size_t i = 0; i < m.models.size(); ++i) {
        for (std::size_t c = 0; c < m.params.size(); ++c) {
            out << m.models[i] << ',' << csv_num(m.params[c]) << ',' << csv_num(m.scores[i][c])
                << '\n';
        }
    }
    return out.str();
}

std::string to_csv(const RankTable& t, const ScoreMatrix& m) {
    std::ostringstream out;
    out << "model,param,score,rank\n";
    for (std::size_t i = 0; i < t.models.size(); ++i) {
        for (std::size_t c = 0; c < t.params.size(); ++c) {
            out << t.models[i] << ',' << csv_num(t.params[c]) << ',' << csv_num(m.scores[i][c])
                << ',' << t.ranks[i][c] << '\n';
        }
    }
    return out.str();
}

std::string to_text(const RankTable& t) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "model";
    for (double p : t.params) out << std::right << std::setw(12) << csv_num(p);
    out << '\n';
    for (std::size_t i = 0; i < t.models.size(); ++i) {
        out << std::left << std::setw(8) << t.models[i];
        for (std::size_t c = 0; c < t.params.size(); ++c) {
            out << std::right << std::setw(12) << t.ranks[i][c];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace scorebench::ranking
