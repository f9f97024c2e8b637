#include "scorebench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "scorebench/rules.hpp"
#include "scorebench/textio.hpp"

namespace scorebench::bench {

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 4) {
        double acc = 0.0;
        for (double v : xs) acc += v;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

namespace {

double pairwise_mean(std::span<const double> xs) {
    return pairwise_sum(xs) / static_cast<double>(xs.size());
}

double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

double MetricSuite::by_name(const std::string& name) const {
    if (name == "mae") return mae;
    if (name == "rmse") return rmse;
    if (name == "r2") return r2;
    if (name == "crps") return crps;
    if (name == "crls") return crls;
    if (name == "is95") return is95;
    throw std::invalid_argument("unknown metric '" + name + "'");
}

MetricSuite evaluate(std::span<const ForecastRecord> records) {
    if (records.size() < 2) throw std::invalid_argument("evaluate: needs at least 2 records");
    const SupportGrid& grid = records.front().forecast.grid();
    for (const auto& r : records) {
        if (!(r.forecast.grid() == grid)) {
            throw std::invalid_argument(
                "evaluate: records must share one grid (CRLS comparability)");
        }
    }

    const std::size_t n = records.size();
    std::vector<double> abs_err(n), sq_err(n), crps_v(n), crls_v(n), is_v(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = records[i];
        abs_err[i] = std::fabs(dist_median(r.forecast) - r.y);
        const double me = dist_mean(r.forecast) - r.y;
        sq_err[i] = me * me;
        crps_v[i] = rules::crps_value(r.forecast, r.y);
        crls_v[i] = rules::crls_value(r.forecast, r.y);
        is_v[i] = rules::interval_score_value(r.forecast, r.y, 0.05);
        ys[i] = r.y;
    }

    const double y_mean = pairwise_mean(ys);
    std::vector<double> sq_tot(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = ys[i] - y_mean;
        sq_tot[i] = d * d;
    }
    const double ss_tot = pairwise_sum(sq_tot);
    if (ss_tot <= 0.0) throw std::domain_error("evaluate: zero target variance, R^2 undefined");

    MetricSuite m;
    m.mae = pairwise_mean(abs_err);
    m.rmse = std::sqrt(pairwise_mean(sq_err));
    m.r2 = 1.0 - pairwise_sum(sq_err) / ss_tot;
    m.crps = pairwise_mean(crps_v);
    m.crls = pairwise_mean(crls_v);
    m.is95 = pairwise_mean(is_v);
    return m;
}

PairedImprovement paired_improvement(std::span<const MetricSuite> baseline,
                                     std::span<const MetricSuite> candidate) {
    if (baseline.size() != candidate.size() || baseline.empty()) {
        throw std::invalid_argument("paired_improvement: unit lists must match and be nonempty");
    }
    PairedImprovement out;
    out.units = baseline.size();
    for (const char* name : kMetricNames) {
        const bool is_r2 = std::string_view(name) == "r2";
        MetricImprovement agg;
        std::vector<double> imps;
        for (std::size_t u = 0; u < baseline.size(); ++u) {
            const double b = baseline[u].by_name(name);
            const double c = candidate[u].by_name(name);
            double imp;      // reporting units (relative, or pp for R^2)
            double margin;   // value the win/loss threshold applies to
            if (is_r2) {
                margin = c - b;
                imp = 100.0 * margin;
            } else {
                if (std::fabs(b) < 1e-12) {
                    ++agg.flagged;
                    ++agg.ties;
                    continue;
                }
                margin = (b - c) / std::fabs(b);
                imp = margin;
            }
            imps.push_back(imp);
            if (margin > kWinLossEps) {
                ++agg.wins;
            } else if (margin < -kWinLossEps) {
                ++agg.losses;
            } else {
                ++agg.ties;
            }
        }
        if (!imps.empty()) {
            agg.mean = pairwise_mean(imps);
            agg.median = median_of(imps);
            if (imps.size() >= 2) {
                double ss = 0.0;
                for (double v : imps) ss += (v - agg.mean) * (v - agg.mean);
                agg.stddev = std::sqrt(ss / static_cast<double>(imps.size() - 1));
            }
        }
        out.per_metric.emplace(name, agg);
    }
    return out;
}

namespace {

GriddedForecast parse_forecast(GridPtr grid, std::vector<double> pmf, const std::string& where) {
    try {
        return GriddedForecast(std::move(grid), std::move(pmf));
    } catch (const std::exception& e) {
        throw std::runtime_error(where + ": " + e.what());
    }
}

std::vector<ForecastRecord> ingest_jsonl(const std::string& path) {
    auto in = open_in(path);
    std::vector<ForecastRecord> records;
    std::map<std::string, GridPtr> grids_by_id;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        try {
            ForecastRecord rec{j.at("id").get<std::string>(),
                               j.value("unit", std::string{}),
                               j.at("y").get<double>(),
                               [&] {
                                   GridPtr grid;
                                   if (j.contains("grid_edges")) {
                                       grid = make_grid(j["grid_edges"].get<std::vector<double>>());
                                   } else if (j.contains("grid_ref")) {
                                       const auto ref = j["grid_ref"].get<std::string>();
                                       auto it = grids_by_id.find(ref);
                                       if (it == grids_by_id.end()) {
                                           throw std::runtime_error("grid_ref '" + ref +
                                                                    "' does not name an earlier record");
                                       }
                                       grid = it->second;
                                   } else {
                                       throw std::runtime_error("record needs grid_edges or grid_ref");
                                   }
                                   return parse_forecast(std::move(grid),
                                                         j.at("pmf").get<std::vector<double>>(),
                                                         where);
                               }()};
            if (!std::isfinite(rec.y)) throw std::runtime_error("y must be finite");
            grids_by_id.emplace(rec.id, rec.forecast.grid_ptr());
            records.push_back(std::move(rec));
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(where + ": " + e.what());
        } catch (const std::runtime_error& e) {
            const std::string msg = e.what();
            throw std::runtime_error(msg.rfind(path, 0) == 0 ? msg : where + ": " + msg);
        }
    }
    if (records.empty()) throw std::runtime_error(path + ": no records");
    return records;
}

std::vector<double> split_numbers(const std::string& text, const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::runtime_error(where + ": bad number '" + tok + "'");
        }
    }
    return out;
}

std::vector<ForecastRecord> ingest_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    if (line.rfind("edges,", 0) != 0) {
        throw std::runtime_error(path + ":1: first line must be 'edges,<e0>,<e1>,...'");
    }
    const GridPtr grid = [&] {
        try {
            return make_grid(split_numbers(line.substr(6), path + ":1"));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":1: " + e.what());
        }
    }();

    std::vector<ForecastRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error(where + ": expected id,y,pmf...");
        const std::string id = line.substr(0, comma);
        auto nums = split_numbers(line.substr(comma + 1), where);
        if (nums.size() != grid->bins() + 1) {
            throw std::runtime_error(where + ": expected y plus " + std::to_string(grid->bins()) +
                                     " pmf values");
        }
        const double y = nums.front();
        if (!std::isfinite(y)) throw std::runtime_error(where + ": y must be finite");
        nums.erase(nums.begin());
        records.push_back(ForecastRecord{id, {}, y, parse_forecast(grid, std::move(nums), where)});
    }
    if (records.empty()) throw std::runtime_error(path + ": no records");
    return records;
}

}  // namespace

std::vector<ForecastRecord> ingest(const std::string& path, Format format) {
    return format == Format::jsonl ? ingest_jsonl(path) : ingest_csv(path);
}

std::vector<ForecastRecord> ingest(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
        return ingest(path, Format::csv);
    }
    return ingest(path, Format::jsonl);
}

void export_jsonl(std::span<const ForecastRecord> records, const std::string& path) {
    auto out = open_out(path);
    std::map<const SupportGrid*, std::string> seen_grids;
    for (const auto& rec : records) {
        nlohmann::json j{{"id", rec.id}, {"y", rec.y}, {"pmf", rec.forecast.pmf()}};
        if (!rec.unit.empty()) j["unit"] = rec.unit;
        const SupportGrid* g = rec.forecast.grid_ptr().get();
        auto it = seen_grids.find(g);
        if (it == seen_grids.end()) {
            j["grid_edges"] = g->edges();
            seen_grids.emplace(g, rec.id);
        } else {
            j["grid_ref"] = it->second;
        }
        out << j.dump() << '\n';
    }
}

void export_csv(std::span<const ForecastRecord> records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("export_csv: no records");
    const SupportGrid& grid = records.front().forecast.grid();
    for (const auto& r : records) {
        if (!(r.forecast.grid() == grid)) {
            throw std::invalid_argument("export_csv: records must share one grid");
        }
    }
    auto out = open_out(path);
    out << "edges";
    for (double e : grid.edges()) out << ',' << csv_num(e);
    out << '\n';
    for (const auto& r : records) {
        out << r.id << ',' << csv_num(r.y);
        for (double m : r.forecast.pmf()) out << ',' << csv_num(m);
        out << '\n';
    }
}

}  // namespace scorebench::bench
