#include "scorebench/toymodels.hpp"

#include <cmath>
#include <stdexcept>

namespace scorebench::toymodels {

std::vector<double> eval_grid() {
    std::vector<double> g(kGridPoints);
    const double n1 = static_cast<double>(kGridPoints - 1);
    for (std::size_t k = 0; k < kGridPoints; ++k) {
        g[k] = -3.0 + 6.0 * (static_cast<double>(k) / n1);
    }
    return g;
}

std::string model_name(ModelId id) {
    switch (id) {
        case ModelId::A: return "A";
        case ModelId::B: return "B";
        case ModelId::C: return "C";
        case ModelId::D: return "D";
        case ModelId::E: return "E";
    }
    return "?";
}

ModelId model_from_name(const std::string& name) {
    if (name == "A") return ModelId::A;
    if (name == "B") return ModelId::B;
    if (name == "C") return ModelId::C;
    if (name == "D") return ModelId::D;
    if (name == "E") return ModelId::E;
    throw std::invalid_argument("unknown toy model '" + name + "'");
}

std::vector<double> truth(const std::vector<double>& grid) {
    std::vector<double> g(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) g[k] = std::sin(grid[k]);
    return g;
}

std::vector<double> eval_model(ModelId id, const std::vector<double>& grid) {
    const std::size_t n = grid.size();
    std::vector<double> f(n);
    // middle 50 indices (475..524 on the 1000-point grid)
    const std::size_t pulse_lo = n > 50 ? (n - 50) / 2 : 0;
    const std::size_t pulse_hi = std::min(pulse_lo + 50, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = grid[k];
        switch (id) {
            case ModelId::A: f[k] = std::sin(x) + 0.1; break;
            case ModelId::B:
                f[k] = std::sin(x) + (k >= pulse_lo && k < pulse_hi ? 2.0 : 0.0);
                break;
            case ModelId::C: f[k] = 0.8 * std::sin(x); break;
            case ModelId::D: f[k] = std::sin(x + 0.2); break;
            case ModelId::E: f[k] = 0.0; break;
        }
    }
    return f;
}

std::vector<std::pair<std::string, std::vector<double>>> all_models(
    const std::vector<double>& grid) {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    out.reserve(kAllModels.size());
    for (ModelId id : kAllModels) out.emplace_back(model_name(id), eval_model(id, grid));
    return out;
}

}  // namespace scorebench::toymodels
