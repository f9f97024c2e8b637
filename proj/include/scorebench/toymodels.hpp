#pragma once

// The five synthetic forecasters evaluated against g(x) = sin(x) on a fixed
// 1000-point grid over [-3,3]. Model B adds a pulse of height 2 on exactly
// the middle 50 grid indices.

#include <array>
#include <string>
#include <vector>

namespace scorebench::toymodels {

inline constexpr std::size_t kGridPoints = 1000;

/// 1000 equally spaced points, first exactly -3, last exactly 3.
std::vector<double> eval_grid();

enum class ModelId { A, B, C, D, E };

inline constexpr std::array<ModelId, 5> kAllModels{ModelId::A, ModelId::B, ModelId::C,
                                                   ModelId::D, ModelId::E};

std::string model_name(ModelId id);
ModelId model_from_name(const std::string& name);

/// sin applied pointwise.
std::vector<double> truth(const std::vector<double>& grid);

/// Dirac forecast locations of the given model on the grid. The pulse window
/// of model B is the middle 50 indices of the grid.
std::vector<double> eval_model(ModelId id, const std::vector<double>& grid);

/// {label, forecasts} for all five models on the given grid.
std::vector<std::pair<std::string, std::vector<double>>> all_models(
    const std::vector<double>& grid);

}  // namespace scorebench::toymodels
