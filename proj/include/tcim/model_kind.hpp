#pragma once

#include <string_view>

namespace tcim {

enum class ModelKind { kCoicm, kDistance, kWave };

inline constexpr ModelKind kAllModels[] = {ModelKind::kCoicm, ModelKind::kDistance, ModelKind::kWave};

// "coicm", "distance", "wave".
std::string_view model_name(ModelKind model);

// Inverse of model_name; throws DomainError for anything else.
ModelKind parse_model(std::string_view name);

}  // namespace tcim
