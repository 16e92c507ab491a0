#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "gmm/combine/pool.hpp"
#include "gmm/core/gmm.hpp"

namespace gmm::combine {

using AnyModel = std::variant<Gmm, PooledModel>;

/// Form tag, graph, action counts, per-agent lambda and regret tables for
/// the regret form, and (optionally, always for table form) potentials.
nlohmann::json model_to_json(const Gmm& model, bool include_potentials = false);
nlohmann::json model_to_json(const PooledModel& pool, bool include_potentials = false);
AnyModel model_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const AnyModel& model, bool include_potentials = false);
AnyModel load_model(const std::filesystem::path& path);

double log_score(const AnyModel& model, const PlayDataset& data);

}  // namespace gmm::combine
