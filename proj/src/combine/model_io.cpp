#include "gmm/combine/model_io.hpp"

#include <fstream>

#include "gmm/core/inference.hpp"
#include "gmm/util/error.hpp"

namespace gmm::combine {

using nlohmann::json;

namespace {

json tables_to_json(const std::vector<NeighborhoodTable>& tables) {
  json out = json::array();
  for (const auto& t : tables) out.push_back({{"owner", t.owner}, {"scope", t.scope}, {"values", t.values}});
  return out;
}

std::vector<NeighborhoodTable> tables_from_json(const json& j) {
  std::vector<NeighborhoodTable> out;
  for (const auto& t : j) {
    out.push_back({t.at("owner").get<AgentId>(), t.at("scope").get<std::vector<AgentId>>(),
                   t.at("values").get<std::vector<double>>()});
  }
  return out;
}

Gmm gmm_from_json(const json& j) {
  const auto form = j.at("form").get<std::string>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<AgentId>(), e.at(1).get<AgentId>());
  InteractionGraph graph(j.at("n").get<std::size_t>(), std::move(edges));
  ProfileSpace space(j.at("action_counts").get<std::vector<int>>());
  if (form == "regret") {
    return Gmm::from_regrets(std::move(graph), std::move(space), tables_from_json(j.at("regret_tables")),
                             j.at("lambda").get<std::vector<double>>());
  }
  if (form == "table") {
    return Gmm::from_potentials(std::move(graph), std::move(space), tables_from_json(j.at("potentials")));
  }
  throw ValidationError("model file: unknown form '" + form + "'");
}

}  // namespace

json model_to_json(const Gmm& model, bool include_potentials) {
  json j;
  j["form"] = to_string(model.form());
  j["n"] = model.agents();
  j["edges"] = json::array();
  for (const auto& [a, b] : model.graph().edges()) j["edges"].push_back({a, b});
  j["action_counts"] = std::vector<int>(model.space().action_counts().begin(), model.space().action_counts().end());
  if (model.is_regret_form()) {
    j["lambda"] = std::vector<double>(model.lambda().begin(), model.lambda().end());
    j["regret_tables"] = tables_to_json(model.regrets());
  }
  if (include_potentials || !model.is_regret_form()) j["potentials"] = tables_to_json(model.potentials());
  return j;
}

json model_to_json(const PooledModel& pool, bool include_potentials) {
  return {{"form", "pool"},
          {"weight", pool.weight()},
          {"g1", model_to_json(pool.first(), include_potentials)},
          {"g2", model_to_json(pool.second(), include_potentials)}};
}

AnyModel model_from_json(const json& j) {
  try {
    if (j.at("form").get<std::string>() == "pool") {
      return PooledModel(gmm_from_json(j.at("g1")), gmm_from_json(j.at("g2")), j.at("weight").get<double>());
    }
    return gmm_from_json(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const AnyModel& model, bool include_potentials) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  std::visit([&](const auto& m) { out << model_to_json(m, include_potentials).dump(2) << '\n'; }, model);
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("model " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

double log_score(const AnyModel& model, const PlayDataset& data) {
  return std::visit([&](const auto& m) { return log_score(m, data); }, model);
}

}  // namespace gmm::combine
