#include "gmm/game/fixture.hpp"

#include <fstream>
#include <set>

#include "gmm/util/error.hpp"

namespace gmm::game {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ValidationError(where + ": unknown key '" + it.key() + "'");
  }
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

GameInstance GameFixture::instantiate(std::optional<std::uint64_t> seed) const {
  const std::uint64_t s = seed.value_or(coeff_seed);
  if (pair_coeffs || flex_coeffs) {
    // Partial overrides: fill whatever is missing from the seeded draw.
    auto drawn = GameInstance::build(graph, companies, s);
    return GameInstance::with_coefficients(graph, companies,
                                           pair_coeffs.value_or(drawn.pair_coeffs()),
                                           flex_coeffs.value_or(drawn.flex_coeffs()), s);
  }
  return GameInstance::build(graph, companies, s);
}

GameFixture fixture_from_json(const json& j) {
  const std::string where = "fixture";
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  reject_unknown(j, {"description", "n", "edges", "companies", "coeff_seed", "pair_coeffs", "flex_coeffs"}, where);
  GameFixture f;
  if (j.contains("description")) f.description = field<std::string>(j, "description", where);
  const auto n = field<std::size_t>(j, "n", where);
  std::vector<Edge> edges;
  for (const auto& e : field<std::vector<std::vector<std::size_t>>>(j, "edges", where)) {
    if (e.size() != 2) throw ValidationError(where + ".edges: each edge is [i, j]");
    edges.emplace_back(e[0], e[1]);
  }
  f.graph = InteractionGraph(n, std::move(edges));
  const auto& comps = j.at("companies");
  if (!comps.is_array()) throw ValidationError(where + ".companies: expected an array");
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const std::string w = where + ".companies[" + std::to_string(k) + "]";
    const auto& c = comps[k];
    reject_unknown(c, {"id", "size", "sector", "change_coeff"}, w);
    f.companies.push_back({field<std::size_t>(c, "id", w), field<double>(c, "size", w),
                           parse_sector(field<std::string>(c, "sector", w)),
                           field<double>(c, "change_coeff", w)});
  }
  f.coeff_seed = field<std::uint64_t>(j, "coeff_seed", where);
  if (j.contains("pair_coeffs")) {
    std::map<Edge, double> pc;
    for (const auto& row : j.at("pair_coeffs")) {
      if (!row.is_array() || row.size() != 3) {
        throw ValidationError(where + ".pair_coeffs: each entry is [i, j, y]");
      }
      pc[{row[0].get<std::size_t>(), row[1].get<std::size_t>()}] = row[2].get<double>();
    }
    f.pair_coeffs = std::move(pc);
  }
  if (j.contains("flex_coeffs")) f.flex_coeffs = field<std::vector<double>>(j, "flex_coeffs", where);
  // Surface parameter and coefficient problems at load time.
  (void)f.instantiate();
  return f;
}

json fixture_to_json(const GameFixture& f) {
  json j;
  if (!f.description.empty()) j["description"] = f.description;
  j["n"] = f.graph.size();
  j["edges"] = json::array();
  for (const auto& [a, b] : f.graph.edges()) j["edges"].push_back({a, b});
  j["companies"] = json::array();
  for (const auto& c : f.companies) {
    j["companies"].push_back(
        {{"id", c.id}, {"size", c.size}, {"sector", to_string(c.sector)}, {"change_coeff", c.change_coeff}});
  }
  j["coeff_seed"] = f.coeff_seed;
  if (f.pair_coeffs) {
    j["pair_coeffs"] = json::array();
    for (const auto& [e, y] : *f.pair_coeffs) j["pair_coeffs"].push_back({e.first, e.second, y});
  }
  if (f.flex_coeffs) j["flex_coeffs"] = *f.flex_coeffs;
  return j;
}

GameFixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open fixture " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("fixture " + path.string() + ": " + e.what());
  }
  return fixture_from_json(j);
}

json instance_to_json(const GameInstance& inst, const std::string& description) {
  GameFixture f;
  f.description = description;
  f.graph = inst.graph();
  f.companies = inst.companies();
  f.coeff_seed = inst.seed();
  f.pair_coeffs = inst.pair_coeffs();
  f.flex_coeffs = inst.flex_coeffs();
  return fixture_to_json(f);
}

}  // namespace gmm::game
