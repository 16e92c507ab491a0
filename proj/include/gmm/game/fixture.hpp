#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmm/game/partnership.hpp"

namespace gmm::game {

/// Game fixture file contents (JSON): `n`, `edges`, `companies`,
/// `coeff_seed`, optional `pair_coeffs` ([[i, j, y], ...]) and `flex_coeffs`
/// overriding the seeded draw, and an optional free-text `description`.
struct GameFixture {
  std::string description;
  InteractionGraph graph;
  std::vector<CompanyParams> companies;
  std::uint64_t coeff_seed = 0;
  std::optional<std::map<Edge, double>> pair_coeffs;
  std::optional<std::vector<double>> flex_coeffs;

  /// Instance with the fixture's coefficients (explicit ones if present,
  /// otherwise drawn from `seed`, defaulting to coeff_seed).
  GameInstance instantiate(std::optional<std::uint64_t> seed = std::nullopt) const;
};

GameFixture fixture_from_json(const nlohmann::json& j);
nlohmann::json fixture_to_json(const GameFixture& f);
GameFixture load_fixture(const std::filesystem::path& path);

/// Instance serialized with every coefficient explicit.
nlohmann::json instance_to_json(const GameInstance& inst, const std::string& description = {});

}  // namespace gmm::game
