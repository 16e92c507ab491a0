#pragma once

#include <string>

#include "gmm/game/fixture.hpp"

namespace testfx {

inline std::string path(const std::string& name) { return std::string(GMM_FIXTURE_DIR) + "/" + name; }

inline gmm::game::GameInstance default_game() {
  return gmm::game::load_fixture(path("partnership_default.json")).instantiate();
}

inline gmm::game::GameInstance top4_game() {
  return gmm::game::load_fixture(path("partnership_top4.json")).instantiate();
}

}  // namespace testfx
