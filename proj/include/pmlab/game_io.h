#ifndef PMLAB_GAME_IO_H_
#define PMLAB_GAME_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pmlab/analysis.h"
#include "pmlab/catalog.h"
#include "pmlab/game.h"

namespace pmlab {

// Game description document: {"name", "loss", "feedback"} plus an optional
// "opponents" array of {"label", "p"} objects.
struct GameDocument {
  Game game;
  std::vector<LabeledOpponent> opponents;
};

// Throws Error(kParseError) with line/column for malformed JSON or a wrong
// document shape, and the Game constructor's errors for invalid matrices.
GameDocument ParseGameDocument(std::string_view text);
Game ParseGame(std::string_view text);
// Adds Error(kParseError) for an unreadable file.
GameDocument LoadGameDocument(const std::string& path);

nlohmann::ordered_json GameToJson(const Game& game,
                                  const std::vector<LabeledOpponent>& opponents = {});
nlohmann::ordered_json SettingToJson(const NamedSetting& setting);

// Pairs, observer sets, vectors (canonical orientation), residuals and widths.
// Actions are 1-based.
nlohmann::ordered_json ObserverPlanToJson(const ObserverPlan& plan);

// Full analysis report including the echoed game under "game".
nlohmann::ordered_json AnalysisToJson(const GameAnalysis& analysis);

}  // namespace pmlab

#endif  // PMLAB_GAME_IO_H_
