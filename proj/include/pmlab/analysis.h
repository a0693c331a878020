#ifndef PMLAB_ANALYSIS_H_
#define PMLAB_ANALYSIS_H_

#include <optional>

#include "pmlab/game.h"
#include "pmlab/geometry.h"
#include "pmlab/observers.h"

namespace pmlab {

// Everything CBP needs from preprocessing, computed once per game and shared
// read-only by every run.
struct GameAnalysis {
  Game game;
  Tolerances tolerances;
  CellStructure cells;
  GameClass game_class = GameClass::kHopeless;
  bool globally_observable = false;
  // Absent when some neighbor pair cannot be spanned by all signal matrices.
  std::optional<ObserverPlan> plan;
};

GameAnalysis AnalyzeGame(Game game, const Tolerances& tol = {});

}  // namespace pmlab

#endif  // PMLAB_ANALYSIS_H_
