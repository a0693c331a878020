#include "pmlab/analysis.h"

#include <utility>

#include "pmlab/error.h"

namespace pmlab {

GameAnalysis AnalyzeGame(Game game, const Tolerances& tol) {
  GameAnalysis out{std::move(game), tol, {}, GameClass::kHopeless, false, std::nullopt};
  out.cells = AnalyzeCells(out.game, tol);
  out.globally_observable = IsGloballyObservable(out.game, tol);
  out.game_class = ClassifyGame(out.game, out.cells, tol);
  try {
    out.plan = BuildObserverPlan(out.game, out.cells, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotGloballyObservable) throw;
  }
  return out;
}

}  // namespace pmlab
