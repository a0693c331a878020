#include "pmlab/cbp.h"

#include <cmath>
#include <mutex>
#include <utility>

#include "pmlab/error.h"

namespace pmlab {

double DefaultSchedule(double alpha, double t) {
  return std::cbrt(alpha) * std::pow(t, 2.0 / 3.0) * std::cbrt(std::log(t));
}

double LossDifferenceEstimate(const PairObservers& observers,
                              std::span<const std::int64_t> counts,
                              std::span<const Eigen::VectorXd> cumulative) {
  double delta = 0.0;
  for (const ObserverEntry& e : observers.observers) {
    delta += e.vector.dot(cumulative[e.action]) / static_cast<double>(counts[e.action]);
  }
  return delta;
}

double ConfidenceBound(const PairObservers& observers,
                       std::span<const std::int64_t> counts, double alpha, double t) {
  const double alpha_log_t = alpha * std::log(t);
  double c = 0.0;
  for (const ObserverEntry& e : observers.observers) {
    const double norm = e.vector.size() ? e.vector.cwiseAbs().maxCoeff() : 0.0;
    c += norm * std::sqrt(alpha_log_t / static_cast<double>(counts[e.action]));
  }
  return c;
}

HalfSpaceArray HalfSpaces(std::span<const double> delta,
                          std::span<const double> confidence) {
  if (delta.size() != confidence.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "estimate and confidence sizes differ");
  }
  HalfSpaceArray hs(delta.size(), 0);
  for (std::size_t p = 0; p < delta.size(); ++p) {
    if (std::abs(delta[p]) >= confidence[p]) {
      hs[p] = static_cast<std::int8_t>((delta[p] > 0.0) - (delta[p] < 0.0));
    }
  }
  return hs;
}

Polytope GetPolytope(const Game& game, const CellStructure& cells,
                     const HalfSpaceArray& half_spaces, const Tolerances& tol) {
  if (half_spaces.size() != cells.neighbors.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "half-space array does not match the neighbor pairs");
  }
  LinearConstraintSystem open(game.num_outcomes());
  bool any = false;
  for (std::size_t p = 0; p < half_spaces.size(); ++p) {
    if (half_spaces[p] == 0) continue;
    const ActionPair& pair = cells.neighbors[p];
    open.AddStrict(static_cast<double>(half_spaces[p]) *
                       (game.LossVector(pair.first) -
                                     game.LossVector(pair.second)),
                   0.0);
    any = true;
  }
  if (!any) return {cells.pareto, cells.neighbors};

  auto meets = [&](LinearConstraintSystem region) {
    for (const auto& c : open.strict()) region.AddStrict(c.coeffs, c.rhs);
    return StrictlySatisfiable(region, tol.strict);
  };
  Polytope out;
  for (Action i : cells.pareto) {
    if (meets(CellConstraints(game, i))) out.actions.push_back(i);
  }
  for (const ActionPair& pair : cells.neighbors) {
    if (meets(BoundaryConstraints(game, pair.first, pair.second))) {
      out.pairs.push_back(pair);
    }
  }
  return out;
}

PolytopeCache::PolytopeCache(std::shared_ptr<const GameAnalysis> analysis)
    : analysis_(std::move(analysis)) {}

std::size_t PolytopeCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

PolytopeCache::Entry PolytopeCache::Compute(const HalfSpaceArray& half_spaces) const {
  const GameAnalysis& a = *analysis_;
  Entry entry;
  entry.polytope = GetPolytope(a.game, a.cells, half_spaces, a.tolerances);
  if (entry.polytope.actions.empty()) {
    entry.fallback = true;
    entry.polytope = {a.cells.pareto, a.cells.neighbors};
  }
  const int n = a.game.num_actions();
  entry.in_base.assign(n, 0);
  entry.in_observers.assign(n, 0);
  for (Action i : entry.polytope.actions) entry.in_base[i] = 1;
  for (const ActionPair& pair : entry.polytope.pairs) {
    for (Action k : a.cells.plus_sets.at(pair)) entry.in_base[k] = 1;
    for (const ObserverEntry& e : a.plan->ForPair(pair).observers) {
      entry.in_observers[e.action] = 1;
    }
  }
  return entry;
}

const PolytopeCache::Entry& PolytopeCache::Get(const HalfSpaceArray& half_spaces) {
  std::string key(half_spaces.begin(), half_spaces.end());
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return *it->second;
  }
  auto entry = std::make_unique<Entry>(Compute(half_spaces));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(std::move(key), std::move(entry));
  return *it->second;
}

CbpPolicy::CbpPolicy(std::shared_ptr<const GameAnalysis> analysis, CbpParams params,
                     std::shared_ptr<PolytopeCache> cache)
    : analysis_(std::move(analysis)), cache_(std::move(cache)), params_(std::move(params)) {
  if (!analysis_ || !analysis_->plan.has_value()) {
    throw Error(ErrorCode::kInvalidPlan, "game has no observer plan");
  }
  if (!(params_.alpha > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must exceed 1");
  }
  const Game& game = analysis_->game;
  const ObserverPlan& plan = *analysis_->plan;
  const int n = game.num_actions();
  if (plan.num_actions() != n || plan.pairs().size() != analysis_->cells.neighbors.size()) {
    throw Error(ErrorCode::kInvalidPlan, "observer plan does not match the game");
  }
  for (const ActionPair& pair : analysis_->cells.neighbors) {
    try {
      pair_observers_.push_back(&plan.ForPair(pair));
    } catch (const Error&) {
      throw Error(ErrorCode::kInvalidPlan, "observer plan misses a neighbor pair");
    }
  }
  if (params_.eta.empty()) {
    for (Action k = 0; k < n; ++k) eta_.push_back(std::pow(plan.width(k), 2.0 / 3.0));
  } else {
    eta_ = params_.eta;
    if (static_cast<int>(eta_.size()) != n) {
      throw Error(ErrorCode::kInvalidArgument, "eta must have one entry per action");
    }
    for (double e : eta_) {
      if (!(e >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eta must be >= 0");
    }
  }
  for (Action k = 0; k < n; ++k) width_sq_.push_back(plan.width(k) * plan.width(k));
  if (!cache_) cache_ = std::make_shared<PolytopeCache>(analysis_);

  counts_.assign(n, 0);
  for (Action k = 0; k < n; ++k) cumulative_.push_back(Eigen::VectorXd::Zero(game.num_symbols(k)));
  rare_.assign(n, 0);
  candidate_.assign(n, 0);
}

double CbpPolicy::Schedule(double t) const {
  return params_.schedule ? params_.schedule(t) : DefaultSchedule(params_.alpha, t);
}

void CbpPolicy::Estimates(std::vector<double>& delta,
                          std::vector<double>& confidence) const {
  const double t = static_cast<double>(round_);
  delta.resize(pair_observers_.size());
  confidence.resize(pair_observers_.size());
  for (std::size_t p = 0; p < pair_observers_.size(); ++p) {
    delta[p] = LossDifferenceEstimate(*pair_observers_[p], counts_, cumulative_);
    confidence[p] = ConfidenceBound(*pair_observers_[p], counts_, params_.alpha, t);
  }
}

Action CbpPolicy::Decide() {
  Estimates(delta_, confidence_);
  half_spaces_ = HalfSpaces(delta_, confidence_);
  if (last_entry_ == nullptr || half_spaces_ != last_key_) {
    last_entry_ = &cache_->Get(half_spaces_);
    last_key_ = half_spaces_;
  }
  const PolytopeCache::Entry& entry = *last_entry_;
  const double gate = Schedule(static_cast<double>(round_));
  Action best = -1;
  double best_ratio = 0.0;
  for (Action k = 0; k < static_cast<Action>(counts_.size()); ++k) {
    rare_[k] = static_cast<double>(counts_[k]) <= eta_[k] * gate;
    candidate_[k] = entry.in_base[k] || (entry.in_observers[k] && rare_[k]);
    if (!candidate_[k]) continue;
    const double ratio = width_sq_[k] / static_cast<double>(counts_[k]);
    if (best == -1 || ratio > best_ratio) {
      best = k;
      best_ratio = ratio;
    }
  }
  if (best == -1) {
    throw Error(ErrorCode::kEmptyChoiceSet,
                "no candidate action at round " + std::to_string(round_));
  }
  return best;
}

Action CbpPolicy::ChooseAction() {
  if (!initialized()) return static_cast<Action>(round_ - 1);
  return Decide();
}

CbpDecision CbpPolicy::Explain() {
  if (!initialized()) {
    throw Error(ErrorCode::kInvalidArgument, "CBP is still in its initialization rounds");
  }
  CbpDecision d;
  d.round = round_;
  d.action = Decide();
  d.delta = delta_;
  d.confidence = confidence_;
  d.half_spaces = half_spaces_;
  d.polytope = last_entry_->polytope;
  const CellStructure& cells = analysis_->cells;
  std::vector<char> plus(counts_.size(), 0);
  for (const ActionPair& pair : d.polytope.pairs) {
    for (Action k : cells.plus_sets.at(pair)) plus[k] = 1;
  }
  for (Action k = 0; k < static_cast<Action>(counts_.size()); ++k) {
    if (plus[k]) d.plus_actions.push_back(k);
    if (last_entry_->in_observers[k]) d.observers.push_back(k);
    if (rare_[k]) d.rarely_chosen.push_back(k);
    if (candidate_[k]) d.candidates.push_back(k);
  }
  return d;
}

void CbpPolicy::Update(Action action, std::span<const double> observation) {
  const Game& game = analysis_->game;
  if (action < 0 || action >= game.num_actions()) {
    throw Error(ErrorCode::kInvalidArgument, "action out of range");
  }
  if (static_cast<int>(observation.size()) != game.num_symbols(action)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "observation has " + std::to_string(observation.size()) +
                    " entries, action " + std::to_string(action + 1) + " has " +
                    std::to_string(game.num_symbols(action)) + " symbols");
  }
  int ones = 0;
  for (double y : observation) {
    if (y == 1.0) {
      ++ones;
    } else if (y != 0.0) {
      ones = -1;
      break;
    }
  }
  if (ones != 1) {
    throw Error(ErrorCode::kDimensionMismatch, "observation is not one-hot");
  }
  if (!initialized() && action != round_ - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "initialization round " + std::to_string(round_) + " must play action " +
                    std::to_string(round_));
  }
  Eigen::VectorXd& nu = cumulative_[action];
  for (int r = 0; r < nu.size(); ++r) nu(r) += observation[r];
  ++counts_[action];
  ++round_;
}

}  // namespace pmlab
