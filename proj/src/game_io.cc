#include "pmlab/game_io.h"

#include <fstream>
#include <sstream>

#include "pmlab/error.h"

namespace pmlab {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void Shape(const std::string& what) {
  throw Error(ErrorCode::kParseError, "game document: " + what);
}

const Json& Field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) Shape(std::string("missing field '") + key + "'");
  return *it;
}

Eigen::VectorXd NumberRow(const Json& row, const std::string& where) {
  if (!row.is_array()) Shape(where + " must be an array of numbers");
  Eigen::VectorXd out(static_cast<int>(row.size()));
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (!row[j].is_number()) Shape(where + " must be an array of numbers");
    out(static_cast<int>(j)) = row[j].get<double>();
  }
  return out;
}

Json VectorJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (int k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json PairJson(ActionPair pair) { return Json::array({pair.first + 1, pair.second + 1}); }

Json ActionsJson(const std::vector<Action>& actions) {
  Json out = Json::array();
  for (Action a : actions) out.push_back(a + 1);
  return out;
}

}  // namespace

GameDocument ParseGameDocument(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries "at line L, column C".
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!doc.is_object()) Shape("top level must be an object");
  const Json& name = Field(doc, "name");
  if (!name.is_string()) Shape("'name' must be a string");
  const Json& loss_json = Field(doc, "loss");
  const Json& feedback_json = Field(doc, "feedback");
  if (!loss_json.is_array() || loss_json.empty()) Shape("'loss' must be a non-empty array");
  if (!feedback_json.is_array()) Shape("'feedback' must be an array");

  const int n = static_cast<int>(loss_json.size());
  const int m = loss_json[0].is_array() ? static_cast<int>(loss_json[0].size()) : 0;
  Eigen::MatrixXd loss(n, m);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd row = NumberRow(loss_json[i], "loss row " + std::to_string(i + 1));
    if (row.size() != m) {
      throw Error(ErrorCode::kShapeMismatch, "loss rows have different lengths");
    }
    loss.row(i) = row.transpose();
  }
  FeedbackMatrix feedback;
  for (const Json& row : feedback_json) {
    if (!row.is_array()) Shape("feedback rows must be arrays of strings");
    std::vector<std::string> tokens;
    for (const Json& token : row) {
      if (!token.is_string()) Shape("feedback entries must be strings");
      tokens.push_back(token.get<std::string>());
    }
    feedback.push_back(std::move(tokens));
  }

  GameDocument out{Game(name.get<std::string>(), std::move(loss), std::move(feedback)), {}};
  if (auto it = doc.find("opponents"); it != doc.end()) {
    if (!it->is_array()) Shape("'opponents' must be an array");
    for (const Json& o : *it) {
      if (!o.is_object()) Shape("opponents must be objects");
      LabeledOpponent opp;
      if (auto l = o.find("label"); l != o.end()) {
        if (!l->is_string()) Shape("opponent label must be a string");
        opp.label = l->get<std::string>();
      }
      opp.p = NumberRow(Field(o, "p"), "opponent p");
      CheckSimplexPoint(opp.p, out.game.num_outcomes());
      out.opponents.push_back(std::move(opp));
    }
  }
  return out;
}

Game ParseGame(std::string_view text) { return ParseGameDocument(text).game; }

GameDocument LoadGameDocument(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGameDocument(buffer.str());
}

Json GameToJson(const Game& game, const std::vector<LabeledOpponent>& opponents) {
  Json out;
  out["name"] = game.name();
  Json loss = Json::array();
  for (Action i = 0; i < game.num_actions(); ++i) loss.push_back(VectorJson(game.LossVector(i)));
  out["loss"] = std::move(loss);
  out["feedback"] = game.feedback();
  if (!opponents.empty()) {
    Json opps = Json::array();
    for (const LabeledOpponent& o : opponents) {
      opps.push_back({{"label", o.label}, {"p", VectorJson(o.p)}});
    }
    out["opponents"] = std::move(opps);
  }
  return out;
}

Json SettingToJson(const NamedSetting& setting) {
  Json out = GameToJson(setting.game, setting.opponents);
  out["setting"] = setting.name;
  return out;
}

Json ObserverPlanToJson(const ObserverPlan& plan) {
  Json pairs = Json::array();
  for (const PairObservers& p : plan.pairs()) {
    Json observers = Json::array();
    for (const ObserverEntry& e : p.observers) {
      observers.push_back({{"action", e.action + 1}, {"vector", VectorJson(e.vector)}});
    }
    pairs.push_back(
        {{"pair", PairJson(p.pair)}, {"observers", std::move(observers)}, {"residual", p.residual}});
  }
  Json widths = Json::array();
  for (double w : plan.widths()) widths.push_back(w);
  Json out;
  out["pairs"] = std::move(pairs);
  out["widths"] = std::move(widths);
  return out;
}

Json AnalysisToJson(const GameAnalysis& a) {
  const CellStructure& cells = a.cells;
  Json out;
  out["game"] = GameToJson(a.game);
  out["class"] = std::string(GameClassName(a.game_class));
  Json actions = Json::array();
  for (Action i = 0; i < a.game.num_actions(); ++i) {
    actions.push_back({{"action", i + 1},
                       {"cell", std::string(ActionClassName(cells.action_class[i]))}});
  }
  out["actions"] = std::move(actions);
  out["pareto"] = ActionsJson(cells.pareto);
  Json neighbors = Json::array();
  for (const ActionPair& pair : cells.neighbors) {
    neighbors.push_back({{"pair", PairJson(pair)},
                         {"plus_set", ActionsJson(cells.plus_sets.at(pair))},
                         {"locally_observable", cells.IsLocallyObservable(pair)}});
  }
  out["neighbors"] = std::move(neighbors);
  Json local = Json::array();
  for (const ActionPair& pair : cells.locally_observable_pairs) local.push_back(PairJson(pair));
  out["locally_observable_pairs"] = std::move(local);
  out["globally_observable"] = a.globally_observable;
  out["observer_plan"] = a.plan ? ObserverPlanToJson(*a.plan) : Json(nullptr);
  return out;
}

}  // namespace pmlab
