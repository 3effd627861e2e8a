#include "dtw/json.h"

#include "dtw/error.h"
#include "dtw/syntax.h"

namespace dtw {
namespace {

Json play_ref(const Game& game, std::size_t play) {
  return Json{{"play", play + 1}, {"description", game.describe(play)}};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(std::string("missing JSON field '") + key + "'");
  }
  return j[key];
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

}  // namespace

Json verdict_to_json(const Verdict& v, const Game& game) {
  Json out;
  out["holds"] = v.holds;
  if (v.witness) {
    Json w = Json::object();
    for (const auto& [agent, action] : v.witness->assignment()) {
      w[agent] = action;
    }
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  out["refutation"] =
      v.refutation ? play_ref(game, *v.refutation) : Json(nullptr);
  return out;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.holds = get<bool>(j, "holds");
  if (j.contains("witness") && !j["witness"].is_null()) {
    std::map<Agent, std::string> m;
    for (const auto& [agent, action] : j["witness"].items()) {
      m[agent] = action.get<std::string>();
    }
    v.witness = ActionProfile(std::move(m));
  }
  if (j.contains("refutation") && !j["refutation"].is_null()) {
    std::size_t n = get<std::size_t>(j["refutation"], "play");
    if (n == 0) throw Error("play numbers start at 1");
    v.refutation = n - 1;
  }
  return v;
}

Json game_to_json(const GameData& g) {
  Json out;
  out["agents"] = g.agents;
  out["initial"] = g.initial;
  Json indist = Json::object();
  for (const auto& [agent, blocks] : g.indist) indist[agent] = blocks;
  out["indist"] = std::move(indist);
  out["actions"] = g.actions;
  out["outcomes"] = g.outcomes;
  Json plays = Json::array();
  for (const auto& p : g.plays) {
    Json profile = Json::object();
    for (const auto& [agent, action] : p.profile) profile[agent] = action;
    plays.push_back(
        {{"initial", p.initial}, {"profile", profile}, {"outcome", p.outcome}});
  }
  out["plays"] = std::move(plays);
  Json valuation = Json::object();
  for (const auto& [prop, plays_of] : g.valuation) {
    Json idx = Json::array();
    for (std::size_t i : plays_of) idx.push_back(i + 1);
    valuation[prop] = std::move(idx);
  }
  out["valuation"] = std::move(valuation);
  return out;
}

GameData game_from_json(const Json& j) {
  GameData g;
  g.agents = get<std::vector<Agent>>(j, "agents");
  g.initial = get<std::vector<std::string>>(j, "initial");
  for (const auto& [agent, blocks] : field(j, "indist").items()) {
    g.indist.emplace_back(agent,
                          blocks.get<std::vector<std::vector<std::string>>>());
  }
  g.actions = get<std::vector<std::string>>(j, "actions");
  g.outcomes = get<std::vector<std::string>>(j, "outcomes");
  for (const auto& p : field(j, "plays")) {
    PlayData d;
    d.initial = get<std::string>(p, "initial");
    for (const auto& [agent, action] : field(p, "profile").items()) {
      d.profile.emplace_back(agent, action.get<std::string>());
    }
    d.outcome = get<std::string>(p, "outcome");
    g.plays.push_back(std::move(d));
  }
  for (const auto& [prop, idx] : field(j, "valuation").items()) {
    std::vector<std::size_t> plays_of;
    for (const auto& n : idx) {
      auto v = n.get<std::size_t>();
      if (v == 0) throw Error("play numbers start at 1");
      plays_of.push_back(v - 1);
    }
    g.valuation.emplace_back(prop, std::move(plays_of));
  }
  return g;
}

Json proof_check_to_json(const ProofCheck& c, std::size_t lines) {
  return Json{{"accepted", c.accepted},
              {"lines", lines},
              {"line", c.line ? Json(*c.line + 1) : Json(nullptr)},
              {"reason", std::string(reason_code(c.reason))},
              {"message", c.message}};
}

ProofCheck proof_check_from_json(const Json& j) {
  ProofCheck c;
  c.accepted = get<bool>(j, "accepted");
  if (!field(j, "line").is_null()) {
    auto n = get<std::size_t>(j, "line");
    if (n == 0) throw Error("line numbers start at 1");
    c.line = n - 1;
  }
  const auto code = get<std::string>(j, "reason");
  bool known = false;
  for (int r = 0; r <= static_cast<int>(RejectReason::kGoalMismatch); ++r) {
    if (reason_code(static_cast<RejectReason>(r)) == code) {
      c.reason = static_cast<RejectReason>(r);
      known = true;
    }
  }
  if (!known) throw Error("unknown reason code '" + code + "'");
  c.message = get<std::string>(j, "message");
  return c;
}

Json substitution_to_json(const Substitution& s) {
  Json out = Json::object();
  for (const auto& [name, f] : s.formulas) out[name] = render(f);
  for (const auto& [name, c] : s.coalitions) out[name] = c.members();
  return out;
}

Substitution substitution_from_json(const Json& j) {
  Substitution s;
  for (const auto& [name, value] : j.items()) {
    if (value.is_string()) {
      s.formulas.emplace(name, parse_formula(value.get<std::string>()));
    } else if (value.is_array()) {
      s.coalitions.emplace(name,
                           Coalition(value.get<std::vector<std::string>>()));
    } else {
      throw Error("bad substitution entry '" + name + "'");
    }
  }
  return s;
}

Json countermodel_to_json(const std::optional<Countermodel>& c) {
  if (!c) {
    return Json{{"found", false},
                {"index", nullptr},
                {"game", nullptr},
                {"play", nullptr}};
  }
  return Json{{"found", true},
              {"index", c->index},
              {"game", game_to_json(c->game.data())},
              {"play", play_ref(c->game, c->play)}};
}

Json fuzz_to_json(Schema s, const std::optional<FuzzCounterexample>& c) {
  Json out;
  out["schema"] = std::string(schema_name(s));
  out["found"] = c.has_value();
  if (!c) {
    out["index"] = nullptr;
    out["game"] = nullptr;
    out["play"] = nullptr;
    out["instance"] = nullptr;
    out["substitution"] = nullptr;
    return out;
  }
  out["index"] = c->index;
  out["game"] = game_to_json(c->game.data());
  out["play"] = play_ref(c->game, c->play);
  out["instance"] = render(c->instance);
  out["substitution"] = substitution_to_json(c->substitution);
  return out;
}

}  // namespace dtw
