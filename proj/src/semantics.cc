#include "dtw/semantics.h"

#include <map>

#include "dtw/error.h"

namespace dtw {
namespace {

constexpr std::uint64_t kMaxProfiles = 10'000'000;

std::size_t count_profiles(std::size_t actions, std::size_t agents) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < agents; ++i) {
    if (n > kMaxProfiles / actions) {
      throw ResourceLimit("too many coalition profiles to enumerate");
    }
    n *= actions;
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

const std::vector<std::size_t>& Evaluator::classes(const Coalition& c) {
  const std::string key = c.to_string();
  auto it = class_cache_.find(key);
  if (it != class_cache_.end()) return it->second;
  const auto agents = game_.agent_indices(c);
  std::map<std::vector<std::size_t>, std::size_t> ids;
  std::vector<std::size_t> out(game_.states().size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    std::vector<std::size_t> signature;
    signature.reserve(agents.size());
    for (std::size_t a : agents) signature.push_back(game_.block(a, s));
    out[s] = ids.emplace(std::move(signature), ids.size()).first->second;
  }
  return class_cache_.emplace(key, std::move(out)).first->second;
}

Evaluator::BlameTable Evaluator::blame_table(const Coalition& knowers,
                                             const Coalition& actors,
                                             const PlaySet& phi) {
  BlameTable t;
  t.state_class = classes(knowers);
  const auto actor_ids = game_.agent_indices(actors);
  const std::size_t n_actions = game_.actions().size();
  t.profiles = count_profiles(n_actions, actor_ids.size());
  std::size_t n_classes = 0;
  for (std::size_t c : t.state_class) n_classes = std::max(n_classes, c + 1);
  t.spoiled.assign(n_classes * t.profiles, 0);
  const auto& plays = game_.plays();
  for (std::size_t i = phi.find_first(); i != PlaySet::npos; i = phi.find_next(i)) {
    std::size_t code = 0;
    for (std::size_t a : actor_ids) code = code * n_actions + plays[i].actions[a];
    t.spoiled[t.state_class[plays[i].initial] * t.profiles + code] = 1;
  }
  return t;
}

PlaySet Evaluator::blame_extension(const Coalition& knowers,
                                   const Coalition& actors,
                                   const PlaySet& phi) {
  const BlameTable t = blame_table(knowers, actors, phi);
  const std::size_t n_classes = t.spoiled.size() / t.profiles;
  std::vector<char> preventable(n_classes, 0);
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (std::size_t s = 0; s < t.profiles; ++s) {
      if (!t.spoiled[c * t.profiles + s]) {
        preventable[c] = 1;
        break;
      }
    }
  }
  const auto& plays = game_.plays();
  PlaySet out(plays.size());
  for (std::size_t i = phi.find_first(); i != PlaySet::npos; i = phi.find_next(i)) {
    if (preventable[t.state_class[plays[i].initial]]) out.set(i);
  }
  return out;
}

std::optional<ActionProfile> Evaluator::preventing_profile(
    const Coalition& knowers, const Coalition& actors, const PlaySet& phi,
    std::size_t play) {
  const BlameTable t = blame_table(knowers, actors, phi);
  const std::size_t cls = t.state_class[game_.plays().at(play).initial];
  const std::size_t n_actions = game_.actions().size();
  for (std::size_t s = 0; s < t.profiles; ++s) {
    if (t.spoiled[cls * t.profiles + s]) continue;
    std::map<Agent, std::string> assignment;
    std::size_t code = s;
    for (std::size_t j = actors.size(); j-- > 0;) {
      assignment[actors.members()[j]] = game_.actions()[code % n_actions];
      code /= n_actions;
    }
    return ActionProfile(std::move(assignment));
  }
  return std::nullopt;
}

PlaySet Evaluator::extension(const Formula& f) {
  memo_.clear();
  PlaySet out = eval(f);
  memo_.clear();
  return out;
}

PlaySet Evaluator::eval(const Formula& f) {
  if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
  const std::size_t n = game_.plays().size();
  PlaySet out(n);
  switch (f.kind()) {
    case Formula::Kind::kProp:
      if (const PlaySet* v = game_.valuation(f.name())) out = *v;
      break;
    case Formula::Kind::kNot:
      out = ~eval(f.operand());
      break;
    case Formula::Kind::kImplies:
      out = ~eval(f.lhs()) | eval(f.rhs());
      break;
    case Formula::Kind::kKnow: {
      const auto& cls = classes(f.knowers());
      const PlaySet inner = eval(f.operand());
      std::size_t n_classes = 0;
      for (std::size_t c : cls) n_classes = std::max(n_classes, c + 1);
      std::vector<char> all(n_classes, 1);
      const auto& plays = game_.plays();
      for (std::size_t i = 0; i < n; ++i) {
        if (!inner.test(i)) all[cls[plays[i].initial]] = 0;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (all[cls[plays[i].initial]]) out.set(i);
      }
      break;
    }
    case Formula::Kind::kBlame:
      out = blame_extension(f.knowers(), f.actors(), eval(f.operand()));
      break;
  }
  memo_.emplace(f.id(), out);
  return out;
}

Verdict holds(const Game& game, std::size_t play, const Formula& f) {
  if (play >= game.plays().size()) throw Error("no play with index " + std::to_string(play));
  Evaluator ev(game);
  Verdict v;
  v.holds = ev.extension(f).test(play);
  if (f.is(Formula::Kind::kBlame) && v.holds) {
    v.witness = ev.preventing_profile(f.knowers(), f.actors(),
                                      ev.extension(f.operand()), play);
  } else if (f.is(Formula::Kind::kKnow) && !v.holds) {
    const PlaySet inner = ev.extension(f.operand());
    const auto& cls = ev.classes(f.knowers());
    const auto& plays = game.plays();
    const std::size_t home = cls[plays[play].initial];
    for (std::size_t i = 0; i < plays.size(); ++i) {
      if (cls[plays[i].initial] == home && !inner.test(i)) {
        v.refutation = i;
        break;
      }
    }
  }
  return v;
}

Verdict valid_in_game(const Game& game, const Formula& f) {
  Evaluator ev(game);
  const PlaySet ext = ev.extension(f);
  Verdict v;
  v.holds = ext.all();
  if (!v.holds) v.refutation = (~ext).find_first();
  return v;
}

std::vector<std::string> unknown_propositions(const Game& game,
                                              const Formula& f) {
  std::vector<std::string> out;
  for (const auto& p : propositions(f)) {
    if (!game.valuation(p)) out.push_back(p);
  }
  return out;
}

}  // namespace dtw
