#include "oracles.h"

#include <algorithm>
#include <set>

namespace oracle {

using dtw::Coalition;
using dtw::Formula;
using dtw::GameData;

NaiveModel::NaiveModel(const GameData& g) : g_(g) {
  for (const auto& a : g.agents) {
    auto& blocks = block_[a];
    std::size_t next = 0;
    for (const auto& [agent, partition] : g.indist) {
      if (agent != a) continue;
      for (const auto& b : partition) {
        for (const auto& s : b) blocks[s] = next;
        ++next;
      }
    }
    for (const auto& s : g.initial) {
      if (!blocks.count(s)) blocks[s] = next++;
    }
  }
  for (const auto& [prop, plays] : g.valuation) {
    prop_index_[prop] = truth_.size();
    std::vector<bool> row(g.plays.size(), false);
    for (std::size_t i : plays) row[i] = true;
    truth_.push_back(std::move(row));
  }
}

bool NaiveModel::indist(const Coalition& c, const std::string& a,
                        const std::string& b) const {
  for (const auto& agent : c) {
    const auto& blocks = block_.at(agent);
    if (blocks.at(a) != blocks.at(b)) return false;
  }
  return true;
}

std::string NaiveModel::action_of(std::size_t play,
                                  const std::string& agent) const {
  for (const auto& [a, x] : g_.plays[play].profile) {
    if (a == agent) return x;
  }
  return {};
}

std::vector<std::size_t> NaiveModel::matching(
    std::size_t play, const Coalition& c,
    const std::map<std::string, std::string>& s) const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < g_.plays.size(); ++q) {
    if (!indist(c, g_.plays[play].initial, g_.plays[q].initial)) continue;
    bool agree = true;
    for (const auto& [agent, action] : s) {
      if (action_of(q, agent) != action) agree = false;
    }
    if (agree) out.push_back(q);
  }
  return out;
}

std::vector<std::map<std::string, std::string>> NaiveModel::profiles(
    const Coalition& d) const {
  const auto& members = d.members();
  std::vector<std::size_t> digit(members.size(), 0);
  std::vector<std::map<std::string, std::string>> out;
  for (;;) {
    std::map<std::string, std::string> s;
    for (std::size_t i = 0; i < members.size(); ++i) {
      s[members[i]] = g_.actions[digit[i]];
    }
    out.push_back(std::move(s));
    // Odometer with the last member fastest.
    std::size_t i = members.size();
    while (i > 0) {
      --i;
      if (++digit[i] < g_.actions.size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (members.empty()) return out;
  }
}

std::optional<std::map<std::string, std::string>> NaiveModel::first_preventer(
    std::size_t play, const Coalition& c, const Coalition& d,
    const Formula& f) const {
  for (const auto& s : profiles(d)) {
    bool prevents = true;
    for (std::size_t q : matching(play, c, s)) {
      if (sat(q, f)) {
        prevents = false;
        break;
      }
    }
    if (prevents) return s;
  }
  return std::nullopt;
}

bool NaiveModel::sat(std::size_t play, const Formula& f) const {
  switch (f.kind()) {
    case Formula::Kind::kProp: {
      auto it = prop_index_.find(f.name());
      return it != prop_index_.end() && truth_[it->second][play];
    }
    case Formula::Kind::kNot:
      return !sat(play, f.operand());
    case Formula::Kind::kImplies:
      return !sat(play, f.lhs()) || sat(play, f.rhs());
    case Formula::Kind::kKnow:
      for (std::size_t q = 0; q < g_.plays.size(); ++q) {
        if (indist(f.knowers(), g_.plays[play].initial, g_.plays[q].initial) &&
            !sat(q, f.operand())) {
          return false;
        }
      }
      return true;
    case Formula::Kind::kBlame:
      return sat(play, f.operand()) &&
             first_preventer(play, f.knowers(), f.actors(), f.operand())
                 .has_value();
  }
  return false;
}

namespace {

std::vector<Coalition> subsets(const Coalition& base, bool proper) {
  std::vector<Coalition> out;
  const std::size_t n = base.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::string> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) pick.push_back(base.members()[i]);
    }
    if (proper && pick.size() == n) continue;
    out.emplace_back(pick);
  }
  return out;
}

bool blame(const NaiveModel& m, std::size_t play, const Coalition& c,
           const Coalition& d, const Formula& phi) {
  return m.sat(play, Formula::blame(c, d, phi));
}

bool kind3(const NaiveModel& m, std::size_t play, const Coalition& c,
           const Coalition& d, const Formula& phi, const Coalition& u) {
  if (!blame(m, play, c, d, phi)) return false;
  for (const auto& e : subsets(u, false)) {
    for (const auto& f : subsets(d, true)) {
      if (blame(m, play, e, f, phi)) return false;
    }
  }
  for (const auto& e : subsets(c, true)) {
    if (blame(m, play, e, d, phi)) return false;
  }
  return true;
}

}  // namespace

bool minimal(const NaiveModel& m, int kind, std::size_t play,
             const Coalition& c, const std::optional<Coalition>& d,
             const Formula& phi, const Coalition& universe) {
  switch (kind) {
    case 1:
      if (!blame(m, play, c, *d, phi)) return false;
      for (const auto& e : subsets(c, true)) {
        if (blame(m, play, e, *d, phi)) return false;
      }
      return true;
    case 2:
      if (!blame(m, play, c, *d, phi)) return false;
      for (const auto& e : subsets(c, true)) {
        for (const auto& f : subsets(universe, false)) {
          if (blame(m, play, e, f, phi)) return false;
        }
      }
      return true;
    case 3:
      return kind3(m, play, c, *d, phi, universe);
    default:
      for (const auto& dd : subsets(universe, false)) {
        if (kind3(m, play, c, dd, phi, universe)) return true;
      }
      return false;
  }
}

GameData random_game(std::mt19937_64& rng, const GameShape& max) {
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  GameData g;
  const int na = pick(1, max.agents);
  const int ns = pick(1, max.states);
  const int nx = pick(1, max.actions);
  const int no = pick(1, max.outcomes);
  for (int i = 0; i < na; ++i) g.agents.push_back(std::string(1, 'a' + i));
  for (int i = 0; i < ns; ++i) g.initial.push_back("s" + std::to_string(i + 1));
  for (int i = 0; i < nx; ++i) g.actions.push_back(std::to_string(i));
  for (int i = 0; i < no; ++i) g.outcomes.push_back("o" + std::to_string(i + 1));
  for (const auto& a : g.agents) {
    std::vector<std::vector<std::string>> blocks(ns);
    for (const auto& s : g.initial) blocks[rng() % ns].push_back(s);
    std::erase_if(blocks, [](const auto& b) { return b.empty(); });
    g.indist.emplace_back(a, blocks);
  }
  std::size_t profiles = 1;
  for (int i = 0; i < na; ++i) profiles *= nx;
  for (const auto& s : g.initial) {
    for (std::size_t code = 0; code < profiles; ++code) {
      std::vector<std::pair<std::string, std::string>> prof;
      std::size_t rest = code;
      for (int i = na - 1; i >= 0; --i) {
        prof.emplace(prof.begin(), g.agents[i], g.actions[rest % nx]);
        rest /= nx;
      }
      std::vector<int> outs(no);
      for (int i = 0; i < no; ++i) outs[i] = i;
      std::shuffle(outs.begin(), outs.end(), rng);
      const int k = pick(1, no);
      std::sort(outs.begin(), outs.begin() + k);
      for (int i = 0; i < k; ++i) {
        g.plays.push_back({s, prof, g.outcomes[outs[i]]});
      }
    }
  }
  for (int i = 0; i < max.props; ++i) {
    std::vector<std::size_t> on;
    for (std::size_t q = 0; q < g.plays.size(); ++q) {
      if (rng() % 2) on.push_back(q);
    }
    g.valuation.emplace_back(std::string(1, 'p' + i), on);
  }
  return g;
}

void assign_props(std::mt19937_64& rng, GameData& g,
                  const std::set<std::string>& props) {
  g.valuation.clear();
  for (const auto& p : props) {
    std::vector<std::size_t> on;
    for (std::size_t q = 0; q < g.plays.size(); ++q) {
      if (rng() % 2) on.push_back(q);
    }
    g.valuation.emplace_back(p, on);
  }
}

Coalition random_coalition(std::mt19937_64& rng, const Coalition& universe) {
  std::vector<std::string> pick;
  for (const auto& a : universe) {
    if (rng() % 2) pick.push_back(a);
  }
  return Coalition(pick);
}

Formula random_formula(std::mt19937_64& rng,
                       const std::vector<std::string>& props,
                       const Coalition& universe, int depth) {
  const unsigned choice = depth <= 0 ? 0 : rng() % 5;
  switch (choice) {
    case 0:
      return Formula::prop(props[rng() % props.size()]);
    case 1:
      return Formula::negation(random_formula(rng, props, universe, depth - 1));
    case 2: {
      Formula lhs = random_formula(rng, props, universe, depth - 1);
      return Formula::implies(lhs,
                              random_formula(rng, props, universe, depth - 1));
    }
    case 3: {
      Coalition c = random_coalition(rng, universe);
      return Formula::know(c, random_formula(rng, props, universe, depth - 1));
    }
    default: {
      Coalition c = random_coalition(rng, universe);
      Coalition d = random_coalition(rng, universe);
      return Formula::blame(c, d,
                            random_formula(rng, props, universe, depth - 1));
    }
  }
}

std::map<std::string, std::size_t> outcome_counts(const GameData& g) {
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& p : g.plays) {
    std::string key = p.initial + "|";
    auto prof = p.profile;
    std::sort(prof.begin(), prof.end());
    for (const auto& [a, x] : prof) key += a + "=" + x + ",";
    seen[key].insert(p.outcome);
  }
  std::map<std::string, std::size_t> out;
  for (const auto& [k, v] : seen) out[k] = v.size();
  return out;
}

std::uint64_t expansion_blame_leaves(int kind, std::size_t c, std::size_t d,
                                     std::size_t u) {
  const std::uint64_t pc = std::uint64_t{1} << c;
  const std::uint64_t pd = std::uint64_t{1} << d;
  const std::uint64_t pu = std::uint64_t{1} << u;
  switch (kind) {
    case 1: return 1 + (pc - 1);
    case 2: return 1 + (pc - 1) * pu;
    case 3: return 1 + pu * (pd - 1) + (pc - 1);
    default: {
      std::uint64_t total = 0;
      std::uint64_t binom = 1;  // u choose k
      for (std::size_t k = 0; k <= u; ++k) {
        total += binom * expansion_blame_leaves(3, c, k, u);
        binom = binom * (u - k) / (k + 1);
      }
      return total;
    }
  }
}

std::uint64_t tree_nodes(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kProp: return 1;
    case Formula::Kind::kImplies: return 1 + tree_nodes(f.lhs()) + tree_nodes(f.rhs());
    default: return 1 + tree_nodes(f.operand());
  }
}

bool core_only(const Formula& f) {
  // Formula has no constructor beyond the five core ones; this walks the
  // tree to confirm every node reports one of them.
  switch (f.kind()) {
    case Formula::Kind::kProp: return !f.name().empty();
    case Formula::Kind::kImplies: return core_only(f.lhs()) && core_only(f.rhs());
    case Formula::Kind::kNot:
    case Formula::Kind::kKnow:
    case Formula::Kind::kBlame:
      return core_only(f.operand());
  }
  return false;
}

}  // namespace oracle
