#include "dtw/game.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "dtw/error.h"
#include "dtw/syntax.h"

namespace dtw {
namespace {

constexpr std::size_t kMaxSerialityReports = 20;

bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '#' &&
         c != '=' && c != '{' && c != '}' && c != '|' && c != ',' && c != ':';
}

bool is_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_name_char);
}

// Tokenizer for one line of a game file. Offsets are into the whole text.
struct Word {
  std::string text;
  std::size_t offset;
};

std::vector<Word> split_words(std::string_view line, std::size_t base) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i >= line.size()) break;
    std::size_t start = i;
    if (line[i] == '{' || line[i] == '}') {
      ++i;
    } else {
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])) &&
             line[i] != '{' && line[i] != '}') {
        ++i;
      }
    }
    out.push_back({std::string(line.substr(start, i - start)), base + start});
  }
  return out;
}

[[noreturn]] void syntax(std::size_t offset, const std::string& expected,
                         const std::string& msg) {
  throw SyntaxError(offset + 1, expected, msg);
}

void require_name(const Word& w, const char* what) {
  if (!is_name(w.text)) {
    syntax(w.offset, what, std::string("invalid ") + what + " '" + w.text + "'");
  }
}

template <typename T>
std::vector<std::string> duplicates(const std::vector<T>& names) {
  std::set<T> seen;
  std::set<T> dup;
  for (const auto& n : names) {
    if (!seen.insert(n).second) dup.insert(n);
  }
  return {dup.begin(), dup.end()};
}

std::string profile_text(const std::vector<std::string>& agents,
                         const std::vector<std::string>& actions,
                         const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (i) out += sep;
    out += agents[i] + "=" + actions[i];
  }
  return out;
}

}  // namespace

Coalition ActionProfile::domain() const {
  std::vector<Agent> members;
  for (const auto& [a, _] : assignment_) members.push_back(a);
  return Coalition(std::move(members));
}

std::string ActionProfile::to_string() const {
  std::string out;
  for (const auto& [a, x] : assignment_) {
    if (!out.empty()) out += ",";
    out += a + "=" + x;
  }
  return out;
}

GameData parse_game_data(std::string_view text) {
  GameData g;
  std::set<std::string> seen_headers;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::size_t base = line_start;
    line_start = line_end + 1;

    auto colon = line.find(':');
    std::vector<Word> head = split_words(line.substr(0, colon == std::string_view::npos ? line.size() : colon), base);
    if (head.empty()) {
      if (colon != std::string_view::npos) syntax(base + colon, "keyword", "missing keyword before ':'");
      continue;
    }
    if (colon == std::string_view::npos) {
      syntax(head.back().offset + head.back().text.size(), "':'",
             "expected ':' after '" + head.front().text + "'");
    }
    std::vector<Word> body = split_words(line.substr(colon + 1), base + colon + 1);
    const std::string& key = head.front().text;

    auto single_header = [&](std::vector<std::string>& dst, const char* what) {
      if (head.size() != 1) syntax(head[1].offset, "':'", "unexpected '" + head[1].text + "'");
      if (!seen_headers.insert(key).second) {
        syntax(head[0].offset, "a new section", "duplicate '" + key + ":' line");
      }
      for (const auto& w : body) {
        require_name(w, what);
        dst.push_back(w.text);
      }
    };

    if (key == "agents") {
      single_header(g.agents, "agent");
      for (const auto& w : body) {
        if (!is_identifier(w.text)) {
          syntax(w.offset, "agent identifier", "invalid agent '" + w.text + "'");
        }
      }
    } else if (key == "initial") {
      single_header(g.initial, "state");
    } else if (key == "actions") {
      single_header(g.actions, "action");
    } else if (key == "outcomes") {
      single_header(g.outcomes, "outcome");
    } else if (key == "indist") {
      if (head.size() != 2) {
        syntax(head.size() < 2 ? head[0].offset + key.size() : head[2].offset,
               "agent", "expected 'indist <agent>:'");
      }
      std::vector<std::vector<std::string>> blocks;
      std::size_t i = 0;
      while (i < body.size()) {
        if (body[i].text != "{") syntax(body[i].offset, "'{'", "expected '{' to open a block");
        ++i;
        std::vector<std::string> block;
        while (i < body.size() && body[i].text != "}") {
          if (body[i].text == "{") syntax(body[i].offset, "'}'", "nested '{'");
          require_name(body[i], "state");
          block.push_back(body[i].text);
          ++i;
        }
        if (i >= body.size()) syntax(base + line.size(), "'}'", "unterminated block");
        ++i;
        blocks.push_back(std::move(block));
      }
      g.indist.emplace_back(head[1].text, std::move(blocks));
    } else if (key == "play") {
      if (head.size() != 1) syntax(head[1].offset, "':'", "unexpected '" + head[1].text + "'");
      if (body.size() < 2) {
        syntax(base + line.size(), "initial state and outcome",
               "a play needs '<initial> <agent>=<action>... <outcome>'");
      }
      PlayData p;
      require_name(body.front(), "state");
      require_name(body.back(), "outcome");
      p.initial = body.front().text;
      p.outcome = body.back().text;
      for (std::size_t i = 1; i + 1 < body.size(); ++i) {
        const auto& w = body[i];
        auto eq = w.text.find('=');
        if (eq == std::string::npos) syntax(w.offset, "<agent>=<action>", "expected '<agent>=<action>'");
        std::string agent = w.text.substr(0, eq);
        std::string action = w.text.substr(eq + 1);
        if (!is_name(agent)) syntax(w.offset, "agent", "missing agent before '='");
        if (!is_name(action)) syntax(w.offset + eq + 1, "action", "missing action after '='");
        p.profile.emplace_back(std::move(agent), std::move(action));
      }
      g.plays.push_back(std::move(p));
    } else if (key == "prop") {
      if (head.size() != 2) {
        syntax(head.size() < 2 ? head[0].offset + key.size() : head[2].offset,
               "proposition", "expected 'prop <name>:'");
      }
      std::vector<std::size_t> indices;
      for (const auto& w : body) {
        if (w.text.empty() || !std::all_of(w.text.begin(), w.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) || w.text.size() > 9) {
          syntax(w.offset, "play number", "expected a 1-based play number, found '" + w.text + "'");
        }
        std::size_t n = std::stoul(w.text);
        if (n == 0) syntax(w.offset, "play number", "play numbers start at 1");
        indices.push_back(n - 1);
      }
      g.valuation.emplace_back(head[1].text, std::move(indices));
    } else {
      syntax(head[0].offset, "agents|initial|indist|actions|outcomes|play|prop",
             "unknown keyword '" + key + "'");
    }
  }
  return g;
}

std::vector<std::string> validate_game(const GameData& g,
                                       std::uint64_t max_checks) {
  std::vector<std::string> v;
  auto report = [&](std::string s) { v.push_back(std::move(s)); };

  if (g.initial.empty()) report("no initial states");
  if (g.actions.empty()) report("no actions");
  if (g.outcomes.empty()) report("no outcomes");
  for (const auto& d : duplicates(g.agents)) report("duplicate agent '" + d + "'");
  for (const auto& d : duplicates(g.initial)) report("duplicate initial state '" + d + "'");
  for (const auto& d : duplicates(g.actions)) report("duplicate action '" + d + "'");
  for (const auto& d : duplicates(g.outcomes)) report("duplicate outcome '" + d + "'");
  for (const auto& a : g.agents) {
    if (!is_identifier(a)) report("invalid agent name '" + a + "'");
  }

  const std::set<std::string> agents(g.agents.begin(), g.agents.end());
  const std::set<std::string> states(g.initial.begin(), g.initial.end());
  const std::set<std::string> actions(g.actions.begin(), g.actions.end());
  const std::set<std::string> outcomes(g.outcomes.begin(), g.outcomes.end());

  std::set<std::string> indist_agents;
  for (const auto& [agent, blocks] : g.indist) {
    if (!agents.count(agent)) report("indist for unknown agent '" + agent + "'");
    if (!indist_agents.insert(agent).second) {
      report("partition for '" + agent + "' given twice");
    }
    std::map<std::string, std::size_t> owner;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) report("partition for '" + agent + "' has an empty block");
      for (const auto& s : blocks[b]) {
        if (!states.count(s)) {
          report("partition for '" + agent + "' names unknown state '" + s + "'");
        }
        auto [it, fresh] = owner.emplace(s, b);
        if (!fresh) {
          report("partition overlap for '" + agent + "': state '" + s +
                 "' appears in blocks " + std::to_string(it->second + 1) +
                 " and " + std::to_string(b + 1));
        }
      }
    }
  }

  std::set<std::string> play_keys;
  bool plays_ok = true;
  for (std::size_t i = 0; i < g.plays.size(); ++i) {
    const auto& p = g.plays[i];
    const std::string where = "play " + std::to_string(i + 1);
    if (!states.count(p.initial)) {
      report(where + ": unknown initial state '" + p.initial + "'");
      plays_ok = false;
    }
    if (!outcomes.count(p.outcome)) {
      report(where + ": unknown outcome '" + p.outcome + "'");
      plays_ok = false;
    }
    std::map<std::string, std::string> assigned;
    for (const auto& [a, x] : p.profile) {
      if (!agents.count(a)) {
        report(where + ": unknown agent '" + a + "'");
        plays_ok = false;
      }
      if (!actions.count(x)) {
        report(where + ": unknown action '" + x + "'");
        plays_ok = false;
      }
      if (!assigned.emplace(a, x).second) {
        report(where + ": non-total profile, agent '" + a + "' assigned twice");
        plays_ok = false;
      }
    }
    for (const auto& a : g.agents) {
      if (!assigned.count(a)) {
        report(where + ": non-total profile, no action for agent '" + a + "'");
        plays_ok = false;
      }
    }
    std::string key = p.initial + "\x1f" + p.outcome;
    for (const auto& [a, x] : assigned) key += "\x1f" + a + "=" + x;
    if (!play_keys.insert(key).second) report(where + ": duplicate play");
  }

  std::set<std::string> props;
  for (const auto& [name, indices] : g.valuation) {
    if (!is_identifier(name)) report("invalid proposition name '" + name + "'");
    if (!props.insert(name).second) report("proposition '" + name + "' defined twice");
    for (std::size_t idx : indices) {
      if (idx >= g.plays.size()) {
        report("valuation not ⊆ P: proposition '" + name + "' references play " +
               std::to_string(idx + 1) + " but there are " +
               std::to_string(g.plays.size()) + " plays");
      }
    }
  }

  // Seriality: every initial state and complete profile needs an outcome.
  if (!g.initial.empty() && !g.actions.empty()) {
    std::uint64_t total = g.initial.size();
    const std::uint64_t n = g.actions.size();
    for (std::size_t i = 0; i < g.agents.size() && total <= max_checks; ++i) {
      total = total > max_checks / n ? max_checks + 1 : total * n;
    }
    if (total > max_checks) {
      throw ResourceLimit("seriality check needs more than " +
                          std::to_string(max_checks) + " profile checks");
    }
    if (plays_ok) {
      std::map<std::string, std::size_t> agent_pos;
      for (std::size_t i = 0; i < g.agents.size(); ++i) agent_pos[g.agents[i]] = i;
      std::map<std::string, std::size_t> action_pos;
      for (std::size_t i = 0; i < g.actions.size(); ++i) action_pos[g.actions[i]] = i;
      std::map<std::string, std::size_t> state_pos;
      for (std::size_t i = 0; i < g.initial.size(); ++i) state_pos[g.initial[i]] = i;
      const std::uint64_t per_state = total / g.initial.size();
      std::vector<bool> covered(total, false);
      for (const auto& p : g.plays) {
        std::uint64_t code = 0;
        std::vector<std::size_t> acts(g.agents.size());
        for (const auto& [a, x] : p.profile) acts[agent_pos[a]] = action_pos[x];
        for (std::size_t a : acts) code = code * g.actions.size() + a;
        covered[state_pos[p.initial] * per_state + code] = true;
      }
      std::size_t missing = 0;
      for (std::uint64_t c = 0; c < total; ++c) {
        if (covered[c]) continue;
        if (++missing > kMaxSerialityReports) continue;
        std::uint64_t code = c % per_state;
        std::vector<std::string> acts(g.agents.size());
        for (std::size_t i = g.agents.size(); i-- > 0;) {
          acts[i] = g.actions[code % g.actions.size()];
          code /= g.actions.size();
        }
        report("seriality: no play for (" + g.initial[c / per_state] + ", " +
               profile_text(g.agents, acts, " ") + ")");
      }
      if (missing > kMaxSerialityReports) {
        report("seriality: " + std::to_string(missing - kMaxSerialityReports) +
               " more (initial, profile) pairs without a play");
      }
    }
  }

  std::sort(v.begin(), v.end());
  return v;
}

Game Game::from_data(GameData data, std::uint64_t max_checks) {
  auto violations = validate_game(data, max_checks);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  Game g;
  g.data_ = std::move(data);
  const GameData& d = g.data_;
  for (std::size_t i = 0; i < d.agents.size(); ++i) g.agent_ids_[d.agents[i]] = i;
  for (std::size_t i = 0; i < d.initial.size(); ++i) g.state_ids_[d.initial[i]] = i;
  for (std::size_t i = 0; i < d.actions.size(); ++i) g.action_ids_[d.actions[i]] = i;
  std::unordered_map<std::string, std::size_t> outcome_ids;
  for (std::size_t i = 0; i < d.outcomes.size(); ++i) outcome_ids[d.outcomes[i]] = i;

  // Singleton blocks by default; listed blocks get ids past the states.
  g.blocks_.assign(d.agents.size(), std::vector<std::size_t>(d.initial.size()));
  for (auto& row : g.blocks_) {
    for (std::size_t s = 0; s < row.size(); ++s) row[s] = s;
  }
  for (const auto& [agent, blocks] : d.indist) {
    auto& row = g.blocks_[g.agent_ids_.at(agent)];
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (const auto& s : blocks[b]) row[g.state_ids_.at(s)] = d.initial.size() + b;
    }
  }

  for (const auto& p : d.plays) {
    Play play{g.state_ids_.at(p.initial), std::vector<std::size_t>(d.agents.size()),
              outcome_ids.at(p.outcome)};
    for (const auto& [a, x] : p.profile) {
      play.actions[g.agent_ids_.at(a)] = g.action_ids_.at(x);
    }
    g.plays_.push_back(std::move(play));
  }
  for (const auto& [name, indices] : d.valuation) {
    PlaySet set(g.plays_.size());
    for (std::size_t i : indices) set.set(i);
    g.valuation_.emplace(name, std::move(set));
  }
  return g;
}

std::size_t Game::agent_index(std::string_view agent) const {
  auto it = agent_ids_.find(std::string(agent));
  if (it == agent_ids_.end()) throw UnknownAgent(std::string(agent));
  return it->second;
}

std::size_t Game::state_index(std::string_view state) const {
  auto it = state_ids_.find(std::string(state));
  if (it == state_ids_.end()) throw UnknownState(std::string(state));
  return it->second;
}

std::vector<std::size_t> Game::agent_indices(const Coalition& c) const {
  std::vector<std::size_t> out;
  out.reserve(c.size());
  for (const auto& a : c) out.push_back(agent_index(a));
  return out;
}

const PlaySet* Game::valuation(std::string_view prop) const {
  auto it = valuation_.find(std::string(prop));
  return it == valuation_.end() ? nullptr : &it->second;
}

bool Game::indist_state(const std::vector<std::size_t>& agents, std::size_t a,
                        std::size_t b) const {
  for (std::size_t ag : agents) {
    if (blocks_[ag][a] != blocks_[ag][b]) return false;
  }
  return true;
}

bool Game::indist_state(const Coalition& c, std::string_view a,
                        std::string_view b) const {
  return indist_state(agent_indices(c), state_index(a), state_index(b));
}

std::vector<std::size_t> Game::matching_plays(std::string_view alpha,
                                              const Coalition& c,
                                              const ActionProfile& s) const {
  const std::size_t origin = state_index(alpha);
  const auto knowers = agent_indices(c);
  std::vector<std::pair<std::size_t, std::size_t>> fixed;
  for (const auto& [agent, action] : s.assignment()) {
    auto it = action_ids_.find(action);
    if (it == action_ids_.end()) {
      throw Error("unknown action '" + action + "' for agent '" + agent + "'");
    }
    fixed.emplace_back(agent_index(agent), it->second);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < plays_.size(); ++i) {
    const Play& p = plays_[i];
    if (!indist_state(knowers, origin, p.initial)) continue;
    bool agrees = std::all_of(fixed.begin(), fixed.end(), [&](const auto& f) {
      return p.actions[f.first] == f.second;
    });
    if (agrees) out.push_back(i);
  }
  return out;
}

ActionProfile Game::profile_of(std::size_t play) const {
  std::map<Agent, std::string> m;
  const Play& p = plays_.at(play);
  for (std::size_t a = 0; a < p.actions.size(); ++a) {
    m[data_.agents[a]] = data_.actions[p.actions[a]];
  }
  return ActionProfile(std::move(m));
}

std::string Game::describe(std::size_t play) const {
  const Play& p = plays_.at(play);
  std::vector<std::string> acts;
  for (std::size_t x : p.actions) acts.push_back(data_.actions[x]);
  return data_.initial[p.initial] + " | " + profile_text(data_.agents, acts, ",") +
         " | " + data_.outcomes[p.outcome];
}

std::size_t Game::find_play(std::string_view spec) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto bar1 = spec.find('|');
  auto bar2 = bar1 == std::string_view::npos ? bar1 : spec.find('|', bar1 + 1);
  if (bar2 == std::string_view::npos || spec.find('|', bar2 + 1) != std::string_view::npos) {
    throw Error("play spec must look like '<initial> | a=x,b=y | <outcome>'");
  }
  std::string_view initial = trim(spec.substr(0, bar1));
  std::string_view profile = trim(spec.substr(bar1 + 1, bar2 - bar1 - 1));
  std::string_view outcome = trim(spec.substr(bar2 + 1));

  const std::size_t state = state_index(initial);
  std::vector<std::optional<std::size_t>> acts(data_.agents.size());
  while (!profile.empty()) {
    auto comma = profile.find(',');
    std::string_view item = trim(profile.substr(0, comma));
    profile = comma == std::string_view::npos ? std::string_view{} : profile.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error("play spec: expected agent=action, found '" + std::string(item) + "'");
    }
    const std::size_t agent = agent_index(trim(item.substr(0, eq)));
    auto act = action_ids_.find(std::string(trim(item.substr(eq + 1))));
    if (act == action_ids_.end()) {
      throw Error("play spec: unknown action in '" + std::string(item) + "'");
    }
    if (acts[agent]) {
      throw Error("play spec: agent '" + data_.agents[agent] + "' given twice");
    }
    acts[agent] = act->second;
  }
  for (std::size_t a = 0; a < acts.size(); ++a) {
    if (!acts[a]) throw Error("play spec: no action for agent '" + data_.agents[a] + "'");
  }
  for (std::size_t i = 0; i < plays_.size(); ++i) {
    const Play& p = plays_[i];
    if (p.initial != state || data_.outcomes[p.outcome] != outcome) continue;
    bool same = true;
    for (std::size_t a = 0; a < acts.size(); ++a) same = same && p.actions[a] == *acts[a];
    if (same) return i;
  }
  throw Error("no such play: " + std::string(spec));
}

Game load_game(std::string_view text, std::uint64_t max_checks) {
  return Game::from_data(parse_game_data(text), max_checks);
}

std::string render_game(const GameData& g) {
  std::ostringstream out;
  auto list = [&](const char* key, const std::vector<std::string>& items) {
    out << key << ":";
    for (const auto& s : items) out << " " << s;
    out << "\n";
  };
  list("agents", g.agents);
  list("initial", g.initial);
  for (const auto& [agent, blocks] : g.indist) {
    out << "indist " << agent << ":";
    for (const auto& b : blocks) {
      out << " {";
      for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
      out << "}";
    }
    out << "\n";
  }
  list("actions", g.actions);
  list("outcomes", g.outcomes);
  for (const auto& p : g.plays) {
    out << "play: " << p.initial;
    for (const auto& [a, x] : p.profile) out << " " << a << "=" << x;
    out << " " << p.outcome << "\n";
  }
  for (const auto& [name, indices] : g.valuation) {
    out << "prop " << name << ":";
    for (std::size_t i : indices) out << " " << i + 1;
    out << "\n";
  }
  return out.str();
}

std::string_view tarasoff_text() {
  return R"(# Tarasoff case. Initial state = month of the peak of Poddar's depression.
# poddar: 0 = no attack, 1 = attack; parents: 0 = October vacation, 1 = November vacation.
# university observes the peak month; its action never affects the outcome.
agents: poddar parents university
initial: Oct Nov
indist parents: {Oct Nov}
actions: 0 1
outcomes: alive dead
play: Oct poddar=0 parents=0 university=0 alive
play: Oct poddar=0 parents=0 university=1 alive
play: Oct poddar=0 parents=1 university=0 alive
play: Oct poddar=0 parents=1 university=1 alive
play: Oct poddar=1 parents=0 university=0 alive
play: Oct poddar=1 parents=0 university=1 alive
play: Oct poddar=1 parents=1 university=0 dead
play: Oct poddar=1 parents=1 university=1 dead
play: Nov poddar=0 parents=0 university=0 alive
play: Nov poddar=0 parents=0 university=1 alive
play: Nov poddar=0 parents=1 university=0 alive
play: Nov poddar=0 parents=1 university=1 alive
play: Nov poddar=1 parents=0 university=0 dead
play: Nov poddar=1 parents=0 university=1 dead
play: Nov poddar=1 parents=1 university=0 alive
play: Nov poddar=1 parents=1 university=1 alive
prop killed: 7 8 13 14
)";
}

std::string_view tarasoff2_text() {
  return R"(# Tarasoff case. Initial state = month of the peak of Poddar's depression.
# poddar: 0 = no attack, 1 = attack; parents: 0 = October vacation, 1 = November vacation.
agents: poddar parents
initial: Oct Nov
indist parents: {Oct Nov}
actions: 0 1
outcomes: alive dead
play: Oct poddar=0 parents=0 alive
play: Oct poddar=0 parents=1 alive
play: Oct poddar=1 parents=0 alive
play: Oct poddar=1 parents=1 dead
play: Nov poddar=0 parents=0 alive
play: Nov poddar=0 parents=1 alive
play: Nov poddar=1 parents=0 dead
play: Nov poddar=1 parents=1 alive
prop killed: 4 7
)";
}

Game tarasoff_game() { return load_game(tarasoff_text()); }
Game tarasoff2_game() { return load_game(tarasoff2_text()); }

}  // namespace dtw
