#include "dtw/search.h"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

#include "dtw/error.h"
#include "dtw/semantics.h"

namespace dtw {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kMaxOptionTable = 1u << 20;

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) {
  return b > kSaturated - a ? kSaturated : a + b;
}

std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp && out != kSaturated; ++i) {
    out = mul_sat(out, base);
  }
  return out;
}

std::uint64_t binomial_sat(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // out * (n - k + i) / i stays integral at every step.
    std::uint64_t num = mul_sat(out, n - k + i);
    if (num == kSaturated) return kSaturated;
    out = num / i;
  }
  return out;
}

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

// All set partitions of {0..n-1} as restricted growth strings, in
// lexicographic order.
std::vector<std::vector<int>> growth_strings(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int i, int max) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= max + 1; ++v) {
      cur[i] = v;
      self(self, i + 1, std::max(max, v));
    }
  };
  if (n == 0) return {{}};
  cur[0] = 0;
  rec(rec, 1, 0);
  return out;
}

const std::vector<std::vector<int>>& growth_strings_cached(int n) {
  static const std::vector<std::vector<std::vector<int>>> table = [] {
    std::vector<std::vector<std::vector<int>>> t;
    for (int i = 0; i <= 8; ++i) t.push_back(growth_strings(i));
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) {
    throw BadParams("too many initial states for enumeration");
  }
  return table[n];
}

Coalition random_coalition(std::mt19937_64& rng, const Coalition& universe) {
  std::vector<Agent> out;
  for (const auto& a : universe) {
    if (rng() & 1) out.push_back(a);
  }
  return Coalition(std::move(out));
}

std::string numbered(const char* prefix, std::size_t i) {
  return prefix + std::to_string(i);
}

// Runs `probe(i)` for i = 0, 1, ... < count on `workers` threads and
// returns the least i for which it reports a hit. Every index below the
// returned one is probed, whatever the thread count.
template <typename Probe>
std::optional<std::uint64_t> first_hit(std::uint64_t count, unsigned workers,
                                       Probe&& probe) {
  std::atomic<std::uint64_t> best{kSaturated};
  auto run = [&](unsigned w, unsigned stride) {
    for (std::uint64_t i = w; i < count; i += stride) {
      if (i > best.load(std::memory_order_relaxed)) return;
      if (probe(w, i)) {
        std::uint64_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run(w, workers);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          best.store(0);
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  std::uint64_t b = best.load();
  if (b == kSaturated) return std::nullopt;
  return b;
}

}  // namespace

void SearchBounds::check() const {
  if (max_agents < 1 || max_initial < 1 || max_actions < 1 ||
      max_outcomes < 1 || max_props < 1) {
    throw BadParams("search bounds must all be at least 1");
  }
  if (mode == Mode::kRandom && iterations == 0) {
    throw BadParams("random search needs at least one iteration");
  }
}

GameSpace::GameSpace(std::vector<Agent> agent_pool, int min_agents,
                     std::vector<std::string> props,
                     const SearchBounds& bounds)
    : pool_(std::move(agent_pool)), props_(std::move(props)), bounds_(bounds) {
  bounds_.check();
  if (static_cast<int>(pool_.size()) < bounds_.max_agents) {
    throw BadParams("agent pool smaller than max_agents");
  }
  if (props_.size() > 20) throw BadParams("too many propositions");
  if (bounds_.max_initial > 8) throw BadParams("max_initial must be <= 8");
  min_agents = std::clamp(min_agents, 0, bounds_.max_agents);

  const std::uint64_t codes = std::uint64_t{1} << props_.size();
  const std::uint64_t max_set =
      std::min<std::uint64_t>(codes, bounds_.max_outcomes);
  option_count_ = 0;
  for (std::uint64_t j = 1; j <= max_set; ++j) {
    option_count_ = add_sat(option_count_, binomial_sat(codes, j));
  }

  for (int n = min_agents; n <= bounds_.max_agents; ++n) {
    for (int s = 1; s <= bounds_.max_initial; ++s) {
      for (int k = 1; k <= bounds_.max_actions; ++k) {
        Shape shape{n, s, k, 0, 0};
        shape.pairs = mul_sat(s, pow_sat(k, n));
        std::uint64_t bell = growth_strings_cached(s).size();
        shape.count =
            mul_sat(pow_sat(bell, n), pow_sat(option_count_, shape.pairs));
        total_ = add_sat(total_, shape.count);
        shapes_.push_back(shape);
      }
    }
  }

  if (option_count_ <= kMaxOptionTable) {
    std::vector<std::uint32_t> cur;
    auto rec = [&](auto&& self, std::uint32_t next, std::uint64_t size) {
      if (cur.size() == size) {
        options_.push_back(cur);
        return;
      }
      for (std::uint32_t c = next; c < codes; ++c) {
        cur.push_back(c);
        self(self, c + 1, size);
        cur.pop_back();
      }
    };
    for (std::uint64_t j = 1; j <= max_set; ++j) rec(rec, 0, j);
  }
}

Game GameSpace::at(std::uint64_t index) const {
  if (options_.size() != option_count_) {
    throw ResourceLimit("game space too large to enumerate");
  }
  for (const auto& shape : shapes_) {
    if (index >= shape.count) {
      index -= shape.count;
      continue;
    }
    std::vector<std::vector<std::uint32_t>> choices(shape.pairs);
    for (std::uint64_t p = shape.pairs; p-- > 0;) {
      choices[p] = options_[index % option_count_];
      index /= option_count_;
    }
    const std::uint64_t bell = growth_strings_cached(shape.states).size();
    std::vector<std::size_t> partitions(shape.agents);
    for (int a = shape.agents; a-- > 0;) {
      partitions[a] = index % bell;
      index /= bell;
    }
    return build(shape, partitions, choices);
  }
  throw BadParams("game index out of range");
}

Game GameSpace::sample(std::mt19937_64& rng) const {
  const int min_agents = shapes_.front().agents;
  Shape shape{};
  shape.agents =
      min_agents + uniform(rng, bounds_.max_agents - min_agents + 1);
  shape.states = 1 + uniform(rng, bounds_.max_initial);
  shape.actions = 1 + uniform(rng, bounds_.max_actions);
  shape.pairs = shape.states * pow_sat(shape.actions, shape.agents);
  if (shape.pairs > 1'000'000) throw ResourceLimit("sampled game too large");

  const std::uint64_t bell = growth_strings_cached(shape.states).size();
  std::vector<std::size_t> partitions(shape.agents);
  for (auto& p : partitions) p = uniform(rng, bell);

  const std::uint32_t codes = std::uint32_t{1} << props_.size();
  const std::uint64_t max_set =
      std::min<std::uint64_t>(codes, bounds_.max_outcomes);
  std::vector<std::vector<std::uint32_t>> choices(shape.pairs);
  for (auto& choice : choices) {
    std::uint64_t size = 1 + uniform(rng, max_set);
    while (choice.size() < size) {
      auto c = static_cast<std::uint32_t>(uniform(rng, codes));
      if (std::find(choice.begin(), choice.end(), c) == choice.end()) {
        choice.push_back(c);
      }
    }
    std::sort(choice.begin(), choice.end());
  }
  return build(shape, partitions, choices);
}

Game GameSpace::build(
    const Shape& shape, const std::vector<std::size_t>& partitions,
    const std::vector<std::vector<std::uint32_t>>& choices) const {
  GameData data;
  data.agents.assign(pool_.begin(), pool_.begin() + shape.agents);
  for (int s = 0; s < shape.states; ++s) {
    data.initial.push_back(numbered("s", s + 1));
  }
  for (int a = 0; a < shape.agents; ++a) {
    const auto& rgs = growth_strings_cached(shape.states)[partitions[a]];
    int nblocks =
        rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<std::string>> blocks(nblocks);
    for (int s = 0; s < shape.states; ++s) {
      blocks[rgs[s]].push_back(data.initial[s]);
    }
    std::erase_if(blocks, [](const auto& b) { return b.size() < 2; });
    if (!blocks.empty()) data.indist.emplace_back(data.agents[a], blocks);
  }
  for (int k = 0; k < shape.actions; ++k) {
    data.actions.push_back(std::to_string(k));
  }
  const std::uint64_t codes = std::uint64_t{1} << props_.size();
  const std::uint64_t max_set =
      std::min<std::uint64_t>(codes, bounds_.max_outcomes);
  for (std::uint64_t o = 0; o < max_set; ++o) {
    data.outcomes.push_back(numbered("o", o + 1));
  }
  data.valuation.reserve(props_.size());
  for (const auto& p : props_) {
    data.valuation.emplace_back(p, std::vector<std::size_t>{});
  }

  const std::uint64_t per_state = pow_sat(shape.actions, shape.agents);
  std::vector<std::size_t> digits(shape.agents);
  for (std::uint64_t pair = 0; pair < shape.pairs; ++pair) {
    PlayData play;
    play.initial = data.initial[pair / per_state];
    std::uint64_t code = pair % per_state;
    for (int a = shape.agents; a-- > 0;) {
      digits[a] = code % shape.actions;
      code /= shape.actions;
    }
    for (int a = 0; a < shape.agents; ++a) {
      play.profile.emplace_back(data.agents[a], data.actions[digits[a]]);
    }
    const auto& choice = choices[pair];
    for (std::size_t j = 0; j < choice.size(); ++j) {
      play.outcome = data.outcomes[j];
      for (std::size_t t = 0; t < props_.size(); ++t) {
        if (choice[j] >> t & 1) {
          data.valuation[t].second.push_back(data.plays.size());
        }
      }
      data.plays.push_back(play);
    }
  }
  return Game::from_data(std::move(data));
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t tag,
                         std::uint64_t index) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(tag), hi(tag), lo(index), hi(index)};
  return std::mt19937_64(seq);
}

Formula random_formula(std::mt19937_64& rng,
                       const std::vector<std::string>& props,
                       const Coalition& universe, int max_depth) {
  if (props.empty()) throw BadParams("no propositions to draw from");
  if (max_depth <= 0 || uniform(rng, 5) == 0) {
    return Formula::prop(props[uniform(rng, props.size())]);
  }
  switch (uniform(rng, 4)) {
    case 0:
      return Formula::negation(
          random_formula(rng, props, universe, max_depth - 1));
    case 1: {
      Formula a = random_formula(rng, props, universe, max_depth - 1);
      Formula b = random_formula(rng, props, universe, max_depth - 1);
      return Formula::implies(std::move(a), std::move(b));
    }
    case 2: {
      Coalition c = random_coalition(rng, universe);
      return Formula::know(std::move(c),
                           random_formula(rng, props, universe, max_depth - 1));
    }
    default: {
      Coalition c = random_coalition(rng, universe);
      Coalition d = random_coalition(rng, universe);
      return Formula::blame(
          std::move(c), std::move(d),
          random_formula(rng, props, universe, max_depth - 1));
    }
  }
}

Substitution random_substitution(Schema s, std::mt19937_64& rng,
                                 const std::vector<std::string>& props,
                                 const Coalition& universe, int max_depth) {
  Substitution sub;
  for (const auto& v : formula_variables(s)) {
    int depth = static_cast<int>(uniform(rng, max_depth + 1));
    sub.formulas.emplace(v, random_formula(rng, props, universe, depth));
  }
  Coalition c = random_coalition(rng, universe);
  Coalition d = random_coalition(rng, universe);
  Coalition e = random_coalition(rng, universe);
  Coalition f = random_coalition(rng, universe);
  switch (s) {
    case Schema::kMonotonicityK:
    case Schema::kMonotonicityB:
      e = e.unite(c);
      f = f.unite(d);
      break;
    case Schema::kJointResponsibility:
      f = f.minus(d);
      break;
    case Schema::kJointResponsibilityUnrestricted:
      if (!universe.empty() && (rng() & 1)) {
        const Agent& shared = universe.members()[uniform(rng, universe.size())];
        d = d.with(shared);
        f = f.with(shared);
      }
      break;
    default:
      break;
  }
  const std::map<std::string, Coalition> pool = {
      {"C", c}, {"D", d}, {"E", e}, {"F", f}};
  for (const auto& v : coalition_variables(s)) sub.coalitions[v] = pool.at(v);
  return sub;
}

Formula relativize(const Formula& f, const Coalition& agents) {
  switch (f.kind()) {
    case Formula::Kind::kProp:
      return f;
    case Formula::Kind::kNot:
      return Formula::negation(relativize(f.operand(), agents));
    case Formula::Kind::kImplies:
      return Formula::implies(relativize(f.lhs(), agents),
                              relativize(f.rhs(), agents));
    case Formula::Kind::kKnow:
      return Formula::know(f.knowers().intersect(agents),
                           relativize(f.operand(), agents));
    case Formula::Kind::kBlame:
      return Formula::blame(f.knowers().intersect(agents),
                            f.actors().intersect(agents),
                            relativize(f.operand(), agents));
  }
  return f;
}

Substitution relativize(const Substitution& sub, const Coalition& agents) {
  Substitution out = sub;
  for (auto& [name, c] : out.coalitions) c = c.intersect(agents);
  for (auto& [name, f] : out.formulas) f = relativize(f, agents);
  return out;
}

std::vector<Agent> fuzz_agents(int n) {
  std::vector<Agent> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i))
                         : numbered("a", i));
  }
  return out;
}

std::vector<std::string> fuzz_props(int n) {
  static const char* const kNames[] = {"p", "q", "r", "s", "t", "u"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(i < 6 ? kNames[i] : numbered("p", i));
  }
  return out;
}

std::optional<Countermodel> countermodel_search(const Formula& f,
                                                const SearchBounds& bounds) {
  bounds.check();
  std::vector<std::string> props;
  for (const auto& p : propositions(f)) {
    if (p != kReservedSeed) props.push_back(p);
  }
  if (static_cast<int>(props.size()) > bounds.max_props) {
    throw BadParams("formula has " + std::to_string(props.size()) +
                    " propositions; max_props is " +
                    std::to_string(bounds.max_props));
  }
  const Coalition named = agents_of(f);
  if (static_cast<int>(named.size()) > bounds.max_agents) {
    throw BadParams("formula names " + std::to_string(named.size()) +
                    " agents; max_agents is " +
                    std::to_string(bounds.max_agents));
  }
  std::vector<Agent> pool = named.members();
  for (int i = 1; static_cast<int>(pool.size()) < bounds.max_agents; ++i) {
    Agent filler = numbered("x", i);
    if (!named.contains(filler)) pool.push_back(filler);
  }
  const int min_agents = std::max<int>(1, named.size());
  GameSpace space(pool, min_agents, props, bounds);

  const bool exhaustive = bounds.mode == SearchBounds::Mode::kExhaustive;
  const std::uint64_t count = exhaustive ? space.size() : bounds.iterations;
  if (exhaustive && count > bounds.budget) {
    throw ResourceLimit("exhaustive search needs " +
                        (count == kSaturated ? std::string("more than 2^64")
                                             : std::to_string(count)) +
                        " games; budget is " + std::to_string(bounds.budget));
  }
  auto game_at = [&](std::uint64_t i) {
    if (exhaustive) return space.at(i);
    auto rng = make_rng(bounds.seed, 0, i);
    return space.sample(rng);
  };
  auto hit = first_hit(count, bounds.workers, [&](unsigned, std::uint64_t i) {
    Game g = game_at(i);
    return !valid_in_game(g, f).holds;
  });
  if (!hit) return std::nullopt;
  Game g = game_at(*hit);
  std::size_t play = *valid_in_game(g, f).refutation;
  return Countermodel{std::move(g), play, *hit};
}

std::optional<FuzzCounterexample> soundness_fuzz(Schema schema,
                                                 const SearchBounds& bounds) {
  bounds.check();
  const std::vector<Agent> agents = fuzz_agents(bounds.max_agents);
  const std::vector<std::string> props = fuzz_props(bounds.max_props);
  const Coalition universe(agents);
  GameSpace space(agents, 1, props, bounds);

  const bool exhaustive = bounds.mode == SearchBounds::Mode::kExhaustive;
  const std::uint64_t games = exhaustive ? space.size() : bounds.games;
  if (exhaustive && games > bounds.budget) {
    throw ResourceLimit("exhaustive fuzzing needs " + std::to_string(games) +
                        " games; budget is " + std::to_string(bounds.budget));
  }
  const std::uint64_t per_game = bounds.iterations;
  std::vector<Substitution> subs;
  subs.reserve(per_game);
  for (std::uint64_t i = 0; i < per_game; ++i) {
    auto rng = make_rng(bounds.seed, 1, i);
    subs.push_back(random_substitution(schema, rng, props, universe));
  }
  auto game_at = [&](std::uint64_t j) {
    if (exhaustive) return space.at(j);
    auto rng = make_rng(bounds.seed, 2, j);
    return space.sample(rng);
  };
  auto instance_for = [&](const Game& g, std::uint64_t i) {
    Substitution local = relativize(subs[i], g.agent_set());
    Formula f = instantiate(schema, local);
    return std::make_pair(std::move(local), std::move(f));
  };

  // Instances are checked game by game so each game is built once.
  auto hit = first_hit(games, bounds.workers, [&](unsigned, std::uint64_t j) {
    Game g = game_at(j);
    Evaluator ev(g);
    for (std::uint64_t i = 0; i < per_game; ++i) {
      auto [local, f] = instance_for(g, i);
      if (!ev.extension(f).all()) return true;
    }
    return false;
  });
  if (!hit) return std::nullopt;
  Game g = game_at(*hit);
  Evaluator ev(g);
  for (std::uint64_t i = 0; i < per_game; ++i) {
    auto [local, f] = instance_for(g, i);
    PlaySet ext = ev.extension(f);
    if (!ext.all()) {
      std::size_t play = 0;
      while (ext.test(play)) ++play;
      return FuzzCounterexample{std::move(g), play, std::move(local),
                                std::move(f), *hit * per_game + i};
    }
  }
  throw Error("fuzz counterexample vanished on replay");
}

}  // namespace dtw
