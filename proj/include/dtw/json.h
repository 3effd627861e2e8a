#ifndef DTW_JSON_H_
#define DTW_JSON_H_

#include <cstddef>
#include <optional>

#include <json.hpp>

#include "dtw/game.h"
#include "dtw/proof.h"
#include "dtw/schema.h"
#include "dtw/search.h"
#include "dtw/semantics.h"

namespace dtw {

using Json = nlohmann::ordered_json;

// Machine-readable forms used by the CLI's --json output. Play numbers are
// 1-based, as in game files. Every *_from_json inverts its to_json and
// throws Error on malformed input.

// {"holds": bool,
//  "witness": {"agent": "action", ...} | null,
//  "refutation": {"play": N, "description": "Oct | ... | dead"} | null}
Json verdict_to_json(const Verdict& v, const Game& game);
Verdict verdict_from_json(const Json& j);

// {"agents": [...], "initial": [...], "indist": {"agent": [[state, ...]]},
//  "actions": [...], "outcomes": [...],
//  "plays": [{"initial": s, "profile": {"agent": action}, "outcome": o}],
//  "valuation": {"prop": [N, ...]}}
Json game_to_json(const GameData& g);
GameData game_from_json(const Json& j);

// {"accepted": bool, "lines": N, "line": N | null, "reason": code,
//  "message": text}
Json proof_check_to_json(const ProofCheck& c, std::size_t lines);
ProofCheck proof_check_from_json(const Json& j);

// {"phi": "formula", ..., "C": ["agent", ...], ...}
Json substitution_to_json(const Substitution& s);
Substitution substitution_from_json(const Json& j);

// {"found": bool, "index": N | null, "game": game | null,
//  "play": {"play": N, "description": text} | null}
Json countermodel_to_json(const std::optional<Countermodel>& c);

// {"schema": name, "found": bool, "index": N | null, "game": game | null,
//  "play": {...} | null, "instance": formula | null,
//  "substitution": substitution | null}
Json fuzz_to_json(Schema s, const std::optional<FuzzCounterexample>& c);

}  // namespace dtw

#endif  // DTW_JSON_H_
