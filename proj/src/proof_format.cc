#include "dtw/proof_format.h"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

#include "dtw/error.h"
#include "dtw/syntax.h"

namespace dtw {
namespace {

bool space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

// A view into the script text that remembers its absolute offset.
struct Span {
  std::string_view text;
  std::size_t offset;  // 0-based offset of text[0] in the whole script

  Span trim_left() const {
    std::size_t i = 0;
    while (i < text.size() && space(text[i])) ++i;
    return {text.substr(i), offset + i};
  }
  Span trim() const {
    Span s = trim_left();
    std::size_t n = s.text.size();
    while (n > 0 && space(s.text[n - 1])) --n;
    return {s.text.substr(0, n), s.offset};
  }
  Span drop(std::size_t n) const { return {text.substr(n), offset + n}; }
  // Next whitespace-delimited word; the remainder goes to `rest`.
  Span word(Span& rest) const {
    Span s = trim_left();
    std::size_t n = 0;
    while (n < s.text.size() && !space(s.text[n])) ++n;
    rest = s.drop(n);
    return {s.text.substr(0, n), s.offset};
  }
};

[[noreturn]] void fail(const Span& at, std::string expected,
                       std::string message) {
  throw SyntaxError(at.offset + 1, std::move(expected), std::move(message));
}

Formula formula_at(const Span& s) {
  try {
    return parse_formula(s.text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(s.offset + e.position(), e.expected(), e.what());
  }
}

std::size_t number_at(const Span& s, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] =
      std::from_chars(s.text.data(), s.text.data() + s.text.size(), value);
  if (ec != std::errc() || ptr != s.text.data() + s.text.size() || value == 0) {
    fail(s, what, "expected a positive " + std::string(what));
  }
  return value;
}

Justification justification_at(Span s) {
  Span rest{};
  Span key = s.word(rest);
  auto end_here = [&](const Span& r) {
    Span t = r.trim();
    if (!t.text.empty()) fail(t, "end of line", "unexpected trailing text");
  };
  if (key.text == "axiom") {
    Span tail{};
    Span name = rest.word(tail);
    end_here(tail);
    auto schema = schema_from_name(name.text);
    if (!schema) fail(name, "axiom name", "unknown axiom '" + std::string(name.text) + "'");
    return Justification::make_axiom(*schema);
  }
  if (key.text == "taut") {
    end_here(rest);
    return Justification::tautology();
  }
  if (key.text == "hyp") {
    Span tail{};
    Span n = rest.word(tail);
    end_here(tail);
    return Justification::hypothesis(number_at(n, "hypothesis number") - 1);
  }
  if (key.text == "mp") {
    Span t1{}, t2{};
    Span i = rest.word(t1);
    Span j = t1.word(t2);
    end_here(t2);
    return Justification::modus_ponens(number_at(i, "line number") - 1,
                                       number_at(j, "line number") - 1);
  }
  if (key.text == "nec") {
    Span tail{};
    Span i = rest.word(tail);
    Span c = tail.trim();
    Coalition coalition;
    try {
      coalition = parse_coalition(c.text);
    } catch (const SyntaxError& e) {
      throw SyntaxError(c.offset + e.position(), e.expected(), e.what());
    }
    return Justification::necessitation(number_at(i, "line number") - 1,
                                        std::move(coalition));
  }
  if (key.text == "thm") {
    Span id = rest.trim();
    if (id.text.empty()) fail(id, "theorem id", "missing theorem id");
    return Justification::theorem_ref(std::string(id.text));
  }
  fail(key, "justification",
       "expected axiom, taut, hyp, mp, nec or thm");
}

}  // namespace

ProofScript parse_proof_script(std::string_view text) {
  ProofScript script;
  std::size_t start = 0;
  bool seen_line = false;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Span line = Span{raw, start}.trim();
    start = end + 1;
    if (line.text.empty()) continue;

    auto header = [&](std::string_view key) -> std::optional<Span> {
      if (line.text.substr(0, key.size()) != key) return std::nullopt;
      return line.drop(key.size()).trim();
    };
    if (auto id = header("theorem:")) {
      if (seen_line) fail(line, "numbered line", "header after proof lines");
      script.id = std::string(id->text);
    } else if (auto h = header("hyp:")) {
      if (seen_line) fail(line, "numbered line", "header after proof lines");
      script.hypotheses.push_back(formula_at(*h));
    } else if (auto g = header("goal:")) {
      if (seen_line) fail(line, "numbered line", "header after proof lines");
      if (script.goal) fail(line, "numbered line", "second goal");
      script.goal = formula_at(*g);
    } else {
      std::size_t dot = line.text.find('.');
      if (dot == std::string_view::npos) {
        fail(line, "header or numbered line", "expected 'N.' or a header");
      }
      Span num{line.text.substr(0, dot), line.offset};
      std::size_t n = number_at(num, "line number");
      if (n != script.lines.size() + 1) {
        fail(num, "line " + std::to_string(script.lines.size() + 1),
             "lines must be numbered consecutively from 1");
      }
      Span body = line.drop(dot + 1);
      PrefixParse parsed = [&] {
        try {
          return parse_formula_prefix(body.text);
        } catch (const SyntaxError& e) {
          throw SyntaxError(body.offset + e.position(), e.expected(), e.what());
        }
      }();
      Span just = body.drop(parsed.consumed).trim();
      if (just.text.empty()) fail(just, "justification", "missing justification");
      script.lines.push_back({parsed.formula, justification_at(just)});
      seen_line = true;
    }
  }
  return script;
}

std::string render_justification(const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::kAxiom:
      return "axiom " + std::string(schema_name(j.axiom));
    case Justification::Kind::kTautology:
      return "taut";
    case Justification::Kind::kHypothesis:
      return "hyp " + std::to_string(j.first + 1);
    case Justification::Kind::kTheorem:
      return "thm " + j.theorem;
    case Justification::Kind::kModusPonens:
      return "mp " + std::to_string(j.first + 1) + " " +
             std::to_string(j.second + 1);
    case Justification::Kind::kNecessitation:
      return "nec " + std::to_string(j.first + 1) + " " +
             j.coalition.to_string();
  }
  return "";
}

std::string render_proof_script(const ProofScript& s) {
  std::string out;
  if (!s.id.empty()) out += "theorem: " + s.id + "\n";
  for (const auto& h : s.hypotheses) out += "hyp: " + render(h) + "\n";
  if (s.goal) out += "goal: " + render(*s.goal) + "\n";
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    out += std::to_string(i + 1) + ". " + render(s.lines[i].formula) + "   " +
           render_justification(s.lines[i].justification) + "\n";
  }
  return out;
}

}  // namespace dtw
