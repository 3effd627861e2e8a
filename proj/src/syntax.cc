#include "dtw/syntax.h"

#include <cctype>
#include <optional>
#include <vector>

#include "dtw/error.h"

namespace dtw {
namespace {

enum class Tok {
  kEnd,
  kIdent,
  kFalse,
  kKnow,
  kDualKnow,
  kBlame,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;  // 0-based byte offset
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::kEnd, "", start};
    const char c = text_[pos_];
    auto single = [&](Tok t) {
      ++pos_;
      return Token{t, std::string(1, c), start};
    };
    switch (c) {
      case '~': return single(Tok::kNot);
      case '&': return single(Tok::kAnd);
      case '|': return single(Tok::kOr);
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      case '[': return single(Tok::kLBracket);
      case ']': return single(Tok::kRBracket);
      case ',': return single(Tok::kComma);
      default: break;
    }
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return {Tok::kImplies, "->", start};
    }
    if (text_.substr(pos_, 3) == "<->") {
      pos_ += 3;
      return {Tok::kIff, "<->", start};
    }
    if (ident_start(c) || c == '_') {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && ident_char(text_[end])) ++end;
      std::string word(text_.substr(pos_, end - pos_));
      if (c == '_') {
        throw SyntaxError(start + 1, "identifier",
                          "reserved identifier '" + word + "'");
      }
      pos_ = end;
      if (word == "false") return {Tok::kFalse, word, start};
      if (word == "K") return {Tok::kKnow, word, start};
      if (word == "Kd") return {Tok::kDualKnow, word, start};
      if (word == "B") return {Tok::kBlame, word, start};
      return {Tok::kIdent, word, start};
    }
    throw SyntaxError(start + 1, "token",
                      std::string("unexpected character '") + c + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) {
    advance();
  }

  Formula formula() { return iff_level(); }

  Coalition coalition() {
    expect(Tok::kLBracket, "'['");
    std::vector<Agent> members;
    if (cur_.kind != Tok::kRBracket) {
      for (;;) {
        if (cur_.kind != Tok::kIdent) fail("agent identifier");
        for (const auto& m : members) {
          if (m == cur_.text) {
            throw SyntaxError(cur_.offset + 1, "agent identifier",
                              "duplicate agent '" + cur_.text + "'");
          }
        }
        members.push_back(cur_.text);
        advance();
        if (cur_.kind != Tok::kComma) break;
        advance();
      }
    }
    expect(Tok::kRBracket, "',' or ']'");
    return Coalition(std::move(members));
  }

  const Token& current() const { return cur_; }

  // Offset where the current (unconsumed) token starts.
  std::size_t resume_offset() const { return cur_.offset; }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found = cur_.kind == Tok::kEnd
                                  ? "end of input"
                                  : "'" + cur_.text + "'";
    throw SyntaxError(cur_.offset + 1, expected,
                      "expected " + expected + ", found " + found);
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok t, const std::string& what) {
    if (cur_.kind != t) fail(what);
    advance();
  }

  Formula iff_level() {
    Formula lhs = impl_level();
    while (cur_.kind == Tok::kIff) {
      advance();
      lhs = iff(lhs, impl_level());
    }
    return lhs;
  }

  Formula impl_level() {
    Formula lhs = disj_level();
    if (cur_.kind == Tok::kImplies) {
      advance();
      return Formula::implies(lhs, impl_level());
    }
    return lhs;
  }

  Formula disj_level() {
    Formula lhs = conj_level();
    while (cur_.kind == Tok::kOr) {
      advance();
      lhs = disj(lhs, conj_level());
    }
    return lhs;
  }

  Formula conj_level() {
    Formula lhs = unary();
    while (cur_.kind == Tok::kAnd) {
      advance();
      lhs = conj(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    switch (cur_.kind) {
      case Tok::kNot:
        advance();
        return Formula::negation(unary());
      case Tok::kKnow: {
        advance();
        Coalition c = coalition();
        return Formula::know(std::move(c), unary());
      }
      case Tok::kDualKnow: {
        advance();
        Coalition c = coalition();
        return dual_know(std::move(c), unary());
      }
      case Tok::kBlame: {
        advance();
        Coalition knowers = coalition();
        Coalition actors = coalition();
        return Formula::blame(std::move(knowers), std::move(actors), unary());
      }
      case Tok::kFalse:
        advance();
        return falsum();
      case Tok::kIdent: {
        Formula p = Formula::prop(cur_.text);
        advance();
        return p;
      }
      case Tok::kLParen: {
        advance();
        Formula inner = formula();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      default:
        fail("formula");
    }
  }

  Lexer lexer_;
  Token cur_{Tok::kEnd, "", 0};
};

bool blank(std::string_view text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  if (blank(text)) throw EmptyInput();
  Parser parser(text);
  Formula f = parser.formula();
  if (parser.current().kind != Tok::kEnd) parser.fail("end of input");
  return f;
}

PrefixParse parse_formula_prefix(std::string_view text) {
  if (blank(text)) throw EmptyInput();
  Parser parser(text);
  Formula f = parser.formula();
  std::size_t consumed = parser.current().kind == Tok::kEnd
                             ? text.size()
                             : parser.resume_offset();
  return {std::move(f), consumed};
}

Coalition parse_coalition(std::string_view text) {
  if (blank(text)) throw EmptyInput();
  Parser parser(text);
  Coalition c = parser.coalition();
  if (parser.current().kind != Tok::kEnd) parser.fail("end of input");
  return c;
}

bool is_identifier(std::string_view token) {
  if (token.empty() || !ident_start(token.front())) return false;
  for (char c : token) {
    if (!ident_char(c)) return false;
  }
  return token != "false" && token != "K" && token != "Kd" && token != "B";
}

namespace {

void render_into(const Formula& f, std::string& out);

void render_operand(const Formula& f, std::string& out) {
  if (f.is(Formula::Kind::kImplies)) {
    out += '(';
    render_into(f, out);
    out += ')';
  } else {
    render_into(f, out);
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::kProp:
      out += f.name();
      return;
    case Formula::Kind::kNot:
      if (is_falsum(f)) {
        out += "false";
        return;
      }
      out += '~';
      render_operand(f.operand(), out);
      return;
    case Formula::Kind::kImplies:
      render_operand(f.lhs(), out);
      out += " -> ";
      render_into(f.rhs(), out);
      return;
    case Formula::Kind::kKnow:
      out += "K" + f.knowers().to_string() + " ";
      render_operand(f.operand(), out);
      return;
    case Formula::Kind::kBlame:
      out += "B" + f.knowers().to_string() + f.actors().to_string() + " ";
      render_operand(f.operand(), out);
      return;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace dtw
