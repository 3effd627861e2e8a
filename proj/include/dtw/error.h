#ifndef DTW_ERROR_H_
#define DTW_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed concrete syntax. `position` is a 1-based character offset.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected,
              const std::string& message)
      : Error("position " + std::to_string(position) + ": " + message),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class EmptyInput : public SyntaxError {
 public:
  EmptyInput() : SyntaxError(1, "formula", "empty input") {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(Join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& v) {
    std::string out = "invalid game:";
    for (const auto& s : v) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

class UnknownAgent : public Error {
 public:
  explicit UnknownAgent(const std::string& agent)
      : Error("unknown agent '" + agent + "'"), agent_(agent) {}
  const std::string& agent() const { return agent_; }

 private:
  std::string agent_;
};

class UnknownState : public Error {
 public:
  explicit UnknownState(const std::string& state)
      : Error("unknown initial state '" + state + "'") {}
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class UniverseTooLarge : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

class TooManyAtoms : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

}  // namespace dtw

#endif  // DTW_ERROR_H_
