#ifndef DTW_COALITION_H_
#define DTW_COALITION_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace dtw {

using Agent = std::string;

// A finite set of agents. Members are kept sorted and unique, so equality
// and ordering are set-theoretic regardless of construction order.
class Coalition {
 public:
  Coalition() = default;
  Coalition(std::initializer_list<Agent> members);
  explicit Coalition(std::vector<Agent> members);

  const std::vector<Agent>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(std::string_view agent) const;
  bool subset_of(const Coalition& other) const;
  bool proper_subset_of(const Coalition& other) const;
  bool disjoint_from(const Coalition& other) const;

  Coalition unite(const Coalition& other) const;
  Coalition intersect(const Coalition& other) const;
  Coalition minus(const Coalition& other) const;
  Coalition with(const Agent& agent) const;
  Coalition without(std::string_view agent) const;

  // Subset selected by bit i <-> members()[i].
  Coalition subset(std::size_t mask) const;

  // "[a,b]"
  std::string to_string() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;
  friend auto operator<=>(const Coalition&, const Coalition&) = default;

 private:
  std::vector<Agent> members_;
};

}  // namespace dtw

#endif  // DTW_COALITION_H_
