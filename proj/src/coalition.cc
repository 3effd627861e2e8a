#include "dtw/coalition.h"

#include <algorithm>
#include <iterator>

namespace dtw {

Coalition::Coalition(std::initializer_list<Agent> members)
    : Coalition(std::vector<Agent>(members)) {}

Coalition::Coalition(std::vector<Agent> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Coalition::contains(std::string_view agent) const {
  return std::binary_search(members_.begin(), members_.end(), agent);
}

bool Coalition::subset_of(const Coalition& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

bool Coalition::proper_subset_of(const Coalition& other) const {
  return size() < other.size() && subset_of(other);
}

bool Coalition::disjoint_from(const Coalition& other) const {
  return intersect(other).empty();
}

Coalition Coalition::unite(const Coalition& other) const {
  Coalition out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out.members_));
  return out;
}

Coalition Coalition::intersect(const Coalition& other) const {
  Coalition out;
  std::set_intersection(members_.begin(), members_.end(),
                        other.members_.begin(), other.members_.end(),
                        std::back_inserter(out.members_));
  return out;
}

Coalition Coalition::minus(const Coalition& other) const {
  Coalition out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out.members_));
  return out;
}

Coalition Coalition::with(const Agent& agent) const {
  return unite(Coalition{agent});
}

Coalition Coalition::without(std::string_view agent) const {
  Coalition out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), agent);
  if (it != out.members_.end() && *it == agent) out.members_.erase(it);
  return out;
}

Coalition Coalition::subset(std::size_t mask) const {
  Coalition out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (mask & (std::size_t{1} << i)) out.members_.push_back(members_[i]);
  }
  return out;
}

std::string Coalition::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ",";
    out += members_[i];
  }
  return out + "]";
}

}  // namespace dtw
