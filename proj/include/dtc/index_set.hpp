#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace dtc {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

/// Ordered set of small indices. Iteration is always ascending, which is what
/// makes every set-driven loop in the solver deterministic. The Tag parameter
/// keeps node sets and arc sets from mixing.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::uint32_t> xs) : items_(xs) { normalize(); }
  explicit IndexSet(std::vector<std::uint32_t> xs) : items_(std::move(xs)) { normalize(); }

  bool contains(std::uint32_t x) const {
    return std::binary_search(items_.begin(), items_.end(), x);
  }

  /// Returns true when x was actually new.
  bool insert(std::uint32_t x) {
    auto it = std::lower_bound(items_.begin(), items_.end(), x);
    if (it != items_.end() && *it == x) return false;
    items_.insert(it, x);
    return true;
  }

  bool erase(std::uint32_t x) {
    auto it = std::lower_bound(items_.begin(), items_.end(), x);
    if (it == items_.end() || *it != x) return false;
    items_.erase(it);
    return true;
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  void clear() { items_.clear(); }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<std::uint32_t>& items() const { return items_; }

  bool operator==(const IndexSet& o) const { return items_ == o.items_; }
  bool operator!=(const IndexSet& o) const { return items_ != o.items_; }
  /// Lexicographic on the ascending element sequence; used for canonical
  /// witness selection and as a map key order.
  bool operator<(const IndexSet& o) const {
    return std::lexicographical_compare(items_.begin(), items_.end(), o.items_.begin(),
                                        o.items_.end());
  }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<std::uint32_t> items_;
};

struct NodeTag {};
struct ArcTag {};

using NodeSet = IndexSet<NodeTag>;
using ArcSet = IndexSet<ArcTag>;

}  // namespace dtc
