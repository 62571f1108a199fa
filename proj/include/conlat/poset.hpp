#ifndef CONLAT_POSET_HPP
#define CONLAT_POSET_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conlat/errors.hpp"

namespace conlat {

// A finite poset as a full relation matrix.
class Poset {
 public:
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> leq;  // leq[i][j] <=> i <= j

  Poset() = default;
  Poset(std::vector<std::string> elems, std::vector<std::vector<bool>> rel)
      : elements(std::move(elems)), leq(std::move(rel)) {}

  // Builds from a generating relation; applies reflexive-transitive closure
  // and validates antisymmetry.
  static Poset from_pairs(std::vector<std::string> elems,
                          const std::vector<std::pair<int, int>>& pairs) {
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) rel[i][i] = true;
    for (auto [a, b] : pairs) rel[a][b] = true;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (rel[i][k])
          for (int j = 0; j < n; ++j)
            if (rel[k][j]) rel[i][j] = true;
    Poset p(std::move(elems), std::move(rel));
    p.validate();
    return p;
  }

  int size() const { return static_cast<int>(elements.size()); }

  void validate() const {
    const int n = size();
    if (static_cast<int>(leq.size()) != n) throw validation_error("poset: bad matrix size");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(leq[i].size()) != n)
        throw validation_error("poset: bad matrix row size");
      if (!leq[i][i]) throw validation_error("poset: not reflexive at " + elements[i]);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i != j && leq[i][j] && leq[j][i])
          throw validation_error("poset: antisymmetry fails on " + elements[i] + ", " +
                                 elements[j]);
        if (leq[i][j])
          for (int k = 0; k < n; ++k)
            if (leq[j][k] && !leq[i][k])
              throw validation_error("poset: transitivity fails");
      }
  }

  bool lt(int i, int j) const { return leq[i][j] && i != j; }

  std::vector<int> up_set(int i) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
      if (leq[i][j]) out.push_back(j);
    return out;
  }

  std::vector<int> strict_upper(int i) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
      if (lt(i, j)) out.push_back(j);
    return out;
  }

  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (strict_upper(i).empty()) out.push_back(i);
    return out;
  }

  bool is_antichain(const std::vector<int>& subset) const {
    for (int a : subset)
      for (int b : subset)
        if (a != b && leq[a][b]) return false;
    return true;
  }

  bool is_chain(const std::vector<int>& subset) const {
    for (int a : subset)
      for (int b : subset)
        if (!leq[a][b] && !leq[b][a]) return false;
    return true;
  }

  // A linear extension: repeatedly take the minimal remaining point with the
  // smallest index.  Deterministic.
  std::vector<int> topological_order() const {
    std::vector<int> order;
    std::vector<bool> taken(size(), false);
    for (int step = 0; step < size(); ++step) {
      for (int i = 0; i < size(); ++i) {
        if (taken[i]) continue;
        bool minimal = true;
        for (int j = 0; j < size(); ++j)
          if (!taken[j] && lt(j, i)) minimal = false;
        if (minimal) {
          order.push_back(i);
          taken[i] = true;
          break;
        }
      }
    }
    return order;
  }
};

// Order isomorphism by backtracking with up/down-degree pruning.  Works on
// any pair of relation matrices (posets or lattices given by order).
inline std::optional<std::vector<int>> order_isomorphism(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return std::nullopt;
  const int n = p.size();
  auto degrees = [](const Poset& x) {
    std::vector<std::pair<int, int>> d(x.size());
    for (int i = 0; i < x.size(); ++i) {
      int up = 0, down = 0;
      for (int j = 0; j < x.size(); ++j) {
        if (x.leq[i][j]) ++up;
        if (x.leq[j][i]) ++down;
      }
      d[i] = {up, down};
    }
    return d;
  };
  auto dp = degrees(p), dq = degrees(q);
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return true;
    for (int v = 0; v < n; ++v) {
      if (used[v] || dp[i] != dq[v]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (p.leq[i][j] != q.leq[v][map[j]]) ok = false;
        if (p.leq[j][i] != q.leq[map[j]][v]) ok = false;
      }
      if (!ok) continue;
      map[i] = v;
      used[v] = true;
      if (rec(i + 1)) return true;
      used[v] = false;
      map[i] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return map;
}

inline bool poset_isomorphic(const Poset& p, const Poset& q) {
  return order_isomorphism(p, q).has_value();
}

}  // namespace conlat

#endif  // CONLAT_POSET_HPP
