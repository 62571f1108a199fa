#ifndef CONLAT_LATTICE_HPP
#define CONLAT_LATTICE_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/poset.hpp"

namespace conlat {

// A finite lattice presented by its order.  Meets and joins are computed
// from the leq matrix; is_lattice() checks they exist.
class Lattice {
 public:
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;

  Lattice() = default;
  Lattice(std::vector<std::string> lab, std::vector<std::vector<bool>> rel)
      : labels(std::move(lab)), leq(std::move(rel)) {}

  int size() const { return static_cast<int>(labels.size()); }

  Poset as_poset() const { return Poset(labels, leq); }

  std::optional<int> meet(int a, int b) const {
    // greatest common lower bound
    int best = -1;
    for (int x = 0; x < size(); ++x) {
      if (!leq[x][a] || !leq[x][b]) continue;
      if (best < 0 || leq[best][x]) best = x;
    }
    if (best < 0) return std::nullopt;
    for (int x = 0; x < size(); ++x)
      if (leq[x][a] && leq[x][b] && !leq[x][best]) return std::nullopt;
    return best;
  }

  std::optional<int> join(int a, int b) const {
    int best = -1;
    for (int x = 0; x < size(); ++x) {
      if (!leq[a][x] || !leq[b][x]) continue;
      if (best < 0 || leq[x][best]) best = x;
    }
    if (best < 0) return std::nullopt;
    for (int x = 0; x < size(); ++x)
      if (leq[a][x] && leq[b][x] && !leq[best][x]) return std::nullopt;
    return best;
  }

  bool is_lattice() const {
    for (int a = 0; a < size(); ++a)
      for (int b = a; b < size(); ++b)
        if (!meet(a, b) || !join(a, b)) return false;
    return size() > 0;
  }

  int bottom() const {
    for (int i = 0; i < size(); ++i) {
      bool below_all = true;
      for (int j = 0; j < size(); ++j)
        if (!leq[i][j]) below_all = false;
      if (below_all) return i;
    }
    throw validation_error("lattice: no bottom element");
  }

  int top() const {
    for (int i = 0; i < size(); ++i) {
      bool above_all = true;
      for (int j = 0; j < size(); ++j)
        if (!leq[j][i]) above_all = false;
      if (above_all) return i;
    }
    throw validation_error("lattice: no top element");
  }

  std::vector<int> upper_covers(int i) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j) {
      if (!leq[i][j] || i == j) continue;
      bool cover = true;
      for (int k = 0; k < size(); ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j]) cover = false;
      if (cover) out.push_back(j);
    }
    return out;
  }

  std::vector<std::pair<int, int>> cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
      for (int j : upper_covers(i)) out.emplace_back(i, j);
    return out;
  }

  // Equivalent to excluding M3 and N5 as sublattices.
  bool is_distributive() const {
    for (int x = 0; x < size(); ++x)
      for (int y = 0; y < size(); ++y)
        for (int z = 0; z < size(); ++z) {
          int lhs = *meet(x, *join(y, z));
          int rhs = *join(*meet(x, y), *meet(x, z));
          if (lhs != rhs) return false;
        }
    return true;
  }

  bool is_chain() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (!leq[i][j] && !leq[j][i]) return false;
    return true;
  }
};

inline bool lattice_isomorphic(const Lattice& a, const Lattice& b) {
  // An order isomorphism of lattices preserves meet and join.
  return poset_isomorphic(a.as_poset(), b.as_poset());
}

// Meet-irreducible elements: unique upper cover; the top is excluded.
inline std::vector<int> meet_irreducible_indices(const Lattice& l) {
  std::vector<int> out;
  for (int i = 0; i < l.size(); ++i)
    if (l.upper_covers(i).size() == 1) out.push_back(i);
  return out;
}

inline Poset induced_subposet(const Poset& p, const std::vector<int>& subset) {
  std::vector<std::string> labels;
  const int m = static_cast<int>(subset.size());
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) {
    labels.push_back(p.elements[subset[i]]);
    for (int j = 0; j < m; ++j) rel[i][j] = p.leq[subset[i]][subset[j]];
  }
  return Poset(std::move(labels), std::move(rel));
}

inline Poset meet_irreducibles_of(const Lattice& l) {
  if (!l.is_lattice()) throw validation_error("meet_irreducibles_of: input is not a lattice");
  return induced_subposet(l.as_poset(), meet_irreducible_indices(l));
}

// The finite distributive lattice whose meet-irreducible poset is P: order
// filters of P under reverse inclusion.  The map x -> up(x) embeds P as the
// meet-irreducibles.
inline Lattice materialize(const Poset& p, long long size_guard = 100000) {
  const int n = p.size();
  if (n > 24) throw guard_error("materialize: poset too large");
  std::vector<unsigned> filters;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool up_closed = true;
    for (int i = 0; i < n && up_closed; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = 0; j < n; ++j)
        if (p.leq[i][j] && !(mask & (1u << j))) up_closed = false;
    }
    if (up_closed) filters.push_back(mask);
    if (static_cast<long long>(filters.size()) > size_guard)
      throw guard_error("materialize: lattice size exceeds guard");
  }
  // Bottom = full filter first; order by descending popcount, then by mask.
  std::sort(filters.begin(), filters.end(), [](unsigned a, unsigned b) {
    int ca = __builtin_popcount(a), cb = __builtin_popcount(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  const int m = static_cast<int>(filters.size());
  std::vector<std::string> labels(m);
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int e = 0; e < n; ++e)
      if (filters[i] & (1u << e)) {
        if (!first) os << ' ';
        os << p.elements[e];
        first = false;
      }
    os << '}';
    labels[i] = os.str();
    for (int j = 0; j < m; ++j) rel[i][j] = (filters[i] & filters[j]) == filters[j];
  }
  return Lattice(std::move(labels), std::move(rel));
}

// Condition (**): M(L) splits into antichains N and D, N the non-maximal
// elements, and every n in N lies below exactly two members of D.
struct DoublestarReport {
  bool holds = false;
  std::vector<int> n_part;  // indices into the poset
  std::vector<int> d_part;
  std::string why;
};

inline DoublestarReport check_doublestar(const Poset& p) {
  DoublestarReport r;
  r.d_part = p.maximal_elements();
  std::vector<bool> in_d(p.size(), false);
  for (int d : r.d_part) in_d[d] = true;
  for (int i = 0; i < p.size(); ++i)
    if (!in_d[i]) r.n_part.push_back(i);
  if (!p.is_antichain(r.n_part)) {
    r.why = "the non-maximal elements are not an antichain";
    return r;
  }
  for (int n : r.n_part) {
    int above = 0;
    bool all_in_d = true;
    for (int j : p.strict_upper(n)) {
      ++above;
      if (!in_d[j]) all_in_d = false;
    }
    if (!all_in_d || above != 2) {
      r.why = "element " + p.elements[n] + " has " + std::to_string(above) +
              " elements strictly above it (need exactly two maximal ones)";
      return r;
    }
  }
  r.holds = true;
  return r;
}

// Hypothesis for chain realizations: every up-set within P is a chain
// with at most n elements (so the corresponding interval has length <= n).
inline bool check_chain_condition(const Poset& p, int n) {
  for (int i = 0; i < p.size(); ++i) {
    auto up = p.up_set(i);
    if (!p.is_chain(up)) return false;
    if (static_cast<int>(up.size()) > n) return false;
  }
  return true;
}

// The five-element lattice with one atom under two coatoms.
inline Lattice v_lattice() {
  Poset p = Poset::from_pairs({"0", "m", "a", "b", "1"},
                              {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
  return Lattice(p.elements, p.leq);
}

}  // namespace conlat

#endif  // CONLAT_LATTICE_HPP
