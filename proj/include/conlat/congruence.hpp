#ifndef CONLAT_CONGRUENCE_HPP
#define CONLAT_CONGRUENCE_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"
#include "conlat/partition.hpp"

namespace conlat {

// Least congruence relating a and b: union-find fixed point, repeatedly
// applying every operation to argument tuples that differ in one coordinate
// by a currently merged pair.
inline Partition principal_congruence(const FiniteAlgebra& alg, Idx a, Idx b) {
  const int n = alg.size();
  Partition p(n);
  p.merge_raw(a, b);
  p.canonicalize();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& op : alg.operations) {
      if (op.arity == 0) continue;
      for (int pos = 0; pos < op.arity; ++pos) {
        for_each_tuple(n, op.arity, [&](const std::vector<Idx>& args) {
          Idx base = alg.apply(op, args);
          std::vector<Idx> mod = args;
          for (Idx v = args[pos] + 1; v < n; ++v) {
            if (!p.related(v, args[pos])) continue;
            mod[pos] = v;
            Idx other = alg.apply(op, mod);
            if (!p.related(base, other)) {
              p.merge_raw(base, other);
              p.canonicalize();
              changed = true;
            }
          }
        });
      }
    }
  }
  return p;
}

class ConLattice {
 public:
  FiniteAlgebra algebra;
  std::vector<Partition> congruences;       // sorted by canonical rep vector
  std::vector<std::vector<bool>> leq;       // refinement order

  int size() const { return static_cast<int>(congruences.size()); }

  int index_of(const Partition& p) const {
    for (int i = 0; i < size(); ++i)
      if (congruences[i] == p) return i;
    throw validation_error("ConLattice: congruence not present");
  }

  int bottom() const { return index_of(Partition::identity(algebra.size())); }
  int top() const { return index_of(Partition::total(algebra.size())); }

  Lattice as_lattice() const {
    std::vector<std::string> labels;
    labels.reserve(congruences.size());
    for (const auto& c : congruences) labels.push_back(c.to_string(algebra.elements));
    return Lattice(std::move(labels), leq);
  }

  // The interval above theta, as a lattice.
  Lattice upset_lattice(const Partition& theta) const {
    std::vector<int> members;
    int t = index_of(theta);
    for (int i = 0; i < size(); ++i)
      if (leq[t][i]) members.push_back(i);
    std::vector<std::string> labels;
    const int m = static_cast<int>(members.size());
    std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i) {
      labels.push_back(congruences[members[i]].to_string(algebra.elements));
      for (int j = 0; j < m; ++j) rel[i][j] = leq[members[i]][members[j]];
    }
    return Lattice(std::move(labels), std::move(rel));
  }
};

// All congruences: principal congruences closed under pairwise join.
inline ConLattice congruence_lattice(const FiniteAlgebra& alg,
                                     long long count_guard = 100000) {
  const int n = alg.size();
  std::set<Partition> found;
  found.insert(Partition::identity(n));
  std::vector<Partition> fresh;
  for (Idx a = 0; a < n; ++a)
    for (Idx b = a + 1; b < n; ++b) {
      Partition p = principal_congruence(alg, a, b);
      if (found.insert(p).second) fresh.push_back(p);
    }
  while (!fresh.empty()) {
    std::vector<Partition> next;
    for (const auto& p : fresh)
      for (const auto& q : found) {
        Partition j = p.join(q);
        if (found.count(j)) continue;
        found.insert(j);
        next.push_back(j);
        if (static_cast<long long>(found.size()) > count_guard)
          throw guard_error("congruence_lattice: count exceeds guard");
      }
    fresh = std::move(next);
  }
  ConLattice cl;
  cl.algebra = alg;
  cl.congruences.assign(found.begin(), found.end());
  const int m = cl.size();
  cl.leq.assign(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      cl.leq[i][j] = cl.congruences[i].refines(cl.congruences[j]);
  return cl;
}

// Brute-force oracle: all partitions filtered by compatibility.  Exponential;
// intended for small fixtures only.
inline std::vector<Partition> congruences_brute_force(const FiniteAlgebra& alg) {
  std::vector<Partition> out;
  for (const auto& p : all_partitions(alg.size()))
    if (is_congruence(alg, p)) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

// Least non-identity congruence, when unique (i.e. the algebra is
// subdirectly irreducible).
inline std::optional<Partition> monolith(const FiniteAlgebra& alg) {
  if (alg.size() < 2) throw precondition_error("monolith: one-element algebra");
  // The monolith, if it exists, is the least principal congruence Cg(a,b)
  // with a != b; it exists iff that least element is below all of them.
  std::vector<Partition> principals;
  for (Idx a = 0; a < alg.size(); ++a)
    for (Idx b = a + 1; b < alg.size(); ++b)
      principals.push_back(principal_congruence(alg, a, b));
  Partition least = principals[0];
  for (const auto& p : principals)
    if (p.refines(least)) least = p;
  for (const auto& p : principals)
    if (!least.refines(p)) return std::nullopt;
  return least;
}

enum class AlgebraClass { Simple, SubdirectlyIrreducibleNotSimple, NotSI };

inline const char* to_string(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::Simple: return "simple";
    case AlgebraClass::SubdirectlyIrreducibleNotSimple: return "subdirectly-irreducible-not-simple";
    default: return "not-SI";
  }
}

inline AlgebraClass classify(const FiniteAlgebra& alg) {
  if (alg.size() < 2) throw precondition_error("classify: one-element algebra");
  auto mono = monolith(alg);
  if (!mono) return AlgebraClass::NotSI;
  if (mono->is_total()) return AlgebraClass::Simple;
  return AlgebraClass::SubdirectlyIrreducibleNotSimple;
}

// Congruences with a unique upper cover in Con(A); the top is excluded.
inline std::vector<Partition> meet_irreducible_congruences(const ConLattice& cl) {
  Lattice l = cl.as_lattice();
  std::vector<Partition> out;
  for (int i : meet_irreducible_indices(l)) out.push_back(cl.congruences[i]);
  return out;
}

// Correspondence-theorem self test: the interval above theta in Con(A) is
// isomorphic to Con(A/theta).
inline bool upset_isomorphic_to_quotient_con(const FiniteAlgebra& alg, const Partition& theta) {
  ConLattice cl = congruence_lattice(alg);
  Lattice up = cl.upset_lattice(theta);
  auto [q, proj] = quotient(alg, theta);
  Lattice qcon = congruence_lattice(q).as_lattice();
  return lattice_isomorphic(up, qcon);
}

}  // namespace conlat

#endif  // CONLAT_CONGRUENCE_HPP
