#ifndef CONLAT_VARIETY_HPP
#define CONLAT_VARIETY_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/compat.hpp"
#include "conlat/congruence.hpp"
#include "conlat/diagram.hpp"
#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

// Subdirectly irreducible members of the variety generated by a finite
// algebra, classified by the shape of their congruence lattice.
struct SIInventory {
  FiniteAlgebra generator;
  std::vector<FiniteAlgebra> simples;
  std::vector<FiniteAlgebra> v_algebras;  // Con isomorphic to V
  std::vector<FiniteAlgebra> others;      // SI but neither of the above

  std::vector<const FiniteAlgebra*> all() const {
    std::vector<const FiniteAlgebra*> out;
    for (const auto& a : simples) out.push_back(&a);
    for (const auto& a : v_algebras) out.push_back(&a);
    for (const auto& a : others) out.push_back(&a);
    return out;
  }
};

// SI members of the generated congruence-distributive variety are quotients
// of subalgebras of the generator.  Deduplicated up to isomorphism, keeping
// the member with the lexicographically least table encoding.
inline SIInventory enumerate_si(const FiniteAlgebra& generator, int subalg_guard = 16,
                                long long con_guard = 100000) {
  generator.validate();
  SIInventory inv;
  inv.generator = generator;
  std::vector<FiniteAlgebra> found;  // pairwise non-isomorphic SI algebras
  for (const auto& subset : all_subalgebras(generator, subalg_guard)) {
    FiniteAlgebra sub = induced_subalgebra(generator, subset);
    if (sub.size() < 2) continue;
    ConLattice cl = congruence_lattice(sub, con_guard);
    if (!cl.as_lattice().is_distributive())
      throw precondition_error(
          "enumerate_si: Con of a subalgebra of " + generator.name +
          " is not distributive; the generated variety cannot be congruence-distributive");
    for (const auto& theta : cl.congruences) {
      if (theta.is_total()) continue;
      FiniteAlgebra q = theta.is_identity() ? sub : quotient(sub, theta).first;
      if (q.size() < 2) continue;
      if (classify(q) == AlgebraClass::NotSI) continue;
      bool known = false;
      for (auto& prev : found)
        if (are_isomorphic(prev, q)) {
          if (q.table_key() < prev.table_key()) {
            std::string keep_name = prev.name;
            prev = q;
            prev.name = keep_name;
          }
          known = true;
          break;
        }
      if (!known) found.push_back(q);
    }
  }
  Lattice v = v_lattice();
  std::sort(found.begin(), found.end(), [](const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.table_key() < b.table_key();
  });
  int si = 0, vi = 0, oi = 0;
  for (auto& a : found) {
    Lattice con = congruence_lattice(a).as_lattice();
    if (con.size() == 2) {
      a.name = "B" + std::to_string(++si);
      inv.simples.push_back(std::move(a));
    } else if (lattice_isomorphic(con, v)) {
      a.name = "C" + std::to_string(++vi);
      inv.v_algebras.push_back(std::move(a));
    } else {
      a.name = "S" + std::to_string(++oi);
      inv.others.push_back(std::move(a));
    }
  }
  return inv;
}

inline bool is_v_variety(const SIInventory& inv) { return inv.others.empty(); }

// An ordered pair of surjective homomorphisms from a V-algebra onto simples,
// with distinct kernels.  Pairs whose targets differ can never witness
// FD-maximality; they are kept but flagged.
struct QPair {
  FiniteAlgebra C;
  FiniteAlgebra B0;
  FiniteAlgebra B1;
  std::vector<Idx> h0;
  std::vector<Idx> h1;
  bool targets_match = false;
  ERelation E;  // defined only when targets_match
};

inline std::vector<QPair> enumerate_Q(const SIInventory& inv) {
  if (!is_v_variety(inv))
    throw precondition_error("enumerate_Q: not a V-variety (inventory has " +
                             std::to_string(inv.others.size()) +
                             " SI members that are neither simple nor V-shaped)");
  std::vector<QPair> out;
  for (const auto& c : inv.v_algebras) {
    // surjective homs from c onto each simple, by target
    std::vector<std::vector<Homomorphism>> homs;
    for (const auto& b : inv.simples) {
      if (!same_signature(c, b)) {
        homs.emplace_back();
        continue;
      }
      homs.push_back(enumerate_homs(c, b, /*surjective_only=*/true));
    }
    for (size_t i0 = 0; i0 < inv.simples.size(); ++i0)
      for (size_t i1 = 0; i1 < inv.simples.size(); ++i1)
        for (const auto& h0 : homs[i0])
          for (const auto& h1 : homs[i1]) {
            if (h0.kernel() == h1.kernel()) continue;
            QPair q;
            q.C = c;
            q.B0 = inv.simples[i0];
            q.B1 = inv.simples[i1];
            q.h0 = h0.map;
            q.h1 = h1.map;
            q.targets_match = (i0 == i1);
            if (q.targets_match) q.E = relation_of_pair(h0, h1);
            out.push_back(std::move(q));
          }
  }
  return out;
}

struct FdmaxVerdict {
  bool maximal = false;
  std::optional<WitnessPair> witness;
  std::string reason;
  SIInventory inventory;
  std::vector<QPair> q_pairs;
};

// Decision procedure for congruence FD-maximality of the V-variety generated
// by a finite algebra: maximal iff some Q-pair has a common simple target,
// distinct kernels, and an E-relation passing the (iii) witness check.
inline FdmaxVerdict decide_fdmax(const FiniteAlgebra& generator) {
  FdmaxVerdict v;
  v.inventory = enumerate_si(generator);
  if (!is_v_variety(v.inventory))
    throw precondition_error(
        "decide_fdmax: the generated variety is not a V-variety; the criterion does not apply");
  if (v.inventory.v_algebras.empty()) {
    // Every SI member is simple; the admissible lattices are the Boolean
    // ones and products of simples realize them all.
    v.maximal = true;
    v.reason = "every subdirectly irreducible member is simple";
    return v;
  }
  v.q_pairs = enumerate_Q(v.inventory);
  bool any_common_target = false;
  std::string iii_failure;
  for (const auto& q : v.q_pairs) {
    if (!q.targets_match) continue;
    any_common_target = true;
    XyzReport r = check_xyz(q.E);
    if (r.ok()) {
      v.maximal = true;
      v.witness = WitnessPair{q.C, q.B0, q.h0, q.h1, q.E};
      v.reason = "witness pair " + q.C.name + " -> " + q.B0.name +
                 " satisfies compatibility condition (iii)";
      return v;
    }
    if (r.status == XyzReport::Status::Fail && iii_failure.empty())
      iii_failure = "condition (iii) fails for every pair; e.g. pair (" +
                    q.B0.elements[r.failing_pair->first] + "," +
                    q.B0.elements[r.failing_pair->second] + ") of E has no witness triple";
  }
  v.maximal = false;
  if (v.q_pairs.empty())
    v.reason = v.inventory.v_algebras.empty()
                   ? "no SI member has congruence lattice V"
                   : "no ordered pair of surjective homomorphisms onto simples has "
                     "distinct kernels";
  else if (!any_common_target)
    v.reason = "no pair of surjective homomorphisms with distinct kernels shares "
               "its simple target";
  else
    v.reason = iii_failure;
  return v;
}

}  // namespace conlat

#endif  // CONLAT_VARIETY_HPP
