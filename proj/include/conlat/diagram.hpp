#ifndef CONLAT_DIAGRAM_HPP
#define CONLAT_DIAGRAM_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/compat.hpp"
#include "conlat/congruence.hpp"
#include "conlat/errors.hpp"
#include "conlat/lattice.hpp"
#include "conlat/poset.hpp"

namespace conlat {

// An ordered diagram of algebras: one algebra per index point, one
// connecting map per comparable pair.  Identity maps are implicit.
class Diagram {
 public:
  Poset index;
  std::vector<FiniteAlgebra> algebras;                  // by index point
  std::map<std::pair<int, int>, std::vector<Idx>> maps;  // (p,q), p < q strictly

  const std::vector<Idx>& map_for(int p, int q) const {
    static thread_local std::vector<Idx> ident;
    if (p == q) {
      ident.resize(algebras[p].size());
      std::iota(ident.begin(), ident.end(), 0);
      return ident;
    }
    auto it = maps.find({p, q});
    if (it == maps.end())
      throw validation_error("diagram: missing map " + index.elements[p] + " -> " +
                             index.elements[q]);
    return it->second;
  }

  // Fills in missing composite maps along chains p < q < r.
  void synthesize_composites() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int p = 0; p < index.size(); ++p)
        for (int q = 0; q < index.size(); ++q) {
          if (!index.lt(p, q) || !maps.count({p, q})) continue;
          for (int r = 0; r < index.size(); ++r) {
            if (!index.lt(q, r) || !maps.count({q, r}) || maps.count({p, r})) continue;
            const auto& f = maps.at({p, q});
            const auto& g = maps.at({q, r});
            std::vector<Idx> comp(f.size());
            for (size_t i = 0; i < f.size(); ++i) comp[i] = g[f[i]];
            maps.emplace(std::make_pair(p, r), std::move(comp));
            changed = true;
          }
        }
    }
  }

  void validate() const {
    index.validate();
    if (static_cast<int>(algebras.size()) != index.size())
      throw validation_error("diagram: algebra count does not match index poset");
    for (int p = 1; p < index.size(); ++p)
      if (!same_signature(algebras[0], algebras[p]))
        throw validation_error("diagram: signature mismatch at " + index.elements[p]);
    for (int p = 0; p < index.size(); ++p)
      for (int q = 0; q < index.size(); ++q) {
        if (!index.lt(p, q)) {
          if (maps.count({p, q}))
            throw validation_error("diagram: map for incomparable or reversed pair " +
                                   index.elements[p] + " -> " + index.elements[q]);
          continue;
        }
        const auto& f = map_for(p, q);
        if (static_cast<int>(f.size()) != algebras[p].size())
          throw validation_error("diagram: map size mismatch at " + index.elements[p]);
        for (Idx v : f)
          if (v < 0 || v >= algebras[q].size())
            throw validation_error("diagram: map entry out of range");
        Homomorphism h{algebras[p], algebras[q], f};
        if (!h.commutes())
          throw validation_error("diagram: map " + index.elements[p] + " -> " +
                                 index.elements[q] + " is not a homomorphism");
      }
    // functoriality
    for (int p = 0; p < index.size(); ++p)
      for (int q = 0; q < index.size(); ++q)
        for (int r = 0; r < index.size(); ++r) {
          if (!(index.leq[p][q] && index.leq[q][r])) continue;
          const auto& f = map_for(p, q);
          const auto& g = map_for(q, r);
          const auto& h = map_for(p, r);
          for (size_t i = 0; i < f.size(); ++i)
            if (g[f[i]] != h[i])
              throw validation_error("diagram: functoriality fails on " +
                                     index.elements[p] + " <= " + index.elements[q] +
                                     " <= " + index.elements[r]);
        }
  }
};

struct LimitResult {
  FiniteAlgebra algebra;
  std::vector<int> point_order;            // topological order of index points
  std::vector<std::vector<Idx>> tuples;    // per limit element, by point_order
  std::vector<Homomorphism> projections;   // by index point (diagram order)

  Idx coordinate(Idx elem, int point) const {
    for (size_t k = 0; k < point_order.size(); ++k)
      if (point_order[k] == point) return tuples[elem][k];
    throw validation_error("limit: unknown index point");
  }
};

// The subalgebra of the direct product consisting of the compatible tuples.
// Enumerated by DFS over coordinates in topological order, so incomparable
// minimal points are free and the rest is forced.
inline LimitResult limit(const Diagram& d, long long size_guard = 64) {
  d.validate();
  const int np = d.index.size();
  auto order = d.index.topological_order();
  std::vector<int> pos_of(np);
  for (int k = 0; k < np; ++k) pos_of[order[k]] = k;

  std::vector<std::vector<Idx>> tuples;
  std::vector<Idx> cur(np, -1);  // by point index
  std::function<void(int)> rec = [&](int k) {
    if (k == np) {
      std::vector<Idx> t(np);
      for (int i = 0; i < np; ++i) t[i] = cur[order[i]];
      tuples.push_back(std::move(t));
      if (static_cast<long long>(tuples.size()) > size_guard)
        throw guard_error("limit: size exceeds guard " + std::to_string(size_guard));
      return;
    }
    int q = order[k];
    // value forced by any already-assigned p <= q
    Idx forced = -1;
    for (int j = 0; j < k; ++j) {
      int p = order[j];
      if (!d.index.leq[p][q]) continue;
      Idx v = d.map_for(p, q)[cur[p]];
      if (forced >= 0 && forced != v) return;
      forced = v;
    }
    if (forced >= 0) {
      cur[q] = forced;
      rec(k + 1);
      cur[q] = -1;
      return;
    }
    for (Idx v = 0; v < d.algebras[q].size(); ++v) {
      cur[q] = v;
      rec(k + 1);
    }
    cur[q] = -1;
  };
  rec(0);
  std::sort(tuples.begin(), tuples.end());

  LimitResult res;
  res.point_order = order;
  res.tuples = tuples;
  res.algebra.name = "limit";
  for (const auto& t : tuples) {
    std::ostringstream os;
    os << '(';
    for (int k = 0; k < np; ++k) {
      if (k) os << ',';
      os << d.algebras[order[k]].elements[t[k]];
    }
    os << ')';
    res.algebra.elements.push_back(os.str());
  }
  std::map<std::vector<Idx>, Idx> index_of;
  for (size_t i = 0; i < tuples.size(); ++i) index_of[tuples[i]] = static_cast<Idx>(i);
  const int m = static_cast<int>(tuples.size());
  for (size_t o = 0; o < d.algebras[0].operations.size(); ++o) {
    const auto& proto = d.algebras[0].operations[o];
    Operation lop{proto.name, proto.arity, {}};
    size_t tsz = 1;
    for (int i = 0; i < lop.arity; ++i) tsz *= m;
    lop.table.resize(tsz);
    for_each_tuple(m, lop.arity, [&](const std::vector<Idx>& args) {
      std::vector<Idx> result(np);
      for (int k = 0; k < np; ++k) {
        const auto& alg = d.algebras[order[k]];
        std::vector<Idx> comp(args.size());
        for (size_t i = 0; i < args.size(); ++i) comp[i] = tuples[args[i]][k];
        result[k] = alg.apply(alg.operations[o], comp);
      }
      auto it = index_of.find(result);
      if (it == index_of.end())
        throw validation_error("limit: componentwise image escapes the limit");
      size_t flat = 0;
      for (Idx x : args) flat = flat * m + x;
      lop.table[flat] = it->second;
    });
    res.algebra.operations.push_back(std::move(lop));
  }
  for (int p = 0; p < np; ++p) {
    std::vector<Idx> proj(m);
    for (int i = 0; i < m; ++i) proj[i] = tuples[i][pos_of[p]];
    res.projections.push_back(Homomorphism{res.algebra, d.algebras[p], proj});
  }
  return res;
}

struct AdmissibilityReport {
  bool cond_i = false;
  bool cond_ii = false;
  // failing (point, element) for (i); failing (p, q) for (ii)
  std::vector<std::pair<int, Idx>> missing_values;
  std::vector<std::pair<int, int>> inseparable_pairs;

  bool admissible() const { return cond_i && cond_ii; }
};

inline AdmissibilityReport check_admissible(const Diagram& d, const LimitResult& lim) {
  AdmissibilityReport r;
  const int np = d.index.size();
  r.cond_i = true;
  for (int p = 0; p < np; ++p) {
    std::vector<bool> hit(d.algebras[p].size(), false);
    for (Idx e = 0; e < lim.algebra.size(); ++e) hit[lim.coordinate(e, p)] = true;
    for (Idx u = 0; u < d.algebras[p].size(); ++u)
      if (!hit[u]) {
        r.cond_i = false;
        r.missing_values.emplace_back(p, u);
      }
  }
  r.cond_ii = true;
  for (int p = 0; p < np; ++p)
    for (int q = 0; q < np; ++q) {
      if (p == q || d.index.leq[p][q]) continue;
      bool found = false;
      for (Idx a = 0; a < lim.algebra.size() && !found; ++a)
        for (Idx b = a + 1; b < lim.algebra.size() && !found; ++b)
          if (lim.coordinate(a, p) == lim.coordinate(b, p) &&
              lim.coordinate(a, q) != lim.coordinate(b, q))
            found = true;
      if (!found) {
        r.cond_ii = false;
        r.inseparable_pairs.emplace_back(p, q);
      }
    }
  return r;
}

struct StarReport {
  bool holds = false;
  // per point: kernels present but not meet-irreducible / missing ones
  std::vector<std::string> problems;
};

// Condition (*): at every point p, the kernels of the outgoing maps
// (including the identity, contributing the identity partition) are exactly
// the meet-irreducible congruences of A_p.
inline StarReport check_star(const Diagram& d) {
  StarReport r;
  r.holds = true;
  for (int p = 0; p < d.index.size(); ++p) {
    std::set<Partition> kernels;
    for (int q = 0; q < d.index.size(); ++q) {
      if (!d.index.leq[p][q]) continue;
      Homomorphism h{d.algebras[p], d.algebras[q], d.map_for(p, q)};
      kernels.insert(h.kernel());
    }
    ConLattice cl = congruence_lattice(d.algebras[p]);
    std::set<Partition> mi;
    for (const auto& c : meet_irreducible_congruences(cl)) mi.insert(c);
    for (const auto& k : kernels)
      if (!mi.count(k)) {
        r.holds = false;
        r.problems.push_back("at " + d.index.elements[p] + ": kernel " +
                             k.to_string(d.algebras[p].elements) +
                             " is not meet-irreducible in Con");
      }
    for (const auto& c : mi)
      if (!kernels.count(c)) {
        r.holds = false;
        r.problems.push_back("at " + d.index.elements[p] + ": meet-irreducible " +
                             c.to_string(d.algebras[p].elements) +
                             " is not a kernel of any outgoing map");
      }
  }
  return r;
}

namespace detail {

inline void require_hypotheses(const Diagram& d, const LimitResult& lim,
                               const std::string& who) {
  auto adm = check_admissible(d, lim);
  if (!adm.admissible()) {
    std::string what = who + ": constructed diagram is not admissible:";
    for (auto [p, u] : adm.missing_values)
      what += " projection to " + d.index.elements[p] + " misses a value;";
    for (auto [p, q] : adm.inseparable_pairs)
      what += " admissibility (ii) fails for (" + d.index.elements[p] + "," +
              d.index.elements[q] + ");";
    throw precondition_error(what);
  }
  auto star = check_star(d);
  if (!star.holds) {
    std::string what = who + ": condition (*) fails:";
    for (const auto& s : star.problems) what += " " + s + ";";
    throw precondition_error(what);
  }
}

}  // namespace detail

// Chain realization: Con(C) must be an (n+1)-element chain and every up-set
// of the index poset a chain with at most n elements.  Builds the diagram of
// quotients C_i = C/alpha_i with the natural maps and returns its limit.
inline LimitResult realize_chain(const FiniteAlgebra& c, const Poset& l_poset,
                                 long long size_guard = 64) {
  ConLattice cl = congruence_lattice(c);
  Lattice conl = cl.as_lattice();
  if (!conl.is_chain())
    throw precondition_error("realize_chain: Con of " + c.name + " is not a chain");
  // alpha_0 > alpha_1 > ... > alpha_n, indexed from the top (alpha_0 total).
  std::vector<Partition> chain = cl.congruences;
  std::sort(chain.begin(), chain.end(),
            [](const Partition& a, const Partition& b) { return b.refines(a) && !(a == b); });
  const int n = static_cast<int>(chain.size()) - 1;
  if (!check_chain_condition(l_poset, n))
    throw precondition_error(
        "realize_chain: some up-set of the index poset is not a chain with at most " +
        std::to_string(n) + " elements");

  // Quotients C_i = C/alpha_i and natural maps g_ij : C_i -> C_j (j <= i).
  std::vector<FiniteAlgebra> quots;
  std::vector<std::vector<Idx>> proj;  // C -> C_i
  for (int i = 0; i <= n; ++i) {
    auto [q, h] = quotient(c, chain[i]);
    q.name = c.name + "_" + std::to_string(i);
    quots.push_back(std::move(q));
    proj.push_back(h.map);
  }
  auto natural = [&](int i, int j) {
    // g_ij(x/alpha_i) = x/alpha_j, defined since alpha_i refines alpha_j.
    std::vector<Idx> g(quots[i].size());
    std::vector<Idx> least(quots[i].size(), -1);
    for (Idx x = 0; x < c.size(); ++x)
      if (least[proj[i][x]] < 0) least[proj[i][x]] = x;
    for (Idx b = 0; b < quots[i].size(); ++b) g[b] = proj[j][least[b]];
    return g;
  };

  Diagram d;
  d.index = l_poset;
  std::vector<int> level(l_poset.size());
  for (int p = 0; p < l_poset.size(); ++p) {
    level[p] = static_cast<int>(l_poset.up_set(p).size());  // i(p)
    d.algebras.push_back(quots[level[p]]);
  }
  for (int p = 0; p < l_poset.size(); ++p)
    for (int q = 0; q < l_poset.size(); ++q)
      if (l_poset.lt(p, q)) d.maps[{p, q}] = natural(level[p], level[q]);
  LimitResult lim = limit(d, size_guard);
  detail::require_hypotheses(d, lim, "realize_chain");
  return lim;
}

// A surjective pair C -> B with distinct kernels, carrying its image
// relation E.
struct WitnessPair {
  FiniteAlgebra C;
  FiniteAlgebra B;
  std::vector<Idx> h0;
  std::vector<Idx> h1;
  ERelation E;
};

// V-shape realization: index poset must satisfy (**); the family fixes the
// linear order on D.  Each n gets h0 toward its earlier cover and h1 toward
// the later one.
inline LimitResult realize_vshape(const WitnessPair& w, const CompatibleFamily& family,
                                  const Poset& l_poset, long long size_guard = 64) {
  auto ds = check_doublestar(l_poset);
  if (!ds.holds)
    throw precondition_error("realize_vshape: index poset violates (**): " + ds.why);
  if (family.family_size() != static_cast<int>(ds.d_part.size()))
    throw precondition_error("realize_vshape: family size " +
                             std::to_string(family.family_size()) +
                             " does not match |D| = " + std::to_string(ds.d_part.size()));
  auto fam_check = verify_compatible(family, w.E, true);
  if (!(fam_check.compatible && fam_check.strong))
    throw precondition_error("realize_vshape: family is not strongly E-compatible: " +
                             fam_check.counterexample);

  // Position of each D-element in the family order; D-elements in index
  // order correspond to f_1 ⊏ f_2 ⊏ ...
  std::vector<int> rank(l_poset.size(), -1);
  for (size_t i = 0; i < ds.d_part.size(); ++i) rank[ds.d_part[i]] = static_cast<int>(i);

  Diagram d;
  d.index = l_poset;
  std::vector<bool> in_d(l_poset.size(), false);
  for (int x : ds.d_part) in_d[x] = true;
  for (int p = 0; p < l_poset.size(); ++p) d.algebras.push_back(in_d[p] ? w.B : w.C);
  for (int n : ds.n_part) {
    auto up = l_poset.strict_upper(n);
    int d0 = up[0], d1 = up[1];
    if (rank[d0] > rank[d1]) std::swap(d0, d1);
    d.maps[{n, d0}] = w.h0;
    d.maps[{n, d1}] = w.h1;
  }
  LimitResult lim = limit(d, size_guard);
  detail::require_hypotheses(d, lim, "realize_vshape");
  return lim;
}

}  // namespace conlat

#endif  // CONLAT_DIAGRAM_HPP
