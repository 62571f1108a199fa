#ifndef CONLAT_ALGEBRA_HPP
#define CONLAT_ALGEBRA_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "conlat/errors.hpp"
#include "conlat/partition.hpp"

namespace conlat {

// A finitary operation given by its full table.  The table is row-major with
// the first argument most significant: entry for (a1,...,ak) sits at
// a1*n^(k-1) + a2*n^(k-2) + ... + ak.  Arity 0 is a constant (table size 1).
struct Operation {
  std::string name;
  int arity = 0;
  std::vector<Idx> table;
};

class FiniteAlgebra {
 public:
  std::string name;
  std::vector<std::string> elements;
  std::vector<Operation> operations;

  int size() const { return static_cast<int>(elements.size()); }

  Idx index_of(const std::string& label) const {
    for (Idx i = 0; i < size(); ++i)
      if (elements[i] == label) return i;
    throw validation_error("unknown element label: " + label);
  }

  Idx apply(const Operation& op, const std::vector<Idx>& args) const {
    size_t flat = 0;
    for (Idx a : args) flat = flat * size() + a;
    return op.table[flat];
  }

  // Checks closure, table sizes and label distinctness; returns the list of
  // violations (empty iff valid).
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (elements.empty()) out.push_back("empty universe");
    std::set<std::string> labels(elements.begin(), elements.end());
    if (labels.size() != elements.size()) out.push_back("duplicate element labels");
    for (const auto& op : operations) {
      if (op.arity < 0) {
        out.push_back("operation " + op.name + ": negative arity");
        continue;
      }
      size_t expected = 1;
      for (int i = 0; i < op.arity; ++i) expected *= elements.size();
      if (op.table.size() != expected) {
        out.push_back("operation " + op.name + ": table has " +
                      std::to_string(op.table.size()) + " entries, expected " +
                      std::to_string(expected));
        continue;
      }
      for (size_t t = 0; t < op.table.size(); ++t)
        if (op.table[t] < 0 || op.table[t] >= size()) {
          out.push_back("operation " + op.name + ": entry " + std::to_string(t) +
                        " = " + std::to_string(op.table[t]) + " out of range");
          break;
        }
    }
    return out;
  }

  void validate() const {
    auto v = violations();
    if (!v.empty()) {
      std::string msg = "invalid algebra" + (name.empty() ? "" : " " + name) + ":";
      for (const auto& s : v) msg += "\n  " + s;
      throw validation_error(msg);
    }
  }

  bool operator==(const FiniteAlgebra& other) const {
    if (elements != other.elements || operations.size() != other.operations.size())
      return false;
    for (size_t i = 0; i < operations.size(); ++i)
      if (operations[i].name != other.operations[i].name ||
          operations[i].arity != other.operations[i].arity ||
          operations[i].table != other.operations[i].table)
        return false;
    return true;
  }

  // Flattened table encoding, used for deterministic deduplication.
  std::vector<Idx> table_key() const {
    std::vector<Idx> key;
    key.push_back(size());
    for (const auto& op : operations) {
      key.push_back(op.arity);
      key.insert(key.end(), op.table.begin(), op.table.end());
    }
    return key;
  }
};

inline bool same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.operations.size() != b.operations.size()) return false;
  for (size_t i = 0; i < a.operations.size(); ++i)
    if (a.operations[i].name != b.operations[i].name ||
        a.operations[i].arity != b.operations[i].arity)
      return false;
  return true;
}

struct Homomorphism {
  FiniteAlgebra source;
  FiniteAlgebra target;
  std::vector<Idx> map;  // source index -> target index

  Idx operator()(Idx i) const { return map[i]; }

  bool commutes() const {
    for (size_t o = 0; o < source.operations.size(); ++o) {
      const auto& ops = source.operations[o];
      const auto& opt = target.operations[o];
      std::vector<Idx> args(ops.arity, 0), imgs(ops.arity, 0);
      size_t total = 1;
      for (int i = 0; i < ops.arity; ++i) total *= source.size();
      for (size_t flat = 0; flat < total; ++flat) {
        size_t rest = flat;
        for (int i = ops.arity - 1; i >= 0; --i) {
          args[i] = static_cast<Idx>(rest % source.size());
          rest /= source.size();
        }
        for (int i = 0; i < ops.arity; ++i) imgs[i] = map[args[i]];
        if (map[source.apply(ops, args)] != target.apply(opt, imgs)) return false;
      }
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<bool> hit(target.size(), false);
    for (Idx i : map) hit[i] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  bool is_bijective() const {
    return source.size() == target.size() && is_surjective();
  }

  Partition kernel() const {
    Partition p(source.size());
    std::map<Idx, Idx> first;
    for (Idx i = 0; i < source.size(); ++i) {
      auto it = first.find(map[i]);
      if (it == first.end())
        first.emplace(map[i], i);
      else
        p.merge_raw(it->second, i);
    }
    p.canonicalize();
    return p;
  }
};

inline Homomorphism identity_hom(const FiniteAlgebra& a) {
  Homomorphism h{a, a, std::vector<Idx>(a.size())};
  std::iota(h.map.begin(), h.map.end(), 0);
  return h;
}

// Helper: iterate all argument tuples of an operation, calling f(args).
inline void for_each_tuple(int n, int arity, const std::function<void(const std::vector<Idx>&)>& f) {
  std::vector<Idx> args(arity, 0);
  size_t total = 1;
  for (int i = 0; i < arity; ++i) total *= n;
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rest = flat;
    for (int i = arity - 1; i >= 0; --i) {
      args[i] = static_cast<Idx>(rest % n);
      rest /= n;
    }
    f(args);
  }
}

// Least subuniverse containing the seed (and all constants).
inline std::vector<Idx> subalgebra_generated(const FiniteAlgebra& a, std::vector<Idx> seed) {
  bool has_constant = std::any_of(a.operations.begin(), a.operations.end(),
                                  [](const Operation& op) { return op.arity == 0; });
  if (seed.empty() && !has_constant)
    throw precondition_error("subalgebra_generated: empty seed and constant-free signature");
  std::vector<bool> in(a.size(), false);
  for (Idx i : seed) in[i] = true;
  for (const auto& op : a.operations)
    if (op.arity == 0) in[op.table[0]] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& op : a.operations) {
      if (op.arity == 0) continue;
      for_each_tuple(a.size(), op.arity, [&](const std::vector<Idx>& args) {
        for (Idx x : args)
          if (!in[x]) return;
        Idx out = a.apply(op, args);
        if (!in[out]) {
          in[out] = true;
          changed = true;
        }
      });
    }
  }
  std::vector<Idx> out;
  for (Idx i = 0; i < a.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

inline bool is_closed_subset(const FiniteAlgebra& a, const std::vector<bool>& in) {
  for (const auto& op : a.operations) {
    if (op.arity == 0) {
      if (!in[op.table[0]]) return false;
      continue;
    }
    bool ok = true;
    for_each_tuple(a.size(), op.arity, [&](const std::vector<Idx>& args) {
      if (!ok) return;
      for (Idx x : args)
        if (!in[x]) return;
      if (!in[a.apply(op, args)]) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// All nonempty closed subsets, sorted by (size, lexicographic membership).
inline std::vector<std::vector<Idx>> all_subalgebras(const FiniteAlgebra& a,
                                                     int size_guard = 16) {
  if (a.size() > size_guard)
    throw guard_error("all_subalgebras: |A| = " + std::to_string(a.size()) +
                      " exceeds guard " + std::to_string(size_guard));
  std::vector<std::vector<Idx>> out;
  const unsigned n = static_cast<unsigned>(a.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<bool> in(n, false);
    for (unsigned i = 0; i < n; ++i)
      if (mask & (1u << i)) in[i] = true;
    if (!is_closed_subset(a, in)) continue;
    std::vector<Idx> subset;
    for (unsigned i = 0; i < n; ++i)
      if (in[i]) subset.push_back(static_cast<Idx>(i));
    out.push_back(std::move(subset));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

// The algebra carried by a closed subset, elements kept in ascending order.
inline FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a, const std::vector<Idx>& subset) {
  std::vector<Idx> to_sub(a.size(), -1);
  for (size_t i = 0; i < subset.size(); ++i) to_sub[subset[i]] = static_cast<Idx>(i);
  FiniteAlgebra s;
  s.name = a.name + "|sub";
  for (Idx i : subset) s.elements.push_back(a.elements[i]);
  const int m = static_cast<int>(subset.size());
  for (const auto& op : a.operations) {
    Operation sop{op.name, op.arity, {}};
    size_t total = 1;
    for (int i = 0; i < op.arity; ++i) total *= m;
    sop.table.resize(total);
    for_each_tuple(m, op.arity, [&](const std::vector<Idx>& args) {
      std::vector<Idx> big(args.size());
      for (size_t i = 0; i < args.size(); ++i) big[i] = subset[args[i]];
      size_t flat = 0;
      for (Idx x : args) flat = flat * m + x;
      Idx out = a.apply(op, big);
      if (to_sub[out] < 0) throw validation_error("induced_subalgebra: subset not closed");
      sop.table[flat] = to_sub[out];
    });
    s.operations.push_back(std::move(sop));
  }
  return s;
}

inline bool is_congruence(const FiniteAlgebra& a, const Partition& theta);

// Quotient by a congruence; blocks are labeled by their least member.
// Also returns the natural projection.
inline std::pair<FiniteAlgebra, Homomorphism> quotient(const FiniteAlgebra& a,
                                                       const Partition& theta) {
  if (!is_congruence(a, theta))
    throw precondition_error("quotient: partition is not a congruence of " + a.name);
  auto blocks = theta.blocks();
  std::vector<Idx> block_of(a.size());
  for (size_t b = 0; b < blocks.size(); ++b)
    for (Idx x : blocks[b]) block_of[x] = static_cast<Idx>(b);
  FiniteAlgebra q;
  q.name = a.name + "/theta";
  for (const auto& blk : blocks) q.elements.push_back(a.elements[blk[0]]);
  const int m = static_cast<int>(blocks.size());
  for (const auto& op : a.operations) {
    Operation qop{op.name, op.arity, {}};
    size_t total = 1;
    for (int i = 0; i < op.arity; ++i) total *= m;
    qop.table.resize(total);
    for_each_tuple(m, op.arity, [&](const std::vector<Idx>& args) {
      std::vector<Idx> reps(args.size());
      for (size_t i = 0; i < args.size(); ++i) reps[i] = blocks[args[i]][0];
      size_t flat = 0;
      for (Idx x : args) flat = flat * m + x;
      qop.table[flat] = block_of[a.apply(op, reps)];
    });
    q.operations.push_back(std::move(qop));
  }
  Homomorphism proj{a, q, block_of};
  return {std::move(q), std::move(proj)};
}

// Compatibility check via single-coordinate substitutions (sufficient for
// equivalence relations, by transitivity).
inline bool is_congruence(const FiniteAlgebra& a, const Partition& theta) {
  const int n = a.size();
  for (const auto& op : a.operations) {
    if (op.arity == 0) continue;
    for (int pos = 0; pos < op.arity; ++pos) {
      bool ok = true;
      for_each_tuple(n, op.arity, [&](const std::vector<Idx>& args) {
        if (!ok) return;
        Idx base = a.apply(op, args);
        std::vector<Idx> mod = args;
        for (Idx v = 0; v < n; ++v) {
          if (v == args[pos] || !theta.related(v, args[pos])) continue;
          mod[pos] = v;
          if (!theta.related(base, a.apply(op, mod))) {
            ok = false;
            return;
          }
        }
      });
      if (!ok) return false;
    }
  }
  return true;
}

// All homomorphisms A -> B (optionally only surjective ones), by
// backtracking in element order; deterministic output.
inline std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& a,
                                                const FiniteAlgebra& b,
                                                bool surjective_only = false,
                                                long long step_guard = 20'000'000) {
  if (!same_signature(a, b))
    throw precondition_error("enumerate_homs: signature mismatch between " + a.name +
                             " and " + b.name);
  std::vector<Homomorphism> out;
  std::vector<Idx> map(a.size(), -1);
  std::vector<int> hits(b.size(), 0);
  long long steps = 0;

  // Check every operation constraint whose arguments are all assigned and
  // involve position `last`.
  auto consistent = [&](int last) {
    for (size_t o = 0; o < a.operations.size(); ++o) {
      const auto& opa = a.operations[o];
      const auto& opb = b.operations[o];
      if (opa.arity == 0) {
        Idx c = opa.table[0];
        if (map[c] >= 0 && map[c] != opb.table[0]) return false;
        continue;
      }
      bool ok = true;
      for_each_tuple(a.size(), opa.arity, [&](const std::vector<Idx>& args) {
        if (!ok) return;
        bool involves = false;
        for (Idx x : args)
          if (x == last) involves = true;
        Idx outv = a.apply(opa, args);
        if (!involves && outv != last) return;
        for (Idx x : args)
          if (map[x] < 0) return;
        if (map[outv] < 0) return;
        std::vector<Idx> imgs(args.size());
        for (size_t i = 0; i < args.size(); ++i) imgs[i] = map[args[i]];
        if (map[outv] != b.apply(opb, imgs)) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  };

  std::function<void(int)> rec = [&](int i) {
    if (++steps > step_guard)
      throw guard_error("enumerate_homs: search guard exceeded");
    if (i == a.size()) {
      int covered = 0;
      for (int h : hits)
        if (h > 0) ++covered;
      if (surjective_only && covered < b.size()) return;
      out.push_back(Homomorphism{a, b, map});
      return;
    }
    for (Idx v = 0; v < b.size(); ++v) {
      map[i] = v;
      ++hits[v];
      if (consistent(i)) {
        if (!surjective_only || [&] {
              int missing = 0;
              for (int h : hits)
                if (h == 0) ++missing;
              return missing <= a.size() - (i + 1);
            }())
          rec(i + 1);
      }
      --hits[v];
      map[i] = -1;
    }
  };
  rec(0);
  return out;
}

// Isomorphism search: backtracking on a bijection, pruned by per-element
// invariants (output multiplicities per operation).
inline std::optional<Homomorphism> are_isomorphic(const FiniteAlgebra& a,
                                                  const FiniteAlgebra& b) {
  if (!same_signature(a, b) || a.size() != b.size()) return std::nullopt;
  const int n = a.size();

  auto profile = [](const FiniteAlgebra& alg) {
    std::vector<std::vector<int>> prof(alg.size());
    for (const auto& op : alg.operations) {
      std::vector<int> outs(alg.size(), 0);
      for (Idx v : op.table) ++outs[v];
      for (Idx i = 0; i < alg.size(); ++i) prof[i].push_back(outs[i]);
      if (op.arity == 1)
        for (Idx i = 0; i < alg.size(); ++i) prof[i].push_back(op.table[i] == i ? 1 : 0);
    }
    return prof;
  };
  auto pa = profile(a), pb = profile(b);

  std::vector<Idx> map(n, -1);
  std::vector<bool> used(n, false);

  auto consistent = [&](int last) {
    for (size_t o = 0; o < a.operations.size(); ++o) {
      const auto& opa = a.operations[o];
      const auto& opb = b.operations[o];
      if (opa.arity == 0) {
        Idx c = opa.table[0];
        if (map[c] >= 0 && map[c] != opb.table[0]) return false;
        continue;
      }
      bool ok = true;
      for_each_tuple(n, opa.arity, [&](const std::vector<Idx>& args) {
        if (!ok) return;
        bool involves = false;
        for (Idx x : args)
          if (x == last) involves = true;
        Idx outv = a.apply(opa, args);
        if (!involves && outv != last) return;
        for (Idx x : args)
          if (map[x] < 0) return;
        if (map[outv] < 0) return;
        std::vector<Idx> imgs(args.size());
        for (size_t i = 0; i < args.size(); ++i) imgs[i] = map[args[i]];
        if (map[outv] != b.apply(opb, imgs)) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  };

  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return true;
    for (Idx v = 0; v < n; ++v) {
      if (used[v] || pa[i] != pb[v]) continue;
      map[i] = v;
      used[v] = true;
      if (consistent(i) && rec(i + 1)) return true;
      used[v] = false;
      map[i] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return Homomorphism{a, b, map};
}

// Direct product; element labels encode the tuples.
inline FiniteAlgebra direct_product(const std::vector<FiniteAlgebra>& factors,
                                    long long size_guard = 4096) {
  if (factors.empty()) throw precondition_error("direct_product: empty factor list");
  for (size_t i = 1; i < factors.size(); ++i)
    if (!same_signature(factors[0], factors[i]))
      throw precondition_error("direct_product: signature mismatch");
  long long total = 1;
  for (const auto& f : factors) {
    total *= f.size();
    if (total > size_guard)
      throw guard_error("direct_product: size exceeds guard " + std::to_string(size_guard));
  }
  const int k = static_cast<int>(factors.size());
  FiniteAlgebra p;
  p.name = "product";
  std::vector<std::vector<Idx>> tuples;
  std::vector<Idx> cur(k, 0);
  std::function<void(int)> gen = [&](int i) {
    if (i == k) {
      tuples.push_back(cur);
      std::ostringstream os;
      os << '(';
      for (int j = 0; j < k; ++j) {
        if (j) os << ',';
        os << factors[j].elements[cur[j]];
      }
      os << ')';
      p.elements.push_back(os.str());
      return;
    }
    for (Idx v = 0; v < factors[i].size(); ++v) {
      cur[i] = v;
      gen(i + 1);
    }
  };
  gen(0);
  std::map<std::vector<Idx>, Idx> index;
  for (size_t i = 0; i < tuples.size(); ++i) index[tuples[i]] = static_cast<Idx>(i);
  const int m = static_cast<int>(tuples.size());
  for (size_t o = 0; o < factors[0].operations.size(); ++o) {
    Operation pop{factors[0].operations[o].name, factors[0].operations[o].arity, {}};
    size_t tsz = 1;
    for (int i = 0; i < pop.arity; ++i) tsz *= m;
    pop.table.resize(tsz);
    for_each_tuple(m, pop.arity, [&](const std::vector<Idx>& args) {
      std::vector<Idx> result(k);
      for (int j = 0; j < k; ++j) {
        std::vector<Idx> comp(args.size());
        for (size_t i = 0; i < args.size(); ++i) comp[i] = tuples[args[i]][j];
        result[j] = factors[j].apply(factors[j].operations[o], comp);
      }
      size_t flat = 0;
      for (Idx x : args) flat = flat * m + x;
      pop.table[flat] = index.at(result);
    });
    p.operations.push_back(std::move(pop));
  }
  return p;
}

}  // namespace conlat

#endif  // CONLAT_ALGEBRA_HPP
