#ifndef CONLAT_COMPAT_HPP
#define CONLAT_COMPAT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/errors.hpp"
#include "conlat/partition.hpp"

namespace conlat {

// A binary relation over a finite base set.
struct ERelation {
  std::vector<std::string> base;
  std::set<std::pair<Idx, Idx>> pairs;

  int base_size() const { return static_cast<int>(base.size()); }

  bool contains(Idx a, Idx b) const { return pairs.count({a, b}) > 0; }

  bool has_offdiagonal_pair() const {
    for (auto [a, b] : pairs)
      if (a != b) return true;
    return false;
  }

  bool is_reflexive() const {
    for (int i = 0; i < base_size(); ++i)
      if (!contains(i, i)) return false;
    return true;
  }
};

// E = (h0, h1)[C] = {(h0(c), h1(c)) : c in C}.
inline ERelation relation_of_pair(const Homomorphism& h0, const Homomorphism& h1) {
  if (!(h0.source == h1.source))
    throw precondition_error("relation_of_pair: homomorphisms have different sources");
  if (h0.target.elements != h1.target.elements)
    throw precondition_error("relation_of_pair: homomorphisms have different target carriers");
  ERelation e;
  e.base = h0.target.elements;
  for (Idx c = 0; c < h0.source.size(); ++c) e.pairs.insert({h0(c), h1(c)});
  return e;
}

struct XyzTriple {
  Idx x, y, z;
};

struct XyzReport {
  enum class Status { Ok, Fail, Inapplicable } status;
  // Per-pair witnesses when Ok (lexicographically least triple per pair).
  std::map<std::pair<Idx, Idx>, XyzTriple> witnesses;
  std::optional<std::pair<Idx, Idx>> failing_pair;

  bool ok() const { return status == Status::Ok; }
};

// For every (a,b) in E, looks for x,y,z with the twelve memberships
// (x,x),(y,y),(z,z),(x,y),(x,z),(y,z),(x,a),(x,b),(a,y),(y,b),(a,z),(b,z)
// all in E.  Requires an off-diagonal pair in E to be applicable.
inline XyzReport check_xyz(const ERelation& e) {
  XyzReport r;
  if (!e.has_offdiagonal_pair()) {
    r.status = XyzReport::Status::Inapplicable;
    return r;
  }
  const int k = e.base_size();
  for (auto [a, b] : e.pairs) {
    bool found = false;
    for (Idx x = 0; x < k && !found; ++x)
      for (Idx y = 0; y < k && !found; ++y)
        for (Idx z = 0; z < k && !found; ++z) {
          if (e.contains(x, x) && e.contains(y, y) && e.contains(z, z) &&
              e.contains(x, y) && e.contains(x, z) && e.contains(y, z) &&
              e.contains(x, a) && e.contains(x, b) && e.contains(a, y) &&
              e.contains(y, b) && e.contains(a, z) && e.contains(b, z)) {
            r.witnesses[{a, b}] = {x, y, z};
            found = true;
          }
        }
    if (!found) {
      r.status = XyzReport::Status::Fail;
      r.failing_pair = {a, b};
      r.witnesses.clear();
      return r;
    }
  }
  r.status = XyzReport::Status::Ok;
  return r;
}

// A linearly ordered family of functions X -> B; the order is the sequence
// order.
struct CompatibleFamily {
  std::vector<std::string> domain;              // labels of X
  std::vector<std::vector<Idx>> functions;      // each maps X index -> B index
  int base_size = 0;

  int domain_size() const { return static_cast<int>(domain.size()); }
  int family_size() const { return static_cast<int>(functions.size()); }

  Partition kernel(int f) const {
    Partition p(domain_size());
    std::map<Idx, Idx> first;
    for (Idx t = 0; t < domain_size(); ++t) {
      auto it = first.find(functions[f][t]);
      if (it == first.end())
        first.emplace(functions[f][t], t);
      else
        p.merge_raw(it->second, t);
    }
    p.canonicalize();
    return p;
  }
};

struct CompatReport {
  bool compatible = false;
  bool strong = false;
  std::string counterexample;
};

// Checks (f_i, f_j)[X] = E for all i < j in the stored order; with `strong`,
// also that no kernel contains the intersection of the other kernels.
inline CompatReport verify_compatible(const CompatibleFamily& fam, const ERelation& e,
                                      bool strong) {
  CompatReport r;
  const int k = fam.family_size();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      std::set<std::pair<Idx, Idx>> image;
      for (Idx t = 0; t < fam.domain_size(); ++t)
        image.insert({fam.functions[i][t], fam.functions[j][t]});
      if (image != e.pairs) {
        r.counterexample = "image of pair (f" + std::to_string(i + 1) + ",f" +
                           std::to_string(j + 1) + ") differs from E";
        return r;
      }
    }
  r.compatible = true;
  if (!strong) return r;
  for (int i = 0; i < k; ++i) {
    // intersection of the other kernels
    Partition inter = Partition::total(fam.domain_size());
    for (int j = 0; j < k; ++j)
      if (j != i) inter = inter.meet(fam.kernel(j));
    if (inter.refines(fam.kernel(i))) {
      r.counterexample = "Ker f" + std::to_string(i + 1) +
                         " contains the intersection of the other kernels";
      return r;
    }
  }
  r.strong = true;
  return r;
}

// The explicit construction of a strongly E-compatible family of size k.
// Half-integers of H are encoded as integers 1..2k+1 (value h -> 2h), so
// function index m corresponds to encoded 2m.  Domain X = E x U with
// U = {(i,j) : i < j in H}.
inline CompatibleFamily build_family(const ERelation& e, int k) {
  if (k < 1) throw precondition_error("build_family: k must be positive");
  XyzReport xyz = check_xyz(e);
  if (!xyz.ok())
    throw precondition_error(
        "build_family: condition (iii) fails for E, no witness triples exist");

  auto half_label = [](int enc) {
    if (enc % 2 == 0) return std::to_string(enc / 2);
    return std::to_string(enc) + "/2";
  };

  CompatibleFamily fam;
  fam.base_size = e.base_size();
  std::vector<std::tuple<Idx, Idx, int, int>> points;  // (a, b, i, j) encoded
  const int hmax = 2 * k + 1;
  for (auto [a, b] : e.pairs)
    for (int i = 1; i <= hmax; ++i)
      for (int j = i + 1; j <= hmax; ++j) {
        points.emplace_back(a, b, i, j);
        std::ostringstream os;
        os << '(' << e.base[a] << ',' << e.base[b] << ',' << half_label(i) << ','
           << half_label(j) << ')';
        fam.domain.push_back(os.str());
      }
  for (int m = 1; m <= k; ++m) {
    const int enc = 2 * m;
    std::vector<Idx> f;
    f.reserve(points.size());
    for (auto [a, b, i, j] : points) {
      const XyzTriple& w = xyz.witnesses.at({a, b});
      Idx v;
      if (enc < i)
        v = w.x;
      else if (enc == i)
        v = a;
      else if (enc < j)
        v = w.y;
      else if (enc == j)
        v = b;
      else
        v = w.z;
      f.push_back(v);
    }
    fam.functions.push_back(std::move(f));
  }
  auto check = verify_compatible(fam, e, true);
  if (!(check.compatible && check.strong))
    throw validation_error("build_family: constructed family failed verification: " +
                           check.counterexample);
  return fam;
}

}  // namespace conlat

#endif  // CONLAT_COMPAT_HPP
