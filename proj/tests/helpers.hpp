#pragma once

#include <string>
#include <vector>

#include "conlat/io.hpp"

#ifndef CONLAT_FIXTURES_DIR
#define CONLAT_FIXTURES_DIR "fixtures"
#endif

inline std::string fx(const std::string& name) {
  return std::string(CONLAT_FIXTURES_DIR) + "/" + name;
}

inline conlat::FiniteAlgebra load_fx(const std::string& name) {
  return conlat::load_algebra(fx(name));
}

// Every algebra fixture shipped with the repo, for corpus-wide property tests.
inline const std::vector<std::string>& algebra_fixtures() {
  static const std::vector<std::string> names = {
      "two.json", "stone.json", "fig4_B.json", "n5.json",
      "enriched_n5.json", "l1.json", "l2.json", "fig3_C.json",
  };
  return names;
}

// Order relation of a lattice-signature algebra: x <= y iff meet(x,y) = x.
inline conlat::Lattice lattice_of_algebra(const conlat::FiniteAlgebra& a) {
  const conlat::Operation* meet = nullptr;
  for (const auto& op : a.operations)
    if (op.name == "meet") meet = &op;
  if (!meet) throw conlat::precondition_error("lattice_of_algebra: no meet operation");
  const int n = a.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (conlat::Idx x = 0; x < n; ++x)
    for (conlat::Idx y = 0; y < n; ++y)
      leq[x][y] = a.apply(*meet, {x, y}) == x;
  return conlat::Lattice(a.elements, leq);
}
