// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion checks exact values on the shipped fixtures.

#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "conlat/diagram.hpp"
#include "conlat/variety.hpp"
#include "helpers.hpp"

using namespace conlat;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << note
            << "\n";
  if (!ok) ++failures;
}

bool require(bool cond, const char* what) {
  if (!cond) std::cout << "       failed: " << what << "\n";
  return cond;
}

}  // namespace

int main() {
  criterion(1, "Con of the pentagon has 5 congruences and shape V", [] {
    auto cl = congruence_lattice(load_fx("n5.json"));
    return require(cl.size() == 5, "five congruences") &&
           require(lattice_isomorphic(cl.as_lattice(), v_lattice()), "isomorphic to V");
  });

  criterion(2, "Con of the Stone algebra is the 3-chain; of the 2-element lattice, the 2-chain",
            [] {
              auto cs = congruence_lattice(load_fx("stone.json")).as_lattice();
              auto c2 = congruence_lattice(load_fx("two.json")).as_lattice();
              return require(cs.size() == 3 && cs.is_chain(), "Stone Con is a 3-chain") &&
                     require(c2.size() == 2 && c2.is_chain(), "2-element Con is a 2-chain");
            });

  criterion(3, "Con of the nine-element algebra: shape V, exact coatoms, monolith, quotients",
            [] {
              auto c = load_fx("fig3_C.json");
              auto b = load_fx("fig4_B.json");
              auto cl = congruence_lattice(c);
              if (!require(cl.size() == 5, "five congruences")) return false;
              if (!require(lattice_isomorphic(cl.as_lattice(), v_lattice()), "shape V"))
                return false;
              auto alpha = Partition::parse("(0 x y z)(u v w)(t)(1)", c.elements);
              auto beta = Partition::parse("(0)(x)(y u v)(z w t 1)", c.elements);
              std::set<Partition> all(cl.congruences.begin(), cl.congruences.end());
              if (!require(all.count(alpha) && all.count(beta), "exact coatom congruences"))
                return false;
              auto m = monolith(c);
              if (!require(m && m->to_string(c.elements) == "(0)(x)(y)(u v)(z)(w)(t)(1)",
                           "monolith collapses exactly {u,v}"))
                return false;
              return require(are_isomorphic(quotient(c, alpha).first, b).has_value() &&
                                 are_isomorphic(quotient(c, beta).first, b).has_value(),
                             "both coatom quotients isomorphic to the four-chain algebra");
            });

  criterion(4, "subalgebra census of the nine-element algebra", [] {
    auto c = load_fx("fig3_C.json");
    auto b = load_fx("fig4_B.json");
    auto subs = all_subalgebras(c);
    std::set<std::vector<Idx>> got(subs.begin(), subs.end());
    // elements 0 x y u v z w t 1 -> indices 0..8
    std::set<std::vector<Idx>> expected = {
        {0}, {5}, {8}, {0, 5}, {0, 8}, {5, 8},
        {0, 5, 8},                      // C1
        {0, 1, 2, 5},                   // C2
        {5, 6, 7, 8},                   // C3
        {0, 1, 2, 5, 8},                // C4
        {0, 5, 6, 7, 8},                // C5
        {0, 1, 2, 5, 6, 7, 8},          // C6
        {0, 1, 2, 4, 5, 6, 7, 8},       // C7
        {0, 1, 2, 3, 5, 6, 7, 8},       // C8
        {0, 1, 2, 3, 4, 5, 6, 7, 8},    // C
    };
    if (!require(got == expected, "exact list of closed subsets")) return false;
    auto c2 = induced_subalgebra(c, {0, 1, 2, 5});
    auto c3 = induced_subalgebra(c, {5, 6, 7, 8});
    if (!require(are_isomorphic(c2, b).has_value() && are_isomorphic(c3, b).has_value(),
                 "C2 and C3 isomorphic to the four-chain algebra"))
      return false;
    // C1 is a subdirect square of the two-element subalgebra: two congruences
    // meeting in the identity, both quotients of size two
    auto c1 = induced_subalgebra(c, {0, 5, 8});
    auto two_c = induced_subalgebra(c, {0, 8});
    auto cons = congruence_lattice(c1).congruences;
    bool subdirect = false;
    for (const auto& t0 : cons)
      for (const auto& t1 : cons) {
        if (t0.block_count() != 2 || t1.block_count() != 2) continue;
        if (!t0.meet(t1).is_identity()) continue;
        if (are_isomorphic(quotient(c1, t0).first, two_c).has_value() &&
            are_isomorphic(quotient(c1, t1).first, two_c).has_value())
          subdirect = true;
      }
    return require(subdirect, "C1 subdirect square of the two-element subalgebra");
  });

  criterion(5, "SI inventories: {C, B, 2} for the nine-element algebra; {N5, 2} for the pentagon",
            [] {
              auto c = load_fx("fig3_C.json");
              auto b = load_fx("fig4_B.json");
              auto inv = enumerate_si(c);
              bool has_b = false, has_2 = false;
              for (const auto& s : inv.simples) {
                if (s.size() == 4 && are_isomorphic(s, b).has_value()) has_b = true;
                if (s.size() == 2) has_2 = true;
              }
              if (!require(inv.simples.size() == 2 && has_b && has_2,
                           "simples are exactly B and 2"))
                return false;
              if (!require(inv.v_algebras.size() == 1 &&
                               are_isomorphic(inv.v_algebras[0], c).has_value() &&
                               inv.others.empty(),
                           "remaining SI member is C itself"))
                return false;
              auto n5 = load_fx("n5.json");
              auto invn = enumerate_si(n5);
              return require(invn.simples.size() == 1 && invn.simples[0].size() == 2 &&
                                 invn.v_algebras.size() == 1 &&
                                 are_isomorphic(invn.v_algebras[0], n5).has_value() &&
                                 invn.others.empty(),
                             "pentagon inventory is {N5, 2}");
            });

  criterion(6, "E-sets of the canonical pairs and their witness-triple checks", [] {
    auto n5 = load_fx("n5.json");
    auto two = load_fx("two.json");
    auto homs = enumerate_homs(n5, two, true);
    if (!require(homs.size() == 2, "two surjections onto 2")) return false;
    auto e5 = relation_of_pair(homs[0], homs[1]);
    if (!require(e5.pairs ==
                     std::set<std::pair<Idx, Idx>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                 "full relation for the pentagon pair"))
      return false;
    if (!require(check_xyz(e5).status == XyzReport::Status::Ok, "(iii) holds for the pentagon"))
      return false;

    auto c = load_fx("fig3_C.json");
    auto b = load_fx("fig4_B.json");
    auto ch = enumerate_homs(c, b, true);
    if (!require(ch.size() == 2, "two surjections onto B")) return false;
    auto ec = relation_of_pair(ch[0], ch[1]);
    auto expected = load_relation(fx("e_c.json"));
    auto et = relation_of_pair(ch[1], ch[0]);
    std::set<std::pair<Idx, Idx>> ect;
    for (auto [x, y] : et.pairs) ect.insert({y, x});
    if (!require(ec.pairs == expected.pairs || ect == expected.pairs,
                 "eight-pair relation for the nine-element algebra"))
      return false;
    auto r = check_xyz(expected);
    return require(r.status == XyzReport::Status::Fail && r.failing_pair &&
                       expected.base[r.failing_pair->first] == "a" &&
                       expected.base[r.failing_pair->second] == "b",
                   "(iii) fails with pair (a,b)");
  });

  criterion(7, "maximality verdicts for the three generators", [] {
    auto vn = decide_fdmax(load_fx("n5.json"));
    auto vc = decide_fdmax(load_fx("fig3_C.json"));
    auto ve = decide_fdmax(load_fx("enriched_n5.json"));
    return require(vn.maximal && vn.witness.has_value(), "pentagon variety maximal") &&
           require(!vc.maximal, "nine-element variety not maximal") &&
           require(!ve.maximal, "enriched pentagon variety not maximal");
  });

  criterion(8, "fan realization round trip on every double-star poset fixture", [] {
    auto verdict = decide_fdmax(load_fx("n5.json"));
    if (!require(verdict.witness.has_value(), "witness available")) return false;
    const auto& w = *verdict.witness;
    bool ok = true;
    for (const auto& name :
         {"poset_v.json", "poset_k3.json", "poset_d4.json", "poset_point.json",
          "poset_antichain2.json", "poset_antichain3.json"}) {
      auto p = load_poset(fx(name));
      auto ds = check_doublestar(p);
      if (!require(ds.holds && ds.d_part.size() <= 4, name)) return false;
      auto lim = realize_vshape(w, build_family(w.E, static_cast<int>(ds.d_part.size())), p);
      ok = ok && require(lattice_isomorphic(congruence_lattice(lim.algebra).as_lattice(),
                                            materialize(p)),
                         name);
      if (std::string(name) == "poset_k3.json")
        ok = ok && require(lim.algebra.size() == 16, "three-fan limit has 16 elements");
    }
    return ok;
  });

  criterion(9, "chain realization round trip for the Stone variety", [] {
    auto s = load_fx("stone.json");
    bool ok = true;
    for (const auto& name : {"poset_point.json", "poset_chain2.json",
                             "poset_antichain2.json", "poset_antichain3.json"}) {
      auto p = load_poset(fx(name));
      if (!require(check_chain_condition(p, 2) && p.size() <= 5, name)) return false;
      auto lim = realize_chain(s, p);
      ok = ok && require(lattice_isomorphic(congruence_lattice(lim.algebra).as_lattice(),
                                            materialize(p)),
                         name);
    }
    return ok;
  });

  criterion(10, "property suites: oracles, Birkhoff, families, reflexive sweep, up-sets", [] {
    // (a) congruence lattice vs all-partitions brute force
    for (const auto& name : {"two.json", "stone.json", "fig4_B.json", "n5.json",
                             "enriched_n5.json"}) {
      auto a = load_fx(name);
      auto fast = congruence_lattice(a).congruences;
      auto slow = congruences_brute_force(a);
      if (!require(std::set<Partition>(fast.begin(), fast.end()) ==
                       std::set<Partition>(slow.begin(), slow.end()),
                   "congruence oracle equivalence"))
        return false;
    }
    // (b) Birkhoff round trip covering every distributive lattice with <= 8
    // elements (every such lattice has at most 7 meet-irreducibles, and every
    // poset on <= 7 points appears in the labeled sweep)
    for (int n = 1; n <= 7; ++n) {
      std::vector<std::pair<int, int>> slots;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
      std::vector<std::string> labels;
      for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
      for (long long mask = 0; mask < (1LL << slots.size()); ++mask) {
        std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
        for (size_t bit = 0; bit < slots.size(); ++bit)
          if (mask & (1LL << bit)) lt[slots[bit].first][slots[bit].second] = true;
        bool transitive = true;
        for (int i = 0; i < n && transitive; ++i)
          for (int j = i + 1; j < n && transitive; ++j)
            if (lt[i][j])
              for (int k = j + 1; k < n; ++k)
                if (lt[j][k] && !lt[i][k]) {
                  transitive = false;
                  break;
                }
        if (!transitive) continue;
        int filters = 0;
        for (int sub = 0; sub < (1 << n) && filters <= 8; ++sub) {
          bool up = true;
          for (int i = 0; i < n && up; ++i)
            if (sub & (1 << i))
              for (int j = i + 1; j < n; ++j)
                if (lt[i][j] && !(sub & (1 << j))) {
                  up = false;
                  break;
                }
          if (up) ++filters;
        }
        if (filters > 8) continue;
        std::vector<std::pair<int, int>> pairs;
        for (size_t bit = 0; bit < slots.size(); ++bit)
          if (mask & (1LL << bit)) pairs.push_back(slots[bit]);
        auto p = Poset::from_pairs(labels, pairs);
        auto l = materialize(p);
        if (!require(l.is_distributive() && poset_isomorphic(meet_irreducibles_of(l), p),
                     "Birkhoff round trip"))
          return false;
      }
    }
    // (c) built families are strongly compatible for every fixture E, k <= 6
    auto full = load_relation(fx("e_full2.json"));
    for (int k = 1; k <= 6; ++k) {
      auto rep = verify_compatible(build_family(full, k), full, true);
      if (!require(rep.compatible && rep.strong, "built family strongly compatible"))
        return false;
    }
    bool threw = false;
    try {
      build_family(load_relation(fx("e_c.json")), 3);
    } catch (const precondition_error&) {
      threw = true;
    }
    if (!require(threw, "failing relation rejected by the builder")) return false;
    // (d) the witness-triple condition always holds for reflexive relations
    for (int n = 1; n <= 4; ++n) {
      std::vector<std::pair<Idx, Idx>> off;
      for (Idx i = 0; i < n; ++i)
        for (Idx j = 0; j < n; ++j)
          if (i != j) off.emplace_back(i, j);
      for (long long mask = 0; mask < (1LL << off.size()); ++mask) {
        ERelation e;
        for (int i = 0; i < n; ++i) {
          e.base.push_back("b" + std::to_string(i));
          e.pairs.insert({i, i});
        }
        for (size_t bit = 0; bit < off.size(); ++bit)
          if (mask & (1LL << bit)) e.pairs.insert(off[bit]);
        auto r = check_xyz(e);
        bool good = mask == 0 ? r.status == XyzReport::Status::Inapplicable
                              : r.status == XyzReport::Status::Ok;
        if (!require(good, "reflexive relation sweep")) return false;
      }
    }
    // (e) up-sets above congruences match the quotients' congruence lattices
    for (const auto& name : algebra_fixtures()) {
      auto a = load_fx(name);
      for (const auto& theta : congruence_lattice(a).congruences)
        if (!require(upset_isomorphic_to_quotient_con(a, theta), "up-set/quotient match"))
          return false;
    }
    return true;
  });

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 criteria passed\n";
  return 0;
}
