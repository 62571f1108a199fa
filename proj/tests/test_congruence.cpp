#include <doctest.h>

#include <set>

#include "conlat/congruence.hpp"
#include "helpers.hpp"

using namespace conlat;

TEST_CASE("partition round trip and lattice operations") {
  auto n5 = load_fx("n5.json");
  for (const auto& p : all_partitions(4)) {
    auto text = p.to_string({"0", "a", "b", "1"});
    CHECK(Partition::parse(text, {"0", "a", "b", "1"}) == p);
  }
  // meet of partitions is the common refinement; join the transitive closure
  auto ps = all_partitions(4);
  for (const auto& p : ps)
    for (const auto& q : ps) {
      auto m = p.meet(q);
      CHECK(m.refines(p));
      CHECK(m.refines(q));
      auto j = p.join(q);
      CHECK(p.refines(j));
      CHECK(q.refines(j));
      for (const auto& r : ps) {
        if (r.refines(p) && r.refines(q)) CHECK(r.refines(m));
        if (p.refines(r) && q.refines(r)) CHECK(j.refines(r));
      }
    }
  (void)n5;
}

TEST_CASE("congruence lattice equals the all-partitions brute force") {
  for (const auto& name : algebra_fixtures()) {
    CAPTURE(name);
    auto a = load_fx(name);
    if (a.size() > 9) continue;
    auto fast = congruence_lattice(a).congruences;
    auto slow = congruences_brute_force(a);
    CHECK(std::set<Partition>(fast.begin(), fast.end()) ==
          std::set<Partition>(slow.begin(), slow.end()));
  }
}

TEST_CASE("principal congruences") {
  auto n5 = load_fx("n5.json");
  // elements 0 a b c 1
  auto a = n5.index_of("a"), c = n5.index_of("c"), b = n5.index_of("b");
  CHECK(principal_congruence(n5, a, c).to_string(n5.elements) == "(0)(a c)(b)(1)");
  CHECK(principal_congruence(n5, a, b).to_string(n5.elements) == "(0 a b c 1)");
  CHECK(*monolith(n5) == principal_congruence(n5, a, c));

  auto C = load_fx("fig3_C.json");
  auto u = C.index_of("u"), v = C.index_of("v");
  CHECK(principal_congruence(C, u, v).to_string(C.elements) ==
        "(0)(x)(y)(u v)(z)(w)(t)(1)");
  CHECK(*monolith(C) == principal_congruence(C, u, v));
}

TEST_CASE("principal congruence is the least congruence collapsing the pair") {
  for (const auto& name : {"n5.json", "stone.json", "enriched_n5.json", "fig4_B.json"}) {
    auto alg = load_fx(name);
    auto all = congruences_brute_force(alg);
    for (Idx i = 0; i < alg.size(); ++i)
      for (Idx j = i + 1; j < alg.size(); ++j) {
        auto cg = principal_congruence(alg, i, j);
        CHECK(cg.related(i, j));
        for (const auto& theta : all)
          if (theta.related(i, j)) CHECK(cg.refines(theta));
      }
  }
}

TEST_CASE("known congruence lattices") {
  auto n5 = load_fx("n5.json");
  auto cl = congruence_lattice(n5);
  CHECK(cl.size() == 5);
  CHECK(lattice_isomorphic(cl.as_lattice(), v_lattice()));

  auto s = load_fx("stone.json");
  auto cs = congruence_lattice(s);
  CHECK(cs.size() == 3);
  CHECK(cs.as_lattice().is_chain());

  auto two = load_fx("two.json");
  CHECK(congruence_lattice(two).size() == 2);

  auto C = load_fx("fig3_C.json");
  auto cc = congruence_lattice(C);
  CHECK(cc.size() == 5);
  CHECK(lattice_isomorphic(cc.as_lattice(), v_lattice()));
  std::set<std::string> strings;
  for (const auto& t : cc.congruences) strings.insert(t.to_string(C.elements));
  CHECK(strings.count("(0 x y z)(u v w)(t)(1)") == 1);
  CHECK(strings.count("(0)(x)(y u v)(z w t 1)") == 1);
}

TEST_CASE("classification") {
  CHECK(classify(load_fx("two.json")) == AlgebraClass::Simple);
  CHECK(classify(load_fx("fig4_B.json")) == AlgebraClass::Simple);
  CHECK(classify(load_fx("n5.json")) == AlgebraClass::SubdirectlyIrreducibleNotSimple);
  CHECK(classify(load_fx("stone.json")) == AlgebraClass::SubdirectlyIrreducibleNotSimple);
  CHECK(classify(load_fx("fig3_C.json")) == AlgebraClass::SubdirectlyIrreducibleNotSimple);
  // the other small lattices generating V-varieties: SI with Con shaped V
  for (const auto& name : {"l1.json", "l2.json"}) {
    auto l = load_fx(name);
    CHECK(classify(l) == AlgebraClass::SubdirectlyIrreducibleNotSimple);
    CHECK(lattice_isomorphic(congruence_lattice(l).as_lattice(), v_lattice()));
  }
}

TEST_CASE("meet-irreducible congruences of the pentagon") {
  auto n5 = load_fx("n5.json");
  auto cl = congruence_lattice(n5);
  auto mi = meet_irreducible_congruences(cl);
  std::set<std::string> strings;
  for (const auto& t : mi) strings.insert(t.to_string(n5.elements));
  CHECK(strings == std::set<std::string>{"(0)(a)(b)(c)(1)", "(0 a c)(b 1)", "(0 b)(a c 1)"});
}

TEST_CASE("congruence meets are intersections and joins are least upper bounds") {
  for (const auto& name : {"n5.json", "stone.json", "enriched_n5.json", "fig4_B.json",
                           "fig3_C.json"}) {
    auto alg = load_fx(name);
    auto cl = congruence_lattice(alg);
    auto l = cl.as_lattice();
    for (int i = 0; i < cl.size(); ++i)
      for (int j = 0; j < cl.size(); ++j) {
        auto m = l.meet(i, j);
        auto jn = l.join(i, j);
        REQUIRE(m.has_value());
        REQUIRE(jn.has_value());
        CHECK(cl.congruences[*m] == cl.congruences[i].meet(cl.congruences[j]));
        CHECK(cl.congruences[i].refines(cl.congruences[*jn]));
        CHECK(cl.congruences[j].refines(cl.congruences[*jn]));
      }
  }
}

TEST_CASE("congruence lattices of lattice-based fixtures are distributive") {
  for (const auto& name : algebra_fixtures()) {
    CAPTURE(name);
    auto alg = load_fx(name);
    CHECK(congruence_lattice(alg).as_lattice().is_distributive());
  }
}

TEST_CASE("up-set of a meet-irreducible congruence is the quotient's congruence lattice") {
  for (const auto& name : algebra_fixtures()) {
    CAPTURE(name);
    auto alg = load_fx(name);
    for (const auto& theta : congruence_lattice(alg).congruences)
      CHECK(upset_isomorphic_to_quotient_con(alg, theta));
  }
}
