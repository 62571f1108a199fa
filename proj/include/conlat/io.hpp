#ifndef CONLAT_IO_HPP
#define CONLAT_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conlat/algebra.hpp"
#include "conlat/compat.hpp"
#include "conlat/diagram.hpp"
#include "conlat/errors.hpp"
#include "conlat/poset.hpp"
#include "conlat/variety.hpp"

namespace conlat {

using nlohmann::json;

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw validation_error("parse error in " + path + ": " + e.what());
  }
  return j;
}

// Nested table of depth `arity` with element labels at the leaves.
inline void flatten_table(const json& node, int depth, const FiniteAlgebra& a,
                          const std::string& opname, std::vector<Idx>& out) {
  if (depth == 0) {
    if (!node.is_string())
      throw validation_error("operation " + opname + ": expected element label at depth " +
                             std::to_string(depth));
    out.push_back(a.index_of(node.get<std::string>()));
    return;
  }
  if (!node.is_array() || static_cast<int>(node.size()) != a.size())
    throw validation_error("operation " + opname + ": malformed table dimensions");
  for (const auto& child : node) flatten_table(child, depth - 1, a, opname, out);
}

inline json nest_table(const std::vector<Idx>& table, int depth, int n,
                       const std::vector<std::string>& labels, size_t& pos) {
  if (depth == 0) return labels[table[pos++]];
  json arr = json::array();
  for (int i = 0; i < n; ++i) arr.push_back(nest_table(table, depth - 1, n, labels, pos));
  return arr;
}

}  // namespace detail

inline FiniteAlgebra algebra_from_json(const json& j) {
  FiniteAlgebra a;
  a.name = j.value("name", "");
  if (!j.contains("elements") || !j["elements"].is_array())
    throw validation_error("algebra: missing elements array");
  for (const auto& e : j["elements"]) a.elements.push_back(e.get<std::string>());
  if (std::set<std::string>(a.elements.begin(), a.elements.end()).size() != a.elements.size())
    throw validation_error("algebra: duplicate element labels");
  for (const auto& op : j.value("operations", json::array())) {
    Operation o;
    o.name = op.at("name").get<std::string>();
    o.arity = op.at("arity").get<int>();
    if (o.arity < 0) throw validation_error("operation " + o.name + ": negative arity");
    detail::flatten_table(op.at("table"), o.arity, a, o.name, o.table);
    a.operations.push_back(std::move(o));
  }
  a.validate();
  return a;
}

inline FiniteAlgebra load_algebra(const std::string& path) {
  return algebra_from_json(detail::read_json_file(path));
}

// Canonical serialization: elements and operations in declared order.
inline json algebra_to_json(const FiniteAlgebra& a) {
  json j;
  j["name"] = a.name;
  j["elements"] = a.elements;
  j["operations"] = json::array();
  for (const auto& op : a.operations) {
    size_t pos = 0;
    j["operations"].push_back(
        {{"name", op.name},
         {"arity", op.arity},
         {"table", detail::nest_table(op.table, op.arity, a.size(), a.elements, pos)}});
  }
  return j;
}

inline Poset poset_from_json(const json& j) {
  std::vector<std::string> elems;
  for (const auto& e : j.at("elements")) elems.push_back(e.get<std::string>());
  auto index_of = [&](const std::string& s) {
    for (size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == s) return static_cast<int>(i);
    throw validation_error("poset: unknown element label " + s);
  };
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j.value("leq", json::array())) {
    if (!p.is_array() || p.size() != 2) throw validation_error("poset: leq entries are pairs");
    pairs.emplace_back(index_of(p[0].get<std::string>()), index_of(p[1].get<std::string>()));
  }
  return Poset::from_pairs(std::move(elems), pairs);
}

inline Poset load_poset(const std::string& path) {
  return poset_from_json(detail::read_json_file(path));
}

inline ERelation relation_from_json(const json& j) {
  ERelation e;
  for (const auto& b : j.at("base")) e.base.push_back(b.get<std::string>());
  auto index_of = [&](const std::string& s) {
    for (size_t i = 0; i < e.base.size(); ++i)
      if (e.base[i] == s) return static_cast<Idx>(i);
    throw validation_error("relation: unknown base label " + s);
  };
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2)
      throw validation_error("relation: pairs entries are 2-element arrays");
    e.pairs.insert({index_of(p[0].get<std::string>()), index_of(p[1].get<std::string>())});
  }
  return e;
}

inline ERelation load_relation(const std::string& path) {
  return relation_from_json(detail::read_json_file(path));
}

inline json relation_to_json(const ERelation& e) {
  json j;
  j["base"] = e.base;
  j["pairs"] = json::array();
  for (auto [a, b] : e.pairs) j["pairs"].push_back({e.base[a], e.base[b]});
  return j;
}

inline json family_to_json(const CompatibleFamily& f) {
  json j;
  j["domain"] = f.domain;
  j["functions"] = f.functions;
  return j;
}

// Diagram file: algebras may be inline objects or file references (strings
// resolved relative to the diagram's directory); identity and composite maps
// may be omitted.
inline Diagram diagram_from_json(const json& j, const std::string& base_dir = "") {
  Diagram d;
  d.index = poset_from_json(j.at("poset"));
  const auto& algs = j.at("algebras");
  for (int p = 0; p < d.index.size(); ++p) {
    const std::string& label = d.index.elements[p];
    if (!algs.contains(label))
      throw validation_error("diagram: no algebra for index point " + label);
    const auto& node = algs.at(label);
    if (node.is_string()) {
      std::string path = node.get<std::string>();
      if (!base_dir.empty() && path.front() != '/') path = base_dir + "/" + path;
      d.algebras.push_back(load_algebra(path));
    } else {
      d.algebras.push_back(algebra_from_json(node));
    }
  }
  auto point_of = [&](const std::string& s) {
    for (int i = 0; i < d.index.size(); ++i)
      if (d.index.elements[i] == s) return i;
    throw validation_error("diagram: unknown index point " + s);
  };
  for (const auto& m : j.value("maps", json::array())) {
    int p = point_of(m.at("from").get<std::string>());
    int q = point_of(m.at("to").get<std::string>());
    if (p == q) continue;  // identity maps are implicit
    std::vector<Idx> map;
    for (const auto& lbl : m.at("map"))
      map.push_back(d.algebras[q].index_of(lbl.get<std::string>()));
    if (static_cast<int>(map.size()) != d.algebras[p].size())
      throw validation_error("diagram: map length mismatch for " + d.index.elements[p] +
                             " -> " + d.index.elements[q]);
    d.maps[{p, q}] = std::move(map);
  }
  d.synthesize_composites();
  d.validate();
  return d;
}

inline Diagram load_diagram(const std::string& path) {
  std::string dir;
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return diagram_from_json(detail::read_json_file(path), dir);
}

inline json conlattice_to_json(const ConLattice& cl) {
  json j;
  j["algebra"] = cl.algebra.name;
  j["congruences"] = json::array();
  for (const auto& c : cl.congruences) j["congruences"].push_back(c.to_string(cl.algebra.elements));
  Lattice l = cl.as_lattice();
  j["covers"] = json::array();
  for (auto [a, b] : l.cover_pairs())
    j["covers"].push_back({cl.congruences[a].to_string(cl.algebra.elements),
                           cl.congruences[b].to_string(cl.algebra.elements)});
  return j;
}

inline json verdict_to_json(const FdmaxVerdict& v) {
  json j;
  j["maximal"] = v.maximal;
  j["reason"] = v.reason;
  j["inventory"] = {{"simples", v.inventory.simples.size()},
                    {"v_algebras", v.inventory.v_algebras.size()},
                    {"others", v.inventory.others.size()}};
  if (v.witness) {
    json w;
    w["C"] = algebra_to_json(v.witness->C);
    w["B"] = algebra_to_json(v.witness->B);
    json h0 = json::array(), h1 = json::array();
    for (Idx i : v.witness->h0) h0.push_back(v.witness->B.elements[i]);
    for (Idx i : v.witness->h1) h1.push_back(v.witness->B.elements[i]);
    w["h0"] = h0;
    w["h1"] = h1;
    w["E"] = relation_to_json(v.witness->E);
    j["witness"] = w;
  }
  return j;
}

}  // namespace conlat

#endif  // CONLAT_IO_HPP
