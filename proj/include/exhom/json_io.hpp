#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "complex.hpp"
#include "gcoh.hpp"
#include "group.hpp"
#include "matrix.hpp"
#include "numbers.hpp"
#include "rootdata.hpp"

namespace exhom {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Field access with path-carrying diagnostics

inline input_error field_error(const std::string& path, const std::string& what) {
  return input_error(path + ": " + what);
}

inline const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw field_error(path, std::string("missing field '") + key + "'");
  return *it;
}

inline const Json* maybe(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline long long as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw field_error(path, "expected an integer");
  return j.get<long long>();
}

inline bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw field_error(path, "expected a boolean");
  return j.get<bool>();
}

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw field_error(path, "expected a string");
  return j.get<std::string>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw field_error(path, "expected an array");
  return j;
}

inline Int as_big(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::runtime_error&) {
      throw field_error(path, "cannot parse integer '" + j.get<std::string>() + "'");
    }
  }
  throw field_error(path, "expected an integer or an integer string");
}

inline Rat as_rat(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const input_error&) {
      throw field_error(path, "cannot parse rational '" + j.get<std::string>() + "'");
    }
  }
  throw field_error(path, "expected an integer or a rational string");
}

// Integers print as JSON numbers when they fit, as decimal strings otherwise.
inline Json big_json(const Int& v) {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (v >= lo && v <= hi) return v.convert_to<long long>();
  return v.str();
}

// ---------------------------------------------------------------------------
// Matrices: dense row arrays; pass -1 to infer a dimension from the data

inline MatZ parse_matz(const Json& j, int nrows, int ncols, const std::string& path) {
  as_array(j, path);
  if (nrows >= 0 && (int)j.size() != nrows)
    throw field_error(path, "expected " + std::to_string(nrows) + " rows");
  if (j.empty()) throw field_error(path, "matrix needs at least one row");
  int r = (int)j.size();
  const Json& first = as_array(j[0], path + "[0]");
  int c = ncols >= 0 ? ncols : (int)first.size();
  if (c < 1) throw field_error(path, "matrix needs at least one column");
  MatZ m(r, c);
  for (int i = 0; i < r; ++i) {
    std::string rp = path + "[" + std::to_string(i) + "]";
    const Json& row = as_array(j[i], rp);
    if ((int)row.size() != c)
      throw field_error(rp, "expected " + std::to_string(c) + " entries");
    for (int k = 0; k < c; ++k) {
      Int v = as_big(row[k], rp + "[" + std::to_string(k) + "]");
      if (v != 0) m.set(i, k, v);
    }
  }
  return m;
}

inline MatQ parse_matq(const Json& j, int nrows, int ncols, const std::string& path) {
  as_array(j, path);
  if (nrows >= 0 && (int)j.size() != nrows)
    throw field_error(path, "expected " + std::to_string(nrows) + " rows");
  if (j.empty()) throw field_error(path, "matrix needs at least one row");
  int r = (int)j.size();
  const Json& first = as_array(j[0], path + "[0]");
  int c = ncols >= 0 ? ncols : (int)first.size();
  if (c < 1) throw field_error(path, "matrix needs at least one column");
  MatQ m(r, c);
  for (int i = 0; i < r; ++i) {
    std::string rp = path + "[" + std::to_string(i) + "]";
    const Json& row = as_array(j[i], rp);
    if ((int)row.size() != c)
      throw field_error(rp, "expected " + std::to_string(c) + " entries");
    for (int k = 0; k < c; ++k) {
      Rat v = as_rat(row[k], rp + "[" + std::to_string(k) + "]");
      if (v != 0) m.set(i, k, v);
    }
  }
  return m;
}

inline Json print_matz(const MatZ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.nrows; ++i) {
    Json row = Json::array();
    for (int c = 0; c < m.ncols; ++c) row.push_back(big_json(m.get(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json print_matq(const MatQ& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.nrows; ++i) {
    Json row = Json::array();
    for (int c = 0; c < m.ncols; ++c) row.push_back(rat_str(m.get(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Permutation groups: generators given by disjoint support cycles

inline std::vector<std::vector<int>> perm_cycles(const Perm& p) {
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(p.size(), 0);
  for (int s = 0; s < (int)p.size(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    if (p[s] == s) continue;
    std::vector<int> cyc{s};
    for (int x = p[s]; x != s; x = p[x]) {
      seen[x] = 1;
      cyc.push_back(x);
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

inline std::vector<Perm> parse_perm_list(const Json& j, int degree, const std::string& path) {
  as_array(j, path);
  std::vector<Perm> out;
  for (size_t gi = 0; gi < j.size(); ++gi) {
    std::string gp = path + "[" + std::to_string(gi) + "]";
    const Json& cyc = as_array(j[gi], gp);
    std::vector<std::vector<int>> cycles;
    for (size_t ci = 0; ci < cyc.size(); ++ci) {
      std::string cp = gp + "[" + std::to_string(ci) + "]";
      const Json& one = as_array(cyc[ci], cp);
      std::vector<int> pts;
      for (size_t pi = 0; pi < one.size(); ++pi)
        pts.push_back((int)as_int(one[pi], cp + "[" + std::to_string(pi) + "]"));
      cycles.push_back(std::move(pts));
    }
    try {
      out.push_back(perm_from_cycles(degree, cycles));
    } catch (const std::exception& e) {
      throw field_error(gp, e.what());
    }
  }
  return out;
}

inline Json print_perm_list(const std::vector<Perm>& gens) {
  Json out = Json::array();
  for (auto& p : gens) {
    Json cycles = Json::array();
    for (auto& c : perm_cycles(p)) cycles.push_back(c);
    out.push_back(std::move(cycles));
  }
  return out;
}

inline FiniteGroup parse_group(const Json& j, const std::string& path) {
  if (const Json* name = maybe(j, "name")) {
    std::string n = as_string(*name, path + ".name");
    long long k = 0;
    if (const Json* kn = maybe(j, "n")) k = as_int(*kn, path + ".n");
    if (n == "trivial") return cyclic_group(1);
    if (n == "cyclic") {
      if (k < 1 || k > 64) throw field_error(path + ".n", "cyclic order must lie in 1..64");
      return cyclic_group((int)k);
    }
    if (n == "symmetric") {
      if (k < 3 || k > 6) throw field_error(path + ".n", "symmetric degree must lie in 3..6");
      return symmetric_group((int)k);
    }
    if (n == "alternating4") return alternating_group_4();
    if (n == "klein4") return klein_four_group();
    if (n == "klein_nonnormal_s4") return klein_nonnormal_in_s4();
    if (n == "dihedral8") return dihedral_group_8();
    if (n == "quaternion8") return quaternion_group_8();
    throw field_error(path + ".name", "unknown group name '" + n + "'");
  }
  int degree = (int)as_int(need(j, "degree", path), path + ".degree");
  if (degree < 1 || degree > 16)
    throw field_error(path + ".degree", "degree must lie in 1..16");
  std::vector<Perm> gens =
      parse_perm_list(need(j, "generators", path), degree, path + ".generators");
  try {
    return group_from_generators(degree, gens);
  } catch (const check_error& e) {
    throw field_error(path, e.what());
  }
}

inline Json print_group(const FiniteGroup& g) {
  return Json{{"degree", g.degree}, {"generators", print_perm_list(g.gens)}};
}

// ---------------------------------------------------------------------------
// Integral representations keyed by group generator index

inline GModule parse_gmodule(const Json& j, int ngens, const std::string& path) {
  GModule m;
  long long fr = as_int(need(j, "free_rank", path), path + ".free_rank");
  if (fr < 0 || fr > 64) throw field_error(path + ".free_rank", "free rank must lie in 0..64");
  m.free_rank = (int)fr;
  const Json& tor = as_array(need(j, "torsion", path), path + ".torsion");
  for (size_t i = 0; i < tor.size(); ++i) {
    std::string tp = path + ".torsion[" + std::to_string(i) + "]";
    Int f = as_big(tor[i], tp);
    if (f <= 1) throw field_error(tp, "torsion factors must exceed 1");
    m.torsion.push_back(f);
  }
  if (m.dim() < 1) throw field_error(path, "module must have positive dimension");
  const Json& act = need(j, "action", path);
  if (!act.is_object()) throw field_error(path + ".action", "expected an object");
  if ((int)act.size() != ngens)
    throw field_error(path + ".action", "need exactly one matrix per group generator (" +
                                            std::to_string(ngens) + ")");
  for (int gi = 0; gi < ngens; ++gi) {
    std::string key = std::to_string(gi);
    const Json* mat = maybe(act, key.c_str());
    if (!mat) throw field_error(path + ".action", "missing matrix for generator " + key);
    m.gen_action.push_back(parse_matz(*mat, m.dim(), m.dim(), path + ".action." + key));
  }
  return m;
}

inline Json print_gmodule(const GModule& m) {
  Json act = Json::object();
  for (size_t i = 0; i < m.gen_action.size(); ++i)
    act[std::to_string(i)] = print_matz(m.gen_action[i]);
  Json tor = Json::array();
  for (auto& f : m.torsion) tor.push_back(big_json(f));
  return Json{{"action", act}, {"free_rank", m.free_rank}, {"torsion", tor}};
}

// ---------------------------------------------------------------------------
// Quiver presentations of graded algebras

struct AlgebraInput {
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;
  std::vector<Relation> relations;
  int weight_cap = 24;

  GradedAlgebra build() const { return from_quiver(vertices, arrows, relations, weight_cap); }
};

inline AlgebraInput parse_algebra_input(const Json& j, const std::string& path) {
  AlgebraInput in;
  const Json& vs = as_array(need(j, "vertices", path), path + ".vertices");
  for (size_t i = 0; i < vs.size(); ++i)
    in.vertices.push_back(as_string(vs[i], path + ".vertices[" + std::to_string(i) + "]"));
  const Json& ar = as_array(need(j, "arrows", path), path + ".arrows");
  for (size_t i = 0; i < ar.size(); ++i) {
    std::string ap = path + ".arrows[" + std::to_string(i) + "]";
    QuiverArrow a;
    a.name = as_string(need(ar[i], "name", ap), ap + ".name");
    a.src = as_string(need(ar[i], "source", ap), ap + ".source");
    a.dst = as_string(need(ar[i], "target", ap), ap + ".target");
    if (const Json* w = maybe(ar[i], "weight")) a.weight = (int)as_int(*w, ap + ".weight");
    in.arrows.push_back(std::move(a));
  }
  const Json& rels = as_array(need(j, "relations", path), path + ".relations");
  for (size_t i = 0; i < rels.size(); ++i) {
    std::string rp = path + ".relations[" + std::to_string(i) + "]";
    const Json& terms = as_array(rels[i], rp);
    Relation rel;
    for (size_t t = 0; t < terms.size(); ++t) {
      std::string tp = rp + "[" + std::to_string(t) + "]";
      RelationTerm term;
      term.coeff = as_rat(need(terms[t], "coeff", tp), tp + ".coeff");
      const Json& seq = as_array(need(terms[t], "path", tp), tp + ".path");
      for (size_t s = 0; s < seq.size(); ++s)
        term.path.push_back(as_string(seq[s], tp + ".path[" + std::to_string(s) + "]"));
      rel.push_back(std::move(term));
    }
    in.relations.push_back(std::move(rel));
  }
  if (const Json* w = maybe(j, "weight_cap"))
    in.weight_cap = (int)as_int(*w, path + ".weight_cap");
  if (in.weight_cap < 2 || in.weight_cap > 64)
    throw field_error(path + ".weight_cap", "weight cap must lie in 2..64");
  return in;
}

inline Json print_algebra_input(const AlgebraInput& in) {
  Json arrows = Json::array();
  for (auto& a : in.arrows)
    arrows.push_back(Json{{"name", a.name},
                          {"source", a.src},
                          {"target", a.dst},
                          {"weight", a.weight}});
  Json rels = Json::array();
  for (auto& rel : in.relations) {
    Json terms = Json::array();
    for (auto& t : rel) terms.push_back(Json{{"coeff", rat_str(t.coeff)}, {"path", t.path}});
    rels.push_back(std::move(terms));
  }
  return Json{{"arrows", arrows},
              {"relations", rels},
              {"vertices", in.vertices},
              {"weight_cap", in.weight_cap}};
}

// ---------------------------------------------------------------------------
// Bimodules: the regular bimodule, a left twist of it, or explicit matrices

struct BimoduleInput {
  std::string kind = "regular";
  MatQ twist;                     // left_twisted only
  std::vector<int> weights;       // explicit only
  std::vector<MatQ> left, right;  // explicit only

  Bimodule build(const GradedAlgebra& a, const std::string& path) const {
    if (kind == "regular") return Bimodule::regular(a);
    if (kind == "left_twisted") {
      AlgebraMorphism f{&a, twist};
      try {
        f.validate();
      } catch (const check_error& e) {
        throw field_error(path + ".twist", e.what());
      }
      if (!f.is_automorphism()) throw field_error(path + ".twist", "twist must be invertible");
      return Bimodule::regular(a).twist_left(f);
    }
    Bimodule b;
    b.A = &a;
    b.wt = weights;
    b.left = left;
    b.right = right;
    try {
      b.validate();
    } catch (const check_error& e) {
      throw field_error(path, e.what());
    }
    return b;
  }
};

inline BimoduleInput parse_bimodule_input(const Json& j, const GradedAlgebra& a,
                                          const std::string& path) {
  BimoduleInput in;
  in.kind = as_string(need(j, "kind", path), path + ".kind");
  if (in.kind == "regular") return in;
  if (in.kind == "left_twisted") {
    in.twist = parse_matq(need(j, "twist", path), a.dim(), a.dim(), path + ".twist");
    return in;
  }
  if (in.kind != "explicit")
    throw field_error(path + ".kind", "expected regular, left_twisted, or explicit");
  const Json& ws = as_array(need(j, "weights", path), path + ".weights");
  for (size_t i = 0; i < ws.size(); ++i)
    in.weights.push_back((int)as_int(ws[i], path + ".weights[" + std::to_string(i) + "]"));
  int d = (int)in.weights.size();
  if (d < 1) throw field_error(path + ".weights", "module must have positive dimension");
  const Json& lm = as_array(need(j, "left", path), path + ".left");
  const Json& rm = as_array(need(j, "right", path), path + ".right");
  if ((int)lm.size() != a.dim() || (int)rm.size() != a.dim())
    throw field_error(path, "need one left and one right matrix per algebra basis element");
  for (int b = 0; b < a.dim(); ++b) {
    in.left.push_back(parse_matq(lm[b], d, d, path + ".left[" + std::to_string(b) + "]"));
    in.right.push_back(parse_matq(rm[b], d, d, path + ".right[" + std::to_string(b) + "]"));
  }
  return in;
}

inline Json print_bimodule_input(const BimoduleInput& in) {
  if (in.kind == "regular") return Json{{"kind", "regular"}};
  if (in.kind == "left_twisted")
    return Json{{"kind", "left_twisted"}, {"twist", print_matq(in.twist)}};
  Json lm = Json::array(), rm = Json::array();
  for (auto& m : in.left) lm.push_back(print_matq(m));
  for (auto& m : in.right) rm.push_back(print_matq(m));
  return Json{{"kind", "explicit"},
              {"left", lm},
              {"right", rm},
              {"weights", in.weights}};
}

// ---------------------------------------------------------------------------
// Group actions on an algebra and a bimodule, one matrix pair per generator

struct ActionInput {
  std::vector<MatQ> alg;  // algebra endomorphism matrices
  std::vector<MatQ> mod;  // module matrices
};

inline ActionInput parse_action_input(const Json& j, int adim, int mdim, int ngens,
                                      const std::string& path) {
  ActionInput in;
  const Json& am = as_array(need(j, "algebra_maps", path), path + ".algebra_maps");
  const Json& mm = as_array(need(j, "module_matrices", path), path + ".module_matrices");
  if ((int)am.size() != ngens)
    throw field_error(path + ".algebra_maps", "need exactly one matrix per group generator (" +
                                                  std::to_string(ngens) + ")");
  if ((int)mm.size() != ngens)
    throw field_error(path + ".module_matrices",
                      "need exactly one matrix per group generator (" + std::to_string(ngens) +
                          ")");
  for (int gi = 0; gi < ngens; ++gi) {
    in.alg.push_back(
        parse_matq(am[gi], adim, adim, path + ".algebra_maps[" + std::to_string(gi) + "]"));
    in.mod.push_back(
        parse_matq(mm[gi], mdim, mdim, path + ".module_matrices[" + std::to_string(gi) + "]"));
  }
  return in;
}

inline Json print_action_input(const ActionInput& in) {
  Json am = Json::array(), mm = Json::array();
  for (auto& m : in.alg) am.push_back(print_matq(m));
  for (auto& m : in.mod) mm.push_back(print_matq(m));
  return Json{{"algebra_maps", am}, {"module_matrices", mm}};
}

// ---------------------------------------------------------------------------
// Finite sets with compatible permutation actions

struct PointsInput {
  int size = 1;
  std::vector<Perm> gens;
};

inline PointsInput parse_points_input(const Json& j, const std::string& path) {
  PointsInput in;
  in.size = (int)as_int(need(j, "size", path), path + ".size");
  if (in.size < 1 || in.size > 16) throw field_error(path + ".size", "size must lie in 1..16");
  in.gens = parse_perm_list(need(j, "generators", path), in.size, path + ".generators");
  return in;
}

inline Json print_points_input(const PointsInput& in) {
  return Json{{"generators", print_perm_list(in.gens)}, {"size", in.size}};
}

// ---------------------------------------------------------------------------
// Algebra elements as sparse coefficient maps over the basis

inline Elem parse_elem(const Json& j, const GradedAlgebra& a, const std::string& path) {
  const Json& c = need(j, "coefficients", path);
  if (!c.is_object()) throw field_error(path + ".coefficients", "expected an object");
  Elem out;
  for (auto it = c.begin(); it != c.end(); ++it) {
    std::string cp = path + ".coefficients." + it.key();
    int b = -1;
    try {
      size_t used = 0;
      b = std::stoi(it.key(), &used);
      if (used != it.key().size()) b = -1;
    } catch (const std::exception&) {
      b = -1;
    }
    if (b < 0 || b >= a.dim()) throw field_error(cp, "basis index out of range");
    Rat v = as_rat(it.value(), cp);
    if (v != 0) out[b] = v;
  }
  return out;
}

inline Json print_elem(const Elem& x) {
  Json c = Json::object();
  for (auto& [b, v] : x) c[std::to_string(b)] = rat_str(v);
  return Json{{"coefficients", c}};
}

// ---------------------------------------------------------------------------
// Result fragments

inline Json print_abelian(const AbelianGroupStructure& s) {
  Json f = Json::array();
  for (auto& v : s.invariant_factors) f.push_back(big_json(v));
  return Json{{"free_rank", s.free_rank}, {"invariant_factors", f}, {"pretty", s.str()}};
}

// Coefficient array indexed by exponent.
inline Json print_poly(const ZPoly& p) {
  Json out = Json::array();
  for (auto& c : p) out.push_back(big_json(c));
  return out;
}

inline Json degree_dim_map(int lo, const std::vector<long long>& dims) {
  Json out = Json::object();
  for (size_t k = 0; k < dims.size(); ++k) out[std::to_string(lo + (int)k)] = dims[k];
  return out;
}

// ---------------------------------------------------------------------------
// Canonical serialization and content keys: parsing and re-dumping makes the
// digest independent of whitespace and object key order

inline std::string canonical_dump(const Json& j) { return j.dump(); }

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

// Reports syntax errors with file, line, and column.
inline Json load_json_file(const std::string& file) {
  std::ifstream f(file, std::ios::binary);
  if (!f) throw input_error(file + ": cannot open file");
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    if (stop > text.size()) stop = text.size();
    size_t line = 1, col = 1;
    for (size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw input_error(file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                      e.what());
  }
}

}  // namespace exhom
