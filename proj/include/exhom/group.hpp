#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "exhom/matrix.hpp"

namespace exhom {

// Permutations of {0..n-1} stored as image vectors.

using Perm = std::vector<int>;

inline bool perm_valid(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= (int)p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (int i = 0; i < (int)p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

// a after b: (a*b)(x) = a(b(x))
inline Perm perm_compose(const Perm& a, const Perm& b) {
  check(a.size() == b.size(), "permutation degree mismatch");
  Perm c(a.size());
  for (int i = 0; i < (int)a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (int i = 0; i < (int)a.size(); ++i) c[a[i]] = i;
  return c;
}

inline Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p = perm_identity(degree);
  for (auto& cyc : cycles) {
    for (int v : cyc)
      if (v < 0 || v >= degree) throw input_error("cycle entry out of range");
    for (size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
      if (p[from] != from) throw input_error("cycles are not disjoint");
      p[from] = to;
    }
  }
  if (!perm_valid(p)) throw input_error("cycles are not disjoint");
  return p;
}

// A finite permutation group.  Elements are enumerated breadth-first from the
// identity, multiplying by the generators in the order given, so the listing
// and every derived table are deterministic.  elems[0] is the identity.
struct FiniteGroup {
  int degree = 0;
  std::vector<Perm> gens;
  std::vector<Perm> elems;
  std::map<Perm, int> index;
  std::vector<std::vector<int>> mul;  // mul[a][b] = index of elems[a] after elems[b]
  std::vector<int> inv;
  // BFS tree: word[e] = (parent element, generator) with e = parent * gen, e > 0
  std::vector<std::pair<int, int>> word;

  int size() const { return (int)elems.size(); }
  int op(int a, int b) const { return mul[a][b]; }
  int inverse(int a) const { return inv[a]; }

  int order_of(int a) const {
    if (a == 0) return 1;
    int n = 1, x = a;
    while (x != 0) {
      x = mul[x][a];
      ++n;
      check(n <= size() + 1, "element order runaway");
    }
    return n;
  }

  bool is_abelian() const {
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b)
        if (mul[a][b] != mul[b][a]) return false;
    return true;
  }

  bool contains(const Perm& p) const { return index.count(p) != 0; }
};

inline FiniteGroup group_from_generators(int degree, std::vector<Perm> gens,
                                         int cap = 256) {
  check(degree >= 1, "permutation degree must be positive");
  for (auto& g : gens) {
    check((int)g.size() == degree, "generator degree mismatch");
    if (!perm_valid(g)) throw input_error("generator is not a permutation");
  }
  FiniteGroup g;
  g.degree = degree;
  g.gens = std::move(gens);
  g.elems.push_back(perm_identity(degree));
  g.index[g.elems[0]] = 0;
  g.word.push_back({-1, -1});
  for (size_t head = 0; head < g.elems.size(); ++head) {
    for (int i = 0; i < (int)g.gens.size(); ++i) {
      Perm next = perm_compose(g.elems[head], g.gens[i]);
      if (g.index.count(next)) continue;
      if ((int)g.elems.size() >= cap)
        throw input_error("group enumeration exceeded the cap of " +
                          std::to_string(cap) + " elements");
      g.index[next] = (int)g.elems.size();
      g.elems.push_back(std::move(next));
      g.word.push_back({(int)head, i});
    }
  }
  int n = g.size();
  g.mul.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.mul[a][b] = g.index.at(perm_compose(g.elems[a], g.elems[b]));
  g.inv.assign(n, 0);
  for (int a = 0; a < n; ++a) g.inv[a] = g.index.at(perm_inverse(g.elems[a]));
  return g;
}

// Ids of the elements of h inside g; h must consist of permutations of g.
inline std::vector<int> subgroup_element_ids(const FiniteGroup& g, const FiniteGroup& h) {
  check(g.degree == h.degree, "subgroup degree mismatch");
  std::vector<int> ids;
  for (auto& p : h.elems) {
    auto it = g.index.find(p);
    if (it == g.index.end()) throw input_error("subgroup element missing from the group");
    ids.push_back(it->second);
  }
  return ids;
}

// Closure of a set of element ids under the group operation.  Sweeps over all
// pairs until no new element appears, so the result is closed under products
// and inverses regardless of the seed.
inline std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> seed) {
  std::vector<char> in(g.size(), 0);
  std::vector<int> members;
  auto push = [&](int e) {
    if (in[e]) return false;
    in[e] = 1;
    members.push_back(e);
    return true;
  };
  push(0);
  for (int e : seed) push(e);
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t i = 0; i < members.size(); ++i) {
      grew |= push(g.inv[members[i]]);
      for (size_t j = 0; j < members.size(); ++j)
        grew |= push(g.mul[members[i]][members[j]]);
    }
  }
  std::vector<int> out;
  for (int e = 0; e < g.size(); ++e)
    if (in[e]) out.push_back(e);
  return out;
}

inline std::vector<int> commutator_subgroup(const FiniteGroup& g) {
  std::vector<int> seed;
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      int c = g.mul[g.mul[g.inv[a]][g.inv[b]]][g.mul[a][b]];
      seed.push_back(c);
    }
  return subgroup_closure(g, seed);
}

inline std::vector<int> center_ids(const FiniteGroup& g) {
  std::vector<int> out;
  for (int a = 0; a < g.size(); ++a) {
    bool central = true;
    for (int b = 0; central && b < g.size(); ++b)
      if (g.mul[a][b] != g.mul[b][a]) central = false;
    if (central) out.push_back(a);
  }
  return out;
}

inline FiniteGroup subgroup_from_elements(const FiniteGroup& g, const std::vector<int>& ids) {
  std::vector<Perm> gens;
  for (int e : ids)
    if (e != 0) gens.push_back(g.elems[e]);
  return group_from_generators(g.degree, gens, g.size());
}

// Quotient by a normal subgroup, realized as the permutation action of g on
// the cosets of n.  proj sends an element id of g to an element id of the
// quotient group.
struct QuotientData {
  FiniteGroup quotient;
  std::vector<int> proj;
};

inline QuotientData quotient_by_normal(const FiniteGroup& g, const std::vector<int>& n_ids) {
  std::vector<char> in_n(g.size(), 0);
  for (int e : n_ids) in_n[e] = 1;
  if (!in_n[0]) throw input_error("normal subgroup must contain the identity");
  for (int e : n_ids)
    for (int a = 0; a < g.size(); ++a)
      if (!in_n[g.mul[g.mul[a][e]][g.inv[a]]]) throw input_error("subgroup is not normal");
  // left cosets x*N, numbered by smallest member
  std::vector<int> coset_of(g.size(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.size(); ++x) {
    if (coset_of[x] >= 0) continue;
    int c = (int)reps.size();
    reps.push_back(x);
    for (int e : n_ids) coset_of[g.mul[x][e]] = c;
  }
  int m = (int)reps.size();
  check(m * (int)n_ids.size() == g.size(), "coset count mismatch");
  auto coset_perm = [&](int a) {
    Perm p(m);
    for (int c = 0; c < m; ++c) p[c] = coset_of[g.mul[a][reps[c]]];
    return p;
  };
  std::vector<Perm> qgens;
  for (auto& gp : g.gens) qgens.push_back(coset_perm(g.index.at(gp)));
  QuotientData out;
  out.quotient = group_from_generators(std::max(m, 1), qgens, std::max(m, 1));
  check(out.quotient.size() == m, "quotient action is not faithful");
  out.proj.assign(g.size(), 0);
  for (int a = 0; a < g.size(); ++a) out.proj[a] = out.quotient.index.at(coset_perm(a));
  return out;
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int d = a.degree + b.degree;
  std::vector<Perm> gens;
  for (auto& p : a.gens) {
    Perm q = perm_identity(d);
    for (int i = 0; i < a.degree; ++i) q[i] = p[i];
    gens.push_back(q);
  }
  for (auto& p : b.gens) {
    Perm q = perm_identity(d);
    for (int i = 0; i < b.degree; ++i) q[a.degree + i] = a.degree + p[i];
    gens.push_back(q);
  }
  FiniteGroup g = group_from_generators(d, gens, a.size() * b.size() + 1);
  check(g.size() == a.size() * b.size(), "direct product order mismatch");
  return g;
}

// Invariant factors (each > 1, divisibility chain) of g made abelian.  The
// commutator quotient is presented on the generators of g: every closing edge
// of a breadth-first walk over the cosets donates one relation vector, and
// those vectors span the full relation lattice.
inline std::vector<Int> abelianization_invariants(const FiniteGroup& g) {
  int ng = (int)g.gens.size();
  if (ng == 0) return {};
  std::vector<int> comm = commutator_subgroup(g);
  std::vector<char> in_k(g.size(), 0);
  for (int e : comm) in_k[e] = 1;
  std::vector<int> coset_of(g.size(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.size(); ++x) {
    if (coset_of[x] >= 0) continue;
    int c = (int)reps.size();
    reps.push_back(x);
    for (int e : comm) coset_of[g.mul[x][e]] = c;
  }
  int m = (int)reps.size();
  std::vector<std::vector<Int>> wordvec(m);
  std::vector<int> at_elem(m, -1);
  std::vector<int> order;
  wordvec[coset_of[0]] = std::vector<Int>(ng, 0);
  at_elem[coset_of[0]] = 0;
  order.push_back(coset_of[0]);
  std::vector<std::vector<Int>> relations;
  for (size_t head = 0; head < order.size(); ++head) {
    int c = order[head];
    for (int i = 0; i < ng; ++i) {
      int x = g.mul[at_elem[c]][g.index.at(g.gens[i])];
      int c2 = coset_of[x];
      std::vector<Int> w = wordvec[c];
      w[i] += 1;
      if (at_elem[c2] < 0) {
        wordvec[c2] = std::move(w);
        at_elem[c2] = x;
        order.push_back(c2);
      } else {
        for (int j = 0; j < ng; ++j) w[j] -= wordvec[c2][j];
        relations.push_back(std::move(w));
      }
    }
  }
  check((int)order.size() == m, "coset walk missed a coset");
  MatZ rel(ng, (int)relations.size());
  for (int c = 0; c < (int)relations.size(); ++c)
    for (int r = 0; r < ng; ++r) rel.set(r, c, relations[c][r]);
  auto sf = smith_normal_form(rel);
  check(sf.rank() == ng, "abelian quotient of a finite group must be finite");
  std::vector<Int> out;
  Int total = 1;
  for (auto& d : sf.invariant_factors) {
    total *= d;
    if (d > 1) out.push_back(d);
  }
  check(total == m, "abelianization order mismatch");
  return out;
}

// --- standard groups ---

inline FiniteGroup cyclic_group(int n) {
  check(n >= 1, "cyclic group order must be positive");
  if (n == 1) return group_from_generators(1, {});
  Perm c(n);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return group_from_generators(n, {c});
}

inline FiniteGroup symmetric_group(int n) {
  check(n >= 1, "symmetric group degree must be positive");
  if (n == 1) return group_from_generators(1, {});
  std::vector<Perm> gens;
  gens.push_back(perm_from_cycles(n, {{0, 1}}));
  if (n >= 3) {
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = i;
    gens.push_back(perm_from_cycles(n, {cyc}));
  }
  return group_from_generators(n, gens);
}

inline FiniteGroup alternating_group_4() {
  return group_from_generators(
      4, {perm_from_cycles(4, {{0, 1, 2}}), perm_from_cycles(4, {{0, 1}, {2, 3}})});
}

inline FiniteGroup klein_four_group() {
  return group_from_generators(
      4, {perm_from_cycles(4, {{0, 1}, {2, 3}}), perm_from_cycles(4, {{0, 2}, {1, 3}})});
}

inline FiniteGroup klein_nonnormal_in_s4() {
  return group_from_generators(4, {perm_from_cycles(4, {{0, 1}}),
                                   perm_from_cycles(4, {{2, 3}})});
}

inline FiniteGroup dihedral_group_8() {
  return group_from_generators(
      4, {perm_from_cycles(4, {{0, 1, 2, 3}}), perm_from_cycles(4, {{0, 2}})});
}

// The eight quaternion units acting on themselves by left multiplication.
// Point labels: 1, -1, i, -i, j, -j, k, -k.
inline FiniteGroup quaternion_group_8() {
  Perm li = {2, 3, 1, 0, 6, 7, 5, 4};
  Perm lj = {4, 5, 7, 6, 1, 0, 2, 3};
  FiniteGroup g = group_from_generators(8, {li, lj});
  check(g.size() == 8, "quaternion group order mismatch");
  return g;
}

}  // namespace exhom
