#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exhom/complex.hpp"
#include "exhom/matrix.hpp"

namespace exhom {

// Root data for connected reductive groups over an algebraically closed field:
// Cartan matrices of the classical and exceptional families, exact root and
// coroot enumeration, Weyl groups by breadth first search, length generating
// polynomials, Schubert cell counts of partial flag fibrations, exact
// evaluation at roots of unity, and the lattice quotients that compute
// fundamental groups and multipliers of connected groups.  All arithmetic is
// exact; group orders and polynomial coefficients live in arbitrary precision
// integers.

// ---------------------------------------------------------------------------
// Cartan types

struct SimpleType {
  char family = 'A';  // one of A B C D E F G
  int rank = 1;
};

// A semisimple isogeny class shape together with a split central torus.
struct CartanType {
  std::vector<SimpleType> factors;
  int torus_rank = 0;

  int semisimple_rank() const {
    int r = 0;
    for (auto& f : factors) r += f.rank;
    return r;
  }
  int rank() const { return semisimple_rank() + torus_rank; }
};

inline void validate_simple_type(const SimpleType& s) {
  bool ok = false;
  switch (s.family) {
    case 'A': ok = s.rank >= 1; break;
    case 'B': ok = s.rank >= 2; break;
    case 'C': ok = s.rank >= 2; break;
    case 'D': ok = s.rank >= 3; break;
    case 'E': ok = s.rank >= 6 && s.rank <= 8; break;
    case 'F': ok = s.rank == 4; break;
    case 'G': ok = s.rank == 2; break;
    default: break;
  }
  if (!ok)
    throw input_error("unrecognized Cartan type " + std::string(1, s.family) +
                      std::to_string(s.rank));
}

// Accepts factor tokens joined by 'x', e.g. "A2", "B3xA1", "A2xT1"; a T token
// adds to the central torus rank.
inline CartanType parse_cartan_type(const std::string& text) {
  if (text.empty()) throw input_error("empty Cartan type");
  CartanType out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find('x', pos);
    std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
    if (tok.size() < 2) throw input_error("bad Cartan type token '" + tok + "'");
    char fam = tok[0];
    int rank = 0;
    for (size_t i = 1; i < tok.size(); ++i) {
      if (tok[i] < '0' || tok[i] > '9')
        throw input_error("bad Cartan type token '" + tok + "'");
      rank = rank * 10 + (tok[i] - '0');
      if (rank > 64) throw input_error("Cartan type rank out of range");
    }
    if (fam == 'T') {
      out.torus_rank += rank;
    } else {
      SimpleType s{fam, rank};
      validate_simple_type(s);
      out.factors.push_back(s);
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

inline std::string cartan_type_str(const CartanType& t) {
  std::string out;
  for (auto& f : t.factors) {
    if (!out.empty()) out += 'x';
    out += f.family;
    out += std::to_string(f.rank);
  }
  if (t.torus_rank > 0 || t.factors.empty()) {
    if (!out.empty()) out += 'x';
    out += "T" + std::to_string(t.torus_rank);
  }
  return out;
}

// Cartan matrix rows are indexed by simple coroots and columns by simple
// roots: entry (i, j) pairs the root j against the coroot i, so column j
// holds the fundamental-weight coordinates of the simple root j.
inline std::vector<std::vector<int>> cartan_rows(const SimpleType& s) {
  validate_simple_type(s);
  int n = s.rank;
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int a, int b) { c[a][b] = -1; c[b][a] = -1; };
  switch (s.family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      // last simple root short
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 1][n - 2] = -2;
      break;
    case 'C':
      // last simple root long
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 2][n - 1] = -2;
      break;
    case 'D':
      for (int i = 0; i + 4 <= n; ++i) link(i, i + 1);
      link(n - 3, n - 2);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(2, 3);
      link(3, 4);
      link(4, 5);
      if (n >= 7) link(5, 6);
      if (n >= 8) link(6, 7);
      link(1, 3);
      break;
    case 'F':
      // first two simple roots long, last two short
      link(0, 1);
      link(2, 3);
      c[2][1] = -2;
      c[1][2] = -1;
      break;
    case 'G':
      // first simple root short, second long
      c[0][1] = -3;
      c[1][0] = -1;
      break;
  }
  return c;
}

// Block diagonal Cartan matrix of the semisimple part.
inline std::vector<std::vector<int>> cartan_rows(const CartanType& t) {
  int r = t.semisimple_rank();
  std::vector<std::vector<int>> c(r, std::vector<int>(r, 0));
  int off = 0;
  for (auto& f : t.factors) {
    auto block = cartan_rows(f);
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j) c[off + i][off + j] = block[i][j];
    off += f.rank;
  }
  return c;
}

inline MatZ cartan_matrix(const CartanType& t) {
  auto c = cartan_rows(t);
  MatZ m((int)c.size(), (int)c.size());
  for (int i = 0; i < m.nrows; ++i)
    for (int j = 0; j < m.ncols; ++j)
      if (c[i][j] != 0) m.set(i, j, Int(c[i][j]));
  return m;
}

// ---------------------------------------------------------------------------
// Root systems

namespace detail {

inline long long simple_root_count(const SimpleType& s) {
  long long n = s.rank;
  switch (s.family) {
    case 'A': return n * (n + 1);
    case 'B': return 2 * n * n;
    case 'C': return 2 * n * n;
    case 'D': return 2 * n * (n - 1);
    case 'E': return n == 6 ? 72 : (n == 7 ? 126 : 240);
    case 'F': return 48;
    case 'G': return 12;
  }
  check(false, "unreachable simple type");
  return 0;
}

// In simple-root coordinates every root has coordinates of one sign.
inline int root_sign(const std::vector<int>& v) {
  int pos = 0, neg = 0;
  for (int x : v) {
    if (x > 0) ++pos;
    if (x < 0) ++neg;
  }
  check(pos == 0 || neg == 0, "root coordinates must not mix signs");
  check(pos + neg > 0, "the zero vector is not a root");
  return neg > 0 ? -1 : 1;
}

// Closes the set of unit vectors under the simple reflections encoded by the
// rows of c; every root is conjugate to a simple one, so this yields the
// whole root system.
inline std::vector<std::vector<int>> root_closure(const std::vector<std::vector<int>>& c) {
  int r = (int)c.size();
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> out;
  std::deque<std::vector<int>> todo;
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    index.emplace(e, (int)out.size());
    out.push_back(e);
    todo.push_back(e);
  }
  while (!todo.empty()) {
    auto v = todo.front();
    todo.pop_front();
    for (int i = 0; i < r; ++i) {
      int pair = 0;
      for (int j = 0; j < r; ++j) pair += c[i][j] * v[j];
      auto w = v;
      w[i] -= pair;
      if (index.emplace(w, (int)out.size()).second) {
        out.push_back(w);
        todo.push_back(w);
      }
    }
    check(out.size() <= 100000, "root closure exceeded the safety cap");
  }
  return out;
}

}  // namespace detail

struct RootSystem {
  CartanType type;
  std::vector<std::vector<int>> cartan;   // pairing of root j against coroot i
  std::vector<std::vector<int>> roots;    // simple-root coordinates
  std::map<std::vector<int>, int> root_index;
  std::vector<int> positive;              // indices into roots
  std::vector<std::vector<int>> coroots;  // simple-coroot coordinates

  int rank() const { return (int)cartan.size(); }
  long long num_positive() const { return (long long)positive.size(); }
};

inline RootSystem root_system(const CartanType& t) {
  for (auto& f : t.factors) validate_simple_type(f);
  RootSystem rs;
  rs.type = t;
  rs.cartan = cartan_rows(t);
  rs.roots = detail::root_closure(rs.cartan);
  long long expect = 0;
  for (auto& f : t.factors) expect += detail::simple_root_count(f);
  check((long long)rs.roots.size() == expect, "root count disagrees with the classical table");
  for (int i = 0; i < (int)rs.roots.size(); ++i) {
    rs.root_index.emplace(rs.roots[i], i);
    if (detail::root_sign(rs.roots[i]) > 0) rs.positive.push_back(i);
  }
  check(2 * rs.positive.size() == rs.roots.size(), "roots must split into opposite halves");
  auto ct = rs.cartan;
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < i; ++j) std::swap(ct[i][j], ct[j][i]);
  rs.coroots = detail::root_closure(ct);
  check(rs.coroots.size() == rs.roots.size(), "coroot count must match the root count");
  return rs;
}

// Reflection in the simple root i acting on simple-root coordinates.
inline std::vector<int> apply_simple_reflection(const RootSystem& rs, int i, std::vector<int> v) {
  check(i >= 0 && i < rs.rank(), "reflection index out of range");
  int pair = 0;
  for (int j = 0; j < rs.rank(); ++j) pair += rs.cartan[i][j] * v[j];
  v[i] -= pair;
  return v;
}

// ---------------------------------------------------------------------------
// Weyl group orders, degrees, and breadth first enumeration

inline Int weyl_order(const CartanType& t) {
  auto fact = [](int k) {
    Int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  Int n = 1;
  for (auto& s : t.factors) {
    validate_simple_type(s);
    switch (s.family) {
      case 'A': n *= fact(s.rank + 1); break;
      case 'B':
      case 'C': n *= fact(s.rank) << s.rank; break;
      case 'D': n *= fact(s.rank) << (s.rank - 1); break;
      case 'E': n *= (s.rank == 6 ? 51840 : (s.rank == 7 ? 2903040 : 696729600)); break;
      case 'F': n *= 1152; break;
      case 'G': n *= 12; break;
    }
  }
  return n;
}

// Degrees of the basic invariants of the reflection representation; their
// product recovers the group order and their t-analogue the length counts.
inline std::vector<int> weyl_degrees(const CartanType& t) {
  std::vector<int> ds;
  for (auto& s : t.factors) {
    validate_simple_type(s);
    switch (s.family) {
      case 'A':
        for (int d = 2; d <= s.rank + 1; ++d) ds.push_back(d);
        break;
      case 'B':
      case 'C':
        for (int d = 2; d <= 2 * s.rank; d += 2) ds.push_back(d);
        break;
      case 'D':
        for (int d = 2; d <= 2 * (s.rank - 1); d += 2) ds.push_back(d);
        ds.push_back(s.rank);
        break;
      case 'E':
        if (s.rank == 6) ds.insert(ds.end(), {2, 5, 6, 8, 9, 12});
        if (s.rank == 7) ds.insert(ds.end(), {2, 6, 8, 10, 12, 14, 18});
        if (s.rank == 8) ds.insert(ds.end(), {2, 8, 12, 14, 18, 20, 24, 30});
        break;
      case 'F': ds.insert(ds.end(), {2, 6, 8, 12}); break;
      case 'G': ds.insert(ds.end(), {2, 6}); break;
    }
  }
  return ds;
}

// A parabolic type is the set of simple-root indices of a Levi subgroup:
// the empty set marks a Borel and the full set the whole group.
using Parabolic = std::vector<int>;

inline Parabolic full_parabolic(const RootSystem& rs) {
  Parabolic p(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) p[i] = i;
  return p;
}

inline void validate_parabolic(const RootSystem& rs, const Parabolic& p) {
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 0 || p[k] >= rs.rank())
      throw input_error("parabolic subset index out of range");
    if (k > 0 && p[k] <= p[k - 1])
      throw input_error("parabolic subsets must list distinct indices in increasing order");
  }
}

inline long long positive_roots_in(const RootSystem& rs, const Parabolic& s) {
  validate_parabolic(rs, s);
  std::vector<char> allow(rs.rank(), 0);
  for (int i : s) allow[i] = 1;
  long long n = 0;
  for (int idx : rs.positive) {
    bool inside = true;
    for (int k = 0; k < rs.rank() && inside; ++k)
      if (rs.roots[idx][k] != 0 && !allow[k]) inside = false;
    if (inside) ++n;
  }
  return n;
}

struct WeylData {
  Int order = 1;
  std::vector<long long> by_length;          // element counts per Cayley length
  std::vector<long long> minimal_by_length;  // counts of shortest coset representatives
};

namespace detail {

inline std::vector<int> reflection_matrix(const std::vector<std::vector<int>>& c, int i) {
  int r = (int)c.size();
  std::vector<int> m(r * r, 0);
  for (int k = 0; k < r; ++k) m[k * r + k] = 1;
  for (int j = 0; j < r; ++j) m[i * r + j] -= c[i][j];
  return m;
}

inline std::vector<int> mat_mul_flat(const std::vector<int>& a, const std::vector<int>& b, int r) {
  std::vector<int> out(r * r, 0);
  for (int k = 0; k < r; ++k)
    for (int m = 0; m < r; ++m) {
      int av = a[k * r + m];
      if (av == 0) continue;
      for (int j = 0; j < r; ++j) out[k * r + j] += av * b[m * r + j];
    }
  return out;
}

inline std::vector<int> mat_apply_flat(const std::vector<int>& a, const std::vector<int>& v, int r) {
  std::vector<int> out(r, 0);
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < r; ++j) out[k] += a[k * r + j] * v[j];
  return out;
}

}  // namespace detail

// Breadth first enumeration of the reflection subgroup generated by the
// simple reflections in q, acting on the root lattice.  Cayley distance from
// the identity is the length function; the count of positive roots sent
// negative is verified against it on a sample.  Elements whose inverse keeps
// the simple roots of p positive are the shortest representatives of their
// cosets and are tallied separately.  Throws when the subgroup outgrows cap.
inline WeylData weyl_explore(const RootSystem& rs, const Parabolic& q, const Parabolic& p,
                             long long cap = 1000000) {
  validate_parabolic(rs, q);
  validate_parabolic(rs, p);
  int r = rs.rank();
  WeylData wd;
  wd.by_length = {1};
  wd.minimal_by_length = {1};
  if (q.empty() || r == 0) return wd;

  std::vector<std::vector<int>> gens;
  for (int i : q) gens.push_back(detail::reflection_matrix(rs.cartan, i));
  std::vector<int> id(r * r, 0);
  for (int k = 0; k < r; ++k) id[k * r + k] = 1;

  auto minimal_ok = [&](const std::vector<int>& winv) {
    for (int i : p) {
      std::vector<int> col(r);
      for (int k = 0; k < r; ++k) col[k] = winv[k * r + i];
      if (detail::root_sign(col) < 0) return false;
    }
    return true;
  };
  auto inversions = [&](const std::vector<int>& w) {
    long long n = 0;
    for (int idx : rs.positive) {
      auto img = detail::mat_apply_flat(w, rs.roots[idx], r);
      check(rs.root_index.count(img) > 0, "Weyl image of a root must be a root");
      if (detail::root_sign(img) < 0) ++n;
    }
    return n;
  };

  std::map<std::vector<int>, char> seen;
  seen.emplace(id, 1);
  std::deque<std::pair<std::vector<int>, std::vector<int>>> frontier;
  frontier.push_back({id, id});
  long long depth = 0, sampled = 0;
  while (!frontier.empty()) {
    ++depth;
    std::deque<std::pair<std::vector<int>, std::vector<int>>> next;
    for (auto& [w, winv] : frontier) {
      for (auto& g : gens) {
        auto w2 = detail::mat_mul_flat(w, g, r);
        if (!seen.emplace(w2, 1).second) continue;
        if ((long long)seen.size() > cap)
          throw input_error("Weyl enumeration exceeded the element cap");
        auto winv2 = detail::mat_mul_flat(g, winv, r);
        if ((long long)wd.by_length.size() <= depth) {
          wd.by_length.push_back(0);
          wd.minimal_by_length.push_back(0);
        }
        ++wd.by_length[depth];
        if (minimal_ok(winv2)) ++wd.minimal_by_length[depth];
        if (sampled < 48) {
          ++sampled;
          check(inversions(w2) == depth, "length must count the inverted positive roots");
          check(detail::mat_mul_flat(w2, winv2, r) == id, "tracked inverse must invert");
        }
        next.push_back({std::move(w2), std::move(winv2)});
      }
    }
    frontier = std::move(next);
  }
  while (!wd.minimal_by_length.empty() && wd.minimal_by_length.back() == 0)
    wd.minimal_by_length.pop_back();
  wd.order = (long long)seen.size();
  if ((int)q.size() == r)
    check(wd.order == weyl_order(rs.type), "enumeration disagrees with the order formula");
  return wd;
}

// ---------------------------------------------------------------------------
// Integer polynomials (dense, index = exponent, no trailing zeros)

using ZPoly = std::vector<Int>;

inline ZPoly poly_trim(ZPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline ZPoly poly_from_counts(const std::vector<long long>& counts) {
  ZPoly p(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) p[i] = counts[i];
  return poly_trim(p);
}

inline ZPoly poly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return poly_trim(out);
}

// Long division over the integers; returns false when some reduction step
// fails to divide exactly (the quotient then does not exist in Z[t]).
inline bool poly_divrem(const ZPoly& num_in, const ZPoly& den_in, ZPoly* quo, ZPoly* rem) {
  ZPoly num = poly_trim(num_in), den = poly_trim(den_in);
  check(!den.empty(), "polynomial division by zero");
  ZPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  while (num.size() >= den.size()) {
    if (num.back() % den.back() != 0) return false;
    Int c = num.back() / den.back();
    size_t shift = num.size() - den.size();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    num = poly_trim(num);
  }
  if (quo) *quo = poly_trim(q);
  if (rem) *rem = num;
  return true;
}

inline Int poly_eval_int(const ZPoly& p, const Int& x) {
  Int acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Rat poly_eval_rat(const ZPoly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

inline std::string poly_str(const ZPoly& p, const std::string& var = "t") {
  if (p.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    Int c = p[i];
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    Int a = c < 0 ? Int(-c) : c;
    if (a != 1 || i == 0) out += a.str();
    if (i >= 1) {
      if (a != 1) out += "*";
      out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
  }
  return out;
}

inline ZPoly geometric_poly(int d) {
  check(d >= 1, "geometric factor needs a positive degree");
  return ZPoly(d, Int(1));
}

// n-th cyclotomic polynomial by exact division of x^n - 1.
inline ZPoly cyclotomic(long long n) {
  if (n < 1) throw input_error("cyclotomic index must be positive");
  if (n > 2000) throw input_error("cyclotomic index exceeds the supported range");
  std::vector<ZPoly> phi(n + 1);
  for (long long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    ZPoly num(d + 1, Int(0));
    num[0] = -1;
    num[d] = 1;
    for (long long e = 1; e < d; ++e) {
      if (d % e != 0) continue;
      ZPoly q, r;
      bool ok = poly_divrem(num, phi[e], &q, &r);
      check(ok && r.empty(), "cyclotomic polynomials divide x^n - 1");
      num = q;
    }
    phi[d] = num;
  }
  return phi[n];
}

// ---------------------------------------------------------------------------
// Length generating polynomials

// Product over the degree table of (1 + t + ... + t^{d-1}); cross-checked
// against breadth first enumeration whenever the group order fits under cap.
inline ZPoly poincare_weyl(const CartanType& t, long long cap = 1000000) {
  ZPoly p = {Int(1)};
  for (int d : weyl_degrees(t)) p = poly_mul(p, geometric_poly(d));
  check(poly_eval_int(p, 1) == weyl_order(t), "degree table disagrees with the order formula");
  if (t.semisimple_rank() > 0 && weyl_order(t) <= cap) {
    RootSystem rs = root_system(t);
    WeylData wd = weyl_explore(rs, full_parabolic(rs), {}, cap);
    check(poly_from_counts(wd.by_length) == p,
          "enumerated length counts disagree with the degree product");
  }
  return p;
}

// Cell counts of the fibration between the partial flag varieties of two
// nested parabolic types: dims[m] counts the cosets of shortest length m, the
// cohomology sitting in degree 2m.
struct FlagCells {
  std::vector<long long> dims;
  ZPoly in_q;     // the same data as a polynomial in q, supported in even powers
  Int index = 1;  // total cell count
};

inline FlagCells flag_cells(const RootSystem& rs, const Parabolic& p, const Parabolic& q,
                            long long cap = 1000000) {
  validate_parabolic(rs, p);
  validate_parabolic(rs, q);
  if (!std::includes(q.begin(), q.end(), p.begin(), p.end()))
    throw input_error("the smaller parabolic must be contained in the larger one");
  bool q_full = (int)q.size() == rs.rank();
  ZPoly poly_q;
  WeylData data_q;
  bool enumerated = false;
  if (!q_full || weyl_order(rs.type) <= cap) {
    data_q = weyl_explore(rs, q, p, cap);
    poly_q = poly_from_counts(data_q.by_length);
    enumerated = true;
  } else {
    poly_q = poincare_weyl(rs.type, cap);
  }
  ZPoly poly_p = {Int(1)};
  if (!p.empty()) poly_p = poly_from_counts(weyl_explore(rs, p, {}, cap).by_length);
  ZPoly quo, rem;
  bool ok = poly_divrem(poly_q, poly_p, &quo, &rem);
  check(ok && rem.empty(), "the parabolic length polynomial must divide the larger one");
  if (enumerated)
    check(quo == poly_from_counts(data_q.minimal_by_length),
          "coset representatives disagree with the polynomial quotient");
  check(!quo.empty() && quo[0] == 1, "the cell count in degree zero must be one");
  ZPoly rev(quo.rbegin(), quo.rend());
  check(rev == quo, "cell counts must satisfy Poincare duality");
  check((long long)quo.size() - 1 == positive_roots_in(rs, q) - positive_roots_in(rs, p),
        "the top cell degree must match the unipotent root count");
  FlagCells out;
  for (auto& c : quo) {
    check(c >= 1, "cell counts must be positive");
    check(c <= Int((long long)1 << 62), "cell count exceeds the integer range");
    out.dims.push_back((long long)c);
  }
  out.in_q.assign(2 * out.dims.size() - 1, Int(0));
  for (size_t m = 0; m < out.dims.size(); ++m) out.in_q[2 * m] = out.dims[m];
  out.index = poly_eval_int(quo, 1);
  return out;
}

inline ZPoly poincare_flag(const RootSystem& rs, const Parabolic& p, const Parabolic& q,
                           long long cap = 1000000) {
  return flag_cells(rs, p, q, cap).in_q;
}

inline std::vector<long long> weight_shear_cohomology(const RootSystem& rs, const Parabolic& p,
                                                      const Parabolic& q, long long cap = 1000000) {
  return flag_cells(rs, p, q, cap).dims;
}

// ---------------------------------------------------------------------------
// Exact evaluation of the cell polynomial

// A nonzero rational never cancels the positive cell sum; the interesting
// parameters are roots of unity, handled below.
inline bool splitting_criterion(const RootSystem& rs, const Parabolic& p, const Parabolic& q,
                                const Rat& value, long long cap = 1000000) {
  if (value == 0) throw input_error("the splitting parameter must lie in the multiplicative group");
  FlagCells fc = flag_cells(rs, p, q, cap);
  Rat q2 = value * value, acc = 0;
  for (auto it = fc.dims.rbegin(); it != fc.dims.rend(); ++it) acc = acc * q2 + Rat(*it);
  return acc != 0;
}

// Evaluates the cell polynomial at zeta_n^k inside Z[x]/(Phi_n(x)): since
// x^n = 1 there, exponents reduce mod n before the cyclotomic reduction.
inline bool splitting_criterion_root_of_unity(const RootSystem& rs, const Parabolic& p,
                                              const Parabolic& q, long long n, long long k,
                                              long long cap = 1000000) {
  if (n < 1) throw input_error("the order of the root of unity must be positive");
  FlagCells fc = flag_cells(rs, p, q, cap);
  long long kk = ((k % n) + n) % n;
  ZPoly acc(n, Int(0));
  for (size_t m = 0; m < fc.dims.size(); ++m) acc[(2 * (long long)m * kk) % n] += fc.dims[m];
  acc = poly_trim(acc);
  if (acc.empty()) return false;
  ZPoly quo, rem;
  bool ok = poly_divrem(acc, cyclotomic(n), &quo, &rem);
  check(ok, "cyclotomic reduction must stay integral");
  return !rem.empty();
}

// Exact divisibility of the full flag cell polynomial by the cell polynomial
// of the given sub-fibration.
inline bool brion_peyre_check(const RootSystem& rs, const Parabolic& p, const Parabolic& q,
                              long long cap = 1000000) {
  FlagCells sub = flag_cells(rs, p, q, cap);
  FlagCells all = flag_cells(rs, {}, full_parabolic(rs), cap);
  ZPoly quo, rem;
  bool ok = poly_divrem(poly_from_counts(all.dims), poly_from_counts(sub.dims), &quo, &rem);
  return ok && rem.empty();
}

// ---------------------------------------------------------------------------
// Root data and lattice quotients

// The character lattice is given by integer generators inside the weight
// lattice of the semisimple part extended by the torus characters; columns of
// x are the generators.  Validation checks full rank and that every simple
// root lies in the span over Z.
struct RootDatum {
  CartanType type;
  MatZ x;
};

inline void validate_root_datum(const RootDatum& d) {
  int r = d.type.semisimple_rank(), n = d.type.rank();
  if (d.x.nrows != n)
    throw input_error("the character lattice needs one coordinate row per rank");
  if (rank_z(d.x) != n) throw input_error("the character lattice must have full rank");
  auto c = cartan_rows(d.type);
  for (int j = 0; j < r; ++j) {
    std::vector<Int> root(n, Int(0));
    for (int i = 0; i < r; ++i) root[i] = c[i][j];
    if (!solve_z(d.x, root)) throw input_error("the character lattice must contain every root");
  }
}

// lattice = "weight" gives the simply connected datum, "root" the adjoint one;
// the torus block is always the identity.
inline RootDatum standard_datum(const CartanType& t, const std::string& lattice) {
  int r = t.semisimple_rank(), n = t.rank();
  RootDatum d;
  d.type = t;
  if (lattice == "weight") {
    d.x = MatZ::identity(n);
  } else if (lattice == "root") {
    d.x = MatZ::identity(n);
    auto c = cartan_rows(t);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) d.x.set(i, j, Int(c[i][j]));
  } else {
    throw input_error("unknown standard lattice name; use weight or root");
  }
  validate_root_datum(d);
  return d;
}

namespace detail {

// Invariant factors of (weight lattice of the derived part) / (restriction of
// the character lattice), the quotient that controls both the fundamental
// group and the multiplier of a connected group.
inline AbelianGroupStructure derived_weight_quotient(const RootDatum& d) {
  validate_root_datum(d);
  int r = d.type.semisimple_rank();
  MatZ xd(r, d.x.ncols);
  for (int i = 0; i < r; ++i)
    for (auto& [j, v] : d.x.rows[i]) xd.set(i, j, v);
  SmithForm sf = smith_normal_form(xd);
  check(sf.rank() == r, "the restricted character lattice must have full rank");
  return AbelianGroupStructure::from_diagonal(0, sf.invariant_factors);
}

}  // namespace detail

inline AbelianGroupStructure fundamental_group(const RootDatum& d) {
  return detail::derived_weight_quotient(d);
}

inline AbelianGroupStructure schur_multiplier_connected(const RootDatum& d) {
  AbelianGroupStructure m = detail::derived_weight_quotient(d);
  check(m.is_finite(), "the multiplier of a connected group must be finite");
  return m;
}

// ---------------------------------------------------------------------------
// Minuscule lifts

namespace detail {

// Classifies weights modulo the root lattice through the Smith form of the
// Cartan matrix: two weights agree exactly when their keys agree.
struct WeightClassing {
  MatZ u;
  std::vector<Int> d;
  Int class_count = 1;

  std::vector<Int> key(const std::vector<Int>& w) const {
    std::vector<Int> t = u.apply(w);
    for (size_t i = 0; i < t.size(); ++i) {
      Int m = t[i] % d[i];
      if (m < 0) m += d[i];
      t[i] = m;
    }
    return t;
  }
};

inline WeightClassing weight_classing(const RootSystem& rs) {
  int r = rs.rank();
  MatZ c(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (rs.cartan[i][j] != 0) c.set(i, j, Int(rs.cartan[i][j]));
  SmithForm sf = smith_normal_form(c, {.want_left = true});
  check(sf.rank() == r, "the Cartan matrix must be nonsingular");
  WeightClassing wc;
  wc.u = *sf.left;
  wc.d = sf.invariant_factors;
  for (auto& x : wc.d) wc.class_count *= x;
  return wc;
}

}  // namespace detail

// The dominant weight pairing with every coroot in {-1, 0, 1} that represents
// the class of the given weight modulo the root lattice; the trivial class
// lifts to zero.  Such weights have fundamental coordinates in {0, 1}, and
// exactly one of them lands in each class.
inline std::vector<Int> minuscule_lift(const RootSystem& rs, const std::vector<Int>& weight) {
  int r = rs.rank();
  if ((int)weight.size() != r)
    throw input_error("the weight needs one fundamental coordinate per simple root");
  if (r > 20) throw input_error("minuscule search supports rank at most 20");
  detail::WeightClassing wc = detail::weight_classing(rs);
  std::map<std::vector<Int>, std::vector<Int>> lifts;
  for (long long mask = 0; mask < (1LL << r); ++mask) {
    bool minuscule = true;
    for (auto& cor : rs.coroots) {
      long long pair = 0;
      for (int i = 0; i < r; ++i)
        if ((mask >> i) & 1) pair += cor[i];
      if (pair > 1 || pair < -1) {
        minuscule = false;
        break;
      }
    }
    if (!minuscule) continue;
    std::vector<Int> cand(r);
    for (int i = 0; i < r; ++i) cand[i] = (mask >> i) & 1;
    bool fresh = lifts.emplace(wc.key(cand), cand).second;
    check(fresh, "two minuscule weights share a class");
  }
  check(Int((long long)lifts.size()) == wc.class_count,
        "minuscule weights must represent every class exactly once");
  return lifts.at(wc.key(weight));
}

// ---------------------------------------------------------------------------
// Multipliers of products

// Invariant factors of the direct sum of the given cyclic groups.
inline AbelianGroupStructure canonical_cyclic_sum(const std::vector<Int>& orders) {
  std::vector<Int> keep;
  for (auto& d : orders) {
    if (d <= 0) throw input_error("cyclic orders must be positive");
    if (d > 1) keep.push_back(d);
  }
  if (keep.empty()) return {};
  MatZ m((int)keep.size(), (int)keep.size());
  for (size_t i = 0; i < keep.size(); ++i) m.set((int)i, (int)i, keep[i]);
  SmithForm sf = smith_normal_form(m);
  return AbelianGroupStructure::from_diagonal(0, sf.invariant_factors);
}

struct ProductMultiplierReport {
  AbelianGroupStructure left;   // multiplier of the first factor
  AbelianGroupStructure right;  // multiplier of the second factor
  AbelianGroupStructure hom;    // pairings between the component groups
  AbelianGroupStructure total;
};

// Multiplier bookkeeping for a product: each factor contributes its own
// multiplier, and the finite component groups of the abelianizations
// contribute the group of pairings between them, a sum of cyclic groups of
// gcd orders.  The component groups enter as lists of cyclic orders and are
// empty for connected groups, which kills the pairing term.
inline ProductMultiplierReport product_multiplier(const RootDatum& a, const RootDatum& b,
                                                  const std::vector<Int>& pi0_a = {},
                                                  const std::vector<Int>& pi0_b = {}) {
  for (auto& v : pi0_a)
    if (v <= 0) throw input_error("cyclic orders must be positive");
  for (auto& v : pi0_b)
    if (v <= 0) throw input_error("cyclic orders must be positive");
  ProductMultiplierReport out;
  out.left = schur_multiplier_connected(a);
  out.right = schur_multiplier_connected(b);
  std::vector<Int> homs;
  for (auto& x : pi0_a)
    for (auto& y : pi0_b) homs.push_back(boost::multiprecision::gcd(x, y));
  out.hom = canonical_cyclic_sum(homs);
  std::vector<Int> all = out.left.invariant_factors;
  all.insert(all.end(), out.right.invariant_factors.begin(), out.right.invariant_factors.end());
  all.insert(all.end(), out.hom.invariant_factors.begin(), out.hom.invariant_factors.end());
  out.total = canonical_cyclic_sum(all);
  return out;
}

}  // namespace exhom
