#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exhom/complex.hpp"
#include "exhom/group.hpp"
#include "exhom/matrix.hpp"

namespace exhom {

// Cohomology of finite permutation groups with finitely generated abelian
// coefficients, computed on normalized inhomogeneous cochains with exact
// integer linear algebra.  Degrees 0..3 are supported; degree 3 with trivial
// coefficients gives the multiplier of the group.

// --- small matrix helpers ---

inline MatZ hconcat(const MatZ& a, const MatZ& b) {
  check(a.nrows == b.nrows, "hconcat row mismatch");
  MatZ c(a.nrows, a.ncols + b.ncols);
  for (int i = 0; i < a.nrows; ++i) {
    c.rows[i] = a.rows[i];
    for (auto& [j, v] : b.rows[i]) c.rows[i][a.ncols + j] = v;
  }
  return c;
}

inline MatZ diag_matrix(const std::vector<Int>& d) {
  MatZ m((int)d.size(), (int)d.size());
  for (int i = 0; i < (int)d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

inline MatZ column_matrix(const std::vector<std::vector<Int>>& cols, int nrows) {
  MatZ m(nrows, (int)cols.size());
  for (int j = 0; j < (int)cols.size(); ++j) {
    check((int)cols[j].size() == nrows, "column length mismatch");
    for (int i = 0; i < nrows; ++i)
      if (cols[j][i] != 0) m.set(i, j, cols[j][i]);
  }
  return m;
}

// --- coefficient modules ---

// A finitely generated abelian group Z^r + sum of Z/d_j carrying a left
// action of the group, one integer matrix per group generator.  Free
// coordinates come first; entries hitting a torsion coordinate are read
// modulo its factor.
struct GModule {
  int free_rank = 0;
  std::vector<Int> torsion;      // each factor > 1
  std::vector<MatZ> gen_action;  // one dim x dim matrix per generator

  int dim() const { return free_rank + (int)torsion.size(); }
  bool is_free() const { return torsion.empty(); }
};

inline Int coord_modulus(const GModule& m, int coord) {
  return coord < m.free_rank ? Int(0) : m.torsion[coord - m.free_rank];
}

// Entrywise test that a matrix vanishes as a map into stacked copies of the
// coefficient module: exact zero on free coordinates, zero mod the factor on
// torsion ones.  Row r is read in coordinate r mod dim.
inline bool congruent_zero_rows(const GModule& m, const MatZ& a) {
  int k = m.dim();
  check(k > 0 && a.nrows % k == 0, "row count is not a stack of coordinate blocks");
  for (int r = 0; r < a.nrows; ++r) {
    Int mod = coord_modulus(m, r % k);
    for (auto& [c, v] : a.rows[r]) {
      (void)c;
      if (mod == 0 || v % mod != 0) return false;
    }
  }
  return true;
}

inline bool congruent_rows(const GModule& m, const MatZ& a, const MatZ& b) {
  check(a.nrows == b.nrows && a.ncols == b.ncols, "congruence shape mismatch");
  return congruent_zero_rows(m, a.sub(b));
}

inline void validate_module(const FiniteGroup& g, const GModule& m) {
  for (auto& d : m.torsion)
    if (d <= 1) throw input_error("torsion factors must exceed 1");
  if ((int)m.gen_action.size() != (int)g.gens.size())
    throw input_error("one action matrix per group generator is required");
  int k = m.dim();
  if (k == 0) throw input_error("coefficient module needs at least one coordinate");
  for (auto& a : m.gen_action) {
    if (a.nrows != k || a.ncols != k) throw input_error("action matrix shape mismatch");
    for (int j = m.free_rank; j < k; ++j) {
      Int dj = m.torsion[j - m.free_rank];
      for (int i = 0; i < k; ++i) {
        Int v = dj * a.get(i, j);
        Int mi = coord_modulus(m, i);
        bool ok = mi == 0 ? v == 0 : v % mi == 0;
        if (!ok) throw input_error("action does not descend to the torsion coordinates");
      }
    }
  }
}

inline GModule trivial_coefficient_module(int ngens) {
  GModule m;
  m.free_rank = 1;
  for (int i = 0; i < ngens; ++i) m.gen_action.push_back(MatZ::identity(1));
  return m;
}

// Functions on the group with the left translation action; cohomology in
// positive degrees vanishes, which makes it a useful cross-check module.
inline GModule coinduced_module(const FiniteGroup& g) {
  GModule m;
  m.free_rank = g.size();
  for (auto& gp : g.gens) {
    int a = g.index.at(gp);
    MatZ mat(g.size(), g.size());
    for (int x = 0; x < g.size(); ++x) mat.set(g.mul[a][x], x, 1);
    m.gen_action.push_back(mat);
  }
  return m;
}

// Rank-two quotient lattice Z^3 / Z(1,1,1) with coordinates the images of the
// first two basis vectors; degree-3 permutations act by permuting the three
// ambient basis vectors.
inline MatZ quotient_lattice_action(const Perm& p) {
  check(p.size() == 3, "quotient lattice wants degree-3 permutations");
  MatZ m(2, 2);
  for (int j = 0; j < 2; ++j) {
    int im = p[j];
    if (im < 2) {
      m.set(im, j, 1);
    } else {
      m.set(0, j, -1);
      m.set(1, j, -1);
    }
  }
  return m;
}

inline GModule weight_lattice_module(const FiniteGroup& g) {
  GModule m;
  m.free_rank = 2;
  for (auto& p : g.gens) m.gen_action.push_back(quotient_lattice_action(p));
  return m;
}

// Integer lift of the action at every element, built along the enumeration
// tree and then checked against the whole multiplication table (exactly for
// free modules, mod the factors otherwise).
struct ActionLifts {
  std::vector<MatZ> at;
};

inline ActionLifts action_lifts(const FiniteGroup& g, const GModule& m) {
  validate_module(g, m);
  ActionLifts l;
  l.at.resize(g.size());
  l.at[0] = MatZ::identity(m.dim());
  for (int e = 1; e < g.size(); ++e) {
    auto [parent, gi] = g.word[e];
    l.at[e] = l.at[parent].mul(m.gen_action[gi]);
  }
  for (int e = 0; e < g.size(); ++e)
    for (int gi = 0; gi < (int)g.gens.size(); ++gi) {
      int es = g.mul[e][g.index.at(g.gens[gi])];
      if (!congruent_rows(m, l.at[es], l.at[e].mul(m.gen_action[gi])))
        throw input_error("generator actions violate the group relations");
    }
  return l;
}

// --- normalized cochain cells ---

namespace gdetail {

// Tuples of non-identity element ids, ranked as base-(|G|-1) digit strings.
struct Cells {
  int base = 0;
  int q = 0;
  long long count = 1;
  Cells(const FiniteGroup& g, int q_) : base(g.size() - 1), q(q_) {
    for (int i = 0; i < q; ++i) count *= base;
  }
  std::vector<int> unrank(long long c) const {
    std::vector<int> t(q);
    for (int i = q - 1; i >= 0; --i) {
      t[i] = (int)(c % base) + 1;
      c /= base;
    }
    return t;
  }
  long long rank(const std::vector<int>& t) const {
    long long c = 0;
    for (int v : t) c = c * base + (v - 1);
    return c;
  }
};

// Faces of every (q+1)-tuple: cb(dst_cell, src_cell, sign, actor) where actor
// is the acting element id on the leading face and -1 on the identity-block
// faces.  Neighbour merges that hit the identity are dropped (normalized
// cochains vanish there).
template <class F>
inline void visit_bar_faces(const FiniteGroup& g, int q, F&& cb) {
  Cells src(g, q), dst(g, q + 1);
  std::vector<int> t, s;
  for (long long c = 0; c < dst.count; ++c) {
    t = dst.unrank(c);
    s.assign(t.begin() + 1, t.end());
    cb(c, src.rank(s), 1, t[0]);
    int sign = -1;
    for (int i = 1; i <= q; ++i, sign = -sign) {
      int p = g.mul[t[i - 1]][t[i]];
      if (p == 0) continue;
      s.clear();
      s.insert(s.end(), t.begin(), t.begin() + (i - 1));
      s.push_back(p);
      s.insert(s.end(), t.begin() + i + 1, t.end());
      cb(c, src.rank(s), sign, -1);
    }
    s.assign(t.begin(), t.end() - 1);
    cb(c, src.rank(s), q % 2 == 0 ? -1 : 1, -1);
  }
}

}  // namespace gdetail

// The differential from q-cochains to (q+1)-cochains as an integer matrix on
// the free covers; coordinates are blocked per cell.
inline MatZ bar_differential(const FiniteGroup& g, const GModule& m,
                             const ActionLifts& lifts, int q) {
  gdetail::Cells src(g, q), dst(g, q + 1);
  int k = m.dim();
  MatZ d((int)(dst.count * k), (int)(src.count * k));
  gdetail::visit_bar_faces(g, q, [&](long long c, long long sc, int sign, int actor) {
    if (actor >= 0) {
      const MatZ& rho = lifts.at[actor];
      for (int i = 0; i < k; ++i)
        for (auto& [j, v] : rho.rows[i])
          d.add_to((int)(c * k + i), (int)(sc * k + j), sign * v);
    } else {
      for (int i = 0; i < k; ++i) d.add_to((int)(c * k + i), (int)(sc * k + i), sign);
    }
  });
  return d;
}

// The same differential applied to one cochain vector, without materializing
// the matrix; used for cocycle verification in large degrees.
inline std::vector<Int> apply_bar_differential(const FiniteGroup& g, const GModule& m,
                                               const ActionLifts& lifts, int q,
                                               const std::vector<Int>& f) {
  gdetail::Cells src(g, q), dst(g, q + 1);
  int k = m.dim();
  check((long long)f.size() == src.count * k, "cochain length mismatch");
  std::vector<Int> w(dst.count * k, 0);
  gdetail::visit_bar_faces(g, q, [&](long long c, long long sc, int sign, int actor) {
    if (actor >= 0) {
      const MatZ& rho = lifts.at[actor];
      for (int i = 0; i < k; ++i)
        for (auto& [j, v] : rho.rows[i]) {
          const Int& x = f[sc * k + j];
          if (x != 0) w[c * k + i] += sign * v * x;
        }
    } else {
      for (int i = 0; i < k; ++i) {
        const Int& x = f[sc * k + i];
        if (x != 0) w[c * k + i] += sign * x;
      }
    }
  });
  return w;
}

inline long long cochain_cells(const FiniteGroup& g, int q) {
  return gdetail::Cells(g, q).count;
}

inline void check_degree_caps(const FiniteGroup& g, int n) {
  if (n < 0 || n > 3) throw input_error("cohomological degree must be between 0 and 3");
  int cap = n >= 3 ? 30 : 200;
  if (g.size() > cap)
    throw input_error("group order " + std::to_string(g.size()) + " exceeds the cap " +
                      std::to_string(cap) + " for degree " + std::to_string(n) + ": " +
                      std::to_string(cochain_cells(g, n + 1)) + " cochain cells");
}

// --- cohomology ---

struct CohomologyResult {
  int degree = 0;
  GModule module;
  AbelianGroupStructure group;
  bool has_classes = false;            // generator cocycles stored below
  std::vector<std::vector<Int>> gens;  // one integral cocycle per factor
  MatZ d_in;                           // incoming differential (rows = cochain length)
};

// H^n(G, M).  Free coefficients in positive degree read the torsion straight
// off the Smith form of the incoming differential: the cochain quotient by
// the kernel of the outgoing one is free, so the torsion of the cohomology
// equals the torsion of the quotient by the image, and the free rank vanishes
// because every positive-degree class is killed by |G| while the mod-p
// complex is exact for any p coprime to |G|.  Degree 0 and torsion
// coefficients take the explicit finitely-presented-subquotient route.
inline CohomologyResult cohomology(const FiniteGroup& g, const GModule& m, int n) {
  check_degree_caps(g, n);
  ActionLifts lifts = action_lifts(g, m);
  int k = m.dim();
  gdetail::Cells cin(g, n), cnext(g, n + 1);
  long long a_n = cin.count * k;
  CohomologyResult out;
  out.degree = n;
  out.module = m;

  if (m.is_free() && n >= 1) {
    MatZ d_in = bar_differential(g, m, lifts, n - 1);
    auto sf = smith_normal_form(d_in, {.want_right = true});
    std::vector<Int> facs;
    for (auto& d : sf.invariant_factors)
      if (d > 1) facs.push_back(d);
    for (auto& d : facs)
      check(Int(g.size()) % d == 0, "invariant factor does not divide the group order");

    long long out_size = cnext.count * k;
    if (out_size <= 4000) {
      MatZ d_out = bar_differential(g, m, lifts, n);
      check(d_out.mul(d_in).is_zero(), "differential fails d*d = 0");
      check(rank_z(d_out) + sf.rank() == (int)a_n, "cocycle lattice rank mismatch");
    } else if (d_in.ncols > 0) {
      // spot-check d*d = 0 on a spread of columns; the rank bookkeeping above
      // is forced once the differential is correct
      MatZ dt = d_in.transpose();
      int samples = (int)std::min<long long>(12, d_in.ncols);
      for (int s = 0; s < samples; ++s) {
        int j = (int)((long long)s * d_in.ncols / samples);
        std::vector<Int> v(d_in.nrows, 0);
        for (auto& [r, val] : dt.rows[j]) v[r] = val;
        auto w = apply_bar_differential(g, m, lifts, n, v);
        for (auto& x : w) check(x == 0, "differential fails d*d = 0 on a sampled column");
      }
    }

    // columns of d_in * V over their factors are integral cocycles whose
    // classes have exactly those orders and generate the cohomology
    int r = sf.rank();
    int t = (int)facs.size();
    MatZ vt = sf.right->transpose();
    for (int i = r - t; i < r; ++i) {
      std::vector<Int> vcol(d_in.ncols, 0);
      for (auto& [c, val] : vt.rows[i]) vcol[c] = val;
      std::vector<Int> u = d_in.apply(vcol);
      const Int& d = sf.invariant_factors[i];
      for (auto& x : u) {
        check(x % d == 0, "generator column is not divisible by its factor");
        x /= d;
      }
      auto du = apply_bar_differential(g, m, lifts, n, u);
      for (auto& x : du) check(x == 0, "stored generator is not a cocycle");
      out.gens.push_back(std::move(u));
    }
    out.group = AbelianGroupStructure::from_diagonal(0, facs);
    out.has_classes = true;
    out.d_in = std::move(d_in);
    return out;
  }

  // general route: present the subquotient of the free cover
  long long out_size = cnext.count * k;
  if (out_size > 200000)
    throw input_error("cochain space of " + std::to_string(out_size) +
                      " cells exceeds the general-coefficient cap");
  MatZ d_in = n >= 1 ? bar_differential(g, m, lifts, n - 1) : MatZ((int)a_n, 0);
  MatZ d_out = bar_differential(g, m, lifts, n);
  int tn = (int)m.torsion.size();
  auto relation_columns = [&](long long ncells) {
    MatZ rel((int)(ncells * k), (int)(ncells * tn));
    for (long long c = 0; c < ncells; ++c)
      for (int j = 0; j < tn; ++j)
        rel.set((int)(c * k + m.free_rank + j), (int)(c * tn + j), m.torsion[j]);
    return rel;
  };
  if (d_in.ncols > 0)
    check(congruent_zero_rows(m, d_out.mul(d_in)), "differential fails d*d = 0 mod torsion");

  // integer cochains whose differential dies in the coefficient relations
  MatZ block = hconcat(d_out, relation_columns(cnext.count));
  std::vector<std::vector<Int>> pcols;
  for (auto& col : kernel_z(block)) {
    std::vector<Int> x(col.begin(), col.begin() + a_n);
    bool nz = false;
    for (auto& v : x)
      if (v != 0) nz = true;
    if (nz) pcols.push_back(std::move(x));
  }
  MatZ p = column_matrix(pcols, (int)a_n);

  // relations: coefficient torsion, coboundaries, and dependencies
  std::vector<std::vector<Int>> rels;
  MatZ reln = relation_columns(cin.count);
  MatZ relt = reln.transpose();
  MatZ dt = d_in.transpose();
  auto solve_into = [&](const std::vector<Int>& target) {
    auto s = solve_z(p, target);
    check(s.has_value(), "vector escapes the cocycle span");
    rels.push_back(std::move(*s));
  };
  for (int j = 0; j < reln.ncols; ++j) {
    std::vector<Int> col((int)a_n, 0);
    for (auto& [r2, v] : relt.rows[j]) col[r2] = v;
    solve_into(col);
  }
  for (int j = 0; j < d_in.ncols; ++j) {
    std::vector<Int> col((int)a_n, 0);
    for (auto& [r2, v] : dt.rows[j]) col[r2] = v;
    solve_into(col);
  }
  for (auto& kcol : kernel_z(p)) rels.push_back(kcol);
  MatZ relmat = column_matrix(rels, (int)pcols.size());
  auto sfr = smith_normal_form(relmat);
  out.group = AbelianGroupStructure::from_diagonal((long long)pcols.size() - sfr.rank(),
                                                   sfr.invariant_factors);
  if (n >= 1) {
    check(out.group.is_finite(), "positive-degree cohomology of a finite group must be finite");
    for (auto& d : out.group.invariant_factors)
      check(Int(g.size()) % d == 0, "invariant factor does not divide the group order");
  }
  out.d_in = std::move(d_in);
  return out;
}

// Coordinates of an integral cocycle with respect to the stored generators,
// reduced modulo the invariant factors.
inline std::vector<Int> express_class(const CohomologyResult& h, const std::vector<Int>& w) {
  check(h.has_classes, "class expression needs stored generators");
  check((int)w.size() == h.d_in.nrows, "cocycle length mismatch");
  int t = (int)h.gens.size();
  MatZ a(h.d_in.nrows, t + h.d_in.ncols);
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < h.d_in.nrows; ++i)
      if (h.gens[j][i] != 0) a.set(i, j, h.gens[j][i]);
  for (int i = 0; i < h.d_in.nrows; ++i)
    for (auto& [j, v] : h.d_in.rows[i]) a.rows[i][t + j] = v;
  auto s = solve_z(a, w);
  check(s.has_value(), "vector is not a cocycle of this space");
  std::vector<Int> coords(t);
  for (int i = 0; i < t; ++i) {
    const Int& d = h.group.invariant_factors[i];
    coords[i] = ((*s)[i] % d + d) % d;
  }
  return coords;
}

struct CocycleClass {
  int degree = 0;
  std::vector<Int> representative;
  AbelianGroupStructure ambient;
};

inline CocycleClass cocycle_class(const CohomologyResult& h, int i) {
  check(h.has_classes && 0 <= i && i < (int)h.gens.size(), "no stored class at this index");
  return {h.degree, h.gens[i], h.group};
}

// The multiplier of a finite group, taken as degree-3 cohomology with trivial
// integer coefficients (the degree-2 description with divisible coefficients
// shifts to degree 3 over Z).  Each invariant factor divides |G|; the order
// itself can exceed |G|, e.g. for elementary abelian groups.
inline CohomologyResult schur_multiplier_result(const FiniteGroup& g) {
  return cohomology(g, trivial_coefficient_module((int)g.gens.size()), 3);
}

inline AbelianGroupStructure schur_multiplier(const FiniteGroup& g) {
  return schur_multiplier_result(g).group;
}

// --- maps between finite cohomology groups ---

// Structure of the subgroup generated by the given columns inside the finite
// group with the given invariant factors.
inline AbelianGroupStructure span_in_finite(const MatZ& cols, const std::vector<Int>& facs) {
  check(cols.nrows == (int)facs.size(), "factor count mismatch");
  MatZ block = hconcat(cols, diag_matrix(facs));
  std::vector<std::vector<Int>> deps;
  for (auto& col : kernel_z(block)) deps.push_back({col.begin(), col.begin() + cols.ncols});
  auto sf = smith_normal_form(column_matrix(deps, cols.ncols));
  auto s = AbelianGroupStructure::from_diagonal(cols.ncols - sf.rank(), sf.invariant_factors);
  check(s.is_finite(), "span inside a finite group must be finite");
  return s;
}

// Kernel of the map of finite groups given on generators by an integer
// matrix; optionally returns spanning columns of the kernel in source
// coordinates.
inline AbelianGroupStructure finite_map_kernel(const MatZ& a, const std::vector<Int>& src_facs,
                                               const std::vector<Int>& dst_facs,
                                               MatZ* gens_out = nullptr) {
  check(a.nrows == (int)dst_facs.size() && a.ncols == (int)src_facs.size(),
        "map shape mismatch");
  MatZ block = hconcat(a, diag_matrix(dst_facs));
  std::vector<std::vector<Int>> cols;
  for (auto& col : kernel_z(block)) {
    std::vector<Int> x(col.begin(), col.begin() + a.ncols);
    cols.push_back(std::move(x));
  }
  MatZ kc = column_matrix(cols, a.ncols);
  if (gens_out) *gens_out = kc;
  return span_in_finite(kc, src_facs);
}

struct CohomologyMap {
  AbelianGroupStructure src, dst;
  MatZ matrix;  // dst coordinates of the images of the src generators

  AbelianGroupStructure image() const { return span_in_finite(matrix, dst.invariant_factors); }
  AbelianGroupStructure kernel(MatZ* gens = nullptr) const {
    auto k = finite_map_kernel(matrix, src.invariant_factors, dst.invariant_factors, gens);
    check(k.order() * image().order() == src.order(), "kernel and image orders do not multiply up");
    return k;
  }
  Int image_order() const { return image().order(); }
  Int kernel_order() const { return kernel().order(); }
  bool surjective() const { return image_order() == dst.order(); }
  bool isomorphism() const { return surjective() && src.order() == dst.order(); }
};

inline GModule module_for_subgroup(const FiniteGroup& g, const GModule& m,
                                   const ActionLifts& lifts, const FiniteGroup& h) {
  GModule mh;
  mh.free_rank = m.free_rank;
  mh.torsion = m.torsion;
  for (auto& p : h.gens) {
    auto it = g.index.find(p);
    if (it == g.index.end()) throw input_error("subgroup generator missing from the group");
    mh.gen_action.push_back(lifts.at[it->second]);
  }
  return mh;
}

// Restriction on cohomology: read each source generator cocycle on tuples
// from the subgroup and express the result in the target generators.
inline CohomologyMap restriction_map(const FiniteGroup& g, const FiniteGroup& h,
                                     const GModule& m, int n,
                                     const CohomologyResult* src = nullptr,
                                     const CohomologyResult* dst = nullptr) {
  ActionLifts lifts = action_lifts(g, m);
  std::vector<int> hids = subgroup_element_ids(g, h);
  GModule mh = module_for_subgroup(g, m, lifts, h);
  CohomologyResult s_own, d_own;
  if (!src) {
    s_own = cohomology(g, m, n);
    src = &s_own;
  }
  if (!dst) {
    d_own = cohomology(h, mh, n);
    dst = &d_own;
  }
  check(src->has_classes && dst->has_classes, "restriction needs stored generators");
  ActionLifts hl = action_lifts(h, mh);
  gdetail::Cells hc(h, n), gc(g, n);
  int k = m.dim();
  MatZ mat((int)dst->gens.size(), (int)src->gens.size());
  std::vector<int> tg(n);
  for (int gi = 0; gi < (int)src->gens.size(); ++gi) {
    std::vector<Int> w(hc.count * k, 0);
    for (long long c = 0; c < hc.count; ++c) {
      auto t = hc.unrank(c);
      for (int i = 0; i < n; ++i) tg[i] = hids[t[i]];
      long long cg = gc.rank(tg);
      for (int j = 0; j < k; ++j) w[c * k + j] = src->gens[gi][cg * k + j];
    }
    auto dw = apply_bar_differential(h, mh, hl, n, w);
    for (auto& x : dw) check(x == 0, "restricted cochain fails the cocycle identity");
    auto coords = express_class(*dst, w);
    for (int i = 0; i < (int)coords.size(); ++i)
      if (coords[i] != 0) mat.set(i, gi, coords[i]);
  }
  return {src->group, dst->group, mat};
}

// Inflation along a quotient projection: pull back each quotient cocycle,
// sending tuples that project onto the identity to zero.
inline CohomologyMap inflation_map(const FiniteGroup& g, const QuotientData& qd,
                                   const GModule& mq, int n,
                                   const CohomologyResult* src = nullptr,
                                   const CohomologyResult* dst = nullptr) {
  const FiniteGroup& q = qd.quotient;
  ActionLifts ql = action_lifts(q, mq);
  GModule mg;
  mg.free_rank = mq.free_rank;
  mg.torsion = mq.torsion;
  for (auto& p : g.gens) mg.gen_action.push_back(ql.at[qd.proj[g.index.at(p)]]);
  CohomologyResult s_own, d_own;
  if (!src) {
    s_own = cohomology(q, mq, n);
    src = &s_own;
  }
  if (!dst) {
    d_own = cohomology(g, mg, n);
    dst = &d_own;
  }
  check(src->has_classes && dst->has_classes, "inflation needs stored generators");
  ActionLifts gl = action_lifts(g, mg);
  gdetail::Cells gc(g, n), qc(q, n);
  int k = mq.dim();
  MatZ mat((int)dst->gens.size(), (int)src->gens.size());
  std::vector<int> tq(n);
  for (int gi = 0; gi < (int)src->gens.size(); ++gi) {
    std::vector<Int> w(gc.count * k, 0);
    for (long long c = 0; c < gc.count; ++c) {
      auto t = gc.unrank(c);
      bool degenerate = false;
      for (int i = 0; i < n; ++i) {
        tq[i] = qd.proj[t[i]];
        if (tq[i] == 0) degenerate = true;
      }
      if (degenerate) continue;
      long long cq = qc.rank(tq);
      for (int j = 0; j < k; ++j) w[c * k + j] = src->gens[gi][cq * k + j];
    }
    auto dw = apply_bar_differential(g, mg, gl, n, w);
    for (auto& x : dw) check(x == 0, "inflated cochain fails the cocycle identity");
    auto coords = express_class(*dst, w);
    for (int i = 0; i < (int)coords.size(); ++i)
      if (coords[i] != 0) mat.set(i, gi, coords[i]);
  }
  return {src->group, dst->group, mat};
}

// --- duals of finite modules ---

inline Int mod_inverse(Int a, const Int& mod) {
  check(mod > 1, "modulus must exceed 1");
  a %= mod;
  if (a < 0) a += mod;
  Int r0 = a, r1 = mod, s0 = 1, s1 = 0;
  while (r1 != 0) {
    Int quo = r0 / r1;
    r0 -= quo * r1;
    std::swap(r0, r1);
    s0 -= quo * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw input_error("value is not invertible modulo " + mod.str());
  return ((s0 % mod) + mod) % mod;
}

inline Int determinant_small(const MatZ& a) {
  check(a.nrows == a.ncols, "determinant of a non-square matrix");
  check(a.nrows <= 8, "determinant helper is sized for small matrices");
  std::function<Int(int, const std::vector<int>&)> go =
      [&](int r, const std::vector<int>& cs) -> Int {
    if (cs.empty()) return 1;
    Int acc = 0;
    int sgn = 1;
    for (size_t ci = 0; ci < cs.size(); ++ci, sgn = -sgn) {
      Int v = a.get(r, cs[ci]);
      if (v == 0) continue;
      std::vector<int> rest;
      rest.reserve(cs.size() - 1);
      for (size_t x = 0; x < cs.size(); ++x)
        if (x != ci) rest.push_back(cs[x]);
      acc += sgn * v * go(r + 1, rest);
    }
    return acc;
  };
  std::vector<int> cols(a.ncols);
  for (int i = 0; i < a.ncols; ++i) cols[i] = i;
  return go(0, cols);
}

inline MatZ adjugate_small(const MatZ& a) {
  int n = a.nrows;
  MatZ out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MatZ minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          Int v = a.get(r, c);
          if (v != 0) minor.set(rr, cc, v);
          ++cc;
        }
        ++rr;
      }
      Int d = determinant_small(minor);
      out.set(j, i, (i + j) % 2 ? -d : d);
    }
  return out;
}

inline MatZ inverse_mod(const MatZ& a, const Int& mod) {
  Int det = determinant_small(a);
  Int dinv = mod_inverse(det, mod);
  MatZ adj = adjugate_small(a);
  MatZ out(a.nrows, a.ncols);
  for (int i = 0; i < a.nrows; ++i)
    for (auto& [j, v] : adj.rows[i]) out.set(i, j, ((v * dinv) % mod + mod) % mod);
  MatZ prod = a.mul(out);
  for (int i = 0; i < a.nrows; ++i) prod.add_to(i, i, -1);
  for (int i = 0; i < a.nrows; ++i)
    for (auto& [j, v] : prod.rows[i]) {
      (void)j;
      check(v % mod == 0, "modular inverse verification failed");
    }
  return out;
}

// The character dual of a finite module: generator matrices act on the dual
// coordinates through the inverse, rescaled between the coordinate factors.
inline GModule dual_module(const GModule& m) {
  if (m.free_rank != 0) throw input_error("character dual needs a finite coefficient module");
  int k = m.dim();
  if (k > 8) throw input_error("character dual helper is sized for small modules");
  Int lcm = 1;
  for (auto& d : m.torsion) lcm = ilcm(lcm, d);
  GModule out;
  out.torsion = m.torsion;
  for (auto& a : m.gen_action) {
    MatZ ainv = inverse_mod(a, lcm);
    MatZ b(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        Int num = m.torsion[i] * ainv.get(j, i);
        check(num % m.torsion[j] == 0, "dual action failed to descend");
        Int v = (num / m.torsion[j]) % m.torsion[i];
        if (v < 0) v += m.torsion[i];
        if (v != 0) b.set(i, j, v);
      }
    out.gen_action.push_back(b);
  }
  return out;
}

// --- structural reports ---

struct ProductFormulaReport {
  AbelianGroupStructure left, right, product;
  std::vector<Int> left_ab, right_ab;
  Int hom_order = 1;
  Int predicted = 1;
  Int computed = 1;
  bool consistent = false;
};

// |M(A x B)| = |M(A)| |M(B)| |Hom(A_ab, B_ab)|, both sides computed
// independently: the right side from the factor multipliers and the
// abelianizations, the left from the multiplier of the product itself.
inline ProductFormulaReport product_formula_check(const FiniteGroup& a, const FiniteGroup& b) {
  ProductFormulaReport r;
  r.left = schur_multiplier(a);
  r.right = schur_multiplier(b);
  r.product = schur_multiplier(direct_product(a, b));
  r.left_ab = abelianization_invariants(a);
  r.right_ab = abelianization_invariants(b);
  for (auto& x : r.left_ab)
    for (auto& y : r.right_ab) r.hom_order *= igcd(x, y);
  r.predicted = r.left.order() * r.right.order() * r.hom_order;
  r.computed = r.product.order();
  r.consistent = r.predicted == r.computed;
  return r;
}

struct SemidirectData {
  FiniteGroup group;
  FiniteGroup translations;
  FiniteGroup complement;
};

// The semidirect product of a finite abelian translation part (a torsion
// module over the acting group) with the acting group, realized on the
// disjoint union of the module points and the acting group's own domain.
inline SemidirectData semidirect_product(const FiniteGroup& gamma, const GModule& nmod) {
  if (nmod.free_rank != 0) throw input_error("translation part must be a finite module");
  validate_module(gamma, nmod);
  int k = nmod.dim();
  long long npts = 1;
  std::vector<long long> rad(k);
  for (int i = 0; i < k; ++i) {
    rad[i] = nmod.torsion[i].convert_to<long long>();
    npts *= rad[i];
  }
  if (npts > 64) throw input_error("translation part larger than 64 points");
  auto decode = [&](long long pt) {
    std::vector<long long> x(k);
    for (int i = k - 1; i >= 0; --i) {
      x[i] = pt % rad[i];
      pt /= rad[i];
    }
    return x;
  };
  auto encode = [&](const std::vector<long long>& x) {
    long long pt = 0;
    for (int i = 0; i < k; ++i) pt = pt * rad[i] + x[i];
    return pt;
  };
  int deg = (int)npts + gamma.degree;
  std::vector<Perm> tgens, cgens, all;
  for (int i = 0; i < k; ++i) {
    Perm pm = perm_identity(deg);
    for (long long pt = 0; pt < npts; ++pt) {
      auto x = decode(pt);
      x[i] = (x[i] + 1) % rad[i];
      pm[(int)pt] = (int)encode(x);
    }
    tgens.push_back(pm);
  }
  for (int j = 0; j < (int)gamma.gens.size(); ++j) {
    Perm pm = perm_identity(deg);
    const MatZ& a = nmod.gen_action[j];
    for (long long pt = 0; pt < npts; ++pt) {
      auto x = decode(pt);
      std::vector<long long> y(k);
      for (int i = 0; i < k; ++i) {
        Int acc = 0;
        for (auto& [l, v] : a.rows[i]) acc += v * x[l];
        acc %= nmod.torsion[i];
        if (acc < 0) acc += nmod.torsion[i];
        y[i] = acc.convert_to<long long>();
      }
      pm[(int)pt] = (int)encode(y);
    }
    for (int i = 0; i < gamma.degree; ++i) pm[(int)npts + i] = (int)npts + gamma.gens[j][i];
    cgens.push_back(pm);
  }
  all = tgens;
  all.insert(all.end(), cgens.begin(), cgens.end());
  SemidirectData sd;
  long long order = npts * gamma.size();
  sd.group = group_from_generators(deg, all, (int)order + 1);
  check(sd.group.size() == order, "semidirect product order mismatch");
  sd.translations = group_from_generators(deg, tgens, (int)npts + 1);
  check(sd.translations.size() == npts, "translation subgroup order mismatch");
  sd.complement = group_from_generators(deg, cgens, gamma.size() + 1);
  check(sd.complement.size() == gamma.size(), "complement order mismatch");
  return sd;
}

struct SemidirectReport {
  AbelianGroupStructure whole;        // multiplier of the semidirect product
  AbelianGroupStructure acting;       // multiplier of the acting group
  AbelianGroupStructure kernel_part;  // kernel of the restriction to the acting group
  Int h1_order = 1, h2_order = 1;     // degree 1 and 2 with dual coefficients
  Int restriction_kernel = 1;
  Int image_in_invariants = 1;
  Int invariants_order = 1;
  bool order_identity = false;   // |kernel| = |H^1| * |image|
  bool cokernel_bounded = false; // (|invariants| / |image|) divides |H^2|
};

// Order bookkeeping for the four-term exact sequence attached to a semidirect
// product: the kernel of the restriction to the acting group extends the
// degree-1 dual cohomology by a subgroup of the conjugation invariants of the
// translation multiplier, and the quotient of the invariants embeds into the
// degree-2 dual cohomology.  Every term is computed independently.
inline SemidirectReport semidirect_sequence_check(const FiniteGroup& gamma, const GModule& nmod) {
  SemidirectData sd = semidirect_product(gamma, nmod);
  const FiniteGroup& g = sd.group;
  GModule triv = trivial_coefficient_module((int)g.gens.size());
  ActionLifts lifts = action_lifts(g, triv);
  auto hg = cohomology(g, triv, 3);
  GModule trivn = module_for_subgroup(g, triv, lifts, sd.translations);
  auto hn = cohomology(sd.translations, trivn, 3);
  auto res_c = restriction_map(g, sd.complement, triv, 3, &hg, nullptr);
  auto res_n = restriction_map(g, sd.translations, triv, 3, &hg, &hn);

  SemidirectReport r;
  r.whole = hg.group;
  r.acting = res_c.dst;
  MatZ kgens;
  r.kernel_part = res_c.kernel(&kgens);
  r.restriction_kernel = r.kernel_part.order();

  GModule dual = dual_module(nmod);
  r.h1_order = cohomology(gamma, dual, 1).group.order();
  r.h2_order = cohomology(gamma, dual, 2).group.order();

  // conjugation action of the complement on the translation multiplier
  int tn = (int)hn.group.invariant_factors.size();
  int ng = (int)sd.complement.gens.size();
  std::vector<int> t_to_g = subgroup_element_ids(g, sd.translations);
  ActionLifts ln = action_lifts(sd.translations, trivn);
  gdetail::Cells nc(sd.translations, 3);
  MatZ stacked(tn * ng, tn);
  std::vector<Int> stacked_facs;
  for (int cj = 0; cj < ng; ++cj) {
    int cg = g.index.at(sd.complement.gens[cj]);
    int cgi = g.inv[cg];
    std::vector<int> sigma(sd.translations.size());
    for (int e = 0; e < sd.translations.size(); ++e) {
      int img = g.mul[g.mul[cgi][t_to_g[e]]][cg];
      sigma[e] = sd.translations.index.at(g.elems[img]);
    }
    for (int gi = 0; gi < tn; ++gi) {
      std::vector<Int> w(nc.count, 0);
      std::vector<int> ts(3);
      for (long long c = 0; c < nc.count; ++c) {
        auto t = nc.unrank(c);
        for (int i = 0; i < 3; ++i) ts[i] = sigma[t[i]];
        w[c] = hn.gens[gi][nc.rank(ts)];
      }
      auto dw = apply_bar_differential(sd.translations, trivn, ln, 3, w);
      for (auto& x : dw) check(x == 0, "conjugated cochain fails the cocycle identity");
      auto coords = express_class(hn, w);
      for (int i = 0; i < tn; ++i) {
        Int v = coords[i] - (i == gi ? 1 : 0);
        if (v != 0) stacked.set(cj * tn + i, gi, v);
      }
    }
    for (auto& f : hn.group.invariant_factors) stacked_facs.push_back(f);
  }
  r.invariants_order = finite_map_kernel(stacked, hn.group.invariant_factors, stacked_facs).order();

  MatZ img = res_n.matrix.mul(kgens);
  check(congruent_zero_rows(
            GModule{0, stacked_facs.empty() ? std::vector<Int>{2} : stacked_facs, {}},
            stacked_facs.empty() ? MatZ(1, std::max(img.ncols, 1)) : stacked.mul(img)),
        "restricted kernel classes are not conjugation invariant");
  r.image_in_invariants = span_in_finite(img, hn.group.invariant_factors).order();

  r.order_identity = r.restriction_kernel == r.h1_order * r.image_in_invariants;
  check(r.invariants_order % r.image_in_invariants == 0,
        "image order must divide the invariants order");
  r.cokernel_bounded = r.h2_order % (r.invariants_order / r.image_in_invariants) == 0;
  return r;
}

struct CentralReport {
  AbelianGroupStructure whole;                // multiplier of the group
  AbelianGroupStructure quotient_multiplier;  // multiplier of the central quotient
  Int inflation_kernel = 1;
  Int commutator_center = 1;  // |[G,G] meet Z|
  bool order_identity = false;
};

// Order bookkeeping for the inflation along a central quotient: its kernel is
// the character dual of the intersection of the commutator subgroup with the
// central subgroup, so the two orders agree.
inline CentralReport central_sequence_check(const FiniteGroup& g, const std::vector<int>& zseed) {
  auto zids = subgroup_closure(g, zseed);
  std::vector<char> central(g.size(), 0);
  for (int e : center_ids(g)) central[e] = 1;
  for (int e : zids)
    if (!central[e]) throw input_error("subgroup is not central");
  QuotientData qd = quotient_by_normal(g, zids);
  GModule trivq = trivial_coefficient_module((int)qd.quotient.gens.size());
  GModule trivg = trivial_coefficient_module((int)g.gens.size());
  auto hq = cohomology(qd.quotient, trivq, 3);
  auto hgr = cohomology(g, trivg, 3);
  auto infl = inflation_map(g, qd, trivq, 3, &hq, &hgr);
  CentralReport r;
  r.whole = hgr.group;
  r.quotient_multiplier = hq.group;
  r.inflation_kernel = infl.kernel_order();
  std::vector<char> inz(g.size(), 0);
  for (int e : zids) inz[e] = 1;
  Int cc = 0;
  for (int e : commutator_subgroup(g))
    if (inz[e]) ++cc;
  r.commutator_center = cc;
  r.order_identity = r.inflation_kernel == r.commutator_center;
  return r;
}

// --- consolidated case survey ---

struct SurveyFinding {
  std::string label;
  std::string computed;
  std::string stated;
  bool matches_stated = true;
  bool above_cap = false;
  std::string note;
};

// Every finite-group case claim within the desk caps, recomputed and compared
// against its stated value.  Rows that a computation contradicts stay in the
// report with matches_stated = false and a note; claims above the caps are
// listed as such rather than substituted.
inline std::vector<SurveyFinding> case_survey_report() {
  std::vector<SurveyFinding> rows;
  auto push = [&](const std::string& label, const std::string& computed,
                  const std::string& stated, const std::string& note = "") {
    rows.push_back({label, computed, stated, computed == stated, false, note});
  };

  FiniteGroup s4 = symmetric_group(4);
  FiniteGroup a4 = alternating_group_4();
  FiniteGroup vn = klein_four_group();
  FiniteGroup vs = klein_nonnormal_in_s4();
  auto hs4 = schur_multiplier_result(s4);
  auto ha4 = schur_multiplier_result(a4);
  auto hvn = schur_multiplier_result(vn);
  auto hvs = schur_multiplier_result(vs);
  push("multiplier of S4", hs4.group.str(), "Z/2");
  push("multiplier of A4", ha4.group.str(), "Z/2");
  push("multiplier of the Klein four-group", hvn.group.str(), "Z/2");

  GModule t2 = trivial_coefficient_module(2);
  auto r_a4 = restriction_map(s4, a4, t2, 3, &hs4, &ha4);
  push("restriction from S4 to A4", r_a4.isomorphism() ? "isomorphism" : "not an isomorphism",
       "isomorphism");
  auto r_vs = restriction_map(s4, vs, t2, 3, &hs4, &hvs);
  push("restriction from S4 to a non-normal Klein subgroup",
       r_vs.isomorphism() ? "isomorphism" : "not an isomorphism", "isomorphism");
  auto r_vn = restriction_map(s4, vn, t2, 3, &hs4, &hvn);
  push("restriction from S4 to the normal Klein subgroup",
       r_vn.surjective() ? "surjective" : "not surjective", "surjective");

  bool cyclic_trivial = true;
  for (int n = 1; n <= 12; ++n)
    cyclic_trivial = cyclic_trivial && schur_multiplier(cyclic_group(n)).is_trivial();
  push("multipliers of the cyclic groups up to order 12",
       cyclic_trivial ? "all trivial" : "nontrivial found", "all trivial");

  FiniteGroup c3 = group_from_generators(3, {perm_from_cycles(3, {{0, 1, 2}})});
  FiniteGroup c2 = group_from_generators(3, {perm_from_cycles(3, {{0, 1}})});
  push("degree-1 cohomology of the rotation on the quotient lattice",
       cohomology(c3, weight_lattice_module(c3), 1).group.str(), "Z/3");
  push("degree-1 cohomology of the reflection on the quotient lattice",
       cohomology(c2, weight_lattice_module(c2), 1).group.str(), "Z/2",
       "the lattice restricted to a reflection is free of rank one over its group ring, so "
       "its degree-1 cohomology vanishes; the stated value belongs to the split "
       "trivial-plus-sign model, which the next row checks");
  GModule split;
  split.free_rank = 2;
  {
    MatZ d(2, 2);
    d.set(0, 0, 1);
    d.set(1, 1, -1);
    split.gen_action.push_back(d);
  }
  push("degree-1 cohomology of the reflection on the split trivial-plus-sign model",
       cohomology(c2, split, 1).group.str(), "Z/2");

  auto above = [&](const std::string& label, const FiniteGroup& g) {
    try {
      schur_multiplier(g);
      rows.push_back({label, "computed", "", false, false, "expected the cap to reject this"});
    } catch (const input_error& e) {
      rows.push_back({label, "", "", true, true, e.what()});
    }
  };
  above("multiplier of S5", symmetric_group(5));
  above("multiplier of A5", group_from_generators(5, {perm_from_cycles(5, {{0, 1, 2}}),
                                                      perm_from_cycles(5, {{0, 1, 2, 3, 4}})}));
  return rows;
}

}  // namespace exhom
