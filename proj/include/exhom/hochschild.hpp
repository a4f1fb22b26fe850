#pragma once

#include <memory>

#include "exhom/complex.hpp"
#include "exhom/resolution.hpp"

namespace exhom {

// ---------------------------------------------------------------------------
// Cyclic bar complex of a bimodule with a twisted wrap-around face.
//
// The degree -n term has basis tuples (b_1, ..., b_n, u): n algebra legs and
// one module leg.  Faces: the wrap-around face feeds the first algebra leg
// through the twist into the module from the left, interior faces merge
// adjacent algebra legs with the product taken right-to-left, and the last
// face acts on the module from the right.  The alternating sum of the faces
// squares to zero (checked on construction).

struct CyclicBarComplex {
  ComplexQ complex;                   // degrees [-depth, 0]
  std::vector<std::vector<int>> wts;  // wts[k]: total weight per tuple of term lo+k
  int depth = 0;
};

namespace detail {

// flat index of (b_1, ..., b_n, u) with all b_k in [0, D) and u in [0, M)
inline long long bar_tuple_index(const std::vector<int>& legs, int u, int D, int M) {
  long long ix = 0;
  for (int b : legs) ix = ix * D + b;
  return ix * M + u;
}

}  // namespace detail

inline CyclicBarComplex cyclic_bar(const GradedAlgebra& a, const Bimodule& m,
                                   const AlgebraMorphism& f, int depth) {
  check(m.A == &a, "bimodule over a different algebra");
  check(f.A == &a, "twist on a different algebra");
  check(depth >= 0, "cyclic bar depth must be nonnegative");
  int D = a.dim(), M = m.dim();

  // twisted left action: u -> f(b) . u
  std::vector<MatQ> wrap;
  for (int b = 0; b < D; ++b) {
    MatQ w(M, M);
    for (int z = 0; z < D; ++z) {
      Rat c = f.m.get(z, b);
      if (c != 0) w = w.add(m.left[z].scaled(c));
    }
    wrap.push_back(std::move(w));
  }
  // column views of the module actions, indexed [b][u] -> list of (u', coeff)
  auto columns = [&](const std::vector<MatQ>& mats) {
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> cols(
        D, std::vector<std::vector<std::pair<int, Rat>>>(M));
    for (int b = 0; b < D; ++b)
      for (int r = 0; r < M; ++r)
        for (auto& [c, v] : mats[b].rows[r]) cols[b][c].push_back({r, v});
    return cols;
  };
  auto wrap_cols = columns(wrap);
  auto right_cols = columns(m.right);

  CyclicBarComplex cb;
  cb.depth = depth;
  cb.complex.lo = -depth;
  long long sz = M;
  std::vector<long long> sizes(depth + 1);  // sizes[n] = dim of term(-n)
  for (int n = 0; n <= depth; ++n) {
    sizes[n] = sz;
    sz *= D;
  }
  for (int k = 0; k <= depth; ++k) cb.complex.dims.push_back(sizes[depth - k]);

  cb.wts.assign(depth + 1, {});
  for (int n = 0; n <= depth; ++n) {
    auto& w = cb.wts[depth - n];
    w.assign(sizes[n], 0);
    std::vector<int> legs(n, 0);
    for (long long ix = 0; ix < sizes[n]; ++ix) {
      long long q = ix;
      int u = (int)(q % M);
      q /= M;
      int total = m.wt[u];
      for (int k2 = n - 1; k2 >= 0; --k2) {
        legs[k2] = (int)(q % D);
        q /= D;
      }
      for (int b : legs) total += a.basis[b].weight;
      w[ix] = total;
    }
  }

  for (int n = depth; n >= 1; --n) {
    MatQ d(sizes[n - 1], sizes[n]);
    std::vector<int> legs(n, 0);
    for (long long ix = 0; ix < sizes[n]; ++ix) {
      long long q = ix;
      int u = (int)(q % M);
      q /= M;
      for (int k2 = n - 1; k2 >= 0; --k2) {
        legs[k2] = (int)(q % D);
        q /= D;
      }
      // wrap-around face, sign +1: (b_2, ..., b_n, f(b_1) . u)
      {
        std::vector<int> rest(legs.begin() + 1, legs.end());
        for (auto& [u2, c] : wrap_cols[legs[0]][u])
          d.add_to(detail::bar_tuple_index(rest, u2, D, M), ix, c);
      }
      // interior faces, sign (-1)^i: merge (b_i, b_{i+1}) into b_{i+1} b_i
      for (int i = 1; i <= n - 1; ++i) {
        Rat sign((i % 2 == 0) ? 1 : -1);
        std::vector<int> rest;
        rest.reserve(n - 1);
        for (int k2 = 0; k2 < i - 1; ++k2) rest.push_back(legs[k2]);
        rest.push_back(0);  // slot for the product
        for (int k2 = i + 1; k2 < n; ++k2) rest.push_back(legs[k2]);
        for (auto& [z, c] : a.mul_basis(legs[i], legs[i - 1])) {
          rest[i - 1] = z;
          d.add_to(detail::bar_tuple_index(rest, u, D, M), ix, sign * c);
        }
      }
      // last face, sign (-1)^n: (b_1, ..., b_{n-1}, u . b_n)
      {
        Rat sign((n % 2 == 0) ? 1 : -1);
        std::vector<int> rest(legs.begin(), legs.end() - 1);
        for (auto& [u2, c] : right_cols[legs[n - 1]][u])
          d.add_to(detail::bar_tuple_index(rest, u2, D, M), ix, sign * c);
      }
    }
    cb.complex.diff.push_back(std::move(d));
  }
  cb.complex.validate();
  cb.complex.check_complex();
  return cb;
}

// ---------------------------------------------------------------------------
// Twisted coefficients as a left module over the enveloping algebra: the env
// basis pair (x|y) acts by u -> f(y) . u . x.  This is the left structure
// matching the right env modules used for resolutions (m . (x|y) = x . m . y),
// with the twist applied on the algebra-leg that lands on the left.

inline std::vector<MatQ> twisted_env_coefficients(const EnvAlgebra& env, const Bimodule& m,
                                                  const AlgebraMorphism& f) {
  Bimodule t = m.twist_left(f);
  std::vector<MatQ> act;
  for (int u = 0; u < env.alg.dim(); ++u) {
    auto [x, y] = env.pair_of[u];
    act.push_back(t.left[y].mul(m.right[x]));
  }
  // left module axiom: act(uv) = act(u) act(v)
  int ed = env.alg.dim();
  for (int u = 0; u < ed; ++u)
    for (int v = 0; v < ed; ++v) {
      MatQ lhs(m.dim(), m.dim());
      for (auto& [z, c] : env.alg.mul_basis(u, v)) lhs = lhs.add(act[z].scaled(c));
      check(lhs.equal(act[u].mul(act[v])), "twisted coefficients violate the left module axiom");
    }
  return act;
}

// ---------------------------------------------------------------------------
// Minimal resolution of the diagonal bimodule with bookkeeping: the index of
// the last nonzero term, whether the syzygies die within the cap, and
// structural checks (exactness at every visible spot, differentials with all
// generator images inside the radical).

struct DiagonalResolutionReport {
  std::shared_ptr<EnvAlgebra> env;
  MinimalResolution res;
  bool finished = false;
  int length = 0;        // last degree carrying a nonzero term
  std::string warning;   // set when the cap cuts the resolution short
};

inline DiagonalResolutionReport resolve_diagonal_bimodule(const GradedAlgebra& a, int cap) {
  check(cap >= 0, "resolution cap must be nonnegative");
  DiagonalResolutionReport r;
  r.env = std::make_shared<EnvAlgebra>(enveloping_algebra(a));
  r.res = minimal_resolution(regular_env_module(a, *r.env), cap);

  r.length = 0;
  for (int d = 0; d < (int)r.res.terms.size(); ++d)
    if (r.res.terms[d].mod.dim() > 0) r.length = d;
  // the syzygy entering degree L+1 is the kernel of the last computed map
  int L = (int)r.res.terms.size() - 1;
  if (r.res.terms[L].mod.dim() == 0) {
    r.finished = true;
  } else {
    long long next_kernel =
        r.res.terms[L].mod.dim() -
        rank_field(L == 0 ? r.res.aug : r.res.maps[L - 1]);
    r.finished = (next_kernel == 0);
  }
  if (!r.finished)
    r.warning = "syzygies still nonzero after degree " + std::to_string(r.length) +
                "; resolution truncated at the cap";

  // exactness at every spot where both neighbours are visible
  if (!r.res.maps.empty())
    check(rank_field(r.res.maps[0]) ==
              r.res.terms[0].mod.dim() - rank_field(r.res.aug),
          "resolution not exact against the augmentation");
  for (size_t d = 1; d < r.res.maps.size(); ++d)
    check(rank_field(r.res.maps[d]) ==
              r.res.terms[d].mod.dim() - rank_field(r.res.maps[d - 1]),
          "resolution not exact at degree " + std::to_string(d));
  // minimality: generator images live in the radical
  for (size_t d = 0; d < r.res.maps.size(); ++d) {
    const FreeModule& src = r.res.terms[d + 1];
    const FreeModule& dst = r.res.terms[d];
    for (int g = 0; g < (int)src.gens.size(); ++g) {
      int col = src.gen_unit(g);
      for (int row = 0; row < dst.mod.dim(); ++row)
        if (r.res.maps[d].get(row, col) != 0)
          check(r.env->alg.basis[dst.basis_pair[row].second].weight > 0,
                "resolution map has a coefficient outside the radical");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Homology tables.  The table is computed from a minimal resolution of the
// diagonal tensored over the enveloping algebra with the twisted coefficients,
// then cross-checked degree by degree and weight by weight against the cyclic
// bar complex, and in degree zero against the plain coinvariant quotient
// M / span{ f(b).u - u.b }.

struct HochschildTable {
  int depth = 0;
  std::vector<long long> dims;                      // dims[n] = dim H^{-n}
  std::vector<std::map<int, long long>> by_weight;  // by_weight[n]: weight -> dim
};

namespace detail {

// rank of the column span of a list of sparse columns (each a map row->value)
inline long long span_rank(const std::vector<std::map<int, Rat>>& cols, int height) {
  MatQ m(height, (int)cols.size());
  for (int c = 0; c < (int)cols.size(); ++c)
    for (auto& [r, v] : cols[c]) m.set(r, c, v);
  return rank_field(m);
}

}  // namespace detail

inline HochschildTable hochschild_homology(const GradedAlgebra& a, const Bimodule& m,
                                           const AlgebraMorphism& f, int depth) {
  check(m.A == &a, "bimodule over a different algebra");
  check(f.A == &a, "twist on a different algebra");
  check(depth >= 0, "depth must be nonnegative");
  EnvAlgebra env = enveloping_algebra(a);
  MinimalResolution res = minimal_resolution(regular_env_module(a, env), depth + 1);
  std::vector<MatQ> coeff = twisted_env_coefficients(env, m, f);
  int M = m.dim();

  // plain tensor spaces V_d = P_d (x) M with the relation columns of the
  // tensor product over the enveloping algebra:  (p.u)(x)n - p(x)(u.n)
  int top = (int)res.terms.size() - 1;
  std::vector<std::vector<int>> vwt(top + 1);  // weight per (p, n) pair
  for (int d = 0; d <= top; ++d) {
    const FreeModule& P = res.terms[d];
    for (int p = 0; p < P.mod.dim(); ++p)
      for (int n = 0; n < M; ++n) vwt[d].push_back(P.mod.wt[p] + m.wt[n]);
  }
  // relation columns per degree, grouped by weight
  std::vector<std::map<int, std::vector<std::map<int, Rat>>>> rel(top + 1);
  for (int d = 0; d <= top; ++d) {
    const FreeModule& P = res.terms[d];
    int ed = env.alg.dim();
    for (int p = 0; p < P.mod.dim(); ++p)
      for (int u = 0; u < ed; ++u) {
        int w = P.mod.wt[p] + env.alg.basis[u].weight;
        for (int n = 0; n < M; ++n) {
          std::map<int, Rat> col;
          for (int p2 = 0; p2 < P.mod.dim(); ++p2) {
            Rat c = P.mod.act[u].get(p2, p);
            if (c != 0) col[p2 * M + n] += c;
          }
          for (int n2 = 0; n2 < M; ++n2) {
            Rat c = coeff[u].get(n2, n);
            if (c != 0) col[p * M + n2] -= c;
          }
          for (auto it = col.begin(); it != col.end();)
            it = (it->second == 0) ? col.erase(it) : std::next(it);
          if (col.empty()) continue;
          for (auto& [r, v] : col) {
            (void)v;
            check(vwt[d][r] == w + m.wt[n], "tensor relation not homogeneous");
          }
          rel[d][w + m.wt[n]].push_back(std::move(col));
        }
      }
  }
  // induced differentials D_d = maps[d] (x) id, split by weight on the fly
  auto tensored_cols = [&](int d, int w) {
    std::vector<std::map<int, Rat>> cols;
    if (d < 1 || d > (int)res.maps.size()) return cols;
    const MatQ& dm = res.maps[d - 1];
    for (int c = 0; c < (int)vwt[d].size(); ++c) {
      if (vwt[d][c] != w) continue;
      int p = c / M, n = c % M;
      std::map<int, Rat> col;
      for (int p2 = 0; p2 < dm.nrows; ++p2) {
        Rat v = dm.get(p2, p);
        if (v != 0) {
          check(vwt[d - 1][p2 * M + n] == w, "resolution map not graded");
          col[p2 * M + n] = v;
        }
      }
      cols.push_back(std::move(col));
    }
    return cols;
  };

  HochschildTable table;
  table.depth = depth;
  table.dims.assign(depth + 1, 0);
  table.by_weight.assign(depth + 1, {});
  for (int d = 0; d <= depth; ++d) {
    if (d > top) break;  // resolution ended, higher homology vanishes
    std::set<int> weights(vwt[d].begin(), vwt[d].end());
    int height = (int)vwt[d].size();
    int height_prev = (d >= 1) ? (int)vwt[d - 1].size() : 0;
    for (int w : weights) {
      long long vd = 0;
      for (int x : vwt[d])
        if (x == w) ++vd;
      // kernel of V_d -> V_{d-1}/R_{d-1}
      long long ker;
      if (d == 0) {
        ker = vd;
      } else {
        auto dcols = tensored_cols(d, w);
        auto prev = rel[d - 1].count(w) ? rel[d - 1][w] : std::vector<std::map<int, Rat>>{};
        long long rprev = detail::span_rank(prev, height_prev);
        std::vector<std::map<int, Rat>> joint = dcols;
        joint.insert(joint.end(), prev.begin(), prev.end());
        ker = vd - (detail::span_rank(joint, height_prev) - rprev);
      }
      // image of R_d + D_{d+1} V_{d+1}
      auto cur = rel[d].count(w) ? rel[d][w] : std::vector<std::map<int, Rat>>{};
      std::vector<std::map<int, Rat>> joint = cur;
      if (d + 1 <= top) {
        auto next = tensored_cols(d + 1, w);
        joint.insert(joint.end(), next.begin(), next.end());
      }
      long long h = ker - detail::span_rank(joint, height);
      if (h != 0) {
        table.by_weight[d][w] = h;
        table.dims[d] += h;
      }
    }
  }

  // cross-check against the cyclic bar complex in every visible degree
  CyclicBarComplex cb = cyclic_bar(a, m, f, depth + 1);
  auto bar_h = cohomology_by_weight(cb.complex, cb.wts);
  for (int n = 0; n <= depth; ++n)
    check(bar_h[depth + 1 - n] == table.by_weight[n],
          "resolution and bar homology disagree in degree " + std::to_string(-n));

  // independent degree-zero check: coinvariants of the twisted actions
  {
    std::vector<std::map<int, Rat>> cols;
    std::map<int, std::vector<std::map<int, Rat>>> cols_w;
    Bimodule t = m.twist_left(f);
    for (int b = 0; b < a.dim(); ++b) {
      MatQ d = t.left[b].sub(m.right[b]);
      for (int u = 0; u < M; ++u) {
        std::map<int, Rat> col;
        for (int r = 0; r < M; ++r) {
          Rat v = d.get(r, u);
          if (v != 0) col[r] = v;
        }
        if (col.empty()) continue;
        cols.push_back(col);
        cols_w[a.basis[b].weight + m.wt[u]].push_back(col);
      }
    }
    check(table.dims[0] == M - detail::span_rank(cols, M),
          "degree-zero homology disagrees with the coinvariant quotient");
    for (auto& [w, wcols] : cols_w) {
      long long mw = 0;
      for (int u = 0; u < M; ++u)
        if (m.wt[u] == w) ++mw;
      long long h = mw - detail::span_rank(wcols, M);
      long long expect = table.by_weight[0].count(w) ? table.by_weight[0].at(w) : 0;
      check(h == expect, "weight piece of the coinvariants disagrees");
    }
    // weights carrying module vectors but no relation columns
    for (int u = 0; u < M; ++u)
      if (!cols_w.count(m.wt[u])) {
        long long mw = 0;
        for (int u2 = 0; u2 < M; ++u2)
          if (m.wt[u2] == m.wt[u]) ++mw;
        long long expect =
            table.by_weight[0].count(m.wt[u]) ? table.by_weight[0].at(m.wt[u]) : 0;
        check(mw == expect, "weight piece of the coinvariants disagrees");
      }
  }
  return table;
}

// ---------------------------------------------------------------------------
// The regular right module (the algebra acting on itself from the right).

inline ModuleOver regular_right_module(const GradedAlgebra& a) {
  ModuleOver m;
  m.B = &a;
  for (auto& b : a.basis) {
    m.wt.push_back(b.weight);
    m.idem.push_back(b.source);
  }
  for (int b = 0; b < a.dim(); ++b) m.act.push_back(a.right_mult_matrix(b));
  return m;
}

// ---------------------------------------------------------------------------
// Trace class of an endomorphism of a projective right module, valued in the
// degree-zero homology A/[A,A].  The module is identified with its projective
// cover (projectivity makes the cover an isomorphism; anything else is
// rejected), the endomorphism becomes a matrix over the algebra on the free
// generators, and the class is the canonical form of its trace modulo the
// span of commutators.

struct TraceClass {
  std::vector<Rat> rep;  // canonical representative in the algebra basis
  long long h0_dim = 0;  // dim A/[A,A]
};

inline TraceClass hochschild_class(const GradedAlgebra& a, const ModuleOver& p,
                                   const MatQ& theta) {
  check(p.B == &a, "module over a different algebra");
  check(theta.nrows == p.dim() && theta.ncols == p.dim(), "endomorphism shape mismatch");
  for (int b = 0; b < a.dim(); ++b)
    if (!theta.mul(p.act[b]).equal(p.act[b].mul(theta)))
      throw input_error("endomorphism does not commute with the module action");

  Cover cover = projective_cover(p);
  KernelModule k = kernel_module(cover.p.mod, cover.to_m, p);
  if (k.mod.dim() != 0) throw input_error("module is not projective");
  check(cover.p.mod.dim() == p.dim(), "cover of a projective must be an isomorphism");

  // transport theta through the cover: theta_P = cover^{-1} theta cover
  MatQ img = theta.mul(cover.to_m);
  MatQ theta_p(p.dim(), p.dim());
  for (int c = 0; c < p.dim(); ++c) {
    std::vector<Rat> col(p.dim(), Rat(0));
    for (int r = 0; r < p.dim(); ++r) col[r] = img.get(r, c);
    auto sol = solve_field(cover.to_m, col);
    check(sol.has_value(), "cover failed to invert");
    for (int r = 0; r < p.dim(); ++r)
      if ((*sol)[r] != 0) theta_p.set(r, c, (*sol)[r]);
  }

  // trace: sum of the diagonal generator coefficients, read off pairs (g, b)
  std::vector<Rat> tr(a.dim(), Rat(0));
  for (int g = 0; g < (int)cover.p.gens.size(); ++g) {
    int col = cover.p.gen_unit(g);
    for (int row = 0; row < p.dim(); ++row) {
      Rat v = theta_p.get(row, col);
      if (v == 0) continue;
      auto [g2, b] = cover.p.basis_pair[row];
      if (g2 == g) tr[b] += v;
    }
  }

  // reduce modulo the span of commutators
  MatQ comm(a.dim() * a.dim(), a.dim());
  int rix = 0;
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < a.dim(); ++y) {
      for (auto& [z, c] : a.mul_basis(x, y)) comm.add_to(rix, z, c);
      for (auto& [z, c] : a.mul_basis(y, x)) comm.add_to(rix, z, -c);
      ++rix;
    }
  Rref<QQ> rr = rref(comm);
  TraceClass out;
  out.h0_dim = a.dim() - rr.rank();
  for (int i = 0; i < rr.rank(); ++i) {
    int pc = rr.pivot_cols[i];
    Rat c = tr[pc];
    if (c == 0) continue;
    for (auto& [j, v] : rr.m.rows[i]) tr[j] -= c * v;
  }
  out.rep = std::move(tr);
  return out;
}

}  // namespace exhom
