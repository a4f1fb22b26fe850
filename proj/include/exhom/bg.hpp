#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "exhom/group.hpp"
#include "exhom/hochschild.hpp"
#include "exhom/koszul.hpp"

namespace exhom {

// ---------------------------------------------------------------------------
// Group-equivariant trace complexes: the cyclic bar construction spread over a
// finite group with one function-space leg, fiberwise specialization to
// twisted bar complexes, invariant global sections, an insertion homotopy for
// central invariant elements, and a bounded model tensored down from the
// quadratic-dual resolution.

// Functions on the group with the delta-function basis and the conjugation
// action.  The evaluation coaction v -> sum_g delta_g (x) g^{-1} v reduces on
// this basis to the table below being a left action with the identity acting
// trivially; that is exactly the counit and coassociativity law pair.
struct FunctionsOnG {
  const FiniteGroup* group = nullptr;
  std::vector<std::vector<int>> conj;  // conj[g][h] = index of g h g^{-1}

  int dim() const { return group->size(); }
};

inline FunctionsOnG functions_on_group(const FiniteGroup& g) {
  FunctionsOnG f;
  f.group = &g;
  f.conj.assign(g.size(), std::vector<int>(g.size(), 0));
  for (int a = 0; a < g.size(); ++a)
    for (int h = 0; h < g.size(); ++h) f.conj[a][h] = g.mul[g.mul[a][h]][g.inv[a]];
  for (int h = 0; h < g.size(); ++h)
    check(f.conj[0][h] == h, "identity must conjugate trivially");
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      for (int h = 0; h < g.size(); ++h)
        check(f.conj[g.mul[a][b]][h] == f.conj[a][f.conj[b][h]],
              "conjugation is not a left action");
  return f;
}

// ---------------------------------------------------------------------------
// A finite group acting on a graded algebra and a compatible bimodule, with a
// fixed twisting automorphism commuting with every group element.  Actions are
// stored per element; the builder assembles them from per-generator data along
// the multiplication table and rejects data violating the group relations.

struct FiniteGroupAction {
  const FiniteGroup* group = nullptr;
  const GradedAlgebra* A = nullptr;
  const Bimodule* m = nullptr;
  std::vector<AlgebraMorphism> alg;  // alg[e]: automorphism for element e
  std::vector<MatQ> mod;             // mod[e]: module matrix for element e
  AlgebraMorphism twist;             // commutes with every alg[e]
};

inline FiniteGroupAction group_action(const FiniteGroup& g, const GradedAlgebra& a,
                                      const Bimodule& m,
                                      const std::vector<AlgebraMorphism>& alg_gens,
                                      const std::vector<MatQ>& mod_gens,
                                      const AlgebraMorphism& twist) {
  check(m.A == &a, "bimodule over a different algebra");
  if ((int)alg_gens.size() != (int)g.gens.size() ||
      (int)mod_gens.size() != (int)g.gens.size())
    throw input_error("need one algebra map and one module matrix per group generator");
  int M = m.dim();
  for (auto& f : alg_gens) {
    check(f.A == &a, "generator morphism on a different algebra");
    f.validate();
    if (!f.is_automorphism()) throw input_error("generator must act invertibly on the algebra");
  }
  for (auto& p : mod_gens) {
    if (p.nrows != M || p.ncols != M) throw input_error("module matrix shape mismatch");
    for (int r = 0; r < M; ++r)
      for (auto& [c, v] : p.rows[r]) {
        (void)v;
        if (m.wt[r] != m.wt[c]) throw input_error("module action must preserve the weight");
      }
    if (rank_field(p) != M) throw input_error("module matrix must be invertible");
  }
  check(twist.A == &a, "twist on a different algebra");
  twist.validate();
  if (!twist.is_automorphism()) throw input_error("twist must be invertible");

  FiniteGroupAction act;
  act.group = &g;
  act.A = &a;
  act.m = &m;
  act.twist = twist;
  act.alg.assign(g.size(), AlgebraMorphism::identity(a));
  act.mod.assign(g.size(), MatQ::identity(M));
  for (int e = 1; e < g.size(); ++e) {
    auto [p, k] = g.word[e];
    act.alg[e] = act.alg[p].compose(alg_gens[k]);
    act.mod[e] = act.mod[p].mul(mod_gens[k]);
  }
  // relation grid: composing any element with any generator must land on the
  // stored data for the product element
  std::vector<int> gidx;
  for (auto& gen : g.gens) gidx.push_back(g.index.at(gen));
  for (int e = 0; e < g.size(); ++e)
    for (size_t k = 0; k < gidx.size(); ++k) {
      int ce = g.mul[e][gidx[k]];
      if (!act.alg[ce].m.equal(act.alg[e].m.mul(alg_gens[k].m)))
        throw input_error("algebra actions violate the group relations");
      if (!act.mod[ce].equal(act.mod[e].mul(mod_gens[k])))
        throw input_error("module actions violate the group relations");
    }
  // per element: the module matrix intertwines both actions through alg[e]
  for (int e = 0; e < g.size(); ++e)
    for (int b = 0; b < a.dim(); ++b) {
      MatQ lt(M, M), rt(M, M);
      for (int z = 0; z < a.dim(); ++z) {
        Rat c = act.alg[e].m.get(z, b);
        if (c == 0) continue;
        lt = lt.add(m.left[z].scaled(c));
        rt = rt.add(m.right[z].scaled(c));
      }
      if (!act.mod[e].mul(m.left[b]).equal(lt.mul(act.mod[e])))
        throw input_error("module action is not compatible with the left algebra action");
      if (!act.mod[e].mul(m.right[b]).equal(rt.mul(act.mod[e])))
        throw input_error("module action is not compatible with the right algebra action");
    }
  for (int e = 0; e < g.size(); ++e)
    if (!twist.m.mul(act.alg[e].m).equal(act.alg[e].m.mul(twist.m)))
      throw input_error("twist must commute with the group action");
  return act;
}

inline FiniteGroupAction trivial_group_action(const FiniteGroup& g, const GradedAlgebra& a,
                                              const Bimodule& m) {
  std::vector<AlgebraMorphism> ag(g.gens.size(), AlgebraMorphism::identity(a));
  std::vector<MatQ> mg(g.gens.size(), MatQ::identity(m.dim()));
  return group_action(g, a, m, ag, mg, AlgebraMorphism::identity(a));
}

// twist entering the fiber at element e: the global twist followed by e^{-1}
inline AlgebraMorphism fiber_twist(const FiniteGroupAction& act, int e) {
  return act.alg[act.group->inv[e]].compose(act.twist);
}

// Comodule axioms for the evaluation coaction on the stored matrices: the
// identity acts as the identity (counit) and the action grid is multiplicative
// (coassociativity, after pairing against the delta basis).
inline void verify_coaction(const FiniteGroupAction& act) {
  const FiniteGroup& g = *act.group;
  check(act.alg[0].m.equal(MatQ::identity(act.A->dim())),
        "identity must act as the identity on the algebra");
  check(act.mod[0].equal(MatQ::identity(act.m->dim())),
        "identity must act as the identity on the module");
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      int ab = g.mul[a][b];
      check(act.alg[ab].m.equal(act.alg[a].m.mul(act.alg[b].m)),
            "algebra action grid is not multiplicative");
      check(act.mod[ab].equal(act.mod[a].mul(act.mod[b])),
            "module action grid is not multiplicative");
    }
}

namespace detail {

inline MatQ kron(const MatQ& a, const MatQ& b) {
  MatQ c(a.nrows * b.nrows, a.ncols * b.ncols);
  for (int i = 0; i < a.nrows; ++i)
    for (auto& [j, v] : a.rows[i])
      for (int r = 0; r < b.nrows; ++r)
        for (auto& [s, w] : b.rows[r]) c.rows[i * b.nrows + r][j * b.ncols + s] = v * w;
  return c;
}

inline long long int_pow(long long b, int e) {
  long long r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

// column views of a sparse row-major matrix
inline std::vector<std::vector<std::pair<int, Rat>>> column_views(const MatQ& m) {
  std::vector<std::vector<std::pair<int, Rat>>> cols(m.ncols);
  for (int r = 0; r < m.nrows; ++r)
    for (auto& [c, v] : m.rows[r]) cols[c].push_back({r, v});
  return cols;
}

// face i of the map out of the n-leg term, assembled from small tensor
// factors and placed block-diagonally over the group coordinate; this is the
// cross-check route against the fused index loop
inline MatQ bg_face(const FiniteGroupAction& act, int n, int i) {
  const GradedAlgebra& a = *act.A;
  const Bimodule& m = *act.m;
  int D = a.dim(), M = m.dim(), G = act.group->size();
  int frows = (int)(int_pow(D, n - 1) * M), fcols = (int)(int_pow(D, n) * M);
  MatQ out(frows * G, fcols * G);
  for (int e = 0; e < G; ++e) {
    MatQ f(frows, fcols);
    if (i == 0) {
      Bimodule t = m.twist_left(fiber_twist(act, e));
      MatQ mid = MatQ::identity((int)int_pow(D, n - 1));
      for (int b = 0; b < D; ++b) {
        MatQ sel(1, D);
        sel.set(0, b, 1);
        f = f.add(kron(kron(sel, mid), t.left[b]));
      }
    } else if (i < n) {
      // merge legs i and i+1 with the later leg multiplied onto the earlier
      MatQ mu(D, D * D);
      for (int bi = 0; bi < D; ++bi)
        for (int bj = 0; bj < D; ++bj)
          for (auto& [z, c] : a.mul_basis(bj, bi)) mu.add_to(z, bi * D + bj, c);
      f = kron(kron(kron(MatQ::identity((int)int_pow(D, i - 1)), mu),
                    MatQ::identity((int)int_pow(D, n - i - 1))),
               MatQ::identity(M));
    } else {
      MatQ ra(M, D * M);
      for (int b = 0; b < D; ++b)
        for (int r = 0; r < M; ++r)
          for (auto& [c, v] : m.right[b].rows[r]) ra.add_to(r, b * M + c, v);
      f = kron(MatQ::identity((int)int_pow(D, n - 1)), ra);
    }
    for (int r = 0; r < frows; ++r)
      for (auto& [c, v] : f.rows[r]) out.rows[e * frows + r][e * fcols + c] = v;
  }
  return out;
}

}  // namespace detail

// matrix of element e on the n-leg term: every algebra leg through alg[e], the
// module coordinate through mod[e], the group coordinate by conjugation
inline MatQ term_action(const FiniteGroupAction& act, const FunctionsOnG& fog, int n, int e) {
  const GradedAlgebra& a = *act.A;
  int D = a.dim(), M = act.m->dim(), G = act.group->size();
  long long fiber = M * detail::int_pow(D, n);
  MatQ out((int)(fiber * G), (int)(fiber * G));
  auto ca = detail::column_views(act.alg[e].m);
  auto cm = detail::column_views(act.mod[e]);
  std::vector<int> legs(n, 0);
  for (int h = 0; h < G; ++h) {
    int h2 = fog.conj[e][h];
    for (long long ix = 0; ix < fiber; ++ix) {
      long long q = ix;
      int u = (int)(q % M);
      q /= M;
      for (int k = n - 1; k >= 0; --k) {
        legs[k] = (int)(q % D);
        q /= D;
      }
      std::vector<std::pair<long long, Rat>> partial{{0, Rat(1)}};
      for (int k = 0; k < n; ++k) {
        std::vector<std::pair<long long, Rat>> next;
        for (auto& [pix, pc] : partial)
          for (auto& [z, c] : ca[legs[k]]) next.push_back({pix * D + z, pc * c});
        partial = std::move(next);
      }
      for (auto& [pix, pc] : partial)
        for (auto& [u2, c] : cm[u])
          out.add_to((int)(h2 * fiber + pix * M + u2), (int)(h * fiber + ix), pc * c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The equivariant trace complex: one twisted bar fiber per group element, laid
// out side by side with the group coordinate slowest, so the differential is
// block diagonal and the fiber decomposition is visible in the matrices.

struct BGComplex {
  ComplexQ complex;  // degrees [-depth, 0]; term(-n) has dim (dim A)^n dim M |G|
  int depth = 0;
  const FiniteGroupAction* act = nullptr;
};

inline BGComplex pre_bg_complex(const FiniteGroupAction& act, const Bimodule& m, int depth) {
  check(act.m == &m, "action was built for a different bimodule");
  check(depth >= 0, "trace complex depth must be nonnegative");
  verify_coaction(act);
  const GradedAlgebra& a = *act.A;
  const FiniteGroup& g = *act.group;
  int D = a.dim(), M = m.dim(), G = g.size();

  std::vector<long long> sizes(depth + 1);  // fiber dim of the n-leg term
  long long sz = M;
  for (int n = 0; n <= depth; ++n) {
    sizes[n] = sz;
    if ((sz * G) > 2000000) throw input_error("trace complex term exceeds 2000000 coordinates");
    sz *= D;
  }

  BGComplex bg;
  bg.depth = depth;
  bg.act = &act;
  bg.complex.lo = -depth;
  for (int k = 0; k <= depth; ++k) bg.complex.dims.push_back(sizes[depth - k] * G);

  // per-fiber wrap actions u -> tau_e(b) . u as column views
  std::vector<std::vector<std::vector<std::pair<int, Rat>>>> wraps;
  for (int e = 0; e < G; ++e) {
    Bimodule t = m.twist_left(fiber_twist(act, e));
    std::vector<std::vector<std::pair<int, Rat>>> w(D * M);
    for (int b = 0; b < D; ++b) {
      auto cols = detail::column_views(t.left[b]);
      for (int u = 0; u < M; ++u) w[b * M + u] = cols[u];
    }
    wraps.push_back(std::move(w));
  }
  std::vector<std::vector<std::vector<std::pair<int, Rat>>>> right_cols;
  for (int b = 0; b < D; ++b) right_cols.push_back(detail::column_views(m.right[b]));

  for (int n = depth; n >= 1; --n) {
    MatQ d((int)(sizes[n - 1] * G), (int)(sizes[n] * G));
    std::vector<int> legs(n, 0);
    for (int e = 0; e < G; ++e) {
      long long roff = e * sizes[n - 1], coff = e * sizes[n];
      for (long long ix = 0; ix < sizes[n]; ++ix) {
        long long q = ix;
        int u = (int)(q % M);
        q /= M;
        for (int k = n - 1; k >= 0; --k) {
          legs[k] = (int)(q % D);
          q /= D;
        }
        // wrap-around face, sign +1: the first leg enters the module through
        // the fiber twist at e
        {
          std::vector<int> rest(legs.begin() + 1, legs.end());
          for (auto& [u2, c] : wraps[e][legs[0] * M + u])
            d.add_to((int)(roff + detail::bar_tuple_index(rest, u2, D, M)), (int)(coff + ix), c);
        }
        // interior faces, sign (-1)^i: merge (b_i, b_{i+1}) into b_{i+1} b_i
        for (int i = 1; i <= n - 1; ++i) {
          Rat sign((i % 2 == 0) ? 1 : -1);
          std::vector<int> rest;
          rest.reserve(n - 1);
          for (int k = 0; k < i - 1; ++k) rest.push_back(legs[k]);
          rest.push_back(0);
          for (int k = i + 1; k < n; ++k) rest.push_back(legs[k]);
          for (auto& [z, c] : a.mul_basis(legs[i], legs[i - 1])) {
            rest[i - 1] = z;
            d.add_to((int)(roff + detail::bar_tuple_index(rest, u, D, M)), (int)(coff + ix),
                     sign * c);
          }
        }
        // last face, sign (-1)^n: the last leg acts on the module from the right
        {
          Rat sign((n % 2 == 0) ? 1 : -1);
          std::vector<int> rest(legs.begin(), legs.end() - 1);
          for (auto& [u2, c] : right_cols[legs[n - 1]][u])
            d.add_to((int)(roff + detail::bar_tuple_index(rest, u2, D, M)), (int)(coff + ix),
                     sign * c);
        }
      }
    }
    // low-degree cross-check: the stored matrix must equal the alternating sum
    // of the faces assembled independently from small tensor factors
    if (n <= 2) {
      MatQ alt((int)(sizes[n - 1] * G), (int)(sizes[n] * G));
      for (int i = 0; i <= n; ++i) {
        MatQ f = detail::bg_face(act, n, i);
        alt = (i % 2 == 0) ? alt.add(f) : alt.sub(f);
      }
      check(d.equal(alt), "stored differential is not the alternating face sum");
    }
    bg.complex.diff.push_back(std::move(d));
  }
  bg.complex.validate();
  bg.complex.check_complex();

  // equivariance on generators: the group action matrices form a chain map
  FunctionsOnG fog = functions_on_group(g);
  for (auto& gen : g.gens) {
    int e = g.index.at(gen);
    MatQ prev = term_action(act, fog, depth, e);
    for (int n = depth; n >= 1; --n) {
      MatQ cur = term_action(act, fog, n - 1, e);
      const MatQ& dn = bg.complex.diff[depth - n];
      check(dn.mul(prev).equal(cur.mul(dn)),
            "differential is not equivariant at degree " + std::to_string(-n));
      prev = std::move(cur);
    }
  }
  return bg;
}

namespace detail {

inline MatQ block_of(const MatQ& m, int r0, int nr, int c0, int nc) {
  MatQ b(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (auto& [j, v] : m.rows[r0 + i])
      if (j >= c0 && j < c0 + nc) b.rows[i][j - c0] = v;
  return b;
}

}  // namespace detail

// fiber of the trace complex at one group element: the block is extracted from
// the stored matrices and must agree matrix for matrix with the bar complex
// twisted by the fiber twist, which is built by an independent route
inline ComplexQ fiber_at(const BGComplex& bg, int e) {
  const FiniteGroupAction& act = *bg.act;
  int G = act.group->size();
  check(0 <= e && e < G, "fiber element out of range");
  ComplexQ out;
  out.lo = bg.complex.lo;
  for (long long d : bg.complex.dims) out.dims.push_back(d / G);
  for (size_t k = 0; k < bg.complex.diff.size(); ++k) {
    int nr = (int)out.dims[k + 1], nc = (int)out.dims[k];
    out.diff.push_back(detail::block_of(bg.complex.diff[k], e * nr, nr, e * nc, nc));
  }
  out.validate();
  CyclicBarComplex cb = cyclic_bar(*act.A, *act.m, fiber_twist(act, e), bg.depth);
  check(cb.complex.dims == out.dims, "fiber dimensions disagree with the twisted bar complex");
  for (size_t k = 0; k < out.diff.size(); ++k)
    check(out.diff[k].equal(cb.complex.diff[k]),
          "fiber disagrees with the twisted bar complex");
  return out;
}

inline ComplexQ fiber_at(const BGComplex& bg, const Perm& p) {
  auto it = bg.act->group->index.find(p);
  if (it == bg.act->group->index.end())
    throw input_error("element does not belong to the acting group");
  return fiber_at(bg, it->second);
}

// ---------------------------------------------------------------------------
// Insertion homotopy: for a central element r fixed by the whole group action,
// inserting r into every slot with alternating signs contracts the complex
// onto the difference between the twisted left action and the plain right
// action of r on the module coordinate.

struct HomotopyReport {
  int depth = 0;
  bool zero_difference = true;  // the two actions of r agree on every fiber
};

inline HomotopyReport verify_homotopy(const FiniteGroupAction& act, const Bimodule& m,
                                      const Elem& r, int depth) {
  check(depth >= 1, "homotopy check needs depth at least 1");
  const GradedAlgebra& a = *act.A;
  for (int b = 0; b < a.dim(); ++b)
    if (!(a.mul(r, Elem{{b, Rat(1)}}) == a.mul(Elem{{b, Rat(1)}}, r)))
      throw input_error("homotopy element must be central");
  for (int e = 0; e < act.group->size(); ++e)
    if (!(act.alg[e].apply(r) == r))
      throw input_error("homotopy element must be invariant under the group");

  BGComplex bg = pre_bg_complex(act, m, depth);
  int D = a.dim(), M = m.dim(), G = act.group->size();

  // s_j inserts r after the first j legs; s is their alternating sum
  auto insertion = [&](int n) {
    long long src = M * detail::int_pow(D, n), dst = src * D;
    MatQ s((int)(dst * G), (int)(src * G));
    std::vector<int> legs(n, 0);
    for (int e = 0; e < G; ++e)
      for (long long ix = 0; ix < src; ++ix) {
        long long q = ix;
        int u = (int)(q % M);
        q /= M;
        for (int k = n - 1; k >= 0; --k) {
          legs[k] = (int)(q % D);
          q /= D;
        }
        for (int j = 0; j <= n; ++j) {
          Rat sign((j % 2 == 0) ? 1 : -1);
          for (auto& [z, c] : r) {
            std::vector<int> ins(legs.begin(), legs.begin() + j);
            ins.push_back(z);
            ins.insert(ins.end(), legs.begin() + j, legs.end());
            s.add_to((int)(e * dst + detail::bar_tuple_index(ins, u, D, M)),
                     (int)(e * src + ix), sign * c);
          }
        }
      }
    return s;
  };

  HomotopyReport rep;
  rep.depth = depth;
  std::vector<MatQ> cmp;  // per degree -n: block diagonal L_{tau_e(r)} - R_r
  MatQ rmat(M, M);
  for (auto& [z, c] : r) rmat = rmat.add(m.right[z].scaled(c));
  for (int n = 0; n <= depth - 1; ++n) {
    long long fib = M * detail::int_pow(D, n);
    MatQ c((int)(fib * G), (int)(fib * G));
    for (int e = 0; e < G; ++e) {
      Elem tr = fiber_twist(act, e).apply(r);
      MatQ lmat(M, M);
      for (auto& [z, cc] : tr) lmat = lmat.add(m.left[z].scaled(cc));
      MatQ diff = detail::kron(MatQ::identity((int)(fib / M)), lmat.sub(rmat));
      for (int rr = 0; rr < diff.nrows; ++rr)
        for (auto& [cc2, v] : diff.rows[rr]) c.rows[(int)(e * fib) + rr][(int)(e * fib) + cc2] = v;
    }
    if (!c.is_zero()) rep.zero_difference = false;
    cmp.push_back(std::move(c));
  }

  std::vector<MatQ> s;
  for (int n = 0; n <= depth - 1; ++n) s.push_back(insertion(n));
  for (int n = 0; n <= depth - 1; ++n) {
    // d out of degree -(n+1) composed with the insertion into it
    MatQ lhs = bg.complex.diff[depth - n - 1].mul(s[n]);
    if (n >= 1) lhs = lhs.add(s[n - 1].mul(bg.complex.diff[depth - n]));
    check(lhs.equal(cmp[n]), "homotopy identity failed at degree " + std::to_string(-n));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Global sections: the invariant subcomplex for the diagonal action with
// conjugation on the group coordinate, computed with the averaging projector.

struct GlobalSections {
  ComplexQ complex;             // invariant subcomplex
  std::vector<long long> h;     // h[k] = dim of the cohomology in degree lo + k
};

inline GlobalSections global_sections(const BGComplex& bg) {
  const FiniteGroupAction& act = *bg.act;
  const FiniteGroup& g = *act.group;
  FunctionsOnG fog = functions_on_group(g);
  int G = g.size();

  std::vector<MatQ> proj, basis;
  for (int k = 0; k <= bg.depth; ++k) {
    int n = bg.depth - k;
    int dim = (int)bg.complex.dims[k];
    MatQ p(dim, dim);
    for (int e = 0; e < G; ++e) p = p.add(term_action(act, fog, n, e));
    p = p.scaled(Rat(1) / G);
    check(p.mul(p).equal(p), "averaging projector is not idempotent");
    Rref<QQ> r = rref(p);
    MatQ b(dim, r.rank());
    for (int c = 0; c < r.rank(); ++c)
      for (int row = 0; row < dim; ++row) {
        Rat v = p.get(row, r.pivot_cols[c]);
        if (v != 0) b.set(row, c, v);
      }
    Rat tr(0);
    for (int i = 0; i < dim; ++i) tr += p.get(i, i);
    check(tr == Rat(r.rank()), "invariant dimension must equal the projector trace");
    proj.push_back(std::move(p));
    basis.push_back(std::move(b));
  }

  GlobalSections gs;
  gs.complex.lo = bg.complex.lo;
  for (auto& b : basis) gs.complex.dims.push_back(b.ncols);
  for (size_t k = 0; k + 1 < basis.size(); ++k) {
    const MatQ& d = bg.complex.diff[k];
    check(d.mul(proj[k]).equal(proj[k + 1].mul(d)),
          "differential does not commute with the averaging projector");
    MatQ img = d.mul(basis[k]);
    MatQ x(basis[k + 1].ncols, basis[k].ncols);
    for (int c = 0; c < basis[k].ncols; ++c) {
      std::vector<Rat> col(img.nrows, Rat(0));
      for (int rr = 0; rr < img.nrows; ++rr) col[rr] = img.get(rr, c);
      auto sol = solve_field(basis[k + 1], col);
      check(sol.has_value(), "differential leaves the invariant subcomplex");
      for (int rr = 0; rr < x.nrows; ++rr)
        if ((*sol)[rr] != 0) x.set(rr, c, (*sol)[rr]);
    }
    gs.complex.diff.push_back(std::move(x));
  }
  gs.complex.validate();
  gs.complex.check_complex();
  for (int d = gs.complex.lo; d <= gs.complex.hi(); ++d)
    gs.h.push_back(cohomology(gs.complex, d).free_rank);
  return gs;
}

// ---------------------------------------------------------------------------
// Inertia check for a permutation action on a product of fields: the degree
// zero invariant sections count the orbits of the set of fixed pairs (x, e)
// under simultaneous translation and conjugation, and the count is verified
// against a direct orbit enumeration.

struct InertiaReport {
  long long sections_h0 = 0;
  long long orbit_count = 0;
};

inline InertiaReport verify_inertia(const FiniteGroup& g, int xsize,
                                    const std::vector<Perm>& xgens) {
  if (xsize < 1) throw input_error("the acted set must be nonempty");
  if ((int)xgens.size() != (int)g.gens.size())
    throw input_error("need one point permutation per group generator");
  for (auto& p : xgens) {
    if ((int)p.size() != xsize || !perm_valid(p))
      throw input_error("point action is not a permutation of the set");
  }
  int G = g.size();
  std::vector<Perm> xact(G);
  xact[0].resize(xsize);
  for (int x = 0; x < xsize; ++x) xact[0][x] = x;
  for (int e = 1; e < G; ++e) {
    auto [p, k] = g.word[e];
    xact[e] = perm_compose(xact[p], xgens[k]);
  }
  std::vector<int> gidx;
  for (auto& gen : g.gens) gidx.push_back(g.index.at(gen));
  for (int e = 0; e < G; ++e)
    for (size_t k = 0; k < gidx.size(); ++k)
      if (xact[g.mul[e][gidx[k]]] != perm_compose(xact[e], xgens[k]))
        throw input_error("point actions violate the group relations");

  GradedAlgebra a = product_of_fields(xsize);
  Bimodule m = Bimodule::regular(a);
  std::vector<AlgebraMorphism> ag;
  std::vector<MatQ> mg;
  for (auto& p : xgens) {
    MatQ pm(xsize, xsize);
    for (int x = 0; x < xsize; ++x) pm.set(p[x], x, 1);
    ag.push_back({&a, pm});
    mg.push_back(pm);
  }
  FiniteGroupAction act = group_action(g, a, m, ag, mg, AlgebraMorphism::identity(a));
  BGComplex bg = pre_bg_complex(act, m, 1);
  GlobalSections gs = global_sections(bg);

  InertiaReport rep;
  rep.sections_h0 = gs.h.back();

  // direct route: orbits of {(x, e) : e fixes x} under h.(x, e) = (hx, heh^{-1})
  std::vector<int> id(xsize * G, -1);
  std::vector<std::pair<int, int>> fixed;
  for (int x = 0; x < xsize; ++x)
    for (int e = 0; e < G; ++e)
      if (xact[e][x] == x) {
        id[x * G + e] = (int)fixed.size();
        fixed.push_back({x, e});
      }
  std::vector<int> root((int)fixed.size());
  for (size_t i = 0; i < root.size(); ++i) root[i] = (int)i;
  std::function<int(int)> find = [&](int v) { return root[v] == v ? v : root[v] = find(root[v]); };
  for (size_t i = 0; i < fixed.size(); ++i) {
    auto [x, e] = fixed[i];
    for (int h = 0; h < G; ++h) {
      int x2 = xact[h][x];
      int e2 = g.mul[g.mul[h][e]][g.inv[h]];
      int j = id[x2 * G + e2];
      check(j >= 0, "conjugation must preserve the fixed pairs");
      root[find((int)i)] = find(j);
    }
  }
  for (size_t i = 0; i < root.size(); ++i)
    if (find((int)i) == (int)i) ++rep.orbit_count;

  check(rep.sections_h0 == rep.orbit_count,
        "invariant sections disagree with the orbit count of the fixed pairs");
  return rep;
}

// ---------------------------------------------------------------------------
// Bounded model: the quadratic-dual resolution, restricted to its generator
// corners, replaces the bar fibers.  Each resolution term is free on the
// entries with idempotent flanks, so tensoring with the twisted coefficients
// keeps only the matching corner of the module, one block per group element.

struct BoundedTraceModel {
  ComplexQ complex;  // degrees [-length, 0]
  int length = 0;
  bool truncated = false;
  std::string warning;  // nonempty iff truncated
};

inline BoundedTraceModel bounded_trace_model(const FiniteGroupAction& act, const Bimodule& m,
                                             int cap, bool allow_truncated = false) {
  check(act.m == &m, "action was built for a different bimodule");
  const GradedAlgebra& a = *act.A;
  KoszulComplex kc = koszul_complex(a, cap);
  int L = kc.length;
  int certify = std::max(2, std::min(cap, L + 1));
  KoszulCertificate cert = is_koszul(a, certify);
  if (!cert.koszul)
    throw input_error("algebra fails the quadratic-resolution test in degree " +
                      std::to_string(cert.fail_n) + "; is_koszul reports the failure");
  if (kc.truncated && !allow_truncated)
    throw input_error("quadratic dual is still nonzero at the cap; certify a finite "
                      "length with is_koszul or allow a truncated model");

  const FiniteGroup& g = *act.group;
  int M = m.dim(), G = g.size();

  // generator entries per level: the entries whose flanks are the idempotents
  std::vector<std::vector<int>> gens(L + 1);               // positions in kc.terms
  std::vector<std::map<std::tuple<int, int, int>, int>> genof(L + 1);
  for (int n = 0; n <= L; ++n) {
    const auto& term = kc.terms[L - n];
    for (int t = 0; t < (int)term.size(); ++t) {
      const KosEntry& e = term[t];
      if (e.left == e.i && e.right == e.j) {
        genof[n][{e.i, e.j, e.d}] = (int)gens[n].size();
        gens[n].push_back(t);
      }
    }
  }

  // twisted bimodules and corner bases per fiber
  std::vector<Bimodule> tw;
  for (int e = 0; e < G; ++e) tw.push_back(m.twist_left(fiber_twist(act, e)));
  std::map<std::tuple<int, int, int>, MatQ> corner;  // (e, i, j) -> basis columns
  auto corner_basis = [&](int e, int i, int j) -> const MatQ& {
    auto it = corner.find({e, i, j});
    if (it != corner.end()) return it->second;
    MatQ p = tw[e].left[j].mul(m.right[i]);
    check(p.mul(p).equal(p), "corner projector is not idempotent");
    Rref<QQ> r = rref(p);
    MatQ b(M, r.rank());
    for (int c = 0; c < r.rank(); ++c)
      for (int row = 0; row < M; ++row) {
        Rat v = p.get(row, r.pivot_cols[c]);
        if (v != 0) b.set(row, c, v);
      }
    return corner.emplace(std::make_tuple(e, i, j), std::move(b)).first->second;
  };

  // model term layout per level: group element slow, then generator, then
  // corner coordinate
  std::vector<std::vector<long long>> offs(L + 1);
  std::vector<long long> tdim(L + 1, 0);
  for (int n = 0; n <= L; ++n) {
    offs[n].assign((size_t)G * gens[n].size() + 1, 0);
    long long runoff = 0;
    for (int e = 0; e < G; ++e)
      for (size_t t = 0; t < gens[n].size(); ++t) {
        const KosEntry& ge = kc.terms[L - n][gens[n][t]];
        offs[n][(size_t)e * gens[n].size() + t] = runoff;
        runoff += corner_basis(e, ge.i, ge.j).ncols;
      }
    offs[n].back() = runoff;
    tdim[n] = runoff;
  }

  BoundedTraceModel model;
  model.length = L;
  model.truncated = kc.truncated;
  model.warning = kc.warning;
  model.complex.lo = -L;
  for (int k = 0; k <= L; ++k) model.complex.dims.push_back(tdim[L - k]);

  for (int n = L; n >= 1; --n) {
    const MatQ& dmat = kc.complex.diff[L - n];
    auto dcols = detail::column_views(dmat);
    MatQ d((int)tdim[n - 1], (int)tdim[n]);
    for (int e = 0; e < G; ++e)
      for (size_t t = 0; t < gens[n].size(); ++t) {
        const KosEntry& ge = kc.terms[L - n][gens[n][t]];
        const MatQ& bsrc = corner_basis(e, ge.i, ge.j);
        long long coff = offs[n][(size_t)e * gens[n].size() + t];
        for (int c = 0; c < bsrc.ncols; ++c) {
          std::vector<Rat> u(M, Rat(0));
          for (int row = 0; row < M; ++row) u[row] = bsrc.get(row, c);
          // images grouped by target generator: the flank pair of each entry
          // acts on the corner through the twisted coefficients
          std::map<int, std::vector<Rat>> acc;
          for (auto& [row, cv] : dcols[gens[n][t]]) {
            const KosEntry& te = kc.terms[L - n + 1][row];
            int tg = genof[n - 1].at({te.i, te.j, te.d});
            std::vector<Rat> v = tw[e].left[te.right].mul(m.right[te.left]).apply(u);
            auto it = acc.find(tg);
            if (it == acc.end()) it = acc.emplace(tg, std::vector<Rat>(M, Rat(0))).first;
            for (int row2 = 0; row2 < M; ++row2) it->second[row2] += cv * v[row2];
          }
          for (auto& [tg, v] : acc) {
            bool nz = false;
            for (auto& vv : v) nz = nz || vv != 0;
            if (!nz) continue;
            const KosEntry& tge = kc.terms[L - n + 1][gens[n - 1][tg]];
            const MatQ& btgt = corner_basis(e, tge.i, tge.j);
            auto sol = solve_field(btgt, v);
            check(sol.has_value(), "image escaped the target corner");
            long long roff = offs[n - 1][(size_t)e * gens[n - 1].size() + tg];
            for (int rr = 0; rr < btgt.ncols; ++rr)
              if ((*sol)[rr] != 0) d.add_to((int)(roff + rr), (int)(coff + c), (*sol)[rr]);
          }
        }
      }
    model.complex.diff.push_back(std::move(d));
  }
  model.complex.validate();
  model.complex.check_complex();

  // cross-check against the bar construction in every degree the truncation
  // leaves honest
  BGComplex pre = pre_bg_complex(act, m, L + 1);
  int lowest = kc.truncated ? (-L + 1) : -L;
  for (int dd = lowest; dd <= 0; ++dd)
    check(cohomology(model.complex, dd).free_rank == cohomology(pre.complex, dd).free_rank,
          "bounded model disagrees with the bar construction at degree " + std::to_string(dd));
  return model;
}

// ---------------------------------------------------------------------------
// Amplitude: the degree window carrying nonzero cohomology.

struct Amplitude {
  bool empty = true;
  int lo = 0, hi = 0;
};

inline Amplitude amplitude(const ComplexQ& c) {
  Amplitude a;
  for (int d = c.lo; d <= c.hi(); ++d) {
    if (cohomology(c, d).free_rank == 0) continue;
    if (a.empty) {
      a.lo = d;
      a.empty = false;
    }
    a.hi = d;
  }
  return a;
}

}  // namespace exhom
