#pragma once

#include "exhom/algebra.hpp"

namespace exhom {

// Finite dimensional graded right module over B with an adapted basis: each
// basis vector m satisfies m·e_i = m for exactly one idempotent, recorded in
// `idem`.  act[b] is the matrix of right multiplication by basis element b.
struct ModuleOver {
  const GradedAlgebra* B = nullptr;
  std::vector<int> wt;
  std::vector<int> idem;
  std::vector<MatQ> act;

  int dim() const { return (int)wt.size(); }

  void validate() const {
    check(B != nullptr, "module without algebra");
    int d = dim();
    check((int)idem.size() == d, "idem labels size mismatch");
    check((int)act.size() == B->dim(), "one action matrix per algebra basis element");
    for (int b = 0; b < B->dim(); ++b) {
      check(act[b].nrows == d && act[b].ncols == d, "action matrix shape");
      for (int i = 0; i < d; ++i)
        for (auto& [j, v] : act[b].rows[i]) {
          (void)v;
          check(wt[i] == wt[j] + B->basis[b].weight, "action not graded");
          check(idem[i] == B->basis[b].source, "action image outside source block");
        }
    }
    for (int i = 0; i < B->num_idem; ++i)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Rat expect = (k == l && idem[k] == i) ? Rat(1) : Rat(0);
          check(act[i].get(k, l) == expect, "idempotent action must be the block projector");
        }
    for (int x = 0; x < B->dim(); ++x)
      for (int y = 0; y < B->dim(); ++y) {
        MatQ rhs(d, d);
        for (auto& [z, c] : B->mul_basis(x, y)) rhs = rhs.add(act[z].scaled(c));
        check(act[y].mul(act[x]).equal(rhs), "module axiom m·(xy) = (m·x)·y fails");
      }
  }

  static ModuleOver simple(const GradedAlgebra& b, int i, int weight_shift = 0) {
    ModuleOver m;
    m.B = &b;
    m.wt = {weight_shift};
    m.idem = {i};
    for (int k = 0; k < b.dim(); ++k) {
      MatQ a(1, 1);
      if (k == i) a.set(0, 0, 1);
      m.act.push_back(a);
    }
    return m;
  }
};

// Free right module on generators (idempotent, weight shift); the concrete
// basis consists of pairs (generator g, algebra basis b) with target(b) equal
// to the generator's idempotent.
struct FreeModule {
  std::vector<std::pair<int, int>> gens;  // (idem, weight shift)
  ModuleOver mod;
  std::vector<std::pair<int, int>> basis_pair;
  std::map<std::pair<int, int>, int> index_of;

  int gen_unit(int g) const { return index_of.at({g, gens[g].first}); }
};

inline FreeModule free_module(const GradedAlgebra& b,
                              const std::vector<std::pair<int, int>>& gens) {
  FreeModule f;
  f.gens = gens;
  f.mod.B = &b;
  for (int g = 0; g < (int)gens.size(); ++g)
    for (int k = 0; k < b.dim(); ++k)
      if (b.basis[k].target == gens[g].first) {
        f.index_of[{g, k}] = (int)f.basis_pair.size();
        f.basis_pair.push_back({g, k});
        f.mod.wt.push_back(gens[g].second + b.basis[k].weight);
        f.mod.idem.push_back(b.basis[k].source);
      }
  int d = (int)f.basis_pair.size();
  for (int c = 0; c < b.dim(); ++c) {
    MatQ a(d, d);
    for (int k = 0; k < d; ++k) {
      auto [g, x] = f.basis_pair[k];
      for (auto& [z, v] : b.mul_basis(x, c)) a.add_to(f.index_of.at({g, z}), k, v);
    }
    f.mod.act.push_back(std::move(a));
  }
  return f;
}

namespace detail {

// block decomposition by (weight, idempotent); kernels, generators and
// expressions all happen blockwise since every map in sight is graded
inline std::map<std::pair<int, int>, std::vector<int>> blocks_of(const ModuleOver& m) {
  std::map<std::pair<int, int>, std::vector<int>> bl;
  for (int k = 0; k < m.dim(); ++k) bl[{m.wt[k], m.idem[k]}].push_back(k);
  return bl;
}

// incremental rank tracker over Q (row echelon, no pivots normalized)
struct RankTracker {
  std::vector<std::map<int, Rat>> rows;
  // returns true if v was independent (and absorbs it)
  bool add(std::map<int, Rat> v) {
    for (auto& r : rows) {
      if (v.empty()) break;
      int piv = r.begin()->first;
      auto it = v.find(piv);
      if (it == v.end()) continue;
      Rat c = it->second / r.begin()->second;
      for (auto& [j, x] : r) {
        Rat nv = (v.count(j) ? v[j] : Rat(0)) - c * x;
        if (nv == 0)
          v.erase(j);
        else
          v[j] = nv;
      }
    }
    if (v.empty()) return false;
    rows.push_back(std::move(v));
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.begin()->first < b.begin()->first; });
    return true;
  }
};

}  // namespace detail

// Generators of the top M/(M·rad): standard basis vectors of M, chosen
// greedily per (weight, idempotent) block to complement M·rad.
struct TopGenerators {
  std::vector<int> coords;                 // indices of chosen standard vectors
  std::vector<std::pair<int, int>> gens;   // their (idem, weight)
};

inline TopGenerators top_generators(const ModuleOver& m) {
  auto bl = detail::blocks_of(m);
  std::map<std::pair<int, int>, detail::RankTracker> rad_span;
  for (int b : m.B->radical_basis())
    for (int k = 0; k < m.dim(); ++k) {
      std::map<int, Rat> col;
      for (int i = 0; i < m.dim(); ++i) {
        Rat v = m.act[b].get(i, k);
        if (v != 0) col[i] = v;
      }
      if (col.empty()) continue;
      int i0 = col.begin()->first;
      rad_span[{m.wt[i0], m.idem[i0]}].add(std::move(col));
    }
  TopGenerators out;
  for (auto& [key, coords] : bl) {
    auto& tracker = rad_span[key];
    for (int k : coords)
      if (tracker.add({{k, Rat(1)}})) {
        out.coords.push_back(k);
        out.gens.push_back({m.idem[k], m.wt[k]});
      }
  }
  return out;
}

// Projective cover: free module on the top generators plus the covering map.
struct Cover {
  FreeModule p;
  MatQ to_m;  // dim M × dim P
};

inline Cover projective_cover(const ModuleOver& m) {
  TopGenerators top = top_generators(m);
  Cover c;
  c.p = free_module(*m.B, top.gens);
  c.to_m = MatQ(m.dim(), c.p.mod.dim());
  for (int k = 0; k < c.p.mod.dim(); ++k) {
    auto [g, b] = c.p.basis_pair[k];
    int v = top.coords[g];  // generator vector is the standard basis vector v
    for (int i = 0; i < m.dim(); ++i) {
      Rat x = m.act[b].get(i, v);
      if (x != 0) c.to_m.set(i, k, x);
    }
  }
  check(rank_field(c.to_m) == m.dim(), "projective cover not surjective");
  return c;
}

// Kernel of a graded module map phi: P -> M as a module with an embedding.
struct KernelModule {
  ModuleOver mod;
  MatQ emb;  // dim P × dim K, columns form the kernel basis
};

inline KernelModule kernel_module(const ModuleOver& p, const MatQ& phi, const ModuleOver& m) {
  check(phi.nrows == m.dim() && phi.ncols == p.dim(), "kernel: map shape mismatch");
  auto pbl = detail::blocks_of(p);
  auto mbl = detail::blocks_of(m);
  KernelModule k;
  k.mod.B = p.B;
  std::vector<std::map<int, Rat>> cols;  // kernel vectors in P coords
  for (auto& [key, pc] : pbl) {
    std::vector<int> mc = mbl.count(key) ? mbl[key] : std::vector<int>{};
    MatQ sub((int)mc.size(), (int)pc.size());
    for (int r = 0; r < (int)mc.size(); ++r)
      for (int c = 0; c < (int)pc.size(); ++c) sub.set(r, c, phi.get(mc[r], pc[c]));
    for (auto& kv : kernel_field(sub)) {
      std::map<int, Rat> v;
      for (int r = 0; r < (int)kv.size(); ++r)
        if (kv[r] != 0) v[pc[r]] = kv[r];
      cols.push_back(std::move(v));
      k.mod.wt.push_back(key.first);
      k.mod.idem.push_back(key.second);
    }
  }
  k.emb = MatQ(p.dim(), (int)cols.size());
  for (int c = 0; c < (int)cols.size(); ++c)
    for (auto& [r, v] : cols[c]) k.emb.set(r, c, v);
  // induced action: solve act_P[b]·emb = emb·act_K[b] blockwise
  for (int b = 0; b < p.B->dim(); ++b) {
    MatQ img = p.act[b].mul(k.emb);
    MatQ ab(k.mod.dim(), k.mod.dim());
    for (int c = 0; c < k.mod.dim(); ++c) {
      std::vector<Rat> v(p.dim(), Rat(0));
      bool nonzero = false;
      for (int r = 0; r < p.dim(); ++r) {
        v[r] = img.get(r, c);
        if (v[r] != 0) nonzero = true;
      }
      if (!nonzero) continue;
      auto sol = solve_field(k.emb, v);
      check(sol.has_value(), "kernel not closed under the action");
      for (int r = 0; r < k.mod.dim(); ++r)
        if ((*sol)[r] != 0) ab.set(r, c, (*sol)[r]);
    }
    k.mod.act.push_back(std::move(ab));
  }
  return k;
}

// Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0, carried to the
// requested homological length.  Generator data of P_d (idempotent, weight)
// is the degree-d Ext information against the simples.
struct MinimalResolution {
  std::vector<FreeModule> terms;
  std::vector<MatQ> maps;  // maps[d]: P_d -> P_{d-1}, d >= 1
  MatQ aug;                // P_0 -> M

  // multiplicity of generators with (idempotent i, weight w) in degree d
  int ext_dim(int d, int i, int w) const {
    if (d < 0 || d >= (int)terms.size()) return 0;
    int c = 0;
    for (auto& g : terms[d].gens)
      if (g.first == i && g.second == w) ++c;
    return c;
  }
  std::map<std::pair<int, int>, int> ext_table(int d) const {
    std::map<std::pair<int, int>, int> t;
    if (d >= 0 && d < (int)terms.size())
      for (auto& g : terms[d].gens) ++t[{g.first, g.second}];
    return t;
  }
};

inline MinimalResolution minimal_resolution(const ModuleOver& m, int length) {
  MinimalResolution res;
  Cover c0 = projective_cover(m);
  res.aug = c0.to_m;
  res.terms.push_back(std::move(c0.p));
  ModuleOver cur = m;
  MatQ cur_phi = res.aug;
  for (int d = 1; d <= length; ++d) {
    KernelModule k = kernel_module(res.terms.back().mod, cur_phi, cur);
    if (k.mod.dim() == 0) {
      res.maps.push_back(MatQ(res.terms.back().mod.dim(), 0));
      res.terms.push_back(free_module(*m.B, {}));
      break;
    }
    Cover c = projective_cover(k.mod);
    MatQ map = k.emb.mul(c.to_m);
    res.maps.push_back(map);
    cur = k.mod;
    cur_phi = c.to_m;
    res.terms.push_back(std::move(c.p));
  }
  // composite vanishing: d_{k} then d_{k+1} (and aug after d_1)
  if (!res.maps.empty()) check(res.aug.mul(res.maps[0]).is_zero(), "aug ∘ d1 != 0");
  for (size_t i = 0; i + 1 < res.maps.size(); ++i)
    check(res.maps[i].mul(res.maps[i + 1]).is_zero(), "d ∘ d != 0 in resolution");
  return res;
}

// Weight-graded dims of Ext^d(L_i, L_j): resolve L_i minimally; generators of
// P_d with idempotent j and weight w contribute to Ext^d in weight w.
struct ExtTable {
  // ext[d] maps (j, w) -> dim Ext^d(L_i, L_j)_w
  std::vector<std::map<std::pair<int, int>, int>> ext;
};

inline ExtTable ext_simples(const GradedAlgebra& a, int i, int max_degree) {
  ModuleOver li = ModuleOver::simple(a, i);
  MinimalResolution r = minimal_resolution(li, max_degree);
  ExtTable t;
  for (int d = 0; d <= max_degree; ++d) t.ext.push_back(r.ext_table(d));
  return t;
}

// The algebra as a right module over its enveloping algebra.
inline ModuleOver regular_env_module(const GradedAlgebra& a, const EnvAlgebra& env) {
  Bimodule reg = Bimodule::regular(a);
  ModuleOver m;
  m.B = &env.alg;
  m.wt = reg.wt;
  for (auto& b : a.basis) m.idem.push_back(env.idem_index(b.target, b.source));
  for (int u = 0; u < env.alg.dim(); ++u) {
    auto [x, y] = env.pair_of[u];
    m.act.push_back(reg.left[x].mul(reg.right[y]));
  }
  return m;
}

// Any adapted bimodule as a right env-module (m·(x⊗y) = x·m·y).
inline ModuleOver bimodule_as_env_module(const Bimodule& bm, const EnvAlgebra& env) {
  ModuleOver m;
  m.B = &env.alg;
  m.wt = bm.wt;
  m.idem.assign(bm.dim(), -1);
  for (int i = 0; i < env.n; ++i)
    for (int j = 0; j < env.n; ++j) {
      MatQ proj = bm.left[i].mul(bm.right[j]);
      for (int k = 0; k < bm.dim(); ++k)
        if (proj.get(k, k) == 1) {
          check(m.idem[k] == -1, "bimodule basis not adapted to idempotent blocks");
          m.idem[k] = env.idem_index(i, j);
        }
    }
  for (int k = 0; k < bm.dim(); ++k)
    check(m.idem[k] >= 0, "bimodule basis vector outside every idempotent block");
  for (int u = 0; u < env.alg.dim(); ++u) {
    auto [x, y] = env.pair_of[u];
    m.act.push_back(bm.left[x].mul(bm.right[y]));
  }
  return m;
}

inline MinimalResolution minimal_bimodule_resolution(const GradedAlgebra& a,
                                                     const EnvAlgebra& env, int length) {
  return minimal_resolution(regular_env_module(a, env), length);
}

}  // namespace exhom
