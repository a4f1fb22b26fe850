#include <catch2/catch_amalgamated.hpp>

#include "exhom/hochschild.hpp"

using namespace exhom;

static GradedAlgebra dual_numbers() {
  return from_quiver({"v"}, {{"v", "v", "x", 1}}, {{{Rat(1), {"x", "x"}}}});
}

static GradedAlgebra a2_quiver() {
  return from_quiver({"1", "2"}, {{"1", "2", "a", 1}}, {});
}

static GradedAlgebra a3_quiver() {
  return from_quiver({"1", "2", "3"}, {{"1", "2", "a", 1}, {"2", "3", "b", 1}}, {});
}

// the swap of the two coordinate idempotents of k×k
static AlgebraMorphism swap_two_fields(const GradedAlgebra& a) {
  MatQ m(2, 2);
  m.set(0, 1, 1);
  m.set(1, 0, 1);
  AlgebraMorphism f{&a, m};
  f.validate();
  return f;
}

// sign flip on the generator of the dual numbers
static AlgebraMorphism flip_x(const GradedAlgebra& a) {
  MatQ m(2, 2);
  m.set(0, 0, 1);
  m.set(1, 1, -1);
  AlgebraMorphism f{&a, m};
  f.validate();
  return f;
}

static std::map<int, long long> wmap(std::initializer_list<std::pair<int, long long>> l) {
  return std::map<int, long long>(l.begin(), l.end());
}

TEST_CASE("cyclic bar complex of the ground field") {
  GradedAlgebra a = product_of_fields(1);
  Bimodule m = Bimodule::regular(a);
  AlgebraMorphism id = AlgebraMorphism::identity(a);
  CyclicBarComplex cb = cyclic_bar(a, m, id, 3);
  REQUIRE(cb.complex.lo == -3);
  REQUIRE(cb.complex.dims == std::vector<long long>{1, 1, 1, 1});
  REQUIRE(cohomology(cb.complex, 0).free_rank == 1);
  REQUIRE(cohomology(cb.complex, -1).free_rank == 0);
  REQUIRE(cohomology(cb.complex, -2).free_rank == 0);
}

TEST_CASE("faces assemble the stored differential and satisfy the degeneracy identities") {
  // hand-built faces on two-leg tuples: the wrap-around face sends the first
  // leg into the module, the interior face multiplies legs in reversed order,
  // the last face acts on the module from the right
  auto hand_faces = [](const GradedAlgebra& a, const Bimodule& m, const AlgebraMorphism& f) {
    int D = a.dim(), M = m.dim();
    MatQ d0(D * M, D * D * M), d1(D * M, D * D * M), d2(D * M, D * D * M);
    for (int b1 = 0; b1 < D; ++b1)
      for (int b2 = 0; b2 < D; ++b2)
        for (int u = 0; u < M; ++u) {
          int src = (b1 * D + b2) * M + u;
          for (int z = 0; z < D; ++z) {
            Rat c = f.m.get(z, b1);
            if (c == 0) continue;
            for (int u2 = 0; u2 < M; ++u2) {
              Rat v = m.left[z].get(u2, u);
              if (v != 0) d0.add_to(b2 * M + u2, src, c * v);
            }
          }
          for (auto& [z, c] : a.mul_basis(b2, b1)) d1.add_to(z * M + u, src, c);
          for (int u2 = 0; u2 < M; ++u2) {
            Rat v = m.right[b2].get(u2, u);
            if (v != 0) d2.add_to(b1 * M + u2, src, v);
          }
        }
    return std::vector<MatQ>{d0, d1, d2};
  };
  // unit insertions: before the first leg, between the legs, before the module
  auto hand_degeneracy = [](const GradedAlgebra& a, const Bimodule& m, int slot) {
    int D = a.dim(), M = m.dim();
    MatQ s(D * D * M, D * M);
    for (int b = 0; b < D; ++b)
      for (int u = 0; u < M; ++u)
        for (int e = 0; e < a.num_idem; ++e) {
          int dst = (slot == 0) ? (e * D + b) * M + u : (b * D + e) * M + u;
          s.add_to(dst, b * M + u, 1);
        }
    return s;
  };

  for (bool twisted : {false, true}) {
    GradedAlgebra a = product_of_fields(2);
    Bimodule m = Bimodule::regular(a);
    AlgebraMorphism f =
        twisted ? swap_two_fields(a) : AlgebraMorphism::identity(a);
    CyclicBarComplex cb = cyclic_bar(a, m, f, 2);
    auto d = hand_faces(a, m, f);
    REQUIRE(cb.complex.diff[0].equal(d[0].sub(d[1]).add(d[2])));
    MatQ s0 = hand_degeneracy(a, m, 0), s1 = hand_degeneracy(a, m, 1);
    MatQ id = MatQ::identity(a.dim() * m.dim());
    REQUIRE(d[0].mul(s0).equal(id));  // wrap after inserting a unit up front
    REQUIRE(d[1].mul(s0).equal(id));
    REQUIRE(d[1].mul(s1).equal(id));
    REQUIRE(d[2].mul(s1).equal(id));  // last face after inserting a unit at the end
  }

  // reversed interior product pinned on a noncommutative algebra
  GradedAlgebra a = a2_quiver();
  Bimodule m = Bimodule::regular(a);
  AlgebraMorphism id = AlgebraMorphism::identity(a);
  CyclicBarComplex cb = cyclic_bar(a, m, id, 2);
  auto d = hand_faces(a, m, id);
  REQUIRE(cb.complex.diff[0].equal(d[0].sub(d[1]).add(d[2])));
}

TEST_CASE("homology of the dual numbers") {
  GradedAlgebra a = dual_numbers();
  Bimodule m = Bimodule::regular(a);

  SECTION("untwisted") {
    HochschildTable t = hochschild_homology(a, m, AlgebraMorphism::identity(a), 4);
    REQUIRE(t.dims == std::vector<long long>{2, 1, 1, 1, 1});
    REQUIRE(t.by_weight[0] == wmap({{0, 1}, {1, 1}}));
    REQUIRE(t.by_weight[1] == wmap({{1, 1}}));
    REQUIRE(t.by_weight[2] == wmap({{3, 1}}));
    REQUIRE(t.by_weight[3] == wmap({{3, 1}}));
    REQUIRE(t.by_weight[4] == wmap({{5, 1}}));
  }
  SECTION("sign-flip twist") {
    AlgebraMorphism f = flip_x(a);
    Bimodule tw = m.twist_left(f);
    tw.validate();  // the twisted left action is still a bimodule structure
    HochschildTable t = hochschild_homology(a, m, f, 4);
    REQUIRE(t.dims == std::vector<long long>{1, 1, 1, 1, 1});
    REQUIRE(t.by_weight[0] == wmap({{0, 1}}));
    REQUIRE(t.by_weight[1] == wmap({{2, 1}}));
    REQUIRE(t.by_weight[2] == wmap({{2, 1}}));
    REQUIRE(t.by_weight[3] == wmap({{4, 1}}));
    REQUIRE(t.by_weight[4] == wmap({{4, 1}}));
  }
}

TEST_CASE("homology of a product of two fields") {
  GradedAlgebra a = product_of_fields(2);
  Bimodule m = Bimodule::regular(a);

  SECTION("untwisted: one class per coordinate") {
    // in the basic presentation of the group algebra of the two-element
    // group this counts its two conjugacy classes
    HochschildTable t = hochschild_homology(a, m, AlgebraMorphism::identity(a), 3);
    REQUIRE(t.dims == std::vector<long long>{2, 0, 0, 0});
    REQUIRE(t.by_weight[0] == wmap({{0, 2}}));
  }
  SECTION("swap twist: the graph of the swap misses the diagonal") {
    HochschildTable t = hochschild_homology(a, m, swap_two_fields(a), 3);
    REQUIRE(t.dims == std::vector<long long>{0, 0, 0, 0});
    for (auto& bw : t.by_weight) REQUIRE(bw.empty());
  }
}

TEST_CASE("homology of path algebras") {
  for (auto* make : {a2_quiver, a3_quiver}) {
    GradedAlgebra a = make();
    Bimodule m = Bimodule::regular(a);
    HochschildTable t = hochschild_homology(a, m, AlgebraMorphism::identity(a), 2);
    REQUIRE(t.dims == std::vector<long long>{a.num_idem, 0, 0});
    REQUIRE(t.by_weight[0] == wmap({{0, a.num_idem}}));
  }
}

TEST_CASE("resolving the diagonal bimodule") {
  SECTION("semisimple: length zero") {
    GradedAlgebra a = product_of_fields(2);
    DiagonalResolutionReport r = resolve_diagonal_bimodule(a, 3);
    REQUIRE(r.finished);
    REQUIRE(r.length == 0);
    REQUIRE(r.warning.empty());
    REQUIRE(r.res.terms[0].gens.size() == 2);
  }
  SECTION("two-vertex path algebra: length one") {
    GradedAlgebra a = a2_quiver();
    DiagonalResolutionReport r = resolve_diagonal_bimodule(a, 3);
    REQUIRE(r.finished);
    REQUIRE(r.length == 1);
    REQUIRE(r.res.terms[0].gens.size() == 2);
    REQUIRE(r.res.terms[1].gens.size() == 1);
    REQUIRE(r.res.terms[1].gens[0].second == 1);
  }
  SECTION("dual numbers: one syzygy per degree, cut by the cap") {
    GradedAlgebra a = dual_numbers();
    DiagonalResolutionReport r = resolve_diagonal_bimodule(a, 4);
    REQUIRE_FALSE(r.finished);
    REQUIRE_FALSE(r.warning.empty());
    REQUIRE(r.length == 4);
    for (int d = 0; d <= 4; ++d) {
      REQUIRE(r.res.terms[d].gens.size() == 1);
      REQUIRE(r.res.terms[d].gens[0].second == d);
    }
  }
}

TEST_CASE("trace classes of projective module endomorphisms") {
  SECTION("identity of the regular module is the class of the unit") {
    GradedAlgebra a = dual_numbers();
    ModuleOver reg = regular_right_module(a);
    TraceClass c = hochschild_class(a, reg, MatQ::identity(2));
    REQUIRE(c.h0_dim == 2);
    REQUIRE(c.rep == std::vector<Rat>{Rat(1), Rat(0)});

    // multiplication by the generator from the left is a module map
    TraceClass cx = hochschild_class(a, reg, a.left_mult_matrix(1));
    REQUIRE(cx.rep == std::vector<Rat>{Rat(0), Rat(1)});
  }
  SECTION("coordinate summand of a product of fields") {
    GradedAlgebra a = product_of_fields(2);
    FreeModule p = free_module(a, {{1, 0}});
    TraceClass c = hochschild_class(a, p.mod, MatQ::identity(1));
    REQUIRE(c.h0_dim == 2);
    REQUIRE(c.rep == std::vector<Rat>{Rat(0), Rat(1)});
    TraceClass z = hochschild_class(a, p.mod, MatQ(1, 1));
    REQUIRE(z.rep == std::vector<Rat>{Rat(0), Rat(0)});
  }
  SECTION("additive in direct sums") {
    GradedAlgebra a = a2_quiver();
    FreeModule p = free_module(a, {{0, 0}});
    FreeModule q = free_module(a, {{1, 0}});
    TraceClass cp = hochschild_class(a, p.mod, MatQ::identity(p.mod.dim()));
    TraceClass cq = hochschild_class(a, q.mod, MatQ::identity(q.mod.dim()));
    // p ⊕ q is the regular module; its identity class is the sum
    ModuleOver reg = regular_right_module(a);
    TraceClass cr = hochschild_class(a, reg, MatQ::identity(reg.dim()));
    std::vector<Rat> sum(a.dim(), Rat(0));
    for (int i = 0; i < a.dim(); ++i) sum[i] = cp.rep[i] + cq.rep[i];
    REQUIRE(cr.rep == sum);

    // generic direct sum with block-diagonal endomorphism
    ModuleOver ds;
    ds.B = &a;
    int dp = p.mod.dim(), dq = q.mod.dim();
    ds.wt = p.mod.wt;
    ds.wt.insert(ds.wt.end(), q.mod.wt.begin(), q.mod.wt.end());
    ds.idem = p.mod.idem;
    ds.idem.insert(ds.idem.end(), q.mod.idem.begin(), q.mod.idem.end());
    for (int b = 0; b < a.dim(); ++b) {
      MatQ act(dp + dq, dp + dq);
      for (int i = 0; i < dp; ++i)
        for (auto& [j, v] : p.mod.act[b].rows[i]) act.set(i, j, v);
      for (int i = 0; i < dq; ++i)
        for (auto& [j, v] : q.mod.act[b].rows[i]) act.set(dp + i, dp + j, v);
      ds.act.push_back(std::move(act));
    }
    ds.validate();
    MatQ theta(dp + dq, dp + dq);
    for (int i = 0; i < dp; ++i) theta.set(i, i, 1);  // id ⊕ 0
    TraceClass cd = hochschild_class(a, ds, theta);
    REQUIRE(cd.rep == cp.rep);
  }
  SECTION("invariant under conjugation") {
    GradedAlgebra a = a2_quiver();
    ModuleOver reg = regular_right_module(a);
    // u = left multiplication by 1 + arrow, inverse by 1 - arrow
    MatQ u = MatQ::identity(3).add(a.left_mult_matrix(2));
    MatQ uinv = MatQ::identity(3).sub(a.left_mult_matrix(2));
    REQUIRE(u.mul(uinv).equal(MatQ::identity(3)));
    MatQ theta = a.left_mult_matrix(0);
    TraceClass c1 = hochschild_class(a, reg, theta);
    TraceClass c2 = hochschild_class(a, reg, u.mul(theta).mul(uinv));
    REQUIRE(c1.rep == c2.rep);
    REQUIRE(c1.rep == std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
    // the quotient the class lives in matches degree-zero homology
    Bimodule m = Bimodule::regular(a);
    HochschildTable t = hochschild_homology(a, m, AlgebraMorphism::identity(a), 0);
    REQUIRE(c1.h0_dim == t.dims[0]);
  }
  SECTION("rejects what it cannot trace") {
    GradedAlgebra a = dual_numbers();
    ModuleOver reg = regular_right_module(a);
    MatQ bad(2, 2);
    bad.set(0, 1, 1);  // sends the generator to the unit: not a module map
    REQUIRE_THROWS_AS(hochschild_class(a, reg, bad), input_error);
    ModuleOver simple = ModuleOver::simple(a, 0);
    REQUIRE_THROWS_AS(hochschild_class(a, simple, MatQ::identity(1)), input_error);
  }
}
