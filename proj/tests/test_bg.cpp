#include <catch2/catch_amalgamated.hpp>

#include "exhom/bg.hpp"

using namespace exhom;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

static GradedAlgebra dual_numbers() {
  return from_quiver({"v"}, {{"v", "v", "x", 1}}, {{{Rat(1), {"x", "x"}}}});
}

static GradedAlgebra cubic_truncation() {
  return from_quiver({"v"}, {{"v", "v", "x", 1}}, {{{Rat(1), {"x", "x", "x"}}}});
}

static GradedAlgebra a2_quiver() {
  return from_quiver({"1", "2"}, {{"1", "2", "a", 1}}, {});
}

// sign flip on the generator of the dual numbers
static AlgebraMorphism flip_x(const GradedAlgebra& a) {
  MatQ m(2, 2);
  m.set(0, 0, 1);
  m.set(1, 1, -1);
  return {&a, m};
}

// idempotent permutation morphism on a product of fields
static AlgebraMorphism perm_morphism(const GradedAlgebra& a, const Perm& p) {
  MatQ m(a.dim(), a.dim());
  for (int x = 0; x < a.dim(); ++x) m.set(p[x], x, 1);
  return {&a, m};
}

// dual numbers with the sign involution as a two-element group action
struct SignedDual {
  GradedAlgebra a = dual_numbers();
  Bimodule m = Bimodule::regular(a);
  FiniteGroup g = cyclic_group(2);
  FiniteGroupAction act;
  SignedDual() {
    MatQ mm(2, 2);
    mm.set(0, 0, 1);
    mm.set(1, 1, -1);
    act = group_action(g, a, m, {flip_x(a)}, {mm}, AlgebraMorphism::identity(a));
  }
};

TEST_CASE("trivial group reproduces the bar complex matrix for matrix") {
  for (int fields : {0, 1}) {
    GradedAlgebra a = fields ? product_of_fields(2) : dual_numbers();
    Bimodule m = Bimodule::regular(a);
    FiniteGroup triv = cyclic_group(1);
    FiniteGroupAction act = trivial_group_action(triv, a, m);
    BGComplex bg = pre_bg_complex(act, m, 3);
    CyclicBarComplex cb = cyclic_bar(a, m, AlgebraMorphism::identity(a), 3);
    REQUIRE(bg.complex.lo == -3);
    REQUIRE(bg.complex.dims == cb.complex.dims);
    for (size_t k = 0; k < cb.complex.diff.size(); ++k)
      REQUIRE(bg.complex.diff[k].equal(cb.complex.diff[k]));
  }
}

TEST_CASE("term dimensions carry one bar fiber per group element") {
  SignedDual sd;
  BGComplex bg = pre_bg_complex(sd.act, sd.m, 2);
  REQUIRE(bg.complex.lo == -2);
  REQUIRE(bg.complex.dims == std::vector<long long>{16, 8, 4});

  GradedAlgebra k3 = product_of_fields(3);
  Bimodule m3 = Bimodule::regular(k3);
  FiniteGroup s3 = symmetric_group(3);
  std::vector<AlgebraMorphism> ag;
  std::vector<MatQ> mg;
  for (auto& p : s3.gens) {
    ag.push_back(perm_morphism(k3, p));
    mg.push_back(ag.back().m);
  }
  FiniteGroupAction act = group_action(s3, k3, m3, ag, mg, AlgebraMorphism::identity(k3));
  BGComplex bg3 = pre_bg_complex(act, m3, 1);
  REQUIRE(bg3.complex.dims == std::vector<long long>{54, 18});
  REQUIRE(bg3.complex.dim(0) == 18);
}

TEST_CASE("hand-built degree -1 differential for the signed dual numbers") {
  SignedDual sd;
  BGComplex bg = pre_bg_complex(sd.act, sd.m, 1);
  // basis of term(-1): (b, u, delta_e) flat e*4 + b*2 + u; term(0): e*2 + u.
  // d(b, u, e) = tau_e(b) u - u b with tau the identity on the first fiber and
  // the sign flip on the second, so the only surviving image is -2x on the
  // flipped fiber at b = x, u = 1.
  MatQ hand(4, 8);
  hand.set(3, 6, -2);
  REQUIRE(bg.complex.diff[0].equal(hand));
}

TEST_CASE("fibers match the twisted bar homology in every degree") {
  SignedDual sd;
  BGComplex bg = pre_bg_complex(sd.act, sd.m, 3);

  GradedAlgebra kk = product_of_fields(2);
  Bimodule mk = Bimodule::regular(kk);
  FiniteGroup z2 = cyclic_group(2);
  AlgebraMorphism sw = perm_morphism(kk, {1, 0});
  FiniteGroupAction actk = group_action(z2, kk, mk, {sw}, {sw.m}, AlgebraMorphism::identity(kk));
  BGComplex bgk = pre_bg_complex(actk, mk, 2);

  GradedAlgebra k3 = product_of_fields(3);
  Bimodule m3 = Bimodule::regular(k3);
  FiniteGroup s3 = symmetric_group(3);
  std::vector<AlgebraMorphism> ag;
  std::vector<MatQ> mg;
  for (auto& p : s3.gens) {
    ag.push_back(perm_morphism(k3, p));
    mg.push_back(ag.back().m);
  }
  FiniteGroupAction act3 = group_action(s3, k3, m3, ag, mg, AlgebraMorphism::identity(k3));
  BGComplex bg3 = pre_bg_complex(act3, m3, 2);

  for (const BGComplex* bgp : {&bg, &bgk, &bg3}) {
    const FiniteGroupAction& act = *bgp->act;
    std::vector<ComplexQ> fibs;
    for (int e = 0; e < act.group->size(); ++e) fibs.push_back(fiber_at(*bgp, e));
    long long nnz_fibers = 0, nnz_full = 0;
    for (auto& dm : bgp->complex.diff) nnz_full += dm.nnz();
    for (int e = 0; e < act.group->size(); ++e) {
      for (auto& dm : fibs[e].diff) nnz_fibers += dm.nnz();
      HochschildTable hh =
          hochschild_homology(*act.A, *act.m, fiber_twist(act, e), bgp->depth - 1);
      for (int n = 0; n + 1 <= bgp->depth; ++n)
        REQUIRE(cohomology(fibs[e], -n).free_rank == hh.dims[n]);
    }
    // the differential is block diagonal: the fibers carry every entry
    REQUIRE(nnz_fibers == nnz_full);
    // and the homology of the whole complex is the sum over the fibers
    for (int d = bgp->complex.lo + 1; d <= 0; ++d) {
      long long total = 0;
      for (auto& fib : fibs) total += cohomology(fib, d).free_rank;
      REQUIRE(cohomology(bgp->complex, d).free_rank == total);
    }
  }
}

TEST_CASE("fiber lookup by permutation rejects outsiders") {
  SignedDual sd;
  BGComplex bg = pre_bg_complex(sd.act, sd.m, 1);
  ComplexQ fib = fiber_at(bg, Perm{1, 0});  // the nontrivial element
  REQUIRE(fib.dims == std::vector<long long>{4, 2});
  REQUIRE_THROWS_AS(fiber_at(bg, Perm{0, 2, 1}), input_error);
}

TEST_CASE("action matrices commute with the differential beyond the generators") {
  GradedAlgebra k3 = product_of_fields(3);
  Bimodule m3 = Bimodule::regular(k3);
  FiniteGroup s3 = symmetric_group(3);
  std::vector<AlgebraMorphism> ag;
  std::vector<MatQ> mg;
  for (auto& p : s3.gens) {
    ag.push_back(perm_morphism(k3, p));
    mg.push_back(ag.back().m);
  }
  FiniteGroupAction act = group_action(s3, k3, m3, ag, mg, AlgebraMorphism::identity(k3));
  BGComplex bg = pre_bg_complex(act, m3, 1);
  FunctionsOnG fog = functions_on_group(s3);
  int g1 = s3.index.at(s3.gens[0]), g2 = s3.index.at(s3.gens[1]);
  int prod = s3.mul[g1][g2];
  REQUIRE(prod != g1);
  REQUIRE(prod != g2);
  MatQ r1 = term_action(act, fog, 1, prod);
  MatQ r0 = term_action(act, fog, 0, prod);
  REQUIRE(bg.complex.diff[0].mul(r1).equal(r0.mul(bg.complex.diff[0])));
}

TEST_CASE("insertion homotopy contracts onto the twisted action difference") {
  GradedAlgebra a = dual_numbers();
  FiniteGroup triv = cyclic_group(1);

  SECTION("the unit gives a zero difference") {
    Bimodule m = Bimodule::regular(a);
    FiniteGroupAction act = trivial_group_action(triv, a, m);
    HomotopyReport rep = verify_homotopy(act, m, a.unit(), 3);
    REQUIRE(rep.zero_difference);
  }
  SECTION("a central generator on the regular bimodule also cancels") {
    Bimodule m = Bimodule::regular(a);
    FiniteGroupAction act = trivial_group_action(triv, a, m);
    HomotopyReport rep = verify_homotopy(act, m, Elem{{1, Rat(1)}}, 3);
    REQUIRE(rep.zero_difference);
  }
  SECTION("a left twist on the bimodule makes the difference visible") {
    Bimodule m = Bimodule::regular(a).twist_left(flip_x(a));
    FiniteGroupAction act = trivial_group_action(triv, a, m);
    HomotopyReport rep = verify_homotopy(act, m, Elem{{1, Rat(1)}}, 3);
    REQUIRE_FALSE(rep.zero_difference);
  }
  SECTION("a global twist flips the sign of the left term") {
    Bimodule m = Bimodule::regular(a);
    FiniteGroupAction act = group_action(triv, a, m, {}, {}, flip_x(a));
    HomotopyReport rep = verify_homotopy(act, m, Elem{{1, Rat(1)}}, 3);
    REQUIRE_FALSE(rep.zero_difference);
  }
  SECTION("elements moved by the group are rejected") {
    SignedDual sd;
    REQUIRE_THROWS_MATCHES(verify_homotopy(sd.act, sd.m, Elem{{1, Rat(1)}}, 2), input_error,
                           MessageMatches(ContainsSubstring("invariant")));
  }
  SECTION("non-central elements are rejected") {
    GradedAlgebra p = a2_quiver();
    Bimodule m = Bimodule::regular(p);
    FiniteGroupAction act = trivial_group_action(triv, p, m);
    REQUIRE_THROWS_MATCHES(verify_homotopy(act, m, Elem{{2, Rat(1)}}, 2), input_error,
                           MessageMatches(ContainsSubstring("central")));
  }
}

TEST_CASE("global sections of the trivial action are the whole complex") {
  GradedAlgebra a = dual_numbers();
  Bimodule m = Bimodule::regular(a);
  FiniteGroup triv = cyclic_group(1);
  FiniteGroupAction act = trivial_group_action(triv, a, m);
  BGComplex bg = pre_bg_complex(act, m, 3);
  GlobalSections gs = global_sections(bg);
  REQUIRE(gs.complex.dims == bg.complex.dims);
  HochschildTable hh = hochschild_homology(a, m, AlgebraMorphism::identity(a), 2);
  for (int n = 0; n <= 2; ++n) REQUIRE(gs.h[3 - n] == hh.dims[n]);
}

TEST_CASE("invariant sections of the signed dual numbers") {
  SignedDual sd;
  BGComplex bg = pre_bg_complex(sd.act, sd.m, 2);
  GlobalSections gs = global_sections(bg);
  // fiberwise the degree zero homology is the regular fiber plus the one
  // dimensional flipped fiber; the sign action leaves one line in each
  REQUIRE(gs.h.back() == 2);
}

TEST_CASE("inertia counts match the orbit enumeration") {
  SECTION("swap of two points") {
    InertiaReport rep = verify_inertia(cyclic_group(2), 2, {{1, 0}});
    REQUIRE(rep.sections_h0 == 1);
    REQUIRE(rep.orbit_count == 1);
  }
  SECTION("two-element group fixing one point") {
    InertiaReport rep = verify_inertia(cyclic_group(2), 1, {{0}});
    REQUIRE(rep.sections_h0 == 2);
  }
  SECTION("trivial group sees the whole set") {
    InertiaReport rep = verify_inertia(cyclic_group(1), 3, {});
    REQUIRE(rep.sections_h0 == 3);
  }
  SECTION("natural symmetric action") {
    FiniteGroup s3 = symmetric_group(3);
    InertiaReport rep = verify_inertia(s3, 3, s3.gens);
    REQUIRE(rep.sections_h0 == 2);
  }
  SECTION("wrong generator count is rejected") {
    REQUIRE_THROWS_AS(verify_inertia(symmetric_group(3), 3, {{0, 1, 2}}), input_error);
  }
}

TEST_CASE("bounded model for a finite quadratic-dual resolution") {
  FiniteGroup triv = cyclic_group(1);

  SECTION("path algebra of one arrow has a length one model") {
    GradedAlgebra p = a2_quiver();
    Bimodule m = Bimodule::regular(p);
    FiniteGroupAction act = trivial_group_action(triv, p, m);
    BoundedTraceModel bt = bounded_trace_model(act, m, 6);
    REQUIRE(bt.length == 1);
    REQUIRE_FALSE(bt.truncated);
    REQUIRE(bt.complex.lo == -1);
    REQUIRE(cohomology(bt.complex, 0).free_rank == 2);
    REQUIRE(cohomology(bt.complex, -1).free_rank == 0);
    Amplitude amp = amplitude(bt.complex);
    REQUIRE_FALSE(amp.empty);
    REQUIRE(amp.lo == 0);
    REQUIRE(amp.hi == 0);
  }
  SECTION("two field factors give a degree zero model") {
    GradedAlgebra kk = product_of_fields(2);
    Bimodule m = Bimodule::regular(kk);
    FiniteGroupAction act = trivial_group_action(triv, kk, m);
    BoundedTraceModel bt = bounded_trace_model(act, m, 4);
    REQUIRE(bt.length == 0);
    REQUIRE(bt.complex.dims == std::vector<long long>{2});
    REQUIRE(cohomology(bt.complex, 0).free_rank == 2);
  }
  SECTION("the swapped fiber contributes an empty corner") {
    GradedAlgebra kk = product_of_fields(2);
    Bimodule m = Bimodule::regular(kk);
    FiniteGroup z2 = cyclic_group(2);
    AlgebraMorphism sw = perm_morphism(kk, {1, 0});
    FiniteGroupAction act = group_action(z2, kk, m, {sw}, {sw.m}, AlgebraMorphism::identity(kk));
    BoundedTraceModel bt = bounded_trace_model(act, m, 4);
    REQUIRE(bt.complex.dims == std::vector<long long>{2});
    REQUIRE(cohomology(bt.complex, 0).free_rank == 2);
  }
  SECTION("the sign action at the cap agrees with the bar construction") {
    SignedDual sd;
    REQUIRE_THROWS_MATCHES(bounded_trace_model(sd.act, sd.m, 3), input_error,
                           MessageMatches(ContainsSubstring("is_koszul")));
    BoundedTraceModel bt = bounded_trace_model(sd.act, sd.m, 3, true);
    REQUIRE(bt.truncated);
    REQUIRE_FALSE(bt.warning.empty());
    REQUIRE(bt.complex.dims == std::vector<long long>{4, 4, 4, 4});
    Amplitude amp = amplitude(bt.complex);
    REQUIRE(amp.hi <= 0);
    REQUIRE(amp.lo >= -3);
  }
  SECTION("a cubic relation is rejected with a pointer to the certificate") {
    GradedAlgebra c3 = cubic_truncation();
    Bimodule m = Bimodule::regular(c3);
    FiniteGroupAction act = trivial_group_action(triv, c3, m);
    REQUIRE_THROWS_MATCHES(bounded_trace_model(act, m, 4), input_error,
                           MessageMatches(ContainsSubstring("is_koszul")));
  }
}

TEST_CASE("amplitude of degenerate complexes") {
  ComplexQ zero;
  zero.lo = 0;
  zero.dims = {0};
  REQUIRE(amplitude(zero).empty);

  ComplexQ exact;
  exact.lo = -1;
  exact.dims = {1, 1};
  exact.diff.push_back(MatQ::identity(1));
  REQUIRE(amplitude(exact).empty);

  SignedDual sd;
  BGComplex bg = pre_bg_complex(sd.act, sd.m, 2);
  Amplitude amp = amplitude(bg.complex);
  REQUIRE_FALSE(amp.empty);
  REQUIRE(amp.hi <= 0);
  REQUIRE(amp.lo >= bg.complex.lo);
}
