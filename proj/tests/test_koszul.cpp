#include <catch2/catch_amalgamated.hpp>

#include "exhom/koszul.hpp"

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

static GradedAlgebra truncated_poly_cubed() {
  return from_quiver({"v"}, {{"v", "v", "x", 1}}, {{{Rat(1), {"x", "x", "x"}}}});
}

static GradedAlgebra exterior_two_vars() {
  return from_quiver({"v"}, {{"v", "v", "x", 1}, {"v", "v", "y", 1}},
                     {{{Rat(1), {"x", "x"}}},
                      {{Rat(1), {"y", "y"}}},
                      {{Rat(1), {"x", "y"}}, {Rat(1), {"y", "x"}}}});
}

static std::vector<long long> dims_of(const ComplexQ& c) { return c.dims; }

static bool vanishes_above(const ComplexQ& c, int lowest) {
  for (int d = lowest; d <= c.hi(); ++d)
    if (cohomology(c, d).free_rank != 0) return false;
  return true;
}

TEST_CASE("bar complex of the ground field") {
  BarComplex bc = bar_complex(product_of_fields(1), 2);
  REQUIRE(bc.complex.lo == -2);
  REQUIRE(dims_of(bc.complex) == std::vector<long long>{1, 1, 1, 1});
  REQUIRE(vanishes_above(bc.complex, -1));
}

TEST_CASE("bar complex of the dual numbers") {
  BarComplex bc = bar_complex(dual_numbers(), 3);
  REQUIRE(dims_of(bc.complex) == std::vector<long long>{32, 16, 8, 4, 2});
  REQUIRE(vanishes_above(bc.complex, -2));
}

TEST_CASE("bar complex of a product of two fields") {
  BarComplex bc = bar_complex(product_of_fields(2), 2);
  REQUIRE(dims_of(bc.complex) == std::vector<long long>{16, 8, 4, 2});
  REQUIRE(vanishes_above(bc.complex, -1));
}

TEST_CASE("projective bar equals the full bar over a single idempotent") {
  GradedAlgebra a = dual_numbers();
  BarComplex full = bar_complex(a, 3);
  BarComplex proj = projective_bar_complex(a, 3);
  REQUIRE(full.complex.dims == proj.complex.dims);
  for (size_t k = 0; k < full.complex.diff.size(); ++k)
    REQUIRE(full.complex.diff[k].equal(proj.complex.diff[k]));
}

TEST_CASE("projective bar of a product of fields") {
  // composable chains stay inside one idempotent: two chains per length
  BarComplex bc = projective_bar_complex(product_of_fields(2), 3);
  REQUIRE(dims_of(bc.complex) == std::vector<long long>{2, 2, 2, 2, 2});
  REQUIRE(vanishes_above(bc.complex, -2));
}

TEST_CASE("projective bar of the two vertex path algebra") {
  GradedAlgebra a = a2_quiver();
  BarComplex proj = projective_bar_complex(a, 3);
  REQUIRE(dims_of(proj.complex) == std::vector<long long>{7, 6, 5, 4, 3});
  REQUIRE(vanishes_above(proj.complex, -2));
  // same cohomology as the full bar where both are visible
  BarComplex full = bar_complex(a, 3);
  for (int d = -2; d <= 1; ++d)
    REQUIRE(cohomology(full.complex, d).free_rank ==
            cohomology(proj.complex, d).free_rank);
}

TEST_CASE("normalized bar of the dual numbers") {
  BarComplex nb = normalized_bar(dual_numbers(), 3);
  REQUIRE(dims_of(nb.complex) == std::vector<long long>{4, 4, 4, 4, 2});
  REQUIRE(vanishes_above(nb.complex, -2));
}

TEST_CASE("normalized bar of a product of fields vanishes") {
  BarComplex nb = normalized_bar(product_of_fields(2), 2);
  REQUIRE(dims_of(nb.complex) == std::vector<long long>{0, 0, 2, 2});
  REQUIRE(vanishes_above(nb.complex, -1));
}

TEST_CASE("normalized bar of the two vertex path algebra") {
  // the only positive-weight interior chain is the arrow itself, flanked by
  // the idempotents its junctions dictate
  GradedAlgebra a = a2_quiver();
  BarComplex nb = normalized_bar(a, 2);
  REQUIRE(dims_of(nb.complex) == std::vector<long long>{0, 1, 4, 3});
  REQUIRE(vanishes_above(nb.complex, -1));
  BarComplex proj = projective_bar_complex(a, 2);
  for (int d = -1; d <= 1; ++d)
    REQUIRE(cohomology(nb.complex, d).free_rank ==
            cohomology(proj.complex, d).free_rank);
}

TEST_CASE("dual spaces of the dual numbers never vanish") {
  GradedAlgebra a = dual_numbers();
  QuadraticDualSpaces q = quadratic_dual_spaces(a, 5);
  for (int n = 0; n <= 5; ++n) REQUIRE(q.dim(n, 0, 0) == 1);
  REQUIRE(q.length == 5);
  REQUIRE_FALSE(q.vanished);
}

TEST_CASE("dual spaces of the cubic truncation stop at level one") {
  // x⊗x is not annihilated by the merge, so there is no quadratic level
  QuadraticDualSpaces q = quadratic_dual_spaces(truncated_poly_cubed(), 4);
  REQUIRE(q.dim(1, 0, 0) == 1);
  REQUIRE(q.total_dim(2) == 0);
  REQUIRE(q.length == 1);
  REQUIRE(q.vanished);
}

TEST_CASE("dual spaces of the two vertex path algebra") {
  QuadraticDualSpaces q = quadratic_dual_spaces(a2_quiver(), 4);
  REQUIRE(q.total_dim(1) == 1);
  REQUIRE(q.dim(1, 1, 0) == 1);  // the arrow maps E_0 into E_1
  REQUIRE(q.total_dim(2) == 0);
  REQUIRE(q.length == 1);
  REQUIRE(q.vanished);
}

TEST_CASE("dual spaces of a product of fields") {
  QuadraticDualSpaces q = quadratic_dual_spaces(product_of_fields(2), 3);
  REQUIRE(q.total_dim(0) == 2);
  REQUIRE(q.total_dim(1) == 0);
  REQUIRE(q.length == 0);
  REQUIRE(q.vanished);
}

TEST_CASE("dual spaces of the exterior algebra grow like polynomials") {
  QuadraticDualSpaces q = quadratic_dual_spaces(exterior_two_vars(), 4);
  for (int n = 0; n <= 4; ++n) REQUIRE(q.total_dim(n) == n + 1);
  REQUIRE_FALSE(q.vanished);
}

TEST_CASE("koszul complex of the dual numbers at a cap") {
  KoszulComplex kc = koszul_complex(dual_numbers(), 4);
  REQUIRE(kc.truncated);
  REQUIRE_FALSE(kc.warning.empty());
  REQUIRE(kc.length == 4);
  REQUIRE(dims_of(kc.complex) == std::vector<long long>{4, 4, 4, 4, 4, 2});
}

TEST_CASE("koszul complex of the two vertex path algebra") {
  KoszulComplex kc = koszul_complex(a2_quiver(), 6);
  REQUIRE_FALSE(kc.truncated);
  REQUIRE(kc.length == 1);
  REQUIRE(dims_of(kc.complex) == std::vector<long long>{1, 4, 3});
}

TEST_CASE("koszul complex of a product of fields sits in degree zero") {
  KoszulComplex kc = koszul_complex(product_of_fields(2), 4);
  REQUIRE(kc.length == 0);
  REQUIRE(dims_of(kc.complex) == std::vector<long long>{2, 2});
}

TEST_CASE("koszul acyclicity certificates") {
  SECTION("dual numbers, truncated") {
    KosAcyclicReport r = verify_kos_acyclic(dual_numbers(), 4);
    REQUIRE(r.acyclic);
    REQUIRE(r.truncated);
  }
  SECTION("two vertex path algebra, full") {
    KosAcyclicReport r = verify_kos_acyclic(a2_quiver(), 6);
    REQUIRE(r.acyclic);
    REQUIRE_FALSE(r.truncated);
    REQUIRE(r.h_dims.count(-1) == 1);  // the whole finite complex was checked
  }
  SECTION("three vertex path algebra, full") {
    KosAcyclicReport r = verify_kos_acyclic(a3_quiver(), 6);
    REQUIRE(r.acyclic);
    KoszulComplex kc = koszul_complex(a3_quiver(), 6);
    REQUIRE(dims_of(kc.complex) == std::vector<long long>{4, 10, 6});
  }
  SECTION("product of fields, trivially") {
    REQUIRE(verify_kos_acyclic(product_of_fields(2), 3).acyclic);
  }
  SECTION("exterior algebra, truncated") {
    KosAcyclicReport r = verify_kos_acyclic(exterior_two_vars(), 4);
    REQUIRE(r.acyclic);
    REQUIRE(r.truncated);
  }
  SECTION("cubic truncation fails next to the augmentation") {
    KosAcyclicReport r = verify_kos_acyclic(truncated_poly_cubed(), 6);
    REQUIRE_FALSE(r.acyclic);
    REQUIRE(r.first_failing_degree == -1);
    REQUIRE(r.h_dims.at(-1) == 3);  // the missed cubic syzygy and its shifts
    REQUIRE(r.h_dims.at(0) == 0);
    REQUIRE(r.h_dims.at(1) == 0);
  }
}

TEST_CASE("koszul length matches the top nonzero ext degree") {
  for (auto* make : {a2_quiver, a3_quiver}) {
    GradedAlgebra a = make();
    KoszulComplex kc = koszul_complex(a, 8);
    REQUIRE_FALSE(kc.truncated);
    int top = 0;
    for (int i = 0; i < a.num_idem; ++i) {
      ExtTable t = ext_simples(a, i, 8);
      for (int d = 0; d <= 8; ++d)
        if (!t.ext[d].empty()) top = std::max(top, d);
    }
    REQUIRE(kc.length == top);
  }
  REQUIRE(koszul_complex(product_of_fields(2), 4).length == 0);
}

TEST_CASE("ext dimensions of simple pairs carry their weights") {
  SECTION("dual numbers: one class per degree, weight equals degree") {
    auto e = ext_simples(dual_numbers(), 0, 0, 5);
    for (int n = 0; n <= 5; ++n) {
      REQUIRE(e[n].size() == 1);
      REQUIRE(e[n].at(n) == 1);
    }
  }
  SECTION("cubic truncation: the degree-two class sits in weight three") {
    auto e = ext_simples(truncated_poly_cubed(), 0, 0, 2);
    REQUIRE(e[2].size() == 1);
    REQUIRE(e[2].at(3) == 1);
  }
  SECTION("two vertex path algebra") {
    auto e10 = ext_simples(a2_quiver(), 1, 0, 3);
    REQUIRE(e10[0].empty());
    REQUIRE(e10[1] == std::map<int, int>{{1, 1}});
    REQUIRE(e10[2].empty());
    auto e00 = ext_simples(a2_quiver(), 0, 0, 3);
    REQUIRE(e00[0] == std::map<int, int>{{0, 1}});
    REQUIRE(e00[1].empty());
  }
}

TEST_CASE("koszulity certificates") {
  REQUIRE(is_koszul(dual_numbers(), 5).koszul);
  REQUIRE(is_koszul(a2_quiver(), 5).koszul);
  REQUIRE(is_koszul(a3_quiver(), 5).koszul);
  REQUIRE(is_koszul(exterior_two_vars(), 4).koszul);

  KoszulCertificate c = is_koszul(truncated_poly_cubed(), 4);
  REQUIRE_FALSE(c.koszul);
  REQUIRE(c.fail_n == 2);
  REQUIRE(c.fail_internal_weight == 3);
  REQUIRE(c.fail_twist_weight == -3);
  REQUIRE(c.fail_i == 0);
  REQUIRE(c.fail_j == 0);
}

TEST_CASE("dual space dimensions match ext dimensions") {
  REQUIRE(verify_dual_ext(dual_numbers(), 5).match);
  REQUIRE(verify_dual_ext(a2_quiver(), 4).match);
  REQUIRE(verify_dual_ext(a3_quiver(), 4).match);
  REQUIRE(verify_dual_ext(product_of_fields(2), 3).match);

  DualExtReport r = verify_dual_ext(exterior_two_vars(), 4);
  REQUIRE(r.match);
  for (int n = 0; n <= 4; ++n) {
    auto [dual, ext] = r.dims[n].at({0, 0});
    REQUIRE(dual == n + 1);
    REQUIRE(ext == n + 1);
  }
}

TEST_CASE("contracting the normalized bar against simples recovers the dual") {
  // H^{-n} of the two-sided contraction must be pure of weight n with the
  // dimension of the matching dual block, in every fully visible degree
  auto check_pair = [](const GradedAlgebra& a, int i, int j, int depth) {
    QuadraticDualSpaces q = quadratic_dual_spaces(a, depth);
    ContractionComplex cc = simple_contraction_complex(a, i, j, depth);
    auto h = contraction_cohomology(a, cc);
    for (int n = 0; n + 1 <= depth; ++n) {
      long long want = q.dim(n, i, j);
      if (want == 0) {
        REQUIRE(h[n].empty());
      } else {
        REQUIRE(h[n] == std::map<int, long long>{{n, want}});
      }
    }
  };
  GradedAlgebra a2 = a2_quiver();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) check_pair(a2, i, j, 3);
  GradedAlgebra a3 = a3_quiver();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) check_pair(a3, i, j, 3);
  check_pair(dual_numbers(), 0, 0, 4);
  check_pair(exterior_two_vars(), 0, 0, 4);
}

TEST_CASE("bar variants agree in cohomology where visible") {
  for (auto* make : {dual_numbers, a2_quiver}) {
    GradedAlgebra a = make();
    BarComplex full = bar_complex(a, 3);
    BarComplex proj = projective_bar_complex(a, 3);
    BarComplex norm = normalized_bar(a, 3);
    for (int d = -2; d <= 1; ++d) {
      long long hf = cohomology(full.complex, d).free_rank;
      REQUIRE(hf == cohomology(proj.complex, d).free_rank);
      REQUIRE(hf == cohomology(norm.complex, d).free_rank);
    }
  }
}
