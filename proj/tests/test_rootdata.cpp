#include <catch2/catch_amalgamated.hpp>

#include "exhom/rootdata.hpp"

using namespace exhom;

namespace {

CartanType ct(const std::string& s) { return parse_cartan_type(s); }

ZPoly zp(std::initializer_list<long long> cs) {
  ZPoly p;
  for (long long c : cs) p.push_back(c);
  return poly_trim(p);
}

std::vector<Int> wt(std::initializer_list<long long> cs) {
  std::vector<Int> w;
  for (long long c : cs) w.push_back(c);
  return w;
}

std::vector<long long> dims_of(const std::string& type, const Parabolic& p, const Parabolic& q) {
  RootSystem rs = root_system(ct(type));
  return weight_shear_cohomology(rs, p, q);
}

}  // namespace

TEST_CASE("Cartan types parse and print") {
  CartanType a2 = ct("A2");
  REQUIRE(a2.factors.size() == 1);
  REQUIRE(a2.factors[0].family == 'A');
  REQUIRE(a2.factors[0].rank == 2);
  REQUIRE(a2.torus_rank == 0);
  REQUIRE(a2.rank() == 2);

  CartanType big = ct("B3xA1xT2");
  REQUIRE(big.factors.size() == 2);
  REQUIRE(big.semisimple_rank() == 4);
  REQUIRE(big.torus_rank == 2);
  REQUIRE(big.rank() == 6);
  REQUIRE(cartan_type_str(big) == "B3xA1xT2");

  REQUIRE(cartan_type_str(ct("T3")) == "T3");
  REQUIRE(parse_cartan_type("T0").rank() == 0);

  REQUIRE_THROWS_AS(parse_cartan_type(""), input_error);
  REQUIRE_THROWS_AS(parse_cartan_type("H3"), input_error);
  REQUIRE_THROWS_AS(parse_cartan_type("A0"), input_error);
  REQUIRE_THROWS_AS(parse_cartan_type("E9"), input_error);
  REQUIRE_THROWS_AS(parse_cartan_type("B1"), input_error);
  REQUIRE_THROWS_AS(parse_cartan_type("D2"), input_error);
  REQUIRE_THROWS_AS(parse_cartan_type("F3"), input_error);
  REQUIRE_THROWS_AS(parse_cartan_type("Ax"), input_error);
  REQUIRE_THROWS_AS(parse_cartan_type("A2x"), input_error);
}

TEST_CASE("root systems match the classical counts") {
  const std::pair<const char*, long long> table[] = {
      {"A1", 2},  {"A2", 6},   {"A3", 12},  {"B2", 8},   {"B3", 18},
      {"C3", 18}, {"D4", 24},  {"G2", 12},  {"F4", 48},  {"E6", 72},
      {"E7", 126}, {"E8", 240}, {"A2xB2", 14}, {"A1xT3", 2}};
  for (auto& [name, count] : table) {
    RootSystem rs = root_system(ct(name));
    INFO(name);
    REQUIRE((long long)rs.roots.size() == count);
    REQUIRE(2 * rs.num_positive() == count);
    REQUIRE((long long)rs.coroots.size() == count);
  }
  REQUIRE(root_system(ct("T2")).roots.empty());
}

TEST_CASE("simple reflections permute the roots") {
  for (const char* name : {"B2", "G2", "A3"}) {
    RootSystem rs = root_system(ct(name));
    for (int i = 0; i < rs.rank(); ++i) {
      for (auto& v : rs.roots) {
        auto w = apply_simple_reflection(rs, i, v);
        REQUIRE(rs.root_index.count(w) == 1);
        REQUIRE(apply_simple_reflection(rs, i, w) == v);
      }
    }
  }
}

TEST_CASE("Weyl orders agree with the degree tables") {
  const std::pair<const char*, long long> table[] = {
      {"A2", 6},    {"A3", 24},      {"B2", 8},      {"B3", 48},
      {"C3", 48},   {"D4", 192},     {"G2", 12},     {"F4", 1152},
      {"E6", 51840}, {"E7", 2903040}, {"E8", 696729600}, {"A1xA1", 4}};
  for (auto& [name, order] : table) {
    CartanType t = ct(name);
    INFO(name);
    REQUIRE(weyl_order(t) == order);
    Int prod = 1;
    for (int d : weyl_degrees(t)) prod *= d;
    REQUIRE(prod == order);
  }
  REQUIRE(weyl_order(ct("T4")) == 1);
}

TEST_CASE("Weyl enumeration lists elements by length") {
  RootSystem a3 = root_system(ct("A3"));
  WeylData wd = weyl_explore(a3, full_parabolic(a3), {});
  REQUIRE(wd.order == 24);
  REQUIRE(wd.by_length == std::vector<long long>{1, 3, 5, 6, 5, 3, 1});
  REQUIRE(wd.minimal_by_length == wd.by_length);

  RootSystem b2 = root_system(ct("B2"));
  REQUIRE(weyl_explore(b2, full_parabolic(b2), {}).by_length ==
          std::vector<long long>{1, 2, 2, 2, 1});

  RootSystem g2 = root_system(ct("G2"));
  REQUIRE(weyl_explore(g2, full_parabolic(g2), {}).by_length ==
          std::vector<long long>{1, 2, 2, 2, 2, 2, 1});

  RootSystem prod = root_system(ct("A1xA1"));
  REQUIRE(weyl_explore(prod, full_parabolic(prod), {}).by_length ==
          std::vector<long long>{1, 2, 1});

  // parabolic subgroup inside the ambient system
  REQUIRE(weyl_explore(a3, {0}, {}).by_length == std::vector<long long>{1, 1});
  REQUIRE(weyl_explore(a3, {0, 2}, {}).by_length == std::vector<long long>{1, 2, 1});
  REQUIRE(weyl_explore(a3, {}, {}).order == 1);

  REQUIRE_THROWS_AS(weyl_explore(a3, full_parabolic(a3), {}, 5), input_error);
  REQUIRE_THROWS_AS(weyl_explore(a3, {0, 0}, {}), input_error);
  REQUIRE_THROWS_AS(weyl_explore(a3, {3}, {}), input_error);
}

TEST_CASE("Weyl length polynomials from two routes") {
  REQUIRE(poincare_weyl(ct("A1")) == zp({1, 1}));
  REQUIRE(poincare_weyl(ct("A2")) == zp({1, 2, 2, 1}));
  REQUIRE(poincare_weyl(ct("B2")) == poly_mul(zp({1, 1}), zp({1, 1, 1, 1})));
  REQUIRE(poincare_weyl(ct("A1xA1")) == zp({1, 2, 1}));
  REQUIRE(poincare_weyl(ct("F4"))[24] == 1);

  // beyond the enumeration cap only the degree product runs
  ZPoly e8 = poincare_weyl(ct("E8"));
  REQUIRE(poly_eval_int(e8, 1) == 696729600);
  REQUIRE((long long)e8.size() - 1 == 120);

  REQUIRE(poincare_weyl(ct("T2")) == zp({1}));
}

TEST_CASE("flag cells count cosets and satisfy duality") {
  RootSystem a1 = root_system(ct("A1"));
  FlagCells c1 = flag_cells(a1, {}, full_parabolic(a1));
  REQUIRE(c1.dims == std::vector<long long>{1, 1});
  REQUIRE(c1.in_q == zp({1, 0, 1}));
  REQUIRE(c1.index == 2);

  RootSystem a2 = root_system(ct("A2"));
  REQUIRE(poincare_flag(a2, {}, {0, 1}) == zp({1, 0, 2, 0, 2, 0, 1}));
  REQUIRE(weight_shear_cohomology(a2, {}, {0, 1}) == std::vector<long long>{1, 2, 2, 1});
  REQUIRE(weight_shear_cohomology(a2, {0}, {0, 1}) == std::vector<long long>{1, 1, 1});
  REQUIRE(weight_shear_cohomology(a2, {0}, {0}) == std::vector<long long>{1});
  REQUIRE(weight_shear_cohomology(a2, {}, {}) == std::vector<long long>{1});

  RootSystem b2 = root_system(ct("B2"));
  REQUIRE(weight_shear_cohomology(b2, {}, {0, 1}) == std::vector<long long>{1, 2, 2, 2, 1});
  REQUIRE(weight_shear_cohomology(b2, {0}, {0, 1}) == std::vector<long long>{1, 1, 1, 1});
  REQUIRE(weight_shear_cohomology(b2, {1}, {0, 1}) == std::vector<long long>{1, 1, 1, 1});

  REQUIRE(dims_of("A3", {0, 1}, {0, 1, 2}) == std::vector<long long>{1, 1, 1, 1});
  REQUIRE(dims_of("G2", {0}, {0, 1}) == std::vector<long long>{1, 1, 1, 1, 1, 1});

  REQUIRE_THROWS_AS(flag_cells(a2, {1}, {0}), input_error);
  REQUIRE_THROWS_AS(flag_cells(a2, {0, 1}, {0}), input_error);
  REQUIRE_THROWS_AS(flag_cells(a2, {2}, {0, 1}), input_error);
}

TEST_CASE("cell polynomials multiply along towers of parabolics") {
  for (const char* name : {"A2", "B2", "A3"}) {
    RootSystem rs = root_system(ct(name));
    Parabolic full = full_parabolic(rs);
    ZPoly total = poly_from_counts(flag_cells(rs, {}, full).dims);
    long long subsets = 1LL << rs.rank();
    for (long long mask = 0; mask < subsets; ++mask) {
      Parabolic q;
      for (int i = 0; i < rs.rank(); ++i)
        if ((mask >> i) & 1) q.push_back(i);
      ZPoly below = poly_from_counts(flag_cells(rs, {}, q).dims);
      ZPoly above = poly_from_counts(flag_cells(rs, q, full).dims);
      INFO(name << " mask " << mask);
      REQUIRE(poly_mul(below, above) == total);
    }
  }
}

TEST_CASE("splitting criterion evaluates exactly") {
  RootSystem a1 = root_system(ct("A1"));
  Parabolic b, g = full_parabolic(a1);
  REQUIRE(splitting_criterion(a1, b, g, Rat(1)));
  REQUIRE(splitting_criterion(a1, b, g, Rat(1) / 2));
  REQUIRE(splitting_criterion(a1, b, g, Rat(-3)));
  REQUIRE_THROWS_AS(splitting_criterion(a1, b, g, Rat(0)), input_error);

  // 1 + q^2 vanishes exactly at the primitive fourth roots of unity
  REQUIRE_FALSE(splitting_criterion_root_of_unity(a1, b, g, 4, 1));
  REQUIRE_FALSE(splitting_criterion_root_of_unity(a1, b, g, 4, 3));
  REQUIRE(splitting_criterion_root_of_unity(a1, b, g, 4, 2));
  REQUIRE(splitting_criterion_root_of_unity(a1, b, g, 3, 1));
  REQUIRE(splitting_criterion_root_of_unity(a1, b, g, 1, 0));

  RootSystem a2 = root_system(ct("A2"));
  Parabolic g2 = full_parabolic(a2);
  REQUIRE_FALSE(splitting_criterion_root_of_unity(a2, b, g2, 6, 1));
  REQUIRE_FALSE(splitting_criterion_root_of_unity(a2, b, g2, 4, 1));
  REQUIRE(splitting_criterion_root_of_unity(a2, b, g2, 5, 1));
  REQUIRE(splitting_criterion_root_of_unity(a2, b, g2, 2, 1));
  REQUIRE_THROWS_AS(splitting_criterion_root_of_unity(a2, b, g2, 0, 1), input_error);
}

TEST_CASE("cyclotomic polynomials by exact division") {
  REQUIRE(cyclotomic(1) == zp({-1, 1}));
  REQUIRE(cyclotomic(2) == zp({1, 1}));
  REQUIRE(cyclotomic(3) == zp({1, 1, 1}));
  REQUIRE(cyclotomic(4) == zp({1, 0, 1}));
  REQUIRE(cyclotomic(6) == zp({1, -1, 1}));
  REQUIRE(cyclotomic(12) == zp({1, 0, -1, 0, 1}));
  // the product over divisors recovers x^n - 1
  ZPoly prod = {Int(1)};
  for (long long d : {1, 2, 3, 5, 6, 10, 15, 30}) prod = poly_mul(prod, cyclotomic(d));
  ZPoly xn(31, Int(0));
  xn[0] = -1;
  xn[30] = 1;
  REQUIRE(prod == xn);
  REQUIRE_THROWS_AS(cyclotomic(0), input_error);
}

TEST_CASE("full flag polynomial divides through every fibration") {
  for (const char* name : {"A2", "B2", "A3"}) {
    RootSystem rs = root_system(ct(name));
    long long subsets = 1LL << rs.rank();
    for (long long qm = 0; qm < subsets; ++qm) {
      Parabolic q;
      for (int i = 0; i < rs.rank(); ++i)
        if ((qm >> i) & 1) q.push_back(i);
      for (long long pm = 0; pm < subsets; ++pm) {
        if ((pm & qm) != pm) continue;
        Parabolic p;
        for (int i = 0; i < rs.rank(); ++i)
          if ((pm >> i) & 1) p.push_back(i);
        INFO(name << " P " << pm << " Q " << qm);
        REQUIRE(brion_peyre_check(rs, p, q));
      }
    }
  }
}

TEST_CASE("fundamental groups of standard data") {
  REQUIRE(fundamental_group(standard_datum(ct("A1"), "weight")).is_trivial());
  REQUIRE(fundamental_group(standard_datum(ct("A2"), "weight")).is_trivial());
  REQUIRE(fundamental_group(standard_datum(ct("E8"), "weight")).is_trivial());

  REQUIRE(fundamental_group(standard_datum(ct("A1"), "root")).str() == "Z/2");
  REQUIRE(fundamental_group(standard_datum(ct("A2"), "root")).str() == "Z/3");
  REQUIRE(fundamental_group(standard_datum(ct("A3"), "root")).str() == "Z/4");
  REQUIRE(fundamental_group(standard_datum(ct("B2"), "root")).str() == "Z/2");
  REQUIRE(fundamental_group(standard_datum(ct("D4"), "root")).str() == "Z/2 + Z/2");
  REQUIRE(fundamental_group(standard_datum(ct("D5"), "root")).str() == "Z/4");
  REQUIRE(fundamental_group(standard_datum(ct("E6"), "root")).str() == "Z/3");
  REQUIRE(fundamental_group(standard_datum(ct("E7"), "root")).str() == "Z/2");
  REQUIRE(fundamental_group(standard_datum(ct("G2"), "root")).is_trivial());
  REQUIRE(fundamental_group(standard_datum(ct("F4"), "root")).is_trivial());
  REQUIRE(fundamental_group(standard_datum(ct("E8"), "root")).is_trivial());

  // a central torus changes neither quotient
  REQUIRE(fundamental_group(standard_datum(ct("A2xT1"), "weight")).is_trivial());
  REQUIRE(fundamental_group(standard_datum(ct("A1xT2"), "root")).str() == "Z/2");
  REQUIRE(fundamental_group(standard_datum(ct("T3"), "root")).is_trivial());

  // index two between the extremes in type A3
  RootDatum mid;
  mid.type = ct("A3");
  mid.x = MatZ(3, 4);
  auto c = cartan_rows(mid.type);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (c[i][j] != 0) mid.x.set(i, j, Int(c[i][j]));
  mid.x.set(0, 3, 2);
  REQUIRE(fundamental_group(mid).str() == "Z/2");

  RootDatum bad;
  bad.type = ct("A1");
  bad.x = MatZ(1, 1);
  bad.x.set(0, 0, 3);
  REQUIRE_THROWS_AS(fundamental_group(bad), input_error);

  RootDatum thin;
  thin.type = ct("A2");
  thin.x = MatZ(2, 1);
  thin.x.set(0, 0, 1);
  REQUIRE_THROWS_AS(fundamental_group(thin), input_error);

  RootDatum shaped;
  shaped.type = ct("A2");
  shaped.x = MatZ(3, 3);
  REQUIRE_THROWS_AS(fundamental_group(shaped), input_error);

  REQUIRE_THROWS_AS(standard_datum(ct("A2"), "coweight"), input_error);
}

TEST_CASE("multipliers of connected groups") {
  REQUIRE(schur_multiplier_connected(standard_datum(ct("A2"), "weight")).is_trivial());
  REQUIRE(schur_multiplier_connected(standard_datum(ct("A2"), "root")).str() == "Z/3");
  REQUIRE(schur_multiplier_connected(standard_datum(ct("A1"), "root")).str() == "Z/2");
  REQUIRE(schur_multiplier_connected(standard_datum(ct("B2"), "root")).str() == "Z/2");

  // the multiplier order of an adjoint group is the connection index
  for (const char* name : {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "D5",
                           "G2", "F4", "E6", "E7", "E8"}) {
    CartanType t = ct(name);
    SmithForm sf = smith_normal_form(cartan_matrix(t));
    Int det = 1;
    for (auto& d : sf.invariant_factors) det *= d;
    INFO(name);
    REQUIRE(schur_multiplier_connected(standard_datum(t, "root")).order() == det);
    REQUIRE(schur_multiplier_connected(standard_datum(t, "weight")).is_trivial());
  }
}

TEST_CASE("minuscule weights lift the lattice classes") {
  RootSystem a1 = root_system(ct("A1"));
  REQUIRE(minuscule_lift(a1, wt({1})) == wt({1}));
  REQUIRE(minuscule_lift(a1, wt({0})) == wt({0}));
  REQUIRE(minuscule_lift(a1, wt({5})) == wt({1}));
  REQUIRE(minuscule_lift(a1, wt({-4})) == wt({0}));

  RootSystem a2 = root_system(ct("A2"));
  REQUIRE(minuscule_lift(a2, wt({1, 0})) == wt({1, 0}));
  REQUIRE(minuscule_lift(a2, wt({0, 1})) == wt({0, 1}));
  REQUIRE(minuscule_lift(a2, wt({1, 1})) == wt({0, 0}));
  REQUIRE(minuscule_lift(a2, wt({2, 0})) == wt({0, 1}));

  RootSystem a3 = root_system(ct("A3"));
  REQUIRE(minuscule_lift(a3, wt({0, 1, 0})) == wt({0, 1, 0}));
  REQUIRE(minuscule_lift(a3, wt({1, 1, 0})) == wt({0, 0, 1}));

  // in type B only the spin weight survives the long coroot test
  RootSystem b2 = root_system(ct("B2"));
  REQUIRE(minuscule_lift(b2, wt({0, 1})) == wt({0, 1}));
  REQUIRE(minuscule_lift(b2, wt({1, 0})) == wt({0, 0}));
  RootSystem b3 = root_system(ct("B3"));
  REQUIRE(minuscule_lift(b3, wt({1, 0, 0})) == wt({0, 0, 0}));
  REQUIRE(minuscule_lift(b3, wt({0, 0, 1})) == wt({0, 0, 1}));

  // the three outer nodes of D4; the central class is trivial
  RootSystem d4 = root_system(ct("D4"));
  REQUIRE(minuscule_lift(d4, wt({1, 0, 0, 0})) == wt({1, 0, 0, 0}));
  REQUIRE(minuscule_lift(d4, wt({0, 0, 1, 0})) == wt({0, 0, 1, 0}));
  REQUIRE(minuscule_lift(d4, wt({0, 0, 0, 1})) == wt({0, 0, 0, 1}));
  REQUIRE(minuscule_lift(d4, wt({0, 1, 0, 0})) == wt({0, 0, 0, 0}));

  RootSystem e6 = root_system(ct("E6"));
  auto lift = minuscule_lift(e6, wt({1, 0, 0, 0, 0, 0}));
  REQUIRE(lift == wt({1, 0, 0, 0, 0, 0}));

  // idempotence: lifting a lift returns it unchanged
  REQUIRE(minuscule_lift(a3, minuscule_lift(a3, wt({3, 2, 1}))) ==
          minuscule_lift(a3, wt({3, 2, 1})));

  REQUIRE_THROWS_AS(minuscule_lift(a2, wt({1})), input_error);
}

TEST_CASE("product multipliers combine factors and component pairings") {
  RootDatum sl2 = standard_datum(ct("A1"), "weight");
  RootDatum pgl2 = standard_datum(ct("A1"), "root");

  ProductMultiplierReport r = product_multiplier(sl2, pgl2);
  REQUIRE(r.left.is_trivial());
  REQUIRE(r.right.str() == "Z/2");
  REQUIRE(r.hom.is_trivial());
  REQUIRE(r.total.str() == "Z/2");

  ProductMultiplierReport s = product_multiplier(pgl2, pgl2, {Int(2)}, {Int(2)});
  REQUIRE(s.hom.str() == "Z/2");
  REQUIRE(s.total.str() == "Z/2 + Z/2 + Z/2");

  // two copies of Z/2 pair to the multiplier of the four group
  RootDatum pt = standard_datum(ct("T0"), "weight");
  ProductMultiplierReport k = product_multiplier(pt, pt, {Int(2)}, {Int(2)});
  REQUIRE(k.left.is_trivial());
  REQUIRE(k.total.str() == "Z/2");

  REQUIRE(product_multiplier(pt, pt, {Int(4)}, {Int(6)}).total.str() == "Z/2");
  REQUIRE(product_multiplier(pt, pt, {Int(3)}, {Int(5)}).total.is_trivial());
  ProductMultiplierReport m =
      product_multiplier(pt, pt, {Int(2), Int(4)}, {Int(2), Int(4)});
  REQUIRE(m.total.str() == "Z/2 + Z/2 + Z/2 + Z/4");

  REQUIRE_THROWS_AS(product_multiplier(pt, pt, {Int(0)}, {Int(2)}), input_error);
  REQUIRE_THROWS_AS(product_multiplier(pt, pt, {Int(2)}, {Int(-3)}), input_error);
}

TEST_CASE("polynomial helpers stay exact") {
  ZPoly a = zp({1, 2, 0, 1});
  ZPoly b = zp({-1, 1});
  ZPoly prod = poly_mul(a, b);
  ZPoly quo, rem;
  REQUIRE(poly_divrem(prod, b, &quo, &rem));
  REQUIRE(rem.empty());
  REQUIRE(quo == a);
  REQUIRE(poly_divrem(zp({1, 1, 1}), zp({1, 1}), &quo, &rem));
  REQUIRE(rem == zp({1}));
  REQUIRE(quo == zp({0, 1}));
  REQUIRE_FALSE(poly_divrem(zp({1, 1}), zp({0, 2}), &quo, &rem));
  REQUIRE(poly_eval_int(a, 2) == 1 + 4 + 8);
  REQUIRE(poly_eval_rat(b, Rat(1) / 2) == Rat(-1) / 2);
  REQUIRE(poly_str(zp({1, 0, 2, -1}), "q") == "1 + 2*q^2 - q^3");
  REQUIRE(poly_str(zp({}), "t") == "0");
  REQUIRE(poly_str(zp({0, 1}), "t") == "t");
}
