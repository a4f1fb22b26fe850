#pragma once

#include <functional>
#include <string>

#include "exhom/matrix.hpp"

namespace exhom {

// An element of e_target · A · e_source.  Elements act on right modules by
// left multiplication, so x with (source j, target i) is a map E_j -> E_i of
// right projectives; products x·y need source(x) == target(y).
struct BasisElem {
  int weight = 0;
  int source = 0;
  int target = 0;
  std::string name;
};

// Sparse element: basis index -> coefficient.
using Elem = std::map<int, Rat>;

// Finite dimensional graded basic algebra over Q.  Weight 0 is spanned by the
// orthogonal idempotents e_0..e_{k-1}, which are the first k basis entries;
// everything of positive weight is the radical.
struct GradedAlgebra {
  int num_idem = 0;
  std::vector<BasisElem> basis;
  // table[x][y] = coordinates of the product x·y
  std::vector<std::vector<Elem>> table;

  int dim() const { return (int)basis.size(); }
  int max_weight() const {
    int w = 0;
    for (auto& b : basis) w = std::max(w, b.weight);
    return w;
  }

  const Elem& mul_basis(int x, int y) const { return table[x][y]; }

  Elem mul(const Elem& x, const Elem& y) const {
    Elem out;
    for (auto& [bx, cx] : x)
      for (auto& [by, cy] : y)
        for (auto& [bz, cz] : table[bx][by]) {
          Rat v = out.count(bz) ? out[bz] : Rat(0);
          v += cx * cy * cz;
          if (v == 0)
            out.erase(bz);
          else
            out[bz] = v;
        }
    return out;
  }

  Elem unit() const {
    Elem e;
    for (int i = 0; i < num_idem; ++i) e[i] = 1;
    return e;
  }

  std::vector<int> radical_basis() const {
    std::vector<int> r;
    for (int b = 0; b < dim(); ++b)
      if (basis[b].weight > 0) r.push_back(b);
    return r;
  }

  // basis indices of e_j · A · e_i, i.e. Hom(E_i, E_j); optionally one weight
  std::vector<int> hom_basis(int i, int j, int weight = -1) const {
    std::vector<int> out;
    for (int b = 0; b < dim(); ++b)
      if (basis[b].source == i && basis[b].target == j &&
          (weight < 0 || basis[b].weight == weight))
        out.push_back(b);
    return out;
  }

  // left/right multiplication matrices on the algebra itself
  MatQ left_mult_matrix(int b) const {
    MatQ m(dim(), dim());
    for (int y = 0; y < dim(); ++y)
      for (auto& [z, c] : table[b][y]) m.add_to(z, y, c);
    return m;
  }
  MatQ right_mult_matrix(int b) const {
    MatQ m(dim(), dim());
    for (int x = 0; x < dim(); ++x)
      for (auto& [z, c] : table[x][b]) m.add_to(z, x, c);
    return m;
  }

  void validate() const {
    check(num_idem >= 1, "algebra needs at least one idempotent");
    check(dim() >= num_idem, "basis smaller than idempotent count");
    for (int i = 0; i < num_idem; ++i) {
      check(basis[i].weight == 0 && basis[i].source == i && basis[i].target == i,
            "idempotents must come first, in weight 0, diagonal");
    }
    for (int b = num_idem; b < dim(); ++b)
      check(basis[b].weight > 0, "non-idempotent basis element of weight 0");
    for (int x = 0; x < dim(); ++x)
      for (int y = 0; y < dim(); ++y) {
        const Elem& p = table[x][y];
        if (basis[x].source != basis[y].target)
          check(p.empty(), "product across mismatched idempotents must vanish");
        for (auto& [z, c] : p) {
          check(c != 0, "zero coefficient stored in table");
          check(basis[z].weight == basis[x].weight + basis[y].weight,
                "product not weight-additive");
          check(basis[z].source == basis[y].source && basis[z].target == basis[x].target,
                "product endpoints inconsistent");
        }
      }
    // idempotent laws
    for (int i = 0; i < num_idem; ++i)
      for (int j = 0; j < num_idem; ++j) {
        Elem p = table[i][j];
        if (i == j)
          check(p.size() == 1 && p.count(i) && p[i] == 1, "e_i e_i != e_i");
        else
          check(p.empty(), "idempotents not orthogonal");
      }
    // unit laws for every basis element
    for (int b = 0; b < dim(); ++b) {
      const Elem& l = table[basis[b].target][b];
      check(l.size() == 1 && l.count(b) && l.at(b) == 1, "e_target · x != x");
      const Elem& r = table[b][basis[b].source];
      check(r.size() == 1 && r.count(b) && r.at(b) == 1, "x · e_source != x");
    }
  }

  void check_associative() const {
    for (int x = 0; x < dim(); ++x)
      for (int y = 0; y < dim(); ++y)
        for (int z = 0; z < dim(); ++z) {
          Elem a = mul(table[x][y], Elem{{z, 1}});
          Elem b = mul(Elem{{x, 1}}, table[y][z]);
          check(a == b, "multiplication not associative at basis triple");
        }
  }
};

// ---------------------------------------------------------------------------
// Path algebra of a graded quiver modulo homogeneous uniform relations.

struct QuiverArrow {
  std::string src, dst, name;
  int weight = 1;
};

struct RelationTerm {
  Rat coeff;
  std::vector<std::string> path;  // arrow names in traversal order
};
using Relation = std::vector<RelationTerm>;

namespace detail {

// paths stored as arrow index sequences in traversal order; the algebra value
// of "p then q" is val(q)·val(p)
struct PathSpace {
  std::vector<std::vector<std::vector<int>>> paths_by_weight;  // [w] -> list
  std::map<std::vector<int>, int> index;                       // within its weight

  const std::vector<std::vector<int>>& at(int w) const { return paths_by_weight[w]; }
};

}  // namespace detail

// Quotient of a path algebra by two-sided homogeneous relations, built weight
// by weight with exact linear algebra.  Stops once the quotient vanishes in
// max-arrow-weight consecutive weights (no longer path can avoid containing a
// segment in the vanished window); errors if weight_cap is reached first.
inline GradedAlgebra from_quiver(const std::vector<std::string>& vertices,
                                 const std::vector<QuiverArrow>& arrows,
                                 const std::vector<Relation>& relations,
                                 int weight_cap = 24) {
  int n = (int)vertices.size();
  if (n == 0) throw input_error("quiver needs at least one vertex");
  std::map<std::string, int> vid;
  for (int i = 0; i < n; ++i) {
    if (vid.count(vertices[i])) throw input_error("duplicate vertex: " + vertices[i]);
    vid[vertices[i]] = i;
  }
  std::map<std::string, int> aid;
  int max_arrow_w = 1;
  for (int a = 0; a < (int)arrows.size(); ++a) {
    auto& ar = arrows[a];
    if (!vid.count(ar.src)) throw input_error("arrow " + ar.name + ": unknown src " + ar.src);
    if (!vid.count(ar.dst)) throw input_error("arrow " + ar.name + ": unknown dst " + ar.dst);
    if (ar.weight < 1) throw input_error("arrow " + ar.name + ": weight must be >= 1");
    if (aid.count(ar.name)) throw input_error("duplicate arrow name: " + ar.name);
    aid[ar.name] = a;
    max_arrow_w = std::max(max_arrow_w, ar.weight);
  }
  auto asrc = [&](int a) { return vid.at(arrows[a].src); };
  auto adst = [&](int a) { return vid.at(arrows[a].dst); };
  auto path_src = [&](const std::vector<int>& p) { return asrc(p.front()); };
  auto path_dst = [&](const std::vector<int>& p) { return adst(p.back()); };
  auto path_weight = [&](const std::vector<int>& p) {
    int w = 0;
    for (int a : p) w += arrows[a].weight;
    return w;
  };

  // validate relations: composable, uniform endpoints, homogeneous weight
  struct RelVec {
    int weight;
    std::vector<std::pair<Rat, std::vector<int>>> terms;
  };
  std::vector<RelVec> rels;
  for (size_t ri = 0; ri < relations.size(); ++ri) {
    RelVec rv;
    rv.weight = -1;
    int rs = -1, rd = -1;
    for (auto& term : relations[ri]) {
      if (term.path.empty()) throw input_error("relation term with empty path");
      std::vector<int> p;
      for (auto& nm : term.path) {
        if (!aid.count(nm))
          throw input_error("relation " + std::to_string(ri) + ": unknown arrow " + nm);
        p.push_back(aid[nm]);
      }
      for (size_t k = 0; k + 1 < p.size(); ++k)
        if (adst(p[k]) != asrc(p[k + 1]))
          throw input_error("relation " + std::to_string(ri) + ": path not composable");
      int w = path_weight(p), s = path_src(p), d = path_dst(p);
      if (rv.weight < 0) {
        rv.weight = w;
        rs = s;
        rd = d;
      } else if (w != rv.weight || s != rs || d != rd) {
        throw input_error("relation " + std::to_string(ri) +
                          ": terms must share weight and endpoints");
      }
      if (term.coeff != 0) rv.terms.push_back({term.coeff, p});
    }
    if (!rv.terms.empty()) rels.push_back(std::move(rv));
  }

  detail::PathSpace ps;
  ps.paths_by_weight.push_back({});  // weight 0: handled as idempotents
  // reduced ideal data per weight: RREF rows + pivot col -> row
  struct IdealW {
    std::vector<std::map<int, Rat>> rows;
    std::map<int, int> pivot_row;  // path index -> row
  };
  std::vector<IdealW> ideal(1);
  std::vector<std::vector<int>> normal_paths(1);  // per weight, path indices surviving

  GradedAlgebra A;
  A.num_idem = n;
  for (int i = 0; i < n; ++i) A.basis.push_back({0, i, i, "e_" + vertices[i]});
  // map (weight, path index) -> algebra basis index for normal paths
  std::map<std::pair<int, int>, int> basis_of_path;

  auto reduce = [&](int w, std::map<int, Rat> v) {
    auto& iw = ideal[w];
    for (auto& [piv, row] : iw.pivot_row) {
      auto it = v.find(piv);
      if (it == v.end()) continue;
      Rat c = it->second;
      for (auto& [j, x] : iw.rows[row]) {
        Rat nv = (v.count(j) ? v[j] : Rat(0)) - c * x;
        if (nv == 0)
          v.erase(j);
        else
          v[j] = nv;
      }
    }
    return v;
  };
  auto ideal_insert = [&](int w, std::map<int, Rat> v) {
    v = reduce(w, std::move(v));
    if (v.empty()) return;
    auto& iw = ideal[w];
    int piv = v.begin()->first;
    Rat lead = v.begin()->second;
    for (auto& [j, x] : v) x /= lead;
    // back-substitute into existing rows to keep the set reduced
    for (auto& row : iw.rows) {
      auto it = row.find(piv);
      if (it == row.end()) continue;
      Rat c = it->second;
      for (auto& [j, x] : v) {
        Rat nv = (row.count(j) ? row[j] : Rat(0)) - c * x;
        if (nv == 0)
          row.erase(j);
        else
          row[j] = nv;
      }
    }
    iw.pivot_row[piv] = (int)iw.rows.size();
    iw.rows.push_back(std::move(v));
  };

  int zero_run = 0;
  int w = 1;
  for (; w <= weight_cap; ++w) {
    // enumerate composable paths of weight w, lexicographic in arrow sequence
    std::vector<std::vector<int>> pw;
    for (int a = 0; a < (int)arrows.size(); ++a) {
      if (arrows[a].weight == w) pw.push_back({a});
      int rest = w - arrows[a].weight;
      if (rest >= 1 && rest < (int)ps.paths_by_weight.size())
        for (auto& p : ps.at(rest))
          if (adst(a) == path_src(p)) {
            std::vector<int> np{a};
            np.insert(np.end(), p.begin(), p.end());
            pw.push_back(np);
          }
    }
    std::sort(pw.begin(), pw.end());
    ps.paths_by_weight.push_back(pw);
    for (int k = 0; k < (int)pw.size(); ++k) ps.index[pw[k]] = k;
    ideal.push_back({});
    normal_paths.push_back({});

    // ideal at weight w: relations of weight w, plus arrow·(lower ideal) and
    // (lower ideal)·arrow, peeling one arrow at a time
    for (auto& rv : rels)
      if (rv.weight == w) {
        std::map<int, Rat> vec;
        for (auto& [c, p] : rv.terms) vec[ps.index.at(p)] += c;
        for (auto it = vec.begin(); it != vec.end();)
          it = it->second == 0 ? vec.erase(it) : std::next(it);
        ideal_insert(w, std::move(vec));
      }
    for (int a = 0; a < (int)arrows.size(); ++a) {
      int rest = w - arrows[a].weight;
      if (rest < 1 || rest >= (int)ideal.size()) continue;
      for (auto& row : ideal[rest].rows) {
        std::map<int, Rat> pre, post;
        for (auto& [pi, c] : row) {
          const auto& p = ps.at(rest)[pi];
          if (adst(a) == path_src(p)) {  // a then p
            std::vector<int> np{a};
            np.insert(np.end(), p.begin(), p.end());
            pre[ps.index.at(np)] += c;
          }
          if (path_dst(p) == asrc(a)) {  // p then a
            std::vector<int> np = p;
            np.push_back(a);
            post[ps.index.at(np)] += c;
          }
        }
        if (!pre.empty()) ideal_insert(w, std::move(pre));
        if (!post.empty()) ideal_insert(w, std::move(post));
      }
    }

    // quotient basis at weight w
    auto& iw = ideal[w];
    for (int k = 0; k < (int)pw.size(); ++k)
      if (!iw.pivot_row.count(k)) normal_paths[w].push_back(k);
    for (int k : normal_paths[w]) {
      std::string nm;
      for (int a : pw[k]) nm += (nm.empty() ? "" : "*") + arrows[a].name;
      basis_of_path[{w, k}] = A.dim();
      A.basis.push_back({w, path_src(pw[k]), path_dst(pw[k]), nm});
    }
    zero_run = normal_paths[w].empty() ? zero_run + 1 : 0;
    if (zero_run >= max_arrow_w) break;
  }
  if (w > weight_cap)
    throw input_error("quotient still nonzero at weight cap " + std::to_string(weight_cap) +
                      "; refusing to truncate an infinite-dimensional algebra");

  // value of a concatenated path in the quotient basis
  auto path_value = [&](const std::vector<int>& p) -> Elem {
    int pw = path_weight(p);
    Elem out;
    if (pw >= (int)ps.paths_by_weight.size()) return out;  // beyond vanishing: zero
    auto it = ps.index.find(p);
    check(it != ps.index.end(), "internal: path missing from enumeration");
    std::map<int, Rat> v = reduce(pw, {{it->second, Rat(1)}});
    for (auto& [k, c] : v) out[basis_of_path.at({pw, k})] = c;
    return out;
  };

  // multiplication table
  A.table.assign(A.dim(), std::vector<Elem>(A.dim()));
  std::vector<std::vector<int>> rep(A.dim());  // arrow sequence per basis elem
  for (auto& [key, b] : basis_of_path) rep[b] = ps.at(key.first)[key.second];
  for (int x = 0; x < A.dim(); ++x)
    for (int y = 0; y < A.dim(); ++y) {
      const auto& bx = A.basis[x];
      const auto& by = A.basis[y];
      if (bx.source != by.target) continue;  // product vanishes
      if (x < n && y < n) {
        if (x == y) A.table[x][y] = {{x, 1}};
      } else if (x < n) {
        A.table[x][y] = {{y, 1}};  // e_{target(y)} · y
      } else if (y < n) {
        A.table[x][y] = {{x, 1}};
      } else {
        // val(p_x)·val(p_y) = val(p_y then p_x)
        std::vector<int> cat = rep[y];
        cat.insert(cat.end(), rep[x].begin(), rep[x].end());
        A.table[x][y] = path_value(cat);
      }
    }
  A.validate();
  if (A.dim() <= 24) A.check_associative();
  return A;
}

// Semisimple commutative algebra k^X (all weight zero); vertex i is the
// coordinate idempotent.
inline GradedAlgebra product_of_fields(int count) {
  std::vector<std::string> vs;
  for (int i = 0; i < count; ++i) vs.push_back(std::to_string(i));
  return from_quiver(vs, {}, {});
}

// ---------------------------------------------------------------------------
// Algebra morphisms as matrices on the basis.

struct AlgebraMorphism {
  const GradedAlgebra* A = nullptr;
  MatQ m;  // column b = coordinates of F(basis b)

  Elem apply(const Elem& x) const {
    Elem out;
    for (int i = 0; i < m.nrows; ++i) {
      Rat acc(0);
      for (auto& [b, c] : x) acc += c * m.get(i, b);
      if (acc != 0) out[i] = acc;
    }
    return out;
  }

  static AlgebraMorphism identity(const GradedAlgebra& a) {
    return {&a, MatQ::identity(a.dim())};
  }

  AlgebraMorphism compose(const AlgebraMorphism& g) const {  // this ∘ g
    check(A == g.A, "morphism composition across different algebras");
    return {A, m.mul(g.m)};
  }

  bool equal(const AlgebraMorphism& g) const { return m.equal(g.m); }

  // unital algebra endomorphism, weight preserving, permuting idempotents
  void validate() const {
    check(A && m.nrows == A->dim() && m.ncols == A->dim(), "morphism shape mismatch");
    for (int b = 0; b < A->dim(); ++b)
      for (int i = 0; i < m.nrows; ++i)
        if (m.get(i, b) != 0)
          check(A->basis[i].weight == A->basis[b].weight, "morphism not weight-preserving");
    for (int i = 0; i < A->num_idem; ++i) {
      Elem fi = apply(Elem{{i, 1}});
      check(fi.size() == 1 && fi.begin()->second == 1 &&
                fi.begin()->first < A->num_idem,
            "morphism must send each idempotent to a single idempotent");
    }
    for (int x = 0; x < A->dim(); ++x)
      for (int y = 0; y < A->dim(); ++y) {
        Elem lhs = apply(A->mul_basis(x, y));
        Elem rhs = A->mul(apply(Elem{{x, 1}}), apply(Elem{{y, 1}}));
        check(lhs == rhs, "morphism not multiplicative");
      }
  }

  bool is_automorphism() const { return rank_field(m) == m.ncols; }
};

// ---------------------------------------------------------------------------
// Enveloping algebra: basis pairs (x,y) standing for x⊗y with product
// (x⊗y)(x'⊗y') = (x'x)⊗(yy'), so that bimodules become right modules via
// m·(x⊗y) = x·m·y.  Idempotents are the pairs (e_i, e_j).

struct EnvAlgebra {
  GradedAlgebra alg;
  int n = 0;                                 // idempotent count of the base
  std::vector<std::vector<int>> pair_index;  // [x][y] -> env basis index
  std::vector<std::pair<int, int>> pair_of;  // env basis index -> (x, y)

  int idem_index(int i, int j) const { return i * n + j; }
};

inline EnvAlgebra enveloping_algebra(const GradedAlgebra& a) {
  EnvAlgebra e;
  e.n = a.num_idem;
  int d = a.dim();
  e.pair_index.assign(d, std::vector<int>(d, -1));
  auto add = [&](int x, int y) {
    e.pair_index[x][y] = e.alg.dim();
    e.pair_of.push_back({x, y});
    e.alg.basis.push_back({a.basis[x].weight + a.basis[y].weight,
                           a.basis[x].target * e.n + a.basis[y].source,
                           a.basis[x].source * e.n + a.basis[y].target,
                           "(" + a.basis[x].name + "|" + a.basis[y].name + ")"});
  };
  for (int i = 0; i < e.n; ++i)
    for (int j = 0; j < e.n; ++j) add(i, j);
  e.alg.num_idem = e.n * e.n;
  std::vector<std::tuple<int, int, int>> rest;  // (weight, x, y)
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      if (x >= a.num_idem || y >= a.num_idem)
        rest.push_back({a.basis[x].weight + a.basis[y].weight, x, y});
  std::sort(rest.begin(), rest.end());
  for (auto& [w, x, y] : rest) {
    (void)w;
    add(x, y);
  }
  int ed = e.alg.dim();
  e.alg.table.assign(ed, std::vector<Elem>(ed));
  for (int u = 0; u < ed; ++u)
    for (int v = 0; v < ed; ++v) {
      auto [x, y] = e.pair_of[u];
      auto [x2, y2] = e.pair_of[v];
      Elem out;
      for (auto& [z, cz] : a.mul_basis(x2, x))
        for (auto& [w2, cw] : a.mul_basis(y, y2)) {
          Rat c = cz * cw;
          if (c != 0) out[e.pair_index[z][w2]] = c;
        }
      e.alg.table[u][v] = std::move(out);
    }
  e.alg.validate();
  return e;
}

// ---------------------------------------------------------------------------
// Finite dimensional graded bimodules, given by both action matrices.

struct Bimodule {
  const GradedAlgebra* A = nullptr;
  std::vector<int> wt;        // weight per module basis vector
  std::vector<MatQ> left;     // left[b]: m -> x_b · m
  std::vector<MatQ> right;    // right[b]: m -> m · x_b

  int dim() const { return (int)wt.size(); }

  void validate() const {
    check(A != nullptr, "bimodule without algebra");
    int d = dim();
    check((int)left.size() == A->dim() && (int)right.size() == A->dim(),
          "bimodule needs one action matrix per algebra basis element");
    for (int b = 0; b < A->dim(); ++b) {
      check(left[b].nrows == d && left[b].ncols == d, "left action shape");
      check(right[b].nrows == d && right[b].ncols == d, "right action shape");
      for (int i = 0; i < d; ++i)
        for (auto& [j, v] : left[b].rows[i]) {
          (void)v;
          check(wt[i] == wt[j] + A->basis[b].weight, "left action not graded");
        }
      for (int i = 0; i < d; ++i)
        for (auto& [j, v] : right[b].rows[i]) {
          (void)v;
          check(wt[i] == wt[j] + A->basis[b].weight, "right action not graded");
        }
    }
    MatQ lu(d, d), ru(d, d);
    for (int i = 0; i < A->num_idem; ++i) {
      lu = lu.add(left[i]);
      ru = ru.add(right[i]);
    }
    check(lu.equal(MatQ::identity(d)), "left idempotent actions do not sum to 1");
    check(ru.equal(MatQ::identity(d)), "right idempotent actions do not sum to 1");
    for (int x = 0; x < A->dim(); ++x)
      for (int y = 0; y < A->dim(); ++y) {
        MatQ lxy(d, d), ryx(d, d);
        for (auto& [z, c] : A->mul_basis(x, y)) {
          lxy = lxy.add(left[z].scaled(c));
          ryx = ryx.add(right[z].scaled(c));
        }
        check(left[x].mul(left[y]).equal(lxy), "left action not multiplicative");
        check(right[y].mul(right[x]).equal(ryx), "right action not multiplicative");
        check(left[x].mul(right[y]).equal(right[y].mul(left[x])),
              "left and right actions do not commute");
      }
  }

  static Bimodule regular(const GradedAlgebra& a) {
    Bimodule m;
    m.A = &a;
    for (auto& b : a.basis) m.wt.push_back(b.weight);
    for (int b = 0; b < a.dim(); ++b) {
      m.left.push_back(a.left_mult_matrix(b));
      m.right.push_back(a.right_mult_matrix(b));
    }
    return m;
  }

  // left action precomposed with f: x ·' m = f(x) · m
  Bimodule twist_left(const AlgebraMorphism& f) const {
    check(f.A == A, "twist by morphism of a different algebra");
    Bimodule t = *this;
    int d = dim();
    for (int b = 0; b < A->dim(); ++b) {
      MatQ nb(d, d);
      for (int z = 0; z < A->dim(); ++z) {
        Rat c = f.m.get(z, b);
        if (c != 0) nb = nb.add(left[z].scaled(c));
      }
      t.left[b] = nb;
    }
    return t;
  }
};

}  // namespace exhom
