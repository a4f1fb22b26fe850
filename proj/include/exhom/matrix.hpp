#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "exhom/numbers.hpp"

namespace exhom {

// Coefficient rings.  Matrices carry a ring value so a modulus can travel
// with the data; ZZ and QQ are stateless.

struct ZZ {
  using S = Int;
  static constexpr bool is_field = false;
  S zero() const { return 0; }
  S one() const { return 1; }
  bool is_zero(const S& a) const { return a == 0; }
  S add(const S& a, const S& b) const { return a + b; }
  S sub(const S& a, const S& b) const { return a - b; }
  S mul(const S& a, const S& b) const { return a * b; }
  S neg(const S& a) const { return -a; }
  std::string str(const S& a) const { return a.str(); }
};

struct QQ {
  using S = Rat;
  static constexpr bool is_field = true;
  S zero() const { return 0; }
  S one() const { return 1; }
  bool is_zero(const S& a) const { return a == 0; }
  S add(const S& a, const S& b) const { return a + b; }
  S sub(const S& a, const S& b) const { return a - b; }
  S mul(const S& a, const S& b) const { return a * b; }
  S neg(const S& a) const { return -a; }
  S inv(const S& a) const {
    check(a != 0, "division by zero");
    return 1 / a;
  }
  std::string str(const S& a) const { return rat_str(a); }
};

// Prime modulus only: all uses are rank/kernel certificates over F_p.
struct Zp {
  using S = long long;
  static constexpr bool is_field = true;
  long long p = 2;

  Zp() = default;
  explicit Zp(long long prime) : p(prime) {
    check(prime >= 2, "modulus must be >= 2");
    for (long long d = 2; d * d <= prime; ++d)
      if (prime % d == 0) throw input_error("matrix ring Z/n requires prime n");
  }
  S norm(long long a) const {
    a %= p;
    return a < 0 ? a + p : a;
  }
  S zero() const { return 0; }
  S one() const { return norm(1); }
  bool is_zero(const S& a) const { return a == 0; }
  S add(const S& a, const S& b) const { return norm(a + b); }
  S sub(const S& a, const S& b) const { return norm(a - b); }
  S mul(const S& a, const S& b) const { return norm(a * b); }
  S neg(const S& a) const { return norm(-a); }
  S inv(const S& a) const {
    check(a % p != 0, "division by zero mod p");
    // extended Euclid
    long long t = 0, nt = 1, r = p, nr = norm(a);
    while (nr != 0) {
      long long q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    return norm(t);
  }
  std::string str(const S& a) const { return std::to_string(a); }
};

// Sparse matrix, row-major: rows[i] maps column -> nonzero scalar.
template <class R>
struct Mat {
  using S = typename R::S;
  R ring{};
  int nrows = 0, ncols = 0;
  std::vector<std::map<int, S>> rows;

  Mat() = default;
  Mat(int r, int c, R rg = R{}) : ring(rg), nrows(r), ncols(c), rows(r) {}

  static Mat identity(int n, R rg = R{}) {
    Mat m(n, n, rg);
    for (int i = 0; i < n; ++i) m.rows[i][i] = m.ring.one();
    return m;
  }

  S get(int i, int j) const {
    auto it = rows[i].find(j);
    return it == rows[i].end() ? ring.zero() : it->second;
  }
  void set(int i, int j, const S& v) {
    check(0 <= i && i < nrows && 0 <= j && j < ncols, "matrix index out of range");
    if (ring.is_zero(v))
      rows[i].erase(j);
    else
      rows[i][j] = v;
  }
  void add_to(int i, int j, const S& v) { set(i, j, ring.add(get(i, j), v)); }

  long long nnz() const {
    long long n = 0;
    for (auto& r : rows) n += (long long)r.size();
    return n;
  }
  bool is_zero() const {
    for (auto& r : rows)
      if (!r.empty()) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(ncols, nrows, ring);
    for (int i = 0; i < nrows; ++i)
      for (auto& [j, v] : rows[i]) t.rows[j][i] = v;
    return t;
  }

  Mat mul(const Mat& b) const {
    check(ncols == b.nrows, "matrix product shape mismatch");
    Mat c(nrows, b.ncols, ring);
    for (int i = 0; i < nrows; ++i)
      for (auto& [k, v] : rows[i])
        for (auto& [j, w] : b.rows[k]) {
          auto& slot = c.rows[i];
          auto it = slot.find(j);
          S nv = ring.add(it == slot.end() ? ring.zero() : it->second, ring.mul(v, w));
          if (ring.is_zero(nv)) {
            if (it != slot.end()) slot.erase(it);
          } else
            slot[j] = nv;
        }
    return c;
  }

  std::vector<S> apply(const std::vector<S>& x) const {
    check((int)x.size() == ncols, "matrix apply shape mismatch");
    std::vector<S> y(nrows, ring.zero());
    for (int i = 0; i < nrows; ++i)
      for (auto& [j, v] : rows[i])
        if (!ring.is_zero(x[j])) y[i] = ring.add(y[i], ring.mul(v, x[j]));
    return y;
  }

  bool equal(const Mat& b) const {
    if (nrows != b.nrows || ncols != b.ncols) return false;
    for (int i = 0; i < nrows; ++i) {
      auto &ra = rows[i], &rb = b.rows[i];
      auto ia = ra.begin();
      auto ib = rb.begin();
      while (ia != ra.end() || ib != rb.end()) {
        if (ia == ra.end() || ib == rb.end()) return false;
        if (ia->first != ib->first || ia->second != ib->second) return false;
        ++ia, ++ib;
      }
    }
    return true;
  }

  Mat sub(const Mat& b) const {
    check(nrows == b.nrows && ncols == b.ncols, "matrix difference shape mismatch");
    Mat c = *this;
    for (int i = 0; i < nrows; ++i)
      for (auto& [j, v] : b.rows[i]) c.add_to(i, j, ring.neg(v));
    return c;
  }

  Mat add(const Mat& b) const {
    check(nrows == b.nrows && ncols == b.ncols, "matrix sum shape mismatch");
    Mat c = *this;
    for (int i = 0; i < nrows; ++i)
      for (auto& [j, v] : b.rows[i]) c.add_to(i, j, v);
    return c;
  }

  Mat scaled(const S& a) const {
    Mat c(nrows, ncols, ring);
    if (ring.is_zero(a)) return c;
    for (int i = 0; i < nrows; ++i)
      for (auto& [j, v] : rows[i]) c.rows[i][j] = ring.mul(a, v);
    return c;
  }
};

using MatZ = Mat<ZZ>;
using MatQ = Mat<QQ>;
using MatP = Mat<Zp>;

// ---------------------------------------------------------------------------
// Field elimination: reduced row echelon form, rank, kernels, solving.
// RREF is unique, so every basis derived from it is canonical for the given
// column order.

template <class R>
struct Rref {
  Mat<R> m;                      // the reduced form
  std::vector<int> pivot_cols;   // ascending
  int rank() const { return (int)pivot_cols.size(); }
};

template <class R>
Rref<R> rref(Mat<R> m) {
  static_assert(R::is_field);
  const R& rg = m.ring;
  Rref<R> out;
  out.pivot_cols.clear();
  int r = 0;
  // column index: which rows currently have a nonzero in column j
  std::vector<std::set<int>> colrows(m.ncols);
  for (int i = 0; i < m.nrows; ++i)
    for (auto& [j, v] : m.rows[i]) colrows[j].insert(i);

  auto row_scale = [&](int i, const typename R::S& a) {
    for (auto& [j, v] : m.rows[i]) v = rg.mul(v, a);
  };
  // row_i += a * row_k
  auto row_addmul = [&](int i, int k, const typename R::S& a) {
    for (auto& [j, v] : m.rows[k]) {
      auto it = m.rows[i].find(j);
      typename R::S nv = rg.add(it == m.rows[i].end() ? rg.zero() : it->second, rg.mul(a, v));
      if (rg.is_zero(nv)) {
        if (it != m.rows[i].end()) {
          m.rows[i].erase(it);
          colrows[j].erase(i);
        }
      } else {
        if (it == m.rows[i].end()) colrows[j].insert(i);
        m.rows[i][j] = nv;
      }
    }
  };

  for (int col = 0; col < m.ncols && r < m.nrows; ++col) {
    // pivot row: among rows >= r with entry in col, pick fewest nonzeros
    int piv = -1;
    size_t best = SIZE_MAX;
    for (int i : colrows[col])
      if (i >= r && m.rows[i].size() < best) {
        best = m.rows[i].size();
        piv = i;
      }
    if (piv < 0) continue;
    if (piv != r) {
      // swap rows piv and r, maintaining the column index
      for (auto& [j, v] : m.rows[piv]) colrows[j].erase(piv);
      for (auto& [j, v] : m.rows[r]) colrows[j].erase(r);
      std::swap(m.rows[piv], m.rows[r]);
      for (auto& [j, v] : m.rows[piv]) colrows[j].insert(piv);
      for (auto& [j, v] : m.rows[r]) colrows[j].insert(r);
    }
    row_scale(r, rg.inv(m.rows[r][col]));
    for (int i : std::vector<int>(colrows[col].begin(), colrows[col].end()))
      if (i != r) row_addmul(i, r, rg.neg(m.rows[i][col]));
    out.pivot_cols.push_back(col);
    ++r;
  }
  out.m = std::move(m);
  return out;
}

template <class R>
int rank_field(const Mat<R>& m) {
  return rref(m).rank();
}

// Kernel basis from RREF: one vector per free column, entry 1 at the free
// column, minus the reduced column above the pivots.
template <class R>
std::vector<std::vector<typename R::S>> kernel_field(const Mat<R>& m) {
  auto e = rref(m);
  const R& rg = e.m.ring;
  std::vector<bool> is_pivot(m.ncols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<typename R::S>> basis;
  for (int c = 0; c < m.ncols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<typename R::S> v(m.ncols, rg.zero());
    v[c] = rg.one();
    for (int i = 0; i < e.rank(); ++i) {
      auto it = e.m.rows[i].find(c);
      if (it != e.m.rows[i].end()) v[e.pivot_cols[i]] = rg.neg(it->second);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve m x = b over a field; nullopt when inconsistent.
template <class R>
std::optional<std::vector<typename R::S>> solve_field(const Mat<R>& m,
                                                      const std::vector<typename R::S>& b) {
  static_assert(R::is_field);
  const R& rg = m.ring;
  check((int)b.size() == m.nrows, "solve shape mismatch");
  Mat<R> aug(m.nrows, m.ncols + 1, rg);
  aug.rows = m.rows;
  for (int i = 0; i < m.nrows; ++i)
    if (!rg.is_zero(b[i])) aug.rows[i][m.ncols] = b[i];
  auto e = rref(aug);
  std::vector<typename R::S> x(m.ncols, rg.zero());
  for (int i = 0; i < e.rank(); ++i) {
    int pc = e.pivot_cols[i];
    if (pc == m.ncols) return std::nullopt;  // pivot in the augmented column
    auto it = e.m.rows[i].find(m.ncols);
    x[pc] = it == e.m.rows[i].end() ? rg.zero() : it->second;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Smith normal form over Z.
//
// Produces left * m * right = diag(d_1..d_r, 0..) with d_i > 0 and
// d_1 | d_2 | ... .  Pivot selection: smallest absolute value in the
// remaining submatrix, ties broken by (row, col), which makes the transforms
// reproducible.  Transforms are tracked only on request: the heavy callers
// need invariant factors alone, or one side.

struct SmithOptions {
  bool want_left = false;
  bool want_right = false;
};

struct SmithForm {
  std::vector<Int> invariant_factors;  // nonzero diagonal, ascending divisibility
  int nrows = 0, ncols = 0;
  std::optional<MatZ> left;    // nrows x nrows unimodular
  std::optional<MatZ> right;   // ncols x ncols unimodular
  int rank() const { return (int)invariant_factors.size(); }
  MatZ diagonal() const {
    MatZ d(nrows, ncols);
    for (int i = 0; i < rank(); ++i) d.rows[i][i] = invariant_factors[i];
    return d;
  }
};

namespace detail {

struct SmithWork {
  int nrows, ncols;
  std::vector<std::map<int, Int>> rows;
  std::vector<std::set<int>> colrows;
  std::optional<MatZ> left, right;

  explicit SmithWork(const MatZ& m, SmithOptions opt)
      : nrows(m.nrows), ncols(m.ncols), rows(m.rows), colrows(m.ncols) {
    for (int i = 0; i < nrows; ++i)
      for (auto& [j, v] : rows[i]) colrows[j].insert(i);
    if (opt.want_left) left = MatZ::identity(nrows);
    if (opt.want_right) right = MatZ::identity(ncols);
  }

  Int get(int i, int j) const {
    auto it = rows[i].find(j);
    return it == rows[i].end() ? Int(0) : it->second;
  }

  void set(int i, int j, const Int& v) {
    if (v == 0) {
      rows[i].erase(j);
      colrows[j].erase(i);
    } else {
      if (!rows[i].count(j)) colrows[j].insert(i);
      rows[i][j] = v;
    }
  }

  // row_i += q * row_k  (i != k)
  void row_addmul(int i, int k, const Int& q) {
    if (q == 0) return;
    std::map<int, Int> src = rows[k];
    for (auto& [j, v] : src) set(i, j, get(i, j) + q * v);
    if (left) {
      std::map<int, Int> ls = left->rows[k];
      for (auto& [j, v] : ls) left->add_to(i, j, q * v);
    }
  }

  // col_j += q * col_l  (j != l)
  void col_addmul(int j, int l, const Int& q) {
    if (q == 0) return;
    std::vector<int> src(colrows[l].begin(), colrows[l].end());
    for (int i : src) set(i, j, get(i, j) + q * get(i, l));
    if (right)
      for (int i = 0; i < ncols; ++i) {
        Int v = right->get(i, l);
        if (v != 0) right->add_to(i, j, q * v);
      }
  }

  void row_swap(int i, int k) {
    if (i == k) return;
    for (auto& [j, v] : rows[i]) colrows[j].erase(i);
    for (auto& [j, v] : rows[k]) colrows[j].erase(k);
    std::swap(rows[i], rows[k]);
    for (auto& [j, v] : rows[i]) colrows[j].insert(i);
    for (auto& [j, v] : rows[k]) colrows[j].insert(k);
    if (left) std::swap(left->rows[i], left->rows[k]);
  }

  void col_swap(int j, int l) {
    if (j == l) return;
    std::vector<int> ij(colrows[j].begin(), colrows[j].end());
    std::vector<int> il(colrows[l].begin(), colrows[l].end());
    std::set<int> seen(ij.begin(), ij.end());
    for (int i : il) seen.insert(i);
    for (int i : seen) {
      Int a = rows[i].count(j) ? rows[i][j] : Int(0);
      Int b = rows[i].count(l) ? rows[i][l] : Int(0);
      set(i, j, b);
      set(i, l, a);
    }
    if (right) {
      for (int i = 0; i < ncols; ++i) {
        Int a = right->get(i, j), b = right->get(i, l);
        right->set(i, j, b);
        right->set(i, l, a);
      }
    }
  }

  void row_negate(int i) {
    for (auto& [j, v] : rows[i]) v = -v;
    if (left)
      for (auto& [j, v] : left->rows[i]) v = -v;
  }

  // smallest |entry| in the submatrix at (r, r); ties by (row, col)
  bool find_pivot(int r, int& pi, int& pj) const {
    bool found = false;
    Int best = 0;
    for (int i = r; i < nrows; ++i)
      for (auto& [j, v] : rows[i]) {
        if (j < r) continue;
        Int a = iabs(v);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }
};

}  // namespace detail

inline SmithForm smith_normal_form(const MatZ& m, SmithOptions opt = {}) {
  detail::SmithWork w(m, opt);
  SmithForm out;
  out.nrows = m.nrows;
  out.ncols = m.ncols;
  int r = 0;
  int maxr = std::min(m.nrows, m.ncols);
  while (r < maxr) {
    int pi, pj;
    if (!w.find_pivot(r, pi, pj)) break;
    w.row_swap(r, pi);
    w.col_swap(r, pj);
    // One reduction step per pass; |pivot| strictly shrinks on every swap,
    // so the Euclid phases terminate, and the divisibility fix re-enters
    // them with a strictly smaller eventual pivot.
    for (;;) {
      // entry below the pivot in column r?
      auto below = w.colrows[r].upper_bound(r);
      if (below != w.colrows[r].end()) {
        int i = *below;
        Int q = divround(w.get(i, r), w.get(r, r));
        w.row_addmul(i, r, -q);
        if (w.get(i, r) != 0) w.row_swap(r, i);  // remainder beat the pivot
        continue;
      }
      // entry right of the pivot in row r?
      auto right_it = w.rows[r].upper_bound(r);
      if (right_it != w.rows[r].end()) {
        int j = right_it->first;
        Int q = divround(w.get(r, j), w.get(r, r));
        w.col_addmul(j, r, -q);
        if (w.get(r, j) != 0) w.col_swap(r, j);
        continue;
      }
      // pivot alone in its row and column; enforce divisibility
      Int d = w.get(r, r);
      bool fixed = false;
      for (int i = r + 1; i < w.nrows && !fixed; ++i)
        for (auto& [j, v] : w.rows[i]) {
          if (j <= r) continue;
          if (v % d != 0) {
            w.row_addmul(r, i, 1);
            fixed = true;
            break;
          }
        }
      if (!fixed) break;
    }
    if (w.get(r, r) < 0) w.row_negate(r);
    ++r;
  }
  for (int i = 0; i < r; ++i) out.invariant_factors.push_back(w.rows[i][i]);
  out.left = std::move(w.left);
  out.right = std::move(w.right);
  return out;
}

inline std::vector<Int> invariant_factors(const MatZ& m) {
  return smith_normal_form(m).invariant_factors;
}

inline int rank_z(const MatZ& m) { return smith_normal_form(m).rank(); }

// Saturated kernel: columns of the right transform past the rank.  The right
// transform is unimodular, so the span is the full kernel lattice and any
// integer vector in the rational kernel is an integer combination.
inline std::vector<std::vector<Int>> kernel_z(const MatZ& m) {
  auto sf = smith_normal_form(m, {.want_left = false, .want_right = true});
  std::vector<std::vector<Int>> basis;
  for (int c = sf.rank(); c < m.ncols; ++c) {
    std::vector<Int> v(m.ncols, 0);
    for (int i = 0; i < m.ncols; ++i) v[i] = sf.right->get(i, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve m x = b over Z; nullopt when no integral solution exists.
inline std::optional<std::vector<Int>> solve_z(const MatZ& m, const std::vector<Int>& b) {
  check((int)b.size() == m.nrows, "solve shape mismatch");
  auto sf = smith_normal_form(m, {.want_left = true, .want_right = true});
  // left * m * right = d  =>  x = right * y with d y = left b
  std::vector<Int> lb = sf.left->apply(b);
  std::vector<Int> y(m.ncols, 0);
  for (int i = 0; i < (int)lb.size(); ++i) {
    if (i < sf.rank()) {
      if (lb[i] % sf.invariant_factors[i] != 0) return std::nullopt;
      y[i] = lb[i] / sf.invariant_factors[i];
    } else if (lb[i] != 0) {
      return std::nullopt;
    }
  }
  return sf.right->apply(y);
}

}  // namespace exhom
