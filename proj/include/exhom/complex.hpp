#pragma once

#include <sstream>
#include <vector>

#include "exhom/matrix.hpp"

namespace exhom {

// Finitely generated abelian group: Z^free ⊕ Z/d_1 ⊕ ... with d_1 | d_2 | ...
// and every d_i > 1.  Over a field the same struct reports a dimension and no
// torsion.
struct AbelianGroupStructure {
  long long free_rank = 0;
  std::vector<Int> invariant_factors;

  AbelianGroupStructure() = default;
  AbelianGroupStructure(long long fr, std::vector<Int> inv)
      : free_rank(fr), invariant_factors(std::move(inv)) {
    validate();
  }

  void validate() const {
    check(free_rank >= 0, "negative free rank");
    for (size_t i = 0; i < invariant_factors.size(); ++i) {
      check(invariant_factors[i] > 1, "invariant factor must exceed 1");
      if (i > 0)
        check(invariant_factors[i] % invariant_factors[i - 1] == 0,
              "invariant factors must form a divisibility chain");
    }
  }

  static AbelianGroupStructure from_diagonal(long long fr, const std::vector<Int>& diag) {
    std::vector<Int> inv;
    for (auto& d : diag)
      if (d > 1) inv.push_back(d);
    return AbelianGroupStructure(fr, inv);
  }

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_finite() const { return free_rank == 0; }
  Int order() const {
    check(is_finite(), "infinite group has no order");
    Int n = 1;
    for (auto& d : invariant_factors) n *= d;
    return n;
  }
  bool operator==(const AbelianGroupStructure& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  bool operator!=(const AbelianGroupStructure& o) const { return !(*this == o); }

  std::string str() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
      first = false;
    }
    for (auto& d : invariant_factors) {
      if (!first) os << " + ";
      os << "Z/" << d.str();
      first = false;
    }
    return os.str();
  }
};

// Cohomologically indexed complex: differentials raise degree by one.
// Terms live in degrees [lo, hi]; diff[k] maps term(lo+k) -> term(lo+k+1).
template <class R>
struct ChainComplex {
  R ring{};
  int lo = 0;
  std::vector<long long> dims;   // dims[k] = dim of term(lo + k)
  std::vector<Mat<R>> diff;      // diff.size() == dims.size() - 1 (or 0 when empty)

  int hi() const { return lo + (int)dims.size() - 1; }
  bool in_range(int d) const { return d >= lo && d <= hi(); }
  long long dim(int d) const { return in_range(d) ? dims[d - lo] : 0; }

  // differential out of degree d (zero matrix when out of range)
  const Mat<R>* diff_at(int d) const {
    int k = d - lo;
    if (k < 0 || k >= (int)diff.size()) return nullptr;
    return &diff[k];
  }

  void validate() const {
    check(dims.size() == diff.size() + 1 || (dims.empty() && diff.empty()),
          "complex term/differential count mismatch");
    for (size_t k = 0; k < diff.size(); ++k) {
      check(diff[k].ncols == dims[k] && diff[k].nrows == dims[k + 1],
            "differential shape mismatch at degree " + std::to_string(lo + (int)k));
    }
  }

  // d∘d = 0 in every composable degree
  void check_complex() const {
    validate();
    for (size_t k = 0; k + 1 < diff.size(); ++k)
      check(diff[k + 1].mul(diff[k]).is_zero(),
            "differential does not square to zero at degree " + std::to_string(lo + (int)k));
  }
};

using ComplexZ = ChainComplex<ZZ>;
using ComplexQ = ChainComplex<QQ>;

// H^d = ker(d out of degree d) / im(d into degree d).
//
// Integer case: with the incoming differential in Smith form the middle term
// splits as an adapted basis, so torsion = its invariant factors and the free
// rank is dim - rank(in) - rank(out).  Field case: the same rank formula,
// dimension only.
inline AbelianGroupStructure cohomology(const ComplexZ& c, int d) {
  c.validate();
  if (!c.in_range(d)) return {};
  const MatZ* din = c.diff_at(d - 1);
  const MatZ* dout = c.diff_at(d);
  std::vector<Int> tors;
  long long rin = 0, rout = 0;
  if (din) {
    auto sf = smith_normal_form(*din);
    rin = sf.rank();
    for (auto& f : sf.invariant_factors)
      if (f > 1) tors.push_back(f);
  }
  if (dout) rout = rank_z(*dout);
  long long fr = c.dim(d) - rin - rout;
  check(fr >= 0, "negative cohomology rank: input is not a complex");
  return AbelianGroupStructure(fr, std::move(tors));
}

template <class R>
AbelianGroupStructure cohomology(const ChainComplex<R>& c, int d) {
  static_assert(R::is_field);
  c.validate();
  if (!c.in_range(d)) return {};
  const Mat<R>* din = c.diff_at(d - 1);
  const Mat<R>* dout = c.diff_at(d);
  long long rin = din ? rank_field(*din) : 0;
  long long rout = dout ? rank_field(*dout) : 0;
  long long fr = c.dim(d) - rin - rout;
  check(fr >= 0, "negative cohomology rank: input is not a complex");
  return AbelianGroupStructure(fr, {});
}

template <class R>
std::vector<AbelianGroupStructure> cohomology_all(const ChainComplex<R>& c) {
  std::vector<AbelianGroupStructure> out;
  for (int d = c.lo; d <= c.hi(); ++d) out.push_back(cohomology(c, d));
  return out;
}

// Cohomology of a rational complex split along an extra grading that the
// differential preserves: wts[k][t] is the grade of basis vector t in the
// term of degree lo + k.  Returns one map (grade -> dim) per term, zero
// entries omitted.  Entries of the differential crossing grades are an error.
inline std::vector<std::map<int, long long>> cohomology_by_weight(
    const ChainComplex<QQ>& c, const std::vector<std::vector<int>>& wts) {
  int len = (int)c.dims.size();
  check((int)wts.size() == len, "one grade list per complex term");
  std::set<int> grades;
  for (int k = 0; k < len; ++k) {
    check((long long)wts[k].size() == c.dims[k], "grade list length mismatch");
    for (int w : wts[k]) grades.insert(w);
  }
  std::vector<std::map<int, long long>> h(len);
  for (int w : grades) {
    ChainComplex<QQ> sub;
    sub.ring = c.ring;
    sub.lo = c.lo;
    std::vector<std::vector<int>> keep(len);  // new index per kept vector
    for (int k = 0; k < len; ++k) {
      int cnt = 0;
      for (int t = 0; t < (int)wts[k].size(); ++t)
        keep[k].push_back(wts[k][t] == w ? cnt++ : -1);
      sub.dims.push_back(cnt);
    }
    for (int k = 0; k + 1 < len; ++k) {
      Mat<QQ> d((int)sub.dims[k + 1], (int)sub.dims[k]);
      const Mat<QQ>& full = c.diff[k];
      for (int r = 0; r < full.nrows; ++r) {
        if (keep[k + 1][r] < 0) continue;
        for (auto& [col, v] : full.rows[r]) {
          check(keep[k][col] >= 0, "differential does not preserve the grading");
          d.set(keep[k + 1][r], keep[k][col], v);
        }
      }
      sub.diff.push_back(std::move(d));
    }
    for (int k = 0; k < len; ++k) {
      long long dim = cohomology(sub, c.lo + k).free_rank;
      if (dim != 0) h[k][w] = dim;
    }
  }
  return h;
}

}  // namespace exhom
