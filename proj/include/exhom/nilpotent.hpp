#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "exhom/matrix.hpp"
#include "exhom/rootdata.hpp"

namespace exhom {

// Integer gradings of a semisimple Lie algebra cut out by a weight in
// {0, 1, 2} on each simple root: a root alpha lands in the degree pairing its
// simple-root coordinates against the weights, and the Cartan subalgebra sits
// in degree zero.  The dimension in degrees zero and one adds up to the
// centralizer dimension of a nilpotent element with that diagram; in type A
// an independent Jordan-form oracle certifies the count, in the other
// families the grading formula is the only route.

using WeightedDiagram = std::vector<int>;

inline void validate_weighted_diagram(const RootSystem& rs, const WeightedDiagram& d) {
  if (rs.type.torus_rank > 0)
    throw input_error("diagram gradings need a semisimple type");
  if ((int)d.size() != rs.rank())
    throw input_error("the diagram needs one weight per simple root");
  for (int w : d)
    if (w < 0 || w > 2) throw input_error("diagram weights must be 0, 1, or 2");
}

// Weight 2 on the middle node of the five-node chain, zero elsewhere.
inline WeightedDiagram e6_chain_center_diagram() { return {0, 0, 0, 2, 0, 0}; }

// Weight 2 on the branch node, zero along the chain.
inline WeightedDiagram e8_branch_node_diagram() { return {0, 2, 0, 0, 0, 0, 0, 0}; }

struct GradingProfile {
  std::map<int, long long> dims;  // degree -> dimension
  int rank = 0;
  long long total = 0;  // dimension of the whole algebra

  long long dim_at(int w) const {
    auto it = dims.find(w);
    return it == dims.end() ? 0 : it->second;
  }
};

inline GradingProfile grading_profile(const RootSystem& rs, const WeightedDiagram& d) {
  validate_weighted_diagram(rs, d);
  GradingProfile out;
  out.rank = rs.rank();
  if (out.rank > 0) out.dims[0] += out.rank;
  for (auto& root : rs.roots) {
    int w = 0;
    for (int i = 0; i < rs.rank(); ++i) w += d[i] * root[i];
    ++out.dims[w];
  }
  out.total = out.rank + (long long)rs.roots.size();
  long long sum = 0;
  for (auto& [w, n] : out.dims) {
    sum += n;
    check(out.dim_at(-w) == n, "the grading must be symmetric about zero");
  }
  check(sum == out.total, "graded pieces must add up to the algebra dimension");
  check(out.dim_at(0) >= out.rank, "degree zero must contain the Cartan subalgebra");
  return out;
}

// Dimension of the centralizer of a nilpotent element with this diagram.
inline long long centralizer_dim(const GradingProfile& p) {
  return p.dim_at(0) + p.dim_at(1);
}

inline long long orbit_dim(const GradingProfile& p) {
  long long o = p.total - centralizer_dim(p);
  if (o % 2 != 0)
    throw input_error("odd orbit dimension; the weights do not come from a nilpotent orbit");
  return o;
}

// The transverse slice through the orbit has the centralizer dimension.
inline long long slodowy_slice_dim(const GradingProfile& p) { return centralizer_dim(p); }

// Dimension count for the slice inside the image of the cotangent bundle of a
// partial flag variety: twice the unipotent radical minus the orbit.  A
// negative value reports that the orbit cannot meet the image.
struct PartialSliceReport {
  long long fiber_dim = 0;  // positive roots outside the parabolic
  long long dim = 0;
  bool orbit_meets_image = true;
};

inline PartialSliceReport partial_resolution_slice_dim(const RootSystem& rs, const Parabolic& p,
                                                       const WeightedDiagram& d) {
  GradingProfile g = grading_profile(rs, d);
  PartialSliceReport out;
  out.fiber_dim = rs.num_positive() - positive_roots_in(rs, p);
  out.dim = 2 * out.fiber_dim - orbit_dim(g);
  out.orbit_meets_image = out.dim >= 0;
  return out;
}

// Pairing of the diagram cocharacter against a vector in simple-root
// coordinates; on the simple root i it returns the weight d(i).
inline long long jm_pairing(const WeightedDiagram& d, const std::vector<int>& root_coords) {
  if (d.size() != root_coords.size())
    throw input_error("the pairing needs matching ranks");
  for (int w : d)
    if (w < 0 || w > 2) throw input_error("diagram weights must be 0, 1, or 2");
  long long v = 0;
  for (size_t i = 0; i < d.size(); ++i) v += (long long)d[i] * root_coords[i];
  return v;
}

// The unique positive root of maximal height of a simple system.
inline std::vector<int> highest_root(const RootSystem& rs) {
  if (rs.type.factors.size() != 1 || rs.type.torus_rank > 0)
    throw input_error("the highest root needs a single simple factor");
  int best = -1;
  long long height = -1;
  bool tie = false;
  for (int idx : rs.positive) {
    long long h = 0;
    for (int c : rs.roots[idx]) h += c;
    if (h > height) {
      height = h;
      best = idx;
      tie = false;
    } else if (h == height) {
      tie = true;
    }
  }
  check(best >= 0 && !tie, "the maximal height root must be unique");
  return rs.roots[best];
}

// ---------------------------------------------------------------------------
// Type A: Jordan blocks as an independent oracle

inline void validate_partition(const std::vector<int>& partition) {
  if (partition.empty()) throw input_error("the partition must be nonempty");
  long long n = 0;
  for (int p : partition) {
    if (p < 1) throw input_error("partition parts must be positive");
    n += p;
  }
  if (n > 16) throw input_error("the partition size exceeds the supported range");
}

// Dimension of the centralizer of the nilpotent Jordan matrix of the given
// block sizes inside the traceless matrices, by the exact kernel rank of its
// adjoint action: commuting with e is a linear condition on all of gl_n, and
// the identity spans the trace direction inside the kernel.
inline long long type_a_rank_oracle(const std::vector<int>& partition) {
  validate_partition(partition);
  int n = 0;
  for (int p : partition) n += p;
  std::vector<std::pair<int, int>> e;  // entries (row, col) of the Jordan matrix
  int off = 0;
  for (int p : partition) {
    for (int i = 0; i + 1 < p; ++i) e.push_back({off + i, off + i + 1});
    off += p;
  }
  MatQ ad(n * n, n * n);
  for (auto& [r, c] : e) {
    // left multiplication: row r of e picks up row c of the argument
    for (int j = 0; j < n; ++j) ad.add_to(r * n + j, c * n + j, Rat(1));
    // right multiplication: column c of e picks up column r of the argument
    for (int i = 0; i < n; ++i) ad.add_to(i * n + c, i * n + r, Rat(-1));
  }
  long long kernel = (long long)n * n - rank_field(ad);
  return kernel - 1;
}

// Weighted diagram of the orbit with the given Jordan type: the multiset of
// ladders p-1, p-3, ..., 1-p sorted downward has consecutive gaps in
// {0, 1, 2}, which are the node weights.
inline WeightedDiagram partition_diagram(const std::vector<int>& partition) {
  validate_partition(partition);
  std::vector<int> h;
  for (int p : partition)
    for (int i = 0; i < p; ++i) h.push_back(p - 1 - 2 * i);
  std::sort(h.rbegin(), h.rend());
  WeightedDiagram d;
  for (size_t i = 0; i + 1 < h.size(); ++i) {
    int gap = h[i] - h[i + 1];
    check(gap >= 0 && gap <= 2, "ladder gaps must be 0, 1, or 2");
    d.push_back(gap);
  }
  return d;
}

}  // namespace exhom
