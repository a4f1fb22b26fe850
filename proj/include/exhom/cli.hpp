#pragma once

// Command line front end: JSON files in, a JSON report out, with a
// content-addressed result cache keyed by the canonicalized inputs.
//
// Exit codes: 0 when the requested invariants hold (or for pure queries),
// 1 when a verification subcommand finds a failure or an internal
// consistency check trips, 2 for unusable input.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "acceptance.hpp"
#include "bg.hpp"
#include "gcoh.hpp"
#include "hochschild.hpp"
#include "json_io.hpp"
#include "koszul.hpp"
#include "nilpotent.hpp"
#include "rootdata.hpp"

namespace exhom {
namespace cli {

// Bumping the version invalidates every existing cache entry.
inline constexpr const char* tool_version = "exhom 0.1.0";

struct Io {
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

struct Common {
  bool no_cache = false;
  std::string cache_dir;
  std::string output;
};

// A job is hashed by command, tool version, and canonicalized inputs and
// parameters; file paths never enter the key.
struct Job {
  std::string command;
  Json inputs = Json::object();
  Json params = Json::object();
  bool use_cache = true;
  std::string cache_dir;
  std::string output;
};

struct Outcome {
  Json body;
  int exit_code = 0;
};

inline std::string resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* e = std::getenv("EXHOM_CACHE_DIR"); e && *e) return e;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/exhom";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/exhom";
  return "";
}

inline Job make_job(const Common& c, std::string command) {
  Job j;
  j.command = std::move(command);
  j.use_cache = !c.no_cache;
  j.cache_dir = resolve_cache_dir(c.cache_dir);
  j.output = c.output;
  return j;
}

inline std::string job_key(const Job& j) {
  std::string blob;
  blob += j.command;
  blob += '\0';
  blob += tool_version;
  blob += '\0';
  blob += canonical_dump(j.inputs);
  blob += '\0';
  blob += canonical_dump(j.params);
  return hash_hex(fnv1a64(blob));
}

inline void write_payload(const Job& job, const std::string& bytes, Io io) {
  if (job.output.empty()) {
    *io.out << bytes << std::flush;
    return;
  }
  std::ofstream f(job.output, std::ios::binary);
  if (!f) throw input_error(job.output + ": cannot open the output file for writing");
  f << bytes;
}

// Cache hits replay the stored bytes and exit code; entries written by a
// different tool version are ignored and recomputed.
inline int emit(const Job& job, Io io, const std::function<Outcome()>& compute) {
  const std::string key = job_key(job);
  std::string entry_path;
  if (job.use_cache && !job.cache_dir.empty()) entry_path = job.cache_dir + "/" + key + ".json";
  if (!entry_path.empty()) {
    std::ifstream f(entry_path, std::ios::binary);
    if (f) {
      Json entry = Json::parse(f, nullptr, false);
      if (entry.is_object() && entry.value("version", std::string()) == tool_version &&
          entry.contains("output") && entry["output"].is_string() && entry.contains("exit") &&
          entry["exit"].is_number_integer()) {
        write_payload(job, entry["output"].get<std::string>(), io);
        *io.err << "cached " << key << "\n";
        return entry["exit"].get<int>();
      }
    }
  }
  Outcome r = compute();
  const std::string bytes = r.body.dump(2) + "\n";
  if (!entry_path.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(job.cache_dir, ec);
    if (!ec) {
      Json entry;
      entry["command"] = job.command;
      entry["exit"] = r.exit_code;
      entry["key"] = key;
      entry["output"] = bytes;
      entry["version"] = tool_version;
      std::ofstream f(entry_path, std::ios::binary);
      if (f) f << entry.dump(2) << "\n";
    }
  }
  write_payload(job, bytes, io);
  return r.exit_code;
}

inline std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw input_error("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw input_error("cannot read '" + tok + "' in the " + what + " list");
    }
  }
  if (out.empty()) throw input_error("the " + what + " list is empty");
  return out;
}

inline std::vector<Int> parse_big_list(const std::string& s, const std::string& what) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(Int(tok));
    } catch (const std::exception&) {
      throw input_error("cannot read '" + tok + "' in the " + what + " list");
    }
  }
  if (out.empty()) throw input_error("the " + what + " list is empty");
  return out;
}

// "full" selects every simple root, "none" or "" the empty set.
inline Parabolic parse_parabolic_arg(const RootSystem& rs, const std::string& s,
                                     const std::string& what) {
  if (s == "full") return full_parabolic(rs);
  if (s.empty() || s == "none") return {};
  std::vector<int> ids = parse_int_list(s, what);
  std::sort(ids.begin(), ids.end());
  Parabolic p(ids.begin(), ids.end());
  validate_parabolic(rs, p);
  return p;
}

inline void guard_range(long long v, long long lo, long long hi, const std::string& what) {
  if (v < lo || v > hi)
    throw input_error(what + " must lie between " + std::to_string(lo) + " and " +
                      std::to_string(hi));
}

inline GradedAlgebra build_algebra(const Json& aj, const std::string& path) {
  try {
    return parse_algebra_input(aj, path).build();
  } catch (const input_error& e) {
    std::string w = e.what();
    if (w.rfind(path, 0) == 0) throw;
    throw input_error(path + ": " + w);
  }
}

inline Bimodule build_bimodule(const Json& bj, const GradedAlgebra& a, const std::string& path) {
  return parse_bimodule_input(bj, a, path).build(a, path);
}

inline AlgebraMorphism build_twist(const Json& tj, const GradedAlgebra& a,
                                   const std::string& path) {
  AlgebraMorphism f{&a, parse_matq(need(tj, "matrix", path), a.dim(), a.dim(), path + ".matrix")};
  try {
    f.validate();
  } catch (const check_error& e) {
    throw field_error(path + ".matrix", e.what());
  }
  if (!f.is_automorphism())
    throw field_error(path + ".matrix", "the twist matrix must be invertible");
  return f;
}

// --- koszul ---

inline int cmd_koszul_check(const Common& c, const std::string& algebra_file, int max_n, Io io) {
  guard_range(max_n, 1, 10, "--max-n");
  Json aj = load_json_file(algebra_file);
  Job job = make_job(c, "koszul check");
  job.inputs["algebra"] = aj;
  job.params["max_n"] = max_n;
  return emit(job, io, [&]() -> Outcome {
    GradedAlgebra a = build_algebra(aj, algebra_file);
    KoszulCertificate cert = is_koszul(a, max_n);
    Json r;
    r["koszul"] = cert.koszul;
    r["max_n"] = cert.max_n;
    if (!cert.koszul)
      r["fail"] = Json{{"internal_weight", cert.fail_internal_weight},
                       {"level", cert.fail_n},
                       {"source", cert.fail_i},
                       {"target", cert.fail_j},
                       {"twist_weight", cert.fail_twist_weight}};
    return {r, cert.koszul ? 0 : 1};
  });
}

inline int cmd_koszul_resolve(const Common& c, const std::string& algebra_file, int cap, Io io) {
  guard_range(cap, 2, 24, "--cap");
  Json aj = load_json_file(algebra_file);
  Job job = make_job(c, "koszul resolve");
  job.inputs["algebra"] = aj;
  job.params["cap"] = cap;
  return emit(job, io, [&]() -> Outcome {
    GradedAlgebra a = build_algebra(aj, algebra_file);
    KoszulComplex kc = koszul_complex(a, cap);
    KosAcyclicReport rep = verify_kos_acyclic(a, cap);
    Json dims = Json::object();
    for (int d = kc.complex.lo; d <= kc.complex.hi(); ++d)
      dims[std::to_string(d)] = kc.complex.dim(d);
    Json h = Json::object();
    for (auto& [d, v] : rep.h_dims) h[std::to_string(d)] = v;
    Json r;
    r["acyclic"] = rep.acyclic;
    r["dims"] = dims;
    r["h"] = h;
    r["length"] = kc.length;
    r["truncated"] = kc.truncated;
    if (!kc.warning.empty()) r["warning"] = kc.warning;
    if (!rep.acyclic) r["first_failing_degree"] = rep.first_failing_degree;
    return {r, 0};
  });
}

inline int cmd_koszul_dual(const Common& c, const std::string& algebra_file, int max_n, Io io) {
  guard_range(max_n, 0, 8, "--max-n");
  Json aj = load_json_file(algebra_file);
  Job job = make_job(c, "koszul dual");
  job.inputs["algebra"] = aj;
  job.params["max_n"] = max_n;
  return emit(job, io, [&]() -> Outcome {
    GradedAlgebra a = build_algebra(aj, algebra_file);
    DualExtReport rep = verify_dual_ext(a, max_n);
    Json levels = Json::array();
    for (int n = 0; n < (int)rep.dims.size(); ++n) {
      Json entries = Json::array();
      for (auto& [ij, dd] : rep.dims[n])
        entries.push_back(Json{{"dual_dim", dd.first},
                               {"ext_dim", dd.second},
                               {"source", ij.first},
                               {"target", ij.second}});
      levels.push_back(Json{{"entries", entries}, {"level", n}});
    }
    Json r;
    r["levels"] = levels;
    r["match"] = rep.match;
    r["max_n"] = rep.max_n;
    if (!rep.match)
      r["fail"] = Json{{"level", rep.fail_n}, {"source", rep.fail_i}, {"target", rep.fail_j}};
    return {r, rep.match ? 0 : 1};
  });
}

// --- hh ---

inline int cmd_hh_compute(const Common& c, const std::string& algebra_file,
                          const std::string& bimodule_file, const std::string& twist_file,
                          int depth, Io io) {
  guard_range(depth, 0, 6, "--depth");
  Json aj = load_json_file(algebra_file);
  std::string bpath = bimodule_file.empty() ? "bimodule" : bimodule_file;
  Json bj = bimodule_file.empty() ? Json{{"kind", "regular"}} : load_json_file(bimodule_file);
  Json tj;
  if (!twist_file.empty()) tj = load_json_file(twist_file);
  Job job = make_job(c, "hh compute");
  job.inputs["algebra"] = aj;
  job.inputs["bimodule"] = bj;
  if (!tj.is_null()) job.inputs["twist"] = tj;
  job.params["depth"] = depth;
  return emit(job, io, [&]() -> Outcome {
    GradedAlgebra a = build_algebra(aj, algebra_file);
    Bimodule m = build_bimodule(bj, a, bpath);
    AlgebraMorphism f =
        tj.is_null() ? AlgebraMorphism::identity(a) : build_twist(tj, a, twist_file);
    HochschildTable t = hochschild_homology(a, m, f, depth);
    Json dims = Json::array();
    for (auto v : t.dims) dims.push_back(v);
    Json byw = Json::array();
    for (int n = 0; n < (int)t.by_weight.size(); ++n) {
      Json w = Json::object();
      for (auto& [wt, dim] : t.by_weight[n]) w[std::to_string(wt)] = dim;
      byw.push_back(Json{{"degree", -n}, {"weights", w}});
    }
    Json r;
    r["by_weight"] = byw;
    r["depth"] = t.depth;
    r["dims"] = dims;
    return {r, 0};
  });
}

// --- bg ---

// Shared assembly for the trace subcommands: algebra, bimodule, group,
// generator action, and an optional equivariant twist.
struct TraceSetup {
  GradedAlgebra a;
  FiniteGroup g;
  Bimodule m;
  AlgebraMorphism twist;
  FiniteGroupAction act;
};

inline TraceSetup build_trace_setup(const Json& aj, const std::string& apath, const Json& bj,
                                    const std::string& bpath, const Json& gj,
                                    const std::string& gpath, const Json& actj,
                                    const std::string& actpath, const Json& tj,
                                    const std::string& tpath) {
  TraceSetup s;
  s.a = build_algebra(aj, apath);
  s.g = parse_group(gj, gpath);
  s.m = build_bimodule(bj, s.a, bpath);
  s.twist = tj.is_null() ? AlgebraMorphism::identity(s.a) : build_twist(tj, s.a, tpath);
  ActionInput ai =
      parse_action_input(actj, s.a.dim(), s.m.dim(), (int)s.g.gens.size(), actpath);
  std::vector<AlgebraMorphism> alg;
  for (auto& mat : ai.alg) alg.push_back(AlgebraMorphism{&s.a, mat});
  s.act = group_action(s.g, s.a, s.m, alg, ai.mod, s.twist);
  return s;
}

inline int cmd_bg_trace(const Common& c, const std::string& algebra_file,
                        const std::string& bimodule_file, const std::string& group_file,
                        const std::string& action_file, const std::string& twist_file, int depth,
                        bool bounded, int cap, Io io) {
  guard_range(depth, 1, 6, "--depth");
  guard_range(cap, 2, 24, "--cap");
  Json aj = load_json_file(algebra_file);
  std::string bpath = bimodule_file.empty() ? "bimodule" : bimodule_file;
  Json bj = bimodule_file.empty() ? Json{{"kind", "regular"}} : load_json_file(bimodule_file);
  Json gj = load_json_file(group_file);
  Json actj = load_json_file(action_file);
  Json tj;
  if (!twist_file.empty()) tj = load_json_file(twist_file);
  Job job = make_job(c, "bg trace");
  job.inputs["action"] = actj;
  job.inputs["algebra"] = aj;
  job.inputs["bimodule"] = bj;
  job.inputs["group"] = gj;
  if (!tj.is_null()) job.inputs["twist"] = tj;
  job.params["bounded"] = bounded;
  job.params["cap"] = cap;
  job.params["depth"] = depth;
  return emit(job, io, [&]() -> Outcome {
    TraceSetup s = build_trace_setup(aj, algebra_file, bj, bpath, gj, group_file, actj,
                                     action_file, tj, twist_file);
    BGComplex bg = pre_bg_complex(s.act, s.m, depth);
    Json fibers = Json::object();
    for (int e = 0; e < s.g.size(); ++e) {
      ComplexQ fib = fiber_at(bg, e);
      Json fd = Json::object();
      for (int d = fib.lo; d <= fib.hi(); ++d)
        fd[std::to_string(d)] = cohomology(fib, d).free_rank;
      fibers[std::to_string(e)] = fd;
    }
    GlobalSections gs = global_sections(bg);
    Json r;
    r["depth"] = depth;
    r["fibers"] = fibers;
    r["global"] = degree_dim_map(gs.complex.lo, gs.h);
    if (bounded) {
      BoundedTraceModel bt = bounded_trace_model(s.act, s.m, cap, true);
      Json bh = Json::object();
      for (int d = bt.complex.lo; d <= bt.complex.hi(); ++d)
        bh[std::to_string(d)] = cohomology(bt.complex, d).free_rank;
      Amplitude amp = amplitude(bt.complex);
      Json b;
      b["amplitude"] = amp.empty ? Json() : Json::array({amp.lo, amp.hi});
      b["h"] = bh;
      b["length"] = bt.length;
      b["truncated"] = bt.truncated;
      if (!bt.warning.empty()) b["warning"] = bt.warning;
      r["bounded"] = b;
    }
    return {r, 0};
  });
}

inline int cmd_bg_inertia(const Common& c, const std::string& group_file,
                          const std::string& points_file, Io io) {
  Json gj = load_json_file(group_file);
  Json pj = load_json_file(points_file);
  Job job = make_job(c, "bg inertia");
  job.inputs["group"] = gj;
  job.inputs["points"] = pj;
  return emit(job, io, [&]() -> Outcome {
    FiniteGroup g = parse_group(gj, group_file);
    PointsInput pts = parse_points_input(pj, points_file);
    InertiaReport rep = verify_inertia(g, pts.size, pts.gens);
    bool agree = rep.sections_h0 == rep.orbit_count;
    Json r;
    r["agree"] = agree;
    r["orbit_count"] = rep.orbit_count;
    r["sections_h0"] = rep.sections_h0;
    return {r, agree ? 0 : 1};
  });
}

inline int cmd_bg_homotopy(const Common& c, const std::string& algebra_file,
                           const std::string& bimodule_file, const std::string& group_file,
                           const std::string& action_file, const std::string& twist_file,
                           const std::string& element_file, int depth, Io io) {
  guard_range(depth, 1, 6, "--depth");
  Json aj = load_json_file(algebra_file);
  std::string bpath = bimodule_file.empty() ? "bimodule" : bimodule_file;
  Json bj = bimodule_file.empty() ? Json{{"kind", "regular"}} : load_json_file(bimodule_file);
  Json gj = load_json_file(group_file);
  Json actj = load_json_file(action_file);
  Json ej = load_json_file(element_file);
  Json tj;
  if (!twist_file.empty()) tj = load_json_file(twist_file);
  Job job = make_job(c, "bg homotopy");
  job.inputs["action"] = actj;
  job.inputs["algebra"] = aj;
  job.inputs["bimodule"] = bj;
  job.inputs["element"] = ej;
  job.inputs["group"] = gj;
  if (!tj.is_null()) job.inputs["twist"] = tj;
  job.params["depth"] = depth;
  return emit(job, io, [&]() -> Outcome {
    TraceSetup s = build_trace_setup(aj, algebra_file, bj, bpath, gj, group_file, actj,
                                     action_file, tj, twist_file);
    Elem r0 = parse_elem(ej, s.a, element_file);
    HomotopyReport rep = verify_homotopy(s.act, s.m, r0, depth);
    Json r;
    r["depth"] = rep.depth;
    r["zero_difference"] = rep.zero_difference;
    return {r, rep.zero_difference ? 0 : 1};
  });
}

// --- rootdata ---

struct LatticeArg {
  std::string name;
  bool is_file = false;
  Json file;
};

inline LatticeArg load_lattice_arg(const std::string& s) {
  LatticeArg out;
  out.name = s;
  out.is_file = (s != "weight" && s != "root");
  if (out.is_file) out.file = load_json_file(s);
  return out;
}

inline RootDatum datum_from(const CartanType& t, const LatticeArg& x) {
  if (!x.is_file) return standard_datum(t, x.name);
  RootDatum d;
  d.type = t;
  d.x = parse_matz(need(x.file, "matrix", x.name), t.rank(), -1, x.name + ".matrix");
  try {
    validate_root_datum(d);
  } catch (const input_error& e) {
    throw field_error(x.name + ".matrix", e.what());
  }
  return d;
}

inline int cmd_rootdata_datum(const Common& c, const std::string& command,
                              const std::string& type_str, const std::string& lattice, Io io) {
  CartanType t = parse_cartan_type(type_str);
  LatticeArg x = load_lattice_arg(lattice);
  Job job = make_job(c, command);
  job.params["lattice"] = x.is_file ? "file" : x.name;
  job.params["type"] = type_str;
  if (x.is_file) job.inputs["lattice"] = x.file;
  return emit(job, io, [&]() -> Outcome {
    RootDatum d = datum_from(t, x);
    Json r;
    r["fundamental_group"] = print_abelian(fundamental_group(d));
    r["type"] = cartan_type_str(t);
    if (command == "rootdata schur")
      r["multiplier"] = print_abelian(schur_multiplier_connected(d));
    return {r, 0};
  });
}

inline int cmd_rootdata_poincare(const Common& c, const std::string& type_str,
                                 const std::string& pstr, const std::string& qstr, long long cap,
                                 Io io) {
  guard_range(cap, 1, 100000000, "--cap");
  CartanType t = parse_cartan_type(type_str);
  Job job = make_job(c, "rootdata poincare");
  job.params["cap"] = cap;
  job.params["p"] = pstr;
  job.params["q"] = qstr;
  job.params["type"] = type_str;
  return emit(job, io, [&]() -> Outcome {
    Json r;
    r["type"] = cartan_type_str(t);
    if (pstr.empty() && qstr == "full") {
      ZPoly pw = poincare_weyl(t, cap);
      check(poly_eval_int(pw, Int(1)) == weyl_order(t),
            "the cell polynomial does not sum to the reflection group order");
      r["coefficients"] = print_poly(pw);
      r["index"] = big_json(weyl_order(t));
    } else {
      RootSystem rs = root_system(t);
      Parabolic p = parse_parabolic_arg(rs, pstr, "--P");
      Parabolic q = parse_parabolic_arg(rs, qstr, "--Q");
      FlagCells fc = flag_cells(rs, p, q, cap);
      Json cells = Json::array();
      for (auto v : fc.dims) cells.push_back(v);
      r["cells"] = cells;
      r["coefficients"] = print_poly(fc.in_q);
      r["index"] = big_json(fc.index);
    }
    return {r, 0};
  });
}

struct SplitPoint {
  bool root_of_unity = false;
  int n = 0;
  long long k = 0;
  Rat value;
};

// "cyclotomic:N:K" names the K-th power of a primitive N-th root of unity;
// anything else must parse as a rational number.
inline SplitPoint parse_split_point(const std::string& s) {
  SplitPoint out;
  if (s.rfind("cyclotomic:", 0) == 0) {
    out.root_of_unity = true;
    std::string rest = s.substr(11);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw input_error("root-of-unity points use the form cyclotomic:N:K");
    try {
      std::size_t used = 0;
      out.n = std::stoi(rest.substr(0, colon), &used);
      if (used != colon) throw input_error("");
      std::string ks = rest.substr(colon + 1);
      out.k = std::stoll(ks, &used);
      if (used != ks.size()) throw input_error("");
    } catch (const std::exception&) {
      throw input_error("root-of-unity points use the form cyclotomic:N:K");
    }
    return out;
  }
  out.value = parse_rat(s);
  return out;
}

inline int cmd_rootdata_split(const Common& c, const std::string& type_str,
                              const std::string& pstr, const std::string& qstr,
                              const std::string& at, long long cap, Io io) {
  guard_range(cap, 1, 100000000, "--cap");
  CartanType t = parse_cartan_type(type_str);
  SplitPoint pt = parse_split_point(at);
  Job job = make_job(c, "rootdata split");
  job.params["at"] = at;
  job.params["cap"] = cap;
  job.params["p"] = pstr;
  job.params["q"] = qstr;
  job.params["type"] = type_str;
  return emit(job, io, [&]() -> Outcome {
    RootSystem rs = root_system(t);
    Parabolic p = parse_parabolic_arg(rs, pstr, "--P");
    Parabolic q = parse_parabolic_arg(rs, qstr, "--Q");
    Json r;
    r["at"] = at;
    r["type"] = cartan_type_str(t);
    bool splits = false;
    if (pt.root_of_unity) {
      splits = splitting_criterion_root_of_unity(rs, p, q, pt.n, pt.k, cap);
      FlagCells fc = flag_cells(rs, p, q, cap);
      long long kk = ((pt.k % pt.n) + pt.n) % pt.n;
      ZPoly acc(pt.n, Int(0));
      for (long long m = 0; m < (long long)fc.dims.size(); ++m)
        acc[(2 * m * kk) % pt.n] += Int(fc.dims[m]);
      ZPoly quo, rem;
      poly_divrem(poly_trim(acc), cyclotomic(pt.n), &quo, &rem);
      check(splits == !rem.empty(),
            "the reduced evaluation disagrees with the splitting criterion");
      r["value"] = Json{{"coefficients", print_poly(rem)}, {"conductor", pt.n}};
    } else {
      splits = splitting_criterion(rs, p, q, pt.value, cap);
      FlagCells fc = flag_cells(rs, p, q, cap);
      Rat v = poly_eval_rat(fc.in_q, pt.value);
      check(splits == (v != Rat(0)),
            "the rational evaluation disagrees with the splitting criterion");
      r["value"] = rat_str(v);
    }
    r["splits"] = splits;
    return {r, 0};
  });
}

inline int cmd_rootdata_brionpeyre(const Common& c, const std::string& type_str,
                                   const std::string& pstr, const std::string& qstr,
                                   bool pair_given, long long cap, Io io) {
  guard_range(cap, 1, 100000000, "--cap");
  CartanType t = parse_cartan_type(type_str);
  Job job = make_job(c, "rootdata brionpeyre");
  job.params["cap"] = cap;
  job.params["p"] = pair_given ? pstr : "all";
  job.params["q"] = pair_given ? qstr : "all";
  job.params["type"] = type_str;
  return emit(job, io, [&]() -> Outcome {
    RootSystem rs = root_system(t);
    Json pairs = Json::array();
    bool all_divide = true;
    auto add = [&](const Parabolic& p, const Parabolic& q) {
      bool ok = brion_peyre_check(rs, p, q, cap);
      all_divide = all_divide && ok;
      Json pj = Json::array();
      for (int i : p) pj.push_back(i);
      Json qj = Json::array();
      for (int i : q) qj.push_back(i);
      pairs.push_back(Json{{"divides", ok}, {"p", pj}, {"q", qj}});
    };
    if (pair_given) {
      add(parse_parabolic_arg(rs, pstr, "--P"), parse_parabolic_arg(rs, qstr, "--Q"));
    } else {
      int rk = rs.rank();
      if (rk > 4)
        throw input_error("full pair enumeration is limited to rank at most 4; pass --P and --Q");
      for (int qm = 0; qm < (1 << rk); ++qm) {
        for (int pm = qm;; pm = (pm - 1) & qm) {
          Parabolic p, q;
          for (int i = 0; i < rk; ++i)
            if (qm >> i & 1) q.push_back(i);
          for (int i = 0; i < rk; ++i)
            if (pm >> i & 1) p.push_back(i);
          add(p, q);
          if (pm == 0) break;
        }
      }
    }
    Json r;
    r["all_divide"] = all_divide;
    r["pairs"] = pairs;
    return {r, all_divide ? 0 : 1};
  });
}

inline int cmd_rootdata_minuscule(const Common& c, const std::string& type_str,
                                  const std::string& wstr, Io io) {
  CartanType t = parse_cartan_type(type_str);
  std::vector<Int> w = parse_big_list(wstr, "--weight");
  Job job = make_job(c, "rootdata minuscule");
  job.params["type"] = type_str;
  job.params["weight"] = wstr;
  return emit(job, io, [&]() -> Outcome {
    RootSystem rs = root_system(t);
    std::vector<Int> lift = minuscule_lift(rs, w);
    Json wj = Json::array();
    for (auto& v : w) wj.push_back(big_json(v));
    Json lj = Json::array();
    for (auto& v : lift) lj.push_back(big_json(v));
    Json r;
    r["lift"] = lj;
    r["type"] = cartan_type_str(t);
    r["weight"] = wj;
    return {r, 0};
  });
}

// --- orbit ---

inline int cmd_orbit(const Common& c, const std::string& which, const std::string& type_str,
                     const std::string& wstr, const std::string& pstr, Io io) {
  CartanType t = parse_cartan_type(type_str);
  std::vector<int> d = parse_int_list(wstr, "--weights");
  Job job = make_job(c, "orbit " + which);
  job.params["type"] = type_str;
  job.params["weights"] = wstr;
  if (which == "slicedim") job.params["p"] = pstr;
  return emit(job, io, [&]() -> Outcome {
    RootSystem rs = root_system(t);
    validate_weighted_diagram(rs, d);
    GradingProfile g = grading_profile(rs, d);
    Json wj = Json::array();
    for (int v : d) wj.push_back(v);
    Json r;
    r["type"] = cartan_type_str(t);
    r["weights"] = wj;
    if (which == "grading") {
      Json dims = Json::object();
      for (auto& [w, n] : g.dims) dims[std::to_string(w)] = n;
      r["dims"] = dims;
      r["rank"] = g.rank;
      r["total"] = g.total;
    } else if (which == "dims") {
      r["centralizer_dim"] = centralizer_dim(g);
      r["orbit_dim"] = orbit_dim(g);
      r["slice_dim"] = slodowy_slice_dim(g);
      r["total"] = g.total;
    } else {
      Parabolic p = parse_parabolic_arg(rs, pstr, "--P");
      PartialSliceReport s = partial_resolution_slice_dim(rs, p, d);
      r["dim"] = s.dim;
      r["fiber_dim"] = s.fiber_dim;
      r["orbit_meets_image"] = s.orbit_meets_image;
    }
    return {r, 0};
  });
}

// --- gcoh ---

inline int cmd_gcoh_compute(const Common& c, const std::string& group_file,
                            const std::string& module_file, int degree, Io io) {
  Json gj = load_json_file(group_file);
  Json mj;
  if (!module_file.empty()) mj = load_json_file(module_file);
  Job job = make_job(c, "gcoh compute");
  job.inputs["group"] = gj;
  if (!mj.is_null()) job.inputs["module"] = mj;
  job.params["degree"] = degree;
  job.params["module"] = mj.is_null() ? "trivial" : "file";
  return emit(job, io, [&]() -> Outcome {
    FiniteGroup g = parse_group(gj, group_file);
    GModule m = mj.is_null() ? trivial_coefficient_module((int)g.gens.size())
                             : parse_gmodule(mj, (int)g.gens.size(), module_file);
    validate_module(g, m);
    CohomologyResult h = cohomology(g, m, degree);
    Json r;
    r["cohomology"] = print_abelian(h.group);
    r["degree"] = degree;
    r["group_order"] = (long long)g.size();
    return {r, 0};
  });
}

inline int cmd_gcoh_schur(const Common& c, const std::string& group_file, Io io) {
  Json gj = load_json_file(group_file);
  Job job = make_job(c, "gcoh schur");
  job.inputs["group"] = gj;
  return emit(job, io, [&]() -> Outcome {
    FiniteGroup g = parse_group(gj, group_file);
    CohomologyResult h = schur_multiplier_result(g);
    Json r;
    r["group_order"] = (long long)g.size();
    r["multiplier"] = print_abelian(h.group);
    return {r, 0};
  });
}

inline int cmd_gcoh_survey(const Common& c, Io io) {
  Job job = make_job(c, "gcoh survey");
  return emit(job, io, [&]() -> Outcome {
    std::vector<SurveyFinding> rows = case_survey_report();
    Json arr = Json::array();
    int mismatches = 0;
    for (auto& f : rows) {
      if (!f.matches_stated && !f.above_cap) ++mismatches;
      Json e;
      e["above_cap"] = f.above_cap;
      e["computed"] = f.computed;
      e["label"] = f.label;
      e["matches_stated"] = f.matches_stated;
      e["note"] = f.note;
      e["stated"] = f.stated;
      arr.push_back(e);
    }
    Json r;
    r["findings"] = arr;
    r["mismatches"] = mismatches;
    return {r, 0};
  });
}

inline int cmd_gcoh_product(const Common& c, const std::string& left_file,
                            const std::string& right_file, Io io) {
  Json lj = load_json_file(left_file);
  Json rj = load_json_file(right_file);
  Job job = make_job(c, "gcoh product");
  job.inputs["left"] = lj;
  job.inputs["right"] = rj;
  return emit(job, io, [&]() -> Outcome {
    FiniteGroup a = parse_group(lj, left_file);
    FiniteGroup b = parse_group(rj, right_file);
    ProductFormulaReport rep = product_formula_check(a, b);
    Json r;
    r["computed"] = big_json(rep.computed);
    r["consistent"] = rep.consistent;
    r["hom_order"] = big_json(rep.hom_order);
    r["left"] = print_abelian(rep.left);
    r["predicted"] = big_json(rep.predicted);
    r["product"] = print_abelian(rep.product);
    r["right"] = print_abelian(rep.right);
    return {r, rep.consistent ? 0 : 1};
  });
}

inline int cmd_gcoh_semidirect(const Common& c, const std::string& group_file,
                               const std::string& module_file, Io io) {
  Json gj = load_json_file(group_file);
  Json mj = load_json_file(module_file);
  Job job = make_job(c, "gcoh semidirect");
  job.inputs["group"] = gj;
  job.inputs["module"] = mj;
  return emit(job, io, [&]() -> Outcome {
    FiniteGroup gamma = parse_group(gj, group_file);
    GModule nmod = parse_gmodule(mj, (int)gamma.gens.size(), module_file);
    validate_module(gamma, nmod);
    SemidirectReport rep = semidirect_sequence_check(gamma, nmod);
    bool ok = rep.order_identity && rep.cokernel_bounded;
    Json r;
    r["acting"] = print_abelian(rep.acting);
    r["cokernel_bounded"] = rep.cokernel_bounded;
    r["consistent"] = ok;
    r["h1_order"] = big_json(rep.h1_order);
    r["h2_order"] = big_json(rep.h2_order);
    r["image_in_invariants"] = big_json(rep.image_in_invariants);
    r["invariants_order"] = big_json(rep.invariants_order);
    r["kernel_part"] = print_abelian(rep.kernel_part);
    r["order_identity"] = rep.order_identity;
    r["restriction_kernel"] = big_json(rep.restriction_kernel);
    r["whole"] = print_abelian(rep.whole);
    return {r, ok ? 0 : 1};
  });
}

inline int cmd_gcoh_central(const Common& c, const std::string& group_file,
                            const std::string& center, Io io) {
  Json gj = load_json_file(group_file);
  Job job = make_job(c, "gcoh central");
  job.inputs["group"] = gj;
  job.params["center"] = center;
  return emit(job, io, [&]() -> Outcome {
    FiniteGroup g = parse_group(gj, group_file);
    std::vector<int> zseed;
    if (center == "auto") {
      zseed = center_ids(g);
    } else {
      zseed = parse_int_list(center, "--center");
      for (int id : zseed) {
        if (id < 0 || id >= g.size())
          throw input_error("--center names element " + std::to_string(id) +
                            " outside the group");
        for (int x = 0; x < g.size(); ++x)
          if (g.op(id, x) != g.op(x, id))
            throw input_error("--center element " + std::to_string(id) + " is not central");
      }
    }
    CentralReport rep = central_sequence_check(g, zseed);
    Json r;
    r["commutator_center"] = big_json(rep.commutator_center);
    r["inflation_kernel"] = big_json(rep.inflation_kernel);
    r["order_identity"] = rep.order_identity;
    r["quotient_multiplier"] = print_abelian(rep.quotient_multiplier);
    r["whole"] = print_abelian(rep.whole);
    return {r, rep.order_identity ? 0 : 1};
  });
}

// --- accept ---

// Acceptance runs are never cached: the timings must be measured fresh.
inline int cmd_accept(const Common& c, const std::string& selector, Io io) {
  std::vector<CriterionResult> rows = acceptance_suite(selector);
  Json arr = Json::array();
  bool all = true;
  for (auto& cr : rows) {
    all = all && cr.pass;
    Json e;
    e["budget_s"] = cr.budget_s;
    e["detail"] = cr.detail;
    e["ms"] = cr.ms;
    e["name"] = cr.name;
    e["number"] = cr.number;
    e["pass"] = cr.pass;
    arr.push_back(e);
  }
  Json body;
  body["all_pass"] = all;
  body["criteria"] = arr;
  Job job = make_job(c, "accept");
  write_payload(job, body.dump(2) + "\n", io);
  return all ? 0 : 1;
}

// --- wiring ---

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Io io{&out, &err};
  CLI::App app{"exact invariants of graded algebras, finite groups, and root data", "exhom"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  Common common;
  app.add_flag("--no-cache", common.no_cache, "disable the result cache");
  app.add_option("--cache-dir", common.cache_dir,
                 "cache directory (default EXHOM_CACHE_DIR, then ~/.cache/exhom)");
  app.add_option("-o,--output", common.output, "write the JSON report to a file");

  int rc = 0;

  // koszul
  auto* ko = app.add_subcommand("koszul", "quadratic resolutions and duality");
  ko->require_subcommand(1);
  std::string kc_algebra;
  int kc_n = 6;
  auto* kcheck = ko->add_subcommand("check", "test the quadratic-resolution property");
  kcheck->add_option("--algebra", kc_algebra, "algebra presentation file")->required();
  kcheck->add_option("--max-n", kc_n, "levels to test");
  kcheck->callback([&] { rc = cmd_koszul_check(common, kc_algebra, kc_n, io); });

  std::string kr_algebra;
  int kr_cap = 12;
  auto* kres = ko->add_subcommand("resolve", "build the bimodule resolution and verify exactness");
  kres->add_option("--algebra", kr_algebra, "algebra presentation file")->required();
  kres->add_option("--cap", kr_cap, "weight cap for the dual generators");
  kres->callback([&] { rc = cmd_koszul_resolve(common, kr_algebra, kr_cap, io); });

  std::string kd_algebra;
  int kd_n = 5;
  auto* kdual = ko->add_subcommand("dual", "compare the quadratic dual against simple extensions");
  kdual->add_option("--algebra", kd_algebra, "algebra presentation file")->required();
  kdual->add_option("--max-n", kd_n, "levels to compare");
  kdual->callback([&] { rc = cmd_koszul_dual(common, kd_algebra, kd_n, io); });

  // hh
  auto* hh = app.add_subcommand("hh", "twisted cyclic bar homology");
  hh->require_subcommand(1);
  std::string hc_algebra, hc_bimodule, hc_twist;
  int hc_depth = 3;
  auto* hcomp = hh->add_subcommand("compute", "homology of the twisted cyclic bar complex");
  hcomp->add_option("--algebra", hc_algebra, "algebra presentation file")->required();
  hcomp->add_option("--bimodule", hc_bimodule, "bimodule file (default: the regular bimodule)");
  hcomp->add_option("--twist", hc_twist, "twisting automorphism file");
  hcomp->add_option("--depth", hc_depth, "homological depth");
  hcomp->callback([&] { rc = cmd_hh_compute(common, hc_algebra, hc_bimodule, hc_twist, hc_depth, io); });

  // bg
  auto* bg = app.add_subcommand("bg", "equivariant trace complexes");
  bg->require_subcommand(1);
  std::string bt_algebra, bt_bimodule, bt_group, bt_action, bt_twist;
  int bt_depth = 2, bt_cap = 10;
  bool bt_bounded = false;
  auto* btrace = bg->add_subcommand("trace", "fiberwise and global trace cohomology");
  btrace->add_option("--algebra", bt_algebra, "algebra presentation file")->required();
  btrace->add_option("--bimodule", bt_bimodule, "bimodule file (default: the regular bimodule)");
  btrace->add_option("--group", bt_group, "group file")->required();
  btrace->add_option("--action", bt_action, "generator action file")->required();
  btrace->add_option("--twist", bt_twist, "equivariant twist file");
  btrace->add_option("--depth", bt_depth, "homological depth");
  btrace->add_flag("--bounded", bt_bounded, "also build the bounded model");
  btrace->add_option("--cap", bt_cap, "weight cap for the bounded model");
  btrace->callback([&] {
    rc = cmd_bg_trace(common, bt_algebra, bt_bimodule, bt_group, bt_action, bt_twist, bt_depth,
                      bt_bounded, bt_cap, io);
  });

  std::string bi_group, bi_points;
  auto* binertia = bg->add_subcommand("inertia", "compare section rank with the orbit count");
  binertia->add_option("--group", bi_group, "group file")->required();
  binertia->add_option("--points", bi_points, "finite set action file")->required();
  binertia->callback([&] { rc = cmd_bg_inertia(common, bi_group, bi_points, io); });

  std::string bh_algebra, bh_bimodule, bh_group, bh_action, bh_twist, bh_element;
  int bh_depth = 2;
  auto* bhom = bg->add_subcommand("homotopy", "test a central invariant element for exactness");
  bhom->add_option("--algebra", bh_algebra, "algebra presentation file")->required();
  bhom->add_option("--bimodule", bh_bimodule, "bimodule file (default: the regular bimodule)");
  bhom->add_option("--group", bh_group, "group file")->required();
  bhom->add_option("--action", bh_action, "generator action file")->required();
  bhom->add_option("--twist", bh_twist, "equivariant twist file");
  bhom->add_option("--element", bh_element, "central element file")->required();
  bhom->add_option("--depth", bh_depth, "homological depth");
  bhom->callback([&] {
    rc = cmd_bg_homotopy(common, bh_algebra, bh_bimodule, bh_group, bh_action, bh_twist,
                         bh_element, bh_depth, io);
  });

  // rootdata
  auto* rd = app.add_subcommand("rootdata", "root data and flag cell combinatorics");
  rd->require_subcommand(1);
  std::string r1_type, r1_lattice = "weight";
  auto* rpi1 = rd->add_subcommand("pi1", "fundamental group of a root datum");
  rpi1->add_option("--type", r1_type, "Cartan type, e.g. A2 or B3xA1xT2")->required();
  rpi1->add_option("--X", r1_lattice, "character lattice: weight, root, or a matrix file");
  rpi1->callback([&] { rc = cmd_rootdata_datum(common, "rootdata pi1", r1_type, r1_lattice, io); });

  std::string rs_type, rs_lattice = "weight";
  auto* rschur = rd->add_subcommand("schur", "multiplier of a connected group from its root datum");
  rschur->add_option("--type", rs_type, "Cartan type, e.g. A2 or B3xA1xT2")->required();
  rschur->add_option("--X", rs_lattice, "character lattice: weight, root, or a matrix file");
  rschur->callback([&] { rc = cmd_rootdata_datum(common, "rootdata schur", rs_type, rs_lattice, io); });

  std::string rp_type, rp_p, rp_q = "full";
  long long rp_cap = 1000000;
  auto* rpoin = rd->add_subcommand("poincare", "cell-count polynomial of a flag quotient");
  rpoin->add_option("--type", rp_type, "Cartan type")->required();
  rpoin->add_option("--P", rp_p, "smaller parabolic: simple root indices, none, or full");
  rpoin->add_option("--Q", rp_q, "larger parabolic: simple root indices, none, or full");
  rpoin->add_option("--cap", rp_cap, "reflection group enumeration cap");
  rpoin->callback([&] { rc = cmd_rootdata_poincare(common, rp_type, rp_p, rp_q, rp_cap, io); });

  std::string sp_type, sp_p, sp_q = "full", sp_at;
  long long sp_cap = 1000000;
  auto* rsplit = rd->add_subcommand("split", "evaluate the cell polynomial at a splitting point");
  rsplit->add_option("--type", sp_type, "Cartan type")->required();
  rsplit->add_option("--P", sp_p, "smaller parabolic");
  rsplit->add_option("--Q", sp_q, "larger parabolic");
  rsplit->add_option("--q", sp_at, "evaluation point: a rational or cyclotomic:N:K")->required();
  rsplit->add_option("--cap", sp_cap, "reflection group enumeration cap");
  rsplit->callback([&] { rc = cmd_rootdata_split(common, sp_type, sp_p, sp_q, sp_at, sp_cap, io); });

  std::string bp_type, bp_p, bp_q = "full";
  long long bp_cap = 1000000;
  auto* rbrion = rd->add_subcommand("brionpeyre", "cell polynomial divisibility for nested parabolics");
  rbrion->add_option("--type", bp_type, "Cartan type")->required();
  auto* bp_popt = rbrion->add_option("--P", bp_p, "smaller parabolic (omit both to sweep all pairs)");
  auto* bp_qopt = rbrion->add_option("--Q", bp_q, "larger parabolic");
  rbrion->add_option("--cap", bp_cap, "reflection group enumeration cap");
  rbrion->callback([&] {
    bool pair_given = bp_popt->count() > 0 || bp_qopt->count() > 0;
    rc = cmd_rootdata_brionpeyre(common, bp_type, bp_p, bp_q, pair_given, bp_cap, io);
  });

  std::string mn_type, mn_weight;
  auto* rminus = rd->add_subcommand("minuscule", "lift a minuscule weight to a cocharacter");
  rminus->add_option("--type", mn_type, "Cartan type")->required();
  rminus->add_option("--weight", mn_weight, "fundamental weight coordinates")->required();
  rminus->callback([&] { rc = cmd_rootdata_minuscule(common, mn_type, mn_weight, io); });

  // orbit
  auto* orb = app.add_subcommand("orbit", "weighted diagram gradings and orbit dimensions");
  orb->require_subcommand(1);
  std::string og_type, og_weights;
  auto* ograd = orb->add_subcommand("grading", "root space dimensions by weight");
  ograd->add_option("--type", og_type, "Cartan type")->required();
  ograd->add_option("--weights", og_weights, "node weights, comma separated")->required();
  ograd->callback([&] { rc = cmd_orbit(common, "grading", og_type, og_weights, "", io); });

  std::string od_type, od_weights;
  auto* odims = orb->add_subcommand("dims", "centralizer, orbit, and slice dimensions");
  odims->add_option("--type", od_type, "Cartan type")->required();
  odims->add_option("--weights", od_weights, "node weights, comma separated")->required();
  odims->callback([&] { rc = cmd_orbit(common, "dims", od_type, od_weights, "", io); });

  std::string os_type, os_weights, os_p;
  auto* oslice = orb->add_subcommand("slicedim", "slice dimension through a partial resolution");
  oslice->add_option("--type", os_type, "Cartan type")->required();
  oslice->add_option("--weights", os_weights, "node weights, comma separated")->required();
  oslice->add_option("--P", os_p, "parabolic: simple root indices, none, or full");
  oslice->callback([&] { rc = cmd_orbit(common, "slicedim", os_type, os_weights, os_p, io); });

  // gcoh
  auto* gc = app.add_subcommand("gcoh", "finite group cohomology");
  gc->require_subcommand(1);
  std::string gc_group, gc_module;
  int gc_degree = 2;
  auto* gcomp = gc->add_subcommand("compute", "cohomology in one degree");
  gcomp->add_option("--group", gc_group, "group file")->required();
  gcomp->add_option("--module", gc_module, "coefficient module file (default: trivial integers)");
  gcomp->add_option("--degree", gc_degree, "cohomological degree, 0 to 3")->required();
  gcomp->callback([&] { rc = cmd_gcoh_compute(common, gc_group, gc_module, gc_degree, io); });

  std::string gs_group;
  auto* gschur = gc->add_subcommand("schur", "multiplier of a finite group");
  gschur->add_option("--group", gs_group, "group file")->required();
  gschur->callback([&] { rc = cmd_gcoh_schur(common, gs_group, io); });

  auto* gsurvey = gc->add_subcommand("survey", "recompute the tabulated low-rank lattice cases");
  gsurvey->callback([&] { rc = cmd_gcoh_survey(common, io); });

  std::string gp_left, gp_right;
  auto* gprod = gc->add_subcommand("product", "multiplier order identity for a direct product");
  gprod->add_option("--left", gp_left, "first factor group file")->required();
  gprod->add_option("--right", gp_right, "second factor group file")->required();
  gprod->callback([&] { rc = cmd_gcoh_product(common, gp_left, gp_right, io); });

  std::string gsd_group, gsd_module;
  auto* gsemi = gc->add_subcommand("semidirect", "restriction sequence for a semidirect product");
  gsemi->add_option("--group", gsd_group, "acting group file")->required();
  gsemi->add_option("--module", gsd_module, "translation module file")->required();
  gsemi->callback([&] { rc = cmd_gcoh_semidirect(common, gsd_group, gsd_module, io); });

  std::string gz_group, gz_center = "auto";
  auto* gcent = gc->add_subcommand("central", "inflation sequence for a central quotient");
  gcent->add_option("--group", gz_group, "group file")->required();
  gcent->add_option("--center", gz_center, "central element ids, comma separated, or auto");
  gcent->callback([&] { rc = cmd_gcoh_central(common, gz_group, gz_center, io); });

  // accept
  std::string ac_selector = "all";
  auto* acc = app.add_subcommand("accept", "run the acceptance criteria");
  acc->add_option("selector", ac_selector, "all, or a criterion number 1 to 12");
  acc->callback([&] { rc = cmd_accept(common, ac_selector, io); });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
    return rc;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, out, err);
    return 2;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const check_error& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace cli
}  // namespace exhom
