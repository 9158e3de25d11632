#pragma once

// The `diffuse` command line: illuminate, path, generate, verify.
//
// Exit codes: 0 success, 2 bad arguments or parse error, 3 polygon or point
// fails validation / general position, 4 invariant breach or failed check,
// 5 target on a window chord.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffuse/generators.hpp"
#include "diffuse/io.hpp"
#include "diffuse/oracle.hpp"
#include "diffuse/paths.hpp"
#include "diffuse/regions.hpp"

namespace diffuse::cli {

enum Exit : int { Ok = 0, BadInput = 2, Invalid = 3, Breach = 4, OnChord = 5 };

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::BadN:
      return BadInput;
    case ErrorKind::SourceNotInterior:
    case ErrorKind::SourceOutside:
    case ErrorKind::TargetOutside:
    case ErrorKind::DegenerateConfiguration:
    case ErrorKind::DegenerateSegment:
      return Invalid;
    case ErrorKind::OnWindowChord:
      return OnChord;
    default:
      return Breach;
  }
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << text;
}

inline Point point_from(const std::vector<std::string>& xy) { return Point(parse_rational(xy[0]), parse_rational(xy[1])); }

/// Loads and validates the polygon; picks the point from the flag or the file.
struct Loaded {
  PolygonFile file;
  Polygon polygon;
};

inline Loaded load(const std::string& path) {
  Loaded l;
  l.file = parse_polygon_file(read_file(path));
  l.polygon = l.file.polygon();
  const auto rep = validate_polygon(l.polygon);
  if (!admissible_for_illumination(l.polygon, rep)) throw Error(ErrorKind::DegenerateConfiguration, rep.summary());
  return l;
}

inline Point pick(const std::vector<std::string>& flag, const std::optional<Point>& from_file, const char* what) {
  if (!flag.empty()) return point_from(flag);
  if (from_file) return *from_file;
  throw Error(ErrorKind::Parse, std::string("no ") + what + " given (flag or file line)");
}

inline std::string format_path_line(const ReflectionPath& p) {
  std::string s;
  for (const auto& v : p.vertices()) s += (s.empty() ? "" : " ") + format_point(v);
  return s;
}

}  // namespace detail

struct IlluminateArgs {
  std::string file;
  std::vector<std::string> source;
  std::string svg, ledger;
  bool assert_checks = false;
};

inline int cmd_illuminate(const IlluminateArgs& a, std::ostream& out, std::ostream& err) {
  const auto l = detail::load(a.file);
  const Point s = detail::pick(a.source, l.file.source, "source");
  const IlluminationResult res = illuminate(l.polygon, s);
  const std::string ledger = emit_ledger(ledger_document(res));
  // Without --ledger, standard output carries the ledger document alone.
  if (!a.ledger.empty()) {
    detail::write_file(a.ledger, ledger);
    out << "terminated_at: " << res.terminated_at << "\n" << "bound_k: " << res.bound_k << "\n";
  } else {
    out << ledger;
  }
  if (!a.svg.empty()) detail::write_file(a.svg, render_svg(res));
  if (a.assert_checks) {
    const auto audit = audit_criticality(res);
    for (const auto& b : audit.breaches) err << "breach at k=" << b.k << ": " << b.what << "\n";
    if (!final_closure_spans_boundary(res)) {
      err << "breach: final region does not reach every edge\n";
      return Breach;
    }
    if (!audit.ok()) return Breach;
    err << "assert: ok (" << audit.critical_steps << " critical steps, " << audit.condition_a << " A, "
        << audit.condition_b << " B)\n";
  }
  return Ok;
}

struct PathArgs {
  std::string file;
  std::vector<std::string> source, target;
  std::string svg;
};

inline int cmd_path(const PathArgs& a, std::ostream& out, std::ostream& err) {
  const auto l = detail::load(a.file);
  const Point s = detail::pick(a.source, l.file.source, "source");
  const Point t = detail::pick(a.target, l.file.target, "target");
  const IlluminationResult res = illuminate(l.polygon, s);
  ReflectionPath path;
  try {
    path = extract_path(res, t);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OnWindowChord)
      err << "target lies exactly on a window chord of R_" << e.index()
          << "; move it by any small amount off the chord and retry\n";
    throw;
  }
  const auto rep = validate_path(l.polygon, path);
  if (!rep.ok()) {
    err << "extracted path failed validation:\n" << rep.summary();
    return Breach;
  }
  out << emit_path(path);
  if (!a.svg.empty()) detail::write_file(a.svg, render_svg(res, &path));
  return Ok;
}

struct GenerateArgs {
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string output;
};

inline FixtureSpec make_fixture(Family fam, std::size_t n, std::uint64_t seed) {
  FixtureSpec f;
  switch (fam) {
    case Family::Zigzag: return zigzag(n);
    case Family::Spiral: return spiral(n);
    case Family::Convex: f.polygon = convex(n, seed); break;
    case Family::Random: f.polygon = random_simple(n, seed); break;
  }
  f.family = fam;
  f.n = n;
  f.seed = seed;
  std::mt19937_64 rng(seed);
  f.source = random_interior_point(f.polygon, rng);
  return f;
}

inline int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  const auto fam = parse_family(a.family);
  if (!fam) {
    err << "unknown family '" << a.family << "' (zigzag, spiral, convex, random)\n";
    return BadInput;
  }
  const FixtureSpec f = make_fixture(*fam, a.n, a.seed);
  PolygonFile pf{f.polygon.vertices(), f.source, f.target};
  std::string text = "# " + std::string(to_string(*fam)) + " n=" + std::to_string(a.n) +
                     (*fam == Family::Convex || *fam == Family::Random ? " seed=" + std::to_string(a.seed) : "") +
                     "\n" + emit_polygon_file(pf);
  if (a.output == "-") out << text;
  else detail::write_file(a.output, text);
  return Ok;
}

struct VerifyArgs {
  std::string file;
  std::vector<std::string> source;
  std::size_t samples = 20;
  std::size_t oracle_m = 16;
  std::uint64_t seed = 1;
  std::string ledger, paths, svg;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto l = detail::load(a.file);
  const Point s = detail::pick(a.source, l.file.source, "source");
  const IlluminationResult res = illuminate(l.polygon, s);
  const auto audit = audit_criticality(res);
  const bool closure = final_closure_spans_boundary(res);

  struct Row {
    std::string check;
    std::size_t passed = 0, failed = 0;
  };
  Row r_audit{"audit (Eq. 1, Eq. 2, criticality)"}, r_closure{"final region spans boundary"};
  Row r_valid{"extract_path passes validate_path"}, r_bound{"reflections <= locate_k <= bound"};
  Row r_oracle{"oracle min <= extracted count"}, r_witness{"oracle witness valid"};
  (audit.ok() ? r_audit.passed : r_audit.failed)++;
  (closure ? r_closure.passed : r_closure.failed)++;
  for (const auto& b : audit.breaches) err << "audit breach at k=" << b.k << ": " << b.what << "\n";

  std::vector<Point> targets;
  if (l.file.target) targets.push_back(*l.file.target);
  std::mt19937_64 rng(a.seed);
  std::size_t unresolved = 0, on_chord = 0;
  std::ostringstream paths;
  ReflectionPath first_path;
  bool have_first = false;
  for (std::size_t i = 0; targets.size() < a.samples + (l.file.target ? 1 : 0); ++i) {
    if (i > 100 * (a.samples + 1)) break;
    Point t = random_interior_point(l.polygon, rng);
    if (t != s) targets.push_back(std::move(t));
  }
  for (const Point& t : targets) {
    std::size_t k = 0;
    ReflectionPath path;
    try {
      k = locate_k(res, t);
      path = extract_path(res, t);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::OnWindowChord) {
        ++on_chord;
        continue;
      }
      err << "target " << format_point(t) << ": " << e.what() << "\n";
      ++r_valid.failed;
      continue;
    }
    if (!have_first) {
      first_path = path;
      have_first = true;
    }
    paths << emit_path(path);
    const bool valid = validate_path(l.polygon, path).ok();
    (valid ? r_valid.passed : r_valid.failed)++;
    const bool bounded = path.reflection_count() <= k && k <= res.bound_k;
    (bounded ? r_bound.passed : r_bound.failed)++;
    try {
      const auto o = min_reflections_bfs(l.polygon, s, t, a.oracle_m);
      (o.min_reflections <= path.reflection_count() ? r_oracle.passed : r_oracle.failed)++;
      (validate_path(l.polygon, o.witness).ok() ? r_witness.passed : r_witness.failed)++;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unreachable) throw;
      ++unresolved;
    }
  }

  const Row rows[] = {r_audit, r_closure, r_valid, r_bound, r_oracle, r_witness};
  out << "n=" << l.polygon.size() << " source=" << format_point(s) << " terminated_at=" << res.terminated_at
      << " bound_k=" << res.bound_k << "\n";
  out << std::left << std::setw(40) << "check" << std::right << std::setw(8) << "pass" << std::setw(8) << "fail"
      << "\n";
  bool ok = true;
  for (const auto& r : rows) {
    out << std::left << std::setw(40) << r.check << std::right << std::setw(8) << r.passed << std::setw(8)
        << r.failed << "\n";
    ok = ok && r.failed == 0;
  }
  out << "targets: " << targets.size() << " (skipped on a window chord: " << on_chord
      << ", oracle unresolved at m=" << a.oracle_m << ": " << unresolved << ")\n";
  if (l.file.target && have_first) out << "designated target: reflections " << first_path.reflection_count() << "\n";
  out << (ok ? "verify: PASS" : "verify: FAIL") << "\n";

  if (!a.ledger.empty()) detail::write_file(a.ledger, emit_ledger(ledger_document(res)));
  if (!a.paths.empty()) detail::write_file(a.paths, paths.str());
  if (!a.svg.empty()) detail::write_file(a.svg, render_svg(res, have_first ? &first_path : nullptr));
  return ok ? Ok : Breach;
}

/// Parses argv and dispatches. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Diffuse reflection illumination in simple polygons"};
  app.require_subcommand(1);

  IlluminateArgs ia;
  auto* ill = app.add_subcommand("illuminate", "grow R_0, R_1, ... from a source and write the ledger");
  ill->add_option("file", ia.file, "polygon file")->required();
  ill->add_option("--source", ia.source, "source x y (defaults to the file's s line)")->expected(2);
  ill->add_option("--svg", ia.svg, "write the layered rendering here");
  ill->add_option("--ledger", ia.ledger, "write the ledger here instead of standard output");
  ill->add_flag("--assert", ia.assert_checks, "audit the counting invariants; exit 4 on any breach");

  PathArgs pa;
  auto* pth = app.add_subcommand("path", "extract a diffuse reflection path from s to t");
  pth->add_option("file", pa.file, "polygon file")->required();
  pth->add_option("--source", pa.source, "source x y")->expected(2);
  pth->add_option("--target", pa.target, "target x y")->expected(2);
  pth->add_option("--svg", pa.svg, "write the path over the layers here");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "write a fixture polygon file");
  gen->add_option("family", ga.family, "zigzag | spiral | convex | random")->required();
  gen->add_option("n", ga.n, "vertex count")->required();
  gen->add_option("output", ga.output, "output file, or - for standard output")->required();
  gen->add_option("--seed", ga.seed, "seed for convex and random");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "illuminate, audit, and cross-check paths against the oracle");
  ver->add_option("file", va.file, "polygon file")->required();
  ver->add_option("--source", va.source, "source x y")->expected(2);
  ver->add_option("--samples", va.samples, "random interior targets");
  ver->add_option("--oracle-m", va.oracle_m, "oracle samples per edge")->check(CLI::Range(2, 1 << 20));
  ver->add_option("--seed", va.seed, "seed for target sampling");
  ver->add_option("--ledger", va.ledger, "write the ledger here");
  ver->add_option("--paths", va.paths, "write every extracted path here");
  ver->add_option("--svg", va.svg, "write the layers with the first path here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : BadInput;
  }
  try {
    if (*ill) return cmd_illuminate(ia, out, err);
    if (*pth) return cmd_path(pa, out, err);
    if (*gen) return cmd_generate(ga, out, err);
    if (*ver) return cmd_verify(va, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Breach;
  }
  return BadInput;
}

}  // namespace diffuse::cli
