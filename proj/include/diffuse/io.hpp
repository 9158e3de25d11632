#pragma once

// Text formats: polygon files, the ledger document (JSON), path listings, and
// SVG renderings of the illumination layers.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffuse/geom.hpp"
#include "diffuse/paths.hpp"
#include "diffuse/regions.hpp"

namespace diffuse {

// ---------------------------------------------------------------------------
// Polygon files
//
//   # comment
//   n 6
//   0 0
//   2 0
//   ...
//   s 3/2 1/4
//   t 9/10 19/10

struct PolygonFile {
  std::vector<Point> vertices;
  std::optional<Point> source;
  std::optional<Point> target;

  Polygon polygon() const { return Polygon(vertices); }
  friend bool operator==(const PolygonFile&, const PolygonFile&) = default;
};

inline PolygonFile parse_polygon_file(const std::string& text) {
  PolygonFile out;
  std::optional<std::size_t> expected;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok[0] == "n") {
      if (tok.size() != 2 || expected) fail("bad header");
      try {
        const long count = std::stol(tok[1]);
        if (count < 0 || std::to_string(count) != tok[1]) fail("bad vertex count");
        expected = static_cast<std::size_t>(count);
      } catch (const std::logic_error&) {
        fail("bad vertex count");
      }
      continue;
    }
    if (!expected) fail("missing 'n <count>' header");
    if (tok[0] == "s" || tok[0] == "t") {
      if (tok.size() != 3) fail("expected '" + tok[0] + " x y'");
      auto& slot = tok[0] == "s" ? out.source : out.target;
      if (slot) fail("duplicate '" + tok[0] + "' line");
      slot = Point(parse_rational(tok[1]), parse_rational(tok[2]));
      continue;
    }
    if (tok.size() != 2) fail("expected 'x y'");
    if (out.vertices.size() == *expected) fail("more vertices than declared");
    out.vertices.emplace_back(parse_rational(tok[0]), parse_rational(tok[1]));
  }
  if (!expected) throw Error(ErrorKind::Parse, "missing 'n <count>' header");
  if (out.vertices.size() != *expected)
    throw Error(ErrorKind::Parse, "declared " + std::to_string(*expected) + " vertices, found " +
                                      std::to_string(out.vertices.size()));
  return out;
}

inline std::string emit_polygon_file(const PolygonFile& f) {
  std::ostringstream os;
  os << "n " << f.vertices.size() << "\n";
  for (const auto& v : f.vertices) os << format_rational(v.x) << " " << format_rational(v.y) << "\n";
  if (f.source) os << "s " << format_rational(f.source->x) << " " << format_rational(f.source->y) << "\n";
  if (f.target) os << "t " << format_rational(f.target->x) << " " << format_rational(f.target->y) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Ledger document

struct LedgerWindow {
  std::size_t a = 0;  // reflex vertex index
  std::size_t b_edge = 0;
  Rational b_param;
  bool saturated = false;
  friend bool operator==(const LedgerWindow&, const LedgerWindow&) = default;
};

struct LedgerStepDoc {
  std::size_t k = 0;
  std::size_t mu = 0;
  std::size_t lambda = 0;
  bool critical = false;
  std::string condition = "none";
  std::vector<LedgerWindow> windows;
  friend bool operator==(const LedgerStepDoc&, const LedgerStepDoc&) = default;
};

struct LedgerDocument {
  std::size_t n = 0;
  Point source;
  std::size_t bound_k = 0;
  std::size_t terminated_at = 0;
  std::vector<LedgerStepDoc> steps;
  friend bool operator==(const LedgerDocument&, const LedgerDocument&) = default;
};

inline LedgerDocument ledger_document(const IlluminationResult& res) {
  LedgerDocument doc;
  doc.n = res.polygon.size();
  doc.source = res.source;
  doc.bound_k = res.bound_k;
  doc.terminated_at = res.terminated_at;
  for (std::size_t k = 0; k < res.ledger.steps.size(); ++k) {
    const auto& st = res.ledger.steps[k];
    LedgerStepDoc d;
    d.k = st.k;
    d.mu = st.mu;
    d.lambda = st.lambda;
    d.critical = st.critical;
    d.condition = to_string(st.condition);
    const auto& ws = res.windows_per_step[k];
    for (std::size_t i = 0; i < ws.size(); ++i)
      d.windows.push_back({ws[i].a_index, ws[i].b.edge.index, ws[i].b.parameter, static_cast<bool>(st.saturated[i])});
    doc.steps.push_back(std::move(d));
  }
  return doc;
}

inline std::string emit_ledger(const LedgerDocument& doc) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n"] = doc.n;
  j["source"] = {format_rational(doc.source.x), format_rational(doc.source.y)};
  j["bound_k"] = doc.bound_k;
  j["terminated_at"] = doc.terminated_at;
  j["steps"] = ordered_json::array();
  for (const auto& st : doc.steps) {
    ordered_json s;
    s["k"] = st.k;
    s["mu"] = st.mu;
    s["lambda"] = st.lambda;
    s["critical"] = st.critical;
    s["condition"] = st.condition;
    s["windows"] = ordered_json::array();
    for (const auto& w : st.windows)
      s["windows"].push_back(
          {{"a", w.a}, {"b_edge", w.b_edge}, {"b_param", format_rational(w.b_param)}, {"saturated", w.saturated}});
    j["steps"].push_back(std::move(s));
  }
  return j.dump(2) + "\n";
}

inline LedgerDocument parse_ledger(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    LedgerDocument doc;
    doc.n = j.at("n").get<std::size_t>();
    doc.source = Point(parse_rational(j.at("source").at(0).get<std::string>()),
                       parse_rational(j.at("source").at(1).get<std::string>()));
    doc.bound_k = j.at("bound_k").get<std::size_t>();
    doc.terminated_at = j.at("terminated_at").get<std::size_t>();
    for (const auto& s : j.at("steps")) {
      LedgerStepDoc st;
      st.k = s.at("k").get<std::size_t>();
      st.mu = s.at("mu").get<std::size_t>();
      st.lambda = s.at("lambda").get<std::size_t>();
      st.critical = s.at("critical").get<bool>();
      st.condition = s.at("condition").get<std::string>();
      for (const auto& w : s.at("windows"))
        st.windows.push_back({w.at("a").get<std::size_t>(), w.at("b_edge").get<std::size_t>(),
                              parse_rational(w.at("b_param").get<std::string>()), w.at("saturated").get<bool>()});
      doc.steps.push_back(std::move(st));
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("ledger: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Paths

inline std::string emit_path(const ReflectionPath& path) {
  std::ostringstream os;
  os << "reflections: " << path.reflection_count() << "\n";
  os << "source " << format_rational(path.source.x) << " " << format_rational(path.source.y) << "\n";
  for (const auto& r : path.reflections)
    os << "bounce " << format_rational(r.point.x) << " " << format_rational(r.point.y) << " edge " << r.edge.index
       << "\n";
  os << "target " << format_rational(path.target.x) << " " << format_rational(path.target.y) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

class SvgFrame {
 public:
  explicit SvgFrame(const Polygon& poly, double size = 800.0, double margin = 20.0) : size_(size), margin_(margin) {
    bool first = true;
    for (const auto& p : poly.vertices()) {
      const double x = p.x.get_d(), y = p.y.get_d();
      if (first) {
        minx_ = maxx_ = x;
        miny_ = maxy_ = y;
        first = false;
      }
      minx_ = std::min(minx_, x);
      maxx_ = std::max(maxx_, x);
      miny_ = std::min(miny_, y);
      maxy_ = std::max(maxy_, y);
    }
    const double span = std::max(maxx_ - minx_, maxy_ - miny_);
    scale_ = span > 0 ? (size_ - 2 * margin_) / span : 1.0;
  }

  std::string xy(const Point& p) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", margin_ + (p.x.get_d() - minx_) * scale_,
                  size_ - margin_ - (p.y.get_d() - miny_) * scale_);
    return buf;
  }
  std::string points(const std::vector<Point>& pts) const {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out += ' ';
      out += xy(pts[i]);
    }
    return out;
  }
  double size() const { return size_; }

 private:
  double size_, margin_;
  double minx_ = 0, maxx_ = 0, miny_ = 0, maxy_ = 0;
  double scale_ = 1;
};

}  // namespace detail

/// P outline, R_0..R_K as stacked translucent fills drawn oldest first: the
/// source's own view ends up darkest and each later layer a lighter band.
/// Windows are dashed chords; an optional path goes on top.
inline std::string render_svg(const IlluminationResult& res, const ReflectionPath* path = nullptr) {
  const detail::SvgFrame frame(res.polygon);
  std::ostringstream os;
  const int sz = static_cast<int>(frame.size());
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << sz << "\" height=\"" << sz
     << "\" viewBox=\"0 0 " << sz << " " << sz << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  os << "  <polygon id=\"P\" points=\"" << frame.points(res.polygon.vertices())
     << "\" fill=\"#f4f4f4\" stroke=\"none\"/>\n";
  for (std::size_t k = 0; k < res.regions.size(); ++k)
    os << "  <polygon id=\"R" << k << "\" points=\"" << frame.points(res.regions[k].ring())
       << "\" fill=\"#4a4a4a\" fill-opacity=\"0.3\" stroke=\"none\"/>\n";
  for (std::size_t k = 0; k < res.regions.size(); ++k)
    for (const auto* w : res.regions[k].windows())
      os << "  <polyline class=\"window\" data-k=\"" << k << "\" points=\"" << frame.xy(w->from) << " "
         << frame.xy(w->to) << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
  os << "  <polygon points=\"" << frame.points(res.polygon.vertices())
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  auto dot = [&](const Point& p, const char* colour) {
    const std::string c = frame.xy(p);
    const auto comma = c.find(',');
    os << "  <circle cx=\"" << c.substr(0, comma) << "\" cy=\"" << c.substr(comma + 1) << "\" r=\"4\" fill=\""
       << colour << "\"/>\n";
  };
  if (path) {
    os << "  <polyline id=\"path\" points=\"" << frame.points(path->vertices())
       << "\" fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"2\"/>\n";
    dot(path->target, "#1f6feb");
  }
  dot(res.source, "#e67e22");
  os << "</svg>\n";
  return os.str();
}

}  // namespace diffuse
