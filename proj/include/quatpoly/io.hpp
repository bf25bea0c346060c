#ifndef QUATPOLY_IO_HPP
#define QUATPOLY_IO_HPP

// JSON and CSV serialization. Needs nlohmann/json on the include path
// (link the quatpoly_io target).

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "barycenter.hpp"
#include "complex_bridge.hpp"
#include "gt_grassmann.hpp"
#include "polygon.hpp"

namespace quatpoly {

using json = nlohmann::json;

class format_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace io_detail {

inline void require(bool ok, const std::string& what)
{
  if (!ok) throw format_error(what);
}

inline const json& field(const json& j, const char* key)
{
  require(j.is_object(), std::string("expected an object with key '") + key + "'");
  const auto it = j.find(key);
  require(it != j.end(), std::string("missing key '") + key + "'");
  return *it;
}

inline double number(const json& j, const char* what)
{
  require(j.is_number(), std::string(what) + ": expected a number");
  return j.get<double>();
}

} // namespace io_detail

// ---- scalars and small vectors ------------------------------------------

/// [w, x, y, z]
inline void to_json(json& j, const Quaternion& q) { j = json::array({q.w, q.x, q.y, q.z}); }

inline void from_json(const json& j, Quaternion& q)
{
  io_detail::require(j.is_array() && j.size() == 4, "quaternion: expected [w, x, y, z]");
  q = Quaternion(io_detail::number(j[0], "quaternion"), io_detail::number(j[1], "quaternion"),
                 io_detail::number(j[2], "quaternion"), io_detail::number(j[3], "quaternion"));
}

inline json vec_to_json(const Eigen::VectorXd& v)
{
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

inline Vec5 vec5_from_json(const json& j)
{
  io_detail::require(j.is_array() && j.size() == 5, "expected a 5-vector");
  Vec5 v;
  for (int i = 0; i < 5; ++i) v[i] = io_detail::number(j[static_cast<std::size_t>(i)], "5-vector");
  return v;
}

inline json complex_to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

inline cdouble complex_from_json(const json& j)
{
  io_detail::require(j.is_array() && j.size() == 2, "complex: expected [re, im]");
  return {io_detail::number(j[0], "complex"), io_detail::number(j[1], "complex")};
}

inline json complex_matrix_to_json(const ComplexMatrix& m)
{
  json j = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    j.push_back(row);
  }
  return j;
}

inline ComplexMatrix complex_matrix_from_json(const json& j)
{
  io_detail::require(j.is_array() && !j.empty(), "complex matrix: expected nested arrays");
  const std::size_t rows = j.size(), cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    io_detail::require(j[r].is_array() && j[r].size() == cols, "complex matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
  }
  return m;
}

// ---- quaternionic matrices and group elements -----------------------------

/// Nested arrays of quaternions, row-major.
inline void to_json(json& j, const QuatMatrix& m)
{
  j = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(row);
  }
}

inline void from_json(const json& j, QuatMatrix& m)
{
  io_detail::require(j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty(),
                     "quaternionic matrix: expected nested arrays of quaternions");
  const std::size_t rows = j.size(), cols = j[0].size();
  std::vector<Quaternion> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j) {
    io_detail::require(row.is_array() && row.size() == cols, "quaternionic matrix: ragged rows");
    for (const auto& e : row) entries.push_back(e.get<Quaternion>());
  }
  m = QuatMatrix(rows, cols, std::move(entries));
}

inline void to_json(json& j, const SL2H& g) { j = json::array({json::array({g.a, g.b}), json::array({g.c, g.d})}); }

inline void from_json(const json& j, SL2H& g) { g = SL2H::from_matrix(j.get<QuatMatrix>()); }

inline void to_json(json& j, const HP1Point& p) { j = json::array({p.q1, p.q2}); }

inline void from_json(const json& j, HP1Point& p)
{
  io_detail::require(j.is_array() && j.size() == 2, "HP1 point: expected [q1, q2]");
  p = HP1Point{j[0].get<Quaternion>(), j[1].get<Quaternion>()};
  io_detail::require(p.q1.norm2() + p.q2.norm2() > 0.0, "HP1 point: both coordinates zero");
}

inline void to_json(json& j, const S4Point& u) { j = vec_to_json(u.vec()); }

inline void from_json(const json& j, S4Point& u) { u = S4Point::from_stored(vec5_from_json(j)); }

inline void to_json(json& j, const BallPoint& b) { j = vec_to_json(b.y); }

inline void from_json(const json& j, BallPoint& b) { b = BallPoint(vec5_from_json(j)); }

// ---- configurations and polygons -------------------------------------------

inline void to_json(json& j, const WeightedConfiguration& c)
{
  j = json{{"weights", c.weights()}, {"points", c.points()}};
}

inline void from_json(const json& j, WeightedConfiguration& c)
{
  c = WeightedConfiguration(io_detail::field(j, "points").get<std::vector<S4Point>>(),
                            io_detail::field(j, "weights").get<std::vector<double>>());
}

/// {"r": [...], "edges": [[5], ...]} with unit edge directions.
inline void to_json(json& j, const Polygon& p)
{
  json edges = json::array();
  for (const auto& e : p.edges) edges.push_back(vec_to_json(e));
  j = json{{"r", p.r}, {"edges", edges}};
}

inline void from_json(const json& j, Polygon& p)
{
  Polygon out;
  out.r = io_detail::field(j, "r").get<std::vector<double>>();
  const json& edges = io_detail::field(j, "edges");
  io_detail::require(edges.is_array() && edges.size() == out.r.size(), "polygon: r and edges differ in length");
  for (const auto& e : edges) out.edges.push_back(vec5_from_json(e));
  for (double r : out.r) io_detail::require(r > 0.0, "polygon: side lengths must be positive");
  p = std::move(out);
}

inline void to_json(json& j, const LocalModel& m)
{
  j = json{{"trivial_factor_dim", m.trivial_factor_dim}, {"cone", m.cone}};
}

inline void from_json(const json& j, LocalModel& m)
{
  m.trivial_factor_dim = io_detail::field(j, "trivial_factor_dim").get<int>();
  m.cone = io_detail::field(j, "cone").get<std::string>();
}

inline void to_json(json& j, const DegeneracyReport& r)
{
  j = json{{"span_rank", r.span_rank},
           {"kind", to_string(r.kind)},
           {"local_model", r.local_model},
           {"singular_values", r.singular_values}};
}

inline void from_json(const json& j, DegeneracyReport& r)
{
  r.span_rank = io_detail::field(j, "span_rank").get<int>();
  r.kind = degeneracy_kind_from_string(io_detail::field(j, "kind").get<std::string>());
  r.local_model = io_detail::field(j, "local_model").get<LocalModel>();
  r.singular_values = io_detail::field(j, "singular_values").get<std::vector<double>>();
}

// ---- GT data ---------------------------------------------------------------

/// Ragged rows, row k holding the k + 1 eigenvalues of the leading block.
inline void to_json(json& j, const GTPattern& g) { j = g.rows; }

inline void from_json(const json& j, GTPattern& g)
{
  g.rows = j.get<std::vector<std::vector<double>>>();
  for (std::size_t k = 0; k < g.rows.size(); ++k)
    io_detail::require(g.rows[k].size() == k + 1, "GT pattern: row " + std::to_string(k) + " has wrong length");
}

inline void to_json(json& j, const PartialSpectrum& s)
{
  j = json{{"lambda1", s.lambda1}, {"lambda2", s.lambda2}, {"mismatch", s.mismatch}};
}

inline void from_json(const json& j, PartialSpectrum& s)
{
  s.lambda1 = io_detail::field(j, "lambda1").get<double>();
  s.lambda2 = io_detail::field(j, "lambda2").get<double>();
  s.mismatch = io_detail::field(j, "mismatch").get<double>();
}

// ---- line configurations ---------------------------------------------------

inline json line_to_json(const LineBasis& l) { return complex_matrix_to_json(l); }

inline LineBasis line_from_json(const json& j)
{
  const ComplexMatrix m = complex_matrix_from_json(j);
  io_detail::require(m.rows() == 4 && m.cols() == 2, "line: expected a 4x2 complex basis");
  return m;
}

inline void to_json(json& j, const LineConfiguration& c)
{
  json lines = json::array();
  for (const auto& l : c.lines) lines.push_back(line_to_json(l));
  j = json{{"weights", c.weights}, {"lines", lines}};
}

inline void from_json(const json& j, LineConfiguration& c)
{
  LineConfiguration out;
  out.weights = io_detail::field(j, "weights").get<std::vector<double>>();
  for (const auto& l : io_detail::field(j, "lines")) out.lines.push_back(line_from_json(l));
  io_detail::require(out.lines.size() == out.weights.size(), "line configuration: lines and weights differ in length");
  c = std::move(out);
}

inline void to_json(json& j, const StabilityWitness& w)
{
  j = json{{"condition", w.condition},
           {"kind", w.kind},
           {"value", w.value},
           {"bound", w.bound},
           {"breaks_stability", w.breaks_stability},
           {"breaks_semistability", w.breaks_semistability},
           {"lines", w.lines},
           {"basis", complex_matrix_to_json(w.basis)}};
}

inline void from_json(const json& j, StabilityWitness& w)
{
  w.condition = io_detail::field(j, "condition").get<int>();
  w.kind = io_detail::field(j, "kind").get<std::string>();
  w.value = io_detail::field(j, "value").get<double>();
  w.bound = io_detail::field(j, "bound").get<double>();
  w.breaks_stability = io_detail::field(j, "breaks_stability").get<bool>();
  w.breaks_semistability = io_detail::field(j, "breaks_semistability").get<bool>();
  w.lines = io_detail::field(j, "lines").get<std::vector<std::size_t>>();
  w.basis = complex_matrix_from_json(io_detail::field(j, "basis"));
}

inline void to_json(json& j, const StabilityReport& r)
{
  j = json{{"stable", r.stable},
           {"semistable", r.semistable},
           {"relative_to_candidate_set", r.relative_to_candidate_set},
           {"candidate_points", r.candidate_points},
           {"candidate_lines", r.candidate_lines},
           {"candidate_planes", r.candidate_planes},
           {"max_point_sum", r.max_point_sum},
           {"max_line_sum", r.max_line_sum},
           {"max_plane_sum", r.max_plane_sum},
           {"witnesses", r.witnesses}};
}

inline void from_json(const json& j, StabilityReport& r)
{
  r.stable = io_detail::field(j, "stable").get<bool>();
  r.semistable = io_detail::field(j, "semistable").get<bool>();
  r.relative_to_candidate_set = io_detail::field(j, "relative_to_candidate_set").get<bool>();
  r.candidate_points = io_detail::field(j, "candidate_points").get<std::size_t>();
  r.candidate_lines = io_detail::field(j, "candidate_lines").get<std::size_t>();
  r.candidate_planes = io_detail::field(j, "candidate_planes").get<std::size_t>();
  r.max_point_sum = io_detail::field(j, "max_point_sum").get<double>();
  r.max_line_sum = io_detail::field(j, "max_line_sum").get<double>();
  r.max_plane_sum = io_detail::field(j, "max_plane_sum").get<double>();
  r.witnesses = io_detail::field(j, "witnesses").get<std::vector<StabilityWitness>>();
}

// ---- normalization -----------------------------------------------------------

inline void to_json(json& j, const NormalizationResult& n)
{
  j = json{{"g", n.g},
           {"configuration", n.configuration},
           {"barycenter", n.barycenter},
           {"center_norm", n.center_norm},
           {"residual", n.residual},
           {"iterations", n.iterations},
           {"rounds", n.rounds}};
}

inline void from_json(const json& j, NormalizationResult& n)
{
  n.g = io_detail::field(j, "g").get<SL2H>();
  n.configuration = io_detail::field(j, "configuration").get<WeightedConfiguration>();
  n.barycenter = io_detail::field(j, "barycenter").get<BallPoint>();
  n.center_norm = io_detail::field(j, "center_norm").get<double>();
  n.residual = io_detail::field(j, "residual").get<double>();
  n.iterations = io_detail::field(j, "iterations").get<int>();
  n.rounds = io_detail::field(j, "rounds").get<int>();
}

// ---- artifacts -----------------------------------------------------------------

struct Tolerances
{
  double closure = 1e-10;
  double rank = default_rank_tolerance;
  double solver = 1e-12;
};

inline void to_json(json& j, const Tolerances& t)
{
  j = json{{"closure", t.closure}, {"rank", t.rank}, {"solver", t.solver}};
}

inline void from_json(const json& j, Tolerances& t)
{
  t.closure = io_detail::field(j, "closure").get<double>();
  t.rank = io_detail::field(j, "rank").get<double>();
  t.solver = io_detail::field(j, "solver").get<double>();
}

/// Envelope written by every command: what was run, with which seed and
/// tolerances, the residuals it measured, and the payload.
struct Artifact
{
  std::string kind;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::map<std::string, double> residuals;
  json data;
};

inline constexpr int artifact_version = 1;

inline void to_json(json& j, const Artifact& a)
{
  j = json{{"format", "quatpoly"},
           {"version", artifact_version},
           {"kind", a.kind},
           {"seed", a.seed},
           {"tolerances", a.tolerances},
           {"residuals", a.residuals},
           {"data", a.data}};
}

inline void from_json(const json& j, Artifact& a)
{
  io_detail::require(j.is_object() && j.value("format", "") == "quatpoly", "not a quatpoly artifact");
  io_detail::require(j.value("version", 0) == artifact_version, "unsupported artifact version");
  a.kind = io_detail::field(j, "kind").get<std::string>();
  a.seed = io_detail::field(j, "seed").get<std::uint64_t>();
  a.tolerances = io_detail::field(j, "tolerances").get<Tolerances>();
  a.residuals = io_detail::field(j, "residuals").get<std::map<std::string, double>>();
  a.data = io_detail::field(j, "data");
}

inline bool is_artifact(const json& j) { return j.is_object() && j.contains("format") && j.contains("data"); }

/// Canonical text: two-space indent, shortest round-trip floats, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw format_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

/// Polygons from a bare polygon, a list of polygons, or an ensemble /
/// polygon artifact.
inline std::vector<Polygon> read_polygons(const json& j)
{
  if (is_artifact(j)) {
    const Artifact a = j.get<Artifact>();
    if (a.data.is_object() && a.data.contains("polygons")) return read_polygons(a.data["polygons"]);
    return read_polygons(a.data);
  }
  if (j.is_array()) return j.get<std::vector<Polygon>>();
  if (j.is_object() && j.contains("polygons")) return read_polygons(j["polygons"]);
  return {j.get<Polygon>()};
}

// ---- CSV -------------------------------------------------------------------------

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s)
{
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw format_error("csv: bad number '" + s + "'");
  return x;
}

/// Flat table with '# key: value' metadata lines before the header.
struct CsvTable
{
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const
  {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) return c;
    throw format_error("csv: no column '" + name + "'");
  }

  std::string meta(const std::string& key) const
  {
    for (const auto& [k, v] : metadata)
      if (k == key) return v;
    throw format_error("csv: no metadata '" + key + "'");
  }
};

inline std::string write_csv(const CsvTable& t)
{
  std::ostringstream out;
  for (const auto& [k, v] : t.metadata) out << "# " << k << ": " << v << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].find_first_of(",\n\"") != std::string::npos)
        throw format_error("csv: cell needs quoting: " + cells[c]);
      out << (c ? "," : "") << cells[c];
    }
    out << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out.str();
}

inline CsvTable read_csv(std::istream& in)
{
  CsvTable t;
  std::string s;
  bool have_header = false;
  while (std::getline(in, s)) {
    if (s.empty()) continue;
    if (s[0] == '#') {
      const auto colon = s.find(": ");
      io_detail::require(!have_header && colon != std::string::npos && s.size() > 2, "csv: bad metadata line");
      t.metadata.emplace_back(s.substr(2, colon - 2), s.substr(colon + 2));
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
    } else {
      io_detail::require(cells.size() == t.header.size(), "csv: row width does not match header");
      t.rows.push_back(std::move(cells));
    }
  }
  io_detail::require(have_header, "csv: missing header");
  return t;
}

inline CsvTable read_csv(const std::string& text)
{
  std::istringstream in(text);
  return read_csv(in);
}

} // namespace quatpoly

#endif
