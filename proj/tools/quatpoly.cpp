// quatpoly: command-line front end.
//
// Exit codes: 0 success, 2 usage or bad input, 3 numerical non-convergence,
// 4 invariant violation (the invariant is named on stderr), 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "parallel.hpp"
#include "quatpoly/io.hpp"
#include "quatpoly/random.hpp"
#include "verify.hpp"

using namespace quatpoly;
using quatpoly::tools::parallel_for;

namespace {

class usage_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig
{
  std::uint64_t seed = 0;
  Tolerances tol;
  std::string format = "json";
  std::string in;
  std::string out;

  void validate() const
  {
    if (!(tol.closure > 0 && tol.rank > 0 && tol.solver > 0)) throw usage_error("tolerances must be positive");
  }
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool csv_allowed)
{
  cmd->add_option("--seed", cfg.seed, "random seed recorded in the artifact");
  cmd->add_option("--tol-closure", cfg.tol.closure, "closure residual tolerance")->capture_default_str();
  cmd->add_option("--tol-rank", cfg.tol.rank, "relative singular value cutoff for span rank")->capture_default_str();
  cmd->add_option("--tol-solver", cfg.tol.solver, "barycenter solver residual tolerance")->capture_default_str();
  auto* fmt = cmd->add_option("--format", cfg.format, "output format")->capture_default_str();
  if (csv_allowed)
    fmt->check(CLI::IsMember({"json", "csv"}));
  else
    fmt->check(CLI::IsMember({"json"}));
  cmd->add_option("--out", cfg.out, "output path (default stdout)");
}

void emit(const RunConfig& cfg, const std::string& text)
{
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw usage_error("cannot write " + cfg.out);
  f << text;
}

Artifact make_artifact(const std::string& kind, const RunConfig& cfg)
{
  Artifact a;
  a.kind = kind;
  a.seed = cfg.seed;
  a.tolerances = cfg.tol;
  return a;
}

CsvTable csv_from_artifact_header(const Artifact& a)
{
  CsvTable t;
  t.metadata = {{"format", "quatpoly"},
                {"kind", a.kind},
                {"seed", std::to_string(a.seed)},
                {"tol_closure", format_double(a.tolerances.closure)},
                {"tol_rank", format_double(a.tolerances.rank)},
                {"tol_solver", format_double(a.tolerances.solver)}};
  for (const auto& [k, v] : a.residuals) t.metadata.emplace_back("residual_" + k, format_double(v));
  return t;
}

json read_input(const RunConfig& cfg)
{
  if (cfg.in.empty()) throw usage_error("--in is required");
  if (cfg.in == "-") {
    try {
      return json::parse(std::cin);
    } catch (const json::parse_error& e) {
      throw format_error(std::string("stdin: ") + e.what());
    }
  }
  return parse_json_file(cfg.in);
}

/// Payload of an artifact, or the document itself.
json payload(const json& j) { return is_artifact(j) ? j.get<Artifact>().data : j; }

std::vector<double> parse_weights(const std::string& spec, int n)
{
  if (spec == "equal") {
    if (n < 2) throw usage_error("--weights equal needs --n >= 2");
    return std::vector<double>(static_cast<std::size_t>(n), 1.0);
  }
  std::vector<double> r;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      r.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw usage_error("--weights: cannot parse '" + item + "'");
    }
  }
  if (r.size() < 2) throw usage_error("--weights: need at least two side lengths");
  if (n > 0 && static_cast<int>(r.size()) != n)
    throw usage_error("--weights has " + std::to_string(r.size()) + " entries but --n is " + std::to_string(n));
  return r;
}

void require_closed(const std::vector<Polygon>& ps, double tol)
{
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double res = ps[i].closure_residual();
    if (!(res <= tol * std::max(1.0, std::accumulate(ps[i].r.begin(), ps[i].r.end(), 0.0))))
      throw invariant_error("closure", "polygon " + std::to_string(i) + " has closure residual " +
                                           format_double(res));
  }
}

double max_closure(const std::vector<Polygon>& ps)
{
  double worst = 0.0;
  for (const auto& p : ps) worst = std::max(worst, p.closure_residual());
  return worst;
}

// ---------------------------------------------------------------- commands

struct SampleArgs
{
  int n = 0;
  std::string weights = "equal";
  int count = 1;
};

void cmd_sample(const RunConfig& cfg, const SampleArgs& args)
{
  const auto r = parse_weights(args.weights, args.n);
  if (args.count < 1) throw usage_error("--count must be positive");
  SamplerOptions so;
  so.tol = cfg.tol.closure;
  std::vector<Polygon> ps(static_cast<std::size_t>(args.count));
  parallel_for(ps.size(), [&](std::size_t i) {
    auto rng = item_rng(cfg.seed, i);
    ps[i] = sample_closed(r, rng, so);
  });

  Artifact a = make_artifact("ensemble", cfg);
  a.residuals["closure_max"] = max_closure(ps);
  if (cfg.format == "csv") {
    CsvTable t = csv_from_artifact_header(a);
    t.header = {"index", "closure_residual"};
    for (std::size_t k = 0; k < r.size(); ++k) t.header.push_back("r_" + std::to_string(k + 1));
    for (std::size_t k = 0; k < r.size(); ++k)
      for (int c = 0; c < 5; ++c) t.header.push_back("u" + std::to_string(k + 1) + "_" + std::to_string(c + 1));
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::vector<std::string> row{std::to_string(i), format_double(ps[i].closure_residual())};
      for (double x : ps[i].r) row.push_back(format_double(x));
      for (const auto& e : ps[i].edges)
        for (int c = 0; c < 5; ++c) row.push_back(format_double(e[c]));
      t.rows.push_back(std::move(row));
    }
    emit(cfg, write_csv(t));
    return;
  }
  a.data = json{{"weights", r}, {"polygons", ps}};
  emit(cfg, dump(json(a)));
}

void cmd_classify(const RunConfig& cfg)
{
  const auto ps = read_polygons(read_input(cfg));
  require_closed(ps, cfg.tol.closure);
  std::vector<DegeneracyReport> reps(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) { reps[i] = classify(ps[i], cfg.tol.rank); });
  std::map<std::string, int> counts;
  for (const auto& k : {"nondegenerate", "type2", "type3", "linear"}) counts[k] = 0;
  for (const auto& rep : reps) ++counts[to_string(rep.kind)];

  Artifact a = make_artifact("classification", cfg);
  a.residuals["closure_max"] = max_closure(ps);
  if (cfg.format == "csv") {
    CsvTable t = csv_from_artifact_header(a);
    t.header = {"index", "kind", "span_rank", "trivial_factor_dim", "cone"};
    for (std::size_t i = 0; i < reps.size(); ++i)
      t.rows.push_back({std::to_string(i), to_string(reps[i].kind), std::to_string(reps[i].span_rank),
                        std::to_string(reps[i].local_model.trivial_factor_dim), reps[i].local_model.cone});
    emit(cfg, write_csv(t));
    return;
  }
  a.data = json{{"reports", reps}, {"counts", counts}};
  emit(cfg, dump(json(a)));
}

void cmd_normalize(const RunConfig& cfg)
{
  const auto wc = payload(read_input(cfg)).get<WeightedConfiguration>();
  BarycenterOptions bo;
  bo.tol = cfg.tol.solver;
  const double center_tol = 1e-9;
  const NormalizationResult res = normalize_configuration(wc, center_tol, bo);

  Artifact a = make_artifact("normalization", cfg);
  a.residuals["solver"] = res.residual;
  a.residuals["center_norm"] = res.center_norm;
  a.residuals["input_center_norm"] = center_of_mass(wc).norm();
  a.data = json(res);
  a.data["center_tolerance"] = center_tol;
  emit(cfg, dump(json(a)));
}

void cmd_gt(const RunConfig& cfg)
{
  const json in = payload(read_input(cfg));
  Artifact a = make_artifact("gt", cfg);
  if (in.is_object() && in.contains("hermitian")) {
    const auto h = in["hermitian"].get<QuatMatrix>();
    const GTPattern g = gt_pattern(h);
    const auto spec = quat_hermitian_spectrum(h);
    a.residuals["interlacing"] = interlacing_violation(g);
    a.residuals["pair_gap"] = spec.max_pair_gap;
    a.residuals["hermitian_defect"] = (h - h.adjoint()).frobenius_norm();
    a.data = json{{"pattern", g}, {"eigenvalues", spec.values}};
  } else if (in.is_object() && in.contains("grassmann")) {
    const auto m = in["grassmann"].get<QuatMatrix>();
    const auto spectra = partial_gram_spectra(m);
    const Polygon p = polygon_from_grassmann(m);
    const auto lengths = diagonal_lengths_from_spectra(spectra);
    const auto direct = diagonal_lengths(p).lengths;
    double mismatch = 0.0, diag = 0.0;
    for (const auto& s : spectra) mismatch = std::max(mismatch, s.mismatch);
    for (std::size_t i = 0; i < direct.size(); ++i) diag = std::max(diag, std::abs(direct[i] - lengths[i]));
    if (diag > 1e-9 * std::max(1.0, p.r.empty() ? 1.0 : *std::max_element(p.r.begin(), p.r.end())))
      throw invariant_error("diagonal-spectra", "spectral and vertex diagonal lengths differ by " + format_double(diag));
    a.residuals["gram_mismatch"] = mismatch;
    a.residuals["level_set"] = level_set_residual(m);
    a.residuals["diagonal_agreement"] = diag;
    a.residuals["closure"] = p.closure_residual();
    a.data = json{{"tri_momentum", tri_momentum(m)},
                  {"partial_spectra", spectra},
                  {"diagonal_lengths", lengths},
                  {"polygon", p}};
  } else {
    throw usage_error("gt: input needs a \"hermitian\" or \"grassmann\" matrix");
  }
  emit(cfg, dump(json(a)));
}

void cmd_stability(const RunConfig& cfg)
{
  const auto lc = payload(read_input(cfg)).get<LineConfiguration>();
  const StabilityReport rep = line_stability(lc);
  Artifact a = make_artifact("stability", cfg);
  a.residuals["max_point_sum"] = rep.max_point_sum;
  a.residuals["max_line_sum"] = rep.max_line_sum;
  a.residuals["max_plane_sum"] = rep.max_plane_sum;
  a.data = json(rep);
  a.data["verdict"] = rep.stable ? "stable" : rep.semistable ? "semistable" : "unstable";
  emit(cfg, dump(json(a)));
}

struct BendArgs
{
  std::size_t diagonal = 0;
  std::size_t index = 0;
};

void cmd_bend(const RunConfig& cfg, const BendArgs& args)
{
  const auto ps = read_polygons(read_input(cfg));
  if (args.index >= ps.size()) throw usage_error("--index out of range");
  const Polygon& p = ps[args.index];
  require_closed({p}, cfg.tol.closure);
  if (p.size() < 4 || args.diagonal < 1 || args.diagonal > p.size() - 3)
    throw usage_error("--diagonal must be in 1.." + std::to_string(p.size() < 4 ? 0 : p.size() - 3));
  auto rng = item_rng(cfg.seed, 0);
  const auto before = diagonal_lengths(p);
  const Mat5d k = random_rotation_fixing(before.diagonals[args.diagonal - 1], rng);
  const Polygon q = bend(p, args.diagonal, k);
  const auto after = diagonal_lengths(q);
  double dl = 0.0;
  for (std::size_t i = 0; i < before.lengths.size(); ++i)
    dl = std::max(dl, std::abs(before.lengths[i] - after.lengths[i]));
  const double scale = std::max(1.0, std::accumulate(p.r.begin(), p.r.end(), 0.0));
  if (dl > 1e-10 * scale) throw invariant_error("bending", "diagonal lengths moved by " + format_double(dl));
  if (q.closure_residual() > cfg.tol.closure * scale)
    throw invariant_error("closure", "bent polygon has closure residual " + format_double(q.closure_residual()));

  Artifact a = make_artifact("bend", cfg);
  a.residuals["closure"] = q.closure_residual();
  a.residuals["diagonal_lengths"] = dl;
  json rot = json::array();
  for (int i = 0; i < 5; ++i) rot.push_back(vec_to_json(k.row(i).transpose()));
  a.data = json{{"diagonal", args.diagonal}, {"rotation", rot}, {"polygon", q}, {"diagonal_lengths", after.lengths}};
  emit(cfg, dump(json(a)));
}

void cmd_report(RunConfig cfg)
{
  const json in = read_input(cfg);
  if (is_artifact(in)) {
    // the ensemble's own seed is what reproduces it
    const Artifact src = in.get<Artifact>();
    cfg.seed = src.seed;
  }
  const auto ps = read_polygons(in);
  if (ps.empty()) throw usage_error("report: empty ensemble");
  for (const auto& p : ps)
    if (p.size() != ps[0].size()) throw usage_error("report: polygons of different sizes");
  require_closed(ps, cfg.tol.closure);

  struct Row
  {
    DegeneracyReport rep;
    std::vector<double> l;
  };
  std::vector<Row> rows(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) { rows[i] = {classify(ps[i], cfg.tol.rank), diagonal_lengths(ps[i]).lengths}; });
  std::map<std::string, int> counts;
  for (const auto& k : {"nondegenerate", "type2", "type3", "linear"}) counts[k] = 0;
  for (const auto& r : rows) ++counts[to_string(r.rep.kind)];

  Artifact a = make_artifact("report", cfg);
  a.residuals["closure_max"] = max_closure(ps);
  if (cfg.format == "csv") {
    CsvTable t = csv_from_artifact_header(a);
    for (const auto& [k, v] : counts) t.metadata.emplace_back("count_" + k, std::to_string(v));
    t.header = {"index", "kind", "span_rank", "closure_residual"};
    for (std::size_t k = 1; k + 2 < ps[0].size(); ++k) t.header.push_back("l_" + std::to_string(k));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<std::string> row{std::to_string(i), to_string(rows[i].rep.kind),
                                   std::to_string(rows[i].rep.span_rank), format_double(ps[i].closure_residual())};
      for (double x : rows[i].l) row.push_back(format_double(x));
      t.rows.push_back(std::move(row));
    }
    emit(cfg, write_csv(t));
    return;
  }
  json items = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i)
    items.push_back(json{{"index", i},
                         {"kind", to_string(rows[i].rep.kind)},
                         {"span_rank", rows[i].rep.span_rank},
                         {"closure_residual", ps[i].closure_residual()},
                         {"diagonal_lengths", rows[i].l}});
  a.data = json{{"rows", items}, {"counts", counts}};
  emit(cfg, dump(json(a)));
}

int cmd_verify(const RunConfig& cfg, int scale, const std::string& inject)
{
  tools::VerifyOptions vo;
  vo.seed = cfg.seed;
  vo.tol = cfg.tol;
  vo.scale = scale;
  if (!inject.empty()) vo.inject = inject;
  const auto checks = tools::run_verify(vo);

  Artifact a = make_artifact("verify", cfg);
  bool ok = true;
  for (const auto& c : checks) {
    a.residuals[c.name] = c.measured;
    ok = ok && c.passed;
  }
  for (const auto& c : checks)
    std::fprintf(stderr, "%-28s %-4s measured %-12.3g tol %-10.3g (%d cases)%s%s\n", c.name.c_str(),
                 c.passed ? "PASS" : "FAIL", c.measured, c.tolerance, c.cases, c.detail.empty() ? "" : "  ",
                 c.detail.c_str());

  if (cfg.format == "csv") {
    CsvTable t = csv_from_artifact_header(a);
    t.header = {"name", "invariant", "status", "measured", "tolerance", "cases"};
    for (const auto& c : checks)
      t.rows.push_back({c.name, c.invariant, c.passed ? "pass" : "fail", format_double(c.measured),
                        format_double(c.tolerance), std::to_string(c.cases)});
    emit(cfg, write_csv(t));
  } else {
    a.data = json{{"passed", ok}, {"checks", checks}};
    emit(cfg, dump(json(a)));
  }
  if (!ok) {
    for (const auto& c : checks)
      if (!c.passed) std::fprintf(stderr, "invariant violated: %s (%s)\n", c.invariant.c_str(), c.name.c_str());
    return 4;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Closed polygons in R^5 and their quaternionic models"};
  app.require_subcommand(1);

  RunConfig cfg;
  SampleArgs sample_args;
  BendArgs bend_args;
  int verify_scale = 1;
  std::string inject;

  auto* sample = app.add_subcommand("sample", "sample closed polygons with given side lengths");
  add_common(sample, cfg, true);
  sample->add_option("--n", sample_args.n, "number of sides (with --weights equal)");
  sample->add_option("--weights", sample_args.weights, "'equal' or a comma-separated list")->capture_default_str();
  sample->add_option("--count", sample_args.count, "ensemble size")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "span rank, degeneracy type and local model");
  add_common(classify_cmd, cfg, true);
  classify_cmd->add_option("--in", cfg.in, "polygon, polygon list or ensemble artifact")->required();

  auto* normalize = app.add_subcommand("normalize", "move a weighted configuration on S^4 to zero center of mass");
  add_common(normalize, cfg, false);
  normalize->add_option("--in", cfg.in, "configuration {weights, points}")->required();

  auto* gt = app.add_subcommand("gt", "GT pattern of a Hermitian matrix or spectra of a Grassmann point");
  add_common(gt, cfg, false);
  gt->add_option("--in", cfg.in, "{\"hermitian\": ...} or {\"grassmann\": ...}")->required();

  auto* stability = app.add_subcommand("stability", "stability of a weighted line configuration in CP^3");
  add_common(stability, cfg, false);
  stability->add_option("--in", cfg.in, "line configuration {weights, lines}")->required();

  auto* bend_cmd = app.add_subcommand("bend", "bend a polygon about a diagonal by a random rotation");
  add_common(bend_cmd, cfg, false);
  bend_cmd->add_option("--in", cfg.in, "polygon input")->required();
  bend_cmd->add_option("--diagonal", bend_args.diagonal, "diagonal index, 1..n-3")->required();
  bend_cmd->add_option("--index", bend_args.index, "which polygon of a list")->capture_default_str();

  auto* report = app.add_subcommand("report", "diagonal lengths and classification counts of an ensemble");
  add_common(report, cfg, true);
  report->add_option("--in", cfg.in, "ensemble artifact")->required();

  auto* verify = app.add_subcommand("verify", "run the invariant battery");
  add_common(verify, cfg, true);
  verify->add_option("--scale", verify_scale, "multiply case counts")->check(CLI::PositiveNumber);
  verify->add_option("--inject", inject, "add a negative fixture")
      ->check(CLI::IsMember(tools::injectable_fixtures()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.validate();
    if (*report && report->get_option("--format")->count() == 0) cfg.format = "csv";
    if (*sample) cmd_sample(cfg, sample_args);
    else if (*classify_cmd) cmd_classify(cfg);
    else if (*normalize) cmd_normalize(cfg);
    else if (*gt) cmd_gt(cfg);
    else if (*stability) cmd_stability(cfg);
    else if (*bend_cmd) cmd_bend(cfg, bend_args);
    else if (*report) cmd_report(cfg);
    else if (*verify) return cmd_verify(cfg, verify_scale, inject);
    return 0;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 4;
  } catch (const convergence_error& e) {
    std::cerr << "did not converge: " << e.what() << "\n";
    return 3;
  } catch (const usage_error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const format_error& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // domain_error, invalid_argument, out_of_range, length_error
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
