// End-to-end runs of the quatpoly executable.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "quatpoly/io.hpp"

using namespace quatpoly;
namespace fs = std::filesystem;

namespace {

struct CliRun
{
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch()
{
  const auto* info = testing::UnitTest::GetInstance()->current_test_info();
  fs::path dir = fs::temp_directory_path() / ("quatpoly_cli_" + std::string(info->name()));
  fs::create_directories(dir);
  return dir;
}

std::string fixture(const std::string& name) { return std::string(QUATPOLY_FIXTURES) + "/" + name; }

CliRun run(const std::string& args, const std::string& env = "")
{
  const fs::path dir = scratch();
  const fs::path out = dir / "stdout", err = dir / "stderr";
  const std::string cmd =
      env + " \"" + QUATPOLY_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string write_temp(const std::string& name, const std::string& text)
{
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

/// Artifact text must parse and re-serialize to the same bytes.
Artifact reread(const std::string& text)
{
  const Artifact a = json::parse(text).get<Artifact>();
  EXPECT_EQ(dump(json(a)), text);
  return a;
}

} // namespace

TEST(Cli, SampleHexagons)
{
  const CliRun r = run("sample --n 6 --weights equal --count 100 --seed 7");
  ASSERT_EQ(r.code, 0) << r.err;
  const Artifact a = reread(r.out);
  EXPECT_EQ(a.kind, "ensemble");
  EXPECT_EQ(a.seed, 7u);
  EXPECT_EQ(a.tolerances.closure, 1e-10);
  const auto ps = read_polygons(json::parse(r.out));
  ASSERT_EQ(ps.size(), 100u);
  for (const auto& p : ps) {
    EXPECT_EQ(p.size(), 6u);
    EXPECT_LT(p.closure_residual(), 1e-10);
  }
  EXPECT_LT(a.residuals.at("closure_max"), 1e-10);
}

TEST(Cli, DeterministicAcrossThreadCounts)
{
  const std::string args = "sample --n 7 --weights equal --count 64 --seed 11";
  const CliRun one = run(args, "QUATPOLY_THREADS=1");
  const CliRun many = run(args, "QUATPOLY_THREADS=8");
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, many.out);
  EXPECT_EQ(run(args).out, one.out);
  // a different seed gives a different ensemble
  EXPECT_NE(run("sample --n 7 --weights equal --count 64 --seed 12").out, one.out);

  const std::string ens = write_temp("ens.json", one.out);
  const CliRun rep1 = run("report --in " + ens, "QUATPOLY_THREADS=1");
  const CliRun rep2 = run("report --in " + ens, "QUATPOLY_THREADS=5");
  ASSERT_EQ(rep1.code, 0) << rep1.err;
  EXPECT_EQ(rep1.out, rep2.out);
}

TEST(Cli, SampleCsvRoundTrips)
{
  const CliRun r = run("sample --weights 1,1.5,0.8,1.2,0.9 --count 10 --seed 3 --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable t = read_csv(r.out);
  EXPECT_EQ(write_csv(t), r.out);
  EXPECT_EQ(t.meta("seed"), "3");
  EXPECT_EQ(t.meta("kind"), "ensemble");
  ASSERT_EQ(t.rows.size(), 10u);
  // the rows rebuild the same polygons as the JSON artifact
  const auto ps = read_polygons(json::parse(run("sample --weights 1,1.5,0.8,1.2,0.9 --count 10 --seed 3").out));
  for (std::size_t i = 0; i < 10; ++i)
    for (int c = 0; c < 5; ++c)
      EXPECT_EQ(parse_double(t.rows[i][t.column("u3_" + std::to_string(c + 1))]), ps[i].edges[2][c]);
}

TEST(Cli, ClassifyPlanarHexagon)
{
  const CliRun r = run("classify --in " + fixture("planar_hexagon.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const Artifact a = reread(r.out);
  const auto rep = a.data["reports"][0].get<DegeneracyReport>();
  EXPECT_EQ(rep.kind, DegeneracyKind::type3);
  EXPECT_EQ(rep.span_rank, 2);
  EXPECT_EQ(rep.local_model.trivial_factor_dim, 3);
  EXPECT_EQ(rep.local_model.cone, "(R³)³/SO(3)");
}

TEST(Cli, FourGonEnsembleIsAllDegenerate)
{
  const CliRun s = run("sample --n 4 --weights equal --count 200 --seed 5");
  ASSERT_EQ(s.code, 0);
  const CliRun r = run("classify --in " + write_temp("quads.json", s.out));
  ASSERT_EQ(r.code, 0) << r.err;
  const Artifact a = reread(r.out);
  EXPECT_EQ(a.data["counts"]["nondegenerate"].get<int>(), 0);
  int degenerate = 0;
  for (const auto& rep : a.data["reports"]) degenerate += rep["span_rank"].get<int>() <= 3;
  EXPECT_EQ(degenerate, 200);

  const CliRun csv = run("classify --format csv --in " + write_temp("quads.json", s.out));
  EXPECT_EQ(read_csv(csv.out).rows.size(), 200u);
}

TEST(Cli, NormalizeOffCenterConfiguration)
{
  const CliRun r = run("normalize --in " + fixture("offcenter_configuration.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const Artifact a = reread(r.out);
  EXPECT_GT(a.residuals.at("input_center_norm"), 0.1);
  EXPECT_LT(a.residuals.at("center_norm"), 1e-9);
  const auto res = a.data.get<NormalizationResult>();
  EXPECT_LT(center_of_mass(res.configuration).norm(), 1e-9);
  // the stored g reproduces the stored configuration
  const auto input = json::parse(slurp(fixture("offcenter_configuration.json"))).get<WeightedConfiguration>();
  EXPECT_LT(center_of_mass(pushforward(res.g, input)).norm(), 1e-9);
}

TEST(Cli, GtReports)
{
  const CliRun h = run("gt --in " + fixture("hermitian3.json"));
  ASSERT_EQ(h.code, 0) << h.err;
  const Artifact a = reread(h.out);
  const auto g = a.data["pattern"].get<GTPattern>();
  EXPECT_EQ(g.rows.size(), 3u);
  EXPECT_EQ(g.rows[0][0], 2.0);
  EXPECT_EQ(interlacing_violation(g), 0.0);

  const auto p = read_polygons(json::parse(run("sample --weights 1,1.2,0.7,1.1,0.9,1.3 --seed 2").out))[0];
  const std::string in = write_temp("grass.json", dump(json{{"grassmann", grassmann_from_polygon(p)}}));
  const CliRun m = run("gt --in " + in);
  ASSERT_EQ(m.code, 0) << m.err;
  const Artifact b = reread(m.out);
  const auto l = b.data["diagonal_lengths"].get<std::vector<double>>();
  const auto direct = diagonal_lengths(p).lengths;
  ASSERT_EQ(l.size(), direct.size());
  for (std::size_t i = 0; i < l.size(); ++i) EXPECT_NEAR(l[i], direct[i], 1e-9);
}

TEST(Cli, StabilityVerdicts)
{
  const std::pair<const char*, const char*> cases[] = {{"lines_generic.json", "stable"},
                                                       {"lines_common_point.json", "unstable"},
                                                       {"lines_common_transversal.json", "semistable"}};
  for (const auto& [file, verdict] : cases) {
    const CliRun r = run("stability --in " + fixture(file));
    ASSERT_EQ(r.code, 0) << r.err;
    const Artifact a = reread(r.out);
    EXPECT_EQ(a.data["verdict"].get<std::string>(), verdict) << file;
    EXPECT_TRUE(a.data["relative_to_candidate_set"].get<bool>());
  }
}

TEST(Cli, BendKeepsDiagonals)
{
  const CliRun s = run("sample --weights 1,1.2,0.7,1.1,0.9,1.3 --seed 4");
  const std::string in = write_temp("p.json", s.out);
  const CliRun r = run("bend --in " + in + " --diagonal 2 --seed 9");
  ASSERT_EQ(r.code, 0) << r.err;
  const Artifact a = reread(r.out);
  const auto before = diagonal_lengths(read_polygons(json::parse(s.out))[0]).lengths;
  const auto after = diagonal_lengths(a.data["polygon"].get<Polygon>()).lengths;
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(before[i], after[i], 1e-10);
  EXPECT_EQ(run("bend --in " + in + " --diagonal 2 --seed 9").out, r.out);
  EXPECT_EQ(run("bend --in " + in + " --diagonal 4").code, 2);
}

TEST(Cli, ReportCsv)
{
  const CliRun s = run("sample --n 6 --weights equal --count 20 --seed 8");
  const CliRun r = run("report --in " + write_temp("e.json", s.out));
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable t = read_csv(r.out);
  EXPECT_EQ(write_csv(t), r.out);
  EXPECT_EQ(t.meta("seed"), "8");
  EXPECT_EQ(t.header.back(), "l_3");
  EXPECT_EQ(t.rows.size(), 20u);
  EXPECT_EQ(std::stoi(t.meta("count_nondegenerate")) + std::stoi(t.meta("count_type2")) +
                std::stoi(t.meta("count_type3")) + std::stoi(t.meta("count_linear")),
            20);
  const CliRun j = run("report --format json --in " + write_temp("e.json", s.out));
  reread(j.out);
}

TEST(Cli, VerifyPasses)
{
  const CliRun r = run("verify --seed 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const Artifact a = reread(r.out);
  EXPECT_TRUE(a.data["passed"].get<bool>());
  for (const auto& c : a.data["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
  EXPECT_EQ(run("verify --seed 3").out, r.out);
}

TEST(Cli, VerifyReportsInjectedPairingFailure)
{
  const CliRun r = run("verify --inject non-hermitian");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("invariant violated: eigenvalue-pairing"), std::string::npos) << r.err;
  const Artifact a = reread(r.out);
  EXPECT_FALSE(a.data["passed"].get<bool>());
}

TEST(Cli, ExitCodes)
{
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("sample --n 6 --count nope").code, 2);
  EXPECT_EQ(run("sample --n 6 --tol-closure -1").code, 2);
  EXPECT_EQ(run("normalize --in x.json --format csv").code, 2);
  EXPECT_EQ(run("classify --in /nonexistent.json").code, 2);
  EXPECT_EQ(run("classify --in " + fixture("malformed.json")).code, 2);
  EXPECT_EQ(run("sample --weights 1,1,5").code, 2);
  EXPECT_EQ(run("normalize --in " + fixture("unstable_configuration.json")).code, 2);
  EXPECT_EQ(run("gt --in " + fixture("not_hermitian.json")).code, 2);
  EXPECT_EQ(run("--help").code, 0);

  const CliRun nc = run("normalize --tol-solver 1e-300 --in " + fixture("offcenter_configuration.json"));
  EXPECT_EQ(nc.code, 3);

  const CliRun open = run("classify --in " + fixture("open_triangle.json"));
  EXPECT_EQ(open.code, 4);
  EXPECT_NE(open.err.find("invariant violated: closure"), std::string::npos) << open.err;
}

TEST(Cli, OutFlagWritesFile)
{
  const fs::path out = scratch() / "ens.json";
  const CliRun r = run("sample --n 5 --count 3 --seed 1 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(out), run("sample --n 5 --count 3 --seed 1").out);
}
