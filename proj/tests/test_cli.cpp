#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "geonet/centrality.hpp"
#include "geonet/netgen.hpp"
#include "geonet/protocol.hpp"

namespace fs = std::filesystem;
using namespace geonet;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GEONET_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("geonet_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

const std::string unit_square = q(fs::path(GEONET_DATA_DIR) / "unit_square.txt");

fs::path write_network_file(const std::string& name, std::vector<Point> pts, double radius) {
  const fs::path p = scratch() / name;
  save_network(p, SensorNetwork(std::move(pts), radius));
  return p;
}

CentralityResult read_values(const fs::path& p) {
  std::ifstream in(p);
  return read_centrality_csv(in);
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("generate is reproducible and reports a summary") {
  const fs::path a = scratch() / "gen_a.net", b = scratch() / "gen_b.net";
  const auto ra = run("generate --region " + unit_square + " --nodes 100 --radius 0.2 --seed 7 --out " + q(a));
  const auto rb = run("generate --region " + unit_square + " --nodes 100 --radius 0.2 --seed 7 --out " + q(b));
  CHECK(ra.code == 0);
  CHECK(rb.code == 0);
  CHECK(ra.out.find("nodes=100") != std::string::npos);
  CHECK(ra.out.find("mean_degree=") != std::string::npos);
  CHECK(slurp(a) == slurp(b));
  CHECK(load_network(a).node_count() == 100);

  const fs::path c = scratch() / "gen_c.net";
  run("generate --region " + unit_square + " --nodes 100 --radius 0.2 --seed 8 --out " + q(c));
  CHECK(slurp(a) != slurp(c));

  // Load and re-save reproduces the file byte for byte.
  const fs::path resaved = scratch() / "gen_resaved.net";
  save_network(resaved, load_network(a));
  CHECK(slurp(resaved) == slurp(a));
}

TEST_CASE("generate with zero nodes writes an empty network") {
  const fs::path p = scratch() / "empty.net";
  CHECK(run("generate --region " + unit_square + " --nodes 0 --radius 0.2 --seed 1 --out " + q(p)).code == 0);
  CHECK(load_network(p).node_count() == 0);
}

TEST_CASE("generate input and usage errors") {
  const fs::path bad = scratch() / "bad_region.txt";
  std::ofstream(bad) << "4\n0 0\n1 0\n1 one\n0 1\n0\n";
  const auto r = run("generate --region " + q(bad) + " --nodes 5 --radius 0.2 --seed 1 2>&1");
  CHECK(r.code == 2);
  const std::string cmd = std::string(GEONET_CLI) + " generate --region " + q(bad) +
                          " --nodes 5 --radius 0.2 --seed 1 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[512] = {};
  const std::size_t n = fread(buf, 1, sizeof buf - 1, pipe);
  pclose(pipe);
  CHECK(std::string(buf, n).find("line 4") != std::string::npos);

  CHECK(run("generate --region " + unit_square + " --nodes 5 --radius 0.2").code == 1);
  CHECK(run("generate --region " + unit_square + " --nodes 5 --radius -1 --seed 1").code == 1);
  CHECK(run("generate --region " + q(scratch() / "missing.txt") + " --nodes 5 --radius 0.2 --seed 1").code == 2);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("").code == 1);
}

TEST_CASE("centrality subcommand") {
  const fs::path tri = write_network_file("triangle.net", {{0, 0}, {1, 0}, {0.5, 0.8}}, 1.0);
  const fs::path st = scratch() / "tri_st.csv";
  CHECK(run("centrality --network " + q(tri) + " --measure st --out " + q(st)).code == 0);
  const auto st_values = read_values(st);
  CHECK(st_values.measure == Measure::normalized_st);
  CHECK(st_values.values == std::vector<double>{0, 0, 0});

  const fs::path line = write_network_file("path.net", {{0, 0}, {1, 0}, {2, 0}, {3, 0}}, 1.0);
  const fs::path stress = scratch() / "path_stress.csv";
  CHECK(run("centrality --network " + q(line) + " --measure stress --out " + q(stress)).code == 0);
  CHECK(read_values(stress).values == std::vector<double>{0, 4, 4, 0});

  const fs::path net = scratch() / "khop.net";
  run("generate --region " + unit_square + " --nodes 200 --radius 0.12 --seed 3 --out " + q(net));
  const fs::path k1 = scratch() / "k1.csv", k4 = scratch() / "k4.csv";
  CHECK(run("centrality --network " + q(net) + " --measure khop --k 1 --out " + q(k1)).code == 0);
  CHECK(run("centrality --network " + q(net) + " --measure khop --k 4 --out " + q(k4)).code == 0);
  const auto a = read_values(k1), b = read_values(k4);
  CHECK(b.parameter == 4);
  REQUIRE(a.values.size() == 200);
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    CHECK(b.values[i] > 0.0);
    CHECK(b.values[i] >= a.values[i]);
  }

  CHECK(run("centrality --network " + q(line) + " --measure eigen").code == 1);
  const auto inline_csv = run("centrality --network " + q(line) + " --measure rstress --delta 2");
  CHECK(inline_csv.code == 0);
  CHECK(inline_csv.out.rfind("# measure=rstress", 0) == 0);

  const fs::path junk = scratch() / "junk.net";
  std::ofstream(junk) << "2 1.0\n0 0 0\n1 0.5 nope\n";
  CHECK(run("centrality --network " + q(junk) + " --measure st").code == 2);
}

TEST_CASE("protocol subcommand") {
  const fs::path tri = write_network_file("ptri.net", {{0, 0}, {1, 0}, {0.5, 0.8}}, 1.0);
  const fs::path out = scratch() / "ptri.csv", trace = scratch() / "ptri_trace.csv";
  const auto r = run("protocol --network " + q(tri) + " --out " + q(out) + " --trace " + q(trace));
  CHECK(r.code == 0);
  std::ifstream in(out);
  const auto classes = read_classification_csv(in);
  CHECK(classes == std::vector<Classification>(3, Classification::boundary));
  CHECK(slurp(trace).rfind("round,phase,messages,payload_units\n", 0) == 0);
  CHECK(r.out.find("strips=1") != std::string::npos);

  CHECK(run("protocol --network " + q(tri) + " --theta 0.5").code == 1);
  CHECK(run("protocol --network " + q(tri) + " --theta 0").code == 1);
  CHECK(run("protocol --network " + q(tri) + " --root 9").code == 1);

  const fs::path net = scratch() / "pgen.net";
  run("generate --region " + unit_square + " --nodes 400 --radius 0.1 --seed 5 --out " + q(net));
  const auto with_truth = run("protocol --network " + q(net) + " --region " + unit_square +
                              " --filter --out " + q(scratch() / "pgen.csv"));
  CHECK(with_truth.code == 0);
  CHECK(with_truth.out.find("false_negative_rate=") != std::string::npos);
  CHECK(with_truth.out.find("false_positive_rate=") != std::string::npos);
}

TEST_CASE("theory subcommand") {
  const auto sigma = run("theory sigma");
  CHECK(sigma.code == 0);
  CHECK(sigma.out == "0.4134966716\n");

  const fs::path lo = scratch() / "dist_s0.csv", hi = scratch() / "dist_s2.csv";
  CHECK(run("theory dist --s 0 --mu 20 --samples 4000 --seed 1 --out " + q(lo)).code == 0);
  CHECK(run("theory dist --s 2 --mu 20 --samples 4000 --seed 2 --out " + q(hi)).code == 0);
  const auto jlo = nlohmann::json::parse(slurp(scratch() / "dist_s0.json"));
  const auto jhi = nlohmann::json::parse(slurp(scratch() / "dist_s2.json"));
  CHECK(jlo["mean"].get<double>() < jhi["mean"].get<double>());
  CHECK(slurp(lo).rfind("bin_low,bin_high,count\n", 0) == 0);

  const fs::path one = scratch() / "dist_one.csv";
  CHECK(run("theory dist --s 1 --mu 20 --samples 1 --seed 3 --out " + q(one)).code == 0);
  const auto jone = nlohmann::json::parse(slurp(scratch() / "dist_one.json"));
  CHECK(jone["samples"] == 1);
  std::istringstream rows(slurp(one));
  std::string line;
  std::getline(rows, line);
  std::uint64_t total = 0;
  while (std::getline(rows, line)) total += std::stoull(line.substr(line.rfind(',') + 1));
  CHECK(total == 1);

  CHECK(run("theory dist --s -1 --mu 20 --samples 10 --seed 1").code == 1);
  CHECK(run("theory dist --s 0 --mu 0 --samples 10 --seed 1").code == 1);
  CHECK(run("theory dist --s 0 --mu 20 --samples 10").code == 1);
  CHECK(run("theory").code == 1);
}

TEST_CASE("render subcommand") {
  const fs::path tri = write_network_file("rtri.net", {{0, 0}, {1, 0}, {0.5, 0.8}}, 1.0);
  const fs::path values = scratch() / "rtri_st.csv";
  run("centrality --network " + q(tri) + " --measure st --out " + q(values));
  const fs::path svg = scratch() / "rtri.svg";
  CHECK(run("render --network " + q(tri) + " --values " + q(values) + " --out " + q(svg)).code == 0);
  const std::string text = slurp(svg);
  CHECK(count_of(text, "<circle") == 3);

  const fs::path classes = scratch() / "rtri_classes.csv";
  run("protocol --network " + q(tri) + " --out " + q(classes));
  CHECK(run("render --network " + q(tri) + " --classes " + q(classes) + " --region " + unit_square +
            " --out " + q(scratch() / "rtri_classes.svg"))
            .code == 0);

  const fs::path line = write_network_file("rline.net", {{0, 0}, {1, 0}, {2, 0}, {3, 0}}, 1.0);
  CHECK(run("render --network " + q(line) + " --values " + q(values)).code == 2);
  CHECK(run("render --network " + q(tri)).code == 1);
}
