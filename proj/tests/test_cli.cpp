#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "morseforge/morse.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = MORSEFORGE_SCRATCH;

struct Result {
  int status;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result cli(const std::string& args) {
  fs::create_directories(kScratch);
  const auto outFile = kScratch / "stdout.txt";
  const std::string cmd = std::string(MORSEFORGE_CLI) + " " + args + " > " + outFile.string() +
                          " 2>&1";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(outFile)};
}

std::string data(const std::string& f) { return std::string(MORSEFORGE_DATA_DIR) + "/" + f; }

std::string dropLastColumn(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

}  // namespace

TEST_CASE("run prints a report") {
  const auto r = cli("run --algo minfacet --input " + data("rp2.txt"));
  CHECK(r.status == 0);
  CHECK(r.out.find("regular     28") != std::string::npos);
  CHECK(r.out.find("critical    1 1 1") != std::string::npos);
  CHECK(r.out.find("14/15  (0.933)") != std::string::npos);
  CHECK(r.out.find("Z/2") != std::string::npos);

  const auto t = cli("run --algo frontier --input " + data("triangle.txt"));
  CHECK(t.status == 0);
  CHECK(t.out.find("regular     4") != std::string::npos);
}

TEST_CASE("run rejects bad input") {
  fs::create_directories(kScratch);
  std::ofstream(kScratch / "empty.txt").close();
  CHECK(cli("run --input " + (kScratch / "empty.txt").string()).status != 0);
  const auto m = cli("run --mode manifold --input " + data("triangle.txt"));
  CHECK(m.status != 0);
  CHECK(m.out.find("pseudomanifold") != std::string::npos);
  CHECK(cli("run --algo nosuch --input " + data("triangle.txt")).status != 0);
}

TEST_CASE("emitted fields verify") {
  for (auto kind : morseforge::kAllAlgorithms) {
    const std::string algo(morseforge::algorithmName(kind));
    const auto gvf = (kScratch / (algo + ".gvf")).string();
    REQUIRE(cli("run --algo " + algo + " --input " + data("torus.txt") + " --emit-gvf " + gvf)
                .status == 0);
    const auto v = cli("verify --input " + data("torus.txt") + " --gvf " + gvf);
    INFO(v.out);
    CHECK(v.status == 0);
  }
}

TEST_CASE("verify reports violations") {
  fs::create_directories(kScratch);
  const auto circle = (kScratch / "circle.txt").string();
  std::ofstream(circle) << "0 1\n1 2\n0 2\n";
  const auto cyc = (kScratch / "cyclic.gvf").string();
  std::ofstream(cyc) << "0 0,1\n1 1,2\n2 0,2\n";
  const auto r = cli("verify --input " + circle + " --gvf " + cyc);
  CHECK(r.status == 1);
  CHECK(r.out.find("cycle") != std::string::npos);

  const auto bad = (kScratch / "bad.gvf").string();
  std::ofstream(bad) << "0 1,2\n";
  CHECK(cli("verify --input " + circle + " --gvf " + bad).status == 1);
}

TEST_CASE("bench CSV") {
  const auto out1 = (kScratch / "bench1.csv").string();
  const auto out2 = (kScratch / "bench2.csv").string();
  const std::string inputs = data("rp2.txt") + "," + data("triangle.txt") + "," +
                             data("torus.txt") + "," + data("dunce_hat.txt") + "," +
                             data("sphere3_join.txt");
  REQUIRE(cli("bench --inputs " + inputs + " --out " + out1).status == 0);
  REQUIRE(cli("bench --inputs " + inputs + " --jobs 3 --out " + out2).status == 0);
  const auto a = slurp(out1), b = slurp(out2);
  CHECK(a.rfind("input,N,D,betti_sum,matching,algo,regular,critical,ratio,ms\n", 0) == 0);
  CHECK(std::count(a.begin(), a.end(), '\n') == 31);
  CHECK(dropLastColumn(a) == dropLastColumn(b));
  CHECK(a.find("rp2.txt,31,2,1,15,minfacet,28,1;1;1,0.933333,") != std::string::npos);

  const auto dir = cli("bench --input-dir " + std::string(MORSEFORGE_DATA_DIR) + " --algos naive");
  CHECK(dir.status == 0);
  CHECK(cli("bench --inputs " + data("missing.txt")).status != 0);
}

TEST_CASE("gen round trip") {
  const auto f1 = (kScratch / "g1.txt").string(), f2 = (kScratch / "g2.txt").string();
  REQUIRE(cli("gen --family mw --n 5 --dim 2 --p 1 --seed 3 --out " + f1).status == 0);
  REQUIRE(cli("gen --family mw --n 5 --dim 2 --p 1 --seed 3 --out " + f2).status == 0);
  CHECK(slurp(f1) == slurp(f2));
  CHECK(cli("run --input " + f1).out.find("N           25") != std::string::npos);
  CHECK(cli("gen --family mw --n 5 --dim 2 --p 1.5").status != 0);

  for (int seed = 0; seed < 100; ++seed) {
    const bool mw = seed % 2 == 0;
    const std::string fam = mw ? "--family mw --n 7 --dim 3 --p 0.5"
                               : "--family type2 --n 8 --dim 3 --pvec 1,0.8,0.7,0.6";
    const auto file = (kScratch / "rt.txt").string();
    REQUIRE(cli("gen " + fam + " --seed " + std::to_string(seed) + " --out " + file).status == 0);
    for (auto kind : morseforge::kAllAlgorithms) {
      const std::string algo(morseforge::algorithmName(kind));
      const auto gvf = (kScratch / "rt.gvf").string();
      REQUIRE(cli("run --skip-homology --algo " + algo + " --input " + file + " --emit-gvf " + gvf)
                  .status == 0);
      const auto v = cli("verify --input " + file + " --gvf " + gvf);
      INFO("seed " << seed << " " << algo << " " << v.out);
      CHECK(v.status == 0);
    }
  }
}

TEST_CASE("oracle subcommand") {
  const auto r = cli("oracle --input " + data("triangle.txt"));
  CHECK(r.status == 0);
  CHECK(r.out.find("optimum  6 regular") != std::string::npos);
  CHECK(cli("oracle --input " + data("rp2.txt")).status != 0);
  CHECK(cli("oracle --cap 40 --input " + data("book3.txt")).status == 0);
}
