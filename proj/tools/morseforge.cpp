// Command-line front end: run, bench, verify, gen, oracle.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "morseforge/error.hpp"
#include "morseforge/homology.hpp"
#include "morseforge/morse.hpp"
#include "morseforge/oracle.hpp"
#include "morseforge/randomgen.hpp"
#include "morseforge/report.hpp"

namespace fs = std::filesystem;
using namespace morseforge;

namespace {

Mode parseMode(const std::string& s) {
  if (s == "auto") return Mode::Auto;
  if (s == "manifold") return Mode::Manifold;
  return Mode::NonManifold;
}

std::string joinCounts(const std::vector<std::size_t>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return out;
}

std::string fixed(double x, int places) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << x;
  return os.str();
}

struct Timed {
  AlgorithmOutput out;
  double ms;
};

Timed timedRun(AlgorithmKind kind, const SimplicialComplex& K, AlgorithmOptions opts) {
  const auto t0 = std::chrono::steady_clock::now();
  auto out = runAlgorithm(kind, K, opts);
  const auto t1 = std::chrono::steady_clock::now();
  return {std::move(out), std::chrono::duration<double, std::milli>(t1 - t0).count()};
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string algo = "minfacet";
  std::string input;
  std::string mode = "auto";
  bool noPrematch = false;
  bool skipHomology = false;
  std::string emitGvf;
};

int cmdRun(const RunArgs& a) {
  const auto kind = parseAlgorithm(a.algo);
  const auto K = loadComplex(a.input);
  AlgorithmOptions opts{parseMode(a.mode), !a.noPrematch};
  const auto matching = maximumMatching(K).size();
  const auto [out, ms] = timedRun(*kind, K, opts);
  const auto r = makeReport(K, out, *kind, matching, ms);

  std::cout << "algorithm   " << r.algoName << '\n'
            << "input       " << a.input << '\n'
            << "N           " << r.N << '\n'
            << "D           " << r.D << '\n'
            << "mode        " << (r.manifoldMode ? "manifold" : "nonmanifold") << '\n'
            << "critical    " << joinCounts(r.criticalPerDim, ' ') << "  (total "
            << r.criticalTotal() << ")\n"
            << "regular     " << r.regularTotal << '\n'
            << "matching    " << matching << "  (upper bound " << r.matchingUpperBound << ")\n";
  if (!a.skipHomology) {
    const auto h = bettiNumbers(K);
    const auto ratio = estimatedRatio(r, static_cast<std::size_t>(h.bettiSum()));
    std::cout << "homology    " << h.toString() << '\n'
              << "ratio       " << ratio.toString() << "  (" << fixed(ratio.value(), 3) << ")\n";
  }
  std::size_t fwd = 0, bwd = 0;
  for (const auto& c : r.frontierStats) {
    fwd += c.forward;
    bwd += c.backward;
  }
  std::cout << "components  " << r.frontierStats.size() << "  (forward " << fwd << ", backward "
            << bwd << ")\n";
  for (const auto& s : r.minFacetStages)
    std::cout << "minfacet    d=" << s.d << " components " << s.components << " max degree "
              << s.maxDegree << '\n';
  std::cout << "elapsed_ms  " << fixed(r.elapsedMs, 3) << '\n';

  if (!a.emitGvf.empty()) {
    std::ofstream f(a.emitGvf);
    if (!f) throw Error("cannot write " + a.emitGvf);
    writeGradientField(f, K, out.field);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string inputDir;
  std::vector<std::string> inputs;
  std::vector<std::string> algos;
  std::string out;
  std::string mode = "auto";
  bool noPrematch = false;
  unsigned jobs = 1;
};

std::vector<std::string> benchRows(const std::string& path, const std::vector<AlgorithmKind>& algos,
                                   AlgorithmOptions opts) {
  SimplicialComplex K = [&] {
    try {
      return loadComplex(path);
    } catch (const Error& e) {
      throw Error(path + ": " + e.what());
    }
  }();
  const auto matching = maximumMatching(K).size();
  const auto betti = static_cast<std::size_t>(bettiNumbers(K).bettiSum());
  const auto name = fs::path(path).filename().string();
  std::vector<std::string> rows;
  for (auto kind : algos) {
    const auto [out, ms] = timedRun(kind, K, opts);
    const auto r = makeReport(K, out, kind, matching, ms);
    std::ostringstream os;
    os << name << ',' << r.N << ',' << r.D << ',' << betti << ',' << matching << ','
       << r.algoName << ',' << r.regularTotal << ',' << joinCounts(r.criticalPerDim, ';') << ','
       << fixed(estimatedRatio(r, betti).value(), 6) << ',' << fixed(ms, 3);
    rows.push_back(os.str());
  }
  return rows;
}

int cmdBench(const BenchArgs& a) {
  std::vector<std::string> inputs = a.inputs;
  if (!a.inputDir.empty()) {
    for (const auto& e : fs::directory_iterator(a.inputDir))
      if (e.is_regular_file()) inputs.push_back(e.path().string());
  }
  std::sort(inputs.begin(), inputs.end());
  if (inputs.empty()) throw Error("bench needs --input-dir or --inputs");

  std::vector<AlgorithmKind> algos;
  if (a.algos.empty()) algos.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
  for (const auto& n : a.algos) algos.push_back(*parseAlgorithm(n));
  AlgorithmOptions opts{parseMode(a.mode), !a.noPrematch};

  // Workers claim inputs by index; rows are emitted in input order.
  std::vector<std::vector<std::string>> rows(inputs.size());
  std::vector<std::string> failures(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < inputs.size();) {
      try {
        rows[i] = benchRows(inputs[i], algos, opts);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, a.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (!failures[i].empty()) throw Error(failures[i]);

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw Error("cannot write " + a.out);
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  os << "input,N,D,betti_sum,matching,algo,regular,critical,ratio,ms\n";
  for (const auto& rs : rows)
    for (const auto& r : rs) os << r << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

int cmdVerify(const std::string& input, const std::string& gvf) {
  const auto K = loadComplex(input);
  std::ifstream in(gvf);
  if (!in) throw Error("cannot open " + gvf);
  const auto pairs = readGradientPairs(in, K);
  const auto v = verifyGVF(K, pairs);
  if (!v) {
    std::cout << "invalid gradient field: " << v.message << '\n';
    return 1;
  }
  GradientField field(K.size());
  for (auto [a, b] : pairs) field.pair(K.dim(a) < K.dim(b) ? a : b, K.dim(a) < K.dim(b) ? b : a);
  const auto h = verifyHomology(K, field);
  if (!h) {
    std::cout << "homology mismatch: " << h.message << '\n';
    return 1;
  }
  std::cout << "ok: " << pairs.size() << " pairs, acyclic; " << h.morse.toString() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family = "mw";
  int n = 0;
  int dim = 0;
  double p = -1;
  std::vector<double> pvec;
  std::uint64_t seed = 0;
  std::string out;
};

int cmdGen(const GenArgs& a) {
  GeneratorParams params{a.n, a.dim, a.p, a.pvec, a.seed};
  SimplicialComplex K = [&] {
    if (a.family == "mw") {
      if (a.p < 0) throw ParameterError("--family mw needs --p");
      return meshulamWallach(params);
    }
    return type2Random(params);
  }();
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw Error("cannot write " + a.out);
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  os << "# " << a.family << " n=" << a.n << " dim=" << a.dim << " seed=" << a.seed << '\n';
  writeComplex(os, K);
  return 0;
}

int cmdOracle(const std::string& input, std::size_t cap) {
  const auto K = loadComplex(input);
  const auto r = bruteForceOptimal(K, cap);
  std::cout << "N        " << K.size() << '\n'
            << "optimum  " << r.optimum << " regular, " << K.size() - r.optimum << " critical\n";
  writeGradientField(std::cout, K, r.field);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Morse matchings on simplicial complexes"};
  app.require_subcommand(1);

  std::vector<std::string> algoNames;
  for (auto k : kAllAlgorithms) algoNames.emplace_back(algorithmName(k));
  const auto modes = CLI::IsMember({"auto", "manifold", "nonmanifold"});

  RunArgs run;
  auto* runCmd = app.add_subcommand("run", "Run one algorithm and print its report");
  runCmd->add_option("--algo", run.algo, "Algorithm")->check(CLI::IsMember(algoNames));
  runCmd->add_option("--input", run.input, "Maximal-simplex list")->required();
  runCmd->add_option("--mode", run.mode, "auto|manifold|nonmanifold")->check(modes);
  runCmd->add_flag("--no-prematch", run.noPrematch, "Skip maximum matching in intermediate stages");
  runCmd->add_flag("--skip-homology", run.skipHomology, "Do not compute Betti numbers or the ratio");
  runCmd->add_option("--emit-gvf", run.emitGvf, "Write the gradient pairs to this file");

  BenchArgs bench;
  auto* benchCmd = app.add_subcommand("bench", "CSV table over inputs and algorithms");
  auto* dirOpt = benchCmd->add_option("--input-dir", bench.inputDir, "Directory of inputs");
  auto* listOpt = benchCmd->add_option("--inputs", bench.inputs, "Input files")->delimiter(',');
  dirOpt->excludes(listOpt);
  benchCmd->add_option("--algos", bench.algos, "Algorithms (default: all)")
      ->delimiter(',')
      ->check(CLI::IsMember(algoNames));
  benchCmd->add_option("--out", bench.out, "CSV path (default: stdout)");
  benchCmd->add_option("--mode", bench.mode, "auto|manifold|nonmanifold")->check(modes);
  benchCmd->add_flag("--no-prematch", bench.noPrematch);
  benchCmd->add_option("--jobs", bench.jobs, "Parallel workers")->check(CLI::PositiveNumber);

  std::string verifyInput, verifyGvf;
  auto* verifyCmd = app.add_subcommand("verify", "Check a gradient field and its Morse homology");
  verifyCmd->add_option("--input", verifyInput)->required();
  verifyCmd->add_option("--gvf", verifyGvf)->required();

  GenArgs gen;
  auto* genCmd = app.add_subcommand("gen", "Generate a random complex");
  genCmd->add_option("--family", gen.family)->check(CLI::IsMember({"mw", "type2"}));
  genCmd->add_option("--n", gen.n, "Number of vertices")->required();
  genCmd->add_option("--dim", gen.dim, "Top dimension")->required();
  auto* pOpt = genCmd->add_option("--p", gen.p, "Top-simplex probability (mw)");
  auto* pvecOpt = genCmd->add_option("--pvec", gen.pvec, "Per-dimension probabilities (type2)")
                      ->delimiter(',');
  pOpt->excludes(pvecOpt);
  genCmd->add_option("--seed", gen.seed);
  genCmd->add_option("--out", gen.out, "Output path (default: stdout)");

  std::string oracleInput;
  std::size_t oracleCapValue = oracleCap();
  auto* oracleCmd = app.add_subcommand("oracle", "Exhaustive optimum for tiny complexes");
  oracleCmd->add_option("--input", oracleInput)->required();
  oracleCmd->add_option("--cap", oracleCapValue, "Largest N searched");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*runCmd) return cmdRun(run);
    if (*benchCmd) return cmdBench(bench);
    if (*verifyCmd) return cmdVerify(verifyInput, verifyGvf);
    if (*genCmd) return cmdGen(gen);
    if (*oracleCmd) return cmdOracle(oracleInput, oracleCapValue);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
