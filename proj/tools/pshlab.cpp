// pshlab: certification and experiment CLI for normed-space strictness
// checks. Exit codes: 0 = all checks pass, 1 = falsified expectation,
// 2 = usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pshlab/certify.hpp"
#include "pshlab/suites.hpp"

namespace {

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("PSHLAB_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return cli_seed;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

int run_certify(const std::string& space_file, const std::string& mode_str, int restarts,
                int degree, std::uint64_t seed) {
  pshlab::NormedSpace space =
      pshlab::NormedSpace::make(pshlab::space_from_json(load_json(space_file)));
  pshlab::Mode mode =
      mode_str == "convex" ? pshlab::Mode::strict_convex : pshlab::Mode::strict_psh;
  pshlab::SearchConfig config;
  config.restarts = restarts;
  config.degree_cap = degree;
  config.seed = seed;
  pshlab::Verdict v = pshlab::strict_verdict(space, mode, config);
  std::cout << pshlab::verdict_to_json(v).dump(2) << "\n";
  return 0;
}

int run_suite_cmd(const std::string& name, const std::string& out, const std::string& format,
                  std::uint64_t seed, int restarts, int degree, int nodes) {
  pshlab::SuiteConfig config;
  config.name = name;
  config.seed = seed;
  config.restarts = restarts;
  config.degree_cap = degree;
  config.nodes = nodes;
  auto results = pshlab::run_suite(config);
  if (out.empty()) {
    std::cout << pshlab::results_to_csv(results);
  } else {
    pshlab::emit_report(results, out, format);
  }
  int failures = 0;
  for (const auto& r : results) {
    if (!r.pass) {
      ++failures;
      std::cerr << "FALSIFIED: " << r.suite << " / " << r.name << " (value " << r.value
                << ")\n";
    }
  }
  std::cout << (failures == 0 ? "all checks pass" : "checks falsified") << " ("
            << results.size() - static_cast<std::size_t>(failures) << "/" << results.size()
            << ")\n";
  return failures == 0 ? 0 : 1;
}

int run_jensen(const std::string& disc_file, const std::string& zeros_file, int nodes) {
  pshlab::DiscMap gamma = pshlab::disc_from_json(load_json(disc_file));
  pshlab::ZeroProfile zeros;
  nlohmann::json zj = load_json(zeros_file);
  for (const auto& z : zj.at("zeros")) {
    pshlab::ZeroProfile::Zero zero;
    zero.location = {z.at("z").at(0).get<double>(), z.at("z").at(1).get<double>()};
    zero.multiplicity = z.value("multiplicity", 1);
    zeros.zeros.push_back(zero);
  }
  double residual = pshlab::jensen_formula_residual(gamma, zeros, nodes);
  std::cout << "jensen residual: " << residual << "\n";
  return residual <= 1e-8 ? 0 : 1;
}

int run_norm_check(const std::string& space_file, int trials, std::uint64_t seed) {
  pshlab::NormedSpace space =
      pshlab::NormedSpace::make(pshlab::space_from_json(load_json(space_file)));
  pshlab::NormAxiomReport rep = space.check_norm_axioms(trials, seed);
  if (rep.pass) {
    std::cout << "norm axioms pass (" << rep.trials_run << " trials)\n";
    return 0;
  }
  std::cout << "norm axioms FAIL: " << rep.violation << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical strict-convexity / strict-PSH laboratory"};
  app.require_subcommand(1);

  std::string space_file, mode_str = "convex";
  int restarts = 100, degree = 6, nodes = 512, trials = 1000;
  std::uint64_t seed = 0;

  auto* certify = app.add_subcommand("certify", "search for flat maps in the unit sphere");
  certify->add_option("--space", space_file, "space descriptor JSON file")->required();
  certify->add_option("--mode", mode_str, "convex|psh")
      ->check(CLI::IsMember({"convex", "psh"}));
  certify->add_option("--restarts", restarts);
  certify->add_option("--degree", degree);
  certify->add_option("--seed", seed);

  std::string suite_name, out_path, format = "json";
  auto* suite = app.add_subcommand("suite", "run a named experiment suite");
  suite->add_option("--name", suite_name)
      ->required()
      ->check(CLI::IsMember(
          {"conv-int", "psh-int", "day", "counterexample", "edge-p", "jensen", "involution"}));
  suite->add_option("--out", out_path, "report file path (stdout CSV if omitted)");
  suite->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  suite->add_option("--seed", seed);
  suite->add_option("--restarts", restarts);
  suite->add_option("--degree", degree);
  suite->add_option("--nodes", nodes);

  std::string disc_file, zeros_file;
  auto* jensen = app.add_subcommand("jensen", "Jensen formula residual of a disc map");
  jensen->add_option("--disc", disc_file)->required();
  jensen->add_option("--zeros", zeros_file)->required();
  jensen->add_option("--nodes", nodes);

  auto* norm_check = app.add_subcommand("norm-check", "validate the norm axioms by sampling");
  norm_check->add_option("--space", space_file)->required();
  norm_check->add_option("--trials", trials);
  norm_check->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    seed = effective_seed(seed);
    if (certify->parsed()) return run_certify(space_file, mode_str, restarts, degree, seed);
    if (suite->parsed()) {
      // suite defaults favor runtime: witnesses in the catalogs have low degree
      if (!suite->count("--restarts")) restarts = suite_name == "psh-int" ? 30 : 60;
      return run_suite_cmd(suite_name, out_path, format, seed, restarts, degree, nodes);
    }
    if (jensen->parsed()) return run_jensen(disc_file, zeros_file, nodes);
    if (norm_check->parsed()) return run_norm_check(space_file, trials, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
