// dla: dynamical Lie algebra and Jordan structure of an E (x) S drift.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dla/models.hpp"
#include "dla/report.hpp"
#include "dla/spec_io.hpp"

namespace {

struct Config {
  std::string input;
  std::string command = "analyze";
  double tol_rank = 1e-9;
  double tol_frame = 1e-8;
  double tol_spec = 1e-8;
  std::size_t ancilla_dim = 2;
  std::string format = "json";
  std::uint64_t seed = 0;
};

void emit(const nlohmann::json& j, const Config& cfg) {
  if (cfg.format == "text") {
    std::cout << dla::text_summary(j);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

int run(const Config& cfg) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) {
    std::cerr << "input: cannot read " << cfg.input << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string hash = dla::sha256_hex(text);

  dla::HamiltonianSpec spec;
  try {
    spec = dla::expand_random(dla::parse_spec(text), cfg.seed);
  } catch (const std::exception& e) {
    std::cerr << "input: " << e.what() << "\n";
    return 1;
  }
  for (const auto& w : spec.warnings) std::cerr << "warning: " << w << "\n";

  dla::Tolerances tol;
  tol.tau_rank = cfg.tol_rank;
  tol.tau_frame = cfg.tol_frame;
  tol.tau_spec = cfg.tol_spec;

  const dla::SpaceLayout layout = dla::internal_layout(spec);
  const std::vector<dla::Operator> drifts{dla::drift_generator(spec)};

  dla::Stage stop = dla::Stage::Analyze;
  if (cfg.command == "closure") stop = dla::Stage::Closure;
  if (cfg.command == "identifiers") stop = dla::Stage::Identifiers;
  if (cfg.command == "classify") stop = dla::Stage::Classify;

  if (cfg.command == "check" && !spec.structure) {
    std::cerr << "input: check needs a declared structure (structure:/block: lines)\n";
    return 1;
  }

  try {
    const dla::Analysis a = dla::analyze(drifts, layout, tol, stop);
    if (cfg.command == "expand") {
      const auto e = dla::ancilla_expand(a, cfg.ancilla_dim, tol);
      emit(dla::expansion_json(a, e, tol, hash, cfg.ancilla_dim), cfg);
      return static_cast<int>(dla::expansion_status(a, e));
    }
    if (cfg.command == "check") {
      dla::CheckResult c;
      try {
        c = dla::run_check(*spec.structure, a, tol);
      } catch (const std::invalid_argument& e) {
        std::cerr << "input: " << e.what() << "\n";
        return 1;
      }
      const auto j = dla::check_json(a, c, tol, hash);
      emit(j, cfg);
      if (!c.pass) return 2;
      return static_cast<int>(dla::analysis_status(a));
    }
    emit(dla::analysis_json(a, tol, hash, cfg.command), cfg);
    return static_cast<int>(dla::analysis_status(a));
  } catch (const dla::StageError& e) {
    std::cerr << e.what() << "\n";
    return e.stage() == "input" ? 1 : 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical Lie algebra, identifiers and Jordan block structure of a drift on E (x) S"};
  Config cfg;
  std::string positional;
  app.add_option("--input,-i", cfg.input, "Hamiltonian spec file")->required();
  app.add_option("--command,-c", cfg.command, "closure|identifiers|classify|analyze|expand|check")
      ->check(CLI::IsMember({"closure", "identifiers", "classify", "analyze", "expand", "check"}));
  app.add_option("cmd", positional, "same as --command")
      ->check(CLI::IsMember({"closure", "identifiers", "classify", "analyze", "expand", "check"}));
  app.add_option("--tol-rank", cfg.tol_rank, "relative rank threshold")->check(CLI::PositiveNumber);
  app.add_option("--tol-frame", cfg.tol_frame, "frame relation threshold")->check(CLI::PositiveNumber);
  app.add_option("--tol-spec", cfg.tol_spec, "eigenvalue clustering threshold")->check(CLI::PositiveNumber);
  app.add_option("--ancilla-dim", cfg.ancilla_dim, "dimension of the appended S' (expand)")
      ->check(CLI::Range(2, 64));
  app.add_option("--format", cfg.format, "json|text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "seed for 'random' specs without a seed line");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  if (!positional.empty()) cfg.command = positional;
  return run(cfg);
}
