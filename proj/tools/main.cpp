// nilcantor: stability, wildness and freeness reports for Heisenberg group
// chains.  Exit codes: 0 ok, 2 contract violation, 3 resource exhaustion.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nilcantor/errors.hpp"
#include "nilcantor/report.hpp"

namespace {

using namespace nilcantor;

constexpr int kContractExit = 2;
constexpr int kResourceExit = 3;

// Flags that select and parameterize a chain.
struct ChainArgs {
  std::string ref;
  std::optional<std::uint64_t> p, q;
  std::string n_text, r_text, pi_f, pi_inf, set;

  void attach(CLI::App* app, bool positional = true) {
    if (positional) {
      app->add_option("chain", ref,
                      "ex41, ex42, stable, wild, a reference like ex41(2), or a chain config file")
          ->required();
    } else {
      app->add_option("--chain", ref, "chain reference or config file");
    }
    app->add_option("--p", p, "prime p (ex41, ex42)");
    app->add_option("--q", q, "prime q (ex42)");
    app->add_option("--n", n_text, "n (wild) or comma list n_i (stable)");
    app->add_option("--r", r_text, "r (wild) or comma list r_i (stable)");
    app->add_option("--pi_f", pi_f, "comma list of finite primes (stable)");
    app->add_option("--pi_inf", pi_inf, "comma list of primes with exponent l");
    app->add_option("--set", set, "family prime set id (wild), e.g. branch(01;0)");
  }

  std::uint64_t need(const std::optional<std::uint64_t>& v, const char* flag) const {
    if (!v) throw ContractError("chain '" + ref + "' needs " + flag);
    return *v;
  }

  ChainSpec resolve() const {
    if (ref.empty()) throw ContractError("no chain given");
    if (ref == "ex41") return example_41(need(p, "--p"));
    if (ref == "ex42") return example_42(need(p, "--p"), need(q, "--q"));
    if (ref == "stable") return resolve_builtin("stable(" + pi_f + ";" + r_text + ";" + n_text + ";" + pi_inf + ")");
    if (ref == "wild") {
      std::string text = "wild(" + n_text + ";" + r_text + ";" + pi_inf;
      if (!set.empty()) text += ";" + set;
      return resolve_builtin(text + ")");
    }
    if (ref.find('(') != std::string::npos) return resolve_builtin(ref);
    if (std::filesystem::is_regular_file(ref)) {
      std::ifstream in(ref);
      std::stringstream buffer;
      buffer << in.rdbuf();
      try {
        return ChainSpec::parse_config(buffer.str());
      } catch (const ContractError& e) {
        throw ContractError(ref + ": " + e.what());
      }
    }
    throw ContractError("unknown chain '" + ref + "' (not a built-in name and no such file)");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability, wildness and freeness reports for Heisenberg group chains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::tool_version());

  ChainArgs chain;
  Level depth = 4, level = 1, lmax = 3, dmax = 5;
  std::uint64_t bound = 50, radius = 100, count = 5;
  bool enumerate = false;
  std::uint64_t cap = 1'000'000;

  auto* spectrum = app.add_subcommand("spectrum", "Steinitz order and prime spectra of a chain");
  chain.attach(spectrum);
  spectrum->add_option("--depth", depth, "levels included in the finite lcm")->capture_default_str();
  spectrum->add_option("--bound", bound, "largest prime listed in the spectra")->capture_default_str();

  auto* discriminant = app.add_subcommand("discriminant", "stable images of the discriminant levels");
  chain.attach(discriminant);
  discriminant->add_option("--level", level)->capture_default_str();
  discriminant->add_option("--depth", depth)->capture_default_str();
  discriminant->add_flag("--enumerate", enumerate, "build each image by closure instead of its box form");
  discriminant->add_option("--cap", cap, "largest closure allowed")->capture_default_str();

  auto* wildness = app.add_subcommand("wildness", "stable/wild certificate from trivial-action kernels");
  chain.attach(wildness);
  wildness->add_option("--lmax", lmax)->capture_default_str();
  wildness->add_option("--dmax", dmax)->capture_default_str();

  auto* freeness = app.add_subcommand("freeness", "topological freeness certificate on a ball");
  chain.attach(freeness);
  freeness->add_option("--level", level)->capture_default_str();
  freeness->add_option("--radius", radius)->capture_default_str();
  freeness->add_option("--dmax", dmax)->capture_default_str();

  auto budget = oracle::OracleBudget{};
  std::string target, box, outer, inner, element;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force cross-checks of the closed forms");
  oracle_cmd->add_option("target", target, "core, relative-core, fixing-scan, coset-partition or equivalence")
      ->required();
  chain.attach(oracle_cmd, false);
  oracle_cmd->add_option("--box", box, "box such as Box(2,2,4)");
  oracle_cmd->add_option("--outer", outer);
  oracle_cmd->add_option("--inner", inner);
  oracle_cmd->add_option("--element", element, "element such as (3,5,7)");
  oracle_cmd->add_option("--level", level)->capture_default_str();
  oracle_cmd->add_option("--depth", depth)->capture_default_str();
  std::optional<std::uint64_t> max_modulus, max_group_order, random_trials, seed;
  oracle_cmd->add_option("--max-modulus", max_modulus);
  oracle_cmd->add_option("--max-group-order", max_group_order);
  oracle_cmd->add_option("--random-trials", random_trials);
  oracle_cmd->add_option("--seed", seed);

  std::string scenario;
  auto* reproduce = app.add_subcommand("reproduce", "bundled scenarios: ex41, ex42, thm13, thm15, cor16");
  reproduce->add_option("name", scenario)->required();
  reproduce->add_option("--count", count)->capture_default_str();
  reproduce->add_option("--bound", bound)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kContractExit;
  }

  try {
    std::string out;
    if (spectrum->parsed()) {
      out = report::spectrum(chain.resolve(), depth, bound);
    } else if (discriminant->parsed()) {
      out = report::discriminant(chain.resolve(), level, depth, ClosureOptions{enumerate, cap});
    } else if (wildness->parsed()) {
      out = report::wildness(chain.resolve(), lmax, dmax);
    } else if (freeness->parsed()) {
      out = report::freeness(chain.resolve(), level, radius, dmax);
    } else if (oracle_cmd->parsed()) {
      budget = oracle::OracleBudget::from_environment();
      if (max_modulus) budget.max_modulus = *max_modulus;
      if (max_group_order) budget.max_group_order = *max_group_order;
      if (random_trials) budget.random_trials = *random_trials;
      if (seed) budget.seed = *seed;
      report::OracleRequest req;
      req.target = target;
      if (!box.empty()) req.box = Box::parse(box);
      if (!outer.empty()) req.outer = Box::parse(outer);
      if (!inner.empty()) req.inner = Box::parse(inner);
      if (!element.empty()) req.element = Element::parse(element);
      if (!chain.ref.empty()) req.chain = chain.resolve();
      req.level = level;
      req.depth = depth;
      out = report::oracle_check(req, budget);
    } else if (reproduce->parsed()) {
      out = report::reproduce(scenario, report::ReproduceOptions{count, bound});
    }
    std::cout << out;
    return 0;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContractExit;
  } catch (const UndecidableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContractExit;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResourceExit;
  }
}
