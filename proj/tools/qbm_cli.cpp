// qbm: tables of weighted q-Bernoulli numbers and verification runs.
//
//   qbm table --family weighted --alpha 1 --max-n 4
//   qbm verify distribution --alpha 1..3 --n 0..5 --d 1..4
//   qbm verify eq22 --p 3 --chi 4:1 --beta 5 --k 0..3 --prec 12
//   qbm integrate --p 3 --q 1+3 --alpha 1 --n 1 --levels 1..5
//
// Exit status: 0 every check passed, 1 a violation was found, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbm/qbm.h"

namespace {

constexpr int kUsage = 2;

struct Flags {
  std::map<std::string, std::string> scalars;  // config key -> raw text
  std::vector<std::string> chi, chi_table;
  std::string output;
};

void add_flag(CLI::App* app, Flags& f, const std::string& flag, const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&f, key](const std::string& v) { f.scalars[key] = v; }, help);
}

void add_grid_flags(CLI::App* app, Flags& f) {
  add_flag(app, f, "--alpha", "alpha", "weights, e.g. 1..3 or 1,2");
  add_flag(app, f, "--n", "n", "indices");
  add_flag(app, f, "--k", "k", "measure index k");
  add_flag(app, f, "--d", "d", "moduli of X_d");
  add_flag(app, f, "--p", "p", "primes");
  add_flag(app, f, "--x", "x", "arguments");
  add_flag(app, f, "--y", "y", "second operator index (composition)");
  add_flag(app, f, "--levels", "levels", "levels N");
  add_flag(app, f, "--beta", "beta", "twist beta");
  add_flag(app, f, "--shift", "shift", "shift x in [x + y]");
  add_flag(app, f, "--q", "q", "base point, e.g. 1+p or 7/4 (default 1+p, 1+4 for p = 2)");
  add_flag(app, f, "--prec", "prec", "target p-adic precision (env QBM_PRECISION)");
  add_flag(app, f, "--working-prec", "working_prec", "starting working precision (eq22)");
  add_flag(app, f, "--backend", "backend", "symbolic or padic (additivity)");
  add_flag(app, f, "--candidate", "candidate", "theorem2 seed: weighted or constant");
  add_flag(app, f, "--floor", "floor", "Witt floor offset: v_N >= N - floor");
  add_flag(app, f, "--samples", "samples", "extra random distribution cases");
  add_flag(app, f, "--seed", "seed", "RNG seed for random cases");
  add_flag(app, f, "--workers", "workers", "worker threads (env QBM_WORKERS)");
  add_flag(app, f, "--format", "format", "json or csv");
  app->add_option("--chi", f.chi, "character d:j or d:* (repeatable)");
  app->add_option("--chi-table", f.chi_table, "character by generator exponents d:e1,e2 (repeatable)");
  app->add_option("--output,-o", f.output, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted q-Bernoulli numbers, measures and identity checks"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  app.set_version_flag("--version", qbm_version());

  Flags flags;
  std::string suite;

  CLI::App* table = app.add_subcommand("table", "numbers and polynomials with their q -> 1 limits");
  add_flag(table, flags, "--family", "family", "xi, carlitz, extended or weighted");
  add_flag(table, flags, "--h", "h", "extended family parameter");
  add_flag(table, flags, "--max-n", "max_n", "largest index");
  add_grid_flags(table, flags);

  CLI::App* verify = app.add_subcommand("verify", "run an identity suite over a grid");
  verify->add_option("suite", suite, "distribution, additivity, theorem2, mass, theorem5, composition or eq22")
      ->required();
  add_grid_flags(verify, flags);

  CLI::App* integrate = app.add_subcommand("integrate", "Riemann sums and Witt convergence profiles");
  add_grid_flags(integrate, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  nlohmann::json cfg = nlohmann::json::object();
  for (CLI::App* sub : {table, verify, integrate})
    if (sub->parsed()) cfg["command"] = sub->get_name();
  if (verify->parsed()) cfg["suite"] = suite;
  for (const auto& [k, v] : flags.scalars) cfg[k] = v;
  if (!flags.chi.empty()) cfg["chi"] = flags.chi;
  if (!flags.chi_table.empty()) cfg["chi_table"] = flags.chi_table;

  qbm_context* ctx = qbm_context_new();
  if (ctx == nullptr) {
    std::cerr << "error: out of memory\n";
    return 1;
  }
  char* report = nullptr;
  int exit_code = 0;
  qbm_status st = qbm_run(ctx, cfg.dump().c_str(), &report, &exit_code);
  if (st != QBM_OK) {
    std::cerr << "error: " << qbm_last_error(ctx) << "\n";
    qbm_context_free(ctx);
    return st == QBM_CONFIG ? kUsage : 1;
  }
  qbm_context_free(ctx);

  if (flags.output.empty()) {
    std::fputs(report, stdout);
  } else {
    std::ofstream os(flags.output, std::ios::binary);
    os << report;
    if (!os) {
      std::cerr << "error: cannot write " << flags.output << "\n";
      qbm_string_free(report);
      return kUsage;
    }
  }
  qbm_string_free(report);
  return exit_code;
}
