// fp: compute and verify Poisson (co)homology, duality, and BV structure of
// finite-dimensional Frobenius Poisson algebras given as .fp presentations.
// Thin shell over the fpoisson C API.

#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fpoisson.h"

namespace {

struct Options {
  std::string input;
  std::string coeff;
  std::string field;
  int max_total_degree = -1;
  bool json = false;
};

int run(const std::string& command, const Options& opt) {
  char* err = nullptr;
  fp_session* session = fp_open_file(opt.input.c_str(), &err);
  if (!session) {
    std::fprintf(stderr, "fp: %s\n", err ? err : "unknown error");
    fp_string_free(err);
    return FP_PARSE_ERROR;
  }

  nlohmann::json options = nlohmann::json::object();
  if (!opt.coeff.empty()) options["coeff"] = opt.coeff;
  if (!opt.field.empty()) options["field"] = opt.field;
  if (opt.max_total_degree >= 0) options["max_total_degree"] = opt.max_total_degree;
  std::string options_str = options.dump();

  int status = FP_INTERNAL_ERROR;
  fp_report* report = fp_run(session, command.c_str(), options_str.c_str(), &status, &err);
  if (!report) {
    std::fprintf(stderr, "fp: %s\n", err ? err : "unknown error");
    fp_string_free(err);
    fp_session_close(session);
    return status;
  }
  std::fputs(opt.json ? fp_report_json(report) : fp_report_text(report), stdout);
  int code = fp_report_exit_code(report);
  fp_report_free(report);
  fp_session_close(session);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson (co)homology and BV structure of Frobenius Poisson algebras"};
  app.require_subcommand(1);

  Options opt;
  struct Sub {
    const char* name;
    const char* help;
    bool coeff;
    bool maxdeg;
  };
  const Sub subs[] = {
      {"validate", "check the Poisson algebra axioms", false, false},
      {"basis", "print the standard monomial basis", false, false},
      {"homology", "Poisson homology HP_*(S, M)", true, false},
      {"cohomology", "Poisson cohomology HP^*(S)", false, false},
      {"duality", "duality between HP^* and HP_* through the phi square", true, false},
      {"unimodular", "evaluate the three unimodularity criteria", false, false},
      {"modular-vector", "print the modular element Delta(pi)", false, false},
      {"bv-check", "verify the chain-level BV identities", false, true},
      {"bv-cohomology", "verify the BV structure induced on HP", false, false},
  };

  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("input", opt.input, "presentation file (.fp)")->required();
    sub->add_flag("--json", opt.json, "emit the JSON report instead of a table");
    sub->add_option("--field", opt.field, "field override: Q or F<p>");
    if (s.coeff) sub->add_option("--coeff", opt.coeff, "coefficients: regular|dual|twist");
    if (s.maxdeg) sub->add_option("--max-total-degree", opt.max_total_degree, "bound on deg P + deg Q");
  }

  CLI11_PARSE(app, argc, argv);
  return run(app.get_subcommands().front()->get_name(), opt);
}
