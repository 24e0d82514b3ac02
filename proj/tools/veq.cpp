// veq: run one command against workspace files.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "veq/commands.hpp"
#include "veq/workspace.hpp"

namespace {

std::size_t default_budget() {
  if (const char* env = std::getenv("VEQ_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    std::cerr << "veq: ignoring VEQ_BUDGET='" << env << "'\n";
  }
  return 10000;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equations, cosystems and their solutions over finite structures."};
  app.set_help_flag("-h,--help", "Show usage");

  std::string verb;
  std::vector<std::string> args;
  std::vector<std::string> files;
  bool json = false;
  bool print = false;
  veq::CommandOptions opts;
  opts.budget = default_budget();
  std::size_t prec = 0;

  std::string verbs;
  for (const auto& v : veq::command_verbs()) verbs += (verbs.empty() ? "" : ", ") + v;
  app.add_option("verb", verb, "One of: " + verbs);
  app.add_option("args", args, "Verb arguments");
  app.add_option("-f,--file", files, "Workspace file (repeatable)")->allow_extra_args(false);
  app.add_flag("--json", json, "One JSON record per result");
  app.add_flag("--print", print, "Print the canonical workspace source after loading; with no verb, only print");
  app.add_option("--budget", opts.budget, "Proof-search step budget (default $VEQ_BUDGET or 10000)")
      ->check(CLI::PositiveNumber);
  auto* prec_opt = app.add_option("--prec", prec, "Series precision override")->check(CLI::PositiveNumber);
  app.add_option("--kmax", opts.kmax, "Largest power searched by hsp (0: |B|)");
  app.add_option("--depth", opts.depth, "Term depth for identities and freealg");
  app.add_option("--vars", opts.vars, "Variables for identities and freealg");
  app.positionals_at_end(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*prec_opt) opts.prec = prec;
  if (verb.empty() && !print) {
    std::cerr << "veq: a verb is required\n" << app.help();
    return 2;
  }

  veq::Workspace ws;
  try {
    for (const auto& path : files) {
      std::ifstream in(path);
      if (!in) veq::fail(veq::ErrorKind::ResolutionError, "cannot open workspace file '" + path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      ws.load(buf.str(), path);
    }
  } catch (const veq::Error& e) {
    if (json) std::cout << veq::render_error_json(verb, e) << "\n";
    std::cerr << "veq: " << e.what() << "\n";
    return veq::exit_code(e, true);
  }
  if (print) std::cout << ws.print();
  if (verb.empty()) return 0;

  try {
    const auto rec = veq::run_command(ws, verb, args, opts);
    std::cout << (json ? veq::render_json(rec) + "\n" : veq::render_human(rec));
    return veq::exit_code(rec);
  } catch (const veq::Error& e) {
    if (json) std::cout << veq::render_error_json(verb, e) << "\n";
    std::cerr << "veq: " << e.what() << "\n";
    return veq::exit_code(e, false);
  } catch (const std::exception& e) {
    std::cerr << "veq: internal error: " << e.what() << "\n";
    return 3;
  }
}
