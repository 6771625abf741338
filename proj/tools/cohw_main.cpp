// Command-line front end: `cohw <command> [options] FILE`.

#include <iostream>

#include "CLI11.hpp"

#include "cohw/commands.hpp"

int main(int argc, char** argv) {
  cohw::CommandRequest req;
  std::string format = "text";
  int instances = 0;

  CLI::App app{"Exact cohomotopy computations for cosimplicial and unipotent groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", req.path, "Description file")->required();
    sub->add_option("--section", req.section, "Section name (default: first suitable section)");
    return sub;
  };
  with_file(app.add_subcommand("validate", "Check every section of a description file"));
  with_file(app.add_subcommand("pi", "Cohomotopy of a double coset or cosimplicial section"))
      ->add_option("--degree", req.degree, "Degree")
      ->required();
  auto* h1 = with_file(app.add_subcommand("h1", "Group cohomology of an action section"));
  h1->add_option("--seed", req.seed, "Seed for sampled clauses");
  auto* pc = with_file(app.add_subcommand("phin-classify", "Selmer quotients and twisted conjugation of a (phi, N) section"));
  pc->add_option("--frobenius", req.frobenius, "Torsor Frobenius datum, comma-separated coordinates");
  pc->add_option("--monodromy", req.monodromy, "Torsor monodromy datum, comma-separated coordinates");
  with_file(app.add_subcommand("phin-les", "Quotient sequence of a (phi, N) section with a central ideal"))
      ->add_option("--seed", req.seed, "Seed for sampled clauses");
  with_file(app.add_subcommand("hodge-classify", "Double coset normal form for a mixed Hodge section"))
      ->add_option("--element", req.element, "Point of U(C), comma-separated Gaussian coordinates");
  with_file(app.add_subcommand("hodge-les", "Quotient sequence of a mixed Hodge section with a central ideal"))
      ->add_option("--seed", req.seed, "Seed for sampled clauses");
  auto* verify = app.add_subcommand("verify", "Run seeded property suites");
  verify->add_option("--suite", req.suite, "Suite name or 'all'");
  verify->add_option("--seed", req.seed, "Seed");
  verify->add_option("--instances", instances, "Instances per suite (default: the suite's own)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cohw::kExitInput;
  }
  req.command = app.get_subcommands().front()->get_name();
  req.json = format == "json";
  if (verify->count("--instances") > 0) req.instances = instances;

  cohw::CommandOutput out = cohw::run_command(req);
  std::cout << out.out;
  std::cerr << out.err;
  return out.exit_code;
}
