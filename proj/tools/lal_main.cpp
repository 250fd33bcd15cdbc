#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lal/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"toolchain for the stratified region calculus"};
  app.require_subcommand(1);

  lal::CheckCmd check;
  auto* c = app.add_subcommand("check", "type-check a program");
  c->add_option("file", check.path, "program file")->required();
  c->add_flag("--emit-derivation", check.emit_derivation, "print the typing derivation");

  lal::RunCmd run;
  auto* r = app.add_subcommand("run", "evaluate a program (no type check)");
  r->add_option("file", run.path, "program file")->required();
  r->add_option("--max-steps", run.max_steps, "fuel limit");
  r->add_flag("--trace", run.trace, "print every machine configuration");

  lal::BoundCmd bound;
  auto* b = app.add_subcommand("bound", "infer the weight and step bound");
  b->add_option("file", bound.path, "program file")->required();

  lal::VerifyCmd verify;
  auto* v = app.add_subcommand("verify", "check, run, and compare steps to the bound");
  v->add_option("file", verify.path, "program file")->required();
  v->add_option("--max-steps", verify.fuel_cap, "fuel cap");
  v->add_flag("--json", verify.json, "emit a JSON report");

  lal::CorpusCmd corpus;
  auto* k = app.add_subcommand("corpus", "verify every .lal file in a directory");
  k->add_option("dir", corpus.dir, "directory of .lal files")->required();
  k->add_option("--max-steps", corpus.fuel_cap, "fuel cap per program");
  k->add_flag("--json", corpus.json, "emit a JSON report array");

  CLI11_PARSE(app, argc, argv);

  lal::Command cmd;
  if (*c) cmd = check;
  else if (*r) cmd = run;
  else if (*b) cmd = bound;
  else if (*v) cmd = verify;
  else cmd = corpus;
  return lal::run_command(cmd, std::cout, std::cerr);
}
