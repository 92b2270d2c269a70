#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "haloproj/problem_spec.hpp"

int main(int argc, char** argv) {
  CLI::App app{"projection onto the fixed-point set of a quasi-nonexpansive map\n"
               "via accumulated halfspace cuts"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir;
  bool baseline = false;
  CLI::App* run_cmd = app.add_subcommand("run", "execute a problem spec");
  run_cmd->add_option("spec", spec_path, "problem spec JSON file")->required();
  run_cmd->add_option("--out", out_dir, "output directory")->required();
  run_cmd->add_flag("--baseline", baseline, "also run the anchored averaged baseline");

  std::string trace_path;
  std::string verify_spec_path;
  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check an emitted trace CSV");
  verify_cmd->add_option("trace", trace_path, "trace CSV produced by run")->required();
  verify_cmd->add_option("spec", verify_spec_path, "problem spec JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      haloproj::ProblemSpec spec = haloproj::load_spec_file(spec_path);
      spec.emit_baseline = spec.emit_baseline || baseline;
      return haloproj::execute(spec, out_dir);
    }
    return haloproj::verify_trace_file(trace_path, verify_spec_path);
  } catch (const haloproj::SpecError& e) {
    std::cerr << "haloproj: spec error at " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "haloproj: " << e.what() << '\n';
    return 1;
  }
}
