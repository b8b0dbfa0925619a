#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dwell/errors.hpp"

using namespace dwell::cli;

int main(int argc, char** argv) {
  CLI::App app{"Global solver for double-well problems"};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print a JSON report");
  solve_cmd->add_option("instance", solve_opts.instance_path, "Instance JSON file")->required();
  solve_cmd->add_option("--tol", solve_opts.tol, "Dual root tolerance");
  solve_cmd->add_option("--out", solve_opts.out_path, "Write the report here instead of stdout");

  GlOptions gl_opts;
  auto* gl_cmd = app.add_subcommand("gl", "Emit the Ginzburg-Landau instance for an s x t grid");
  gl_cmd->add_option("S", gl_opts.s, "Cells along x")->required();
  gl_cmd->add_option("T", gl_opts.t, "Cells along y")->required();
  gl_cmd->add_option("ALPHA", gl_opts.alpha, "Material constant alpha")->required();
  gl_cmd->add_option("BETA", gl_opts.beta, "Material constant beta")->required();
  gl_cmd->add_option("--out", gl_opts.out_path, "Write the instance here instead of stdout");

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Compare the solver against brute-force oracles");
  verify_cmd->add_option("instance", verify_opts.instance_path, "Instance JSON file")->required();
  verify_cmd->add_option("--starts", verify_opts.starts, "Multistart local descents");
  verify_cmd->add_option("--seed", verify_opts.seed, "Multistart seed");
  verify_cmd->add_option("--tol", verify_opts.tol, "Dual root tolerance");

  SliceOptions slice_opts;
  std::string dims_text = "0";
  std::string range_text = "-1:1";
  std::string fix_text;
  auto* slice_cmd = app.add_subcommand("slice", "Sample the objective on a 1-D or 2-D slice as CSV");
  slice_cmd->add_option("instance", slice_opts.instance_path, "Instance JSON file")->required();
  slice_cmd->add_option("--dims", dims_text, "Free coordinates, i or i,j (0-based)");
  slice_cmd->add_option("--range", range_text, "lo:hi, e.g. --range=-2:2");
  slice_cmd->add_option("--steps", slice_opts.steps, "Intervals per axis");
  slice_cmd->add_option("--fix", fix_text, "Values for the other coordinates, i=v,j=w");
  slice_cmd->add_option("--out", slice_opts.out_path, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  if (*solve_cmd) return cmd_solve(solve_opts, std::cout, std::cerr);
  if (*gl_cmd) return cmd_gl(gl_opts, std::cout, std::cerr);
  if (*verify_cmd) return cmd_verify(verify_opts, std::cout, std::cerr);
  if (*slice_cmd) {
    try {
      slice_opts.dims = parse_dims(dims_text);
      std::tie(slice_opts.lo, slice_opts.hi) = parse_range(range_text);
      slice_opts.fixed = parse_fix(fix_text);
    } catch (const dwell::InputError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitInputError;
    }
    return cmd_slice(slice_opts, std::cout, std::cerr);
  }
  return kExitInputError;
}
