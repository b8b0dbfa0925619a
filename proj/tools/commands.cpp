#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "dwell/errors.hpp"
#include "dwell/ginzburg_landau.hpp"
#include "dwell/instance.hpp"
#include "dwell/oracle.hpp"
#include "dwell/solve.hpp"

namespace dwell::cli {

namespace {

constexpr double kVerifySlack = 1e-6;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Writes to the file when a path is given, to `fallback` otherwise.
void emit(const std::optional<std::string>& path, std::ostream& fallback, const std::string& text) {
  if (!path) {
    fallback << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + *path + "'");
  file << text;
}

int fail(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << "\n";
  return kExitInputError;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse " + what + " '" + text + "'");
  }
  if (used != text.size()) throw InputError("cannot parse " + what + " '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse " + what + " '" + text + "'");
  }
  if (used != text.size()) throw InputError("cannot parse " + what + " '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("range must look like lo:hi");
  const double lo = parse_double(text.substr(0, colon), "range");
  const double hi = parse_double(text.substr(colon + 1), "range");
  if (!(lo < hi)) throw InputError("range needs lo < hi");
  return {lo, hi};
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  for (const auto& part : split(text, ',')) dims.push_back(parse_int(part, "dimension"));
  return dims;
}

std::map<int, double> parse_fix(const std::string& text) {
  std::map<int, double> fixed;
  if (text.empty()) return fixed;
  for (const auto& part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InputError("--fix entries must look like i=v");
    fixed[parse_int(part.substr(0, eq), "fixed index")] =
        parse_double(part.substr(eq + 1), "fixed value");
  }
  return fixed;
}

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const DwpInstance inst = load_instance_file(opts.instance_path);
    const SolveReport report = solve(inst, opts.tol);
    emit(opts.out_path, out, report_to_json(report).dump(2) + "\n");
    return report.status == SolveStatus::Unbounded ? kExitUnbounded : kExitOk;
  } catch (const std::exception& e) {
    return fail(err, e);
  }
}

int cmd_gl(const GlOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const GridSpec spec{opts.s, opts.t, opts.alpha, opts.beta};
    emit(opts.out_path, out, save_instance(build_dwp_instance(spec)));
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(err, e);
  }
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const DwpInstance inst = load_instance_file(opts.instance_path);
    if (inst.n() > 6) {
      throw InputError("verify supports n <= 6 (instance has n = " + std::to_string(inst.n()) + ")");
    }
    if (opts.starts < 1) throw InputError("--starts must be at least 1");

    const SolveReport report = solve(inst, opts.tol);
    const double pipeline = report.value ? *report.value : -std::numeric_limits<double>::infinity();
    out << "status           " << to_string(report.status) << "\n";
    out << "pipeline_value   " << format_number(pipeline) << "\n";

    const OracleMinimum ms = multistart_min(inst, opts.starts, opts.seed);
    out << "multistart_value " << format_number(ms.value) << "\n";
    out << "multistart_gap   " << format_number(std::abs(ms.value - pipeline)) << "\n";
    double best = ms.value;

    if (inst.n() <= 3) {
      const double radius = multistart_box_radius(inst);
      static constexpr int kSteps[] = {0, 20000, 600, 80};
      const Box box(static_cast<std::size_t>(inst.n()), {-radius, radius});
      const OracleMinimum grid = grid_min(inst, box, kSteps[inst.n()]);
      out << "grid_value       " << format_number(grid.value) << "\n";
      out << "grid_gap         " << format_number(std::abs(grid.value - pipeline)) << "\n";
      best = std::min(best, grid.value);
    } else {
      out << "grid_value       skipped (n > 3)\n";
    }
    out << "gap              " << format_number(std::abs(best - pipeline)) << "\n";
    const bool pass = pipeline <= best + kVerifySlack;
    out << "result           " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kExitOk : kExitInputError;
  } catch (const std::exception& e) {
    return fail(err, e);
  }
}

int cmd_slice(const SliceOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const DwpInstance inst = load_instance_file(opts.instance_path);
    const auto n = static_cast<int>(inst.n());
    if (opts.dims.empty() || opts.dims.size() > 2) throw InputError("--dims takes one or two indices");
    for (int d : opts.dims) {
      if (d < 0 || d >= n) throw InputError("dimension index " + std::to_string(d) + " out of range");
    }
    if (opts.dims.size() == 2 && opts.dims[0] == opts.dims[1]) {
      throw InputError("--dims indices must differ");
    }
    if (!(opts.lo < opts.hi)) throw InputError("range needs lo < hi");
    if (opts.steps < 1) throw InputError("--steps must be at least 1");

    Vector x = Vector::Zero(n);
    for (const auto& [i, v] : opts.fixed) {
      if (i < 0 || i >= n) throw InputError("fixed index " + std::to_string(i) + " out of range");
      x(i) = v;
    }
    auto coord = [&](int k) { return opts.lo + (opts.hi - opts.lo) * k / opts.steps; };

    std::string csv;
    if (opts.dims.size() == 1) {
      csv = "x1,value\n";
      for (int k = 0; k <= opts.steps; ++k) {
        x(opts.dims[0]) = coord(k);
        csv += format_number(x(opts.dims[0])) + "," + format_number(evaluate_objective(inst, x)) + "\n";
      }
    } else {
      csv = "x1,x2,value\n";
      for (int k = 0; k <= opts.steps; ++k) {
        x(opts.dims[0]) = coord(k);
        for (int l = 0; l <= opts.steps; ++l) {
          x(opts.dims[1]) = coord(l);
          csv += format_number(x(opts.dims[0])) + "," + format_number(x(opts.dims[1])) + "," +
                 format_number(evaluate_objective(inst, x)) + "\n";
        }
      }
    }
    emit(opts.out_path, out, csv);
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(err, e);
  }
}

}  // namespace dwell::cli
