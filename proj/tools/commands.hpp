#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dwell::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUnbounded = 2;

struct SolveOptions {
  std::string instance_path;
  double tol = 1e-10;
  std::optional<std::string> out_path;
};

struct GlOptions {
  int s = 1;
  int t = 1;
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<std::string> out_path;
};

struct VerifyOptions {
  std::string instance_path;
  int starts = 50;
  std::uint64_t seed = 0;
  double tol = 1e-10;
};

struct SliceOptions {
  std::string instance_path;
  std::vector<int> dims{0};
  double lo = -1.0;
  double hi = 1.0;
  int steps = 100;
  std::map<int, double> fixed;
  std::optional<std::string> out_path;
};

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gl(const GlOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_slice(const SliceOptions& opts, std::ostream& out, std::ostream& err);

/// "lo:hi"
std::pair<double, double> parse_range(const std::string& text);
/// "i[,j]"
std::vector<int> parse_dims(const std::string& text);
/// "i=v,j=w,..."
std::map<int, double> parse_fix(const std::string& text);

}  // namespace dwell::cli
