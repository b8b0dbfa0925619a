#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <string_view>

namespace dwell {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Data of the double-well potential problem
///
///   min_x  1/2 (1/2 |Bx - c|^2 - d)^2 + 1/2 x^T A x - f^T x + constant_offset
///
/// A is n x n symmetric, B is m x n and nonzero. Instances are validated on
/// construction and immutable afterwards. A is symmetrized when its
/// asymmetry is within 1e-12 relative; larger asymmetry is rejected.
class DwpInstance {
 public:
  DwpInstance(Matrix A, Matrix B, Vector c, double d, Vector f,
              double constant_offset = 0.0);

  Index n() const { return A_.rows(); }
  Index m() const { return B_.rows(); }

  const Matrix& A() const { return A_; }
  const Matrix& B() const { return B_; }
  const Vector& c() const { return c_; }
  double d() const { return d_; }
  const Vector& f() const { return f_; }
  double constant_offset() const { return constant_offset_; }

  /// Copy with a different additive constant.
  DwpInstance with_offset(double constant_offset) const;

 private:
  Matrix A_;
  Matrix B_;
  Vector c_;
  double d_;
  Vector f_;
  double constant_offset_;
};

double evaluate_objective(const DwpInstance& inst, const Vector& x);

/// (1/2 |Bx - c|^2 - d) B^T (Bx - c) + A x - f
Vector evaluate_gradient(const DwpInstance& inst, const Vector& x);

/// Parses the JSON instance document (fields n, m, A, B, c, d, f and an
/// optional constant_offset). Throws InputError naming the offending field.
DwpInstance load_instance(std::string_view json_text);
DwpInstance load_instance_file(const std::filesystem::path& path);

/// Serializes to the same JSON document; doubles are written with
/// round-trip precision.
std::string save_instance(const DwpInstance& inst);
void save_instance_file(const DwpInstance& inst, const std::filesystem::path& path);

}  // namespace dwell
