#include "dwell/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_finite(const Eigen::Ref<const Matrix>& M, const char* name) {
  if (!M.allFinite()) {
    throw InputError(std::string("field '") + name + "' has non-finite entries");
  }
}

}  // namespace

DwpInstance::DwpInstance(Matrix A, Matrix B, Vector c, double d, Vector f,
                         double constant_offset)
    : A_(std::move(A)),
      B_(std::move(B)),
      c_(std::move(c)),
      d_(d),
      f_(std::move(f)),
      constant_offset_(constant_offset) {
  const Index n = A_.rows();
  if (n < 1 || A_.cols() != n) {
    throw InputError("field 'A' must be a nonempty square matrix");
  }
  if (B_.rows() < 1 || B_.cols() != n) {
    throw InputError("field 'B' must have at least one row and n columns");
  }
  if (c_.size() != B_.rows()) {
    throw InputError("field 'c' must have m entries");
  }
  if (f_.size() != n) {
    throw InputError("field 'f' must have n entries");
  }
  require_finite(A_, "A");
  require_finite(B_, "B");
  require_finite(c_, "c");
  require_finite(f_, "f");
  if (!std::isfinite(d_)) throw InputError("field 'd' is not finite");
  if (!std::isfinite(constant_offset_)) {
    throw InputError("field 'constant_offset' is not finite");
  }
  if (B_.cwiseAbs().maxCoeff() == 0.0) {
    throw InputError("field 'B' must have at least one nonzero entry");
  }

  const double scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
  const double asym = (A_ - A_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw InputError("field 'A' is not symmetric (max |A - A^T| = " +
                     std::to_string(asym) + ")");
  }
  A_ = 0.5 * (A_ + A_.transpose()).eval();
}

DwpInstance DwpInstance::with_offset(double constant_offset) const {
  DwpInstance copy = *this;
  copy.constant_offset_ = constant_offset;
  return copy;
}

double evaluate_objective(const DwpInstance& inst, const Vector& x) {
  if (x.size() != inst.n()) {
    throw InputError("point has dimension " + std::to_string(x.size()) +
                     ", instance expects " + std::to_string(inst.n()));
  }
  const Vector r = inst.B() * x - inst.c();
  const double xi = 0.5 * r.squaredNorm() - inst.d();
  return 0.5 * xi * xi + 0.5 * x.dot(inst.A() * x) - inst.f().dot(x) +
         inst.constant_offset();
}

Vector evaluate_gradient(const DwpInstance& inst, const Vector& x) {
  if (x.size() != inst.n()) {
    throw InputError("point has dimension " + std::to_string(x.size()) +
                     ", instance expects " + std::to_string(inst.n()));
  }
  const Vector r = inst.B() * x - inst.c();
  const double xi = 0.5 * r.squaredNorm() - inst.d();
  return xi * (inst.B().transpose() * r) + inst.A() * x - inst.f();
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) {
    throw InputError(std::string("missing field '") + name + "'");
  }
  return *it;
}

double number(const json& v, const std::string& name) {
  if (!v.is_number()) throw InputError("field '" + name + "' must be a number");
  return v.get<double>();
}

Index dimension(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InputError(std::string("field '") + name + "' must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Vector vector_field(const json& doc, const char* name, Index size) {
  const json& v = field(doc, name);
  if (!v.is_array() || static_cast<Index>(v.size()) != size) {
    throw InputError(std::string("field '") + name + "' must be an array of " +
                     std::to_string(size) + " numbers");
  }
  Vector out(size);
  for (Index i = 0; i < size; ++i) {
    out(i) = number(v[static_cast<std::size_t>(i)], std::string(name));
  }
  return out;
}

Matrix matrix_field(const json& doc, const char* name, Index rows, Index cols) {
  const json& v = field(doc, name);
  const std::string shape = std::to_string(rows) + "x" + std::to_string(cols);
  if (!v.is_array() || static_cast<Index>(v.size()) != rows) {
    throw InputError(std::string("field '") + name + "' must be a " + shape +
                     " array of rows");
  }
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw InputError(std::string("field '") + name + "' must be a " + shape +
                       " array of rows");
    }
    for (Index j = 0; j < cols; ++j) {
      out(i, j) = number(row[static_cast<std::size_t>(j)], std::string(name));
    }
  }
  return out;
}

json to_json(const Matrix& M) {
  json rows = json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

DwpInstance load_instance(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("instance document must be a JSON object");

  const Index n = dimension(doc, "n");
  const Index m = dimension(doc, "m");
  Matrix A = matrix_field(doc, "A", n, n);
  Matrix B = matrix_field(doc, "B", m, n);
  Vector c = vector_field(doc, "c", m);
  const double d = number(field(doc, "d"), "d");
  Vector f = vector_field(doc, "f", n);
  double offset = 0.0;
  if (auto it = doc.find("constant_offset"); it != doc.end()) {
    offset = number(*it, "constant_offset");
  }
  return DwpInstance(std::move(A), std::move(B), std::move(c), d, std::move(f), offset);
}

DwpInstance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_instance(buffer.str());
}

std::string save_instance(const DwpInstance& inst) {
  json doc;
  doc["n"] = inst.n();
  doc["m"] = inst.m();
  doc["A"] = to_json(inst.A());
  doc["B"] = to_json(inst.B());
  doc["c"] = to_json(inst.c());
  doc["d"] = inst.d();
  doc["f"] = to_json(inst.f());
  doc["constant_offset"] = inst.constant_offset();
  return doc.dump(2) + "\n";
}

void save_instance_file(const DwpInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write instance file '" + path.string() + "'");
  out << save_instance(inst);
}

}  // namespace dwell
