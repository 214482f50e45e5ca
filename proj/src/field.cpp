#include "wnf/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wnf/errors.hpp"
#include "wnf/simd/kernels.hpp"

namespace wnf {

ScalarField::ScalarField(const Grid& g, double fill) : grid_(g), v_(g.size(), fill) {}

ScalarField::ScalarField(const Grid& g, std::vector<double> values) : grid_(g), v_(std::move(values)) {
  if (v_.size() != g.size()) throw ValidationError("ScalarField: value count does not match grid");
}

ScalarField ScalarField::sample(const Grid& g, const std::function<double(double)>& f) {
  if (g.dim() != 1) throw ValidationError("ScalarField::sample: 1D sampler on a 2D grid");
  ScalarField out(g);
  for (int i = 0; i < g.points(0); ++i) out[i] = f(g.coord(0, i));
  return out;
}

ScalarField ScalarField::sample(const Grid& g, const std::function<double(double, double)>& f) {
  if (g.dim() != 2) throw ValidationError("ScalarField::sample: 2D sampler on a 1D grid");
  ScalarField out(g);
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j) out[g.index(i, j)] = f(g.coord(0, i), g.coord(1, j));
  return out;
}

double ScalarField::integral() const {
  double s = 0.0;
  for (double x : v_) s += x;
  return s * grid_.cell_volume();
}

double ScalarField::min() const { return *std::min_element(v_.begin(), v_.end()); }
double ScalarField::max() const { return *std::max_element(v_.begin(), v_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double x : v_) s += x;
  return s / static_cast<double>(v_.size());
}

void ScalarField::require_finite(const char* what) const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!std::isfinite(v_[i]))
      throw NumericalError(std::string(what) + ": non-finite value at grid index " + std::to_string(i));
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField +=");
  simd::axpy(1.0, o.values(), values());
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField -=");
  simd::axpy(-1.0, o.values(), values());
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField *=");
  simd::mul(values(), o.values(), values());
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) {
  for (double& x : v_) x += s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

ScalarField add_scaled(const ScalarField& a, double s, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "add_scaled");
  ScalarField out(a.grid());
  simd::add_scaled(a.values(), s, b.values(), out.values());
  return out;
}

ScalarField map(const ScalarField& a, const std::function<double(double)>& f) {
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return out;
}

// ---------------------------------------------------------------------------

VectorField::VectorField(const Grid& g, double fill) : c_(g.dim(), ScalarField(g, fill)) {}

VectorField::VectorField(std::vector<ScalarField> comps) : c_(std::move(comps)) {
  if (c_.empty() || static_cast<int>(c_.size()) != c_.front().grid().dim())
    throw ValidationError("VectorField: component count must equal grid dimension");
  for (const auto& c : c_) require_same_grid(c.grid(), c_.front().grid(), "VectorField");
}

ScalarField VectorField::norm2() const {
  ScalarField out = c_[0] * c_[0];
  for (int a = 1; a < dim(); ++a) out += c_[a] * c_[a];
  return out;
}

double VectorField::max_norm() const { return std::sqrt(norm2().max()); }

void VectorField::require_finite(const char* what) const {
  for (const auto& c : c_) c.require_finite(what);
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int a = 0; a < dim(); ++a) c_[a] += o.c_[a];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  for (int a = 0; a < dim(); ++a) c_[a] -= o.c_[a];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

VectorField& VectorField::operator*=(const ScalarField& f) {
  for (auto& c : c_) c *= f;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(const ScalarField& f, VectorField a) { return a *= f; }
VectorField operator*(double s, VectorField a) { return a *= s; }

ScalarField dot(const VectorField& a, const VectorField& b) {
  ScalarField out = a[0] * b[0];
  for (int i = 1; i < a.dim(); ++i) out += a[i] * b[i];
  return out;
}

// ---------------------------------------------------------------------------

SymTensorField::SymTensorField(const Grid& g, double fill)
    : c_(g.dim() == 1 ? 1 : 3, ScalarField(g, fill)) {}

SymTensorField SymTensorField::isotropic(const ScalarField& f) {
  SymTensorField t(f.grid());
  for (int a = 0; a < t.dim(); ++a) t(a, a) = f;
  return t;
}

SymTensorField SymTensorField::dyad(const VectorField& a, const VectorField& b) {
  SymTensorField t(a.grid());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = i; j < t.dim(); ++j) {
      if (i == j) {
        t(i, i) = a[i] * b[i];
      } else {
        t(i, j) = a[i] * b[j] + a[j] * b[i];
        t(i, j) *= 0.5;
      }
    }
  return t;
}

ScalarField SymTensorField::trace() const {
  ScalarField out = (*this)(0, 0);
  if (dim() == 2) out += (*this)(1, 1);
  return out;
}

double SymTensorField::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, c.max_abs());
  return m;
}

void SymTensorField::require_finite(const char* what) const {
  for (const auto& c : c_) c.require_finite(what);
}

SymTensorField& SymTensorField::operator+=(const SymTensorField& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

SymTensorField& SymTensorField::operator-=(const SymTensorField& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

SymTensorField& SymTensorField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

SymTensorField& SymTensorField::operator*=(const ScalarField& f) {
  for (auto& c : c_) c *= f;
  return *this;
}

SymTensorField operator+(SymTensorField a, const SymTensorField& b) { return a += b; }
SymTensorField operator-(SymTensorField a, const SymTensorField& b) { return a -= b; }
SymTensorField operator*(const ScalarField& f, SymTensorField a) { return a *= f; }
SymTensorField operator*(double s, SymTensorField a) { return a *= s; }

VectorField contract(const VectorField& v, const SymTensorField& T) {
  VectorField out(v.grid());
  for (int j = 0; j < v.dim(); ++j)
    for (int i = 0; i < v.dim(); ++i) out[j] += v[i] * T(i, j);
  return out;
}

ScalarField double_dot(const SymTensorField& a, const SymTensorField& b) {
  ScalarField out(a.grid());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out += a(i, j) * b(i, j);
  return out;
}

}  // namespace wnf
