#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wnf/grid.hpp"

namespace wnf {

class ScalarField {
 public:
  explicit ScalarField(const Grid& g, double fill = 0.0);
  ScalarField(const Grid& g, std::vector<double> values);

  // f(x) in 1D, f(x, y) in 2D.
  static ScalarField sample(const Grid& g, const std::function<double(double)>& f);
  static ScalarField sample(const Grid& g, const std::function<double(double, double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return v_.size(); }
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<double> values() noexcept { return v_; }
  std::span<const double> values() const noexcept { return v_; }
  double* data() noexcept { return v_.data(); }
  const double* data() const noexcept { return v_.data(); }

  double integral() const;  // sum times cell volume
  double min() const;
  double max() const;
  double max_abs() const;
  double mean() const;

  // Throws NumericalError naming `what` and the first bad index.
  void require_finite(const char* what) const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);

 private:
  Grid grid_;
  std::vector<double> v_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator-(ScalarField a);
// out = a + s * b
ScalarField add_scaled(const ScalarField& a, double s, const ScalarField& b);
ScalarField map(const ScalarField& a, const std::function<double(double)>& f);

class VectorField {
 public:
  explicit VectorField(const Grid& g, double fill = 0.0);
  explicit VectorField(std::vector<ScalarField> comps);

  const Grid& grid() const noexcept { return c_.front().grid(); }
  int dim() const noexcept { return static_cast<int>(c_.size()); }
  ScalarField& operator[](int a) { return c_[a]; }
  const ScalarField& operator[](int a) const { return c_[a]; }

  double max_norm() const;  // max over points of the Euclidean length
  ScalarField norm2() const;  // pointwise |V|^2
  void require_finite(const char* what) const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& operator*=(const ScalarField& f);

 private:
  std::vector<ScalarField> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(const ScalarField& f, VectorField a);
VectorField operator*(double s, VectorField a);
ScalarField dot(const VectorField& a, const VectorField& b);

// Symmetric tensor with d(d+1)/2 stored components (xx | xx, xy, yy).
class SymTensorField {
 public:
  explicit SymTensorField(const Grid& g, double fill = 0.0);

  // Scalar times unit tensor.
  static SymTensorField isotropic(const ScalarField& f);
  // Symmetric dyad a b (sym part when a != b).
  static SymTensorField dyad(const VectorField& a, const VectorField& b);

  const Grid& grid() const noexcept { return c_.front().grid(); }
  int dim() const noexcept { return grid().dim(); }
  ScalarField& operator()(int i, int j) { return c_[slot(i, j)]; }
  const ScalarField& operator()(int i, int j) const { return c_[slot(i, j)]; }

  ScalarField trace() const;
  double max_abs() const;
  void require_finite(const char* what) const;

  SymTensorField& operator+=(const SymTensorField& o);
  SymTensorField& operator-=(const SymTensorField& o);
  SymTensorField& operator*=(double s);
  SymTensorField& operator*=(const ScalarField& f);

 private:
  int slot(int i, int j) const noexcept { return dim() == 1 ? 0 : i + j; }
  std::vector<ScalarField> c_;
};

SymTensorField operator+(SymTensorField a, const SymTensorField& b);
SymTensorField operator-(SymTensorField a, const SymTensorField& b);
SymTensorField operator*(const ScalarField& f, SymTensorField a);
SymTensorField operator*(double s, SymTensorField a);
// (v . T)_j = v_i T_ij
VectorField contract(const VectorField& v, const SymTensorField& T);
// A : B summed over both indices
ScalarField double_dot(const SymTensorField& a, const SymTensorField& b);

}  // namespace wnf
