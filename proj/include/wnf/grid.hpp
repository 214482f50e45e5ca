#pragma once

#include <array>
#include <cstddef>

namespace wnf {

// Periodic uniform grid in one or two dimensions. Axis a covers
// [-L_a/2, L_a/2) with N_a points; storage is row-major with x slowest.
// For d = 1 the second axis is a dummy of length one.
class Grid {
 public:
  static Grid line(double L, int N);
  static Grid plane(double Lx, double Ly, int Nx, int Ny);

  int dim() const noexcept { return dim_; }
  double extent(int axis) const { return L_[axis]; }
  int points(int axis) const { return N_[axis]; }
  double spacing(int axis) const { return L_[axis] / N_[axis]; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(N_[0]) * N_[1]; }
  double cell_volume() const noexcept;

  double coord(int axis, int i) const { return -0.5 * L_[axis] + i * spacing(axis); }
  std::size_t index(int ix, int iy = 0) const { return static_cast<std::size_t>(ix) * N_[1] + iy; }
  // Coordinate along `axis` of flat index `k`.
  double coord_of(int axis, std::size_t k) const;

  bool operator==(const Grid& o) const noexcept {
    return dim_ == o.dim_ && L_ == o.L_ && N_ == o.N_;
  }

 private:
  Grid(int dim, std::array<double, 2> L, std::array<int, 2> N);
  int dim_;
  std::array<double, 2> L_;
  std::array<int, 2> N_;
};

// Throws ValidationError when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace wnf
