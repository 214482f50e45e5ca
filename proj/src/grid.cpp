#include "wnf/grid.hpp"

#include <cmath>
#include <string>

#include "wnf/errors.hpp"

namespace wnf {

namespace {

void check_axis(double L, int N, const char* name) {
  if (!(L > 0.0) || !std::isfinite(L))
    throw ValidationError(std::string("grid: extent ") + name + " must be positive and finite");
  if (N < 8 || N % 2 != 0)
    throw ValidationError(std::string("grid: points ") + name + " must be an even integer >= 8, got " +
                          std::to_string(N));
}

}  // namespace

Grid::Grid(int dim, std::array<double, 2> L, std::array<int, 2> N) : dim_(dim), L_(L), N_(N) {}

Grid Grid::line(double L, int N) {
  check_axis(L, N, "L");
  return Grid(1, {L, 1.0}, {N, 1});
}

Grid Grid::plane(double Lx, double Ly, int Nx, int Ny) {
  check_axis(Lx, Nx, "Lx");
  check_axis(Ly, Ny, "Ly");
  return Grid(2, {Lx, Ly}, {Nx, Ny});
}

double Grid::cell_volume() const noexcept {
  return dim_ == 1 ? spacing(0) : spacing(0) * spacing(1);
}

double Grid::coord_of(int axis, std::size_t k) const {
  const int i = axis == 0 ? static_cast<int>(k / N_[1]) : static_cast<int>(k % N_[1]);
  return coord(axis, i);
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw ValidationError(std::string(what) + ": fields live on different grids");
}

}  // namespace wnf
