#include "wnf/operators.hpp"

#include <string>

#include "wnf/errors.hpp"
#include "wnf/spectral.hpp"

namespace wnf {

Backend parse_backend(std::string_view name) {
  if (name == "spectral") return Backend::spectral;
  if (name == "fd2") return Backend::fd2;
  if (name == "fd4") return Backend::fd4;
  throw ValidationError("unknown derivative backend '" + std::string(name) +
                        "' (expected spectral, fd2 or fd4)");
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::spectral: return "spectral";
    case Backend::fd2: return "fd2";
    case Backend::fd4: return "fd4";
  }
  return "?";
}

namespace {

void check_axis(const ScalarField& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim()) throw ValidationError("derivative axis out of range");
  f.require_finite("derivative input");
}

// Periodic centred stencil along one axis:
// out = (sum_s w_s f[i + s]) / h^order, s in [-2, 2].
ScalarField stencil(const ScalarField& f, int axis, const double (&w)[5], double scale) {
  const Grid& g = f.grid();
  ScalarField out(g);
  const int Nx = g.points(0), Ny = g.points(1);
  for (int i = 0; i < Nx; ++i)
    for (int j = 0; j < Ny; ++j) {
      double acc = 0.0;
      for (int s = -2; s <= 2; ++s) {
        if (w[s + 2] == 0.0) continue;
        const int ii = axis == 0 ? (i + s + Nx) % Nx : i;
        const int jj = axis == 1 ? (j + s + Ny) % Ny : j;
        acc += w[s + 2] * f[g.index(ii, jj)];
      }
      out[g.index(i, j)] = acc * scale;
    }
  return out;
}

constexpr double kFd2First[5] = {0.0, -0.5, 0.0, 0.5, 0.0};
constexpr double kFd2Second[5] = {0.0, 1.0, -2.0, 1.0, 0.0};
constexpr double kFd4First[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
constexpr double kFd4Second[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};

}  // namespace

ScalarField partial(const ScalarField& f, int axis, Backend b) {
  check_axis(f, axis);
  const double h = f.grid().spacing(axis);
  switch (b) {
    case Backend::spectral: {
      spectral::Spectrum s(f);
      return s.apply_imag(s.tables().k[axis]);
    }
    case Backend::fd2: return stencil(f, axis, kFd2First, 1.0 / h);
    case Backend::fd4: return stencil(f, axis, kFd4First, 1.0 / h);
  }
  throw ValidationError("bad backend");
}

ScalarField partial2(const ScalarField& f, int axis, Backend b) {
  check_axis(f, axis);
  const double h = f.grid().spacing(axis);
  switch (b) {
    case Backend::spectral: {
      spectral::Spectrum s(f);
      auto out = s.apply_real(s.tables().k2[axis]);
      return out *= -1.0;
    }
    case Backend::fd2: return stencil(f, axis, kFd2Second, 1.0 / (h * h));
    case Backend::fd4: return stencil(f, axis, kFd4Second, 1.0 / (h * h));
  }
  throw ValidationError("bad backend");
}

VectorField grad(const ScalarField& f, Backend b) {
  f.require_finite("grad input");
  const int d = f.grid().dim();
  if (b == Backend::spectral) {
    spectral::Spectrum s(f);
    std::vector<ScalarField> c;
    for (int a = 0; a < d; ++a) c.push_back(s.apply_imag(s.tables().k[a]));
    return VectorField(std::move(c));
  }
  std::vector<ScalarField> c;
  for (int a = 0; a < d; ++a) c.push_back(partial(f, a, b));
  return VectorField(std::move(c));
}

ScalarField div(const VectorField& V, Backend b) {
  ScalarField out = partial(V[0], 0, b);
  for (int a = 1; a < V.dim(); ++a) out += partial(V[a], a, b);
  return out;
}

VectorField div_tensor(const SymTensorField& T, Backend b) {
  const int d = T.dim();
  VectorField out(T.grid());
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) out[j] += partial(T(i, j), i, b);
  return out;
}

SymTensorField hessian(const ScalarField& f, Backend b) {
  f.require_finite("hessian input");
  const Grid& g = f.grid();
  SymTensorField H(g);
  if (b == Backend::spectral) {
    spectral::Spectrum s(f);
    const auto& m = s.tables();
    H(0, 0) = -s.apply_real(m.k2[0]);
    if (g.dim() == 2) {
      H(1, 1) = -s.apply_real(m.k2[1]);
      H(0, 1) = s.apply_real(m.neg_kxky);
    }
    return H;
  }
  H(0, 0) = partial2(f, 0, b);
  if (g.dim() == 2) {
    H(1, 1) = partial2(f, 1, b);
    H(0, 1) = partial(partial(f, 1, b), 0, b);
  }
  return H;
}

ScalarField laplacian(const ScalarField& f, Backend b) {
  if (b == Backend::spectral) {
    f.require_finite("laplacian input");
    spectral::Spectrum s(f);
    return s.apply_real(s.tables().neg_k2_total);
  }
  return hessian(f, b).trace();
}

SymTensorField sym_grad(const VectorField& V, Backend b) {
  const int d = V.dim();
  SymTensorField T(V.grid());
  if (d == 1) {
    T(0, 0) = partial(V[0], 0, b);
    return T;
  }
  T(0, 0) = partial(V[0], 0, b);
  T(1, 1) = partial(V[1], 1, b);
  T(0, 1) = partial(V[1], 0, b) + partial(V[0], 1, b);
  T(0, 1) *= 0.5;
  return T;
}

}  // namespace wnf
