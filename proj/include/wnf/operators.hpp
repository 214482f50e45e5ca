#pragma once

#include <string_view>

#include "wnf/field.hpp"

namespace wnf {

enum class Backend { spectral, fd2, fd4 };

Backend parse_backend(std::string_view name);  // throws ValidationError
std::string_view to_string(Backend b);

// All operators reject non-finite input with a NumericalError.
ScalarField partial(const ScalarField& f, int axis, Backend b = Backend::spectral);
ScalarField partial2(const ScalarField& f, int axis, Backend b = Backend::spectral);

VectorField grad(const ScalarField& f, Backend b = Backend::spectral);
ScalarField div(const VectorField& V, Backend b = Backend::spectral);
// (div T)_j = d_i T_ij
VectorField div_tensor(const SymTensorField& T, Backend b = Backend::spectral);
SymTensorField hessian(const ScalarField& f, Backend b = Backend::spectral);
// Spectral: a single -|k|^2 multiplier. fd: the hessian trace.
ScalarField laplacian(const ScalarField& f, Backend b = Backend::spectral);
// sym(grad V)_ij = (d_i V_j + d_j V_i) / 2
SymTensorField sym_grad(const VectorField& V, Backend b = Backend::spectral);

}  // namespace wnf
