#pragma once

#include "hardy/symbol.hpp"

namespace hardy::detail {

/// integral_0^inf phi(t) cos(freq t) dt to absolute error tol_i.
/// Shared by hat_numeric and the Dirichlet-form oracle.
double cos_transform(const Symbol& sym, double freq, double tol_i);

}  // namespace hardy::detail
