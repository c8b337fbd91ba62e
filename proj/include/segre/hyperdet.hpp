#pragma once

// Degrees of hyperdeterminants, i.e. of the dual hypersurfaces of
// P^{n_1} x ... x P^{n_d}, read off the generating function
//   sum_k N(k) x^k = [ sum_{i=0}^{d} (1 - w i) e_i(x) ]^{-2}.
// Defective formats return 0.

#include "segre/exactcore.hpp"
#include "segre/format.hpp"

namespace segre::hyperdet {

/// Dual is a hypersurface iff max n_j <= sum of the others. For d = 1 only P^0 qualifies.
bool is_dual_nondefective(const Format& f);

Integer hyperdet_degree(const Format& f, const Budget& budget = {});

/// Equal-weight Segre-Veronese hyperdeterminant degree. The weight is taken
/// from `omega`; any weights already stored in `f` must all equal it.
Integer sv_hyperdet_degree(const Format& f, int omega, const Budget& budget = {});

/// N(1^d) = d! sum_{i=0}^{d} (-2)^i/i! (d - i + 1), evaluated exactly.
Integer binary_hyperdet_degree(int d);

struct KernelComponents {
  Integer count;
  long component_dim;
};

/// Kernel of a general boundary-specialized tensor in V (x) C^{m+1}:
/// N!/prod(n_i!) linear spaces of dimension m - N.
KernelComponents kernel_component_count(const Format& f, long m);

}  // namespace segre::hyperdet
