#pragma once

#include "yplumb/laurent.hpp"
#include "yplumb/root_lattice.hpp"

namespace yplumb {

struct KostantDepth {
  Coord height_cap = 0;
};

/// Sum form: sum_w (-1)^{l(w)} z^{2 w(rho)}.  Exact.
Series weyl_denominator(const RootLattice& L);

/// Product form: prod_{alpha > 0} (z^alpha - z^{-alpha}).  Exact;
/// independently computed cross-check of the sum form.
Series weyl_denominator_product(const RootLattice& L);

/// Weyl twist K_x(z) = (-1)^{l(x)} sum k(alpha) z^{-x(2rho+2alpha)},
/// truncated at the given cone height.
Series kostant_series(const RootLattice& L, const WeylElement& x, KostantDepth depth);

/// The degree-indexed collection: denominator^2, denominator, 1, K_x^{n-2}.
Series kostant_collection(const RootLattice& L, const WeylElement& x, int n,
                          KostantDepth depth);

/// Coefficient of z^beta in K_{x,n} computed directly (no truncation).
Int collection_coefficient(const RootLattice& L, const WeylElement& x, int n,
                           const CVec& beta);

/// m-fold convolution power of the Kostant partition function.
Int kostant_convolved(const RootLattice& L, int m, const CVec& alpha);

/// denominator * K = 1 on the certified window.
bool verify_p2(const RootLattice& L, KostantDepth depth);

}  // namespace yplumb
