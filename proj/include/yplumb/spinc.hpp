#pragma once

#include <vector>

#include "yplumb/plumbing.hpp"
#include "yplumb/root_lattice.hpp"

namespace yplumb {

/// Spin^c representatives are s x r integer matrices: one lattice element
/// per vertex, rows in vertex order, simple-root coordinates.

CMat spinc_delta(const PlumbingTree& t, const RootLattice& L);

/// delta with 2*rho subtracted at the distinguished coordinate.
CMat spinc_delta_hat(const PlumbingTree& t, const RootLattice& L);

bool in_delta_coset(const PlumbingTree& t, const RootLattice& L, const CMat& rep);
bool in_delta_hat_coset(const PlumbingTree& t, const RootLattice& L, const CMat& rep);

/// x ~ y in Spin^c(M): (x - y)/2 lies in Q<B_1,...,B_s>.
bool same_class(const PlumbingTree& t, const RootLattice& L, const CMat& x, const CMat& y);

/// Relative version: the distinguished column of B is omitted.
bool rel_same_class(const PlumbingTree& t, const RootLattice& L, const CMat& x,
                    const CMat& y);

/// One representative per class; |det B|^rank of them.
std::vector<CMat> spinc_classes(const PlumbingTree& t, const RootLattice& L,
                                std::size_t cap = 1000000);

CMat weyl_act(const RootLattice& L, const WeylElement& w, const CMat& rep);

/// Shift a representative by the canonical Babai rounding against 2B and
/// order representatives deterministically (used for stable CLI indices).
CMat canonical_rep(const PlumbingTree& t, const RootLattice& L, const CMat& rep);

/// a+ * a-  (roots last/first by the gluing convention).
CMat glue_spinc(const PlumbingTree& tp, const PlumbingTree& tm, const CMat& ap,
                const CMat& am);

enum class BoundaryGen { Lambda, Mu };

/// The H_1(torus) action on pairs of relative representatives.
std::pair<CMat, CMat> lambda_mu_act(const PlumbingTree& tp, const PlumbingTree& tm,
                                    const CVec& gamma, BoundaryGen gen, const CMat& ap,
                                    const CMat& am);

Rat rep_self_pairing(const PlumbingTree& t, const RootLattice& L, const CMat& rep);

}  // namespace yplumb
