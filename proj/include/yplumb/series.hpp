#pragma once

#include <optional>

#include "yplumb/assignments.hpp"
#include "yplumb/kostant.hpp"
#include "yplumb/laurent.hpp"
#include "yplumb/plumbing.hpp"
#include "yplumb/spinc.hpp"

namespace yplumb {

/// The input tuple: a Spin^c representative (rows in vertex order) and a
/// Weyl assignment over a fixed tree and root lattice.
struct Tau {
  CMat a;
  WeylAssignment xi;
};

struct Truncation {
  Coord kostant_depth = 8;   // cone height cap at vertices of degree >= 3
  Coord z_depth = 8;         // cone height cap of the distinguished-vertex factor
  Coord gamma_cap = 6;       // gluing: fallback cap of the gamma sum
  std::optional<Coord> gamma_cap_override;  // diagnostics: force the gamma cap
  std::optional<Rat> q_report_hi;  // grow depth until the window covers this
  int workers = 1;
  SearchBudget budget{};
  bool check_reduced = true;
  bool validate_assignment = true;
};

Rat front_factor_exponent(const RootLattice& L, const FramingMatrix& fm);
int front_factor_sign(const RootLattice& L, const FramingMatrix& fm);

/// c_{Gamma,xi}(ell): product of Kostant-collection coefficients.
Int coefficient_c(const PlumbingTree& t, const RootLattice& L, const WeylAssignment& xi,
                  const CMat& ell, KostantDepth depth);

/// xi^{-1}(ell) = sum_v xi_v^{-1}(ell_v).
CVec t_exponent(const RootLattice& L, const WeylAssignment& xi, const CMat& ell);

/// The (q,t) series of a closed plumbed manifold.
Series y_closed(const PlumbingTree& t, const RootLattice& L, const Tau& tau,
                const Truncation& tr);

/// The (q,t,z) series of a plumbed knot complement (rooted tree).
Series y_knot(const PlumbingTree& t, const RootLattice& L, const Tau& tau,
              const Truncation& tr);

/// Restriction of y_closed to ell with first coordinate 2 w(rho); the
/// first vertex in the order must be a leaf.
Series y_restricted(const PlumbingTree& t, const RootLattice& L, const Tau& tau,
                    const WeylElement& w, const Truncation& tr);

/// Evaluation at t = 1; defined when the window certifies finitely many
/// contributions per retained monomial.
Series specialize_t1(const Series& s);

/// Smallest cone-height cap whose Schur bound pushes every omitted term
/// past `qcap` (definite framing only).
Coord required_depth_for_qcap(const PlumbingTree& t, const RootLattice& L,
                              const FramingMatrix& fm, const Rat& pre, const Rat& qcap,
                              bool exclude_root);

}  // namespace yplumb
