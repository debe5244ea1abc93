#pragma once

#include <string>
#include <vector>

#include "yplumb/plumbing.hpp"
#include "yplumb/root_lattice.hpp"

namespace yplumb {

/// A Weyl assignment: one (possibly iota-extended) Weyl element per
/// vertex, in vertex order.  Degree-2 vertices carry the identity.
struct WeylAssignment {
  std::vector<WeylElement> values;

  const WeylElement& at(const PlumbingTree& t, VertexId id) const {
    return values[static_cast<std::size_t>(t.index_of(id))];
  }
};

/// pi(B) - pi(B after replaying the contraction script).
int delta_pi(const PlumbingTree& t, const std::vector<VertexId>& path,
             const MoveScript& script);

/// The forcing structure of a tree: which vertices are free, which values
/// are pinned or linked through maximal contractible degree-2 paths.
struct ForcingLink {
  VertexId a;
  VertexId b;       // -1 when the path pins `a` through a degree-2 terminal
  int parity;       // Delta pi mod 2
};

struct ForcingData {
  std::vector<ContractiblePath> paths;   // counted paths (>=1 terminal of degree != 2)
  std::vector<ForcingLink> links;
  std::vector<VertexId> hard_vertices;   // vertices of degree != 2
};

ForcingData forcing_data(const PlumbingTree& t, const SearchBudget& budget);

std::vector<WeylAssignment> enumerate_assignments(const PlumbingTree& t,
                                                  const RootLattice& L,
                                                  const SearchBudget& budget);

bool validate(const PlumbingTree& t, const RootLattice& L, const WeylAssignment& xi,
              const SearchBudget& budget);

WeylAssignment identity_assignment(const PlumbingTree& t, const RootLattice& L);

/// Componentwise left multiplication (the Weyl action on assignments).
WeylAssignment conjugate(const RootLattice& L, const WeylElement& w,
                         const WeylAssignment& xi);

std::string assignment_to_text(const PlumbingTree& t, const RootLattice& L,
                               const WeylAssignment& xi);
WeylAssignment assignment_from_text(const PlumbingTree& t, const RootLattice& L,
                                    const std::string& text);

}  // namespace yplumb
