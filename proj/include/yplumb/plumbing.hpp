#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yplumb/errors.hpp"
#include "yplumb/numeric.hpp"

namespace yplumb {

using VertexId = int;
using Weight = long long;

/// Weighted tree with a fixed vertex order; the order defines framing
/// matrix indices and Spin^c representative coordinates.
struct PlumbingTree {
  struct Vertex {
    VertexId id;
    Weight weight;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::optional<VertexId> root;

  int size() const { return static_cast<int>(vertices.size()); }
  int index_of(VertexId id) const;  // position in vertex order; throws if absent
  bool has_vertex(VertexId id) const;
  Weight weight_of(VertexId id) const;
  bool adjacent(VertexId a, VertexId b) const;
  std::vector<VertexId> neighbors(VertexId id) const;
  int degree(VertexId id) const;
  VertexId fresh_id() const;
  void validate() const;  // connected, acyclic, ids unique, root present

  /// Path between two vertices (unique in a tree), inclusive.
  std::vector<VertexId> path_between(VertexId a, VertexId b) const;
};

struct FramingMatrix {
  CMat entries;
  int sigma = 0;
  int pi = 0;
  Int det;
  std::optional<QMat> inverse;
};

FramingMatrix framing_matrix(const PlumbingTree& t);
IMat framing_adjugate(const PlumbingTree& t);

struct NeumannMove {
  enum class Kind { A, B, C };
  Kind kind = Kind::B;
  int sign = -1;       // +1/-1 for A and B
  bool inverse = false;  // false: expansion (adds vertices)
  VertexId at = -1;    // A expand: edge (at, to); B expand: vertex; contractions: the removed vertex
  VertexId to = -1;
  Weight left_weight = 0;            // C expand: weight kept at `at`
  std::vector<VertexId> moved;       // C expand: neighbors handed to the new vertex

  std::string name() const;  // "A-", "A+", "B-", "B+", "C" (+ " inverse")
};

/// Rewrites the tree; surviving vertices keep their order, new vertices
/// are appended with fresh ids.  Pattern mismatch raises UsageError.
PlumbingTree apply_move(const PlumbingTree& t, const NeumannMove& m);

struct SearchBudget {
  Weight weight_cap = 16;
  int state_cap = 20000;
};

using MoveScript = std::vector<NeumannMove>;

/// Bounded search for a script (A/B/C restricted to the path) contracting
/// the degree-2 path with terminals v, v2 down to a single vertex.
/// The path must have all interior vertices of ambient degree 2.
std::optional<MoveScript> contractible_deg2_path(const PlumbingTree& t, VertexId v,
                                                 VertexId v2, const SearchBudget& budget);

/// Reducedness in the bounded sense: no vertex of degree >= 3 drops to
/// degree <= 2 after absorbing contractible incident branches.
bool is_reduced(const PlumbingTree& t, const SearchBudget& budget);

struct ContractiblePath {
  std::vector<VertexId> vertices;  // terminal, interiors..., terminal
  MoveScript script;
};

/// All maximal contractible degree-2 paths, each with a verified script.
std::vector<ContractiblePath> maximal_contractible_paths(const PlumbingTree& t,
                                                         const SearchBudget& budget);

/// Standalone bounded reduction of a tree to a single vertex; returns the
/// set of reachable single-vertex weights (possibly empty).
std::vector<Weight> standalone_single_vertex_weights(const PlumbingTree& t,
                                                     const SearchBudget& budget);

/// Identify the roots of two knot complements.  Requires the root of tp
/// last in its vertex order and the root of tm first.
PlumbingTree glue_trees(const PlumbingTree& tp, const PlumbingTree& tm);

/// Splitting move D_{e,2}: disjoint trees joined through a new vertex of
/// weight e which also carries a 0-weighted leaf.  v1, v2 must have
/// degree 1 in their trees.
PlumbingTree split_tree(const PlumbingTree& t1, VertexId v1, const PlumbingTree& t2,
                        VertexId v2, Weight e);

PlumbingTree with_root_last(const PlumbingTree& t);
PlumbingTree with_root_first(const PlumbingTree& t);
PlumbingTree with_vertex_first(const PlumbingTree& t, VertexId v);

std::string tree_to_json(const PlumbingTree& t);
PlumbingTree tree_from_json(const std::string& text);

std::string move_to_json(const NeumannMove& m);
NeumannMove move_from_json(const std::string& text);
MoveScript script_from_json(const std::string& text);
std::string script_to_json(const MoveScript& s);

}  // namespace yplumb
