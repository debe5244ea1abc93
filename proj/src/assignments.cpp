#include "yplumb/assignments.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace yplumb {

int delta_pi(const PlumbingTree& t, const std::vector<VertexId>& path,
             const MoveScript& script) {
  int pi_before = framing_matrix(t).pi;
  PlumbingTree cur = t;
  try {
    for (const auto& m : script) cur = apply_move(cur, m);
  } catch (const UsageError& e) {
    throw IntegrityError(std::string("contraction script replay failed: ") + e.what());
  }
  (void)path;
  int pi_after = framing_matrix(cur).pi;
  return pi_before - pi_after;
}

ForcingData forcing_data(const PlumbingTree& t, const SearchBudget& budget) {
  ForcingData fd;
  for (const auto& v : t.vertices)
    if (t.degree(v.id) != 2) fd.hard_vertices.push_back(v.id);
  for (const auto& p : maximal_contractible_paths(t, budget)) {
    VertexId a = p.vertices.front();
    VertexId b = p.vertices.back();
    bool a_hard = t.degree(a) != 2;
    bool b_hard = t.degree(b) != 2;
    if (!a_hard && !b_hard) continue;  // the forcing condition does not apply
    int parity = ((delta_pi(t, p.vertices, p.script) % 2) + 2) % 2;
    fd.paths.push_back(p);
    if (a_hard && b_hard)
      fd.links.push_back({a, b, parity});
    else if (a_hard)
      fd.links.push_back({a, -1, parity});
    else
      fd.links.push_back({b, -1, parity});
  }
  return fd;
}

namespace {

struct Components {
  // union-find with parity relative to the component representative
  std::map<VertexId, VertexId> parent;
  std::map<VertexId, int> parity;
  std::map<VertexId, int> pinned;  // representative -> forced parity, when pinned
  bool consistent = true;

  VertexId find(VertexId v, int& p) {
    if (parent[v] == v) {
      p = 0;
      return v;
    }
    int pp = 0;
    VertexId root = find(parent[v], pp);
    parity[v] = (parity[v] + pp) % 2;
    parent[v] = root;
    p = parity[v];
    return root;
  }

  void unite(VertexId a, VertexId b, int rel) {
    int pa = 0, pb = 0;
    VertexId ra = find(a, pa), rb = find(b, pb);
    if (ra == rb) {
      if ((pa + rel) % 2 != pb % 2) consistent = false;
      return;
    }
    parent[rb] = ra;
    parity[rb] = ((pa + rel - pb) % 2 + 2) % 2;
    auto it = pinned.find(rb);
    if (it != pinned.end()) {
      int forced = (it->second + parity[rb]) % 2;
      pin(ra, forced);
      pinned.erase(rb);
    }
  }

  void pin(VertexId a, int val) {
    int pa = 0;
    VertexId ra = find(a, pa);
    int at_rep = ((val - pa) % 2 + 2) % 2;
    auto it = pinned.find(ra);
    if (it != pinned.end()) {
      if (it->second != at_rep) consistent = false;
    } else {
      pinned[ra] = at_rep;
    }
  }
};

Components build_components(const ForcingData& fd) {
  Components c;
  for (VertexId v : fd.hard_vertices) {
    c.parent[v] = v;
    c.parity[v] = 0;
  }
  for (const auto& link : fd.links) {
    if (link.b >= 0)
      c.unite(link.a, link.b, link.parity);
    else
      c.pin(link.a, link.parity);
  }
  return c;
}

}  // namespace

std::vector<WeylAssignment> enumerate_assignments(const PlumbingTree& t,
                                                  const RootLattice& L,
                                                  const SearchBudget& budget) {
  if (!is_reduced(t, budget))
    throw UsageError("assignments are defined on reduced trees only");
  ForcingData fd = forcing_data(t, budget);
  Components comp = build_components(fd);
  if (!comp.consistent) return {};

  // representatives of free components, in vertex order
  std::vector<VertexId> free_reps;
  for (VertexId v : fd.hard_vertices) {
    int p = 0;
    VertexId r = comp.find(v, p);
    if (r == v && !comp.pinned.count(r)) free_reps.push_back(v);
  }

  const auto& W = L.weyl_elements();
  std::vector<std::size_t> odo(free_reps.size(), 0);
  std::vector<WeylAssignment> out;
  bool done = false;
  while (!done) {
    WeylAssignment xi;
    xi.values.assign(static_cast<std::size_t>(t.size()), L.identity());
    for (const auto& vert : t.vertices) {
      if (t.degree(vert.id) == 2) continue;
      int p = 0;
      VertexId rep = comp.find(vert.id, p);
      WeylElement base;
      auto pinIt = comp.pinned.find(rep);
      if (pinIt != comp.pinned.end()) {
        base = (pinIt->second % 2 == 1) ? L.iota() : L.identity();
        if (p % 2 == 1) base = L.iota().compose(base);
      } else {
        std::size_t idx =
            static_cast<std::size_t>(std::find(free_reps.begin(), free_reps.end(), rep) -
                                     free_reps.begin());
        base = W[odo[idx]];
        if (p % 2 == 1) base = L.iota().compose(base);
      }
      xi.values[static_cast<std::size_t>(t.index_of(vert.id))] = base;
    }
    out.push_back(std::move(xi));
    done = true;
    for (std::size_t i = 0; i < odo.size(); ++i) {
      if (odo[i] + 1 < W.size()) {
        ++odo[i];
        done = false;
        break;
      }
      odo[i] = 0;
    }
    if (odo.empty()) break;
  }
  return out;
}

bool validate(const PlumbingTree& t, const RootLattice& L, const WeylAssignment& xi,
              const SearchBudget& budget) {
  if (xi.values.size() != static_cast<std::size_t>(t.size())) return false;
  for (const auto& v : t.vertices)
    if (t.degree(v.id) == 2 && !xi.at(t, v.id).is_identity()) return false;
  ForcingData fd = forcing_data(t, budget);
  for (std::size_t i = 0; i < fd.paths.size(); ++i) {
    VertexId a = fd.paths[i].vertices.front();
    VertexId b = fd.paths[i].vertices.back();
    int parity = fd.links[i].parity;
    WeylElement lhs = xi.at(t, a);
    WeylElement rhs = xi.at(t, b);
    if (parity % 2 == 1) rhs = L.iota().compose(rhs);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

WeylAssignment identity_assignment(const PlumbingTree& t, const RootLattice& L) {
  WeylAssignment xi;
  xi.values.assign(static_cast<std::size_t>(t.size()), L.identity());
  return xi;
}

WeylAssignment conjugate(const RootLattice& L, const WeylElement& w,
                         const WeylAssignment& xi) {
  WeylAssignment out;
  out.values.reserve(xi.values.size());
  for (const auto& v : xi.values) out.values.push_back(w.compose(v));
  return out;
}

std::string assignment_to_text(const PlumbingTree& t, const RootLattice& L,
                               const WeylAssignment& xi) {
  std::ostringstream os;
  bool first = true;
  for (const auto& v : t.vertices) {
    if (!first) os << ",";
    first = false;
    os << v.id << ":" << weyl_word(L, xi.at(t, v.id));
  }
  return os.str();
}

WeylAssignment assignment_from_text(const PlumbingTree& t, const RootLattice& L,
                                    const std::string& text) {
  WeylAssignment xi = identity_assignment(t, L);
  if (text.empty() || text == "identity") return xi;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("assignment entry needs id:word");
    VertexId id = std::stoi(item.substr(0, colon));
    xi.values[static_cast<std::size_t>(t.index_of(id))] =
        parse_weyl_word(L, item.substr(colon + 1));
  }
  return xi;
}

}  // namespace yplumb
