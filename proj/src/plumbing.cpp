#include "yplumb/plumbing.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace yplumb {

using nlohmann::json;

int PlumbingTree::index_of(VertexId id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  throw UsageError("vertex id not in tree: " + std::to_string(id));
}

bool PlumbingTree::has_vertex(VertexId id) const {
  for (const auto& v : vertices)
    if (v.id == id) return true;
  return false;
}

Weight PlumbingTree::weight_of(VertexId id) const {
  return vertices[static_cast<std::size_t>(index_of(id))].weight;
}

bool PlumbingTree::adjacent(VertexId a, VertexId b) const {
  for (const auto& e : edges)
    if ((e.first == a && e.second == b) || (e.first == b && e.second == a)) return true;
  return false;
}

std::vector<VertexId> PlumbingTree::neighbors(VertexId id) const {
  std::vector<VertexId> out;
  for (const auto& e : edges) {
    if (e.first == id) out.push_back(e.second);
    if (e.second == id) out.push_back(e.first);
  }
  return out;
}

int PlumbingTree::degree(VertexId id) const {
  return static_cast<int>(neighbors(id).size());
}

VertexId PlumbingTree::fresh_id() const {
  VertexId m = -1;
  for (const auto& v : vertices) m = std::max(m, v.id);
  return m + 1;
}

void PlumbingTree::validate() const {
  std::set<VertexId> ids;
  for (const auto& v : vertices)
    if (!ids.insert(v.id).second) throw UsageError("duplicate vertex id");
  if (edges.size() + 1 != vertices.size() && !vertices.empty())
    throw UsageError("edge count does not match a tree");
  for (const auto& e : edges)
    if (!ids.count(e.first) || !ids.count(e.second))
      throw UsageError("edge references missing vertex");
  if (root && !ids.count(*root)) throw UsageError("root vertex missing");
  if (vertices.empty()) throw UsageError("empty tree");
  // connectivity
  std::set<VertexId> seen;
  std::deque<VertexId> queue{vertices[0].id};
  seen.insert(vertices[0].id);
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId u : neighbors(v))
      if (seen.insert(u).second) queue.push_back(u);
  }
  if (seen.size() != vertices.size()) throw UsageError("tree not connected");
}

std::vector<VertexId> PlumbingTree::path_between(VertexId a, VertexId b) const {
  std::map<VertexId, VertexId> parent;
  std::deque<VertexId> queue{a};
  parent[a] = a;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (v == b) break;
    for (VertexId u : neighbors(v))
      if (!parent.count(u)) {
        parent[u] = v;
        queue.push_back(u);
      }
  }
  if (!parent.count(b)) throw UsageError("no path between vertices");
  std::vector<VertexId> path;
  for (VertexId v = b;; v = parent[v]) {
    path.push_back(v);
    if (v == a) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

FramingMatrix framing_matrix(const PlumbingTree& t) {
  const int s = t.size();
  CMat b = CMat::Zero(s, s);
  for (int i = 0; i < s; ++i) b(i, i) = t.vertices[static_cast<std::size_t>(i)].weight;
  for (const auto& e : t.edges) {
    int i = t.index_of(e.first);
    int j = t.index_of(e.second);
    b(i, j) = 1;
    b(j, i) = 1;
  }
  FramingMatrix f;
  f.entries = b;
  Inertia in = symmetric_inertia(b);
  f.sigma = in.signature();
  f.pi = in.positive;
  f.det = det_integer(b);
  if (f.det != 0) f.inverse = inverse_rational(b);
  return f;
}

IMat framing_adjugate(const PlumbingTree& t) {
  return adjugate(framing_matrix(t).entries);
}

std::string NeumannMove::name() const {
  std::string base;
  switch (kind) {
    case Kind::A: base = sign > 0 ? "A+" : "A-"; break;
    case Kind::B: base = sign > 0 ? "B+" : "B-"; break;
    case Kind::C: base = "C"; break;
  }
  if (inverse) base += "^-1";
  return base;
}

PlumbingTree apply_move(const PlumbingTree& t, const NeumannMove& m) {
  PlumbingTree r = t;
  auto erase_vertex = [&](VertexId id) {
    r.vertices.erase(std::remove_if(r.vertices.begin(), r.vertices.end(),
                                    [&](const auto& v) { return v.id == id; }),
                     r.vertices.end());
    r.edges.erase(std::remove_if(r.edges.begin(), r.edges.end(),
                                 [&](const auto& e) {
                                   return e.first == id || e.second == id;
                                 }),
                  r.edges.end());
  };
  auto weight_ref = [&](VertexId id) -> Weight& {
    return r.vertices[static_cast<std::size_t>(r.index_of(id))].weight;
  };

  switch (m.kind) {
    case NeumannMove::Kind::A: {
      if (std::abs(m.sign) != 1) throw UsageError("A move needs sign +-1");
      if (!m.inverse) {
        if (!r.adjacent(m.at, m.to)) throw UsageError("A expansion needs an edge");
        VertexId mid = r.fresh_id();
        weight_ref(m.at) += m.sign;
        weight_ref(m.to) += m.sign;
        r.vertices.push_back({mid, m.sign});
        r.edges.erase(std::remove_if(r.edges.begin(), r.edges.end(),
                                     [&](const auto& e) {
                                       return (e.first == m.at && e.second == m.to) ||
                                              (e.first == m.to && e.second == m.at);
                                     }),
                      r.edges.end());
        r.edges.emplace_back(m.at, mid);
        r.edges.emplace_back(mid, m.to);
      } else {
        if (!r.has_vertex(m.at)) throw UsageError("A contraction: vertex missing");
        if (r.root && *r.root == m.at)
          throw UsageError("move may not remove the distinguished vertex");
        auto nb = r.neighbors(m.at);
        if (nb.size() != 2 || r.weight_of(m.at) != m.sign)
          throw UsageError("A contraction pattern mismatch");
        weight_ref(nb[0]) -= m.sign;
        weight_ref(nb[1]) -= m.sign;
        erase_vertex(m.at);
        r.edges.emplace_back(nb[0], nb[1]);
      }
      break;
    }
    case NeumannMove::Kind::B: {
      if (std::abs(m.sign) != 1) throw UsageError("B move needs sign +-1");
      if (!m.inverse) {
        if (!r.has_vertex(m.at)) throw UsageError("B expansion: vertex missing");
        VertexId leaf = r.fresh_id();
        weight_ref(m.at) += m.sign;
        r.vertices.push_back({leaf, m.sign});
        r.edges.emplace_back(m.at, leaf);
      } else {
        if (!r.has_vertex(m.at)) throw UsageError("B contraction: vertex missing");
        if (r.root && *r.root == m.at)
          throw UsageError("move may not remove the distinguished vertex");
        auto nb = r.neighbors(m.at);
        if (nb.size() != 1 || r.weight_of(m.at) != m.sign)
          throw UsageError("B contraction pattern mismatch");
        weight_ref(nb[0]) -= m.sign;
        erase_vertex(m.at);
      }
      break;
    }
    case NeumannMove::Kind::C: {
      if (!m.inverse) {
        if (!r.has_vertex(m.at)) throw UsageError("C expansion: vertex missing");
        auto nb = r.neighbors(m.at);
        for (VertexId u : m.moved)
          if (std::find(nb.begin(), nb.end(), u) == nb.end())
            throw UsageError("C expansion: moved vertex not a neighbor");
        Weight m2 = r.weight_of(m.at) - m.left_weight;
        VertexId mid = r.fresh_id();
        VertexId v2 = mid + 1;
        weight_ref(m.at) = m.left_weight;
        r.vertices.push_back({mid, 0});
        r.vertices.push_back({v2, m2});
        for (VertexId u : m.moved) {
          r.edges.erase(std::remove_if(r.edges.begin(), r.edges.end(),
                                       [&](const auto& e) {
                                         return (e.first == m.at && e.second == u) ||
                                                (e.first == u && e.second == m.at);
                                       }),
                        r.edges.end());
          r.edges.emplace_back(v2, u);
        }
        r.edges.emplace_back(m.at, mid);
        r.edges.emplace_back(mid, v2);
      } else {
        if (!r.has_vertex(m.at)) throw UsageError("C contraction: vertex missing");
        if (r.root && *r.root == m.at)
          throw UsageError("move may not remove the distinguished vertex");
        auto nb = r.neighbors(m.at);
        if (nb.size() != 2 || r.weight_of(m.at) != 0)
          throw UsageError("C contraction pattern mismatch");
        VertexId a = nb[0], b = nb[1];
        if (r.index_of(a) > r.index_of(b)) std::swap(a, b);
        Weight wb = r.weight_of(b);
        auto bn = r.neighbors(b);
        weight_ref(a) += wb;
        erase_vertex(m.at);
        for (VertexId u : bn) {
          if (u == m.at) continue;
          r.edges.erase(std::remove_if(r.edges.begin(), r.edges.end(),
                                       [&](const auto& e) {
                                         return (e.first == b && e.second == u) ||
                                                (e.first == u && e.second == b);
                                       }),
                        r.edges.end());
          r.edges.emplace_back(a, u);
        }
        if (r.root && *r.root == b) r.root = a;
        erase_vertex(b);
      }
      break;
    }
  }
  r.validate();
  return r;
}

namespace {

struct PathState {
  PlumbingTree tree;
  std::vector<VertexId> path;
  MoveScript script;
};

std::string path_signature(const PathState& st) {
  std::ostringstream os;
  for (std::size_t i = 0; i < st.path.size(); ++i) {
    VertexId v = st.path[i];
    int ext = st.tree.degree(v) - (i > 0 ? 1 : 0) - (i + 1 < st.path.size() ? 1 : 0);
    os << st.tree.weight_of(v) << ":" << ext << ";";
  }
  return os.str();
}

bool weights_ok(const PathState& st, Weight cap) {
  for (VertexId v : st.path)
    if (std::llabs(st.tree.weight_of(v)) > cap) return false;
  return true;
}

}  // namespace

std::optional<MoveScript> contractible_deg2_path(const PlumbingTree& t, VertexId v,
                                                 VertexId v2, const SearchBudget& budget) {
  std::vector<VertexId> path = t.path_between(v, v2);
  if (path.size() < 2) throw UsageError("path needs at least two vertices");
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    if (t.degree(path[i]) != 2)
      throw UsageError("interior path vertex must have degree 2");

  const std::size_t max_len = path.size();
  std::deque<PathState> queue;
  std::set<std::string> seen;
  queue.push_back({t, path, {}});
  seen.insert(path_signature(queue.front()));
  int popped = 0;

  auto try_push = [&](PathState st) {
    if (!weights_ok(st, budget.weight_cap)) return false;
    if (st.path.size() == 1) {
      queue.push_front(std::move(st));  // success state; surfaces immediately
      return true;
    }
    std::string sig = path_signature(st);
    if (seen.insert(sig).second) queue.push_back(std::move(st));
    return false;
  };

  while (!queue.empty()) {
    PathState st = std::move(queue.front());
    queue.pop_front();
    if (st.path.size() == 1) return st.script;
    if (++popped > budget.state_cap) break;

    const auto& p = st.path;
    const std::size_t n = p.size();
    bool success = false;
    // interior contractions
    for (std::size_t i = 1; i + 1 < n && !success; ++i) {
      Weight w = st.tree.weight_of(p[i]);
      bool is_root = st.tree.root && *st.tree.root == p[i];
      if (is_root) continue;
      if (w == 1 || w == -1) {
        NeumannMove m{NeumannMove::Kind::A, static_cast<int>(w), true, p[i]};
        PathState nx{apply_move(st.tree, m), {}, st.script};
        nx.script.push_back(m);
        nx.path = p;
        nx.path.erase(nx.path.begin() + static_cast<std::ptrdiff_t>(i));
        success = try_push(std::move(nx));
      } else if (w == 0) {
        NeumannMove m{NeumannMove::Kind::C, 0, true, p[i]};
        VertexId a = p[i - 1], b = p[i + 1];
        VertexId survivor = st.tree.index_of(a) < st.tree.index_of(b) ? a : b;
        PathState nx{apply_move(st.tree, m), {}, st.script};
        nx.script.push_back(m);
        nx.path = p;
        nx.path[i - 1] = survivor;
        nx.path.erase(nx.path.begin() + static_cast<std::ptrdiff_t>(i),
                      nx.path.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        success = try_push(std::move(nx));
      }
    }
    // terminal removals (B) when the terminal is an ambient leaf
    for (std::size_t side = 0; side < 2 && !success; ++side) {
      VertexId term = side == 0 ? p.front() : p.back();
      if (st.tree.root && *st.tree.root == term) continue;
      Weight w = st.tree.weight_of(term);
      if (st.tree.degree(term) == 1 && (w == 1 || w == -1)) {
        NeumannMove m{NeumannMove::Kind::B, static_cast<int>(w), true, term};
        PathState nx{apply_move(st.tree, m), {}, st.script};
        nx.script.push_back(m);
        nx.path = p;
        if (side == 0)
          nx.path.erase(nx.path.begin());
        else
          nx.path.pop_back();
        success = try_push(std::move(nx));
      }
    }
    if (success) continue;
    // expansions, within the original length
    if (n < max_len) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        for (int sign : {-1, 1}) {
          NeumannMove m{NeumannMove::Kind::A, sign, false, p[i], p[i + 1]};
          PathState nx{apply_move(st.tree, m), {}, st.script};
          VertexId mid = nx.tree.vertices.back().id;
          nx.script.push_back(m);
          nx.path = p;
          nx.path.insert(nx.path.begin() + static_cast<std::ptrdiff_t>(i) + 1, mid);
          try_push(std::move(nx));
        }
      }
      for (std::size_t side = 0; side < 2; ++side) {
        VertexId term = side == 0 ? p.front() : p.back();
        if (st.tree.degree(term) != 1) continue;  // keep the path a path
        for (int sign : {-1, 1}) {
          NeumannMove m{NeumannMove::Kind::B, sign, false, term};
          PathState nx{apply_move(st.tree, m), {}, st.script};
          VertexId leaf = nx.tree.vertices.back().id;
          nx.script.push_back(m);
          nx.path = p;
          if (side == 0)
            nx.path.insert(nx.path.begin(), leaf);
          else
            nx.path.push_back(leaf);
          try_push(std::move(nx));
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

std::string canonical_encode(const PlumbingTree& t, VertexId root, VertexId parent) {
  std::vector<std::string> kids;
  for (VertexId u : t.neighbors(root))
    if (u != parent) kids.push_back(canonical_encode(t, u, root));
  std::sort(kids.begin(), kids.end());
  std::ostringstream os;
  os << "(" << t.weight_of(root);
  for (const auto& k : kids) os << k;
  os << ")";
  return os.str();
}

std::string canonical_tree(const PlumbingTree& t) {
  std::string best;
  for (const auto& v : t.vertices) {
    std::string enc = canonical_encode(t, v.id, -1);
    if (best.empty() || enc < best) best = enc;
  }
  return best;
}

}  // namespace

std::vector<Weight> standalone_single_vertex_weights(const PlumbingTree& t,
                                                     const SearchBudget& budget) {
  std::set<Weight> found;
  const std::size_t max_size = t.vertices.size() + 1;
  std::deque<PlumbingTree> queue{t};
  std::set<std::string> seen{canonical_tree(t)};
  int popped = 0;
  while (!queue.empty()) {
    PlumbingTree cur = queue.front();
    queue.pop_front();
    if (++popped > budget.state_cap) break;
    if (cur.size() == 1) {
      found.insert(cur.vertices[0].weight);
      continue;
    }
    auto consider = [&](const NeumannMove& m) {
      PlumbingTree nx;
      try {
        nx = apply_move(cur, m);
      } catch (const UsageError&) {
        return;
      }
      if (nx.vertices.size() > max_size) return;
      for (const auto& v : nx.vertices)
        if (std::llabs(v.weight) > budget.weight_cap) return;
      if (seen.insert(canonical_tree(nx)).second) queue.push_back(nx);
    };
    for (const auto& v : cur.vertices) {
      int deg = cur.degree(v.id);
      if (deg == 2 && (v.weight == 1 || v.weight == -1))
        consider({NeumannMove::Kind::A, static_cast<int>(v.weight), true, v.id});
      if (deg == 2 && v.weight == 0) consider({NeumannMove::Kind::C, 0, true, v.id});
      if (deg == 1 && (v.weight == 1 || v.weight == -1))
        consider({NeumannMove::Kind::B, static_cast<int>(v.weight), true, v.id});
      for (int sign : {-1, 1})
        consider({NeumannMove::Kind::B, sign, false, v.id});
    }
    for (const auto& e : cur.edges)
      for (int sign : {-1, 1})
        consider({NeumannMove::Kind::A, sign, false, e.first, e.second});
  }
  return {found.begin(), found.end()};
}

namespace {

PlumbingTree branch_at(const PlumbingTree& t, VertexId v, VertexId u) {
  // component of t - v containing u
  std::set<VertexId> keep;
  std::deque<VertexId> queue{u};
  keep.insert(u);
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    for (VertexId y : t.neighbors(x)) {
      if (y == v) continue;
      if (keep.insert(y).second) queue.push_back(y);
    }
  }
  PlumbingTree b;
  for (const auto& vert : t.vertices)
    if (keep.count(vert.id)) b.vertices.push_back(vert);
  for (const auto& e : t.edges)
    if (keep.count(e.first) && keep.count(e.second)) b.edges.push_back(e);
  return b;
}

}  // namespace

bool is_reduced(const PlumbingTree& t, const SearchBudget& budget) {
  for (const auto& v : t.vertices) {
    int deg = t.degree(v.id);
    if (deg < 3) continue;
    int absorbable = 0;
    for (VertexId u : t.neighbors(v.id)) {
      PlumbingTree branch = branch_at(t, v.id, u);
      auto weights = standalone_single_vertex_weights(branch, budget);
      for (Weight w : weights)
        if (w == 0 || w == 1 || w == -1) {
          ++absorbable;
          break;
        }
    }
    if (deg - absorbable <= 2) return false;
  }
  return true;
}

std::vector<ContractiblePath> maximal_contractible_paths(const PlumbingTree& t,
                                                         const SearchBudget& budget) {
  std::vector<ContractiblePath> found;
  const int s = t.size();
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      VertexId a = t.vertices[static_cast<std::size_t>(i)].id;
      VertexId b = t.vertices[static_cast<std::size_t>(j)].id;
      auto path = t.path_between(a, b);
      bool deg2 = true;
      for (std::size_t k = 1; k + 1 < path.size(); ++k)
        if (t.degree(path[k]) != 2) deg2 = false;
      if (!deg2) continue;
      auto script = contractible_deg2_path(t, a, b, budget);
      if (script) found.push_back({path, *script});
    }
  }
  std::vector<ContractiblePath> maximal;
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool proper_sub = false;
    for (std::size_t j = 0; j < found.size() && !proper_sub; ++j) {
      if (i == j) continue;
      const auto& small = found[i].vertices;
      const auto& big = found[j].vertices;
      if (small.size() >= big.size()) continue;
      bool front_in = std::find(big.begin(), big.end(), small.front()) != big.end();
      bool back_in = std::find(big.begin(), big.end(), small.back()) != big.end();
      if (front_in && back_in) proper_sub = true;
    }
    if (!proper_sub) maximal.push_back(found[i]);
  }
  return maximal;
}

PlumbingTree glue_trees(const PlumbingTree& tp, const PlumbingTree& tm) {
  if (!tp.root || !tm.root) throw UsageError("glue needs rooted trees");
  if (tp.vertices.back().id != *tp.root)
    throw UsageError("glue: left root must be last in vertex order");
  if (tm.vertices.front().id != *tm.root)
    throw UsageError("glue: right root must be first in vertex order");
  PlumbingTree g;
  g.vertices = tp.vertices;
  g.edges = tp.edges;
  VertexId joint = *tp.root;
  VertexId next = g.fresh_id();
  std::map<VertexId, VertexId> remap;
  remap[*tm.root] = joint;
  for (std::size_t i = 1; i < tm.vertices.size(); ++i) {
    remap[tm.vertices[i].id] = next;
    g.vertices.push_back({next, tm.vertices[i].weight});
    ++next;
  }
  g.vertices[static_cast<std::size_t>(g.index_of(joint))].weight += tm.vertices.front().weight;
  for (const auto& e : tm.edges) g.edges.emplace_back(remap.at(e.first), remap.at(e.second));
  g.root.reset();
  g.validate();
  return g;
}

PlumbingTree split_tree(const PlumbingTree& t1, VertexId v1, const PlumbingTree& t2,
                        VertexId v2, Weight e) {
  if (t1.degree(v1) != 1 || t2.degree(v2) != 1)
    throw UsageError("split: attachment vertices must have degree 1");
  PlumbingTree g;
  g.vertices = t1.vertices;
  g.edges = t1.edges;
  VertexId next = g.fresh_id();
  std::map<VertexId, VertexId> remap;
  for (const auto& v : t2.vertices) {
    remap[v.id] = next;
    g.vertices.push_back({next, v.weight});
    ++next;
  }
  for (const auto& ed : t2.edges) g.edges.emplace_back(remap.at(ed.first), remap.at(ed.second));
  VertexId ve = next;
  VertexId v0 = next + 1;
  g.vertices.push_back({ve, e});
  g.vertices.push_back({v0, 0});
  g.edges.emplace_back(v1, ve);
  g.edges.emplace_back(remap.at(v2), ve);
  g.edges.emplace_back(ve, v0);
  g.validate();
  return g;
}

namespace {

PlumbingTree reorder(const PlumbingTree& t, const std::vector<int>& order) {
  PlumbingTree r = t;
  r.vertices.clear();
  for (int idx : order) r.vertices.push_back(t.vertices[static_cast<std::size_t>(idx)]);
  return r;
}

}  // namespace

PlumbingTree with_root_last(const PlumbingTree& t) {
  if (!t.root) throw UsageError("tree has no distinguished vertex");
  std::vector<int> order;
  int rootIdx = t.index_of(*t.root);
  for (int i = 0; i < t.size(); ++i)
    if (i != rootIdx) order.push_back(i);
  order.push_back(rootIdx);
  return reorder(t, order);
}

PlumbingTree with_root_first(const PlumbingTree& t) {
  if (!t.root) throw UsageError("tree has no distinguished vertex");
  return with_vertex_first(t, *t.root);
}

PlumbingTree with_vertex_first(const PlumbingTree& t, VertexId v) {
  std::vector<int> order;
  int idx = t.index_of(v);
  order.push_back(idx);
  for (int i = 0; i < t.size(); ++i)
    if (i != idx) order.push_back(i);
  return reorder(t, order);
}

std::string tree_to_json(const PlumbingTree& t) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : t.vertices) j["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  j["edges"] = json::array();
  for (const auto& e : t.edges) j["edges"].push_back({e.first, e.second});
  if (t.root) j["root"] = *t.root;
  return j.dump(2);
}

PlumbingTree tree_from_json(const std::string& text) {
  json j = json::parse(text);
  PlumbingTree t;
  for (const auto& v : j.at("vertices"))
    t.vertices.push_back({v.at("id").get<VertexId>(), v.at("weight").get<Weight>()});
  for (const auto& e : j.at("edges"))
    t.edges.emplace_back(e.at(0).get<VertexId>(), e.at(1).get<VertexId>());
  if (j.contains("root") && !j["root"].is_null()) t.root = j["root"].get<VertexId>();
  t.validate();
  return t;
}

namespace {

json move_to_json_obj(const NeumannMove& m) {
  json j;
  switch (m.kind) {
    case NeumannMove::Kind::A: j["kind"] = m.sign > 0 ? "A+" : "A-"; break;
    case NeumannMove::Kind::B: j["kind"] = m.sign > 0 ? "B+" : "B-"; break;
    case NeumannMove::Kind::C: j["kind"] = "C"; break;
  }
  if (m.inverse) j["inverse"] = true;
  j["at"] = m.at;
  if (m.kind == NeumannMove::Kind::A && !m.inverse) j["to"] = m.to;
  if (m.kind == NeumannMove::Kind::C && !m.inverse) {
    j["left_weight"] = m.left_weight;
    j["moved"] = m.moved;
  }
  return j;
}

NeumannMove move_from_json_obj(const json& j) {
  NeumannMove m;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "A+" || kind == "A-") {
    m.kind = NeumannMove::Kind::A;
    m.sign = kind == "A+" ? 1 : -1;
  } else if (kind == "B+" || kind == "B-") {
    m.kind = NeumannMove::Kind::B;
    m.sign = kind == "B+" ? 1 : -1;
  } else if (kind == "C") {
    m.kind = NeumannMove::Kind::C;
  } else {
    throw UsageError("unknown move kind: " + kind);
  }
  m.inverse = j.value("inverse", false);
  m.at = j.at("at").get<VertexId>();
  if (j.contains("to")) m.to = j["to"].get<VertexId>();
  if (j.contains("left_weight")) m.left_weight = j["left_weight"].get<Weight>();
  if (j.contains("moved")) m.moved = j["moved"].get<std::vector<VertexId>>();
  return m;
}

}  // namespace

std::string move_to_json(const NeumannMove& m) { return move_to_json_obj(m).dump(2); }

NeumannMove move_from_json(const std::string& text) {
  return move_from_json_obj(json::parse(text));
}

MoveScript script_from_json(const std::string& text) {
  json j = json::parse(text);
  MoveScript s;
  if (j.is_object()) {
    s.push_back(move_from_json_obj(j));
    return s;
  }
  for (const auto& e : j) s.push_back(move_from_json_obj(e));
  return s;
}

std::string script_to_json(const MoveScript& s) {
  json j = json::array();
  for (const auto& m : s) j.push_back(move_to_json_obj(m));
  return j.dump(2);
}

}  // namespace yplumb
