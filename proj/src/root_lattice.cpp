#include "yplumb/root_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace yplumb {

bool LatticeElement::in_root_lattice() const {
  for (Eigen::Index i = 0; i < c2.size(); ++i)
    if (c2(i) % 2 != 0) return false;
  return true;
}

CVec LatticeElement::q_coords() const {
  if (!in_root_lattice()) throw IntegrityError("lattice element not in Q");
  return c2 / 2;
}

bool WeylElement::is_identity() const {
  if (neg) return false;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}

static WeylElement canonicalize(WeylElement w) {
  // for A_1 the involution -1 is the nontrivial group element
  if (w.neg && w.perm.size() == 2) {
    std::swap(w.perm[0], w.perm[1]);
    w.neg = false;
  }
  return w;
}

WeylElement WeylElement::compose(const WeylElement& o) const {
  WeylElement r;
  r.perm.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) r.perm[i] = perm[o.perm[i]];
  r.neg = neg != o.neg;
  return canonicalize(r);
}

WeylElement WeylElement::inverse() const {
  WeylElement r;
  r.perm.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) r.perm[perm[i]] = static_cast<std::uint8_t>(i);
  r.neg = neg;
  return canonicalize(r);
}

CMat WeylElement::action(const RootLattice& L) const {
  const int r = L.rank();
  CMat m(r, r);
  // column k: image of alpha_{k+1}
  for (int k = 0; k < r; ++k) {
    CVec c = CVec::Zero(r);
    c(k) = 1;
    CVec img = apply(L, c);
    for (int i = 0; i < r; ++i) m(i, k) = img(i);
  }
  return m;
}

CVec WeylElement::apply(const RootLattice& L, const CVec& q_coords) const {
  const int r = L.rank();
  // simple-root coords -> e-basis of A_r
  std::vector<Coord> u(static_cast<std::size_t>(r) + 1);
  for (int j = 0; j <= r; ++j) {
    Coord cj1 = (j < r) ? q_coords(j) : 0;
    Coord cj = (j > 0) ? q_coords(j - 1) : 0;
    u[static_cast<std::size_t>(j)] = cj1 - cj;
  }
  std::vector<Coord> v(static_cast<std::size_t>(r) + 1);
  for (int j = 0; j <= r; ++j) v[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] = u[static_cast<std::size_t>(j)];
  CVec out(r);
  Coord acc = 0;
  for (int k = 0; k < r; ++k) {
    acc += v[static_cast<std::size_t>(k)];
    out(k) = acc;
  }
  if (neg) out = -out;
  return out;
}

LatticeElement WeylElement::apply(const RootLattice& L, const LatticeElement& x) const {
  // doubled coordinates transform linearly
  CVec img = apply(L, x.c2);
  return {img};
}

static int inversions(const std::vector<std::uint8_t>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv;
}

int WeylElement::length(const RootLattice& L) const {
  int l = inversions(perm);
  if (neg) l += static_cast<int>(L.positive_roots().size());
  return l;
}

int WeylElement::sign(const RootLattice& L) const { return length(L) % 2 == 0 ? 1 : -1; }

bool WeylElement::operator<(const WeylElement& o) const {
  if (neg != o.neg) return !neg;
  return perm < o.perm;
}

RootLattice build_lattice(char family, int rank, std::size_t weyl_cap) {
  if (family != 'A') throw UsageError("unsupported root lattice family (A_r shipped)");
  if (rank < 1) throw UsageError("lattice rank must be positive");
  RootLattice L;
  L.family_ = family;
  L.rank_ = rank;
  L.weyl_cap_ = weyl_cap;
  L.cartan_ = CMat::Zero(rank, rank);
  for (int i = 0; i < rank; ++i) {
    L.cartan_(i, i) = 2;
    if (i + 1 < rank) {
      L.cartan_(i, i + 1) = -1;
      L.cartan_(i + 1, i) = -1;
    }
  }
  for (int i = 0; i < rank; ++i)
    for (int j = i; j < rank; ++j) {
      CVec root = CVec::Zero(rank);
      for (int k = i; k <= j; ++k) root(k) = 1;
      L.positive_roots_.push_back(root);
    }
  L.two_rho_ = CVec::Zero(rank);
  for (const auto& root : L.positive_roots_) L.two_rho_ += root;

  QMat cinv_in;
  {
    auto inv = inverse_rational(L.cartan_);
    if (!inv) throw IntegrityError("Cartan matrix singular");
    cinv_in = *inv;
  }
  Rat kappa = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) kappa += cinv_in(i, j);
  L.kappa_ = kappa;
  return L;
}

Rat RootLattice::pairing_q(const CVec& a, const CVec& b) const {
  if (a.size() != rank_ || b.size() != rank_) throw UsageError("pairing: rank mismatch");
  Int acc = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      acc += Int(static_cast<long>(a(i))) * static_cast<long>(cartan_(i, j)) * static_cast<long>(b(j));
  return Rat(acc);
}

Rat RootLattice::pairing(const LatticeElement& a, const LatticeElement& b) const {
  Rat p = pairing_q(a.c2, b.c2);
  p /= 4;
  p.canonicalize();
  return p;
}

Rat RootLattice::rho_pair_rho() const { return pairing(rho(), rho()); }

std::size_t RootLattice::weyl_order() const {
  std::size_t n = 1;
  for (int i = 2; i <= rank_ + 1; ++i) n *= static_cast<std::size_t>(i);
  return n;
}

const std::vector<WeylElement>& RootLattice::weyl_elements() const {
  if (!weyl_.empty()) return weyl_;
  if (weyl_order() > weyl_cap_)
    throw ResourceError("Weyl group order exceeds enumeration cap");
  std::vector<std::uint8_t> p(static_cast<std::size_t>(rank_) + 1);
  std::iota(p.begin(), p.end(), 0);
  do {
    weyl_.push_back(WeylElement{p, false});
  } while (std::next_permutation(p.begin(), p.end()));
  return weyl_;
}

WeylElement RootLattice::identity() const {
  std::vector<std::uint8_t> p(static_cast<std::size_t>(rank_) + 1);
  std::iota(p.begin(), p.end(), 0);
  return WeylElement{p, false};
}

WeylElement RootLattice::iota() const {
  WeylElement w = identity();
  w.neg = true;
  return canonicalize(w);
}

void ensure_cone(const RootLattice& L, Coord cap, std::map<std::vector<Coord>, Int>& memo,
                 Coord& built);

Int RootLattice::kostant_partition(const CVec& alpha) const {
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (alpha(i) < 0) return 0;
  Coord h = alpha.sum();
  ensure_cone(*this, h, kostant_memo_, kostant_cap_built_);
  std::vector<Coord> key(alpha.data(), alpha.data() + alpha.size());
  auto it = kostant_memo_.find(key);
  return it == kostant_memo_.end() ? Int(0) : it->second;
}

static void enumerate_cone(int rank, Coord cap, CVec& cur, int pos,
                           std::vector<std::vector<Coord>>& out) {
  if (pos == rank) {
    out.emplace_back(cur.data(), cur.data() + rank);
    return;
  }
  Coord used = 0;
  for (int i = 0; i < pos; ++i) used += cur(i);
  for (Coord v = 0; v <= cap - used; ++v) {
    cur(pos) = v;
    enumerate_cone(rank, cap, cur, pos + 1, out);
  }
  cur(pos) = 0;
}

void ensure_cone(const RootLattice& L, Coord cap, std::map<std::vector<Coord>, Int>& memo,
                 Coord& built) {
  if (cap <= built) return;
  memo.clear();
  std::vector<std::vector<Coord>> pts;
  CVec cur = CVec::Zero(L.rank());
  enumerate_cone(L.rank(), cap, cur, 0, pts);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    Coord ha = std::accumulate(a.begin(), a.end(), Coord(0));
    Coord hb = std::accumulate(b.begin(), b.end(), Coord(0));
    if (ha != hb) return ha < hb;
    return a < b;
  });
  for (auto& p : pts) memo[p] = 0;
  memo[std::vector<Coord>(static_cast<std::size_t>(L.rank()), 0)] = 1;
  // unbounded-knapsack over the positive roots, one root at a time
  for (const auto& root : L.positive_roots()) {
    for (auto& p : pts) {
      std::vector<Coord> prev(p);
      bool ok = true;
      for (int i = 0; i < L.rank(); ++i) {
        prev[static_cast<std::size_t>(i)] -= root(i);
        if (prev[static_cast<std::size_t>(i)] < 0) ok = false;
      }
      if (!ok) continue;
      auto it = memo.find(prev);
      if (it != memo.end() && it->second != 0) memo[p] += it->second;
    }
  }
  built = cap;
}

std::vector<std::pair<CVec, Int>> RootLattice::kostant_cone(Coord height_cap) const {
  ensure_cone(*this, height_cap, kostant_memo_, kostant_cap_built_);
  std::vector<std::pair<CVec, Int>> out;
  for (const auto& [key, val] : kostant_memo_) {
    Coord h = std::accumulate(key.begin(), key.end(), Coord(0));
    if (h > height_cap) continue;
    CVec c(rank_);
    for (int i = 0; i < rank_; ++i) c(i) = key[static_cast<std::size_t>(i)];
    out.emplace_back(c, val);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    Coord ha = a.first.sum(), hb = b.first.sum();
    if (ha != hb) return ha < hb;
    for (Eigen::Index i = 0; i < a.first.size(); ++i)
      if (a.first(i) != b.first(i)) return a.first(i) < b.first(i);
    return false;
  });
  return out;
}

std::string weyl_word(const RootLattice& L, const WeylElement& w) {
  std::vector<std::string> parts;
  if (w.neg) parts.push_back("iota");
  std::vector<std::uint8_t> p = w.perm;
  std::vector<std::string> suffix;
  // peel right descents: w = w' * s_i shortens w
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i + 1 <= L.rank(); ++i) {
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(i) + 1]) {
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i) + 1]);
        suffix.push_back("s" + std::to_string(i + 1));
        progress = true;
        break;
      }
    }
  }
  // suffix was collected innermost-first
  for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) parts.push_back(*it);
  if (parts.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "*";
    out += parts[i];
  }
  return out;
}

WeylElement parse_weyl_word(const RootLattice& L, const std::string& word) {
  WeylElement acc = L.identity();
  std::stringstream ss(word);
  std::string tok;
  while (std::getline(ss, tok, '*')) {
    if (tok.empty() || tok == "e" || tok == "identity" || tok == "1") continue;
    if (tok == "iota" || tok == "i") {
      acc = acc.compose(L.iota());
      continue;
    }
    if (tok.size() >= 2 && tok[0] == 's') {
      int i = std::stoi(tok.substr(1));
      if (i < 1 || i > L.rank()) throw UsageError("reflection index out of range: " + tok);
      WeylElement s = L.identity();
      std::swap(s.perm[static_cast<std::size_t>(i - 1)], s.perm[static_cast<std::size_t>(i)]);
      acc = acc.compose(s);
      continue;
    }
    throw UsageError("cannot parse Weyl word token: " + tok);
  }
  return acc;
}

}  // namespace yplumb
