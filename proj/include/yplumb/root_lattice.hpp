#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "yplumb/errors.hpp"
#include "yplumb/numeric.hpp"

namespace yplumb {

/// Element of (1/2)Q in the simple-root basis, stored with doubled
/// coordinates so all arithmetic stays integral.  Elements of Q have
/// even doubled coordinates.
struct LatticeElement {
  CVec c2;

  static LatticeElement from_q(const CVec& coords) { return {2 * coords}; }
  bool in_root_lattice() const;
  CVec q_coords() const;  // requires in_root_lattice()

  LatticeElement operator+(const LatticeElement& o) const { return {c2 + o.c2}; }
  LatticeElement operator-(const LatticeElement& o) const { return {c2 - o.c2}; }
  LatticeElement operator-() const { return {-c2}; }
  bool operator==(const LatticeElement& o) const = default;
};

class RootLattice;

/// Element of the Weyl group of A_r, optionally extended by the lattice
/// involution iota = -1 (which lies outside W for r >= 2).
struct WeylElement {
  std::vector<std::uint8_t> perm;  // permutation of r+1 symbols
  bool neg = false;

  int rank() const { return static_cast<int>(perm.size()) - 1; }
  bool is_identity() const;
  WeylElement compose(const WeylElement& o) const;  // this applied after o
  WeylElement inverse() const;
  CMat action(const RootLattice& L) const;  // r x r on simple-root coords
  CVec apply(const RootLattice& L, const CVec& q_coords) const;
  LatticeElement apply(const RootLattice& L, const LatticeElement& x) const;

  /// Word length for plain elements; for iota-extended elements the
  /// value |Delta+| + l(perm), whose parity matches the Weyl
  /// denominator identity (-1)^{l(iota w)} = (-1)^{|Delta+|}(-1)^{l(w)}.
  int length(const RootLattice& L) const;
  int sign(const RootLattice& L) const;  // (-1)^{length}

  bool operator==(const WeylElement& o) const = default;
  bool operator<(const WeylElement& o) const;
};

class RootLattice {
 public:
  static constexpr std::size_t kDefaultWeylCap = 3628800;  // 10!

  char family() const { return family_; }
  int rank() const { return rank_; }
  const CMat& cartan() const { return cartan_; }
  const std::vector<CVec>& positive_roots() const { return positive_roots_; }
  const CVec& weyl_vector_doubled() const { return two_rho_; }  // 2*rho in Q
  LatticeElement rho() const { return {two_rho_}; }

  /// Exact pairing of Q-elements (integer result as a rational).
  Rat pairing_q(const CVec& a, const CVec& b) const;
  Rat pairing(const LatticeElement& a, const LatticeElement& b) const;
  Rat rho_pair_rho() const;  // <rho, rho>

  Coord height(const CVec& q_coords) const { return q_coords.sum(); }

  const std::vector<WeylElement>& weyl_elements() const;
  std::size_t weyl_order() const;
  WeylElement identity() const;
  WeylElement iota() const;  // the lattice map -1 (extended when -1 not in W)
  bool minus_one_in_weyl() const { return rank_ == 1; }

  /// Kostant partition function k(alpha) for alpha given in Q-coordinates.
  Int kostant_partition(const CVec& alpha) const;

  /// All cone points with height <= cap together with k(alpha) > 0.
  std::vector<std::pair<CVec, Int>> kostant_cone(Coord height_cap) const;

  /// u^T C^{-1} u with u the all-ones vector; used in window certificates
  /// via <alpha,alpha> >= height(alpha)^2 / kappa.
  Rat height_norm_bound() const { return kappa_; }

  friend RootLattice build_lattice(char family, int rank, std::size_t weyl_cap);

 private:
  char family_ = 'A';
  int rank_ = 0;
  std::size_t weyl_cap_ = kDefaultWeylCap;
  CMat cartan_;
  std::vector<CVec> positive_roots_;
  CVec two_rho_;
  Rat kappa_;
  mutable std::vector<WeylElement> weyl_;          // lazily enumerated
  mutable std::map<std::vector<Coord>, Int> kostant_memo_;
  mutable Coord kostant_cap_built_ = -1;
};

RootLattice build_lattice(char family, int rank,
                          std::size_t weyl_cap = RootLattice::kDefaultWeylCap);

/// Name of a Weyl element as a reduced word in the simple reflections,
/// e.g. "e", "s1*s2", "iota*s1".
std::string weyl_word(const RootLattice& L, const WeylElement& w);
WeylElement parse_weyl_word(const RootLattice& L, const std::string& word);

}  // namespace yplumb
