#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "yplumb/errors.hpp"
#include "yplumb/numeric.hpp"

namespace yplumb {

/// One (q, t, z) monomial.  q exponents are exact rationals; t and z
/// exponents are integer vectors in simple-root coordinates.
struct Monomial {
  Rat q;
  std::vector<Coord> t;
  std::vector<Coord> z;

  Coord t_height() const;
  Coord z_height() const;
  bool operator==(const Monomial& o) const;
  bool operator<(const Monomial& o) const;  // canonical order: (q, t, z) lex
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

/// A single certified region: the conjunction of the present bounds.
/// A box with no bounds certifies everything.
struct CertBox {
  std::optional<Rat> q_lo, q_hi;
  std::optional<Coord> t_lo;        // complete for t-height >= t_lo
  std::optional<Coord> z_lo, z_hi;  // complete for z-height in [z_lo, z_hi]

  bool contains(const Monomial& m) const;
  bool unconstrained() const;
};

/// Union of certified boxes, plus optional provable bounds on the true
/// z-support (used when pairing knot series).
struct TruncationWindow {
  std::vector<CertBox> boxes;
  std::optional<Coord> z_sup_lo, z_sup_hi;

  static TruncationWindow make_exact();
  static TruncationWindow none();
  bool exact() const;
  bool contains(const Monomial& m) const;
  bool empty() const { return boxes.empty(); }
  void push(CertBox b);
};

TruncationWindow intersect(const TruncationWindow& a, const TruncationWindow& b);

class Series {
 public:
  Series() = default;
  Series(int t_rank, int z_rank);

  int t_rank() const { return t_rank_; }
  int z_rank() const { return z_rank_; }

  const std::unordered_map<Monomial, Int, MonomialHash>& terms() const { return terms_; }
  const TruncationWindow& window() const { return window_; }
  TruncationWindow& window() { return window_; }
  void set_window(TruncationWindow w) { window_ = std::move(w); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Int coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Int& c);
  Series& negate();

  /// Drop stored terms outside the certified window (tidy reporting).
  Series restricted_to_window() const;

  std::vector<std::pair<Monomial, Int>> sorted_terms() const;

  std::string canonical_text() const;
  std::string window_text() const;

  // support statistics over stored terms
  std::optional<Rat> min_q() const;
  std::optional<Rat> max_q() const;
  std::optional<Coord> max_t_height() const;
  std::optional<Coord> min_z_height() const;
  std::optional<Coord> max_z_height() const;

  static Series constant(int t_rank, int z_rank, const Int& c);

 private:
  int t_rank_ = 0;
  int z_rank_ = 0;
  std::unordered_map<Monomial, Int, MonomialHash> terms_;
  TruncationWindow window_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);

/// Coefficient of z^alpha, a series in the remaining variables.
Series coeff_z(const Series& a, const std::vector<Coord>& alpha);
Series const_z(const Series& a);

std::string canonical_text(const Series& a);

/// Inverse of canonical_text on its image (round-trip checks).
Series parse_canonical(const std::string& text, int t_rank, int z_rank);

}  // namespace yplumb
