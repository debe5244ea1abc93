#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 80
  };
};

}  // namespace Eigen

namespace yplumb {

using Int = mpz_class;
using Rat = mpq_class;
using Coord = std::int64_t;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using IMat = Mat<Int>;
using IVec = Vec<Int>;
using QMat = Mat<Rat>;
using QVec = Vec<Rat>;
using CMat = Mat<Coord>;  // small exact integer data (coordinates, weights)
using CVec = Vec<Coord>;

inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

IMat to_int_mat(const CMat& m);
QMat to_rat_mat(const CMat& m);

/// Fraction-free determinant (Bareiss).
Int det_integer(const CMat& m);

/// Exact inverse by Gauss-Jordan over the rationals; nullopt when singular.
std::optional<QMat> inverse_rational(const CMat& m);

/// Adjugate: det * inverse, integral. Defined for every square matrix.
IMat adjugate(const CMat& m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int signature() const { return positive - negative; }
};

/// Inertia of a symmetric matrix by exact rational congruence
/// diagonalization. Zero diagonal pivots fall back to the 2x2
/// hyperbolic block rule (one +1, one -1).
Inertia symmetric_inertia(const CMat& sym);

struct SmithResult {
  std::vector<Int> diag;  // non-negative, d_i | d_{i+1}
  IMat left;              // unimodular U with U*A*V = D
};

/// Smith normal form of an integer matrix, tracking the left transform.
SmithResult smith_normal_form(const CMat& a);

/// Does an integral x with A x = b exist?  (column-style Hermite reduction)
bool integer_solvable(const IMat& a, const IVec& b);

/// Solve A x = b exactly over the rationals; nullopt when inconsistent
/// (A must have full column rank).
std::optional<QVec> solve_rational(const QMat& a, const QVec& b);

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Rat rat_of(const Int& n) { return Rat(n); }

/// Largest value of base + k/2 (k integral) strictly below `bound`.
Rat half_integer_below(const Rat& base, const Rat& bound);

}  // namespace yplumb
