#include "yplumb/numeric.hpp"

#include <stdexcept>

namespace yplumb {

IMat to_int_mat(const CMat& m) {
  IMat r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Int(static_cast<long>(m(i, j)));
  return r;
}

QMat to_rat_mat(const CMat& m) {
  QMat r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rat(static_cast<long>(m(i, j)));
  return r;
}

Int det_integer(const CMat& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det: matrix not square");
  if (n == 0) return 1;
  IMat a = to_int_mat(m);
  Int prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

std::optional<QMat> inverse_rational(const CMat& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  QMat a = to_rat_mat(m);
  QMat inv = QMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) inv(i, i) = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (a(i, k) != 0) { p = i; break; }
    if (p < 0) return std::nullopt;
    if (p != k) {
      a.row(k).swap(a.row(p));
      inv.row(k).swap(inv.row(p));
    }
    Rat piv = a(k, k);
    for (Eigen::Index j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (Eigen::Index j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

IMat adjugate(const CMat& m) {
  const Eigen::Index n = m.rows();
  IMat adj(n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  CMat minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Index mi = 0;
      for (Eigen::Index r = 0; r < n; ++r) {
        if (r == i) continue;
        Eigen::Index mj = 0;
        for (Eigen::Index c = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mi, mj) = m(r, c);
          ++mj;
        }
        ++mi;
      }
      Int cof = det_integer(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Int(-cof);
    }
  }
  return adj;
}

Inertia symmetric_inertia(const CMat& sym) {
  const Eigen::Index n = sym.rows();
  QMat a = to_rat_mat(sym);
  Inertia res;
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  Eigen::Index k = 0;
  while (k < n) {
    if (done[static_cast<std::size_t>(k)]) { ++k; continue; }
    if (a(k, k) == 0) {
      // try to swap in a later nonzero diagonal entry
      Eigen::Index d = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (!done[static_cast<std::size_t>(i)] && a(i, i) != 0) { d = i; break; }
      if (d >= 0) {
        a.row(k).swap(a.row(d));
        a.col(k).swap(a.col(d));
      } else {
        // all remaining diagonal zero: find off-diagonal pivot
        Eigen::Index j = -1;
        for (Eigen::Index i = k + 1; i < n; ++i)
          if (!done[static_cast<std::size_t>(i)] && a(k, i) != 0) { j = i; break; }
        if (j < 0) {
          bool rowzero = true;
          for (Eigen::Index i = 0; i < n; ++i)
            if (!done[static_cast<std::size_t>(i)] && i != k && a(k, i) != 0) rowzero = false;
          if (rowzero) {
            res.zero++;
            done[static_cast<std::size_t>(k)] = true;
            ++k;
            continue;
          }
          // pivot hides among earlier-indexed live rows; permute
          for (Eigen::Index i = 0; i < n; ++i)
            if (!done[static_cast<std::size_t>(i)] && i != k && a(k, i) != 0) { j = i; break; }
        }
        // hyperbolic 2x2 block on (k, j): one +1, one -1
        Rat b = a(k, j);
        for (Eigen::Index i = 0; i < n; ++i) {
          if (done[static_cast<std::size_t>(i)] || i == k || i == j) continue;
          Rat fk = a(i, j) / b;  // eliminate column j entry via row k
          Rat fj = a(i, k) / b;  // eliminate column k entry via row j
          for (Eigen::Index c = 0; c < n; ++c) a(i, c) -= fk * a(k, c) + fj * a(j, c);
          for (Eigen::Index r = 0; r < n; ++r) a(r, i) -= fk * a(r, k) + fj * a(r, j);
        }
        res.positive++;
        res.negative++;
        done[static_cast<std::size_t>(k)] = true;
        done[static_cast<std::size_t>(j)] = true;
        ++k;
        continue;
      }
    }
    Rat piv = a(k, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (done[static_cast<std::size_t>(i)] || i == k || a(i, k) == 0) continue;
      Rat f = a(i, k) / piv;
      for (Eigen::Index c = 0; c < n; ++c) a(i, c) -= f * a(k, c);
      for (Eigen::Index r = 0; r < n; ++r) a(r, i) -= f * a(r, k);
    }
    if (piv > 0)
      res.positive++;
    else
      res.negative++;
    done[static_cast<std::size_t>(k)] = true;
    ++k;
  }
  return res;
}

SmithResult smith_normal_form(const CMat& input) {
  const Eigen::Index n = input.rows();
  const Eigen::Index m = input.cols();
  IMat a = to_int_mat(input);
  IMat u = IMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) u(i, i) = 1;

  Eigen::Index t = 0;
  while (t < n && t < m) {
    // find nonzero pivot
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index i = t; i < n && pi < 0; ++i)
      for (Eigen::Index j = t; j < m; ++j)
        if (a(i, j) != 0) { pi = i; pj = j; break; }
    if (pi < 0) break;
    a.row(t).swap(a.row(pi));
    u.row(t).swap(u.row(pi));
    a.col(t).swap(a.col(pj));

    bool again = true;
    while (again) {
      again = false;
      for (Eigen::Index i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        if (mpz_divisible_p(a(i, t).get_mpz_t(), a(t, t).get_mpz_t())) {
          Int q = a(i, t) / a(t, t);
          a.row(i) -= q * a.row(t);
          u.row(i) -= q * u.row(t);
        } else {
          Int q = floor_div(a(i, t), a(t, t));
          a.row(i) -= q * a.row(t);
          u.row(i) -= q * u.row(t);
          a.row(t).swap(a.row(i));
          u.row(t).swap(u.row(i));
          again = true;
        }
      }
      for (Eigen::Index j = t + 1; j < m; ++j) {
        if (a(t, j) == 0) continue;
        if (mpz_divisible_p(a(t, j).get_mpz_t(), a(t, t).get_mpz_t())) {
          Int q = a(t, j) / a(t, t);
          a.col(j) -= q * a.col(t);
        } else {
          Int q = floor_div(a(t, j), a(t, t));
          a.col(j) -= q * a.col(t);
          a.col(t).swap(a.col(j));
          again = true;
        }
      }
      if (!again) {
        // ensure pivot divides the rest of the block
        for (Eigen::Index i = t + 1; i < n && !again; ++i)
          for (Eigen::Index j = t + 1; j < m && !again; ++j)
            if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
              a.row(t) += a.row(i);
              u.row(t) += u.row(i);
              again = true;
            }
      }
    }
    ++t;
  }

  SmithResult res;
  res.diag.resize(static_cast<std::size_t>(std::min(n, m)), Int(0));
  for (Eigen::Index i = 0; i < std::min(n, m); ++i) {
    Int d = a(i, i);
    if (d < 0) {
      d = -d;
      a.row(i) = -a.row(i);
      u.row(i) = -u.row(i);
    }
    res.diag[static_cast<std::size_t>(i)] = d;
  }
  res.left = u;
  return res;
}

bool integer_solvable(const IMat& a0, const IVec& b0) {
  // column Hermite reduction: gcd columns left to right
  IMat a = a0;
  IVec b = b0;
  const Eigen::Index n = a.rows();
  const Eigen::Index m = a.cols();
  Eigen::Index row = 0, col = 0;
  while (row < n && col < m) {
    // gcd-reduce columns col..m-1 against row 'row'
    while (true) {
      Eigen::Index p = -1;
      for (Eigen::Index j = col; j < m; ++j)
        if (a(row, j) != 0) {
          if (p < 0 || abs(a(row, j)) < abs(a(row, p))) p = j;
        }
      if (p < 0) break;
      a.col(col).swap(a.col(p));
      bool clean = true;
      for (Eigen::Index j = col + 1; j < m; ++j) {
        if (a(row, j) == 0) continue;
        Int q = a(row, j) / a(row, col);
        a.col(j) -= q * a.col(col);
        if (a(row, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) {
      if (b(row) != 0) return false;
      ++row;
      continue;
    }
    if (!mpz_divisible_p(b(row).get_mpz_t(), a(row, col).get_mpz_t())) return false;
    Int q = b(row) / a(row, col);
    b -= q * a.col(col);
    ++row;
    ++col;
  }
  for (; row < n; ++row)
    if (b(row) != 0) return false;
  return true;
}

std::optional<QVec> solve_rational(const QMat& a0, const QVec& b0) {
  QMat a = a0;
  QVec b = b0;
  const Eigen::Index n = a.rows();
  const Eigen::Index m = a.cols();
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m && row < n; ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = row; i < n; ++i)
      if (a(i, col) != 0) { p = i; break; }
    if (p < 0) continue;
    a.row(row).swap(a.row(p));
    std::swap(b(row), b(p));
    Rat piv = a(row, col);
    for (Eigen::Index j = col; j < m; ++j) a(row, j) /= piv;
    b(row) /= piv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (Eigen::Index j = col; j < m; ++j) a(i, j) -= f * a(row, j);
      b(i) -= f * b(row);
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (Eigen::Index i = row; i < n; ++i)
    if (b(i) != 0) return std::nullopt;
  QVec x = QVec::Zero(m);
  for (Eigen::Index i = 0; i < row; ++i) x(pivot_col[static_cast<std::size_t>(i)]) = b(i);
  return x;
}

Rat half_integer_below(const Rat& base, const Rat& bound) {
  Rat t = (bound - base) * 2;
  Int k;
  mpz_fdiv_q(k.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  if (Rat(k) == t) k -= 1;
  Rat r = base + Rat(k) / 2;
  r.canonicalize();
  return r;
}

}  // namespace yplumb
