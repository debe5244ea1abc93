#include "yplumb/spinc.hpp"

#include <algorithm>

namespace yplumb {

CMat spinc_delta(const PlumbingTree& t, const RootLattice& L) {
  const int s = t.size();
  CMat d(s, L.rank());
  for (int i = 0; i < s; ++i) {
    Coord f = 2 - t.degree(t.vertices[static_cast<std::size_t>(i)].id);
    d.row(i) = f * L.weyl_vector_doubled().transpose();
  }
  return d;
}

CMat spinc_delta_hat(const PlumbingTree& t, const RootLattice& L) {
  if (!t.root) throw UsageError("delta_hat needs a distinguished vertex");
  CMat d = spinc_delta(t, L);
  d.row(t.index_of(*t.root)) -= L.weyl_vector_doubled().transpose();
  return d;
}

namespace {

bool even_difference(const CMat& x, const CMat& y) {
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      if ((x(i, j) - y(i, j)) % 2 != 0) return false;
  return true;
}

}  // namespace

bool in_delta_coset(const PlumbingTree& t, const RootLattice& L, const CMat& rep) {
  if (rep.rows() != t.size() || rep.cols() != L.rank()) return false;
  return even_difference(rep, spinc_delta(t, L));
}

bool in_delta_hat_coset(const PlumbingTree& t, const RootLattice& L, const CMat& rep) {
  if (rep.rows() != t.size() || rep.cols() != L.rank()) return false;
  return even_difference(rep, spinc_delta_hat(t, L));
}

bool same_class(const PlumbingTree& t, const RootLattice& L, const CMat& x, const CMat& y) {
  if (x.rows() != t.size() || y.rows() != t.size()) throw UsageError("rep size mismatch");
  FramingMatrix f = framing_matrix(t);
  if (f.det == 0) throw UnsupportedError("same_class needs det B != 0");
  if (!even_difference(x, y)) return false;
  CMat half = (x - y) / 2;
  IMat adj = adjugate(f.entries);
  IMat prod = adj * to_int_mat(half);
  for (Eigen::Index i = 0; i < prod.rows(); ++i)
    for (Eigen::Index j = 0; j < prod.cols(); ++j)
      if (!mpz_divisible_p(prod(i, j).get_mpz_t(), f.det.get_mpz_t())) return false;
  return true;
}

bool rel_same_class(const PlumbingTree& t, const RootLattice& L, const CMat& x,
                    const CMat& y) {
  if (!t.root) throw UsageError("relative classes need a distinguished vertex");
  if (!even_difference(x, y)) return false;
  const int s = t.size();
  const int rdx = t.index_of(*t.root);
  CMat b = framing_matrix(t).entries;
  IMat cols(s, s - 1);
  int c = 0;
  for (int j = 0; j < s; ++j) {
    if (j == rdx) continue;
    for (int i = 0; i < s; ++i) cols(i, c) = Int(static_cast<long>(b(i, j)));
    ++c;
  }
  CMat half = (x - y) / 2;
  for (int col = 0; col < L.rank(); ++col) {
    IVec target(s);
    for (int i = 0; i < s; ++i) target(i) = Int(static_cast<long>(half(i, col)));
    if (!integer_solvable(cols, target)) return false;
  }
  return true;
}

std::vector<CMat> spinc_classes(const PlumbingTree& t, const RootLattice& L,
                                std::size_t cap) {
  FramingMatrix f = framing_matrix(t);
  if (f.det == 0) throw UnsupportedError("Spin^c enumeration needs det B != 0");
  const int s = t.size();
  const int r = L.rank();
  SmithResult snf = smith_normal_form(f.entries);

  Int count = 1;
  for (const Int& d : snf.diag) count *= d;
  Int total = 1;
  for (int i = 0; i < r; ++i) total *= count;
  if (total > Int(static_cast<unsigned long>(cap)))
    throw ResourceError("Spin^c class count exceeds cap");

  // columns of U^{-1} = integral since U is unimodular
  QMat uinv_q;
  {
    CMat u(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) u(i, j) = static_cast<Coord>(snf.left(i, j).get_si());
    auto inv = inverse_rational(u);
    if (!inv) throw IntegrityError("SNF left transform not invertible");
    uinv_q = *inv;
  }
  CMat uinv(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      Rat v = uinv_q(i, j);
      if (v.get_den() != 1) throw IntegrityError("SNF left transform not unimodular");
      uinv(i, j) = static_cast<Coord>(v.get_num().get_si());
    }

  CMat delta = spinc_delta(t, L);
  // odometer over r independent class groups
  std::vector<std::vector<Coord>> digits(static_cast<std::size_t>(r),
                                         std::vector<Coord>(static_cast<std::size_t>(s), 0));
  std::vector<Coord> moduli(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) moduli[static_cast<std::size_t>(i)] = snf.diag[static_cast<std::size_t>(i)].get_si();

  std::vector<CMat> out;
  bool done = false;
  while (!done) {
    CMat x(s, r);
    for (int col = 0; col < r; ++col) {
      CVec cvec(s);
      for (int i = 0; i < s; ++i) cvec(i) = digits[static_cast<std::size_t>(col)][static_cast<std::size_t>(i)];
      x.col(col) = uinv * cvec;
    }
    out.push_back(delta + 2 * x);
    // increment odometer
    done = true;
    for (int col = 0; col < r && done; ++col) {
      for (int i = 0; i < s; ++i) {
        auto& dig = digits[static_cast<std::size_t>(col)][static_cast<std::size_t>(i)];
        if (dig + 1 < moduli[static_cast<std::size_t>(i)]) {
          ++dig;
          done = false;
          break;
        }
        dig = 0;
      }
    }
  }

  for (auto& rep : out) rep = canonical_rep(t, L, rep);
  std::sort(out.begin(), out.end(), [](const CMat& a, const CMat& b) {
    Coord sa = a.cwiseAbs().sum(), sb = b.cwiseAbs().sum();
    if (sa != sb) return sa < sb;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    return false;
  });
  return out;
}

CMat weyl_act(const RootLattice& L, const WeylElement& w, const CMat& rep) {
  CMat out(rep.rows(), rep.cols());
  for (Eigen::Index i = 0; i < rep.rows(); ++i) {
    CVec row = rep.row(i).transpose();
    out.row(i) = w.apply(L, row).transpose();
  }
  return out;
}

CMat canonical_rep(const PlumbingTree& t, const RootLattice& L, const CMat& rep) {
  FramingMatrix f = framing_matrix(t);
  if (f.det == 0 || !f.inverse) return rep;
  const int s = t.size();
  const int r = L.rank();
  CMat delta = spinc_delta(t, L);
  CMat out = rep;
  for (int col = 0; col < r; ++col) {
    QVec diff(s);
    for (int i = 0; i < s; ++i) diff(i) = Rat(static_cast<long>(rep(i, col) - delta(i, col)), 2);
    QVec v = (*f.inverse) * diff;
    CVec rounded(s);
    for (int i = 0; i < s; ++i) {
      // round to nearest, ties toward -inf: floor(v + 1/2 - eps) == ceil(v - 1/2)
      Rat shifted = v(i) + make_rat(1, 2);
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
      if (Rat(fl) == shifted) fl -= 1;  // half-integers round down
      rounded(i) = static_cast<Coord>(fl.get_si());
    }
    for (int i = 0; i < s; ++i) {
      Coord shift = 0;
      for (int j = 0; j < s; ++j) shift += 2 * f.entries(i, j) * rounded(j);
      out(i, col) = rep(i, col) - shift;
    }
  }
  return out;
}

CMat glue_spinc(const PlumbingTree& tp, const PlumbingTree& tm, const CMat& ap,
                const CMat& am) {
  if (!tp.root || !tm.root) throw UsageError("gluing needs rooted trees");
  if (tp.vertices.back().id != *tp.root || tm.vertices.front().id != *tm.root)
    throw UsageError("gluing convention: roots last/first");
  const int m = tp.size();
  const int n = tm.size();
  CMat out(m + n - 1, ap.cols());
  for (int i = 0; i + 1 < m; ++i) out.row(i) = ap.row(i);
  out.row(m - 1) = ap.row(m - 1) + am.row(0);
  for (int i = 1; i < n; ++i) out.row(m - 1 + i) = am.row(i);
  return out;
}

std::pair<CMat, CMat> lambda_mu_act(const PlumbingTree& tp, const PlumbingTree& tm,
                                    const CVec& gamma, BoundaryGen gen, const CMat& ap,
                                    const CMat& am) {
  CMat bp = ap;
  CMat bm = am;
  const int m = tp.size();
  if (gen == BoundaryGen::Lambda) {
    CMat Bp = framing_matrix(tp).entries;
    CMat Bm = framing_matrix(tm).entries;
    for (int i = 0; i < m; ++i) bp.row(i) += 2 * Bp(i, m - 1) * gamma.transpose();
    for (int i = 0; i < tm.size(); ++i) bm.row(i) += 2 * Bm(i, 0) * gamma.transpose();
  } else {
    bp.row(m - 1) += 2 * gamma.transpose();
    bm.row(0) -= 2 * gamma.transpose();
  }
  return {bp, bm};
}

Rat rep_self_pairing(const PlumbingTree& t, const RootLattice& L, const CMat& rep) {
  FramingMatrix f = framing_matrix(t);
  if (!f.inverse) throw UnsupportedError("pairing needs det B != 0");
  const int s = t.size();
  IMat adj = adjugate(f.entries);
  Int acc = 0;
  const CMat& C = L.cartan();
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      // <rep_i, rep_j> in Q
      Coord pair = 0;
      for (int a = 0; a < L.rank(); ++a)
        for (int b = 0; b < L.rank(); ++b) pair += rep(i, a) * C(a, b) * rep(j, b);
      acc += adj(i, j) * static_cast<long>(pair);
    }
  Rat res(acc, f.det);
  res.canonicalize();
  return res;
}

}  // namespace yplumb
