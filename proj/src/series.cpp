#include "yplumb/series.hpp"

#include <algorithm>
#include <thread>

namespace yplumb {

Rat front_factor_exponent(const RootLattice& L, const FramingMatrix& fm) {
  Coord tr = 0;
  for (Eigen::Index i = 0; i < fm.entries.rows(); ++i) tr += fm.entries(i, i);
  Rat r = Rat(3 * fm.sigma - tr) * L.rho_pair_rho() / 2;
  r.canonicalize();
  return r;
}

int front_factor_sign(const RootLattice& L, const FramingMatrix& fm) {
  std::size_t n = L.positive_roots().size() * static_cast<std::size_t>(fm.pi);
  return n % 2 == 0 ? 1 : -1;
}

CVec t_exponent(const RootLattice& L, const WeylAssignment& xi, const CMat& ell) {
  CVec acc = CVec::Zero(L.rank());
  for (Eigen::Index i = 0; i < ell.rows(); ++i) {
    CVec row = ell.row(i).transpose();
    acc += xi.values[static_cast<std::size_t>(i)].inverse().apply(L, row);
  }
  return acc;
}

Int coefficient_c(const PlumbingTree& t, const RootLattice& L, const WeylAssignment& xi,
                  const CMat& ell, KostantDepth depth) {
  (void)depth;  // coefficients are computed exactly, not from truncations
  Int acc = 1;
  for (int i = 0; i < t.size(); ++i) {
    int deg = t.degree(t.vertices[static_cast<std::size_t>(i)].id);
    CVec beta = ell.row(i).transpose();
    Int f = collection_coefficient(L, xi.values[static_cast<std::size_t>(i)], deg, beta);
    if (f == 0) return 0;
    acc *= f;
  }
  return acc;
}

namespace {

struct SupportElem {
  CVec ell;
  Int coeff;
  CVec tpre;  // xi_v^{-1}(ell)
};

std::vector<SupportElem> build_support(const RootLattice& L, const WeylElement& x, int n,
                                       Coord depth) {
  std::vector<SupportElem> out;
  const CVec& two_rho = L.weyl_vector_doubled();
  WeylElement xinv = x.inverse();
  if (n == 0) {
    std::map<std::vector<Coord>, Int> acc;
    for (const auto& w1 : L.weyl_elements())
      for (const auto& w2 : L.weyl_elements()) {
        CVec e = w1.apply(L, two_rho) + w2.apply(L, two_rho);
        std::vector<Coord> key(e.data(), e.data() + e.size());
        acc[key] += Int(w1.sign(L) * w2.sign(L));
      }
    for (const auto& [key, c] : acc) {
      if (c == 0) continue;
      CVec e(L.rank());
      for (int i = 0; i < L.rank(); ++i) e(i) = key[static_cast<std::size_t>(i)];
      out.push_back({e, c, xinv.apply(L, e)});
    }
    return out;
  }
  if (n == 1) {
    for (const auto& w : L.weyl_elements()) {
      CVec e = w.apply(L, two_rho);
      out.push_back({e, Int(w.sign(L)), xinv.apply(L, e)});
    }
    return out;
  }
  if (n == 2) {
    CVec zero = CVec::Zero(L.rank());
    out.push_back({zero, Int(1), zero});
    return out;
  }
  const int m = n - 2;
  const int sgn = x.sign(L);
  bool neg = (sgn < 0) && (m % 2 == 1);
  for (const auto& [A, kA] : L.kostant_cone(depth)) {
    Int c = (m == 1) ? kA : kostant_convolved(L, m, A);
    if (c == 0) continue;
    CVec inner = m * two_rho + 2 * A;
    CVec e = -x.apply(L, inner);
    out.push_back({e, neg ? Int(-c) : c, CVec(-inner)});
  }
  return out;
}

struct Engine {
  const PlumbingTree* tree = nullptr;
  const RootLattice* L = nullptr;
  FramingMatrix fm;
  IMat adj;
  Int det8;  // 8 * det
  Rat pre;
  int sign = 1;
  CMat a;
  std::vector<std::vector<SupportElem>> supports;

  Rat q_exponent(const CMat& ell) const {
    const int s = tree->size();
    const CMat& C = L->cartan();
    Int weighted = 0;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        Coord pair = 0;
        for (int u = 0; u < L->rank(); ++u)
          for (int v = 0; v < L->rank(); ++v) pair += ell(i, u) * C(u, v) * ell(j, v);
        weighted += adj(i, j) * static_cast<long>(pair);
      }
    Rat r = pre - Rat(weighted, det8);
    r.canonicalize();
    return r;
  }
};

Coord max_tpre_height(const std::vector<SupportElem>& sup) {
  Coord m = std::numeric_limits<Coord>::min();
  for (const auto& e : sup) m = std::max(m, e.tpre.sum());
  return m;
}

Rat schur_tail_bound(const RootLattice& L, Coord diag_abs, Coord depth) {
  // min over omitted alpha (height >= depth+1) of <2rho+2a,2rho+2a>/(8|B_vv|)
  Rat rr = L.rho_pair_rho();
  Coord h = depth + 1;
  Rat norm = 4 * rr + Rat(8 * h) + Rat(4 * h * h) / L.height_norm_bound();
  Rat bound = norm / Rat(8 * diag_abs);
  bound.canonicalize();
  return bound;
}

Rat half_integer_above(const Rat& base, const Rat& bound) {
  Rat t = (bound - base) * 2;
  Int k;
  mpz_cdiv_q(k.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  if (Rat(k) == t) k += 1;
  Rat r = base + Rat(k) / 2;
  r.canonicalize();
  return r;
}

void run_combos(const Engine& eng, int workers,
                const std::function<void(Series&, const CMat&, const Int&, const CVec&)>& emit,
                Series& out) {
  const int s = eng.tree->size();
  std::size_t total = 1;
  for (const auto& sup : eng.supports) total *= sup.size();
  if (total == 0) return;
  workers = std::max(1, workers);

  auto worker = [&](std::size_t lo, std::size_t hi, Series& local) {
    CMat ell(s, eng.L->rank());
    for (std::size_t idx = lo; idx < hi; ++idx) {
      std::size_t rem = idx;
      Int coeff = 1;
      CVec tpre = CVec::Zero(eng.L->rank());
      for (int i = 0; i < s; ++i) {
        const auto& sup = eng.supports[static_cast<std::size_t>(i)];
        const SupportElem& e = sup[rem % sup.size()];
        rem /= sup.size();
        ell.row(i) = e.ell.transpose();
        coeff *= e.coeff;
        tpre += e.tpre;
      }
      // membership: adj * (ell - a)/2 must vanish mod det
      bool ok = true;
      CMat half(s, eng.L->rank());
      for (int i = 0; i < s && ok; ++i)
        for (int j = 0; j < eng.L->rank() && ok; ++j) {
          Coord d = ell(i, j) - eng.a(i, j);
          if (d % 2 != 0) ok = false;
          half(i, j) = d / 2;
        }
      if (!ok) continue;
      IMat test = eng.adj * to_int_mat(half);
      for (Eigen::Index i = 0; i < test.rows() && ok; ++i)
        for (Eigen::Index j = 0; j < test.cols() && ok; ++j)
          if (!mpz_divisible_p(test(i, j).get_mpz_t(), eng.fm.det.get_mpz_t())) ok = false;
      if (!ok) continue;
      emit(local, ell, coeff, tpre);
    }
  };

  if (workers == 1 || total < 64) {
    worker(0, total, out);
    return;
  }
  std::vector<Series> partial(static_cast<std::size_t>(workers),
                              Series(out.t_rank(), out.z_rank()));
  std::vector<std::thread> threads;
  std::size_t chunk = (total + static_cast<std::size_t>(workers) - 1) /
                      static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = static_cast<std::size_t>(w) * chunk;
    std::size_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back(worker, lo, hi, std::ref(partial[static_cast<std::size_t>(w)]));
  }
  for (auto& th : threads) th.join();
  for (const auto& p : partial)
    for (const auto& [m, c] : p.terms()) out.add_term(m, c);
}

void check_inputs(const PlumbingTree& t, const RootLattice& L, const Tau& tau,
                  const Truncation& tr, bool relative) {
  t.validate();
  if (tau.a.rows() != t.size() || tau.a.cols() != L.rank())
    throw UsageError("Spin^c representative has wrong shape");
  bool coset = relative ? in_delta_hat_coset(t, L, tau.a) : in_delta_coset(t, L, tau.a);
  if (!coset) throw UsageError("representative not in the delta coset");
  if (tr.check_reduced && !is_reduced(t, tr.budget))
    throw UsageError("tree is not reduced (within the search budget)");
  if (tau.xi.values.size() != static_cast<std::size_t>(t.size()))
    throw UsageError("assignment has wrong size");
}

}  // namespace

Coord required_depth_for_qcap(const PlumbingTree& t, const RootLattice& L,
                              const FramingMatrix& fm, const Rat& pre, const Rat& qcap,
                              bool exclude_root) {
  const bool negdef = fm.pi == 0;
  std::vector<Coord> diags;
  for (int i = 0; i < t.size(); ++i) {
    VertexId id = t.vertices[static_cast<std::size_t>(i)].id;
    if (exclude_root && t.root && *t.root == id) continue;
    if (t.degree(id) >= 3) diags.push_back(std::llabs(fm.entries(i, i)));
  }
  if (diags.empty()) return 0;
  for (Coord d = 0; d < 100000; ++d) {
    bool all = true;
    for (Coord diag : diags) {
      Rat bound = schur_tail_bound(L, diag, d);
      Rat excl = negdef ? pre + bound : pre - bound;
      if (negdef ? !(excl > qcap) : !(excl < qcap)) all = false;
    }
    if (all) return d;
  }
  throw TruncationError("no finite depth certifies the requested window");
}

namespace {

Series y_closed_impl(const PlumbingTree& t, const RootLattice& L, const Tau& tau,
                     const Truncation& tr,
                     const std::optional<WeylElement>& restrict_first) {
  check_inputs(t, L, tau, tr, false);
  Engine eng;
  eng.tree = &t;
  eng.L = &L;
  eng.fm = framing_matrix(t);
  if (eng.fm.det == 0) throw UnsupportedError("framing matrix is singular");
  eng.adj = adjugate(eng.fm.entries);
  eng.det8 = 8 * eng.fm.det;
  eng.pre = front_factor_exponent(L, eng.fm);
  eng.sign = front_factor_sign(L, eng.fm);
  eng.a = tau.a;

  const int s = t.size();
  const bool negdef = eng.fm.pi == 0;
  const bool posdef = eng.fm.pi == s;

  Coord depth = tr.kostant_depth;
  if (tr.q_report_hi && (negdef || posdef))
    depth = std::max(depth, required_depth_for_qcap(t, L, eng.fm, eng.pre,
                                                    *tr.q_report_hi, false));

  bool any_cone = false;
  for (int i = 0; i < s; ++i) {
    VertexId id = t.vertices[static_cast<std::size_t>(i)].id;
    int deg = t.degree(id);
    if (deg >= 3) any_cone = true;
    if (restrict_first && i == 0) {
      if (deg != 1) throw UsageError("restricted series needs a leaf first in the order");
      const WeylElement& w = *restrict_first;
      CVec e = w.apply(L, L.weyl_vector_doubled());
      SupportElem elem{e, Int(w.sign(L)),
                       tau.xi.values[0].inverse().apply(L, e)};
      eng.supports.push_back({elem});
      continue;
    }
    eng.supports.push_back(
        build_support(L, tau.xi.values[static_cast<std::size_t>(i)], deg, depth));
  }
  if (tr.validate_assignment && !restrict_first) {
    // degree-2 vertices must carry the identity; full forcing is validated
    // by callers that enumerate assignments
    for (int i = 0; i < s; ++i)
      if (t.degree(t.vertices[static_cast<std::size_t>(i)].id) == 2 &&
          !tau.xi.values[static_cast<std::size_t>(i)].is_identity())
        throw UsageError("assignment must be the identity at degree-2 vertices");
  }

  Series out(L.rank(), 0);
  const int sign = eng.sign;
  run_combos(
      eng, tr.workers,
      [&](Series& local, const CMat& ell, const Int& coeff, const CVec& tpre) {
        Monomial m;
        m.q = eng.q_exponent(ell);
        m.t.assign(tpre.data(), tpre.data() + tpre.size());
        local.add_term(m, sign > 0 ? coeff : Int(-coeff));
      },
      out);

  TruncationWindow w;
  if (!any_cone) {
    w = TruncationWindow::make_exact();
  } else {
    Rat base = eng.pre - rep_self_pairing(t, L, tau.a) / 8;
    base.canonicalize();
    if (negdef || posdef) {
      std::optional<Rat> qb;
      for (int i = 0; i < s; ++i) {
        VertexId id = t.vertices[static_cast<std::size_t>(i)].id;
        if (t.degree(id) < 3) continue;
        Rat bound = schur_tail_bound(L, std::llabs(eng.fm.entries(i, i)), depth);
        Rat excl = negdef ? eng.pre + bound : eng.pre - bound;
        if (!qb || (negdef ? excl < *qb : excl > *qb)) qb = excl;
      }
      CertBox box;
      if (negdef)
        box.q_hi = half_integer_below(base, *qb);
      else
        box.q_lo = half_integer_above(base, *qb);
      w.push(box);
    }
    // t-height certificate (Lemma: exponents of t bounded above)
    Coord U = 0;
    for (const auto& sup : eng.supports) U += max_tpre_height(sup);
    CertBox tb;
    tb.t_lo = U - 2 * (depth + 1) + 1;
    w.push(tb);
  }
  out.set_window(w);
  return out;
}

}  // namespace

Series y_closed(const PlumbingTree& t, const RootLattice& L, const Tau& tau,
                const Truncation& tr) {
  return y_closed_impl(t, L, tau, tr, std::nullopt);
}

Series y_restricted(const PlumbingTree& t, const RootLattice& L, const Tau& tau,
                    const WeylElement& w, const Truncation& tr) {
  return y_closed_impl(t, L, tau, tr, w);
}

Series y_knot(const PlumbingTree& t, const RootLattice& L, const Tau& tau,
              const Truncation& tr) {
  if (!t.root) throw UsageError("knot series needs a distinguished vertex");
  check_inputs(t, L, tau, tr, true);
  const int s = t.size();
  const int rdx = t.index_of(*t.root);
  const int r = L.rank();

  FramingMatrix fm = framing_matrix(t);
  if (fm.det == 0) throw UnsupportedError("framing matrix is singular");
  IMat adj_full = adjugate(fm.entries);
  Rat pre = front_factor_exponent(L, fm);
  int sign = front_factor_sign(L, fm);

  // minor with the distinguished row and column deleted
  CMat minor(s - 1, s - 1);
  {
    int mi = 0;
    for (int i = 0; i < s; ++i) {
      if (i == rdx) continue;
      int mj = 0;
      for (int j = 0; j < s; ++j) {
        if (j == rdx) continue;
        minor(mi, mj) = fm.entries(i, j);
        ++mj;
      }
      ++mi;
    }
  }
  Int mdet = det_integer(minor);
  if (s > 1 && mdet == 0)
    throw UnsupportedError("distinguished minor singular: coset enumeration unsupported");
  IMat madj = adjugate(minor);

  const bool negdef = fm.pi == 0;
  const bool posdef = fm.pi == s;
  Coord depth = tr.kostant_depth;
  if (tr.q_report_hi && (negdef || posdef))
    depth = std::max(depth,
                     required_depth_for_qcap(t, L, fm, pre, *tr.q_report_hi, true));

  // supports of the non-distinguished vertices
  std::vector<std::vector<SupportElem>> supports;
  std::vector<int> sup_index;  // vertex index per support slot
  bool any_cone = false;
  for (int i = 0; i < s; ++i) {
    if (i == rdx) continue;
    VertexId id = t.vertices[static_cast<std::size_t>(i)].id;
    int deg = t.degree(id);
    if (deg >= 3) any_cone = true;
    supports.push_back(
        build_support(L, tau.xi.values[static_cast<std::size_t>(i)], deg, depth));
    sup_index.push_back(i);
  }

  // the distinguished factor z^{-ell_0} K_{xi(v0), 1 + deg v0}
  const WeylElement& xr = tau.xi.values[static_cast<std::size_t>(rdx)];
  const int n_root = 1 + t.degree(*t.root);
  std::vector<std::pair<CVec, Int>> root_factor;  // (beta, coeff) of K_{x,n_root}
  if (n_root <= 2) {
    for (const auto& e : build_support(L, xr, n_root, 0)) root_factor.push_back({e.ell, e.coeff});
  } else {
    const int m = n_root - 2;
    bool neg = (xr.sign(L) < 0) && (m % 2 == 1);
    for (const auto& [A, kA] : L.kostant_cone(tr.z_depth)) {
      Int c = (m == 1) ? kA : kostant_convolved(L, m, A);
      if (c == 0) continue;
      CVec inner = m * L.weyl_vector_doubled() + 2 * A;
      root_factor.push_back({CVec(-xr.apply(L, inner)), neg ? Int(-c) : c});
    }
  }

  WeylElement xr_inv = xr.inverse();
  const CMat& C = L.cartan();
  Series out(r, r);
  Coord max_neg_root_height = std::numeric_limits<Coord>::min();

  std::size_t total = 1;
  for (const auto& sup : supports) total *= sup.size();
  CMat ell(s, r);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    Int coeff = 1;
    CVec tpre = CVec::Zero(r);
    for (std::size_t k = 0; k < supports.size(); ++k) {
      const SupportElem& e = supports[k][rem % supports[k].size()];
      rem /= supports[k].size();
      ell.row(sup_index[k]) = e.ell.transpose();
      coeff *= e.coeff;
      tpre += e.tpre;
    }
    // solve for gamma from the non-distinguished rows
    bool ok = true;
    CMat half(s - 1, r);
    {
      int mi = 0;
      for (int i = 0; i < s && ok; ++i) {
        if (i == rdx) continue;
        for (int j = 0; j < r && ok; ++j) {
          Coord d = ell(i, j) - tau.a(i, j);
          if (d % 2 != 0) ok = false;
          half(mi, j) = d / 2;
        }
        ++mi;
      }
    }
    if (!ok) continue;
    CMat gamma(s - 1, r);
    if (s > 1) {
      IMat num = madj * to_int_mat(half);
      for (Eigen::Index i = 0; i < num.rows() && ok; ++i)
        for (Eigen::Index j = 0; j < num.cols() && ok; ++j) {
          if (!mpz_divisible_p(num(i, j).get_mpz_t(), mdet.get_mpz_t())) {
            ok = false;
            break;
          }
          Int q = num(i, j) / mdet;
          gamma(i, j) = static_cast<Coord>(q.get_si());
        }
      if (!ok) continue;
    }
    // distinguished row determined by the solved gamma
    CVec ell_root = tau.a.row(rdx).transpose();
    {
      int mi = 0;
      for (int j = 0; j < s; ++j) {
        if (j == rdx) continue;
        for (int c2 = 0; c2 < r; ++c2)
          ell_root(c2) += 2 * fm.entries(rdx, j) * gamma(mi, c2);
        ++mi;
      }
    }
    ell.row(rdx) = ell_root.transpose();
    tpre += xr_inv.apply(L, ell_root);
    max_neg_root_height = std::max(max_neg_root_height, -ell_root.sum());

    Int weighted = 0;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        Coord pair = 0;
        for (int u = 0; u < r; ++u)
          for (int v = 0; v < r; ++v) pair += ell(i, u) * C(u, v) * ell(j, v);
        weighted += adj_full(i, j) * static_cast<long>(pair);
      }
    Rat q = pre - Rat(weighted, 8 * fm.det);
    q.canonicalize();

    for (const auto& [beta, kc] : root_factor) {
      Monomial m;
      m.q = q;
      m.t.assign(tpre.data(), tpre.data() + tpre.size());
      CVec z = -ell_root + beta;
      m.z.assign(z.data(), z.data() + z.size());
      Int c = coeff * kc;
      out.add_term(m, sign > 0 ? c : Int(-c));
    }
  }

  // window assembly
  TruncationWindow w;
  bool root_finite = n_root <= 2;
  // directional data of the twisted cone at the root
  int dir = 0;  // +1: z-heights decrease with alpha (tail below); -1: mirror
  Coord dmin = 0, dmax = 0;
  if (!root_finite) {
    bool all_pos = true, all_neg = true;
    for (int i = 0; i < r; ++i) {
      CVec simple = CVec::Zero(r);
      simple(i) = 1;
      Coord h = L.height(xr.apply(L, simple));
      if (i == 0) dmin = dmax = h;
      dmin = std::min(dmin, h);
      dmax = std::max(dmax, h);
      all_pos = all_pos && h > 0;
      all_neg = all_neg && h < 0;
    }
    dir = all_pos ? 1 : (all_neg ? -1 : 0);
  }
  std::optional<CertBox> zconstraint;
  if (!root_finite && dir != 0 && max_neg_root_height != std::numeric_limits<Coord>::min()) {
    const int m = n_root - 2;
    Coord base_twist = L.height(xr.apply(L, CVec(m * L.weyl_vector_doubled())));
    CertBox zc;
    if (dir > 0) {
      Coord bound = max_neg_root_height - base_twist - 2 * (tr.z_depth + 1) * dmin;
      zc.z_lo = bound + 1;
      w.z_sup_hi = max_neg_root_height - base_twist;
    } else {
      Coord mnh = max_neg_root_height;  // max of -h(ell_root)
      // mirrored: exponent heights grow with alpha
      Coord bound = mnh - base_twist - 2 * (tr.z_depth + 1) * dmax;
      zc.z_hi = bound - 1;
      w.z_sup_lo = mnh - base_twist;
    }
    zconstraint = zc;
  }
  if (root_finite) {
    w.z_sup_hi = out.max_z_height();
    w.z_sup_lo = out.min_z_height();
  }

  if (!any_cone && root_finite) {
    w.push(CertBox{});  // complete enumeration, finite factor: exact
  } else if (!any_cone && !root_finite) {
    // complete combos; only the distinguished factor is truncated
    if (zconstraint) w.push(*zconstraint);
  } else if (negdef || posdef) {
    // cone-capped vertices push omitted terms past the Schur bound
    std::optional<Rat> qb;
    for (int i = 0; i < s; ++i) {
      VertexId id = t.vertices[static_cast<std::size_t>(i)].id;
      if (id == *t.root || t.degree(id) < 3) continue;
      Rat bound = schur_tail_bound(L, std::llabs(fm.entries(i, i)), depth);
      Rat excl = negdef ? pre + bound : pre - bound;
      if (!qb || (negdef ? excl < *qb : excl > *qb)) qb = excl;
    }
    Rat base = pre - rep_self_pairing(t, L, tau.a) / 8;
    base.canonicalize();
    CertBox box;
    if (negdef)
      box.q_hi = half_integer_below(base, *qb);
    else
      box.q_lo = half_integer_above(base, *qb);
    if (!root_finite) {
      if (zconstraint) {
        box.z_lo = zconstraint->z_lo;
        box.z_hi = zconstraint->z_hi;
        w.push(box);
      }
      // mixed twist direction: no certificate at all
    } else {
      w.push(box);
    }
  }
  out.set_window(w);
  return out;
}

Series specialize_t1(const Series& s) {
  // need a region where each retained monomial has finitely many t-terms,
  // all certified: a pure q-interval box (definite case) or exactness
  bool ok = s.window().exact();
  std::vector<CertBox> kept;
  for (const auto& b : s.window().boxes) {
    if (b.unconstrained()) {
      ok = true;
      kept.push_back(b);
      continue;
    }
    if (!b.t_lo && (b.q_lo || b.q_hi)) {
      ok = true;
      kept.push_back(b);
    }
  }
  if (!ok)
    throw TruncationError(
        "t = 1 evaluation undefined: no q-complete certificate on the window");
  Series out(0, s.z_rank());
  for (const auto& [m, c] : s.terms()) {
    bool in = false;
    for (const auto& b : kept)
      if (b.contains(m)) in = true;
    if (!in) continue;
    Monomial n;
    n.q = m.q;
    n.z = m.z;
    out.add_term(n, c);
  }
  TruncationWindow w;
  for (const auto& b : kept) w.push(b);
  w.z_sup_hi = s.window().z_sup_hi;
  w.z_sup_lo = s.window().z_sup_lo;
  out.set_window(w);
  return out;
}

}  // namespace yplumb
