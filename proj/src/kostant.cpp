#include "yplumb/kostant.hpp"

namespace yplumb {

namespace {

Monomial z_monomial(const CVec& exp) {
  Monomial m;
  m.q = 0;
  m.z.assign(exp.data(), exp.data() + exp.size());
  return m;
}

}  // namespace

Series weyl_denominator(const RootLattice& L) {
  Series s(0, L.rank());
  const CVec& two_rho = L.weyl_vector_doubled();
  for (const auto& w : L.weyl_elements()) {
    CVec e = w.apply(L, two_rho);
    s.add_term(z_monomial(e), Int(w.sign(L)));
  }
  s.set_window(TruncationWindow::make_exact());
  return s;
}

Series weyl_denominator_product(const RootLattice& L) {
  Series acc = Series::constant(0, L.rank(), 1);
  for (const auto& root : L.positive_roots()) {
    Series f(0, L.rank());
    f.add_term(z_monomial(root), 1);
    f.add_term(z_monomial(CVec(-root)), -1);
    f.set_window(TruncationWindow::make_exact());
    acc = mul(acc, f);
  }
  return acc;
}

Series kostant_series(const RootLattice& L, const WeylElement& x, KostantDepth depth) {
  Series s(0, L.rank());
  const CVec& two_rho = L.weyl_vector_doubled();
  const int sgn = x.sign(L);
  for (const auto& [alpha, k] : L.kostant_cone(depth.height_cap)) {
    CVec v = two_rho + 2 * alpha;
    CVec e = -x.apply(L, v);
    s.add_term(z_monomial(e), sgn > 0 ? k : Int(-k));
  }
  // certificate direction: heights of -x(simple roots)
  std::vector<Coord> d;
  for (int i = 0; i < L.rank(); ++i) {
    CVec simple = CVec::Zero(L.rank());
    simple(i) = 1;
    d.push_back(L.height(x.apply(L, simple)));
  }
  Coord base = -L.height(x.apply(L, two_rho));
  bool all_pos = true, all_neg = true;
  Coord dmin = d[0], dmax = d[0];
  for (Coord v : d) {
    all_pos = all_pos && v > 0;
    all_neg = all_neg && v < 0;
    dmin = std::min(dmin, v);
    dmax = std::max(dmax, v);
  }
  TruncationWindow w;
  if (all_pos) {
    // omitted alpha have height >= cap+1, exponent height <= base - 2(cap+1)dmin
    CertBox b;
    b.z_lo = base - 2 * (depth.height_cap + 1) * dmin + 1;
    w.push(b);
    w.z_sup_hi = base;
  } else if (all_neg) {
    CertBox b;
    b.z_hi = base - 2 * (depth.height_cap + 1) * dmax - 1;
    w.push(b);
    w.z_sup_lo = base;
  }
  s.set_window(w);
  return s;
}

Series kostant_collection(const RootLattice& L, const WeylElement& x, int n,
                          KostantDepth depth) {
  if (n < 0) throw UsageError("kostant_collection: negative degree");
  if (n == 0) {
    Series d = weyl_denominator(L);
    return mul(d, d);
  }
  if (n == 1) return weyl_denominator(L);
  if (n == 2) return Series::constant(0, L.rank(), 1);
  Series k = kostant_series(L, x, depth);
  Series acc = k;
  for (int i = 3; i < n; ++i) acc = mul(acc, k);
  return acc;
}

Int kostant_convolved(const RootLattice& L, int m, const CVec& alpha) {
  if (m <= 0) return (alpha.isZero() && m == 0) ? Int(1) : Int(0);
  if (m == 1) return L.kostant_partition(alpha);
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (alpha(i) < 0) return 0;
  Int acc = 0;
  // split off one factor, iterate its cone points below alpha
  for (const auto& [beta, k] : L.kostant_cone(L.height(alpha))) {
    CVec rest = alpha - beta;
    bool ok = true;
    for (Eigen::Index i = 0; i < rest.size(); ++i)
      if (rest(i) < 0) ok = false;
    if (!ok) continue;
    acc += k * kostant_convolved(L, m - 1, rest);
  }
  return acc;
}

Int collection_coefficient(const RootLattice& L, const WeylElement& x, int n,
                           const CVec& beta) {
  const CVec& two_rho = L.weyl_vector_doubled();
  if (n == 0) {
    Int acc = 0;
    for (const auto& w1 : L.weyl_elements())
      for (const auto& w2 : L.weyl_elements()) {
        if (w1.apply(L, two_rho) + w2.apply(L, two_rho) == beta)
          acc += Int(w1.sign(L) * w2.sign(L));
      }
    return acc;
  }
  if (n == 1) {
    for (const auto& w : L.weyl_elements())
      if (w.apply(L, two_rho) == beta) return Int(w.sign(L));
    return 0;
  }
  if (n == 2) return beta.isZero() ? Int(1) : Int(0);
  const int m = n - 2;
  // beta = -x(2 m rho + 2 A) for a cone point A
  CVec v = -x.inverse().apply(L, beta) - m * two_rho;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) % 2 != 0) return 0;
  CVec A = v / 2;
  Int c = kostant_convolved(L, m, A);
  int sgn = x.sign(L);
  bool negative = (sgn < 0) && (m % 2 == 1);
  return negative ? Int(-c) : c;
}

bool verify_p2(const RootLattice& L, KostantDepth depth) {
  Series d = weyl_denominator(L);
  Series k = kostant_series(L, L.identity(), depth);
  Series p = mul(d, k);
  Series one = Series::constant(0, L.rank(), 1);
  for (const auto& [m, c] : p.terms()) {
    if (!p.window().contains(m)) continue;
    if (one.coefficient(m) != c) return false;
  }
  for (const auto& [m, c] : one.terms()) {
    if (!p.window().contains(m)) continue;
    if (p.coefficient(m) != c) return false;
  }
  // the identity is vacuous if the constant term is not even certified
  Monomial zero;
  zero.q = 0;
  zero.z.assign(static_cast<std::size_t>(L.rank()), 0);
  return p.window().contains(zero);
}

}  // namespace yplumb
