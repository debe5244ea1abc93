#include "yplumb/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace yplumb {

Coord Monomial::t_height() const { return std::accumulate(t.begin(), t.end(), Coord(0)); }
Coord Monomial::z_height() const { return std::accumulate(z.begin(), z.end(), Coord(0)); }

bool Monomial::operator==(const Monomial& o) const {
  return q == o.q && t == o.t && z == o.z;
}

bool Monomial::operator<(const Monomial& o) const {
  int c = cmp(q, o.q);
  if (c != 0) return c < 0;
  if (t != o.t) return t < o.t;
  return z < o.z;
}

static std::size_t hash_mpz(const mpz_class& v) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(v.get_mpz_t())) + 0x9e3779b9u;
  std::size_t n = mpz_size(v.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i)
    h = h * 1099511628211ULL + static_cast<std::size_t>(mpz_getlimbn(v.get_mpz_t(), i));
  return h;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = hash_mpz(m.q.get_num()) * 31 + hash_mpz(m.q.get_den());
  for (Coord c : m.t) h = h * 1000003ULL + static_cast<std::size_t>(c + 1315423911LL);
  h = h * 7919ULL + 17;
  for (Coord c : m.z) h = h * 1000003ULL + static_cast<std::size_t>(c + 2654435761LL);
  return h;
}

bool CertBox::contains(const Monomial& m) const {
  if (q_lo && m.q < *q_lo) return false;
  if (q_hi && m.q > *q_hi) return false;
  if (t_lo && m.t_height() < *t_lo) return false;
  if (z_lo && m.z_height() < *z_lo) return false;
  if (z_hi && m.z_height() > *z_hi) return false;
  return true;
}

bool CertBox::unconstrained() const {
  return !q_lo && !q_hi && !t_lo && !z_lo && !z_hi;
}

TruncationWindow TruncationWindow::make_exact() {
  TruncationWindow w;
  w.boxes.push_back(CertBox{});
  return w;
}

TruncationWindow TruncationWindow::none() { return TruncationWindow{}; }

bool TruncationWindow::exact() const {
  for (const auto& b : boxes)
    if (b.unconstrained()) return true;
  return false;
}

bool TruncationWindow::contains(const Monomial& m) const {
  for (const auto& b : boxes)
    if (b.contains(m)) return true;
  return false;
}

void TruncationWindow::push(CertBox b) {
  for (const auto& e : boxes) {
    if (e.q_lo == b.q_lo && e.q_hi == b.q_hi && e.t_lo == b.t_lo && e.z_lo == b.z_lo &&
        e.z_hi == b.z_hi)
      return;
  }
  boxes.push_back(std::move(b));
}

static std::optional<CertBox> intersect_boxes(const CertBox& a, const CertBox& b) {
  CertBox r;
  r.q_lo = a.q_lo;
  if (b.q_lo && (!r.q_lo || *b.q_lo > *r.q_lo)) r.q_lo = b.q_lo;
  r.q_hi = a.q_hi;
  if (b.q_hi && (!r.q_hi || *b.q_hi < *r.q_hi)) r.q_hi = b.q_hi;
  if (r.q_lo && r.q_hi && *r.q_lo > *r.q_hi) return std::nullopt;
  r.t_lo = a.t_lo;
  if (b.t_lo && (!r.t_lo || *b.t_lo > *r.t_lo)) r.t_lo = b.t_lo;
  r.z_lo = a.z_lo;
  if (b.z_lo && (!r.z_lo || *b.z_lo > *r.z_lo)) r.z_lo = b.z_lo;
  r.z_hi = a.z_hi;
  if (b.z_hi && (!r.z_hi || *b.z_hi < *r.z_hi)) r.z_hi = b.z_hi;
  if (r.z_lo && r.z_hi && *r.z_lo > *r.z_hi) return std::nullopt;
  return r;
}

TruncationWindow intersect(const TruncationWindow& a, const TruncationWindow& b) {
  TruncationWindow w;
  for (const auto& ba : a.boxes)
    for (const auto& bb : b.boxes)
      if (auto r = intersect_boxes(ba, bb)) w.push(*r);
  return w;
}

Series::Series(int t_rank, int z_rank) : t_rank_(t_rank), z_rank_(z_rank) {}

// private members live in the header-declared class; define statics below

Int Series::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Int(0) : it->second;
}

void Series::add_term(const Monomial& m, const Int& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Series& Series::negate() {
  for (auto& [m, c] : terms_) c = -c;
  return *this;
}

Series Series::restricted_to_window() const {
  Series r(t_rank_, z_rank_);
  r.window_ = window_;
  for (const auto& [m, c] : terms_)
    if (window_.contains(m)) r.add_term(m, c);
  return r;
}

std::vector<std::pair<Monomial, Int>> Series::sorted_terms() const {
  std::vector<std::pair<Monomial, Int>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

std::optional<Rat> Series::min_q() const {
  std::optional<Rat> r;
  for (const auto& [m, c] : terms_)
    if (!r || m.q < *r) r = m.q;
  return r;
}

std::optional<Rat> Series::max_q() const {
  std::optional<Rat> r;
  for (const auto& [m, c] : terms_)
    if (!r || m.q > *r) r = m.q;
  return r;
}

std::optional<Coord> Series::max_t_height() const {
  std::optional<Coord> r;
  for (const auto& [m, c] : terms_) {
    Coord h = m.t_height();
    if (!r || h > *r) r = h;
  }
  return r;
}

std::optional<Coord> Series::min_z_height() const {
  std::optional<Coord> r;
  for (const auto& [m, c] : terms_) {
    Coord h = m.z_height();
    if (!r || h < *r) r = h;
  }
  return r;
}

std::optional<Coord> Series::max_z_height() const {
  std::optional<Coord> r;
  for (const auto& [m, c] : terms_) {
    Coord h = m.z_height();
    if (!r || h > *r) r = h;
  }
  return r;
}

Series Series::constant(int t_rank, int z_rank, const Int& c) {
  Series s(t_rank, z_rank);
  Monomial m;
  m.q = 0;
  m.t.assign(static_cast<std::size_t>(t_rank), 0);
  m.z.assign(static_cast<std::size_t>(z_rank), 0);
  s.add_term(m, c);
  s.set_window(TruncationWindow::make_exact());
  return s;
}

static void check_ranks(const Series& a, const Series& b) {
  if (a.t_rank() != b.t_rank() || a.z_rank() != b.z_rank())
    throw UsageError("series variable ranks differ");
}

Series add(const Series& a, const Series& b) {
  check_ranks(a, b);
  Series r(a.t_rank(), a.z_rank());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c);
  for (const auto& [m, c] : b.terms()) r.add_term(m, c);
  r.set_window(intersect(a.window(), b.window()));
  return r;
}

Series sub(const Series& a, const Series& b) {
  Series nb = b;
  nb.negate();
  return add(a, nb);
}

namespace {

struct AxisStats {
  // valid bounds on the *true* support, when derivable from the window
  std::optional<Rat> true_min_q, true_max_q;
  std::optional<Coord> true_max_th;
  std::optional<Coord> true_min_zh, true_max_zh;
};

// A pure q-box {q <= hi} with no other constraint certifies everything
// below hi, which makes the stored minimum the true minimum.
AxisStats stats_of(const Series& s) {
  AxisStats st;
  const auto& w = s.window();
  bool exact = w.exact();
  bool q_below = exact, q_above = exact, t_above = exact, z_below = exact, z_above = exact;
  std::optional<Coord> t_slab_lo;
  for (const auto& b : w.boxes) {
    if (!b.q_lo && !b.t_lo && !b.z_lo && !b.z_hi && b.q_hi) q_below = true;
    if (!b.q_hi && !b.t_lo && !b.z_lo && !b.z_hi && b.q_lo) q_above = true;
    if (b.t_lo && !b.q_lo && !b.q_hi && !b.z_lo && !b.z_hi) {
      t_above = true;
      if (!t_slab_lo || *b.t_lo < *t_slab_lo) t_slab_lo = b.t_lo;
    }
    if (!b.q_lo && !b.q_hi && !b.t_lo) {
      if (b.z_hi && !b.z_lo) z_below = true;
      if (b.z_lo && !b.z_hi) z_above = true;
      if (b.z_lo && b.z_hi) { /* bounded z slab gives neither tail */ }
    }
  }
  if (q_below) st.true_min_q = s.min_q();
  if (q_above) st.true_max_q = s.max_q();
  if (t_above) {
    auto mx = s.max_t_height();
    if (exact)
      st.true_max_th = mx;
    else if (t_slab_lo) {
      // true terms above the slab floor are exactly the stored ones there
      std::optional<Coord> mslab;
      for (const auto& [m, c] : s.terms()) {
        Coord h = m.t_height();
        if (h >= *t_slab_lo && (!mslab || h > *mslab)) mslab = h;
      }
      st.true_max_th = mslab ? std::max(*mslab, *t_slab_lo - 1) : *t_slab_lo - 1;
    }
  }
  if (z_below) st.true_min_zh = s.min_z_height();
  if (z_above) st.true_max_zh = s.max_z_height();
  if (exact) {
    st.true_max_th = s.max_t_height();
    st.true_min_zh = s.min_z_height();
    st.true_max_zh = s.max_z_height();
  }
  // provable support bounds attached by producers win when tighter
  if (w.z_sup_hi && (!st.true_max_zh || *w.z_sup_hi < *st.true_max_zh || !z_above))
    st.true_max_zh = w.z_sup_hi;
  if (w.z_sup_lo && (!st.true_min_zh || *w.z_sup_lo > *st.true_min_zh || !z_below))
    st.true_min_zh = w.z_sup_lo;
  return st;
}

}  // namespace

Series mul(const Series& a, const Series& b) {
  check_ranks(a, b);
  Series r(a.t_rank(), a.z_rank());
  const bool a_small = a.size() <= b.size();
  const Series& x = a_small ? a : b;
  const Series& y = a_small ? b : a;
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      Monomial m;
      m.q = mx.q + my.q;
      m.q.canonicalize();
      m.t.resize(mx.t.size());
      for (std::size_t i = 0; i < mx.t.size(); ++i) m.t[i] = mx.t[i] + my.t[i];
      m.z.resize(mx.z.size());
      for (std::size_t i = 0; i < mx.z.size(); ++i) m.z[i] = mx.z[i] + my.z[i];
      r.add_term(m, cx * cy);
    }
  }

  TruncationWindow w;
  if (a.window().exact() && b.window().exact()) {
    w = TruncationWindow::make_exact();
  } else {
    AxisStats sa = stats_of(a);
    AxisStats sb = stats_of(b);
    bool a_exact = a.window().exact();
    bool b_exact = b.window().exact();
    if ((a_exact && a.is_zero()) || (b_exact && b.is_zero()))
      w = TruncationWindow::make_exact();
    // q upper tail
    {
      bool ok = true;
      std::optional<Rat> bound;
      auto consider = [&](const Series& f, const AxisStats& os, bool f_exact) {
        if (f_exact) return;
        std::optional<Rat> f_hi;
        for (const auto& bx : f.window().boxes)
          if (bx.q_hi && !bx.q_lo && !bx.t_lo && !bx.z_lo && !bx.z_hi)
            if (!f_hi || *bx.q_hi > *f_hi) f_hi = bx.q_hi;
        if (!f_hi || !os.true_min_q) { ok = false; return; }
        Rat v = *f_hi + *os.true_min_q;
        if (!bound || v < *bound) bound = v;
      };
      consider(a, sb, a_exact);
      if (ok) consider(b, sa, b_exact);
      if (ok && bound) {
        CertBox bx;
        bx.q_hi = *bound;
        w.push(bx);
      }
    }
    // q lower tail
    {
      bool ok = true;
      std::optional<Rat> bound;
      auto consider = [&](const Series& f, const AxisStats& os, bool f_exact) {
        if (f_exact) return;
        std::optional<Rat> f_lo;
        for (const auto& bx : f.window().boxes)
          if (bx.q_lo && !bx.q_hi && !bx.t_lo && !bx.z_lo && !bx.z_hi)
            if (!f_lo || *bx.q_lo < *f_lo) f_lo = bx.q_lo;
        if (!f_lo || !os.true_max_q) { ok = false; return; }
        Rat v = *f_lo + *os.true_max_q;
        if (!bound || v > *bound) bound = v;
      };
      consider(a, sb, a_exact);
      if (ok) consider(b, sa, b_exact);
      if (ok && bound) {
        CertBox bx;
        bx.q_lo = *bound;
        w.push(bx);
      }
    }
    // t halfspace
    {
      bool ok = true;
      std::optional<Coord> floor;
      auto consider = [&](const Series& f, const AxisStats& os, bool f_exact) {
        if (f_exact) return;
        std::optional<Coord> f_lo;
        for (const auto& bx : f.window().boxes)
          if (bx.t_lo && !bx.q_lo && !bx.q_hi && !bx.z_lo && !bx.z_hi)
            if (!f_lo || *bx.t_lo < *f_lo) f_lo = bx.t_lo;
        if (!f_lo || !os.true_max_th) { ok = false; return; }
        Coord v = *f_lo + *os.true_max_th;
        if (!floor || v > *floor) floor = v;
      };
      consider(a, sb, a_exact);
      if (ok) consider(b, sa, b_exact);
      if (ok && floor) {
        CertBox bx;
        bx.t_lo = *floor;
        w.push(bx);
      }
    }
    // z interval (lower tail certified, upper open) and the mirror
    {
      bool ok = true;
      std::optional<Coord> floor;
      auto consider = [&](const Series& f, const AxisStats& os, bool f_exact) {
        if (f_exact) return;
        std::optional<Coord> f_lo;
        for (const auto& bx : f.window().boxes)
          if (bx.z_lo && !bx.z_hi && !bx.q_lo && !bx.q_hi && !bx.t_lo)
            if (!f_lo || *bx.z_lo < *f_lo) f_lo = bx.z_lo;
        if (!f_lo || !os.true_max_zh) { ok = false; return; }
        Coord v = *f_lo + *os.true_max_zh;
        if (!floor || v > *floor) floor = v;
      };
      consider(a, sb, a_exact);
      if (ok) consider(b, sa, b_exact);
      if (ok && floor) {
        CertBox bx;
        bx.z_lo = *floor;
        w.push(bx);
      }
    }
    {
      bool ok = true;
      std::optional<Coord> ceil;
      auto consider = [&](const Series& f, const AxisStats& os, bool f_exact) {
        if (f_exact) return;
        std::optional<Coord> f_hi;
        for (const auto& bx : f.window().boxes)
          if (bx.z_hi && !bx.z_lo && !bx.q_lo && !bx.q_hi && !bx.t_lo)
            if (!f_hi || *bx.z_hi > *f_hi) f_hi = bx.z_hi;
        if (!f_hi || !os.true_min_zh) { ok = false; return; }
        Coord v = *f_hi + *os.true_min_zh;
        if (!ceil || v < *ceil) ceil = v;
      };
      consider(a, sb, a_exact);
      if (ok) consider(b, sa, b_exact);
      if (ok && ceil) {
        CertBox bx;
        bx.z_hi = *ceil;
        w.push(bx);
      }
    }
  }
  // provable support bounds combine additively
  {
    AxisStats sa = stats_of(a);
    AxisStats sb = stats_of(b);
    if (sa.true_max_zh && sb.true_max_zh) w.z_sup_hi = *sa.true_max_zh + *sb.true_max_zh;
    if (sa.true_min_zh && sb.true_min_zh) w.z_sup_lo = *sa.true_min_zh + *sb.true_min_zh;
  }
  r.set_window(w);
  return r;
}

Series coeff_z(const Series& a, const std::vector<Coord>& alpha) {
  if (alpha.size() != static_cast<std::size_t>(a.z_rank()))
    throw UsageError("coeff_z: exponent rank mismatch");
  Coord ah = std::accumulate(alpha.begin(), alpha.end(), Coord(0));
  TruncationWindow w;
  for (const auto& b : a.window().boxes) {
    if (b.z_lo && ah < *b.z_lo) continue;
    if (b.z_hi && ah > *b.z_hi) continue;
    CertBox nb;
    nb.q_lo = b.q_lo;
    nb.q_hi = b.q_hi;
    nb.t_lo = b.t_lo;
    w.push(nb);
  }
  if (w.boxes.empty())
    throw TruncationError("coeff_z: exponent outside every certified region");
  Series r(a.t_rank(), 0);
  for (const auto& [m, c] : a.terms()) {
    if (m.z != alpha) continue;
    Monomial n;
    n.q = m.q;
    n.t = m.t;
    r.add_term(n, c);
  }
  r.set_window(w);
  return r;
}

Series const_z(const Series& a) {
  return coeff_z(a, std::vector<Coord>(static_cast<std::size_t>(a.z_rank()), 0));
}

namespace {

std::string rat_text(const Rat& r) {
  std::ostringstream os;
  if (r.get_den() == 1) {
    os << r.get_num();
  } else {
    os << "(" << r.get_num() << "/" << r.get_den() << ")";
  }
  return os.str();
}

void append_var(std::ostringstream& os, bool& first, const std::string& name, Coord e) {
  if (e == 0) return;
  if (!first) os << "*";
  first = false;
  os << name;
  if (e != 1) os << "^" << e;
}

std::string monomial_text(const Monomial& m, const Int& coeff) {
  std::ostringstream os;
  bool first = true;
  Int a = coeff < 0 ? Int(-coeff) : coeff;
  bool has_vars = m.q != 0;
  for (Coord e : m.t) has_vars = has_vars || e != 0;
  for (Coord e : m.z) has_vars = has_vars || e != 0;
  if (a != 1 || !has_vars) {
    os << a;
    first = false;
  }
  if (m.q != 0) {
    if (!first) os << "*";
    first = false;
    os << "q";
    if (m.q != 1) os << "^" << rat_text(m.q);
  }
  if (m.t.size() == 1) {
    append_var(os, first, "t", m.t[0]);
  } else {
    for (std::size_t i = 0; i < m.t.size(); ++i)
      append_var(os, first, "t" + std::to_string(i + 1), m.t[i]);
  }
  if (m.z.size() == 1) {
    append_var(os, first, "z", m.z[0]);
  } else {
    for (std::size_t i = 0; i < m.z.size(); ++i)
      append_var(os, first, "z" + std::to_string(i + 1), m.z[i]);
  }
  return os.str();
}

}  // namespace

std::string Series::canonical_text() const {
  auto v = sorted_terms();
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v) {
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    os << monomial_text(m, c);
  }
  return os.str();
}

std::string Series::window_text() const {
  std::ostringstream os;
  if (window_.exact()) return "exact";
  if (window_.boxes.empty()) return "uncertified";
  bool firstbox = true;
  for (const auto& b : window_.boxes) {
    if (!firstbox) os << " | ";
    firstbox = false;
    bool first = true;
    auto sep = [&]() {
      if (!first) os << ", ";
      first = false;
    };
    if (b.q_lo) { sep(); os << "q >= " << rat_text(*b.q_lo); }
    if (b.q_hi) { sep(); os << "q <= " << rat_text(*b.q_hi); }
    if (b.t_lo) { sep(); os << "t-height >= " << *b.t_lo; }
    if (b.z_lo) { sep(); os << "z-height >= " << *b.z_lo; }
    if (b.z_hi) { sep(); os << "z-height <= " << *b.z_hi; }
    if (first) os << "all";
  }
  return os.str();
}

std::string canonical_text(const Series& a) { return a.canonical_text(); }

namespace {

struct Tok {
  // one factor: name ("", "q", "t", "t3", "z", ...) and exponent
  std::string name;
  Rat exp;
  Int coeff{1};
  bool is_coeff = false;
};

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  Rat r;
  if (slash == std::string::npos) {
    r = Rat(mpz_class(s));
  } else {
    r = Rat(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
  }
  r.canonicalize();
  return r;
}

}  // namespace

Series parse_canonical(const std::string& text, int t_rank, int z_rank) {
  Series s(t_rank, z_rank);
  s.set_window(TruncationWindow::make_exact());
  if (text == "0") return s;
  std::size_t pos = 0;
  int sign = 1;
  auto skip_ws = [&]() {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_ws();
  if (pos < text.size() && text[pos] == '-') {
    sign = -1;
    ++pos;
  }
  while (pos < text.size()) {
    // parse one monomial
    Monomial m;
    m.q = 0;
    m.t.assign(static_cast<std::size_t>(t_rank), 0);
    m.z.assign(static_cast<std::size_t>(z_rank), 0);
    Int coeff = 1;
    bool done_term = false;
    while (!done_term) {
      skip_ws();
      if (pos >= text.size()) break;
      if (std::isdigit(text[pos])) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(text[pos])) ++pos;
        coeff = Int(text.substr(start, pos - start));
      } else if (text[pos] == 'q' || text[pos] == 't' || text[pos] == 'z') {
        char var = text[pos++];
        int index = 0;
        if (pos < text.size() && std::isdigit(text[pos])) {
          std::size_t start = pos;
          while (pos < text.size() && std::isdigit(text[pos])) ++pos;
          index = std::stoi(text.substr(start, pos - start));
        }
        Rat e = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          if (text[pos] == '(') {
            std::size_t close = text.find(')', pos);
            e = parse_rat(text.substr(pos + 1, close - pos - 1));
            pos = close + 1;
          } else {
            std::size_t start = pos;
            if (text[pos] == '-') ++pos;
            while (pos < text.size() && std::isdigit(text[pos])) ++pos;
            e = parse_rat(text.substr(start, pos - start));
          }
        }
        if (var == 'q') {
          m.q += e;
        } else {
          std::vector<Coord>& vec = (var == 't') ? m.t : m.z;
          std::size_t i = index == 0 ? 0 : static_cast<std::size_t>(index - 1);
          if (i >= vec.size()) throw UsageError("parse: variable index out of range");
          if (e.get_den() != 1) throw UsageError("parse: non-integer t/z exponent");
          vec[i] += static_cast<Coord>(e.get_num().get_si());
        }
      } else {
        throw UsageError("parse: unexpected character in series text");
      }
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      done_term = true;
    }
    m.q.canonicalize();
    s.add_term(m, sign > 0 ? coeff : Int(-coeff));
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] == '+') {
      sign = 1;
      ++pos;
    } else if (text[pos] == '-') {
      sign = -1;
      ++pos;
    } else {
      throw UsageError("parse: expected + or - between terms");
    }
    skip_ws();
  }
  return s;
}

}  // namespace yplumb
