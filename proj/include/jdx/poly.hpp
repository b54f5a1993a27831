#ifndef JDX_POLY_HPP
#define JDX_POLY_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "jdx/rat.hpp"

namespace jdx {

// Dense univariate polynomial over the rationals. Coefficient vector has no
// trailing zeros; the zero polynomial is the empty vector with degree() == -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rat& c) {
    if (sgn(c) != 0) c_.push_back(c);
  }
  explicit Poly(long c) : Poly(Rat(c)) {}
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static Poly X() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

  // a*x + b as a polynomial
  static Poly affine(const Rat& a, const Rat& b) {
    return Poly(std::vector<Rat>{b, a});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  Rat coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<size_t>(i)];
  }
  const Rat& lc() const {
    if (c_.empty()) throw Error("lc of zero polynomial");
    return c_.back();
  }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(const Rat& s, Poly p) {
    for (auto& x : p.c_) x *= s;
    p.normalize();
    return p;
  }
  friend Poly operator*(Poly p, const Rat& s) { return s * std::move(p); }
  Poly& operator*=(const Rat& s) { return *this = std::move(*this) * s; }

  Poly pow(unsigned e) const {
    Poly acc(Rat(1));
    Poly b = *this;
    while (e) {
      if (e & 1) acc *= b;
      if (e >>= 1) b *= b;
    }
    return acc;
  }

  // Euclidean division over the rationals: *this = q*d + r, deg r < deg d.
  std::pair<Poly, Poly> divrem(const Poly& d) const {
    if (d.is_zero()) throw DivisionError("Poly::divrem by zero");
    Poly r = *this;
    if (r.degree() < d.degree()) return {Poly(), r};
    std::vector<Rat> q(static_cast<size_t>(r.degree() - d.degree() + 1), Rat(0));
    Rat inv_lc = Rat(1) / d.lc();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int k = r.degree() - d.degree();
      Rat f = r.lc() * inv_lc;
      q[static_cast<size_t>(k)] = f;
      for (int i = 0; i <= d.degree(); ++i)
        r.c_[static_cast<size_t>(i + k)] -= f * d.coeff(i);
      r.normalize();
    }
    return {Poly(std::move(q)), r};
  }

  Poly exact_div(const Poly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw DivisionError("Poly::exact_div: nonzero remainder");
    return q;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * c_[i];
    return Poly(std::move(r));
  }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  // p(inner(x)), Horner in the inner polynomial
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly(c_[i]);
    return acc;
  }

  // p(a*x + b)
  Poly comp_affine(const Rat& a, const Rat& b) const {
    return compose(affine(a, b));
  }

  // p(x + b)
  Poly shift(const Rat& b) const { return comp_affine(Rat(1), b); }

  // p(-x - theta), the coefficient reflection used throughout
  Poly reflect(const Rat& theta) const { return comp_affine(Rat(-1), -theta); }

  Poly monic() const {
    if (is_zero()) return *this;
    return (Rat(1) / lc()) * (*this);
  }

  std::string to_string(const std::string& var = "n") const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
      const Rat& a = c_[i];
      if (sgn(a) == 0) continue;
      if (!s.empty()) s += sgn(a) > 0 ? " + " : " - ";
      else if (sgn(a) < 0) s += "-";
      Rat mag = jdx::abs(a);
      bool unit = (mag == 1);
      if (i == 0) {
        s += jdx::to_string(mag);
      } else {
        if (!unit) s += jdx::to_string(mag) + "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void normalize() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
};

namespace detail {

// Integer polynomial support for gcd and root isolation. Represented as a
// coefficient vector without trailing zeros, low degree first.
using ZPoly = std::vector<Int>;

inline void zp_normalize(ZPoly& p) {
  while (!p.empty() && mpz_sgn(p.back().get_mpz_t()) == 0) p.pop_back();
}

inline int zp_deg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Int zp_content(const ZPoly& p) {
  Int g(0);
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;  // zero for the zero polynomial
}

inline void zp_divexact(ZPoly& p, const Int& d) {
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

// Strip positive content, keeping signs.
inline void zp_primitive(ZPoly& p) {
  zp_normalize(p);
  if (p.empty()) return;
  Int g = zp_content(p);
  if (g > 1) zp_divexact(p, g);
}

inline ZPoly zp_from_poly(const Poly& p) {
  Int l(1);
  for (int i = 0; i <= p.degree(); ++i)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.coeff(i).get_den().get_mpz_t());
  ZPoly r(static_cast<size_t>(p.degree() + 1));
  for (int i = 0; i <= p.degree(); ++i) {
    Rat c = p.coeff(i) * Rat(l);
    r[static_cast<size_t>(i)] = c.get_num();
  }
  zp_primitive(r);
  return r;
}

inline Poly zp_to_poly(const ZPoly& p) {
  std::vector<Rat> c(p.size());
  for (size_t i = 0; i < p.size(); ++i) c[i] = Rat(p[i]);
  return Poly(std::move(c));
}

inline ZPoly zp_derivative(const ZPoly& p) {
  if (p.size() <= 1) return {};
  ZPoly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = Int(static_cast<long>(i)) * p[i];
  return r;
}

// Pseudo-remainder with a positive overall scaling factor, so the result is a
// positive rational multiple of the true remainder of a by b. Safe for Sturm
// sign sequences. Eliminates with lc(b)^2 per step.
inline ZPoly zp_prem_pos(ZPoly r, const ZPoly& b) {
  zp_normalize(r);
  const Int& lb = b.back();
  Int lb2 = lb * lb;
  while (zp_deg(r) >= zp_deg(b)) {
    int k = zp_deg(r) - zp_deg(b);
    Int lr = r.back();
    for (auto& c : r) c *= lb2;
    for (int i = 0; i <= zp_deg(b); ++i)
      r[static_cast<size_t>(i + k)] -= lr * lb * b[static_cast<size_t>(i)];
    zp_normalize(r);
    if (zp_deg(r) >= 0 && zp_content(r) > 1) zp_divexact(r, zp_content(r));
  }
  return r;
}

// Sign of p at the rational point x = a/b (b > 0), via the homogeneous form
// sum c_i a^i b^(d-i); integer arithmetic only.
inline int zp_sign_at(const ZPoly& p, const Rat& x) {
  if (p.empty()) return 0;
  const Int a = x.get_num();
  const Int b = x.get_den();
  Int acc(0);
  Int bp(1);
  // Horner from the top: acc = acc*a + c_i*b^(d-i)
  for (size_t i = p.size(); i-- > 0;) {
    acc = acc * a + p[i] * bp;
    if (i > 0) bp *= b;
  }
  return mpz_sgn(acc.get_mpz_t());
}

// 1 + max |c_i| / |lc|, rounded up: every real root has absolute value
// strictly below this.
inline Int zp_root_bound(const ZPoly& p) {
  Int m(0);
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Int a = ::abs(p[i]);
    if (a > m) m = a;
  }
  Int l = ::abs(p.back());
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), m.get_mpz_t(), l.get_mpz_t());
  return q + 2;
}

struct SturmChain {
  std::vector<ZPoly> s;
  std::vector<Int> bounds;  // per-element root bound, for cheap signs far out

  explicit SturmChain(const ZPoly& p) {
    ZPoly a = p;
    zp_primitive(a);
    s.push_back(a);
    ZPoly b = zp_derivative(a);
    zp_primitive(b);
    while (!b.empty()) {
      s.push_back(b);
      ZPoly r = zp_prem_pos(a, b);
      for (auto& c : r) c = -c;
      zp_primitive(r);
      a = std::move(b);
      b = std::move(r);
    }
    bounds.reserve(s.size());
    for (const auto& q : s) bounds.push_back(zp_root_bound(q));
  }

  int sign_at(size_t k, const Rat& x) const {
    const ZPoly& p = s[k];
    if (p.empty()) return 0;
    if (is_integer(x)) {
      // beyond the element's root bound the leading term decides
      Int a = x.get_num();
      Int m = ::abs(a);
      if (m >= bounds[k]) {
        int ls = mpz_sgn(p.back().get_mpz_t());
        if (mpz_sgn(a.get_mpz_t()) < 0 && (zp_deg(p) & 1)) ls = -ls;
        return ls;
      }
    }
    return zp_sign_at(p, x);
  }

  // Sign variations at x, zeros skipped.
  int variations(const Rat& x) const {
    int v = 0, prev = 0;
    for (size_t k = 0; k < s.size(); ++k) {
      int sg = sign_at(k, x);
      if (sg == 0) continue;
      if (prev != 0 && sg != prev) ++v;
      prev = sg;
    }
    return v;
  }
};

inline void zp_isolate_integer_roots(const SturmChain& chain, const ZPoly& sqf,
                                     const Int& lo, const Int& hi, int vlo, int vhi,
                                     std::vector<Int>& out) {
  if (vlo - vhi <= 0) return;
  if (hi - lo == 1) {
    if (zp_sign_at(sqf, Rat(hi)) == 0) out.push_back(hi);
    return;
  }
  Int mid = (lo + hi) / 2;  // truncation is fine, lo < mid < hi holds
  if (mid == lo) mid = lo + 1;
  int vmid = chain.variations(Rat(mid));
  zp_isolate_integer_roots(chain, sqf, lo, mid, vlo, vmid, out);
  zp_isolate_integer_roots(chain, sqf, mid, hi, vmid, vhi, out);
}

}  // namespace detail

// Monic gcd over the rationals, computed with an integer primitive remainder
// sequence to keep coefficient growth in check.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  detail::ZPoly x = detail::zp_from_poly(a);
  detail::ZPoly y = detail::zp_from_poly(b);
  if (detail::zp_deg(x) < detail::zp_deg(y)) std::swap(x, y);
  while (!y.empty()) {
    detail::ZPoly r = detail::zp_prem_pos(x, y);
    detail::zp_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  return detail::zp_to_poly(x).monic();
}

inline Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) throw Error("squarefree_part of zero polynomial");
  if (p.degree() == 0) return Poly(Rat(1));
  return p.exact_div(gcd(p, p.derivative())).monic();
}

// All integer roots of p, ascending. Exact: Sturm isolation over the full
// root bound, with integer candidates confirmed by evaluation.
inline std::vector<Int> integer_roots(const Poly& p) {
  if (p.is_zero()) throw Error("integer_roots of zero polynomial");
  std::vector<Int> out;
  Poly q = p;
  if (sgn(q.coeff(0)) == 0) {
    out.push_back(Int(0));
    std::vector<Rat> c(q.coeffs());
    size_t v = 0;
    while (v < c.size() && sgn(c[v]) == 0) ++v;
    q = Poly(std::vector<Rat>(c.begin() + static_cast<long>(v), c.end()));
  }
  if (q.degree() >= 1) {
    Poly sq = squarefree_part(q);
    detail::ZPoly zp = detail::zp_from_poly(sq);
    detail::SturmChain chain(zp);
    Int m = detail::zp_root_bound(zp);
    int vlo = chain.variations(Rat(-m));
    int vhi = chain.variations(Rat(m));
    detail::zp_isolate_integer_roots(chain, zp, -m, m, vlo, vhi, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_integer_root(const Poly& p) { return !integer_roots(p).empty(); }

}  // namespace jdx

#endif
