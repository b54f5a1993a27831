#ifndef JDX_SERIES_HPP
#define JDX_SERIES_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jdx/diffop.hpp"
#include "jdx/error.hpp"
#include "jdx/jacobi.hpp"
#include "jdx/params.hpp"
#include "jdx/poly.hpp"
#include "jdx/rat.hpp"
#include "jdx/ratfunc.hpp"
#include "jdx/zdiffop.hpp"

namespace jdx {

// Truncated Laurent series in t = (1 - z)/2 with exact rational coefficients.
// Exponents below val() are zero, exponents in [val(), trunc()) are stored,
// and nothing is known from trunc() on.  Operations propagate the truncation
// window of their inputs, so a result that compares equal does so over the
// range both sides actually know.
class LaurentSeries {
 public:
  LaurentSeries() = default;

  static LaurentSeries zero(long trunc) {
    LaurentSeries s;
    s.val_ = trunc;
    return s;
  }

  static LaurentSeries monomial(long k, const Rat& c, long trunc) {
    if (k >= trunc) throw ContractError("monomial exponent beyond truncation");
    LaurentSeries s;
    s.val_ = k;
    s.c_.assign(static_cast<size_t>(trunc - k), Rat(0));
    s.c_[0] = c;
    s.normalize();
    return s;
  }

  // polynomial in t, viewed through a finite window
  static LaurentSeries from_poly_t(const Poly& p, long trunc) {
    LaurentSeries s;
    s.val_ = 0;
    s.c_.assign(static_cast<size_t>(trunc > 0 ? trunc : 0), Rat(0));
    for (long k = 0; k < trunc && k <= p.degree(); ++k)
      s.c_[static_cast<size_t>(k)] = p.coeff(k);
    if (p.degree() >= trunc)
      throw ContractError("polynomial does not fit the truncation window");
    s.normalize();
    return s;
  }

  long val() const { return val_; }
  long trunc() const { return val_ + static_cast<long>(c_.size()); }

  Rat coeff(long k) const {
    if (k < val_) return Rat(0);
    if (k >= trunc()) throw ContractError("coefficient index beyond truncation");
    return c_[static_cast<size_t>(k - val_)];
  }

  // first exponent with a nonzero coefficient; trunc() if none is visible
  long true_val() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return val_ + static_cast<long>(i);
    return trunc();
  }

  bool knows_through(long order) const { return trunc() > order; }

  bool is_zero_through(long order) const {
    if (!knows_through(order)) throw ContractError("truncation below requested order");
    for (size_t i = 0; i < c_.size(); ++i) {
      if (val_ + static_cast<long>(i) > order) break;
      if (sgn(c_[i]) != 0) return false;
    }
    return true;
  }

  LaurentSeries operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  LaurentSeries operator+(const LaurentSeries& o) const {
    long v = std::min(val_, o.val_);
    long tr = std::min(trunc(), o.trunc());
    LaurentSeries r;
    r.val_ = std::min(v, tr);
    r.c_.assign(static_cast<size_t>(tr - r.val_), Rat(0));
    for (long k = r.val_; k < tr; ++k)
      r.c_[static_cast<size_t>(k - r.val_)] = known(k) + o.known(k);
    r.normalize();
    return r;
  }

  LaurentSeries operator-(const LaurentSeries& o) const { return *this + (-o); }

  LaurentSeries operator*(const LaurentSeries& o) const {
    long v = val_ + o.val_;
    long tr = std::min(val_ + o.trunc(), o.val_ + trunc());
    LaurentSeries r;
    r.val_ = std::min(v, tr);
    r.c_.assign(static_cast<size_t>(tr - r.val_), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) {
        long k = val_ + static_cast<long>(i) + o.val_ + static_cast<long>(j);
        if (k >= tr) break;
        r.c_[static_cast<size_t>(k - r.val_)] += c_[i] * o.c_[j];
      }
    }
    r.normalize();
    return r;
  }

  LaurentSeries operator*(const Rat& c) const {
    LaurentSeries r = *this;
    for (auto& x : r.c_) x *= c;
    r.normalize();
    return r;
  }

  friend LaurentSeries operator*(const Rat& c, const LaurentSeries& s) { return s * c; }

  // product with an exact polynomial in t; only the low end of the
  // polynomial limits what stays known
  LaurentSeries mul_poly(const Poly& p) const {
    if (p.is_zero()) return zero(trunc());
    long pv = 0;
    while (sgn(p.coeff(pv)) == 0) ++pv;
    long tr = trunc() + pv;
    LaurentSeries r;
    r.val_ = val_ + pv;
    r.c_.assign(static_cast<size_t>(tr - r.val_), Rat(0));
    for (long j = pv; j <= p.degree(); ++j) {
      Rat pj = p.coeff(j);
      if (sgn(pj) == 0) continue;
      for (size_t i = 0; i < c_.size(); ++i) {
        long k = val_ + static_cast<long>(i) + j;
        if (k >= tr) break;
        r.c_[static_cast<size_t>(k - r.val_)] += pj * c_[i];
      }
    }
    r.normalize();
    return r;
  }

  // long division by an exact nonzero polynomial in t
  LaurentSeries div_poly(const Poly& q) const {
    if (q.is_zero()) throw DivisionError("series division by the zero polynomial");
    long m = 0;
    while (sgn(q.coeff(m)) == 0) ++m;
    Rat q0 = q.coeff(m);
    LaurentSeries r;
    r.val_ = val_ - m;
    r.c_.assign(c_.size(), Rat(0));
    for (size_t k = 0; k < c_.size(); ++k) {
      Rat acc = c_[k];
      long jmax = std::min<long>(static_cast<long>(k), q.degree() - m);
      for (long j = 1; j <= jmax; ++j)
        acc -= q.coeff(m + j) * r.c_[k - static_cast<size_t>(j)];
      r.c_[k] = acc / q0;
    }
    r.normalize();
    return r;
  }

  LaurentSeries shifted(long k) const {
    LaurentSeries r = *this;
    r.val_ += k;
    return r;
  }

  LaurentSeries derivative_t() const {
    LaurentSeries r;
    r.val_ = val_ - 1;
    r.c_.assign(c_.size(), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
      r.c_[i] = Rat(val_ + static_cast<long>(i)) * c_[i];
    r.normalize();
    return r;
  }

  // d/dz = -(1/2) d/dt
  LaurentSeries derivative_z() const { return derivative_t() * rat(-1, 2); }

  // equality over the window both sides know
  bool operator==(const LaurentSeries& o) const {
    long tr = std::min(trunc(), o.trunc());
    for (long k = std::min(val_, o.val_); k < tr; ++k)
      if (known(k) != o.known(k)) return false;
    return true;
  }
  bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      if (!first) os << " + ";
      os << jdx::to_string(c_[i]) << "*t^" << val_ + static_cast<long>(i);
      first = false;
    }
    if (first) os << "0";
    os << " + O(t^" << trunc() << ")";
    return os.str();
  }

 private:
  Rat known(long k) const {
    if (k < val_ || k >= trunc()) return Rat(0);
    return c_[static_cast<size_t>(k - val_)];
  }

  void normalize() {
    size_t lead = 0;
    while (lead < c_.size() && sgn(c_[lead]) == 0) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      val_ += static_cast<long>(lead);
    }
  }

  long val_ = 0;
  std::vector<Rat> c_;
};

// g(z) acting on a series, with z = 1 - 2t
inline LaurentSeries mul_ratfunc_z(const RatFunc& g, const LaurentSeries& s) {
  return s.mul_poly(g.num().comp_affine(Rat(-2), Rat(1)))
      .div_poly(g.den().comp_affine(Rat(-2), Rat(1)));
}

inline LaurentSeries apply_z(const DiffOpZ& D, const LaurentSeries& s) {
  LaurentSeries acc = LaurentSeries::zero(s.trunc());
  LaurentSeries der = s;
  long d = 0;
  for (const auto& [ord, g] : D.coeffs()) {
    while (d < ord) {
      der = der.derivative_z();
      ++d;
    }
    acc = acc + mul_ratfunc_z(g, der);
  }
  return acc;
}

// family of series indexed by consecutive integers n in [lo, lo + size - 1]
struct SeriesFamily {
  long lo = 0;
  std::vector<LaurentSeries> v;

  long hi() const { return lo + static_cast<long>(v.size()) - 1; }

  const LaurentSeries& at(long n) const {
    if (n < lo || n > hi()) throw ContractError("series family index outside window");
    return v[static_cast<size_t>(n - lo)];
  }

  LaurentSeries& at(long n) {
    if (n < lo || n > hi()) throw ContractError("series family index outside window");
    return v[static_cast<size_t>(n - lo)];
  }
};

inline LaurentSeries hyp_series(const Rat& a, const Rat& b, const Rat& c, long trunc) {
  LaurentSeries s = LaurentSeries::zero(trunc);
  if (trunc <= 0) return s;
  LaurentSeries term = LaurentSeries::monomial(0, Rat(1), trunc);
  s = term;
  Rat coeff(1);
  for (long j = 0; j + 1 < trunc; ++j) {
    Rat den = Rat(j + 1) * (c + Rat(j));
    if (sgn(den) == 0) throw PoleError("hyp_series: lower parameter hits a nonpositive integer");
    coeff *= (a + Rat(j)) * (b + Rat(j)) / den;
    s = s + LaurentSeries::monomial(j + 1, coeff, trunc);
  }
  return s;
}

// eigenfunction series at integer n; the branch for negative integer alpha
// starts at t^{-alpha} and carries its normalizing constant
inline LaurentSeries p_series(const Params& p, long n, long trunc) {
  Rat en = p.eps + Rat(n);
  if (is_integer(p.alpha) && sgn(p.alpha) < 0) {
    long m = -to_int(p.alpha).get_si();
    Rat cnorm = pochhammer(-p.eps, m) * pochhammer(p.eps + p.alpha + p.beta + 1, m) /
                (factorial(m - 1) * factorial(m));
    if (m % 2 != 0) cnorm = -cnorm;
    Rat pref = pochhammer(p.eps + p.beta + 1, n) / pochhammer(p.eps + p.alpha + p.beta + 1, n);
    LaurentSeries f =
        hyp_series(-(en + p.alpha), en + p.beta + 1, -p.alpha + 1, trunc - m);
    return (cnorm * pref) * f.shifted(m);
  }
  Rat pref = pochhammer(p.eps + p.alpha + 1, n) / pochhammer(p.eps + 1, n);
  return pref * hyp_series(-en, en + p.alpha + p.beta + 1, p.alpha + 1, trunc);
}

inline SeriesFamily p_family(const Params& p, long lo, long hi, long trunc) {
  if (lo > hi) throw ContractError("empty series family window");
  SeriesFamily f;
  f.lo = lo;
  f.v.reserve(static_cast<size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) f.v.push_back(p_series(p, n, trunc));
  return f;
}

// gauge-stripped family: p(n, z) / phi(n)
inline SeriesFamily p_tilde_family(const Params& p, long lo, long hi, long trunc) {
  SeriesFamily f = p_family(p, lo, hi, trunc);
  for (long n = lo; n <= hi; ++n) {
    Rat ph = phi_at(p, n);
    if (sgn(ph) == 0) throw PoleError("gauge factor vanishes at an integer");
    f.at(n) = f.at(n) * (Rat(1) / ph);
  }
  return f;
}

// (D f)(n) = sum_j c_j(n) f(n + j); the window shrinks by the support
inline SeriesFamily apply_n(const DiffOp& D, const SeriesFamily& f) {
  if (D.is_zero()) throw ContractError("applying the zero operator to a family");
  auto [jlo, jhi] = D.support();
  long lo = f.lo - jlo;
  long hi = f.hi() - jhi;
  if (lo > hi) throw ContractError("series family window too small for the operator");
  SeriesFamily r;
  r.lo = lo;
  r.v.reserve(static_cast<size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) {
    LaurentSeries acc = LaurentSeries::zero(f.at(n + jlo).trunc());
    for (const auto& [j, c] : D.coeffs()) acc = acc + c.eval_at_int(n) * f.at(n + j);
    r.v.push_back(acc);
  }
  return r;
}

inline SeriesFamily apply_z_family(const DiffOpZ& D, const SeriesFamily& f) {
  SeriesFamily r;
  r.lo = f.lo;
  r.v.reserve(f.v.size());
  for (const auto& s : f.v) r.v.push_back(apply_z(D, s));
  return r;
}

struct VerifyReport {
  bool ok = true;
  long order = 0;
  std::string witness;
};

// checks (B Psi)(n, z) = eigen(lambda(n - shift)) Psi(n, z) through the
// requested order, over the whole window of the family
inline VerifyReport verify_eigen_z(const DiffOpZ& B, const Poly& eigen, const Params& par,
                                   const Rat& shift, const SeriesFamily& Psi, long order) {
  VerifyReport rep;
  rep.order = order;
  Poly lam = lambda_poly(par);
  for (long n = Psi.lo; n <= Psi.hi(); ++n) {
    LaurentSeries lhs = apply_z(B, Psi.at(n));
    Rat factor = eigen.eval(lam.eval(Rat(n) - shift));
    LaurentSeries diff = lhs - factor * Psi.at(n);
    if (!diff.knows_through(order))
      throw ContractError("verify_eigen_z: working truncation below requested order");
    if (!diff.is_zero_through(order)) {
      rep.ok = false;
      std::ostringstream os;
      os << "residual at n = " << n << ": " << diff.to_string();
      rep.witness = os.str();
      return rep;
    }
  }
  return rep;
}

}  // namespace jdx

#endif
