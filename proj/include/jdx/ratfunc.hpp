#ifndef JDX_RATFUNC_HPP
#define JDX_RATFUNC_HPP

#include <string>
#include <utility>

#include "jdx/poly.hpp"

namespace jdx {

// Rational function in one variable, always reduced, denominator monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rat(1)) {}
  explicit RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
  explicit RatFunc(long c) : num_(Rat(c)), den_(Rat(1)) {}
  explicit RatFunc(Poly p) : num_(std::move(p)), den_(Rat(1)) {}
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RatFunc X() { return RatFunc(Poly::X()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.is_constant() && den_.degree() == 0; }

  // Only valid when den is constant 1 (guaranteed monic), i.e. is_polynomial().
  const Poly& as_poly() const {
    if (!is_polynomial()) throw Error("RatFunc::as_poly: denominator is not constant");
    return num_;
  }
  Rat as_rat() const {
    if (!is_constant()) throw Error("RatFunc::as_rat: not a constant");
    return num_.coeff(0);
  }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionError("RatFunc: division by zero");
    if (a.is_zero()) return RatFunc();
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend RatFunc operator*(const Rat& s, const RatFunc& r) {
    return RatFunc(s * r.num_, r.den_);
  }
  friend RatFunc operator*(const RatFunc& r, const Rat& s) { return s * r; }

  RatFunc inverse() const {
    if (is_zero()) throw DivisionError("RatFunc::inverse of zero");
    return RatFunc(den_, num_);
  }

  RatFunc pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc acc(Rat(1));
    RatFunc b = *this;
    unsigned k = static_cast<unsigned>(e);
    while (k) {
      if (k & 1) acc *= b;
      if (k >>= 1) b *= b;
    }
    return acc;
  }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (sgn(d) == 0)
      throw PoleError("RatFunc::eval: pole at " + jdx::to_string(x));
    return num_.eval(x) / d;
  }

  bool has_pole_at(const Rat& x) const { return sgn(den_.eval(x)) == 0; }

  RatFunc comp_affine(const Rat& a, const Rat& b) const {
    return RatFunc(num_.comp_affine(a, b), den_.comp_affine(a, b));
  }
  RatFunc shift(const Rat& b) const { return comp_affine(Rat(1), b); }
  RatFunc reflect(const Rat& theta) const { return comp_affine(Rat(-1), -theta); }

  // r(inner(x)) for a polynomial inner
  RatFunc compose_poly(const Poly& inner) const {
    return RatFunc(num_.compose(inner), den_.compose(inner));
  }

  std::string to_string(const std::string& var = "n") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw DivisionError("RatFunc: zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(Rat(1));
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    Rat l = Rat(1) / den_.lc();
    num_ *= l;
    den_ *= l;
  }

  Poly num_;
  Poly den_;
};

}  // namespace jdx

#endif
