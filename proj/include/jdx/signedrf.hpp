#ifndef JDX_SIGNEDRF_HPP
#define JDX_SIGNEDRF_HPP

#include <string>

#include "jdx/ratfunc.hpp"

namespace jdx {

// Coefficient field element ev(n) + od(n)*sigma(n) with sigma(n) = (-1)^n,
// sigma^2 = 1. The sign sequence is carried structurally: shifting by an odd
// amount flips the sign of the od component.
class SRF {
 public:
  SRF() = default;
  explicit SRF(const Rat& c) : ev_(c) {}
  explicit SRF(long c) : ev_(Rat(c)) {}
  explicit SRF(RatFunc ev) : ev_(std::move(ev)) {}
  SRF(RatFunc ev, RatFunc od) : ev_(std::move(ev)), od_(std::move(od)) {}

  static SRF sigma() { return SRF(RatFunc(), RatFunc(Rat(1))); }
  static SRF n() { return SRF(RatFunc::X()); }

  const RatFunc& ev() const { return ev_; }
  const RatFunc& od() const { return od_; }
  bool is_zero() const { return ev_.is_zero() && od_.is_zero(); }
  bool sigma_free() const { return od_.is_zero(); }

  bool operator==(const SRF& o) const { return ev_ == o.ev_ && od_ == o.od_; }
  bool operator!=(const SRF& o) const { return !(*this == o); }

  SRF operator-() const { return SRF(-ev_, -od_); }
  friend SRF operator+(const SRF& a, const SRF& b) { return {a.ev_ + b.ev_, a.od_ + b.od_}; }
  friend SRF operator-(const SRF& a, const SRF& b) { return {a.ev_ - b.ev_, a.od_ - b.od_}; }
  friend SRF operator*(const SRF& a, const SRF& b) {
    return {a.ev_ * b.ev_ + a.od_ * b.od_, a.ev_ * b.od_ + a.od_ * b.ev_};
  }
  SRF& operator+=(const SRF& o) { return *this = *this + o; }
  SRF& operator-=(const SRF& o) { return *this = *this - o; }
  SRF& operator*=(const SRF& o) { return *this = *this * o; }

  friend SRF operator*(const Rat& s, const SRF& a) { return {s * a.ev_, s * a.od_}; }
  friend SRF operator*(const SRF& a, const Rat& s) { return s * a; }

  bool invertible() const { return !(ev_ * ev_ - od_ * od_).is_zero(); }

  SRF inverse() const {
    RatFunc norm = ev_ * ev_ - od_ * od_;
    if (norm.is_zero())
      throw DivisionError("SRF::inverse: ev^2 - od^2 vanishes identically");
    return {ev_ / norm, -od_ / norm};
  }
  friend SRF operator/(const SRF& a, const SRF& b) { return a * b.inverse(); }

  // value at n + j; the sign sequence contributes (-1)^j
  SRF shift_int(long j) const {
    RatFunc e = ev_.shift(Rat(j));
    RatFunc o = od_.shift(Rat(j));
    if (j & 1) o = -o;
    return {std::move(e), std::move(o)};
  }

  Rat eval_at_int(long n0) const {
    Rat v = ev_.eval(Rat(n0));
    if (!od_.is_zero()) {
      Rat w = od_.eval(Rat(n0));
      v += (n0 % 2 != 0) ? Rat(-w) : w;
    }
    return v;
  }

  // reflection n -> -(n+theta); defined only on sign-free elements, since the
  // reflected parity of sigma is not expressible for non-integer theta
  SRF involute(const Rat& theta) const {
    if (!od_.is_zero())
      throw ContractError("SRF::involute: reflection undefined on sign-carrying element");
    return SRF(ev_.reflect(theta));
  }

  std::string to_string(const std::string& var = "n") const {
    if (is_zero()) return "0";
    std::string s;
    if (!ev_.is_zero()) s += ev_.to_string(var);
    if (!od_.is_zero()) {
      if (!s.empty()) s += " + ";
      s += "(" + od_.to_string(var) + ")*sigma";
    }
    return s;
  }

 private:
  RatFunc ev_;
  RatFunc od_;
};

}  // namespace jdx

#endif
