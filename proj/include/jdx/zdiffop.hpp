#ifndef JDX_ZDIFFOP_HPP
#define JDX_ZDIFFOP_HPP

#include <map>
#include <string>
#include <vector>

#include "jdx/ratfunc.hpp"

namespace jdx {

// Differential operator sum_d g_d(z) Dz^d with rational coefficients.
class DiffOpZ {
 public:
  DiffOpZ() = default;
  DiffOpZ(int order, RatFunc coeff) {
    if (!coeff.is_zero()) c_[order] = std::move(coeff);
  }
  explicit DiffOpZ(const RatFunc& mult) : DiffOpZ(0, mult) {}

  static DiffOpZ identity() { return DiffOpZ(0, RatFunc(Rat(1))); }
  static DiffOpZ Dz() { return DiffOpZ(1, RatFunc(Rat(1))); }
  static DiffOpZ mult_z() { return DiffOpZ(0, RatFunc::X()); }

  bool is_zero() const { return c_.empty(); }
  int order() const { return c_.empty() ? -1 : c_.rbegin()->first; }
  const std::map<int, RatFunc>& coeffs() const { return c_; }

  RatFunc coeff(int d) const {
    auto it = c_.find(d);
    return it == c_.end() ? RatFunc() : it->second;
  }

  bool operator==(const DiffOpZ& o) const { return c_ == o.c_; }
  bool operator!=(const DiffOpZ& o) const { return !(*this == o); }

  DiffOpZ operator-() const {
    DiffOpZ r = *this;
    for (auto& [d, g] : r.c_) g = -g;
    return r;
  }
  DiffOpZ& operator+=(const DiffOpZ& o) {
    for (const auto& [d, g] : o.c_) add_term(d, g);
    return *this;
  }
  DiffOpZ& operator-=(const DiffOpZ& o) {
    for (const auto& [d, g] : o.c_) add_term(d, -g);
    return *this;
  }
  friend DiffOpZ operator+(DiffOpZ a, const DiffOpZ& b) { return a += b; }
  friend DiffOpZ operator-(DiffOpZ a, const DiffOpZ& b) { return a -= b; }

  friend DiffOpZ operator*(const Rat& s, const DiffOpZ& d) {
    DiffOpZ r;
    for (const auto& [k, g] : d.c_) r.add_term(k, RatFunc(s) * g);
    return r;
  }
  friend DiffOpZ operator*(const RatFunc& s, const DiffOpZ& d) {
    DiffOpZ r;
    for (const auto& [k, g] : d.c_) r.add_term(k, s * g);
    return r;
  }

  // composition via Leibniz: Dz^d (g h) = sum_i C(d,i) g^(i) Dz^(d-i) h
  friend DiffOpZ operator*(const DiffOpZ& a, const DiffOpZ& b) {
    DiffOpZ r;
    if (a.is_zero() || b.is_zero()) return r;
    int dmax = a.order();
    for (const auto& [e, g] : b.c_) {
      std::vector<RatFunc> der{g};
      for (int i = 1; i <= dmax; ++i) der.push_back(der.back().derivative());
      for (const auto& [d, f] : a.c_) {
        Rat binom(1);
        for (int i = 0; i <= d; ++i) {
          if (!der[static_cast<size_t>(i)].is_zero())
            r.add_term(d - i + e, f * der[static_cast<size_t>(i)] * RatFunc(binom));
          binom *= Rat(d - i);
          binom /= Rat(i + 1);
        }
      }
    }
    return r;
  }
  DiffOpZ& operator*=(const DiffOpZ& o) { return *this = *this * o; }

  DiffOpZ pow(unsigned e) const {
    DiffOpZ acc = identity();
    DiffOpZ b = *this;
    while (e) {
      if (e & 1) acc *= b;
      if (e >>= 1) b *= b;
    }
    return acc;
  }

  std::string to_string(const std::string& var = "z") const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += "(" + it->second.to_string(var) + ")";
      if (it->first == 1) s += "*D" + var;
      if (it->first > 1) s += "*D" + var + "^" + std::to_string(it->first);
    }
    return s;
  }

 private:
  void add_term(int d, const RatFunc& g) {
    if (g.is_zero()) return;
    auto it = c_.find(d);
    if (it == c_.end()) {
      c_[d] = g;
    } else {
      it->second += g;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  std::map<int, RatFunc> c_;
};

}  // namespace jdx

#endif
