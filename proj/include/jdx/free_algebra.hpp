#ifndef JDX_FREE_ALGEBRA_HPP
#define JDX_FREE_ALGEBRA_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "jdx/poly.hpp"

namespace jdx {

// Element of the free associative algebra on two letters over the rationals.
// Letter 'A' stands for the eigenvalue coordinate, letter 'M' for the
// operator coordinate; words multiply by concatenation. Used as a
// representation-independent certificate: the same element can be evaluated
// in the shift-operator algebra or, reversed, in the differential one.
class FreeElem {
 public:
  FreeElem() = default;

  static FreeElem one() { return from_word(""); }
  static FreeElem lambda() { return from_word("A"); }
  static FreeElem m() { return from_word("M"); }
  static FreeElem from_word(const std::string& w, const Rat& c = Rat(1)) {
    FreeElem e;
    if (sgn(c) != 0) e.t_[w] = c;
    return e;
  }
  // p(A) as a sum of pure-A words
  static FreeElem from_lambda_poly(const Poly& p) {
    FreeElem e;
    for (int i = 0; i <= p.degree(); ++i)
      if (sgn(p.coeff(i)) != 0) e.t_[std::string(static_cast<size_t>(i), 'A')] = p.coeff(i);
    return e;
  }

  const std::map<std::string, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  bool lambda_only() const {
    return std::all_of(t_.begin(), t_.end(), [](const auto& kv) {
      return kv.first.find('M') == std::string::npos;
    });
  }

  bool operator==(const FreeElem& o) const { return t_ == o.t_; }

  FreeElem operator-() const {
    FreeElem r = *this;
    for (auto& [w, c] : r.t_) c = -c;
    return r;
  }
  FreeElem& operator+=(const FreeElem& o) {
    for (const auto& [w, c] : o.t_) add_term(w, c);
    return *this;
  }
  FreeElem& operator-=(const FreeElem& o) {
    for (const auto& [w, c] : o.t_) add_term(w, -c);
    return *this;
  }
  friend FreeElem operator+(FreeElem a, const FreeElem& b) { return a += b; }
  friend FreeElem operator-(FreeElem a, const FreeElem& b) { return a -= b; }

  friend FreeElem operator*(const Rat& s, const FreeElem& e) {
    FreeElem r;
    if (sgn(s) == 0) return r;
    r.t_ = e.t_;
    for (auto& [w, c] : r.t_) c *= s;
    return r;
  }

  friend FreeElem operator*(const FreeElem& a, const FreeElem& b) {
    FreeElem r;
    for (const auto& [wa, ca] : a.t_)
      for (const auto& [wb, cb] : b.t_) r.add_term(wa + wb, ca * cb);
    return r;
  }
  FreeElem& operator*=(const FreeElem& o) { return *this = *this * o; }

  // commutator with the A letter
  FreeElem ad_lambda() const {
    static const FreeElem A = lambda();
    return A * (*this) - (*this) * A;
  }

  // p(s*ad_A + c*id) applied to this element, by Horner
  FreeElem apply_poly_ad(const Poly& p, const Rat& s, const Rat& c) const {
    FreeElem acc;
    for (int i = p.degree(); i >= 0; --i) {
      acc = s * acc.ad_lambda() + c * acc + p.coeff(i) * (*this);
    }
    return acc;
  }

  FreeElem reversed() const {
    FreeElem r;
    for (const auto& [w, c] : t_) {
      std::string rw(w.rbegin(), w.rend());
      r.add_term(rw, c);
    }
    return r;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : t_) {
      if (!s.empty()) s += " + ";
      s += jdx::to_string(c);
      if (!w.empty()) s += "*" + w;
    }
    return s;
  }

 private:
  void add_term(const std::string& w, const Rat& c) {
    if (sgn(c) == 0) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
      t_[w] = c;
    } else {
      it->second += c;
      if (sgn(it->second) == 0) t_.erase(it);
    }
  }

  std::map<std::string, Rat> t_;
};

// Evaluate a free element in any algebra with +, *, and Rat scalars.
// Words act left-to-right: "AM" evaluates to imgA * imgM. With reverse=true
// each word is reversed first (anti-homomorphism evaluation).
//
// Words are grouped as A^a mid A^b with mid M-delimited, so evaluation costs
// one cached composition per distinct (mid, b) pair plus a Horner pass in a.
template <class Op>
Op eval_free(const FreeElem& elem, const Op& imgA, const Op& imgM, const Op& identity,
             bool reverse = false) {
  const FreeElem e = reverse ? elem.reversed() : elem;

  // power cache for imgA
  std::vector<Op> powA{identity};
  auto pow_a = [&](size_t k) -> const Op& {
    while (powA.size() <= k) powA.push_back(powA.back() * imgA);
    return powA[k];
  };

  std::map<std::string, Op> midcache;
  auto mid_op = [&](const std::string& mid) -> const Op& {
    auto it = midcache.find(mid);
    if (it != midcache.end()) return it->second;
    Op acc = identity;
    for (char ch : mid) acc = acc * (ch == 'A' ? imgA : imgM);
    return midcache.emplace(mid, std::move(acc)).first->second;
  };

  std::map<std::pair<std::string, size_t>, Op> midb;
  auto mid_b_op = [&](const std::string& mid, size_t b) -> const Op& {
    auto key = std::make_pair(mid, b);
    auto it = midb.find(key);
    if (it != midb.end()) return it->second;
    Op v = mid_op(mid) * pow_a(b);
    return midb.emplace(std::move(key), std::move(v)).first->second;
  };

  // V[a] collects coefficient ops for the leading A^a
  std::map<size_t, Op> V;
  for (const auto& [w, c] : e.terms()) {
    size_t first_m = w.find('M');
    size_t a, b;
    std::string mid;
    if (first_m == std::string::npos) {
      a = w.size();
      b = 0;
    } else {
      size_t last_m = w.rfind('M');
      a = first_m;
      b = w.size() - 1 - last_m;
      mid = w.substr(a, last_m - first_m + 1);
    }
    Op term = c * mid_b_op(mid, b);
    auto it = V.find(a);
    if (it == V.end())
      V.emplace(a, std::move(term));
    else
      it->second += term;
  }

  if (V.empty()) return Op();
  size_t amax = V.rbegin()->first;
  Op acc;
  for (size_t i = amax + 1; i-- > 0;) {
    acc = imgA * acc;
    auto it = V.find(i);
    if (it != V.end()) acc += it->second;
  }
  return acc;
}

}  // namespace jdx

#endif
