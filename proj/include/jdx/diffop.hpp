#ifndef JDX_DIFFOP_HPP
#define JDX_DIFFOP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jdx/signedrf.hpp"

namespace jdx {

// Difference operator sum_j c_j(n) T^j with SRF coefficients; T shifts the
// argument: (T^j f)(n) = f(n+j). Zero coefficients are never stored.
class DiffOp {
 public:
  DiffOp() = default;

  static DiffOp identity() { return DiffOp(0, SRF(1)); }
  static DiffOp shift(int j) { return DiffOp(j, SRF(1)); }
  DiffOp(int j, SRF coeff) {
    if (!coeff.is_zero()) c_[j] = std::move(coeff);
  }
  explicit DiffOp(const SRF& f) : DiffOp(0, f) {}

  bool is_zero() const { return c_.empty(); }
  const std::map<int, SRF>& coeffs() const { return c_; }

  SRF coeff(int j) const {
    auto it = c_.find(j);
    return it == c_.end() ? SRF() : it->second;
  }

  // [min shift, max shift]; undefined on the zero operator
  std::pair<int, int> support() const {
    if (c_.empty()) throw Error("support of zero operator");
    return {c_.begin()->first, c_.rbegin()->first};
  }

  bool operator==(const DiffOp& o) const { return c_ == o.c_; }
  bool operator!=(const DiffOp& o) const { return !(*this == o); }

  DiffOp operator-() const {
    DiffOp r = *this;
    for (auto& [j, f] : r.c_) f = -f;
    return r;
  }
  DiffOp& operator+=(const DiffOp& o) {
    for (const auto& [j, f] : o.c_) add_term(j, f);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    for (const auto& [j, f] : o.c_) add_term(j, -f);
    return *this;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }

  // composition: (A*B)(f) = A(B(f))
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    DiffOp r;
    for (const auto& [j, f] : a.c_)
      for (const auto& [k, g] : b.c_) r.add_term(j + k, f * g.shift_int(j));
    return r;
  }
  DiffOp& operator*=(const DiffOp& o) { return *this = *this * o; }

  friend DiffOp operator*(const SRF& s, const DiffOp& d) {
    DiffOp r;
    for (const auto& [j, f] : d.c_) r.add_term(j, s * f);
    return r;
  }
  friend DiffOp operator*(const Rat& s, const DiffOp& d) { return SRF(RatFunc(s)) * d; }

  DiffOp pow(unsigned e) const {
    DiffOp acc = identity();
    DiffOp b = *this;
    while (e) {
      if (e & 1) acc *= b;
      if (e >>= 1) b *= b;
    }
    return acc;
  }

  SRF apply(const SRF& f) const {
    SRF r;
    for (const auto& [j, c] : c_) r += c * f.shift_int(j);
    return r;
  }

  std::string to_string(const std::string& var = "n") const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [j, f] : c_) {
      if (!s.empty()) s += " + ";
      s += "(" + f.to_string(var) + ")";
      if (j != 0) s += "*T^" + std::to_string(j);
    }
    return s;
  }

 private:
  void add_term(int j, const SRF& f) {
    if (f.is_zero()) return;
    auto it = c_.find(j);
    if (it == c_.end()) {
      c_[j] = f;
    } else {
      it->second += f;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  std::map<int, SRF> c_;
};

inline DiffOp commutator(const DiffOp& a, const DiffOp& b) { return a * b - b * a; }

// Ad_g(D) = g D g^{-1} for a rational gauge g: coefficient c_j(n) g(n)/g(n+j).
inline DiffOp conjugate(const DiffOp& d, const RatFunc& g) {
  if (g.is_zero()) throw DivisionError("conjugate: zero gauge");
  DiffOp r;
  for (const auto& [j, f] : d.coeffs()) {
    RatFunc ratio = g / g.shift(Rat(j));
    r += DiffOp(j, f * SRF(ratio));
  }
  return r;
}

// Ad_sigma: conjugation by the sign sequence flips the sign of odd shifts.
inline DiffOp conjugate_sigma(const DiffOp& d) {
  DiffOp r;
  for (const auto& [j, f] : d.coeffs()) r += DiffOp(j, (j & 1) ? -f : f);
  return r;
}

// The involution: functions reflect at -(n+theta), T inverts. Algebra
// homomorphism on sign-free operators.
inline DiffOp involution_I(const DiffOp& d, const Rat& theta) {
  DiffOp r;
  for (const auto& [j, f] : d.coeffs()) r += DiffOp(-j, f.involute(theta));
  return r;
}

namespace detail {

inline std::optional<std::string> parity_roots(const RatFunc& f, bool want_even,
                                               const std::string& label) {
  if (f.is_zero())
    return label + " vanishes identically on " + (want_even ? std::string("even") : std::string("odd")) +
           " integers";
  for (const auto& r : integer_roots(f.num())) {
    bool even = mpz_even_p(r.get_mpz_t()) != 0;
    if (even == want_even)
      return label + " vanishes at n = " + r.get_str();
  }
  return std::nullopt;
}

}  // namespace detail

// A regular operator has pole-free coefficients on the integers and end
// coefficients that never vanish on the integers. Returns a description of
// the first defect, or nullopt when regular.
inline std::optional<std::string> regularity_witness(const DiffOp& d) {
  if (d.is_zero()) return "zero operator";
  for (const auto& [j, f] : d.coeffs()) {
    for (const RatFunc* part : {&f.ev(), &f.od()}) {
      if (part->is_zero()) continue;
      auto roots = integer_roots(part->den());
      if (!roots.empty())
        return "coefficient of T^" + std::to_string(j) + " has a pole at n = " +
               roots.front().get_str();
    }
  }
  auto [lo, hi] = d.support();
  for (int j : {lo, hi}) {
    const SRF f = d.coeff(j);
    std::string label = "coefficient of T^" + std::to_string(j);
    // value at even n is ev+od, at odd n is ev-od
    if (auto w = detail::parity_roots(f.ev() + f.od(), true, label)) return w;
    if (auto w = detail::parity_roots(f.ev() - f.od(), false, label)) return w;
    if (lo == hi) break;
  }
  return std::nullopt;
}

inline bool is_regular(const DiffOp& d) { return !regularity_witness(d).has_value(); }

// Solve A = Q * P for Q; throws when A is not right-divisible by P.
inline DiffOp right_divide(const DiffOp& a, const DiffOp& p) {
  if (p.is_zero()) throw DivisionError("right_divide by zero operator");
  if (a.is_zero()) return DiffOp();
  DiffOp r = a;
  DiffOp q;
  auto [plo, phi] = p.support();
  const int qmin = a.support().first - plo;
  const SRF ptop = p.coeff(phi);
  while (!r.is_zero()) {
    int rhi = r.support().second;
    int shift = rhi - phi;
    if (shift < qmin) throw DivisionError("right_divide: not divisible, remainder left");
    SRF denom = ptop.shift_int(shift);
    if (!denom.invertible())
      throw DivisionError("right_divide: leading coefficient not invertible at shift " +
                          std::to_string(shift));
    SRF qc = r.coeff(rhi) / denom;
    DiffOp term(shift, qc);
    q += term;
    r -= term * p;
  }
  return q;
}

// The unique L with L*P = P*L0, when P's kernel is L0-stable.
inline DiffOp darboux_solve(const DiffOp& p, const DiffOp& l0) {
  DiffOp pl = p * l0;
  DiffOp l = right_divide(pl, p);
  return l;
}

// Determinant of a square SRF matrix by cofactor expansion along the first
// column; sizes here stay small.
inline SRF srf_det(const std::vector<std::vector<SRF>>& m) {
  size_t n = m.size();
  if (n == 0) return SRF(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[1][0] * m[0][1];
  SRF acc;
  for (size_t r = 0; r < n; ++r) {
    if (m[r][0].is_zero()) continue;
    std::vector<std::vector<SRF>> minor;
    minor.reserve(n - 1);
    for (size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      minor.emplace_back(m[i].begin() + 1, m[i].end());
    }
    SRF term = m[r][0] * srf_det(minor);
    if (r & 1)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

struct KernelOp {
  DiffOp P;               // support [-m, 0], coefficient 1 at T^0
  std::vector<SRF> minors;  // minors[r] = det with row j = -r removed, r = 0..m
  const SRF& det0() const { return minors[0]; }        // Casoratian at rows -m..-1
  const SRF& det1() const { return minors[1]; }        // row -1 removed
  SRF det0_next() const { return minors.back(); }      // equals det0 shifted by 1
};

// Annihilator of the span of the given functions, normalized to coefficient 1
// at T^0: P = sum_r (-1)^r (minor_r / minor_0) T^{-r}.
inline KernelOp from_kernel(const std::vector<SRF>& basis) {
  int m = static_cast<int>(basis.size());
  if (m == 0) throw Error("from_kernel: empty basis");
  // rows j = -m..0, columns the basis functions shifted by j
  std::vector<std::vector<SRF>> rows(static_cast<size_t>(m) + 1);
  for (int j = -m; j <= 0; ++j) {
    auto& row = rows[static_cast<size_t>(j + m)];
    row.reserve(static_cast<size_t>(m));
    for (const auto& f : basis) row.push_back(f.shift_int(j));
  }
  KernelOp out;
  out.minors.resize(static_cast<size_t>(m) + 1);
  for (int r = 0; r <= m; ++r) {
    std::vector<std::vector<SRF>> mat;
    mat.reserve(static_cast<size_t>(m));
    for (int j = -m; j <= 0; ++j)
      if (j != -r) mat.push_back(rows[static_cast<size_t>(j + m)]);
    out.minors[static_cast<size_t>(r)] = srf_det(mat);
  }
  const SRF& d0 = out.minors[0];
  if (!d0.invertible())
    throw AdmissibilityError("from_kernel: degenerate basis, Casoratian not invertible");
  SRF d0inv = d0.inverse();
  for (int r = 0; r <= m; ++r) {
    SRF c = out.minors[static_cast<size_t>(r)] * d0inv;
    if (r & 1) c = -c;
    out.P += DiffOp(-r, c);
  }
  return out;
}

}  // namespace jdx

#endif
