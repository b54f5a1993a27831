#ifndef JDX_JACOBI_HPP
#define JDX_JACOBI_HPP

#include "jdx/diffop.hpp"
#include "jdx/params.hpp"
#include "jdx/zdiffop.hpp"

namespace jdx {

namespace detail {

inline Poly lin(const Rat& c) { return Poly::affine(Rat(1), c); }  // n + c

// prod_{r=0..m-1} (n + c + step*r)
inline Poly poch_prod(const Rat& c, int m, int step = 1) {
  Poly acc(Rat(1));
  for (int r = 0; r < m; ++r) acc *= lin(c + Rat(step) * Rat(r));
  return acc;
}

}  // namespace detail

// The tridiagonal operator of the family, support [-1, 1].
inline DiffOp jacobi_L(const Params& p) {
  using detail::lin;
  Rat s = 2 * p.eps + p.alpha + p.beta;  // coefficients use 2n + s + {0,1,2}
  Poly two_n = Poly::affine(Rat(2), Rat(0));
  RatFunc a(Rat(2) * lin(p.eps + 1) * lin(p.eps + p.alpha + p.beta + 1),
            (two_n + Poly(s + 1)) * (two_n + Poly(s + 2)));
  RatFunc b(Poly(p.beta * p.beta - p.alpha * p.alpha),
            (two_n + Poly(s)) * (two_n + Poly(s + 2)));
  RatFunc c(Rat(2) * lin(p.eps + p.alpha) * lin(p.eps + p.beta),
            (two_n + Poly(s)) * (two_n + Poly(s + 1)));
  return DiffOp(1, SRF(a)) + DiffOp(0, SRF(b)) + DiffOp(-1, SRF(c));
}

// The gauge-transformed operator; reflection-invariant for all parameters.
inline DiffOp jacobi_L_tilde(const Params& p) {
  using detail::lin;
  Rat s = 2 * p.eps + p.alpha + p.beta;
  Poly two_n = Poly::affine(Rat(2), Rat(0));
  RatFunc a(Rat(2) * lin(p.eps + p.alpha + 1) * lin(p.eps + p.alpha + p.beta + 1),
            (two_n + Poly(s + 1)) * (two_n + Poly(s + 2)));
  // same diagonal as the plain operator: conjugation by a gauge cannot touch it
  RatFunc b(Poly(p.beta * p.beta - p.alpha * p.alpha),
            (two_n + Poly(s)) * (two_n + Poly(s + 2)));
  RatFunc c(Rat(2) * lin(p.eps) * lin(p.eps + p.beta),
            (two_n + Poly(s)) * (two_n + Poly(s + 1)));
  return DiffOp(1, SRF(a)) + DiffOp(0, SRF(b)) + DiffOp(-1, SRF(c));
}

// second-order eigenvalue operator in z
inline DiffOpZ bispectral_B(const Params& p) {
  Poly z = Poly::X();
  return DiffOpZ(2, RatFunc(z * z - Poly(Rat(1)))) +
         DiffOpZ(1, RatFunc(Poly(p.alpha - p.beta) + Poly(p.alpha + p.beta + 2) * z));
}

// (x)_n / (y)_n as a rational function of n, defined when y - x is an integer
inline RatFunc poch_ratio(const Rat& x, const Rat& y) {
  Rat diff = y - x;
  if (!is_integer(diff))
    throw ScopeError("poch_ratio: offset " + to_string(diff) + " is not an integer");
  long k = diff.get_num().get_si();
  if (k >= 0) {
    Rat cst = pochhammer(x, k);
    if (sgn(cst) == 0) throw PoleError("poch_ratio: vanishing constant " + to_string(x));
    return RatFunc(Poly(cst), detail::poch_prod(x, static_cast<int>(k)));
  }
  Rat cst = pochhammer(y, -k);
  if (sgn(cst) == 0) throw PoleError("poch_ratio: vanishing constant " + to_string(y));
  return RatFunc((Rat(1) / cst) * detail::poch_prod(y, static_cast<int>(-k)));
}

// the gauge (eps+alpha+1)_n / (eps+1)_n; rational only for integer alpha
inline RatFunc phi_fn(const Params& p) {
  if (!is_integer(p.alpha))
    throw ScopeError("phi_fn: gauge is not rational for non-integer alpha");
  return poch_ratio(p.eps + p.alpha + 1, p.eps + 1);
}

// pointwise gauge value at integer n, any rational alpha
inline Rat phi_at(const Params& p, long n0) {
  return pochhammer(p.eps + p.alpha + 1, n0) / pochhammer(p.eps + 1, n0);
}

// coefficient of t^j in the Gauss series F(a, b; c; t)
inline Rat hyp_coeff(const Rat& a, const Rat& b, const Rat& c, long j) {
  Rat den = factorial(j) * pochhammer(c, j);
  if (sgn(den) == 0) throw PoleError("hyp_coeff: lower parameter hits a nonpositive integer");
  return pochhammer(a, j) * pochhammer(b, j) / den;
}

enum class KernelFamily { PlusPhi, PlusPsi, MinusPhi, MinusPsi };

inline bool kernel_is_plus(KernelFamily f) {
  return f == KernelFamily::PlusPhi || f == KernelFamily::PlusPsi;
}

// Closed form of the i-th kernel function as a coefficient function of n.
// The plus family spans kernels of (L-1)^k, the minus family of (L+1)^l; the
// minus family carries the sign sequence.
inline SRF kernel_fn(const Params& p, KernelFamily fam, int i) {
  if (i < 0) return SRF();
  bool plus = kernel_is_plus(fam);
  if (plus && !is_integer(p.alpha))
    throw ScopeError("kernel_fn: plus family needs integer alpha for closed form");
  if (!plus && !is_integer(p.beta))
    throw ScopeError("kernel_fn: minus family needs integer beta for closed form");

  RatFunc pre;
  Rat cpar;
  switch (fam) {
    case KernelFamily::PlusPhi:
      pre = poch_ratio(p.eps + p.alpha + 1, p.eps + 1);
      cpar = p.alpha + 1;
      break;
    case KernelFamily::PlusPsi:
      pre = poch_ratio(p.eps + p.beta + 1, p.eps + p.alpha + p.beta + 1);
      cpar = -p.alpha + 1;
      break;
    case KernelFamily::MinusPhi:
      pre = poch_ratio(p.eps + p.beta + 1, p.eps + 1);
      cpar = p.beta + 1;
      break;
    case KernelFamily::MinusPsi:
      pre = poch_ratio(p.eps + p.alpha + 1, p.eps + p.alpha + p.beta + 1);
      cpar = -p.beta + 1;
      break;
  }

  Rat cden = pochhammer(cpar, i);
  if (sgn(cden) == 0)
    throw ScopeError("kernel_fn: index " + std::to_string(i) + " outside the admissible range");
  Rat scale = pow_rat(plus ? Rat(-2) : Rat(2), i) * factorial(i) * cden;
  // phi rows: (-(n+eps))_i (n+eps+alpha+beta+1)_i
  // psi rows: (-(n+eps+alpha+beta))_i (n+eps+1)_i
  bool phi_row = fam == KernelFamily::PlusPhi || fam == KernelFamily::MinusPhi;
  Poly top = phi_row ? detail::poch_prod(p.eps, i, -1) *
                           detail::poch_prod(p.eps + p.alpha + p.beta + 1, i)
                     : detail::poch_prod(p.eps + p.alpha + p.beta, i, -1) *
                           detail::poch_prod(p.eps + 1, i);
  if (i & 1) top = -top;
  RatFunc val = pre * RatFunc(top) * RatFunc(Rat(1) / scale);
  return plus ? SRF(val) : SRF(RatFunc(), val);
}

// Independent pointwise value from the hypergeometric series: the i-th Taylor
// coefficient of the eigenfunction at the relevant endpoint, rescaled.
inline Rat kernel_fn_eval(const Params& p, KernelFamily fam, int i, long n0) {
  bool plus = kernel_is_plus(fam);
  Rat pre, a, b, c;
  switch (fam) {
    case KernelFamily::PlusPhi:
      pre = pochhammer(p.eps + p.alpha + 1, n0) / pochhammer(p.eps + 1, n0);
      a = -(Rat(n0) + p.eps);
      b = Rat(n0) + p.eps + p.alpha + p.beta + 1;
      c = p.alpha + 1;
      break;
    case KernelFamily::PlusPsi:
      pre = pochhammer(p.eps + p.beta + 1, n0) / pochhammer(p.eps + p.alpha + p.beta + 1, n0);
      a = -(Rat(n0) + p.eps + p.alpha + p.beta);
      b = Rat(n0) + p.eps + 1;
      c = -p.alpha + 1;
      break;
    case KernelFamily::MinusPhi:
      pre = pochhammer(p.eps + p.beta + 1, n0) / pochhammer(p.eps + 1, n0);
      a = -(Rat(n0) + p.eps);
      b = Rat(n0) + p.eps + p.alpha + p.beta + 1;
      c = p.beta + 1;
      break;
    case KernelFamily::MinusPsi:
      pre = pochhammer(p.eps + p.alpha + 1, n0) / pochhammer(p.eps + p.alpha + p.beta + 1, n0);
      a = -(Rat(n0) + p.eps + p.alpha + p.beta);
      b = Rat(n0) + p.eps + 1;
      c = -p.beta + 1;
      break;
  }
  if (!plus && (n0 % 2 != 0)) pre = -pre;
  Rat coeff = hyp_coeff(a, b, c, i);
  return pre * coeff / pow_rat(plus ? Rat(-2) : Rat(2), i);
}

enum class Contig { AlphaMinus, AlphaPlus, BetaMinus, BetaPlus };

// First-order operators connecting neighbouring parameters; products of a
// down and an up step factor L -/+ 1.
inline DiffOp contiguous_D(const Params& p, Contig which) {
  using detail::lin;
  Poly two_n = Poly::affine(Rat(2), Rat(0));
  Rat s = 2 * p.eps + p.alpha + p.beta;
  switch (which) {
    case Contig::AlphaMinus: {
      if (sgn(p.alpha) == 0) throw ScopeError("contiguous_D: alpha step down needs alpha != 0");
      Rat f = (p.eps + p.alpha) / p.alpha;
      Poly den = two_n + Poly(s);
      return DiffOp(0, SRF(RatFunc(f * lin(p.eps + p.alpha + p.beta), den))) -
             DiffOp(-1, SRF(RatFunc(f * lin(p.eps + p.beta), den)));
    }
    case Contig::AlphaPlus: {
      if (sgn(p.eps + p.alpha + 1) == 0)
        throw ScopeError("contiguous_D: alpha step up is singular");
      Rat f = (p.alpha + 1) / (p.eps + p.alpha + 1);
      Poly den = two_n + Poly(s + 2);
      return DiffOp(1, SRF(RatFunc(f * Rat(2) * lin(p.eps + 1), den))) -
             DiffOp(0, SRF(RatFunc(f * Rat(2) * lin(p.eps + p.alpha + 1), den)));
    }
    case Contig::BetaMinus: {
      Poly den = two_n + Poly(s);
      return DiffOp(0, SRF(RatFunc(lin(p.eps + p.alpha + p.beta), den))) +
             DiffOp(-1, SRF(RatFunc(lin(p.eps + p.alpha), den)));
    }
    case Contig::BetaPlus: {
      Poly den = two_n + Poly(s + 2);
      return DiffOp(1, SRF(RatFunc(Rat(2) * lin(p.eps + 1), den))) +
             DiffOp(0, SRF(RatFunc(Rat(2) * lin(p.eps + p.beta + 1), den)));
    }
  }
  throw Error("contiguous_D: unreachable");
}

}  // namespace jdx

#endif
