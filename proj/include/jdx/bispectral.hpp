#ifndef JDX_BISPECTRAL_HPP
#define JDX_BISPECTRAL_HPP

#include <algorithm>
#include <string>
#include <utility>

#include "jdx/darboux.hpp"
#include "jdx/diffop.hpp"
#include "jdx/error.hpp"
#include "jdx/free_algebra.hpp"
#include "jdx/jacobi.hpp"
#include "jdx/params.hpp"
#include "jdx/poly.hpp"
#include "jdx/rat.hpp"
#include "jdx/ratfunc.hpp"
#include "jdx/series.hpp"
#include "jdx/signedrf.hpp"
#include "jdx/zdiffop.hpp"

namespace jdx {

// Membership in the gauge-conjugated algebra of reflection-invariant
// operators: sign-free, pole-free on the integers, and invariant under the
// reflection once the gauge is undone.
inline bool check_R_membership(const DiffOp& M, const Params& par,
                               std::string* witness = nullptr) {
  if (!is_integer(par.alpha))
    throw ScopeError("membership test needs integer alpha for a rational gauge");
  auto fail = [&](std::string w) {
    if (witness) *witness = std::move(w);
    return false;
  };
  for (const auto& [j, f] : M.coeffs())
    if (!f.od().is_zero())
      return fail("coefficient of T^" + std::to_string(j) + " carries the sign sequence");
  for (const auto& [j, f] : M.coeffs()) {
    auto roots = integer_roots(f.ev().den());
    if (!roots.empty())
      return fail("coefficient of T^" + std::to_string(j) + " has a pole at n = " +
                  roots.front().get_str());
  }
  DiffOp g = conjugate(M, RatFunc(Rat(1)) / phi_fn(par));
  if (involution_I(g, par.theta()) != g)
    return fail("gauge-stripped operator is not reflection invariant");
  return true;
}

// Certificate that denom(lambda)^{-1} * eval(word) (left) or
// eval(word) * denom(lambda)^{-1} (right) reproduces an operator exactly.
struct Decomposition {
  Poly denom;
  FreeElem word;
  bool left = true;
};

namespace detail {

// even part of an n-polynomial that is symmetric under the reflection,
// written as a polynomial in the eigenvalue coordinate
inline Poly poly_in_lambda(const Poly& p, const Params& par) {
  auto [even, odd] = split_even_odd_in_lambda(p, par);
  if (!odd.is_zero())
    throw ContractError("expected a reflection-symmetric polynomial: odd part " +
                        odd.to_string());
  return even;
}

// clearing polynomial: the top coefficient of W^d, where W is the double
// derivation of the symmetric operator
inline Poly top_clear_poly(const Params& par, long d) {
  Poly c(pow_rat(Rat(2), d));
  for (long i = 1; i <= d; ++i) {
    c = c * Poly::affine(Rat(1), par.eps + par.alpha + Rat(i));
    c = c * Poly::affine(Rat(1), par.eps + par.alpha + par.beta + Rat(i));
  }
  return c;
}

// denominator of the top coefficient of the d-th power of the symmetric
// operator (the numerator is top_clear_poly)
inline Poly power_top_den(const Params& par, long d) {
  Poly p(Rat(1));
  for (long i = 0; i < d; ++i) {
    p = p * Poly::affine(Rat(2), par.theta() + Rat(2 * i));
    p = p * Poly::affine(Rat(2), par.theta() + Rat(2 * i) + 1);
  }
  return p;
}

// least common multiple of r and its reflection; one extra factor vanishing
// at the reflection center restores symmetry when the overlap has odd degree
inline Poly invariant_multiple(const Poly& r, const Params& par) {
  Poly ir = r.reflect(par.theta());
  Poly m = r * ir.exact_div(gcd(r, ir));
  auto [even, odd] = split_even_odd_in_lambda(m, par);
  if (even.is_zero() && !m.is_zero())
    m = m * Poly::affine(Rat(1), par.theta() / 2);
  return m;
}

struct DecompCtx {
  Params par;
  Poly lam;
  DiffOp imgA, imgM;
};

inline DecompCtx make_ctx(const Params& par) {
  DecompCtx ctx;
  ctx.par = par;
  ctx.lam = lambda_poly(par);
  ctx.imgA = DiffOp(0, SRF(RatFunc(ctx.lam)));
  ctx.imgM = jacobi_L_tilde(par);
  return ctx;
}

inline long support_radius(const DiffOp& x) {
  auto [jlo, jhi] = x.support();
  return std::max<long>(-jlo, jhi);
}

// element of the algebra generated by the eigenvalue and the symmetric
// operator whose edge coefficients are s(n) times those of the d-th power:
// the even part of s rides on the power itself, the odd part on the
// commutator combination, whose edge factors are +-(2n + theta)
inline FreeElem stage_word(const Poly& s, long d, const Params& par) {
  if (d == 0) return FreeElem::from_lambda_poly(poly_in_lambda(s, par));
  auto [even, odd] = split_even_odd_in_lambda(s, par);
  FreeElem md = FreeElem::from_word(std::string(static_cast<size_t>(d), 'M'));
  FreeElem w;
  if (!even.is_zero()) w += FreeElem::from_lambda_poly(even) * md;
  if (!odd.is_zero())
    w += FreeElem::from_lambda_poly(odd) *
         md.apply_poly_ad(Poly::X(), rat(-1, d), Rat(-d));
  return w;
}

// peels the support from the outside in; whenever the reduced edge
// coefficient is not polynomial, the whole operator is scaled by the least
// reflection-invariant multiple of the obstruction, so the accumulated
// denominator divides every admissible one
inline std::pair<Poly, FreeElem> decomp_left_run(const DiffOp& x0, const DecompCtx& ctx) {
  Poly mu(Rat(1));
  FreeElem words;
  DiffOp cur = x0;
  long prev = support_radius(cur) + 1;
  while (!cur.is_zero()) {
    long d = support_radius(cur);
    if (d >= prev)
      throw ContractError("left decomposition stage failed to shrink the support");
    prev = d;
    RatFunc top = cur.coeff(static_cast<int>(d)).ev();
    if (top.is_zero())
      throw ContractError("asymmetric support in a reflection-invariant operator");
    RatFunc s = d == 0 ? top
                       : top * RatFunc(power_top_den(ctx.par, d),
                                       top_clear_poly(ctx.par, d));
    if (s.den().degree() > 0) {
      Poly f = invariant_multiple(s.den(), ctx.par);
      mu = poly_in_lambda(f, ctx.par) * mu;
      words = FreeElem::from_lambda_poly(poly_in_lambda(f, ctx.par)) * words;
      cur = SRF(RatFunc(f)) * cur;
      s = s * RatFunc(f);
    }
    if (s.den().degree() != 0)
      throw ContractError("left decomposition failed to clear an obstruction");
    Poly sp = s.num() * (Rat(1) / s.den().coeff(0));
    FreeElem w = stage_word(sp, d, ctx.par);
    cur = cur - eval_free(w, ctx.imgA, ctx.imgM, DiffOp::identity());
    words += w;
  }
  return {mu, words};
}

inline std::pair<Poly, FreeElem> decomp_right_run(const DiffOp& x0, const DecompCtx& ctx) {
  Poly nu(Rat(1));
  FreeElem words;
  DiffOp cur = x0;
  long prev = support_radius(cur) + 1;
  while (!cur.is_zero()) {
    long d = support_radius(cur);
    if (d >= prev)
      throw ContractError("right decomposition stage failed to shrink the support");
    prev = d;
    RatFunc top = cur.coeff(static_cast<int>(d)).ev();
    if (top.is_zero())
      throw ContractError("asymmetric support in a reflection-invariant operator");
    RatFunc s = d == 0 ? top
                       : top * RatFunc(power_top_den(ctx.par, d),
                                       top_clear_poly(ctx.par, d));
    if (s.den().degree() > 0) {
      // the factor multiplies from the right, so it meets the edge
      // coefficient shifted by d
      Poly f = invariant_multiple(s.den().shift(Rat(-d)), ctx.par);
      nu = poly_in_lambda(f, ctx.par) * nu;
      words = words * FreeElem::from_lambda_poly(poly_in_lambda(f, ctx.par));
      cur = cur * DiffOp(0, SRF(RatFunc(f)));
      s = s * RatFunc(f.shift(Rat(d)));
    }
    if (s.den().degree() != 0)
      throw ContractError("right decomposition failed to clear an obstruction");
    Poly sp = s.num() * (Rat(1) / s.den().coeff(0));
    FreeElem w = stage_word(sp, d, ctx.par);
    cur = cur - eval_free(w, ctx.imgA, ctx.imgM, DiffOp::identity());
    words += w;
  }
  return {nu, words};
}

inline void require_decomposable(const DiffOp& x, const Params& par) {
  for (const auto& [j, f] : x.coeffs())
    if (!f.od().is_zero())
      throw ContractError("decomposition needs a sign-free operator");
  if (involution_I(x, par.theta()) != x)
    throw ContractError("decomposition needs a reflection-invariant operator");
}

}  // namespace detail

inline Decomposition decompose_left(const DiffOp& x, const Params& par) {
  detail::require_decomposable(x, par);
  detail::DecompCtx ctx = detail::make_ctx(par);
  auto [mu, word] = detail::decomp_left_run(x, ctx);
  Rat lead = mu.coeff(mu.degree());
  if (lead != Rat(1)) {
    mu = mu.monic();
    word = (Rat(1) / lead) * word;
  }
  DiffOp back = eval_free(word, ctx.imgA, ctx.imgM, DiffOp::identity());
  if (back != SRF(RatFunc(mu.compose(ctx.lam))) * x)
    throw ContractError("left decomposition failed its round trip");
  Decomposition dec;
  dec.denom = mu;
  dec.word = word;
  dec.left = true;
  return dec;
}

inline Decomposition decompose_right(const DiffOp& x, const Params& par) {
  detail::require_decomposable(x, par);
  detail::DecompCtx ctx = detail::make_ctx(par);
  auto [nu, word] = detail::decomp_right_run(x, ctx);
  Rat lead = nu.coeff(nu.degree());
  if (lead != Rat(1)) {
    nu = nu.monic();
    word = (Rat(1) / lead) * word;
  }
  DiffOp back = eval_free(word, ctx.imgA, ctx.imgM, DiffOp::identity());
  if (back != x * DiffOp(0, SRF(RatFunc(nu.compose(ctx.lam)))))
    throw ContractError("right decomposition failed its round trip");
  Decomposition dec;
  dec.denom = nu;
  dec.word = word;
  dec.left = false;
  return dec;
}

// Anti-homomorphic evaluation on the differential side: the eigenvalue letter
// becomes the hypergeometric operator, the operator letter becomes
// multiplication by z, and every word is reversed.
inline DiffOpZ eval_to_diffz_b(const FreeElem& w, const Params& par) {
  return eval_free(w, bispectral_B(par), DiffOpZ::mult_z(), DiffOpZ::identity(), true);
}

// p evaluated at a differential operator, by Horner.
inline DiffOpZ opz_poly(const Poly& p, const DiffOpZ& x) {
  DiffOpZ acc;
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * x;
    if (sgn(p.coeff(i)) != 0) acc += DiffOpZ(0, RatFunc(p.coeff(i)));
  }
  return acc;
}

// Differential operator certified against the transformed eigenfunctions:
// Bdual Psi(n, z) = eigen(lambda(n - shift)) Psi(n, z). The assembly pieces
// are kept so the factor-route consistency identity can be rechecked.
struct DualCertificate {
  Params par;
  long k = 0;
  long l = 0;
  DiffOpZ Bdual;
  Poly eigen;
  long shift = 0;
  long verified_order = 0;
  DiffOpZ GP, GQ;
  Poly mu, nu;
  Poly qz;
  FreeElem SP, SQ;
};

inline DualCertificate build_dual(const SymForm& sf, long order = 24, long lo = -6,
                                  long hi = 6) {
  DualCertificate cert;
  cert.par = sf.par;
  cert.k = sf.k;
  cert.l = sf.l;
  cert.qz = sf.qpoly;
  Decomposition dl = decompose_left(sf.Psym, sf.par);
  Decomposition dr = decompose_right(sf.Qsym, sf.par);
  cert.mu = dl.denom;
  cert.SP = dl.word;
  cert.nu = dr.denom;
  cert.SQ = dr.word;
  cert.GP = eval_to_diffz_b(dl.word, sf.par);
  cert.GQ = eval_to_diffz_b(dr.word, sf.par);
  cert.Bdual = cert.GP * cert.GQ * DiffOpZ(RatFunc(Poly(Rat(1)), sf.qpoly));
  cert.eigen = cert.mu * cert.nu;
  cert.shift = sf.s;
  // every derivative and every coefficient-denominator zero at z = 1 costs
  // one guaranteed series order, so expand the family with that headroom
  long margin = std::max(cert.Bdual.order(), 0) + 2;
  for (const auto& [dgr, g] : cert.Bdual.coeffs()) {
    Poly dent = g.den().comp_affine(Rat(-2), Rat(1));
    long v = 0;
    while (sgn(dent.coeff(static_cast<int>(v))) == 0) ++v;
    margin = std::max(margin, std::max(cert.Bdual.order(), 0) + v + 2);
  }
  SeriesFamily fam = p_family(sf.par, lo, hi, order + margin);
  SeriesFamily psi = apply_n(sf.P, fam);
  VerifyReport rep = verify_eigen_z(cert.Bdual, cert.eigen, sf.par, Rat(sf.s), psi, order);
  if (!rep.ok)
    throw ContractError("dual certificate failed the series check: " + rep.witness);
  cert.verified_order = order;
  return cert;
}

inline DualCertificate build_dual(const DarbouxBundle& b, long order = 24, long lo = -6,
                                  long hi = 6) {
  return build_dual(sym_form(b), order, lo, hi);
}

// Exact identity between the two factor routes:
// nu(B) mu(B) = GQ * (1/q(z)) * GP.
inline bool verify_ino(const DiffOpZ& gp, const DiffOpZ& gq, const Poly& mu, const Poly& nu,
                       const Poly& q, const Params& par, std::string* witness = nullptr) {
  DiffOpZ bop = bispectral_B(par);
  DiffOpZ lhs = opz_poly(nu, bop) * opz_poly(mu, bop);
  DiffOpZ rhs = gq * DiffOpZ(RatFunc(Poly(Rat(1)), q)) * gp;
  if (lhs == rhs) return true;
  if (witness) {
    int top = std::max(lhs.order(), rhs.order());
    for (int dgr = 0; dgr <= top; ++dgr) {
      if (lhs.coeff(dgr) != rhs.coeff(dgr)) {
        *witness = "coefficient of the order-" + std::to_string(dgr) +
                   " term differs: " + lhs.coeff(dgr).to_string("z") + " vs " +
                   rhs.coeff(dgr).to_string("z");
        break;
      }
    }
  }
  return false;
}

inline bool verify_ino(const DualCertificate& cert, std::string* witness = nullptr) {
  return verify_ino(cert.GP, cert.GQ, cert.mu, cert.nu, cert.qz, cert.par, witness);
}

}  // namespace jdx

#endif
