#ifndef JDX_DARBOUX_HPP
#define JDX_DARBOUX_HPP

#include <optional>
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
#include "jdx/signedrf.hpp"

namespace jdx {

// One factorization request: degrees (k, l) at the eigenvalues 1 and -1, and
// the mixing coefficients of the kernel towers. A and B weight the plus
// towers, C and D the minus towers.
struct DarbouxSpec {
  Params par;
  long k = 0;
  long l = 0;
  std::vector<Rat> A, B;
  std::vector<Rat> C, D;
};

inline void validate_spec(const DarbouxSpec& sp) {
  require_cond(sp.par);
  if (sp.k < 0 || sp.l < 0) throw AdmissibilityError("degrees must be nonnegative");
  if (sp.A.size() != static_cast<size_t>(sp.k) || sp.B.size() != static_cast<size_t>(sp.k))
    throw AdmissibilityError("A and B must have length k");
  if (sp.C.size() != static_cast<size_t>(sp.l) || sp.D.size() != static_cast<size_t>(sp.l))
    throw AdmissibilityError("C and D must have length l");
  if (sp.k > 0) {
    if (!is_integer(sp.par.alpha))
      throw ScopeError("k > 0 needs integer alpha: the kernel towers at eigenvalue 1 have no "
                       "rational closed form otherwise");
    if (Rat(sp.k) > abs(sp.par.alpha))
      throw ScopeError(
          "k = " + std::to_string(sp.k) + " exceeds |alpha| = " + to_string(abs(sp.par.alpha)) +
          ": the restriction to the kernel has two Jordan blocks, one per eigenvalue, and the "
          "block at eigenvalue 1 cannot be longer than |alpha| with rational coefficients");
  }
  if (sp.l > 0) {
    if (!is_integer(sp.par.beta))
      throw ScopeError("l > 0 needs integer beta: the kernel towers at eigenvalue -1 have no "
                       "rational closed form otherwise");
    if (Rat(sp.l) > abs(sp.par.beta))
      throw ScopeError(
          "l = " + std::to_string(sp.l) + " exceeds |beta| = " + to_string(abs(sp.par.beta)) +
          ": the restriction to the kernel has two Jordan blocks, one per eigenvalue, and the "
          "block at eigenvalue -1 cannot be longer than |beta| with rational coefficients");
  }
}

// Triangular combinations of the kernel towers: entries 0..k-1 mix the plus
// towers with weights A, B, entries k..k+l-1 mix the minus towers with C, D.
inline std::vector<SRF> build_f_basis(const DarbouxSpec& sp) {
  validate_spec(sp);
  std::vector<SRF> out;
  out.reserve(static_cast<size_t>(sp.k + sp.l));
  for (long i = 0; i < sp.k; ++i) {
    SRF f;
    for (long r = 0; r <= i; ++r) {
      int j = static_cast<int>(i - r);
      f += sp.A[static_cast<size_t>(r)] * kernel_fn(sp.par, KernelFamily::PlusPhi, j) +
           sp.B[static_cast<size_t>(r)] * kernel_fn(sp.par, KernelFamily::PlusPsi, j);
    }
    out.push_back(std::move(f));
  }
  for (long i = 0; i < sp.l; ++i) {
    SRF f;
    for (long r = 0; r <= i; ++r) {
      int j = static_cast<int>(i - r);
      f += sp.C[static_cast<size_t>(r)] * kernel_fn(sp.par, KernelFamily::MinusPhi, j) +
           sp.D[static_cast<size_t>(r)] * kernel_fn(sp.par, KernelFamily::MinusPsi, j);
    }
    out.push_back(std::move(f));
  }
  return out;
}

// A basis is admissible when its Casoratian never vanishes at an integer.
// The determinant carries the sign sequence to the power l, so even and odd
// integers see different rational values; both branches are root-checked.
inline std::optional<std::string> admissibility_witness(const SRF& det) {
  if (det.is_zero()) return "kernel Casoratian vanishes identically";
  if (auto w = detail::parity_roots(det.ev() + det.od(), true, "kernel Casoratian")) return w;
  if (auto w = detail::parity_roots(det.ev() - det.od(), false, "kernel Casoratian")) return w;
  return std::nullopt;
}

inline bool check_admissible(const DarbouxSpec& sp, std::string* witness = nullptr) {
  auto basis = build_f_basis(sp);
  if (basis.empty()) return true;
  // only the full Casoratian is needed here
  std::vector<std::vector<SRF>> rows;
  int m = static_cast<int>(basis.size());
  for (int j = -m; j <= -1; ++j) {
    std::vector<SRF> row;
    row.reserve(basis.size());
    for (const auto& f : basis) row.push_back(f.shift_int(j));
    rows.push_back(std::move(row));
  }
  auto w = admissibility_witness(srf_det(rows));
  if (w && witness) *witness = *w;
  return !w.has_value();
}

// q evaluated at a difference operator, by Horner.
inline DiffOp op_poly(const Poly& q, const DiffOp& x) {
  DiffOp acc;
  for (int i = q.degree(); i >= 0; --i) {
    acc = acc * x;
    if (sgn(q.coeff(i)) != 0) acc += DiffOp(0, SRF(q.coeff(i)));
  }
  return acc;
}

struct DarbouxBundle {
  DarbouxSpec spec;
  std::vector<SRF> basis;
  std::vector<SRF> dets;  // dets[r]: Casoratian with row -r removed, r = 0..k+l
  DiffOp L0;
  DiffOp P;  // support [-(k+l), 0], coefficient 1 at T^0, annihilates the basis
  DiffOp L;  // L * P = P * L0
  DiffOp Q;  // Q * P = q(L0), P * Q = q(L)
  Poly qpoly;  // (x-1)^k (x+1)^l
};

// Transformed operator straight from the determinant formulas; the division
// route below is authoritative, this closed form is kept as a cross-check.
inline DiffOp formula_L(const Params& par, long k, long l, const std::vector<SRF>& dets) {
  DiffOp l0 = jacobi_L(par);
  SRF a0 = l0.coeff(1), b0 = l0.coeff(0), c0 = l0.coeff(-1);
  const SRF& det = dets[0];
  if (dets.size() < 2) return l0;  // empty kernel: no transformation
  const SRF& det1 = dets[1];
  SRF a = a0;
  SRF b = b0 + a0 * det1.shift_int(1) / det.shift_int(1) - a0.shift_int(-1) * det1 / det;
  SRF c = c0.shift_int(-(k + l)) * det.shift_int(-1) * det.shift_int(1) / (det * det);
  return DiffOp(1, a) + DiffOp(0, b) + DiffOp(-1, c);
}

inline DarbouxBundle build_bundle(const DarbouxSpec& sp) {
  DarbouxBundle b;
  b.spec = sp;
  b.basis = build_f_basis(sp);
  b.L0 = jacobi_L(sp.par);
  b.qpoly = Poly(Rat(1));
  {
    Poly xm1 = Poly::affine(Rat(1), Rat(-1)), xp1 = Poly::affine(Rat(1), Rat(1));
    for (long i = 0; i < sp.k; ++i) b.qpoly = b.qpoly * xm1;
    for (long i = 0; i < sp.l; ++i) b.qpoly = b.qpoly * xp1;
  }
  if (b.basis.empty()) {
    b.dets = {SRF(1)};
    b.P = DiffOp::identity();
    b.L = b.L0;
    b.Q = DiffOp::identity();
    return b;
  }
  KernelOp ker = from_kernel(b.basis);
  if (auto w = admissibility_witness(ker.det0()))
    throw AdmissibilityError("inadmissible coefficients: " + *w);
  b.dets = ker.minors;
  b.P = ker.P;
  for (const auto& f : b.basis)
    if (!b.P.apply(f).is_zero())
      throw ContractError("annihilator failed on its own kernel basis");
  b.L = darboux_solve(b.P, b.L0);
  if (auto w = regularity_witness(b.L))
    throw AdmissibilityError("transformed operator is not regular: " + *w);
  DiffOp cross = formula_L(sp.par, sp.k, sp.l, b.dets);
  if (cross != b.L)
    throw ContractError("determinant formulas disagree with the division route: formula " +
                        cross.to_string() + " vs division " + b.L.to_string());
  b.Q = right_divide(op_poly(b.qpoly, b.L0), b.P);
  if (b.P * b.Q != op_poly(b.qpoly, b.L))
    throw ContractError("product identity P*Q = q(L) failed");
  return b;
}

// Matrix of the base operator acting on the kernel of P in the f-basis:
// one Jordan block of size k at eigenvalue 1, one of size l at -1,
// superdiagonal ones.
inline std::vector<std::vector<Rat>> jordan_matrix(const DarbouxSpec& sp) {
  size_t m = static_cast<size_t>(sp.k + sp.l);
  std::vector<std::vector<Rat>> j(m, std::vector<Rat>(m, Rat(0)));
  for (size_t i = 0; i < m; ++i) {
    bool plus = i < static_cast<size_t>(sp.k);
    j[i][i] = plus ? Rat(1) : Rat(-1);
    bool chained = plus ? (i + 1 < static_cast<size_t>(sp.k)) : (i + 1 < m);
    if (chained) j[i][i + 1] = Rat(1);
  }
  return j;
}

enum class LiftDir { AlphaUp, BetaUp };

// Embedding of a transformation into the family one parameter step up, by
// composing with the step operator that maps the shifted eigenfunctions back.
// The result is renormalized to coefficient 1 at T^0; `scale` records the
// removed factor, so the new operator applied to the step-up eigenfunction
// family equals scale^{-1} times the old image.
struct LiftedBundle {
  Params par;
  long k = 0;
  long l = 0;
  DiffOp P, L, Q;
  Poly qpoly;
  RatFunc scale;
};

inline LiftedBundle lift_via_contiguous(const Params& par, long k, long l, const DiffOp& P,
                                        LiftDir dir) {
  LiftedBundle out;
  if (dir == LiftDir::AlphaUp) {
    if (!is_integer(par.alpha) || sgn(par.alpha) < 0 || Rat(k) > par.alpha)
      throw ScopeError("alpha step up needs integer alpha >= k");
    out.par = {par.alpha + 1, par.beta, par.eps};
    out.k = k + 1;
    out.l = l;
  } else {
    if (!is_integer(par.beta) || sgn(par.beta) < 0 || Rat(l) > par.beta)
      throw ScopeError("beta step up needs integer beta >= l");
    out.par = {par.alpha, par.beta + 1, par.eps};
    out.k = k;
    out.l = l + 1;
  }
  DiffOp step =
      contiguous_D(out.par, dir == LiftDir::AlphaUp ? Contig::AlphaMinus : Contig::BetaMinus);
  DiffOp raw = P * step;
  SRF lead = raw.coeff(0);
  if (!lead.invertible() || !lead.od().is_zero())
    throw ContractError("lift produced a degenerate leading coefficient");
  out.scale = lead.ev();
  out.P = SRF(lead.ev().inverse()) * raw;
  out.qpoly = Poly(Rat(1));
  {
    Poly xm1 = Poly::affine(Rat(1), Rat(-1)), xp1 = Poly::affine(Rat(1), Rat(1));
    for (long i = 0; i < out.k; ++i) out.qpoly = out.qpoly * xm1;
    for (long i = 0; i < out.l; ++i) out.qpoly = out.qpoly * xp1;
  }
  DiffOp l0 = jacobi_L(out.par);
  out.L = darboux_solve(out.P, l0);
  if (auto w = regularity_witness(out.L))
    throw ContractError("lifted operator is not regular: " + *w);
  out.Q = right_divide(op_poly(out.qpoly, l0), out.P);
  if (out.P * out.Q != op_poly(out.qpoly, out.L))
    throw ContractError("lifted product identity P*Q = q(L) failed");
  return out;
}

inline LiftedBundle lift_via_contiguous(const DarbouxBundle& b, LiftDir dir) {
  return lift_via_contiguous(b.spec.par, b.spec.k, b.spec.l, b.P, dir);
}

// Reflection-invariant gauge of a transformation with even total degree:
// fields satisfy  P = rho(n) * T^{-s} * phi Psym phi^{-1}  with phi the gauge
// function of `par`, involution_I(Psym) = Psym, and q(Ltilde) = Qsym * Psym.
struct SymForm {
  Params par;
  long k = 0;
  long l = 0;
  DiffOp P, L;
  DiffOp Psym, Qsym;
  RatFunc rho;
  RatFunc lift_scale;  // 1 when no contiguous step was needed
  Poly qpoly;
  long s = 0;
  bool lifted = false;
};

namespace detail {

// Determinant operator over the gauged basis F^(i) = f^(i)/phi: expansion of
// the bordered Casoratian along its shift column, with the sign-sequence
// power stripped. Throws when a sign residue survives, which would break the
// reflection bookkeeping.
inline DiffOp presym_from_minors(const Params& par, long k, long l,
                                 const std::vector<SRF>& basis) {
  if ((k + l) % 2 != 0) throw ContractError("total degree must be even here");
  long s = (k + l) / 2;
  SRF phi_inv = SRF(phi_fn(par)).inverse();
  std::vector<SRF> F;
  F.reserve(basis.size());
  for (const auto& f : basis) F.push_back(f * phi_inv);
  bool odd_l = (l % 2) != 0;
  DiffOp pt;
  for (long j = -s; j <= s; ++j) {
    std::vector<std::vector<SRF>> mat;
    mat.reserve(static_cast<size_t>(2 * s));
    for (long jp = -s; jp <= s; ++jp) {
      if (jp == j) continue;
      std::vector<SRF> row;
      row.reserve(F.size());
      for (const auto& Fi : F) row.push_back(Fi.shift_int(jp));
      mat.push_back(std::move(row));
    }
    SRF m = srf_det(mat);
    if (odd_l) m = SRF::sigma() * m;
    if (!m.od().is_zero())
      throw ContractError("sign residue in the symmetric determinant expansion");
    if (((j + s) + (k + l)) % 2 != 0) m = -m;
    pt += DiffOp(static_cast<int>(j), m);
  }
  for (const auto& Fi : F)
    if (!pt.apply(Fi).is_zero())
      throw ContractError("symmetric determinant operator missed its kernel");
  return pt;
}

// Shared tail: attach the parity factor or symmetrize, solve the gauge
// relation P = rho * T^{-s} * phi Psym phi^{-1} exactly, divide out Qsym.
inline SymForm finish_sym(SymForm base, const DiffOp& pre, bool symmetrize) {
  const Params& par = base.par;
  long s = base.s;
  Rat theta = par.theta();
  DiffOp psym;
  if (!symmetrize) {
    // parity factor: determined by the reflection sign of the determinant
    // operator, which the construction fixes as (-1)^(s + (alpha+beta) l)
    Rat e = Rat(s) + (par.alpha + par.beta) * Rat(base.l);
    if (!is_integer(e)) throw ContractError("reflection exponent is not an integer");
    bool even = mpz_even_p(to_int(e).get_mpz_t()) != 0;
    int want = even ? 1 : -1;
    if (involution_I(pre, theta) != (want < 0 ? -pre : pre))
      throw ContractError("determinant operator missed its predicted reflection sign");
    psym = even ? pre : DiffOp(0, SRF(RatFunc(Poly::affine(Rat(1), theta / 2)))) * pre;
  } else {
    DiffOp refl = involution_I(pre, theta);
    psym = pre + refl;
    if (psym.is_zero())
      psym = DiffOp(0, SRF(RatFunc(Poly::affine(Rat(1), theta / 2)))) * (pre - refl);
    if (psym.is_zero()) throw ContractError("symmetrization collapsed to zero");
  }
  if (involution_I(psym, theta) != psym)
    throw ContractError("reflection invariance failed for the symmetric operator");
  base.Psym = psym;

  RatFunc phi = phi_fn(par);
  DiffOp y = DiffOp::shift(static_cast<int>(-s)) * conjugate(psym, phi);
  SRF top = y.coeff(0);
  if (!top.invertible() || !top.od().is_zero())
    throw ContractError("gauge relation has a degenerate leading term");
  SRF rho = base.P.coeff(0) / top;
  if (!rho.od().is_zero()) throw ContractError("gauge prefactor carries a sign residue");
  if (SRF(rho) * y != base.P)
    throw ContractError("gauge relation P = rho * T^{-s} * phi Psym phi^{-1} failed");
  base.rho = rho.ev();

  base.Qsym = right_divide(op_poly(base.qpoly, jacobi_L_tilde(par)), psym);
  if (involution_I(base.Qsym, theta) != base.Qsym)
    throw ContractError("cofactor of the symmetric operator is not reflection-invariant");
  return base;
}

}  // namespace detail

// Even total degree: build the symmetric gauge from the determinant minors.
inline SymForm sym_form_even(const DarbouxBundle& b) {
  if ((b.spec.k + b.spec.l) % 2 != 0)
    throw ContractError("sym_form_even needs even total degree; lift first");
  SymForm out;
  out.par = b.spec.par;
  out.k = b.spec.k;
  out.l = b.spec.l;
  out.P = b.P;
  out.L = b.L;
  out.lift_scale = RatFunc(Rat(1));
  out.qpoly = b.qpoly;
  out.s = (b.spec.k + b.spec.l) / 2;
  DiffOp pre = detail::presym_from_minors(out.par, out.k, out.l, b.basis);
  return detail::finish_sym(std::move(out), pre, false);
}

// Odd total degree: step one parameter up (alpha preferred), then recover the
// symmetric gauge from the lifted operator by reflection symmetrization.
inline SymForm sym_form_lifted(const DarbouxBundle& b) {
  const Params& par = b.spec.par;
  LiftDir dir;
  if (is_integer(par.alpha) && sgn(par.alpha) >= 0 && Rat(b.spec.k) <= par.alpha)
    dir = LiftDir::AlphaUp;
  else if (is_integer(par.beta) && sgn(par.beta) >= 0 && Rat(b.spec.l) <= par.beta)
    dir = LiftDir::BetaUp;
  else
    throw ScopeError("no parameter step embeds this transformation in an even-degree family; "
                     "rebuild at the reflected parameters (-alpha, -beta, eps+alpha+beta)");
  LiftedBundle lb = lift_via_contiguous(b, dir);
  if (!is_integer(lb.par.alpha))
    throw ScopeError("symmetric gauge needs integer alpha after the step");
  SymForm out;
  out.par = lb.par;
  out.k = lb.k;
  out.l = lb.l;
  out.P = lb.P;
  out.L = lb.L;
  out.lift_scale = lb.scale;
  out.qpoly = lb.qpoly;
  out.s = (lb.k + lb.l) / 2;
  out.lifted = true;
  RatFunc phi = phi_fn(lb.par);
  DiffOp y = conjugate(DiffOp::shift(static_cast<int>(out.s)) * lb.P, RatFunc(Rat(1)) / phi);
  for (const auto& [j, c] : y.coeffs())
    if (!c.od().is_zero())
      throw ContractError("lifted gauge operator carries a sign residue at shift " +
                          std::to_string(j));
  return detail::finish_sym(std::move(out), y, true);
}

inline SymForm sym_form(const DarbouxBundle& b) {
  if ((b.spec.k + b.spec.l) % 2 == 0) {
    if (!is_integer(b.spec.par.alpha))
      throw ScopeError("symmetric gauge needs integer alpha; for a pure minus-degree "
                       "transformation rebuild at the reflected parameters "
                       "(-alpha, -beta, eps+alpha+beta) or swap the parameter pair");
    return sym_form_even(b);
  }
  return sym_form_lifted(b);
}

}  // namespace jdx

#endif
