#ifndef JDX_PARAMS_HPP
#define JDX_PARAMS_HPP

#include <string>
#include <utility>
#include <vector>

#include "jdx/ratfunc.hpp"

namespace jdx {

// Parameter triple of the operator family. The genericity conditions keep all
// operator coefficients pole-free and nonvanishing on the integers.
struct Params {
  Rat alpha;
  Rat beta;
  Rat eps;

  // reflection point constant: I maps n to -(n + theta)
  Rat theta() const { return 2 * eps + alpha + beta + 1; }

  bool operator==(const Params& o) const {
    return alpha == o.alpha && beta == o.beta && eps == o.eps;
  }
};

// Names of the violated genericity conditions, empty when all hold.
inline std::vector<std::string> cond_violations(const Params& p) {
  std::vector<std::string> v;
  const std::pair<Rat, std::string> checks[] = {
      {p.eps, "eps"},
      {p.eps + p.alpha, "eps+alpha"},
      {p.eps + p.beta, "eps+beta"},
      {p.eps + p.alpha + p.beta, "eps+alpha+beta"},
      {2 * p.eps + p.alpha + p.beta, "2eps+alpha+beta"},
  };
  for (const auto& [val, name] : checks)
    if (is_integer(val)) v.push_back(name + " = " + to_string(val) + " is an integer");
  return v;
}

inline bool cond_ok(const Params& p) { return cond_violations(p).empty(); }

inline void require_cond(const Params& p) {
  auto v = cond_violations(p);
  if (!v.empty()) {
    std::string msg = "parameter conditions violated:";
    for (const auto& s : v) msg += " " + s + ";";
    throw AdmissibilityError(msg);
  }
}

// lambda(n) = (n+eps)(n+eps+alpha+beta+1) as a polynomial in n
inline Poly lambda_poly(const Params& p) {
  Poly n = Poly::X();
  return (n + Poly(p.eps)) * (n + Poly(p.eps + p.alpha + p.beta + 1));
}

namespace detail {

// Split p(n) = E(lam) + u * O(lam) where u = 2n + theta and
// lam = lambda(n) = ((u/2)^2 - K), K = ((alpha+beta+1)/2)^2.
// Works in the centered variable v = u/2: p(v - theta/2) splits into even and
// odd parts in v; even powers v^(2j) become (x + K)^j under x = lambda.
inline std::pair<Poly, Poly> split_even_odd_in_lambda(const Poly& p, const Params& par) {
  Rat half_theta = par.theta() / 2;
  Rat K = pow_rat((par.alpha + par.beta + 1) / 2, 2);
  Poly centered = p.shift(-half_theta);  // value at v equals p(v - theta/2)
  size_t half = static_cast<size_t>(centered.degree() / 2 + 1);
  std::vector<Rat> ev(half, Rat(0)), od(half, Rat(0));
  for (int i = 0; i <= centered.degree(); ++i) {
    if (i % 2 == 0)
      ev[static_cast<size_t>(i / 2)] = centered.coeff(i);
    else
      od[static_cast<size_t>(i / 2)] = centered.coeff(i);
  }
  // v^2 = x + K; v^(2j+1) = v * (x+K)^j and v = u/2 gives the odd factor u/2
  Poly xK = Poly::affine(Rat(1), K);
  Poly E = Poly(std::move(ev)).compose(xK);
  Poly O = (Rat(1) / Rat(2)) * Poly(std::move(od)).compose(xK);
  return {E, O};  // p(n) = E(lambda) + (2n+theta) * O(lambda)
}

}  // namespace detail

// Rewrite a rational function of n that is symmetric under n -> -(n+theta) as
// a rational function of x = lambda(n). Throws with the odd-part witness when
// the input is not symmetric.
inline RatFunc rewrite_in_lambda(const RatFunc& r, const Params& par) {
  auto [pe, po] = detail::split_even_odd_in_lambda(r.num(), par);
  auto [qe, qo] = detail::split_even_odd_in_lambda(r.den(), par);
  // symmetry of r <=> po*qe == pe*qo
  Poly odd_witness = po * qe - pe * qo;
  if (!odd_witness.is_zero())
    throw ContractError(
        "rewrite_in_lambda: input is not reflection-symmetric; odd part witness in x: " +
        odd_witness.to_string("x"));
  // u^2 = 4x + (alpha+beta+1)^2
  Poly u2 = Poly::affine(Rat(4), pow_rat(par.alpha + par.beta + 1, 2));
  RatFunc rho(pe * qe - u2 * po * qo, qe * qe - u2 * qo * qo);
  return rho;
}

// Substitute x = lambda(n) back; right inverse of rewrite_in_lambda.
inline RatFunc eval_at_lambda(const RatFunc& rho, const Params& par) {
  return rho.compose_poly(lambda_poly(par));
}

}  // namespace jdx

#endif
