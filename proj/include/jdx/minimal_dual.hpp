#ifndef JDX_MINIMAL_DUAL_HPP
#define JDX_MINIMAL_DUAL_HPP

#include "jdx/poly.hpp"
#include "jdx/rat.hpp"
#include "jdx/zdiffop.hpp"

namespace jdx {

// Minimal-order dual pair for the alpha = 2, beta = 0, (k, l) = (2, 0) family,
// as closed forms in the tower weights B0, B1 and kappa = (eps+1)(eps+2).
// The constructive route produces a higher-order certificate; this order-10
// operator with its degree-5 eigenvalue is the essentially unique minimal one.
// Callers certify the pair against the eigenfunction series, so these tables
// carry no independent trust.

inline DiffOpZ min_order_dual(const Rat& B0, const Rat& B1, const Rat& kappa) {
  Poly z = Poly::X();
  Poly one(Rat(1));
  Poly m = z - one, p = z + one;
  Rat k2 = kappa * kappa, k4 = k2 * k2;
  auto pw = [](const Poly& b, int e) {
    Poly r(Rat(1));
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
  };
  auto C = [](const Rat& c) { return Poly(c); };
  auto cubic = [&](long a3, long a2, long a1, long a0) {
    return C(Rat(a3)) * z * z * z + C(Rat(a2)) * z * z + C(Rat(a1)) * z + C(Rat(a0));
  };

  DiffOpZ B;
  B += DiffOpZ(10, RatFunc(pw(m, 5) * pw(p, 5)));
  B += DiffOpZ(9, RatFunc(C(Rat(50)) * pw(m, 4) * z * pw(p, 4)));
  B += DiffOpZ(8, RatFunc(C(Rat(5)) * pw(m, 3) * pw(p, 3) *
                          (C(Rat(11)) * z - C(Rat(5))) * (C(Rat(17)) * z + C(Rat(7)))));
  B += DiffOpZ(7, RatFunc(C(Rat(160)) * pw(m, 2) * pw(p, 2) * cubic(52, -7, -28, 1)));
  B += DiffOpZ(6, RatFunc(C(Rat(10) * B0 * k2) * pw(m, 3) * pw(p, 3) +
                          C(Rat(40)) * pw(m, 2) * p * cubic(929, 665, -281, -137)));
  B += DiffOpZ(5, RatFunc(C(Rat(180) * B0 * k2) * pw(m, 2) * z * pw(p, 2) +
                          C(Rat(240)) * pw(m, 2) * cubic(337, 504, 141, -30)));
  B += DiffOpZ(4, RatFunc(C(Rat(-30) * B1 * k2) * pw(m, 2) * pw(p, 2) +
                          C(Rat(120) * B0 * k2) * m * p *
                              (C(Rat(8)) * z * z - z - C(Rat(3))) +
                          C(Rat(120)) * pw(m, 2) *
                              (C(Rat(641)) * z * z + C(Rat(758)) * z + C(Rat(161)))));
  B += DiffOpZ(3, RatFunc(C(Rat(-240) * B1 * k2) * m * z * p +
                          C(Rat(240) * B0 * k2) * cubic(7, -3, -7, 1) +
                          C(Rat(960)) * pw(m, 2) * (C(Rat(26)) * z + C(Rat(19)))));
  B += DiffOpZ(2, RatFunc(C(Rat(-60) * B1 * k2) * m * (C(Rat(7)) * z + C(Rat(5))) +
                          C(Rat(120) * B0 * k2) * (C(Rat(2)) * z + one) *
                              (C(Rat(3)) * z - C(Rat(5))) +
                          C(Rat(-15) * B0 * B0 * k4) * m * p +
                          C(Rat(1440)) * pw(m, 2)));
  B += DiffOpZ(1, RatFunc(-(C(Rat(30) * B0 * B0 * k4) * z + C(Rat(120) * B1 * k2) * m +
                            C(Rat(120) * B0 * k2))));
  return B;
}

// Eigenvalue polynomial h with B Psi = h(lambda(n-1)) Psi; the closed form is
// stated in the shifted variable x = lambda + 2.
inline Poly min_order_eigen(const Rat& B0, const Rat& B1, const Rat& kappa) {
  Rat k2 = kappa * kappa, k4 = k2 * k2;
  Poly h_shifted(std::vector<Rat>{Rat(0), -Rat(15) * B0 * B0 * k4,
                                  -(Rat(30) * B1 * k2 + Rat(20) * B0 * k2 + Rat(4)),
                                  Rat(10) * B0 * k2 + Rat(8), Rat(-5), Rat(1)});
  return h_shifted.comp_affine(Rat(1), Rat(2));
}

}  // namespace jdx

#endif
