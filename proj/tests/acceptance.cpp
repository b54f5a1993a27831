#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "jdx/bispectral.hpp"
#include "jdx/darboux.hpp"
#include "jdx/minimal_dual.hpp"
#include "jdx/series.hpp"

using namespace jdx;

namespace {

std::mt19937 rng(29101);

Rat rnd_rat() {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(2, 5);
  return rat(num(rng), den(rng));
}

Rat rnd_coeff() {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  return rat(num(rng), den(rng));
}

DarbouxSpec rnd_spec(const Params& par, long k, long l) {
  for (int tries = 0; tries < 200; ++tries) {
    DarbouxSpec sp;
    sp.par = par;
    sp.k = k;
    sp.l = l;
    for (long i = 0; i < k; ++i) {
      sp.A.push_back(rnd_coeff());
      sp.B.push_back(rnd_coeff());
    }
    for (long i = 0; i < l; ++i) {
      sp.C.push_back(rnd_coeff());
      sp.D.push_back(rnd_coeff());
    }
    if (check_admissible(sp)) return sp;
  }
  throw Error("no admissible mixing found");
}

const std::vector<std::tuple<long, long, Rat, Rat>> kGrid = {
    {1, 0, Rat(1), Rat(0)}, {2, 0, Rat(2), Rat(0)}, {0, 1, Rat(2), Rat(1)},
    {1, 1, Rat(1), Rat(1)}, {2, 1, Rat(2), Rat(1)}, {2, 2, Rat(2), Rat(2)}};

const std::vector<Rat> kEps = {rat(1, 3), rat(2, 7)};

struct Verdict {
  bool ok = true;
  std::string note;
};

void fail(Verdict& v, const std::string& msg) {
  v.ok = false;
  if (!v.note.empty()) v.note += "; ";
  v.note += msg;
}

std::string par_tag(const Params& p) {
  return "(" + to_string(p.alpha) + "," + to_string(p.beta) + ";" + to_string(p.eps) + ")";
}

// 1. step-operator factorizations of the shifted family
Verdict criterion1() {
  Verdict v;
  DiffOp one = DiffOp::identity();
  int done = 0;
  while (done < 24) {
    Params p{rnd_rat(), rnd_rat(), rnd_rat()};
    if (!cond_ok(p) || sgn(p.alpha) == 0 || p.alpha == Rat(-1) || sgn(p.beta) == 0) continue;
    DiffOp L = jacobi_L(p);
    Params am{p.alpha - 1, p.beta, p.eps};
    Params ap{p.alpha + 1, p.beta, p.eps};
    Params bm{p.alpha, p.beta - 1, p.eps};
    Params bp{p.alpha, p.beta + 1, p.eps};
    if (contiguous_D(am, Contig::AlphaPlus) * contiguous_D(p, Contig::AlphaMinus) != L - one)
      fail(v, "down-up alpha factorization fails at " + par_tag(p));
    if (contiguous_D(ap, Contig::AlphaMinus) * contiguous_D(p, Contig::AlphaPlus) != L - one)
      fail(v, "up-down alpha factorization fails at " + par_tag(p));
    if (contiguous_D(bm, Contig::BetaPlus) * contiguous_D(p, Contig::BetaMinus) != L + one)
      fail(v, "down-up beta factorization fails at " + par_tag(p));
    if (contiguous_D(bp, Contig::BetaMinus) * contiguous_D(p, Contig::BetaPlus) != L + one)
      fail(v, "up-down beta factorization fails at " + par_tag(p));
    ++done;
  }
  if (v.ok) v.note = "both factorizations, both routes, 24 parameter triples";
  return v;
}

void casoratian_root_check(Verdict& v, const Params& p, bool plus, int count) {
  std::vector<SRF> fam;
  for (int i = 0; i < count; ++i) {
    fam.push_back(kernel_fn(p, plus ? KernelFamily::PlusPhi : KernelFamily::MinusPhi, i));
    fam.push_back(kernel_fn(p, plus ? KernelFamily::PlusPsi : KernelFamily::MinusPsi, i));
  }
  KernelOp ko = from_kernel(fam);
  const SRF& d = ko.det0();
  RatFunc even = d.ev() + d.od(), odd = d.ev() - d.od();
  for (const RatFunc* branch : {&even, &odd}) {
    if (branch->is_zero()) {
      fail(v, "degenerate Casoratian at " + par_tag(p));
      return;
    }
    for (const auto& r : integer_roots(branch->num())) {
      bool even_root = mpz_even_p(r.get_mpz_t()) != 0;
      if ((branch == &even) == even_root)
        fail(v, "integer Casoratian root at " + par_tag(p));
    }
  }
}

// 2. kernel ladders and tower independence
Verdict criterion2() {
  Verdict v;
  DiffOp one = DiffOp::identity();
  for (int mag = 1; mag <= 3; ++mag) {
    for (int sign : {1, -1}) {
      {
        Params p{Rat(sign * mag), rat(1, 2), rat(1, 3)};
        DiffOp down = jacobi_L(p) - one;
        for (auto fam : {KernelFamily::PlusPhi, KernelFamily::PlusPsi}) {
          if (!down.apply(kernel_fn(p, fam, 0)).is_zero())
            fail(v, "plus tower base not annihilated at " + par_tag(p));
          for (int i = 1; i < mag; ++i)
            if (down.apply(kernel_fn(p, fam, i)) != kernel_fn(p, fam, i - 1))
              fail(v, "plus ladder step " + std::to_string(i) + " fails at " + par_tag(p));
        }
        casoratian_root_check(v, p, true, mag);
      }
      {
        Params p{rat(1, 2), Rat(sign * mag), rat(1, 3)};
        DiffOp up = jacobi_L(p) + one;
        for (auto fam : {KernelFamily::MinusPhi, KernelFamily::MinusPsi}) {
          if (!up.apply(kernel_fn(p, fam, 0)).is_zero())
            fail(v, "minus tower base not annihilated at " + par_tag(p));
          for (int i = 1; i < mag; ++i)
            if (up.apply(kernel_fn(p, fam, i)) != kernel_fn(p, fam, i - 1))
              fail(v, "minus ladder step " + std::to_string(i) + " fails at " + par_tag(p));
        }
        casoratian_root_check(v, p, false, mag);
      }
    }
  }
  if (v.ok) v.note = "ladders and Casoratian independence for both towers, magnitudes 1..3";
  return v;
}

// 3. transformation identities across the degree grid
Verdict criterion3() {
  Verdict v;
  for (const auto& [k, l, alpha, beta] : kGrid) {
    for (const Rat& eps : kEps) {
      DarbouxSpec sp = rnd_spec({alpha, beta, eps}, k, l);
      DarbouxBundle b = build_bundle(sp);
      std::string tag = "(" + std::to_string(k) + "," + std::to_string(l) + ") eps=" +
                        to_string(eps);
      if (b.L * b.P != b.P * b.L0) fail(v, "intertwining fails for " + tag);
      if (b.Q * b.P != op_poly(b.qpoly, b.L0)) fail(v, "QP product fails for " + tag);
      if (b.P * b.Q != op_poly(b.qpoly, b.L)) fail(v, "PQ product fails for " + tag);
      if (formula_L(sp.par, k, l, b.dets) != b.L)
        fail(v, "determinant-ratio coefficients differ from division for " + tag);
      if (!is_regular(b.L)) fail(v, "transformed operator not regular for " + tag);
    }
  }
  if (v.ok) v.note = "intertwining, products, coefficient formulas, regularity on 12 specs";
  return v;
}

// 4. reflection machinery
Verdict criterion4() {
  Verdict v;
  std::string plain_failures;
  for (const auto& [k, l, alpha, beta] : kGrid) {
    if (k + l == 0) continue;
    for (const Rat& eps : kEps) {
      DarbouxSpec sp = rnd_spec({alpha, beta, eps}, k, l);
      DarbouxBundle b = build_bundle(sp);
      SymForm sf = sym_form(b);
      Rat theta = sf.par.theta();
      std::string tag = "(" + std::to_string(k) + "," + std::to_string(l) + ") eps=" +
                        to_string(eps);

      DiffOp plain = jacobi_L(sf.par);
      if (involution_I(plain, theta) != plain) {
        if (!plain_failures.empty()) plain_failures += ", ";
        plain_failures += tag;
      }
      DiffOp gauged = jacobi_L_tilde(sf.par);
      if (involution_I(gauged, theta) != gauged)
        fail(v, "gauged operator not reflection invariant for " + tag);

      if ((k + l) % 2 == 0) {
        DiffOp pre = detail::presym_from_minors(sp.par, k, l, b.basis);
        Rat e = Rat((k + l) / 2) + (alpha + beta) * Rat(l);
        if (!is_integer(e)) {
          fail(v, "sign exponent not integral for " + tag);
        } else {
          bool even = mpz_even_p(to_int(e).get_mpz_t()) != 0;
          if (involution_I(pre, sp.par.theta()) != (even ? pre : -pre))
            fail(v, "minor symmetrization sign law fails for " + tag);
        }
      }

      if (involution_I(sf.Psym, theta) != sf.Psym)
        fail(v, "symmetric form of P not reflection invariant for " + tag);
      if (involution_I(sf.Qsym, theta) != sf.Qsym)
        fail(v, "symmetric form of Q not reflection invariant for " + tag);
      DiffOp y = DiffOp::shift(-static_cast<int>(sf.s)) * conjugate(sf.Psym, phi_fn(sf.par));
      if (SRF(sf.rho) * y != sf.P) fail(v, "prefactor relation fails for " + tag);
    }
  }
  if (!plain_failures.empty())
    fail(v, "plain operator is NOT reflection invariant for " + plain_failures +
               " (reflection swaps it to the companion parameter family whenever "
               "alpha*beta != 0; only the gauged form is invariant there)");
  if (v.ok) v.note = "plain and gauged invariance, sign law, prefactor relation";
  return v;
}

// 5. worked-example reproduction
Verdict criterion5() {
  Verdict v;
  const std::vector<std::pair<Rat, Rat>> pairs = {{Rat(2), rat(5, 7)}, {Rat(1), Rat(1)}};
  const long order = 40;
  Rat eps = rat(1, 3);
  Rat kap = (eps + 1) * (eps + 2);
  Params par{Rat(2), Rat(0), eps};
  RatFunc lamr(lambda_poly(par));
  RatFunc l2 = lamr + RatFunc(Rat(2));

  if (kernel_fn(par, KernelFamily::PlusPhi, 0).ev() != l2 * RatFunc(Rat(1) / kap))
    fail(v, "first plus kernel function differs from its closed form");
  if (kernel_fn(par, KernelFamily::PlusPhi, 1).ev() != lamr * l2 * RatFunc(Rat(1) / (Rat(6) * kap)))
    fail(v, "second plus kernel function differs from its closed form");
  if (kernel_fn(par, KernelFamily::PlusPsi, 0).ev() != RatFunc(Rat(kap)) / l2)
    fail(v, "first companion kernel function differs from its closed form");
  if (kernel_fn(par, KernelFamily::PlusPsi, 1).ev() != RatFunc(-kap / Rat(2)))
    fail(v, "second companion kernel function differs from its closed form");

  for (const auto& [B0, B1] : pairs) {
    std::string tag = "(B0,B1)=(" + to_string(B0) + "," + to_string(B1) + ")";
    DarbouxSpec sp{par, 2, 0, {Rat(1), Rat(0)}, {B0, B1}, {}, {}};
    DarbouxBundle b = build_bundle(sp);

    RatFunc F0 = RatFunc(Rat(1)) + RatFunc(Poly(B0 * kap * kap)) / (l2 * l2);
    RatFunc F1 = lamr * RatFunc(rat(1, 6)) - RatFunc(Poly(B0 * kap * kap / 2)) / l2 +
                 RatFunc(Poly(B1 * kap * kap)) / (l2 * l2);
    RatFunc phi = phi_fn(par);
    if (b.basis[0].ev() / phi != F0 || b.basis[1].ev() / phi != F1)
      fail(v, "gauged kernel basis differs from closed forms at " + tag);

    SymForm sf = sym_form(b);
    auto sh = [](const RatFunc& g, int j) { return g.comp_affine(Rat(1), Rat(j)); };
    DiffOp disp;
    disp += DiffOp(-1, SRF(sh(F0, 0) * sh(F1, 1) - sh(F0, 1) * sh(F1, 0)));
    disp += DiffOp(0, SRF(sh(F0, 1) * sh(F1, -1) - sh(F0, -1) * sh(F1, 1)));
    disp += DiffOp(1, SRF(sh(F0, -1) * sh(F1, 0) - sh(F0, 0) * sh(F1, -1)));
    disp = SRF(RatFunc(Poly::affine(Rat(1), eps + rat(3, 2)))) * disp;
    if (disp != sf.Psym) fail(v, "determinant display differs from symmetric form at " + tag);

    DiffOpZ B = min_order_dual(B0, B1, kap);
    Poly h = min_order_eigen(B0, B1, kap);
    SeriesFamily fam = p_family(par, -8, 6, order + B.order() + 4);
    SeriesFamily psi = apply_n(b.P, fam);
    VerifyReport rep = verify_eigen_z(B, h, par, Rat(1), psi, order);
    if (!rep.ok) fail(v, "order-10 dual residual nonzero at " + tag + ": " + rep.witness);
  }
  if (v.ok) v.note = "closed forms, determinant display, order-10 dual at order 40 on [-6,6]";
  return v;
}

// 6. constructed dual certificates
Verdict criterion6() {
  Verdict v;
  const std::vector<DarbouxSpec> specs = {
      {{Rat(2), Rat(0), rat(1, 3)}, 2, 0, {Rat(1), Rat(0)}, {Rat(2), rat(5, 7)}, {}, {}},
      {{Rat(1), Rat(1), rat(1, 3)}, 1, 1, {Rat(1)}, {rat(1, 2)}, {Rat(1)}, {Rat(0)}}};
  for (const auto& sp : specs) {
    std::string tag = "(" + to_string(sp.par.alpha) + "," + to_string(sp.par.beta) + "," +
                      std::to_string(sp.k) + "," + std::to_string(sp.l) + ")";
    DarbouxBundle b = build_bundle(sp);
    DualCertificate cert = build_dual(b, 24, -6, 6);
    if (cert.verified_order != 24) fail(v, "certificate order short for " + tag);
    SeriesFamily psi =
        apply_n(b.P, p_family(sp.par, -8, 6, 24 + cert.Bdual.order() + 4));
    VerifyReport rep =
        verify_eigen_z(cert.Bdual, cert.eigen, cert.par, Rat(cert.shift), psi, 24);
    if (!rep.ok) fail(v, "eigen re-check fails for " + tag + ": " + rep.witness);
    std::string w;
    if (!verify_ino(cert, &w)) fail(v, "composition identity fails for " + tag + ": " + w);
  }
  if (v.ok) v.note = "constructive certificates verified and composition identity holds";
  return v;
}

DiffOp rnd_invariant(const Params& par, bool with_denominators) {
  Poly lam = lambda_poly(par);
  DiffOp lt = jacobi_L_tilde(par);
  for (;;) {
    DiffOp x;
    DiffOp pw = DiffOp::identity();
    for (int j = 0; j <= 2; ++j) {
      Poly num = Poly(rnd_coeff()) + Poly::affine(rnd_coeff(), Rat(0));
      Poly den(Rat(1));
      if (with_denominators && j % 2 == 0) {
        std::uniform_int_distribution<int> shiftc(1, 6);
        den = Poly::affine(Rat(1), Rat(shiftc(rng)));
      }
      if (!num.is_zero())
        x += DiffOp(0, SRF(RatFunc(num.compose(lam), den.compose(lam)))) * pw;
      pw = pw * lt;
    }
    if (!x.is_zero()) return x;
  }
}

bool left_round_trip(const DiffOp& x, const Params& par, const Decomposition& dec) {
  Poly lam = lambda_poly(par);
  DiffOp back = eval_free(dec.word, DiffOp(0, SRF(RatFunc(lam))), jacobi_L_tilde(par),
                          DiffOp::identity());
  return back == SRF(RatFunc(dec.denom.compose(lam))) * x;
}

bool right_round_trip(const DiffOp& x, const Params& par, const Decomposition& dec) {
  Poly lam = lambda_poly(par);
  DiffOp back = eval_free(dec.word, DiffOp(0, SRF(RatFunc(lam))), jacobi_L_tilde(par),
                          DiffOp::identity());
  return back == x * DiffOp(0, SRF(RatFunc(dec.denom.compose(lam))));
}

// 7. decomposition round-trips
Verdict criterion7() {
  Verdict v;
  const std::vector<Params> pars = {{Rat(2), Rat(0), rat(1, 3)},
                                    {Rat(1), Rat(1), rat(2, 7)},
                                    {Rat(-2), Rat(1), rat(1, 5)}};
  for (int t = 0; t < 25; ++t) {
    const Params& par = pars[static_cast<size_t>(t) % pars.size()];
    DiffOp x = rnd_invariant(par, t % 2 == 0);
    if (!left_round_trip(x, par, decompose_left(x, par)))
      fail(v, "left round-trip fails on random input " + std::to_string(t));
    if (!right_round_trip(x, par, decompose_right(x, par)))
      fail(v, "right round-trip fails on random input " + std::to_string(t));
  }

  const std::vector<DarbouxSpec> specs = {
      {{Rat(2), Rat(0), rat(1, 3)}, 2, 0, {Rat(1), Rat(0)}, {Rat(2), rat(5, 7)}, {}, {}},
      {{Rat(1), Rat(1), rat(1, 3)}, 1, 1, {Rat(1)}, {rat(1, 2)}, {Rat(1)}, {Rat(0)}}};
  for (const auto& sp : specs) {
    SymForm sf = sym_form(build_bundle(sp));
    if (!left_round_trip(sf.Psym, sf.par, decompose_left(sf.Psym, sf.par)))
      fail(v, "left round-trip fails on an engine transformation");
    if (!right_round_trip(sf.Qsym, sf.par, decompose_right(sf.Qsym, sf.par)))
      fail(v, "right round-trip fails on an engine transformation");
  }

  Params par{Rat(1), Rat(1), rat(1, 3)};
  Poly lam = lambda_poly(par);
  for (int t = 0; t < 5; ++t) {
    Poly num = Poly(rnd_coeff()) +
               Poly::affine(rnd_coeff(), Rat(0)) * Poly::affine(Rat(1), Rat(0));
    if (num.is_zero()) continue;
    Poly den = Poly::affine(Rat(1), Rat(t + 2));
    DiffOp x(0, SRF(RatFunc(num.compose(lam), den.compose(lam))));
    Decomposition dl = decompose_left(x, par);
    Decomposition dr = decompose_right(x, par);
    if (!dl.word.lambda_only() || !dr.word.lambda_only())
      fail(v, "multiplication input produced a word with shift letters");
    if (!left_round_trip(x, par, dl) || !right_round_trip(x, par, dr))
      fail(v, "round-trip fails on a multiplication input");
  }
  if (v.ok) v.note = "25 random + 2 engine inputs both sides; rational inputs stay shift-free";
  return v;
}

// 8. series layer
Verdict criterion8() {
  Verdict v;
  const std::vector<Params> pars = {{rat(1, 3), rat(3, 7), rat(2, 7)},
                                    {Rat(2), Rat(0), rat(1, 3)},
                                    {Rat(-2), Rat(1), rat(1, 3)},
                                    {Rat(-3), rat(1, 3), rat(1, 5)}};
  const long order = 40, N = 46;
  Poly z_t{{Rat(1), Rat(-2)}};

  for (const auto& p : pars) {
    SeriesFamily fam = p_family(p, -5, 5, N);
    SeriesFamily lhs = apply_n(jacobi_L(p), fam);
    for (long n = lhs.lo; n <= lhs.hi(); ++n)
      if (!(lhs.at(n).knows_through(order) && lhs.at(n) == fam.at(n).mul_poly(z_t)))
        fail(v, "difference equation fails at " + par_tag(p) + " n=" + std::to_string(n));

    DiffOpZ B = bispectral_B(p);
    Poly lam = lambda_poly(p);
    for (long n = -4; n <= 4; ++n) {
      LaurentSeries diff = apply_z(B, fam.at(n)) - lam.eval(Rat(n)) * fam.at(n);
      if (!diff.is_zero_through(order))
        fail(v, "differential equation fails at " + par_tag(p) + " n=" + std::to_string(n));
    }

    if (sgn(p.alpha) != 0) {
      Params am{p.alpha - 1, p.beta, p.eps};
      SeriesFamily got = apply_n(contiguous_D(p, Contig::AlphaMinus), fam);
      for (long n = got.lo; n <= got.hi(); ++n)
        if (got.at(n) != p_series(am, n, N))
          fail(v, "alpha step down fails on series at " + par_tag(p));
    }
    {
      Params bp{p.alpha, p.beta + 1, p.eps};
      SeriesFamily raw = apply_n(contiguous_D(p, Contig::BetaPlus), fam);
      for (long n = raw.lo; n <= raw.hi(); ++n)
        if (raw.at(n).div_poly(Poly{{Rat(2), Rat(-2)}}) != p_series(bp, n, N))
          fail(v, "beta step up fails on series at " + par_tag(p));
    }
  }

  for (int trial = 0; trial < 10; ++trial) {
    Rat a = rnd_rat(), b = rnd_rat(), c = rnd_rat();
    if (is_integer(c) && sgn(c) <= 0) continue;
    Rat d = b - a;
    if (is_integer(d) && abs(to_int(d)) <= 1) continue;
    LaurentSeries F = hyp_series(a, b, c, N);
    LaurentSeries up = hyp_series(a - 1, b + 1, c, N);
    LaurentSeries down = hyp_series(a + 1, b - 1, c, N);
    LaurentSeries lhs = (Rat(2) * (c - a) * b / (d * (d + 1))) * up +
                        ((a + b - 1) * (Rat(-2) * c + a + b + 1) / ((d - 1) * (d + 1))) * F +
                        (Rat(2) * a * (c - b) / (d * (d - 1))) * down;
    if (lhs != F.mul_poly(z_t))
      fail(v, "contiguous three-term relation fails on trial " + std::to_string(trial));
  }

  {
    Params p{rat(1, 3), rat(3, 7), rat(2, 7)};
    SeriesFamily fam = p_tilde_family(p, -8, 8, 40);
    DiffOp Lt = jacobi_L_tilde(p);
    DiffOp mulLam(SRF(RatFunc(lambda_poly(p))));
    DiffOpZ B = bispectral_B(p);
    DiffOpZ Mz = DiffOpZ::mult_z();
    std::uniform_int_distribution<int> len(1, 4);
    std::uniform_int_distribution<int> pick(0, 1);
    for (int trial = 0; trial < 6; ++trial) {
      FreeElem w;
      for (int term = 0; term < 2; ++term) {
        std::string word;
        int L = len(rng);
        for (int i = 0; i < L; ++i) word += pick(rng) ? 'A' : 'M';
        w = w + FreeElem::from_word(word, rnd_rat());
      }
      if (w.is_zero()) continue;
      DiffOp n_side = eval_free(w, mulLam, Lt, DiffOp::identity());
      DiffOpZ z_side = eval_free(w, B, Mz, DiffOpZ::identity(), true);
      SeriesFamily got = apply_n(n_side, fam);
      for (long n = got.lo; n <= got.hi(); ++n)
        if (!(got.at(n) - apply_z(z_side, fam.at(n))).is_zero_through(30))
          fail(v, "two-variable word action differs on trial " + std::to_string(trial));
    }
  }
  if (v.ok)
    v.note = "eigen equations, step relations, three-term relation at order 40; word duality at 30";
  return v;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    Verdict (*fn)();
    double budget;  // seconds, 0 = none stated
  };
  const std::vector<Entry> entries = {{1, criterion1, 5.0},  {2, criterion2, 10.0},
                                      {3, criterion3, 60.0}, {4, criterion4, 0.0},
                                      {5, criterion5, 30.0}, {6, criterion6, 120.0},
                                      {7, criterion7, 0.0},  {8, criterion8, 0.0}};
  bool all_ok = true;
  for (const auto& e : entries) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      v = e.fn();
    } catch (const std::exception& ex) {
      v.ok = false;
      v.note = std::string("unexpected exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget > 0 && secs > e.budget) {
      v.ok = false;
      v.note += (v.note.empty() ? "" : "; ") + std::string("exceeded the ") +
                std::to_string(static_cast<int>(e.budget)) + " s budget";
    }
    std::printf("criterion %d: %s  %s [%.2f s]\n", e.id, v.ok ? "PASS" : "FAIL",
                v.note.c_str(), secs);
    all_ok = all_ok && v.ok;
  }
  return all_ok ? 0 : 1;
}
