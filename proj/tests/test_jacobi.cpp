#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "jdx/jacobi.hpp"

using namespace jdx;

namespace {

std::mt19937 rng(5150);

Rat rnd_rat() {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(2, 5);
  return rat(num(rng), den(rng));
}

Params rnd_params() {
  for (;;) {
    Params p{rnd_rat(), rnd_rat(), rnd_rat()};
    if (cond_ok(p)) return p;
  }
}

const std::vector<Params> kIntAlphaParams = {
    {Rat(2), Rat(0), rat(1, 3)},  {Rat(1), Rat(1), rat(2, 7)},  {Rat(-2), Rat(1), rat(1, 3)},
    {Rat(3), Rat(-2), rat(2, 7)}, {Rat(-1), Rat(-3), rat(1, 5)}};

const std::vector<Params> kIntBetaParams = {
    {Rat(1), Rat(-2), rat(2, 7)}, {rat(1, 3), Rat(2), rat(1, 5)}, {Rat(2), Rat(3), rat(1, 3)},
    {Rat(-1), Rat(-1), rat(3, 7)}};

}  // namespace

TEST_CASE("parameter swap symmetry of the tridiagonal operator") {
  for (int t = 0; t < 10; ++t) {
    Params p = rnd_params();
    Params swapped{-p.alpha, -p.beta, p.eps + p.alpha + p.beta};
    CHECK(jacobi_L(swapped) == jacobi_L(p));
  }
}

TEST_CASE("sign conjugation negates the operator after exchanging parameters") {
  for (int t = 0; t < 10; ++t) {
    Params p = rnd_params();
    Params ex{p.beta, p.alpha, p.eps};
    CHECK(conjugate_sigma(jacobi_L(ex)) == -jacobi_L(p));
  }
}

TEST_CASE("gauge conjugation produces the symmetric form") {
  for (const auto& p : kIntAlphaParams) {
    RatFunc phi = phi_fn(p);
    CHECK(conjugate(jacobi_L(p), phi.inverse()) == jacobi_L_tilde(p));
  }
}

TEST_CASE("reflection invariance of the symmetric form") {
  for (int t = 0; t < 10; ++t) {
    Params p = rnd_params();
    DiffOp lt = jacobi_L_tilde(p);
    CHECK(involution_I(lt, p.theta()) == lt);
  }
}

TEST_CASE("reflection maps the plain operator to a parameter shift") {
  for (int t = 0; t < 10; ++t) {
    Params p = rnd_params();
    Params image{-p.alpha, p.beta, p.eps + p.alpha};
    CHECK(involution_I(jacobi_L(p), p.theta()) == jacobi_L(image));
  }
}

TEST_CASE("step operators factor the shifted family") {
  DiffOp one = DiffOp::identity();
  for (int t = 0; t < 8; ++t) {
    Params p = rnd_params();
    if (sgn(p.alpha) == 0 || p.alpha == Rat(-1) || sgn(p.beta) == 0) continue;
    DiffOp L = jacobi_L(p);
    Params am{p.alpha - 1, p.beta, p.eps};
    Params ap{p.alpha + 1, p.beta, p.eps};
    Params bm{p.alpha, p.beta - 1, p.eps};
    Params bp{p.alpha, p.beta + 1, p.eps};
    CHECK(contiguous_D(am, Contig::AlphaPlus) * contiguous_D(p, Contig::AlphaMinus) == L - one);
    CHECK(contiguous_D(ap, Contig::AlphaMinus) * contiguous_D(p, Contig::AlphaPlus) == L - one);
    CHECK(contiguous_D(bm, Contig::BetaPlus) * contiguous_D(p, Contig::BetaMinus) == L + one);
    CHECK(contiguous_D(bp, Contig::BetaMinus) * contiguous_D(p, Contig::BetaPlus) == L + one);
  }
}

TEST_CASE("gauge closed form matches pointwise products") {
  for (const auto& p : kIntAlphaParams) {
    RatFunc phi = phi_fn(p);
    for (long n0 = -5; n0 <= 5; ++n0) CHECK(phi.eval(Rat(n0)) == phi_at(p, n0));
  }
  CHECK_THROWS_AS(phi_fn({rat(1, 2), Rat(0), rat(1, 3)}), ScopeError);
}

TEST_CASE("kernel closed forms match the series-derivative values") {
  for (const auto& p : kIntAlphaParams) {
    long amag = ::abs(p.alpha.get_num().get_si());
    for (int i = 0; i < amag; ++i) {
      SRF phi_i = kernel_fn(p, KernelFamily::PlusPhi, i);
      SRF psi_i = kernel_fn(p, KernelFamily::PlusPsi, i);
      for (long n0 = -4; n0 <= 4; ++n0) {
        CHECK(phi_i.eval_at_int(n0) == kernel_fn_eval(p, KernelFamily::PlusPhi, i, n0));
        CHECK(psi_i.eval_at_int(n0) == kernel_fn_eval(p, KernelFamily::PlusPsi, i, n0));
      }
    }
  }
  for (const auto& p : kIntBetaParams) {
    long bmag = ::abs(p.beta.get_num().get_si());
    for (int i = 0; i < bmag; ++i) {
      SRF phi_i = kernel_fn(p, KernelFamily::MinusPhi, i);
      SRF psi_i = kernel_fn(p, KernelFamily::MinusPsi, i);
      CHECK_FALSE(phi_i.sigma_free());
      for (long n0 = -4; n0 <= 4; ++n0) {
        CHECK(phi_i.eval_at_int(n0) == kernel_fn_eval(p, KernelFamily::MinusPhi, i, n0));
        CHECK(psi_i.eval_at_int(n0) == kernel_fn_eval(p, KernelFamily::MinusPsi, i, n0));
      }
    }
  }
}

TEST_CASE("kernel ladder steps down in the plus family") {
  DiffOp one = DiffOp::identity();
  for (const auto& p : kIntAlphaParams) {
    DiffOp down = jacobi_L(p) - one;
    long amag = ::abs(p.alpha.get_num().get_si());
    for (auto fam : {KernelFamily::PlusPhi, KernelFamily::PlusPsi}) {
      CHECK(down.apply(kernel_fn(p, fam, 0)).is_zero());
      for (int i = 1; i < amag; ++i)
        CHECK(down.apply(kernel_fn(p, fam, i)) == kernel_fn(p, fam, i - 1));
    }
  }
}

TEST_CASE("kernel ladder steps down in the minus family") {
  DiffOp one = DiffOp::identity();
  for (const auto& p : kIntBetaParams) {
    DiffOp up = jacobi_L(p) + one;
    long bmag = ::abs(p.beta.get_num().get_si());
    for (auto fam : {KernelFamily::MinusPhi, KernelFamily::MinusPsi}) {
      CHECK(up.apply(kernel_fn(p, fam, 0)).is_zero());
      for (int i = 1; i < bmag; ++i)
        CHECK(up.apply(kernel_fn(p, fam, i)) == kernel_fn(p, fam, i - 1));
    }
  }
}

TEST_CASE("kernel functions of both families are independent") {
  // Casoratian of {phi+(0..k-1), psi+(0..k-1)} has no integer roots
  for (const auto& p : kIntAlphaParams) {
    int k = static_cast<int>(::abs(p.alpha.get_num().get_si()));
    std::vector<SRF> fam;
    for (int i = 0; i < k; ++i) {
      fam.push_back(kernel_fn(p, KernelFamily::PlusPhi, i));
      fam.push_back(kernel_fn(p, KernelFamily::PlusPsi, i));
    }
    KernelOp ko = from_kernel(fam);
    const SRF& d = ko.det0();
    RatFunc even = d.ev() + d.od(), odd = d.ev() - d.od();
    for (const RatFunc* branch : {&even, &odd}) {
      REQUIRE_FALSE(branch->is_zero());
      for (const auto& r : integer_roots(branch->num())) {
        bool even_root = mpz_even_p(r.get_mpz_t()) != 0;
        bool relevant = (branch == &even) ? even_root : !even_root;
        CHECK_FALSE(relevant);
      }
    }
  }
}

TEST_CASE("eigenvalue operator in z has the stated shape") {
  Params p{Rat(2), Rat(0), rat(1, 3)};
  DiffOpZ B = bispectral_B(p);
  CHECK(B.order() == 2);
  Poly z = Poly::X();
  CHECK(B.coeff(2) == RatFunc(z * z - Poly(Rat(1))));
  CHECK(B.coeff(1) == RatFunc(Poly(Rat(2)) + Poly(Rat(4)) * z));
  CHECK(B.coeff(0).is_zero());
}
