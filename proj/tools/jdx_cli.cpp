#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "jdx/bispectral.hpp"
#include "jdx/darboux.hpp"
#include "jdx/json_io.hpp"
#include "jdx/minimal_dual.hpp"
#include "jdx/series.hpp"

namespace {

using namespace jdx;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitInadmissible = 2;
constexpr int kExitScope = 3;
constexpr int kExitVerification = 4;

struct RunConfig {
  std::string spec_path;
  long order = 48;
  std::vector<long> window{-8, 8};
  std::string format = "text";

  void validate() const {
    if (order < 8) throw ParseError("order must be at least 8");
    if (window.size() != 2 || window[0] > window[1])
      throw ParseError("window must be a nonempty range: lo hi");
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json(const std::string& path) { return json_parse(read_file(path), path); }

// A bundle document embeds its spec; a bare spec document has the parameter
// fields at top level.
bool looks_like_bundle(const Json& j) { return j.is_object() && j.contains("spec"); }

DarbouxSpec spec_from_file(const Json& j) {
  return spec_from_json(looks_like_bundle(j) ? j["spec"] : j);
}

void emit(const Json& report, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    out << report.dump(2) << "\n";
    return;
  }
  // text view: walk the document and flatten scalars
  std::function<void(const Json&, std::string)> walk = [&](const Json& node, std::string path) {
    if (node.is_object()) {
      for (const auto& [key, val] : node.items())
        walk(val, path.empty() ? key : path + "." + key);
    } else if (node.is_array() && !node.empty() &&
               (node[0].is_object() || node[0].is_array())) {
      for (size_t i = 0; i < node.size(); ++i) walk(node[i], path + "[" + std::to_string(i) + "]");
    } else {
      out << path << ": " << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
    }
  };
  walk(report, "");
}

struct SuiteResult {
  std::string name;
  bool ok = true;
  std::string witness;
  Json extra;
};

Json suites_report(const std::vector<SuiteResult>& suites, bool* all_ok) {
  Json arr = Json::array();
  bool ok = true;
  for (const auto& s : suites) {
    Json e;
    e["name"] = s.name;
    e["ok"] = s.ok;
    if (!s.witness.empty()) e["witness"] = s.witness;
    if (!s.extra.is_null()) e["detail"] = s.extra;
    arr.push_back(std::move(e));
    ok = ok && s.ok;
  }
  if (all_ok) *all_ok = ok;
  return arr;
}

// Per-n residual data for a series eigenvalue relation, reported whether or
// not it fails: guaranteed window plus the first failing exponent if any.
Json series_residual_report(const SeriesFamily& got, const SeriesFamily& want, long order,
                            bool* ok) {
  Json arr = Json::array();
  *ok = true;
  for (long n = std::max(got.lo, want.lo); n <= std::min(got.hi(), want.hi()); ++n) {
    LaurentSeries diff = got.at(n) - want.at(n);
    Json e;
    e["n"] = n;
    long guaranteed = std::min(order, diff.trunc() - 1);
    e["guaranteed_window"] = Json::array({diff.val(), guaranteed});
    bool good = true;
    for (long j = diff.val(); j <= guaranteed; ++j) {
      if (sgn(diff.coeff(j)) != 0) {
        e["first_failing_exponent"] = j;
        good = false;
        break;
      }
    }
    e["ok"] = good;
    *ok = *ok && good;
    arr.push_back(std::move(e));
  }
  return arr;
}

int cmd_build(const RunConfig& cfg) {
  Json doc = load_json(cfg.spec_path);
  DarbouxSpec sp = spec_from_file(doc);
  DarbouxBundle b = build_bundle(sp);
  emit(bundle_to_json(b), cfg, std::cout);
  return kExitOk;
}

std::vector<SuiteResult> run_suites(const DarbouxBundle& b, const RunConfig& cfg,
                                    std::string* lift_note) {
  std::vector<SuiteResult> suites;

  {
    SuiteResult s{.name = "intertwining"};
    if (b.L * b.P != b.P * b.L0) {
      s.ok = false;
      s.witness = "L*P != P*L0";
    }
    suites.push_back(std::move(s));
  }
  {
    SuiteResult s{.name = "kernels"};
    for (size_t i = 0; i < b.basis.size(); ++i) {
      if (!b.P.apply(b.basis[i]).is_zero()) {
        s.ok = false;
        s.witness = "P does not annihilate kernel function " + std::to_string(i);
        break;
      }
    }
    if (s.ok && !b.basis.empty()) {
      if (auto w = admissibility_witness(b.dets[0])) {
        s.ok = false;
        s.witness = *w;
      }
    }
    suites.push_back(std::move(s));
  }
  {
    SuiteResult s{.name = "factorizations"};
    DiffOp q0 = op_poly(b.qpoly, b.L0);
    if (b.Q * b.P != q0) {
      s.ok = false;
      s.witness = "Q*P != q(L0)";
    } else if (b.P * b.Q != op_poly(b.qpoly, b.L)) {
      s.ok = false;
      s.witness = "P*Q != q(L)";
    } else if (formula_L(b.spec.par, b.spec.k, b.spec.l, b.dets) != b.L) {
      s.ok = false;
      s.witness = "determinant formula disagrees with the division route";
    }
    suites.push_back(std::move(s));
  }
  {
    SuiteResult s{.name = "I-invariance"};
    try {
      SymForm sf = sym_form(b);
      Rat theta = sf.par.theta();
      if (involution_I(sf.Psym, theta) != sf.Psym) {
        s.ok = false;
        s.witness = "symmetric operator is not reflection-invariant";
      } else if (involution_I(sf.Qsym, theta) != sf.Qsym) {
        s.ok = false;
        s.witness = "cofactor is not reflection-invariant";
      }
      if (sf.lifted && lift_note)
        *lift_note = "odd total degree: auto-lift applied (one parameter step up)";
    } catch (const ScopeError& e) {
      s.ok = true;
      s.witness = std::string("skipped: ") + e.what();
    }
    suites.push_back(std::move(s));
  }
  {
    SuiteResult s{.name = "series"};
    SeriesFamily fam =
        p_family(b.spec.par, cfg.window[0], cfg.window[1], cfg.order + b.spec.k + b.spec.l + 2);
    SeriesFamily psi = apply_n(b.P, fam);
    SeriesFamily lhs = apply_n(b.L, psi);
    SeriesFamily rhs = apply_z_family(DiffOpZ::mult_z(), psi);
    bool ok = true;
    s.extra = series_residual_report(lhs, rhs, cfg.order, &ok);
    if (!ok) {
      s.ok = false;
      s.witness = "eigenvalue relation L Psi = z Psi has a residual";
    }
    suites.push_back(std::move(s));
  }
  return suites;
}

int cmd_verify(const RunConfig& cfg) {
  Json doc = load_json(cfg.spec_path);
  DarbouxSpec sp = spec_from_file(doc);
  DarbouxBundle b = build_bundle(sp);

  std::string lift_note;
  std::vector<SuiteResult> suites = run_suites(b, cfg, &lift_note);

  if (looks_like_bundle(doc)) {
    Json rebuilt = bundle_to_json(b);
    for (const char* section : {"spec", "qpoly", "P", "L", "Q", "dets", "jordan"}) {
      SuiteResult s{.name = std::string("bundle-match/") + section};
      if (!doc.contains(section)) {
        s.ok = false;
        s.witness = "section missing from the input file";
      } else if (doc[section] != rebuilt[section]) {
        s.ok = false;
        s.witness = "section differs from the rebuilt bundle";
      }
      suites.push_back(std::move(s));
    }
    SuiteResult s{.name = "bundle-match/bytes"};
    if (doc.dump(2) != rebuilt.dump(2)) {
      s.ok = false;
      s.witness = "serialized bytes differ from the rebuilt bundle";
    }
    suites.push_back(std::move(s));
  }

  bool ok = true;
  Json report;
  report["input"] = cfg.spec_path;
  report["order"] = cfg.order;
  report["window"] = Json::array({cfg.window[0], cfg.window[1]});
  report["suites"] = suites_report(suites, &ok);
  if (!lift_note.empty()) report["note"] = lift_note;
  report["ok"] = ok;
  emit(report, cfg, std::cout);
  return ok ? kExitOk : kExitVerification;
}

int cmd_dual(const RunConfig& cfg) {
  Json doc = load_json(cfg.spec_path);
  DarbouxSpec sp = spec_from_file(doc);
  DarbouxBundle b = build_bundle(sp);
  DualCertificate cert = build_dual(b, cfg.order, cfg.window[0], cfg.window[1]);
  emit(certificate_to_json(cert), cfg, std::cout);
  return kExitOk;
}

// The worked example: alpha = 2, beta = 0, k = 2, l = 0, caller-chosen eps and
// tower weights B0, B1. Checks the closed forms of the kernel functions, the
// gauged basis, the symmetric operator display, and the published minimal
// dual pair (order-10 operator, degree-5 eigenvalue) against series.
int cmd_reproduce(const RunConfig& cfg, const std::string& eps_s, const std::string& b0_s,
                  const std::string& b1_s) {
  Rat eps = rat_from_string(eps_s);
  Rat B0 = rat_from_string(b0_s);
  Rat B1 = rat_from_string(b1_s);

  DarbouxSpec sp;
  sp.par = Params{Rat(2), Rat(0), eps};
  sp.k = 2;
  sp.l = 0;
  sp.A = {Rat(1), Rat(0)};
  sp.B = {B0, B1};

  std::vector<SuiteResult> checks;
  Rat kap = (eps + 1) * (eps + 2);
  Poly lam = lambda_poly(sp.par);
  RatFunc lamr(lam);
  RatFunc l2 = lamr + RatFunc(Rat(2));

  {
    SuiteResult s{.name = "kernel-closed-forms"};
    RatFunc phi0 = l2 * RatFunc(Rat(1) / kap);
    RatFunc phi1 = lamr * l2 * RatFunc(Rat(1) / (Rat(6) * kap));
    RatFunc psi0 = RatFunc(Rat(kap)) / l2;
    RatFunc psi1 = RatFunc(-kap / Rat(2));
    if (kernel_fn(sp.par, KernelFamily::PlusPhi, 0).ev() != phi0)
      s.witness = "phi+(0)";
    else if (kernel_fn(sp.par, KernelFamily::PlusPhi, 1).ev() != phi1)
      s.witness = "phi+(1)";
    else if (kernel_fn(sp.par, KernelFamily::PlusPsi, 0).ev() != psi0)
      s.witness = "psi+(0)";
    else if (kernel_fn(sp.par, KernelFamily::PlusPsi, 1).ev() != psi1)
      s.witness = "psi+(1)";
    if (!s.witness.empty()) {
      s.ok = false;
      s.witness += " differs from its closed form";
    }
    checks.push_back(std::move(s));
  }

  DarbouxBundle b = build_bundle(sp);
  RatFunc F0, F1;
  {
    SuiteResult s{.name = "gauged-basis-forms"};
    RatFunc phi = phi_fn(sp.par);
    F0 = RatFunc(Rat(1)) + RatFunc(Poly(B0 * kap * kap)) / (l2 * l2);
    F1 = lamr * RatFunc(rat(1, 6)) - RatFunc(Poly(B0 * kap * kap / 2)) / l2 +
         RatFunc(Poly(B1 * kap * kap)) / (l2 * l2);
    if (b.basis[0].ev() / phi != F0) {
      s.ok = false;
      s.witness = "F(0) differs from its closed form";
    } else if (b.basis[1].ev() / phi != F1) {
      s.ok = false;
      s.witness = "F(1) differs from its closed form";
    }
    checks.push_back(std::move(s));
  }

  SymForm sf = sym_form(b);
  {
    SuiteResult s{.name = "symmetric-operator-display"};
    // (n + eps + 3/2) times the expansion of det [F(n+i) | T^i], i = -1..1
    auto sh = [](const RatFunc& f, int j) { return f.comp_affine(Rat(1), Rat(j)); };
    DiffOp disp;
    disp += DiffOp(-1, SRF(sh(F0, 0) * sh(F1, 1) - sh(F0, 1) * sh(F1, 0)));
    disp += DiffOp(0, SRF(sh(F0, 1) * sh(F1, -1) - sh(F0, -1) * sh(F1, 1)));
    disp += DiffOp(1, SRF(sh(F0, -1) * sh(F1, 0) - sh(F0, 0) * sh(F1, -1)));
    disp = SRF(RatFunc(Poly::affine(Rat(1), eps + rat(3, 2)))) * disp;
    if (disp != sf.Psym) {
      s.ok = false;
      s.witness = "determinant display differs from the constructed symmetric operator";
    }
    checks.push_back(std::move(s));
  }

  bool series_ok = true;
  {
    SuiteResult s{.name = "published-minimal-dual"};
    DiffOpZ B = min_order_dual(B0, B1, kap);
    Poly h = min_order_eigen(B0, B1, kap);
    SeriesFamily fam = p_family(sp.par, cfg.window[0], cfg.window[1],
                                cfg.order + B.order() + 2);
    SeriesFamily psi = apply_n(b.P, fam);
    SeriesFamily lhs = apply_z_family(B, psi);
    SeriesFamily rhs;
    rhs.lo = psi.lo;
    for (long n = psi.lo; n <= psi.hi(); ++n)
      rhs.v.push_back(h.eval(lam.eval(Rat(n - 1))) * psi.at(n));
    s.extra = series_residual_report(lhs, rhs, cfg.order, &series_ok);
    if (!series_ok) {
      s.ok = false;
      s.witness = "B Psi != h(lambda(n-1)) Psi";
    }
    checks.push_back(std::move(s));
  }

  bool ok = true;
  Json report;
  report["eps"] = rat_to_json(eps);
  report["B0"] = rat_to_json(B0);
  report["B1"] = rat_to_json(B1);
  report["order"] = cfg.order;
  report["window"] = Json::array({cfg.window[0], cfg.window[1]});
  report["checks"] = suites_report(checks, &ok);
  report["ok"] = ok;
  emit(report, cfg, std::cout);
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Darboux transformations of Jacobi-type difference operators"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string eps_s = "1/3", b0_s = "2", b1_s = "5/7";

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    if (needs_spec)
      sub->add_option("--spec", cfg.spec_path, "spec or bundle JSON file")->required();
    sub->add_option("--order,-N", cfg.order, "series truncation order");
    sub->add_option("--window", cfg.window, "integer window lo hi")->expected(2);
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* build = app.add_subcommand("build", "construct the transformed operator bundle");
  add_common(build, true);
  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, true);
  CLI::App* dual = app.add_subcommand("dual", "construct and check a dual certificate");
  add_common(dual, true);
  CLI::App* rep = app.add_subcommand("reproduce-5-2", "reproduce the worked example");
  add_common(rep, false);
  rep->add_option("--eps", eps_s, "eps parameter");
  rep->add_option("--B0", b0_s, "first tower weight");
  rep->add_option("--B1", b1_s, "second tower weight");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.validate();
    if (build->parsed()) return cmd_build(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (dual->parsed()) return cmd_dual(cfg);
    return cmd_reproduce(cfg, eps_s, b0_s, b1_s);
  } catch (const jdx::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const jdx::ScopeError& e) {
    std::cerr << "out of scope: " << e.what() << "\n";
    return kExitScope;
  } catch (const jdx::AdmissibilityError& e) {
    std::cerr << "inadmissible: " << e.what() << "\n";
    return kExitInadmissible;
  } catch (const jdx::Error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  }
}
