#ifndef JDX_JSON_IO_HPP
#define JDX_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "jdx/bispectral.hpp"
#include "jdx/darboux.hpp"
#include "jdx/diffop.hpp"
#include "jdx/error.hpp"
#include "jdx/poly.hpp"
#include "jdx/rat.hpp"
#include "jdx/ratfunc.hpp"
#include "jdx/signedrf.hpp"
#include "jdx/zdiffop.hpp"

namespace jdx {

// Insertion-ordered documents keep the serialized key order deterministic,
// which the build/verify round trip compares byte for byte.
using Json = nlohmann::ordered_json;

inline Json rat_to_json(const Rat& q) { return to_string(q); }

inline Rat rat_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a rational as a string");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// Coefficient list, constant term first; the zero polynomial is [].
inline Json poly_to_json(const Poly& p) {
  Json a = Json::array();
  for (int i = 0; i <= p.degree(); ++i) a.push_back(rat_to_json(p.coeff(i)));
  return a;
}

inline Poly poly_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a coefficient array");
  std::vector<Rat> c;
  c.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    c.push_back(rat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return Poly(std::move(c));
}

inline Json ratfunc_to_json(const RatFunc& r) {
  Json o;
  o["num"] = poly_to_json(r.num());
  o["den"] = poly_to_json(r.den());
  return o;
}

inline RatFunc ratfunc_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw ParseError(where + ": expected an object with num and den");
  Poly den = poly_from_json(j["den"], where + ".den");
  if (den.is_zero()) throw ParseError(where + ": zero denominator");
  return RatFunc(poly_from_json(j["num"], where + ".num"), std::move(den));
}

inline Json srf_to_json(const SRF& f) {
  Json o;
  o["even"] = ratfunc_to_json(f.ev());
  o["odd"] = ratfunc_to_json(f.od());
  return o;
}

inline SRF srf_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("even") || !j.contains("odd"))
    throw ParseError(where + ": expected an object with even and odd");
  return SRF(ratfunc_from_json(j["even"], where + ".even"),
             ratfunc_from_json(j["odd"], where + ".odd"));
}

inline Json diffop_to_json(const DiffOp& d) {
  Json o;
  auto [lo, hi] = d.is_zero() ? std::pair<int, int>{0, 0} : d.support();
  o["support"] = Json::array({lo, hi});
  Json c;
  for (const auto& [j, f] : d.coeffs()) c[std::to_string(j)] = srf_to_json(f);
  o["coeffs"] = std::move(c);
  return o;
}

inline DiffOp diffop_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("coeffs"))
    throw ParseError(where + ": expected an object with coeffs");
  DiffOp d;
  for (const auto& [key, val] : j["coeffs"].items()) {
    int shift = 0;
    try {
      shift = std::stoi(key);
    } catch (const std::exception&) {
      throw ParseError(where + ": bad shift key '" + key + "'");
    }
    d += DiffOp(shift, srf_from_json(val, where + ".coeffs[" + key + "]"));
  }
  return d;
}

inline Json diffopz_to_json(const DiffOpZ& d) {
  Json o;
  o["order"] = d.order();
  Json c;
  for (const auto& [k, g] : d.coeffs()) c[std::to_string(k)] = ratfunc_to_json(g);
  o["coeffs"] = std::move(c);
  return o;
}

inline Json spec_to_json(const DarbouxSpec& sp) {
  Json o;
  o["alpha"] = rat_to_json(sp.par.alpha);
  o["beta"] = rat_to_json(sp.par.beta);
  o["eps"] = rat_to_json(sp.par.eps);
  o["k"] = sp.k;
  o["l"] = sp.l;
  auto arr = [](const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rat_to_json(q));
    return a;
  };
  o["A"] = arr(sp.A);
  o["B"] = arr(sp.B);
  o["C"] = arr(sp.C);
  o["D"] = arr(sp.D);
  return o;
}

inline DarbouxSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("spec: expected an object");
  for (const char* key : {"alpha", "beta", "eps", "k", "l", "A", "B", "C", "D"})
    if (!j.contains(key)) throw ParseError(std::string("spec: missing field '") + key + "'");
  DarbouxSpec sp;
  sp.par.alpha = rat_from_json(j["alpha"], "spec.alpha");
  sp.par.beta = rat_from_json(j["beta"], "spec.beta");
  sp.par.eps = rat_from_json(j["eps"], "spec.eps");
  if (!j["k"].is_number_integer() || !j["l"].is_number_integer())
    throw ParseError("spec: k and l must be integers");
  sp.k = j["k"].get<long>();
  sp.l = j["l"].get<long>();
  auto arr = [](const Json& a, const std::string& where) {
    if (!a.is_array()) throw ParseError(where + ": expected an array");
    std::vector<Rat> v;
    v.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      v.push_back(rat_from_json(a[i], where + "[" + std::to_string(i) + "]"));
    return v;
  };
  sp.A = arr(j["A"], "spec.A");
  sp.B = arr(j["B"], "spec.B");
  sp.C = arr(j["C"], "spec.C");
  sp.D = arr(j["D"], "spec.D");
  return sp;
}

inline Json bundle_to_json(const DarbouxBundle& b) {
  Json o;
  o["spec"] = spec_to_json(b.spec);
  o["qpoly"] = poly_to_json(b.qpoly);
  o["P"] = diffop_to_json(b.P);
  o["L"] = diffop_to_json(b.L);
  o["Q"] = diffop_to_json(b.Q);
  Json dets = Json::array();
  for (const auto& d : b.dets) dets.push_back(srf_to_json(d));
  o["dets"] = std::move(dets);
  Json jm = Json::array();
  for (const auto& row : jordan_matrix(b.spec)) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(rat_to_json(q));
    jm.push_back(std::move(r));
  }
  o["jordan"] = std::move(jm);
  return o;
}

inline Json certificate_to_json(const DualCertificate& c) {
  Json o;
  o["B"] = diffopz_to_json(c.Bdual);
  o["eigen"] = poly_to_json(c.eigen);
  o["shift"] = c.shift;
  o["verified_order"] = c.verified_order;
  return o;
}

inline Json json_parse(const std::string& text, const std::string& where) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(where + ": invalid JSON");
  return j;
}

}  // namespace jdx

#endif
