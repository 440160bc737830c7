#pragma once
//
// JSON encodings.  Exact rationals travel as "p/q" strings.
//
//   sequence        [[re, im], ...]
//   MeasureSpec     {"kind":"bernstein_szego","alphas":[[re,im],...]}
//                   {"kind":"sampled","weights":[...],"grid":G}
//   ShiftPolynomial {"k":k,"terms":[{"exp":[...2k ints...],"re":"p/q","im":"p/q"},...]}
//   monomial        {"holo":[{"order":a,"shift":s},...],"anti":[...],"re":"p/q","im":"p/q"}
//   GramBlock       {"m":m,"order":"grlex","entries":[["p/q",...],...]}

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "szego/family.hpp"
#include "szego/measure.hpp"
#include "szego/normal_form.hpp"
#include "szego/psd_quartic.hpp"
#include "szego/rational.hpp"
#include "szego/sequence.hpp"
#include "szego/shift_algebra.hpp"

namespace szego {

using Json = nlohmann::json;

inline Json sequence_to_json(const VerblunskySequence& seq) {
  Json out = Json::array();
  for (const Complex& a : seq.values()) out.push_back({a.real(), a.imag()});
  return out;
}

inline VerblunskySequence sequence_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("sequence JSON must be an array of [re, im] pairs");
  std::vector<Complex> values;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("sequence entry must be [re, im]");
    values.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return VerblunskySequence(std::move(values));
}

inline Json measure_to_json(const MeasureSpec& m) {
  if (const auto* bs = std::get_if<BernsteinSzego>(&m)) {
    return {{"kind", "bernstein_szego"}, {"alphas", sequence_to_json(bs->prefix)}};
  }
  const auto& s = std::get<SampledWeight>(m);
  return {{"kind", "sampled"}, {"weights", s.weights}, {"grid", s.weights.size()}};
}

inline MeasureSpec measure_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bernstein_szego") return BernsteinSzego{sequence_from_json(j.at("alphas"))};
  if (kind == "sampled") {
    SampledWeight w{j.at("weights").get<std::vector<double>>()};
    if (j.contains("grid") && j.at("grid").get<std::size_t>() != w.weights.size()) {
      throw std::invalid_argument("sampled measure: grid does not match the number of weights");
    }
    return w;
  }
  throw std::invalid_argument("unknown measure kind '" + kind + "'");
}

inline Json shift_polynomial_to_json(const ShiftPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"exp", e}, {"re", to_string(c.re())}, {"im", to_string(c.im())}});
  }
  return {{"k", p.k()}, {"terms", terms}};
}

inline ShiftPolynomial shift_polynomial_from_json(const Json& j) {
  const int k = j.at("k").get<int>();
  ShiftPolynomial out(k);
  for (const auto& t : j.at("terms")) {
    const auto e = t.at("exp").get<Exponent>();
    const Rational re = parse_rational(t.value("re", std::string("0")));
    const Rational im = parse_rational(t.value("im", std::string("0")));
    out += ShiftPolynomial::monomial(k, e, GaussianRational(re, im));
  }
  return out;
}

inline Json factors_to_json(const std::vector<DiffFactor>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back({{"order", f.order}, {"shift", f.shift}});
  return out;
}

inline std::vector<DiffFactor> factors_from_json(const Json& j) {
  std::vector<DiffFactor> out;
  for (const auto& f : j) out.push_back({f.at("order").get<int>(), f.at("shift").get<int>()});
  return out;
}

inline Json monomial_to_json(const ExactMonomial& m) {
  return {{"holo", factors_to_json(m.holo)},
          {"anti", factors_to_json(m.anti)},
          {"re", to_string(m.coeff.re())},
          {"im", to_string(m.coeff.im())}};
}

inline ExactMonomial monomial_from_json(const Json& j) {
  ExactMonomial m;
  m.holo = factors_from_json(j.at("holo"));
  m.anti = factors_from_json(j.at("anti"));
  m.coeff = GaussianRational(parse_rational(j.value("re", std::string("1"))),
                             parse_rational(j.value("im", std::string("0"))));
  return m;
}

inline Json gram_to_json(const GramBlock& g) {
  Json rows = Json::array();
  for (const auto& row : g.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    rows.push_back(r);
  }
  return {{"m", g.m}, {"order", "grlex"}, {"entries", rows}};
}

inline GramBlock gram_from_json(const Json& j) {
  if (j.value("order", std::string("grlex")) != "grlex") throw std::invalid_argument("only grlex order is supported");
  GramBlock g;
  g.m = j.at("m").get<int>();
  g.index = multi_indices(g.m - 1);
  for (const auto& row : j.at("entries")) {
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(parse_rational(e.get<std::string>()));
    if (r.size() != g.index.size()) throw std::invalid_argument("GramBlock row has the wrong length");
    g.entries.push_back(std::move(r));
  }
  if (g.entries.size() != g.index.size()) throw std::invalid_argument("GramBlock has the wrong number of rows");
  return g;
}

inline Json config_to_json(const RunConfig& c) {
  return {{"grid", c.grid_size}, {"m", c.m_list},     {"n_list", c.N_list}, {"seed", c.seed},
          {"tolerance", c.tolerance}, {"family", c.family}, {"out", c.out},       {"jobs", c.jobs}};
}

/// Flat keys; absent keys keep the values already in `c`.
inline void apply_config_json(RunConfig& c, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "grid") {
      c.grid_size = value.get<std::size_t>();
    } else if (key == "m") {
      c.m_list = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
    } else if (key == "n_list") {
      c.N_list = value.get<std::vector<long>>();
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "tolerance") {
      c.tolerance = value.get<double>();
    } else if (key == "family") {
      c.family = value.get<std::string>();
    } else if (key == "out") {
      c.out = value.get<std::string>();
    } else if (key == "jobs") {
      c.jobs = value.get<unsigned>();
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

}  // namespace szego
