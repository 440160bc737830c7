#pragma once
//
// Families of test sequences and the batch run configuration.
//
// Textual family syntax:
//   power:c,gamma            α_n = c/(n+1)^γ
//   rotated:c,gamma,beta     α_n = c e^{iβn}/(n+1)^γ
//   random:seed,cap          i.i.d. uniform in the disk |α| < cap (mt19937_64)
//   constant:c               α_n = c
//   explicit:a0,a1,...       entries like 0.5, -0.2i, 0.1+0.3i; zero-padded

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "szego/measure.hpp"
#include "szego/sequence.hpp"

namespace szego {

struct PowerFamily {
  double c = 0.5;
  double gamma = 1.0;
};
struct RotatedFamily {
  double c = 0.5;
  double gamma = 1.0;
  double beta = 0.0;
};
struct RandomFamily {
  std::uint64_t seed = 0;
  double cap = 0.5;
};
struct ConstantFamily {
  Complex c{0.0};
};
struct ExplicitFamily {
  std::vector<Complex> values;
};

using FamilySpec = std::variant<PowerFamily, RotatedFamily, RandomFamily, ConstantFamily, ExplicitFamily>;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

/// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses "a", "bi", "a+bi", "a-bi" (also "i", "-i").
inline Complex parse_complex(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') return {detail::parse_double(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return detail::parse_double(s);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {detail::parse_double(body.substr(0, split)), imag_part(body.substr(split))};
}

inline std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return detail::format_double(z.real());
  const std::string im = detail::format_double(z.imag()) + "i";
  if (z.real() == 0.0) return im;
  return detail::format_double(z.real()) + (z.imag() < 0.0 ? "" : "+") + im;
}

inline FamilySpec parse_family(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("family needs the form kind:args");
  const std::string kind = text.substr(0, colon);
  const auto args = detail::split(text.substr(colon + 1), ',');
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw std::invalid_argument("family '" + kind + "' takes " + std::to_string(n) + " arguments");
    }
  };
  if (kind == "power") {
    need(2);
    return PowerFamily{detail::parse_double(args[0]), detail::parse_double(args[1])};
  }
  if (kind == "rotated") {
    need(3);
    return RotatedFamily{detail::parse_double(args[0]), detail::parse_double(args[1]),
                         detail::parse_double(args[2])};
  }
  if (kind == "random") {
    need(2);
    return RandomFamily{std::stoull(args[0]), detail::parse_double(args[1])};
  }
  if (kind == "constant") {
    need(1);
    return ConstantFamily{parse_complex(args[0])};
  }
  if (kind == "explicit") {
    ExplicitFamily f;
    for (const auto& a : args) f.values.push_back(parse_complex(a));
    return f;
  }
  throw std::invalid_argument("unknown family kind '" + kind + "'");
}

inline std::string to_string(const FamilySpec& f) {
  using detail::format_double;
  struct Visitor {
    std::string operator()(const PowerFamily& p) const {
      return "power:" + format_double(p.c) + "," + format_double(p.gamma);
    }
    std::string operator()(const RotatedFamily& p) const {
      return "rotated:" + format_double(p.c) + "," + format_double(p.gamma) + "," + format_double(p.beta);
    }
    std::string operator()(const RandomFamily& p) const {
      return "random:" + std::to_string(p.seed) + "," + format_double(p.cap);
    }
    std::string operator()(const ConstantFamily& p) const { return "constant:" + format_complex(p.c); }
    std::string operator()(const ExplicitFamily& p) const {
      std::string s = "explicit:";
      for (std::size_t i = 0; i < p.values.size(); ++i) s += (i ? "," : "") + format_complex(p.values[i]);
      return s;
    }
  };
  return std::visit(Visitor{}, f);
}

/// Entries α_0..α_N.  Throws std::domain_error when some |α_n| ≥ 1.
inline VerblunskySequence generate(const FamilySpec& family, long N) {
  if (N < 0) throw std::invalid_argument("generate requires N >= 0");
  const auto len = static_cast<std::size_t>(N + 1);
  std::vector<Complex> out(len, Complex(0.0));
  if (const auto* p = std::get_if<PowerFamily>(&family)) {
    for (std::size_t n = 0; n < len; ++n) out[n] = p->c / std::pow(n + 1.0, p->gamma);
  } else if (const auto* p = std::get_if<RotatedFamily>(&family)) {
    for (std::size_t n = 0; n < len; ++n) {
      out[n] = std::polar(p->c / std::pow(n + 1.0, p->gamma), p->beta * static_cast<double>(n));
    }
  } else if (const auto* p = std::get_if<RandomFamily>(&family)) {
    if (!(p->cap > 0.0 && p->cap <= 1.0)) throw std::invalid_argument("random cap must lie in (0, 1]");
    std::mt19937_64 rng(p->seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& a : out) {
      const double radius = p->cap * std::sqrt(unit(rng));
      const double angle = 2.0 * std::numbers::pi * unit(rng);
      a = std::polar(radius, angle);
    }
  } else if (const auto* p = std::get_if<ConstantFamily>(&family)) {
    std::fill(out.begin(), out.end(), p->c);
  } else {
    const auto& v = std::get<ExplicitFamily>(family).values;
    for (std::size_t n = 0; n < std::min(len, v.size()); ++n) out[n] = v[n];
  }
  for (std::size_t n = 0; n < len; ++n) {
    if (!(std::abs(out[n]) < 1.0)) {
      throw std::domain_error("generated |alpha_" + std::to_string(n) + "| = " +
                              detail::format_double(std::abs(out[n])) + " is not below 1");
    }
  }
  return VerblunskySequence(std::move(out));
}

struct RunConfig {
  std::size_t grid_size = kDefaultGridSize;
  std::vector<int> m_list{1};
  std::vector<long> N_list{250, 500, 1000, 2000};
  std::uint64_t seed = 0;
  double tolerance = 1e-12;
  std::string family = "power:0.9,0.5";
  std::string out;  // empty: stdout
  unsigned jobs = 1;

  /// `min_m` is 0 where K_0 makes sense.
  void validate(int min_m = 1) const {
    if (grid_size < 16) throw std::invalid_argument("grid must be at least 16");
    if (m_list.empty() || N_list.empty()) throw std::invalid_argument("m and N lists must be nonempty");
    for (int m : m_list) {
      if (m < min_m) throw std::invalid_argument("m values must be at least " + std::to_string(min_m));
    }
    for (long N : N_list) {
      if (N < 0) throw std::invalid_argument("N values must be nonnegative");
    }
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (jobs < 1) throw std::invalid_argument("jobs must be positive");
  }
};

}  // namespace szego
