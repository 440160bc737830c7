// szego: batch driver for sequence generation, sum-rule sweeps, Gram
// certification, normal-form checks, absorption probes, measure evaluation
// and the verification suites.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <list>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "szego/absorption.hpp"
#include "szego/family.hpp"
#include "szego/json_io.hpp"
#include "szego/measure.hpp"
#include "szego/normal_form.hpp"
#include "szego/psd_quartic.hpp"
#include "szego/sum_rule.hpp"
#include "szego/verify.hpp"
#include "szego/version.hpp"

namespace {

using namespace szego;

/// Flags shared by every subcommand.  Values given on the command line win
/// over values from --config, which win over the built-in defaults.
struct CommonOptions {
  std::vector<int> m;
  std::vector<long> n_list;
  std::size_t grid = kDefaultGridSize;
  std::uint64_t seed = 0;
  std::string out;
  unsigned jobs = 1;
  std::string config;
  std::string family;

  CLI::Option* m_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* grid_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* family_opt = nullptr;

  void attach(CLI::App* app) {
    m_opt = app->add_option("--m", m, "Orders m (comma separated)")->delimiter(',');
    n_opt = app->add_option("--n-list", n_list, "Truncation lengths N (comma separated)")->delimiter(',');
    grid_opt = app->add_option("--grid", grid, "Quadrature grid size");
    seed_opt = app->add_option("--seed", seed, "Random seed");
    out_opt = app->add_option("--out", out, "Output path (default: stdout)");
    jobs_opt = app->add_option("--jobs", jobs, "Worker threads");
    app->add_option("--config", config, "JSON file with flat run settings");
    family_opt = app->add_option("--family", family, "Sequence family, e.g. power:0.9,0.5");
  }

  RunConfig resolve(int min_m = 1) const {
    RunConfig c;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw std::runtime_error("cannot open config file '" + config + "'");
      apply_config_json(c, Json::parse(in));
    }
    if (m_opt->count()) c.m_list = m;
    if (n_opt->count()) c.N_list = n_list;
    if (grid_opt->count()) c.grid_size = grid;
    if (seed_opt->count()) c.seed = seed;
    if (out_opt->count()) c.out = out;
    if (jobs_opt->count()) c.jobs = jobs;
    if (family_opt->count()) c.family = family;
    c.validate(min_m);
    return c;
  }
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

/// "random:cap" takes its seed from the run configuration.
FamilySpec resolve_family(const RunConfig& c) {
  const std::string prefix = "random:";
  if (c.family.rfind(prefix, 0) == 0 && c.family.find(',') == std::string::npos) {
    return parse_family(prefix + std::to_string(c.seed) + "," + c.family.substr(prefix.size()));
  }
  return parse_family(c.family);
}

/// Destination for one command's output: a file with a config sidecar, or stdout.
class Output {
 public:
  Output(const RunConfig& c, std::string command) : config_(c), command_(std::move(command)) {
    if (!c.out.empty()) {
      file_.open(c.out);
      if (!file_) throw std::runtime_error("cannot write '" + c.out + "'");
    }
  }

  std::ostream& stream() { return config_.out.empty() ? std::cout : file_; }

  void version_header() { stream() << "# szego " << kVersion << ' ' << command_ << '\n'; }

  void finish() {
    if (config_.out.empty()) return;
    file_.close();
    std::ofstream side(config_.out + ".config.json");
    Json j = config_to_json(config_);
    j["command"] = command_;
    side << j.dump(2) << '\n';
  }

 private:
  RunConfig config_;
  std::string command_;
  std::ofstream file_;
};

/// Runs f(i) for i in [0, count) on `jobs` threads; results keep index order.
template <class R>
std::vector<R> parallel_map(std::size_t count, unsigned jobs, const std::function<R(std::size_t)>& f) {
  std::vector<R> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return Json::parse(in);
}

long max_of(const std::vector<long>& v) { return *std::max_element(v.begin(), v.end()); }
int max_of(const std::vector<int>& v) { return *std::max_element(v.begin(), v.end()); }

void print_suite(std::ostream& os, const SuiteReport& r) {
  os << "suite,check,status,detail\n";
  for (const auto& c : r.checks) {
    os << c.suite << ',' << c.name << ',' << (c.pass ? "PASS" : "FAIL") << ',' << c.detail << '\n';
  }
  os << "# passed " << r.passed() << '/' << r.checks.size() << '\n';
}

// ---------------------------------------------------------------------------

int cmd_generate(const RunConfig& c, long N, bool energies) {
  const auto seq = generate(resolve_family(c), N);
  Output out(c, "generate");
  if (energies) {
    out.version_header();
    std::vector<EnergyReport> rows;
    for (int m : c.m_list) rows.push_back(lukic_partial_sums(seq, m, N));
    write_energy_csv(out.stream(), rows);
  } else {
    out.stream() << sequence_to_json(seq).dump() << '\n';
  }
  out.finish();
  return 0;
}

int cmd_sumrule(const RunConfig& c) {
  const FamilySpec family = resolve_family(c);
  const auto seq = generate(family, max_of(c.N_list) + max_of(c.m_list));
  struct Item {
    int m;
    long N;
  };
  std::vector<Item> items;
  for (int m : c.m_list) {
    for (long N : c.N_list) items.push_back({m, N});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.m != b.m ? a.m < b.m : a.N < b.N;
  });
  items.erase(std::unique(items.begin(), items.end(),
                          [](const Item& a, const Item& b) { return a.m == b.m && a.N == b.N; }),
              items.end());
  const auto rows = parallel_map<DecompositionReport>(
      items.size(), c.jobs, [&](std::size_t i) { return decomposition_report(seq, items[i].m, items[i].N, c.grid_size); });
  Output out(c, "sumrule report");
  out.version_header();
  write_decomposition_csv_header(out.stream());
  for (const auto& r : rows) write_decomposition_csv_row(out.stream(), r);
  out.finish();
  return 0;
}

int cmd_gram_certify(const RunConfig& c, int m_max) {
  if (m_max < 1) throw std::invalid_argument("--m-max must be positive");
  struct Row {
    bool identity = false;
    PsdCertificate cert;
    std::size_t dimension = 0;
  };
  const auto rows = parallel_map<Row>(static_cast<std::size_t>(m_max), c.jobs, [](std::size_t i) {
    const int m = static_cast<int>(i) + 1;
    const auto g = gram_closed_form(m);
    return Row{gram_identity_check(m).equal, psd_certificate(g), g.dimension()};
  });
  Output out(c, "gram certify");
  out.version_header();
  auto& os = out.stream();
  os << "m,dimension,identity,certified,min_pivot\n";
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    Rational min_pivot = r.cert.pivots.empty() ? Rational(0) : r.cert.pivots.front();
    for (const auto& p : r.cert.pivots) min_pivot = std::min(min_pivot, p);
    os << i + 1 << ',' << r.dimension << ',' << (r.identity ? "PASS" : "FAIL") << ','
       << (r.cert.certified ? "PASS" : "FAIL") << ',' << to_string(min_pivot) << '\n';
    ok = ok && r.identity && r.cert.certified;
  }
  out.finish();
  return ok ? 0 : 1;
}

int cmd_gram_show(const RunConfig& c) {
  Output out(c, "gram show");
  Json all = Json::array();
  for (int m : c.m_list) all.push_back(gram_to_json(gram_closed_form(m)));
  out.stream() << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  out.finish();
  return 0;
}

int cmd_normalform_verify(const RunConfig& c) {
  const auto report = run_algebra_suite(c.seed == 0 ? 1 : c.seed);
  Output out(c, "normalform verify");
  print_suite(out.stream(), report);
  out.finish();
  return report.ok() ? 0 : 1;
}

int cmd_normalform_expand(const RunConfig& c, const std::string& poly_path, int q) {
  const auto p = shift_polynomial_from_json(read_json_file(poly_path));
  const auto d = ideal_power_decompose(p, q);
  if (const auto* fail = std::get_if<MembershipFailure>(&d)) {
    std::ostringstream w;
    for (std::size_t i = 0; i < fail->witness.exponents.size(); ++i) w << (i ? "," : "") << fail->witness.exponents[i];
    std::cerr << "not in the ideal power q=" << q << "; lowest nonvanishing moment (" << w.str() << ")\n";
    return 1;
  }
  Output out(c, "normalform expand");
  Json monomials = Json::array();
  for (const auto& m : from_ideal_expansion(std::get<IdealExpansion>(d))) monomials.push_back(monomial_to_json(m));
  out.stream() << monomials.dump(2) << '\n';
  out.finish();
  return 0;
}

int cmd_absorb_gn(const RunConfig& c, int r, bool regularize) {
  const FamilySpec family = resolve_family(c);
  const auto seq = generate(family, max_of(c.N_list) + max_of(c.m_list));
  struct Item {
    int m;
    long N;
  };
  std::vector<Item> items;
  for (int m : c.m_list) {
    for (long N : c.N_list) items.push_back({m, N});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.m != b.m ? a.m < b.m : a.N < b.N;
  });
  const auto probes = parallel_map<GNProbe>(items.size(), c.jobs, [&](std::size_t i) {
    return gn_ratio_probe(seq, items[i].m, r, items[i].N, regularize);
  });
  Output out(c, "absorb probe");
  out.version_header();
  auto& os = out.stream();
  os.precision(17);
  os << "family,m,r,N,ratio,lhs,A,B\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& p = probes[i];
    os << csv_field(to_string(family)) << ',' << items[i].m << ',' << r << ',' << items[i].N << ',' << p.ratio << ',' << p.lhs
       << ',' << p.A << ',' << p.B << '\n';
  }
  out.finish();
  return 0;
}

ExactMonomial default_absorption_monomial() {
  // (Δα_n) α_n ᾱ_n ᾱ_n
  ExactMonomial m;
  m.holo = {{1, 0}, {0, 0}};
  m.anti = {{0, 0}, {0, 0}};
  return m;
}

int cmd_absorb_inequality(const RunConfig& c, const std::string& monomial_path, double eps,
                          const CLI::Option* C_opt, double C) {
  const FamilySpec family = resolve_family(c);
  const ExactMonomial mono = monomial_path.empty() ? default_absorption_monomial()
                                                   : monomial_from_json(read_json_file(monomial_path));
  const long L = absorption_shift_allowance(mono);
  const auto seq = generate(family, max_of(c.N_list) + L + 1);
  struct Item {
    int m;
    long N;
  };
  std::vector<Item> items;
  for (int m : c.m_list) {
    for (long N : c.N_list) items.push_back({m, N});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.m != b.m ? a.m < b.m : a.N < b.N;
  });
  std::vector<double> constants;
  for (const auto& it : items) {
    constants.push_back(C_opt->count() ? C
                                       : fit_absorption_constant(mono, {seq}, it.m, {50, 100, 200}, eps));
  }
  const auto probes = parallel_map<AbsorptionProbe>(items.size(), c.jobs, [&](std::size_t i) {
    return absorption_inequality_probe(mono, seq, items[i].m, items[i].N, eps, constants[i]);
  });
  Output out(c, "absorb probe");
  out.version_header();
  auto& os = out.stream();
  os.precision(17);
  os << "family,m,k,N,lhs,rhs,C,pass\n";
  bool ok = true;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& p = probes[i];
    os << csv_field(to_string(family)) << ',' << items[i].m << ',' << mono.k() << ',' << items[i].N << ',' << p.lhs << ','
       << p.rhs << ',' << constants[i] << ',' << (p.pass ? "PASS" : "FAIL") << '\n';
    ok = ok && p.pass;
  }
  out.finish();
  return ok ? 0 : 1;
}

int cmd_measure(const RunConfig& c, const std::string& measure_path, long N) {
  MeasureSpec measure;
  if (!measure_path.empty()) {
    measure = measure_from_json(read_json_file(measure_path));
  } else {
    measure = BernsteinSzego{generate(resolve_family(c), N)};
  }
  Output out(c, "measure");
  out.version_header();
  auto& os = out.stream();
  os.precision(17);
  os << "m,grid,value\n";
  for (int m : c.m_list) {
    const auto v = szego_functional(measure, m, c.grid_size);
    os << m << ',' << v.grid_size << ',' << v.value << '\n';
  }
  out.finish();
  return 0;
}

int cmd_verify(const RunConfig& c, const std::string& suite) {
  const auto report = run_suite(suite);
  Output out(c, "verify");
  print_suite(out.stream(), report);
  out.finish();
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order Szegő sum-rule toolkit"};
  app.set_version_flag("--version", std::string("szego ") + kVersion);
  app.require_subcommand(1);
  std::list<CommonOptions> commons;
  auto common = [&commons](CLI::App* sub) -> CommonOptions& {
    commons.emplace_back();
    commons.back().attach(sub);
    return commons.back();
  };

  auto* gen = app.add_subcommand("generate", "Emit a sequence family as JSON (or its energies as CSV)");
  auto& gen_opts = common(gen);
  long gen_n = 10;
  bool gen_energies = false;
  gen->add_option("--n", gen_n, "Last index N (entries 0..N)");
  gen->add_flag("--energies", gen_energies, "Emit Σ|Δ^mα|² and Σ|α|^{2m+2} as CSV instead");

  auto* sumrule = app.add_subcommand("sumrule", "Sum-rule decomposition sweeps");
  sumrule->require_subcommand(1);
  auto* sumrule_report = sumrule->add_subcommand("report", "K_proxy = Q + tail + residual over (m, N)");
  auto& sumrule_opts = common(sumrule_report);

  auto* gram = app.add_subcommand("gram", "Quartic Gram block");
  gram->require_subcommand(1);
  auto* gram_certify = gram->add_subcommand("certify", "Gram identity and exact PSD certificate for m = 1..m-max");
  auto& gram_certify_opts = common(gram_certify);
  int m_max = 10;
  gram_certify->add_option("--m-max", m_max, "Largest m");
  auto* gram_show = gram->add_subcommand("show", "Print GramBlock JSON for each --m");
  auto& gram_show_opts = common(gram_show);

  auto* nf = app.add_subcommand("normalform", "Normal-form rewriting");
  nf->require_subcommand(1);
  auto* nf_verify = nf->add_subcommand("verify", "Rational pointwise-equality suite");
  auto& nf_verify_opts = common(nf_verify);
  auto* nf_expand = nf->add_subcommand("expand", "Normal form of a ShiftPolynomial JSON file");
  auto& nf_expand_opts = common(nf_expand);
  std::string poly_path;
  int q = 1;
  nf_expand->add_option("--poly", poly_path, "ShiftPolynomial JSON")->required();
  nf_expand->add_option("--q", q, "Ideal power");

  auto* absorb = app.add_subcommand("absorb", "Interpolation and absorption probes");
  absorb->require_subcommand(1);
  auto* absorb_probe = absorb->add_subcommand("probe", "Probe the GN ratio or the absorption inequality");
  auto& absorb_opts = common(absorb_probe);
  std::string kind = "gn";
  int r = 1;
  bool no_regularize = false;
  std::string monomial_path;
  double eps = 0.1;
  double C = 0.0;
  absorb_probe->add_option("--kind", kind, "gn or absorption")->check(CLI::IsMember({"gn", "absorption"}));
  absorb_probe->add_option("--r", r, "Difference order r for the GN ratio");
  absorb_probe->add_flag("--no-regularize", no_regularize, "Drop the +1 in the GN denominator");
  absorb_probe->add_option("--monomial", monomial_path, "NormalFormMonomial JSON (default (Δα)αᾱᾱ)");
  absorb_probe->add_option("--eps", eps, "Absorption ε");
  auto* C_opt = absorb_probe->add_option("--C", C, "Absorption constant (default: fitted on N = 50, 100, 200)");

  auto* measure = app.add_subcommand("measure", "Weighted Szegő functional K_m");
  auto& measure_opts = common(measure);
  std::string measure_path;
  long measure_n = 10;
  measure->add_option("--measure", measure_path, "MeasureSpec JSON (default: Bernstein–Szegő of --family)");
  measure->add_option("--n", measure_n, "Prefix is α_0..α_N of --family");

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  auto& verify_opts = common(verify);
  std::string suite = "all";
  verify->add_option("--suite", suite, "gram, algebra, sumrule, measure, absorb or all")
      ->check(CLI::IsMember({"gram", "algebra", "sumrule", "measure", "absorb", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_opts.resolve(), gen_n, gen_energies);
    if (sumrule_report->parsed()) return cmd_sumrule(sumrule_opts.resolve());
    if (gram_certify->parsed()) return cmd_gram_certify(gram_certify_opts.resolve(), m_max);
    if (gram_show->parsed()) return cmd_gram_show(gram_show_opts.resolve());
    if (nf_verify->parsed()) return cmd_normalform_verify(nf_verify_opts.resolve());
    if (nf_expand->parsed()) return cmd_normalform_expand(nf_expand_opts.resolve(), poly_path, q);
    if (absorb_probe->parsed()) {
      const RunConfig c = absorb_opts.resolve();
      if (kind == "gn") return cmd_absorb_gn(c, r, !no_regularize);
      return cmd_absorb_inequality(c, monomial_path, eps, C_opt, C);
    }
    if (measure->parsed()) return cmd_measure(measure_opts.resolve(0), measure_path, measure_n);
    if (verify->parsed()) return cmd_verify(verify_opts.resolve(), suite);
  } catch (const std::exception& e) {
    std::cerr << "szego: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
