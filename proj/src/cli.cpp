#include "els/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "els/counting.hpp"
#include "els/criterion.hpp"
#include "els/localsolve.hpp"
#include "els/series.hpp"
#include "els/zeta.hpp"
#include "json.hpp"

namespace els::cli {

namespace {

using arith::i64;
using arith::u64;
using nlohmann::json;
using quartic::Quartic;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AgreementTripwire : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<std::string> poly;  // positional form
  std::vector<std::string> f;     // --f form
  i64 q = 0;
  u64 p = 0;
  std::string xmax;
  std::string checkpoints;
  std::string format;
  std::string output;
  std::string suite;
  std::string group;
  std::string n = "10000";
  std::string bound = "1000000";
  std::string qmax = "2000";
  std::string euler_bound;
  std::vector<u64> rs;
  double tolerance = 0.01;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool no_cache = false;
};

Quartic polynomial(const Config& c) {
  const auto& parts = !c.f.empty() ? c.f : c.poly;
  if (parts.empty()) throw UsageError("a polynomial is required (\"a3 a2 a1 a0\" or --f a3 a2 a1 a0)");
  if (parts.size() != 1 && parts.size() != 4)
    throw UsageError("expected four coefficients a3 a2 a1 a0 or one polynomial string");
  std::string text;
  for (const auto& s : parts) text += (text.empty() ? "" : " ") + s;
  return Quartic::parse(text);
}

std::vector<u64> parse_list(const std::string& text) {
  std::vector<u64> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) xs.push_back(parse_count(item));
  return xs;
}

std::string set_string(const std::set<int>& s) {
  std::string r = "{";
  for (int v : s) r += (r.size() > 1 ? "," : "") + std::to_string(v);
  return r + "}";
}

std::string symbol_string(int s) { return s > 0 ? "+1" : s < 0 ? "-1" : "any"; }

void print_analyze(const criterion::CriterionBundle& b, const std::string& format, std::ostream& out) {
  const mpq_class mr = quartic::mean_rho(b.galois);
  if (format == "json") {
    json j = criterion::to_json(b);
    j["m_rho"] = mr.get_str();
    j["m"] = mpq_class(1 - mr).get_str();
    out << j.dump(2) << '\n';
    return;
  }
  out << "polynomial: " << b.f.to_string() << '\n'
      << "disc: " << b.f.disc() << '\n'
      << "galois: " << quartic::to_string(b.galois) << '\n'
      << "m(rho): " << mr.get_str() << '\n'
      << "m: " << mpq_class(1 - mr).get_str() << '\n'
      << "mod 8, q odd: " << set_string(b.mod8.odd_allowed) << '\n'
      << "mod 8, q/2 for q even: " << set_string(b.mod8.half_allowed) << '\n';
  for (const auto& t : b.odd_tables)
    out << "prime " << t.p << ": u = " << t.u << ", p does not divide q: " << criterion::to_string(t.coprime_rule)
        << ", p divides q: " << criterion::to_string(t.dividing_rule) << '\n';
  out << "condition sets: " << b.sets.size() << '\n';
  for (const auto& s : b.sets) {
    out << "  q = " << s.bad_part << " c, c = " << s.mod8_class << " mod 8";
    for (const auto& [p, v] : s.legendre) out << ", (c/" << p << ") = " << symbol_string(v);
    out << '\n';
  }
  out << "F(s) = " << criterion::format_terms(b.terms) << '\n';
}

void print_report(const localsolve::SolvabilityReport& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << localsolve::to_json(r).dump(2) << '\n';
    return;
  }
  out << "solvable: " << (r.solvable ? "true" : "false") << '\n';
  if (r.witness != localsolve::WitnessKind::none)
    out << "witness: " << localsolve::to_string(r.witness) << " (" << localsolve::to_string(r.chart)
        << " chart, x0 = " << r.x0.get_str() << ", k = " << r.k << ", v = " << r.v << ")\n";
  out << "depth used: " << r.depth_used << '\n';
}

void print_checkpoints(const std::vector<counting::CountCheckpoint>& cps, const std::string& format,
                       std::ostream& out) {
  if (format == "json") {
    json j = json::array();
    for (const auto& c : cps) j.push_back({{"x", c.x}, {"L", c.Lx}, {"c", c.cx}});
    out << j.dump(2) << '\n';
    return;
  }
  out << "x,L,c\n";
  for (const auto& c : cps) out << c.x << ',' << c.Lx << ',' << std::setprecision(10) << c.cx << '\n';
}

counting::CountOptions count_options(const Config& c) {
  counting::CountOptions o;
  o.threads = std::max(1u, c.threads);
  if (!c.no_cache) o.cache_dir = counting::default_cache_dir();
  return o;
}

std::vector<counting::CountCheckpoint> run_count(const Config& c, const criterion::CriterionBundle& b) {
  std::vector<u64> cps = parse_list(c.checkpoints);
  const u64 xmax = c.xmax.empty() ? (cps.empty() ? 0 : cps.back()) : parse_count(c.xmax);
  if (xmax == 0) throw UsageError("--xmax or --checkpoints is required");
  if (cps.empty()) cps.push_back(xmax);
  std::sort(cps.begin(), cps.end());
  if (cps.back() > xmax) throw UsageError("checkpoints must not exceed --xmax");
  return counting::count_L(b, xmax, cps, count_options(c));
}

// One line per check; the first failure carries its counterexample.
struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

int report_checks(const std::string& suite, const std::vector<Check>& checks, const std::string& format,
                  std::ostream& out) {
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  if (format == "json") {
    json j{{"suite", suite}, {"pass", all}, {"checks", json::array()}};
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    out << j.dump(2) << '\n';
  } else {
    for (const auto& c : checks)
      out << (c.pass ? "pass " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    out << suite << ": " << (all ? "pass" : "FAIL") << '\n';
  }
  return all ? kOk : kVerificationFailed;
}

std::vector<Check> verify_filtration(const Config& c) {
  const Quartic f = polynomial(c);
  const u64 n = parse_count(c.n);
  const auto g = series::rho_coefficients(series::FrobenianMultiplicative::from_quartic(f), n);
  std::vector<Check> checks;
  for (int cls : {1, 3, 5, 7}) {
    const auto bad = series::filtration_mismatch_mod8(g, cls, n);
    checks.push_back({"mod 8 class " + std::to_string(cls) + ", n <= " + std::to_string(n), !bad,
                      bad ? "first mismatch at n = " + std::to_string(*bad) : ""});
  }
  std::vector<u64> rs = c.rs;
  if (rs.empty()) {
    const u64 d = static_cast<u64>(std::llabs(f.disc()));
    for (u64 p : arith::prime_divisors(d))
      if (p != 2) rs.push_back(p);
    if (rs.empty()) rs.push_back(3);
  }
  for (u64 r : rs) {
    for (int sign : {1, -1}) {
      const auto bad = series::filtration_mismatch_modr(g, r, sign, n);
      checks.push_back({"(n/" + std::to_string(r) + ") = " + symbol_string(sign) + ", n <= " + std::to_string(n),
                        !bad, bad ? "first mismatch at n = " + std::to_string(*bad) : ""});
    }
  }
  return checks;
}

std::vector<Check> verify_terms(const Config& c) {
  const Quartic f = polynomial(c);
  const u64 n = parse_count(c.n);
  const auto b = criterion::build_bundle(f);
  const auto fc = series::F_coefficients(b, n);
  const arith::PrimeTable table(std::max<u64>(n, 2));
  std::optional<u64> bad;
  for (u64 k = 1; k <= n && !bad; ++k) {
    const auto primes = arith::squarefree_factor(k, &table);
    const bool in_l =
        primes && criterion::is_els_criterion(b, k, *primes, [&](u64 r) { return quartic::has_root_mod_p(f, r); });
    if (fc[k] != (in_l ? 1 : 0)) bad = k;
  }
  return {{"F(s) = " + criterion::format_terms(b.terms) + ", n <= " + std::to_string(n), !bad,
           bad ? "coefficient " + fc[*bad].get_str() + " at n = " + std::to_string(*bad) : ""}};
}

std::vector<Check> verify_zeta(const Config& c) {
  std::vector<quartic::GaloisType> groups;
  if (c.group.empty())
    groups = {quartic::GaloisType::V4, quartic::GaloisType::C4, quartic::GaloisType::D4, quartic::GaloisType::A4,
              quartic::GaloisType::S4};
  else
    groups = {quartic::galois_type_from_string(c.group)};
  std::vector<Check> checks;
  for (auto g : groups) {
    for (auto t : quartic::kAllFactorizationTypes) {
      if (!quartic::realizable(t, g)) continue;
      const auto r = zeta::verify_identity(g, t);
      checks.push_back({quartic::to_string(g) + " " + quartic::to_string(t), r.holds,
                        "residual " + r.residual.to_display_string()});
    }
  }
  return checks;
}

std::vector<Check> verify_density(const Config& c) {
  const Quartic f = polynomial(c);
  const u64 bound = parse_count(c.bound);
  const auto g = quartic::classify_galois_checked(f);
  const auto r = counting::density_check(series::FrobenianMultiplicative::from_quartic(f), g, bound, c.tolerance,
                                         std::max(1u, c.threads));
  std::ostringstream detail;
  detail << "fraction " << std::setprecision(6) << r.fraction << ", target " << r.target.get_str() << " ("
         << quartic::to_string(g) << "), tolerance " << c.tolerance;
  return {{"prime density of roots, p <= " + std::to_string(bound), r.pass, detail.str()}};
}

std::vector<Check> verify_oracle(const Config& c) {
  const Quartic f = polynomial(c);
  const u64 qmax = parse_count(c.qmax);
  const auto b = criterion::build_bundle(f);
  u64 tested = 0;
  for (u64 q = 1; q <= qmax; ++q) {
    if (!arith::squarefree_factor(q)) continue;
    ++tested;
    const bool crit = criterion::is_els_criterion(b, q);
    const bool direct = localsolve::is_els_direct(f, static_cast<i64>(q));
    if (crit != direct)
      throw AgreementTripwire("criterion and direct solver disagree at q = " + std::to_string(q) +
                              " (criterion " + (crit ? "true" : "false") + ", direct " + (direct ? "true" : "false") +
                              ")");
  }
  return {{"criterion = direct solver for " + std::to_string(tested) + " square-free q <= " + std::to_string(qmax),
           true, ""}};
}

int dispatch(const std::string& cmd, const Config& c, std::ostream& out) {
  if (cmd == "analyze") {
    print_analyze(criterion::build_bundle(polynomial(c)), c.format, out);
    return kOk;
  }
  if (cmd == "local") {
    print_report(localsolve::local_report(polynomial(c), c.q, c.p), c.format, out);
    return kOk;
  }
  if (cmd == "els") {
    const Quartic f = polynomial(c);
    if (c.q < 1) throw UsageError("--q must be a positive square-free integer");
    if (!arith::squarefree_factor(static_cast<u64>(c.q)))
      throw UsageError("q = " + std::to_string(c.q) + " is not square-free");
    const bool crit = criterion::is_els_criterion(criterion::build_bundle(f), static_cast<u64>(c.q));
    const bool direct = localsolve::is_els_direct(f, c.q);
    if (c.format == "json")
      out << json{{"q", c.q}, {"els", crit}, {"criterion", crit}, {"direct", direct}}.dump(2) << '\n';
    else
      out << "criterion: " << (crit ? "true" : "false") << "\ndirect: " << (direct ? "true" : "false") << '\n';
    if (crit != direct) throw AgreementTripwire("criterion and direct solver disagree at q = " + std::to_string(c.q));
    return kOk;
  }
  if (cmd == "terms") {
    const auto b = criterion::build_bundle(polynomial(c));
    if (c.format == "json")
      out << criterion::to_json(b)["terms"].dump(2) << '\n';
    else
      out << "F(s) = " << criterion::format_terms(b.terms) << '\n';
    return kOk;
  }
  if (cmd == "count") {
    print_checkpoints(run_count(c, criterion::build_bundle(polynomial(c))), c.format, out);
    return kOk;
  }
  if (cmd == "fit") {
    const auto b = criterion::build_bundle(polynomial(c));
    const auto fit = counting::fit_cf(run_count(c, b), b.galois);
    std::optional<double> euler;
    if (!c.euler_bound.empty())
      euler = counting::euler_cf_truncated(series::FrobenianMultiplicative::from_quartic(b.f), fit.m_used,
                                           parse_count(c.euler_bound));
    if (c.format == "json") {
      json j{{"galois", quartic::to_string(b.galois)}, {"m", fit.m_used.get_str()}, {"cf_estimate", fit.cf_estimate},
             {"trend", fit.trend}, {"checkpoints", json::array()}};
      for (const auto& cp : fit.checkpoints) j["checkpoints"].push_back({{"x", cp.x}, {"L", cp.Lx}, {"c", cp.cx}});
      if (euler) j["euler_cf_truncated"] = *euler;
      out << j.dump(2) << '\n';
    } else {
      out << "galois: " << quartic::to_string(b.galois) << "\nm: " << fit.m_used.get_str() << '\n';
      print_checkpoints(fit.checkpoints, "csv", out);
      out << std::setprecision(10) << "cf_estimate: " << fit.cf_estimate << "\ntrend: " << fit.trend << '\n';
      if (euler) out << "euler_cf_truncated: " << *euler << '\n';
    }
    return kOk;
  }
  if (cmd == "verify") {
    std::vector<Check> checks;
    if (c.suite == "filtration")
      checks = verify_filtration(c);
    else if (c.suite == "terms")
      checks = verify_terms(c);
    else if (c.suite == "zeta")
      checks = verify_zeta(c);
    else if (c.suite == "density")
      checks = verify_density(c);
    else if (c.suite == "oracle")
      checks = verify_oracle(c);
    else
      throw UsageError("unknown suite \"" + c.suite + "\"");
    return report_checks(c.suite, checks, c.format, out);
  }
  throw UsageError("a subcommand is required");
}

}  // namespace

u64 parse_count(const std::string& text) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: \"" + text + "\"");
  }
  if (pos != text.size() || !(v >= 1) || v > 9007199254740992.0 || v != std::floor(v))
    throw UsageError("not a positive integer: \"" + text + "\"");
  return static_cast<u64>(v);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local solvability of quadratic twists q y^2 = f(x) of a quartic"};
  app.require_subcommand(1);
  Config c;

  auto add_poly = [&](CLI::App* s, bool positional) {
    if (positional) s->add_option("poly", c.poly, "a3 a2 a1 a0, or \"x^4+...\"");
    s->add_option("--f", c.f, "a3 a2 a1 a0")->expected(1, 4)->allow_extra_args();
  };
  auto add_format = [&](CLI::App* s, const std::string& def) {
    c.format = def;
    s->add_option("--format", c.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->default_str(def);
  };

  auto* analyze = app.add_subcommand("analyze", "criterion tables, condition sets and F(s) terms");
  add_poly(analyze, true);
  auto* local = app.add_subcommand("local", "solvability of H_q over Q_p");
  add_poly(local, true);
  local->add_option("--q", c.q, "square-free twist")->required();
  local->add_option("--p", c.p, "prime")->required();
  auto* els = app.add_subcommand("els", "ELS by criterion and by direct solver");
  add_poly(els, true);
  els->add_option("--q", c.q, "positive square-free twist")->required();
  auto* terms = app.add_subcommand("terms", "merged F(s) term list");
  add_poly(terms, true);
  auto* count = app.add_subcommand("count", "L(x) at checkpoints");
  auto* fit = app.add_subcommand("fit", "c(x) = L(x) (ln x)^m / x and its trend");
  for (auto* s : {count, fit}) {
    add_poly(s, true);
    s->add_option("--xmax", c.xmax, "largest q");
    s->add_option("--checkpoints", c.checkpoints, "comma-separated x values, e.g. 1e4,1e5");
    s->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    s->add_flag("--no-cache", c.no_cache, "do not read or write the root-flag cache");
  }
  fit->add_option("--euler-bound", c.euler_bound, "also report the Euler product truncated at this prime bound");
  auto* verify = app.add_subcommand("verify", "identity and consistency checks");
  add_poly(verify, true);
  verify->add_option("--suite", c.suite, "filtration, terms, zeta, density or oracle")
      ->required()
      ->check(CLI::IsMember({"filtration", "terms", "zeta", "density", "oracle"}));
  verify->add_option("--N", c.n, "coefficient bound");
  verify->add_option("--group", c.group, "V4, C4, D4, A4 or S4 (zeta suite)");
  verify->add_option("--bound", c.bound, "prime bound (density suite)");
  verify->add_option("--qmax", c.qmax, "largest q (oracle suite)");
  verify->add_option("--r", c.rs, "odd primes for the mod-r filtration")->delimiter(',');
  verify->add_option("--tolerance", c.tolerance, "density tolerance");
  verify->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);

  for (auto* s : {analyze, local, els, terms, verify}) add_format(s, "text");
  for (auto* s : {count, fit}) add_format(s, "csv");
  for (auto* s : {analyze, local, els, terms, count, fit, verify})
    s->add_option("--output", c.output, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) {
      err << "error: cannot write " << c.output << '\n';
      return kUsage;
    }
  }
  std::ostream& sink = c.output.empty() ? out : file;

  try {
    return dispatch(cmd, c, sink);
  } catch (const localsolve::DepthCapExceeded& e) {
    err << "tripwire: " << e.what() << '\n';
    return kTripwire;
  } catch (const quartic::ClassificationMismatch& e) {
    err << "tripwire: " << e.what() << '\n';
    return kTripwire;
  } catch (const AgreementTripwire& e) {
    err << "tripwire: " << e.what() << '\n';
    return kTripwire;
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage{"els"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace els::cli
