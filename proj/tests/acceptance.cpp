#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "els/cli.hpp"
#include "els/counting.hpp"
#include "els/criterion.hpp"
#include "els/localsolve.hpp"
#include "els/series.hpp"
#include "els/zeta.hpp"
#include "oracles.hpp"

using els::arith::i64;
using els::arith::u64;
using els::quartic::GaloisType;
using els::quartic::Quartic;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int tripwires = 0;
std::vector<std::string> tripwire_log;

void record_tripwire(const std::string& what) {
  ++tripwires;
  tripwire_log.push_back(what);
}

Quartic corpus(int i) {
  const auto& a = oracle::kCorpus[i].a;
  return Quartic(a[0], a[1], a[2], a[3]);
}

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const els::localsolve::DepthCapExceeded& e) {
    record_tripwire(std::string("depth cap: ") + e.what());
    return {false, std::string("depth cap: ") + e.what()};
  } catch (const els::quartic::ClassificationMismatch& e) {
    record_tripwire(std::string("classification: ") + e.what());
    return {false, std::string("classification: ") + e.what()};
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

Outcome local_facts() {
  const Quartic f(0, 0, -1, 1);
  int wrong = 0;
  for (i64 q : {1, 2, 229}) wrong += !els::localsolve::is_locally_solvable(f, q, 229);
  wrong += els::localsolve::is_locally_solvable(f, 458, 229);
  for (i64 q : {1, -1, 5, -5}) wrong += !els::localsolve::is_locally_solvable(f, q, 2);
  for (i64 q : {2, -2, 10, -10}) wrong += els::localsolve::is_locally_solvable(f, q, 2);
  return {wrong == 0, std::to_string(12 - wrong) + "/12 local facts"};
}

Outcome criterion_oracle() {
  u64 checked = 0;
  for (int i = 0; i < 5; ++i) {
    const auto b = els::criterion::build_bundle(corpus(i));
    for (u64 q = 1; q <= 2000; ++q) {
      if (!oracle::squarefree_slow(q)) continue;
      const bool crit = els::criterion::is_els_criterion(b, q);
      const bool direct = els::localsolve::is_els_direct(corpus(i), static_cast<i64>(q));
      if (crit != direct) {
        record_tripwire(std::string("disagreement: ") + oracle::kCorpus[i].name + " q = " + std::to_string(q));
        return {false, std::string(oracle::kCorpus[i].name) + " disagrees at q = " + std::to_string(q)};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " (f, q) pairs agree"};
}

Outcome m_table() {
  const std::map<GaloisType, mpq_class> mean = {{GaloisType::V4, mpq_class(1, 4)},
                                                {GaloisType::C4, mpq_class(1, 4)},
                                                {GaloisType::D4, mpq_class(3, 8)},
                                                {GaloisType::A4, mpq_class(3, 4)},
                                                {GaloisType::S4, mpq_class(5, 8)}};
  const std::map<GaloisType, mpq_class> m = {{GaloisType::V4, mpq_class(3, 4)},
                                             {GaloisType::C4, mpq_class(3, 4)},
                                             {GaloisType::D4, mpq_class(5, 8)},
                                             {GaloisType::A4, mpq_class(1, 4)},
                                             {GaloisType::S4, mpq_class(3, 8)}};
  std::ostringstream os;
  bool ok = true;
  for (auto g : els::quartic::kAllGaloisTypes) {
    const auto mr = els::quartic::mean_rho(g);
    const auto me = els::counting::m_exponent(g);
    ok = ok && mr == mean.at(g) && me == m.at(g);
    os << els::quartic::to_string(g) << " mean " << mr.get_str() << " m " << me.get_str() << "; ";
  }
  return {ok, os.str()};
}

Outcome series_expansion() {
  const u64 n = 100000;
  const auto b = els::criterion::build_bundle(corpus(0));
  const auto fc = els::series::F_coefficients(b, n);
  const auto g = els::series::rho_coefficients(els::series::FrobenianMultiplicative::from_quartic(b.f), n);
  for (u64 k = 1; k <= n; ++k) {
    mpq_class expect = g[k];
    if (k % 229 == 0) {
      const u64 m = k / 229;
      expect += mpq_class(1, 2) * g[m] * (1 + els::series::psi_value(229, static_cast<i64>(m)));
    }
    if (fc[k] != expect) return {false, "mismatch at n = " + std::to_string(k)};
  }
  return {true, "F = g + (1/2) 229^-s g + (1/2) 229^-s g^{psi_229} for n <= 100000"};
}

Outcome filtrations() {
  const u64 n = 100000;
  const auto g = els::series::rho_coefficients(els::series::FrobenianMultiplicative::from_quartic(corpus(0)), n);
  for (int c : {1, 3, 5, 7})
    if (auto bad = els::series::filtration_mismatch_mod8(g, c, n))
      return {false, "mod 8 class " + std::to_string(c) + " fails at n = " + std::to_string(*bad)};
  for (u64 r : {229ull, 5ull})
    for (int s : {1, -1})
      if (auto bad = els::series::filtration_mismatch_modr(g, r, s, n))
        return {false, "r = " + std::to_string(r) + " sign " + std::to_string(s) + " fails at n = " + std::to_string(*bad)};
  return {true, "4 classes mod 8, r in {229, 5} with both signs, n <= 100000"};
}

Outcome zeta_identities() {
  int pairs = 0;
  for (auto g : els::quartic::kAllGaloisTypes)
    for (auto t : els::quartic::kAllFactorizationTypes) {
      if (!els::quartic::realizable(t, g)) continue;
      const auto r = els::zeta::verify_identity(g, t);
      if (!r.holds || r.residual.exponent(1) != 0)
        return {false, els::quartic::to_string(g) + " " + els::quartic::to_string(t) + " residual " +
                           r.residual.to_display_string()};
      ++pairs;
    }
  return {true, std::to_string(pairs) + " (group, type) pairs"};
}

Outcome density() {
  std::ostringstream os;
  bool ok = true;
  for (int i = 0; i < 5; ++i) {
    const auto g = els::quartic::galois_type_from_string(oracle::kCorpus[i].galois);
    const auto r = els::counting::density_check(els::series::FrobenianMultiplicative::from_quartic(corpus(i)), g,
                                                1000000, 0.01, threads());
    ok = ok && r.pass;
    os << oracle::kCorpus[i].galois << " " << r.fraction << " ";
  }
  return {ok, os.str()};
}

Outcome asymptotics() {
  std::ostringstream os;
  bool ok = true;
  const els::counting::CountOptions opts{threads(), els::counting::default_cache_dir()};
  for (int i = 0; i < 5; ++i) {
    const auto b = els::criterion::build_bundle(corpus(i));
    const auto cps = els::counting::count_L(b, 10000000, {10000, 100000, 1000000, 10000000}, opts);
    const auto fit = els::counting::fit_cf(cps, b.galois);
    bool positive = true;
    for (const auto& c : fit.checkpoints) positive = positive && c.cx > 0;
    ok = ok && positive && std::abs(fit.trend) < 0.25;
    os << oracle::kCorpus[i].galois << " c=" << fit.cf_estimate << " trend=" << fit.trend << " ";
  }
  return {ok, os.str()};
}

Outcome no_tripwires() {
  // the command-line paths, which map tripwires to exit code 3
  int exit3 = 0, runs = 0;
  for (const auto& c : oracle::kCorpus) {
    std::vector<std::string> poly;
    for (auto v : c.a) poly.push_back(std::to_string(v));
    std::vector<std::vector<std::string>> calls;
    calls.push_back({"analyze"});
    calls.push_back({"verify", "--suite", "oracle", "--qmax", "500"});
    for (u64 q = 1; q <= 60; ++q)
      if (oracle::squarefree_slow(q)) calls.push_back({"els", "--q", std::to_string(q)});
    for (auto args : calls) {
      args.insert(args.begin() + 1, poly.begin(), poly.end());
      std::ostringstream out, err;
      const int code = els::cli::run(args, out, err);
      ++runs;
      if (code == els::cli::kTripwire) {
        ++exit3;
        record_tripwire(std::string("exit 3: ") + c.name + " " + args[0] + " " + err.str());
      }
    }
  }
  std::ostringstream os;
  os << tripwires << " tripwire events, " << exit3 << " exit-3 results in " << runs << " command runs";
  return {tripwires == 0, os.str()};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    std::function<Outcome()> run;
    double max_seconds;
  };
  const std::vector<Entry> entries = {
      {1, local_facts, 10},   {2, criterion_oracle, 600}, {3, m_table, 0},    {4, series_expansion, 0},
      {5, filtrations, 0},    {6, zeta_identities, 1},    {7, density, 120},  {8, asymptotics, 900},
      {9, no_tripwires, 0},
  };
  int failures = 0;
  for (const auto& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = guarded(e.run);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (e.max_seconds > 0 && secs > e.max_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(e.max_seconds)) + " s budget)";
    }
    failures += !o.pass;
    std::cout << "criterion " << e.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  [" << secs
              << " s]" << std::endl;
  }
  for (const auto& t : tripwire_log) std::cout << "  tripwire: " << t << "\n";
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
