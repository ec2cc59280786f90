#include "els/localsolve.hpp"

#include <algorithm>
#include <cstdlib>

namespace els::localsolve {

namespace {

void require_squarefree_nonzero(i64 q) {
  if (q == 0) throw std::invalid_argument("twist parameter q must be nonzero");
  const u64 m = q < 0 ? static_cast<u64>(-(q + 1)) + 1 : static_cast<u64>(q);
  if (!arith::squarefree_factor(m)) throw std::invalid_argument("q = " + std::to_string(q) + " is not square-free");
}

}  // namespace

std::string to_string(WitnessKind w) {
  switch (w) {
    case WitnessKind::none: return "none";
    case WitnessKind::square_value: return "square_value";
    case WitnessKind::hensel_root: return "hensel_root";
    case WitnessKind::point_at_infinity: return "point_at_infinity";
  }
  return "?";
}

std::string to_string(Chart c) { return c == Chart::affine ? "affine" : "infinity"; }

IntPoly scaled(const std::array<i64, 5>& coeffs, i64 q) {
  IntPoly h;
  for (i64 c : coeffs) h.push_back(mpz_class(static_cast<long>(c)) * static_cast<long>(q));
  return h;
}

mpz_class evaluate(const IntPoly& h, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = h.rbegin(); it != h.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly derivative(const IntPoly& h) {
  IntPoly d;
  for (std::size_t i = 1; i < h.size(); ++i) d.push_back(h[i] * static_cast<unsigned long>(i));
  if (d.empty()) d.push_back(0);
  return d;
}

SolvabilityReport zp_square_value_exists(const IntPoly& h, u64 p, const std::vector<u64>& initial, int cap) {
  if (!arith::is_prime(p)) throw std::invalid_argument("zp_square_value_exists: p must be prime");
  const int margin = p == 2 ? 3 : 1;
  const mpz_class pz(static_cast<unsigned long>(p));

  // h = p^e h1 with h1 primitive at p. The square class of h is constant on
  // x0 + p^k Z_p once v(h1(x0)) <= k - margin, and roots of h1 are roots of h.
  int e = -1;
  for (const auto& c : h)
    if (c != 0) e = e < 0 ? arith::valuation(c, p) : std::min(e, arith::valuation(c, p));
  if (e < 0) throw ZeroValue("zero polynomial");
  mpz_class pe;
  mpz_pow_ui(pe.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(e));
  IntPoly h1;
  for (const auto& c : h) h1.push_back(c / pe);
  const IntPoly dh1 = derivative(h1);

  SolvabilityReport report;
  std::vector<ResidueClass> stack;
  std::vector<u64> roots(initial);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    if (*it >= p) throw std::invalid_argument("zp_square_value_exists: initial residue out of range");
    stack.push_back({p, 1, mpz_class(static_cast<unsigned long>(*it))});
  }

  while (!stack.empty()) {
    ResidueClass cls = std::move(stack.back());
    stack.pop_back();
    report.depth_used = std::max(report.depth_used, cls.k);

    const mpz_class t = evaluate(h1, cls.x0);
    if (t == 0) throw ZeroValue("polynomial vanishes at x = " + cls.x0.get_str());
    const int v1 = arith::valuation(t, p);

    if (v1 <= cls.k - margin) {
      const int v = v1 + e;
      if (v % 2 == 0 && arith::is_padic_square(mpz_class(t * pe), p)) {
        report.solvable = true;
        report.witness = WitnessKind::square_value;
        report.x0 = cls.x0;
        report.k = cls.k;
        report.v = v;
        return report;
      }
      continue;
    }

    const mpz_class dt = evaluate(dh1, cls.x0);
    if (dt != 0 && v1 > 2 * arith::valuation(dt, p)) {
      report.solvable = true;
      report.witness = WitnessKind::hensel_root;
      report.x0 = cls.x0;
      report.k = cls.k;
      report.v = v1 + e;
      return report;
    }

    if (cls.k + 1 > cap)
      throw DepthCapExceeded("residue-class search exceeded depth cap " + std::to_string(cap) + " at p = " +
                             std::to_string(p) + ", x0 = " + cls.x0.get_str());
    mpz_class step;
    mpz_pow_ui(step.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(cls.k));
    for (u64 j = p; j-- > 0;) {
      stack.push_back({p, cls.k + 1, cls.x0 + step * static_cast<unsigned long>(j)});
    }
  }
  return report;
}

int depth_cap(const Quartic& f, i64 q, u64 p) {
  const mpz_class q6 = [&] {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), mpz_class(static_cast<long>(q)).get_mpz_t(), 6);
    return r;
  }();
  return arith::valuation(q6 * mpz_class(static_cast<long>(f.disc())), p) + 10;
}

SolvabilityReport local_report(const Quartic& f, i64 q, u64 p) {
  require_squarefree_nonzero(q);
  if (!arith::is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  const int cap = depth_cap(f, q, p);

  std::vector<u64> all(p);
  for (u64 r = 0; r < p; ++r) all[r] = r;
  SolvabilityReport affine = zp_square_value_exists(scaled(f.coeffs(), q), p, all, cap);
  if (affine.solvable) return affine;

  SolvabilityReport inf = zp_square_value_exists(scaled(f.reversed_coeffs(), q), p, {0}, cap);
  inf.depth_used = std::max(inf.depth_used, affine.depth_used);
  if (inf.solvable) {
    inf.chart = Chart::infinity;
    if (inf.witness == WitnessKind::square_value && inf.x0 == 0) inf.witness = WitnessKind::point_at_infinity;
  }
  return inf;
}

bool is_locally_solvable(const Quartic& f, i64 q, u64 p) { return local_report(f, q, p).solvable; }

bool real_solvable(const Quartic&, i64 q) {
  if (q <= 0) throw std::invalid_argument("real_solvable: only positive twists are supported");
  return true;
}

std::vector<u64> bad_primes(const Quartic& f, i64 q) {
  std::vector<u64> ps{2};
  const u64 qa = static_cast<u64>(std::llabs(q));
  const u64 da = static_cast<u64>(std::llabs(f.disc()));
  for (u64 p : arith::prime_divisors(qa)) ps.push_back(p);
  for (u64 p : arith::prime_divisors(da)) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

bool is_els_direct(const Quartic& f, i64 q) {
  require_squarefree_nonzero(q);
  if (!real_solvable(f, q)) return false;
  for (u64 p : bad_primes(f, q))
    if (!is_locally_solvable(f, q, p)) return false;
  return true;
}

nlohmann::json to_json(const SolvabilityReport& r) {
  nlohmann::json j;
  j["solvable"] = r.solvable;
  if (r.witness == WitnessKind::none) {
    j["witness"] = nullptr;
  } else {
    j["witness"] = {{"kind", to_string(r.witness)},
                    {"chart", to_string(r.chart)},
                    {"x0", r.x0.get_str()},
                    {"k", r.k},
                    {"v", r.v}};
  }
  j["depth_used"] = r.depth_used;
  return j;
}

SolvabilityReport report_from_json(const nlohmann::json& j) {
  SolvabilityReport r;
  r.solvable = j.at("solvable").get<bool>();
  r.depth_used = j.at("depth_used").get<int>();
  const auto& w = j.at("witness");
  if (!w.is_null()) {
    const auto kind = w.at("kind").get<std::string>();
    for (auto k : {WitnessKind::square_value, WitnessKind::hensel_root, WitnessKind::point_at_infinity})
      if (to_string(k) == kind) r.witness = k;
    if (r.witness == WitnessKind::none) throw std::invalid_argument("unknown witness kind " + kind);
    r.chart = w.at("chart").get<std::string>() == "infinity" ? Chart::infinity : Chart::affine;
    r.x0 = mpz_class(w.at("x0").get<std::string>());
    r.k = w.at("k").get<int>();
    r.v = w.at("v").get<int>();
  }
  return r;
}

}  // namespace els::localsolve
