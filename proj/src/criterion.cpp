#include "els/criterion.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "els/characters.hpp"
#include "els/localsolve.hpp"

namespace els::criterion {

namespace {

// Representative in {1,-1,5,-5} of an odd residue class mod 8.
i64 unit_representative(int cls) {
  switch (cls) {
    case 1: return 1;
    case 3: return -5;
    case 5: return 5;
    case 7: return -1;
  }
  throw std::invalid_argument("unit_representative: class must be odd");
}

int symbol(u64 a, u64 p) { return arith::jacobi(static_cast<i64>(a % p), static_cast<i64>(p)); }

bool dividing_rule_holds(DividingRule rule, int cofactor_symbol) {
  switch (rule) {
    case DividingRule::unconstrained: return true;
    case DividingRule::cofactor_residue: return cofactor_symbol == 1;
    case DividingRule::cofactor_nonresidue: return cofactor_symbol == -1;
    case DividingRule::forbidden: return false;
  }
  return false;
}

template <class E>
E enum_from_string(const std::string& s, std::initializer_list<E> values) {
  for (E v : values)
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown rule \"" + s + "\"");
}

}  // namespace

std::string to_string(CoprimeRule r) { return r == CoprimeRule::unconstrained ? "unconstrained" : "residue_only"; }

std::string to_string(DividingRule r) {
  switch (r) {
    case DividingRule::unconstrained: return "unconstrained";
    case DividingRule::cofactor_residue: return "cofactor_residue";
    case DividingRule::cofactor_nonresidue: return "cofactor_nonresidue";
    case DividingRule::forbidden: return "forbidden";
  }
  return "?";
}

bool ConditionSet::contains(u64 q) const {
  if (q == 0 || q % bad_part != 0) return false;
  const u64 c = q / bad_part;
  if (c % 2 == 0 || static_cast<int>(c % 8) != mod8_class) return false;
  for (const auto& [p, s] : legendre) {
    if (c % p == 0) return false;
    if (s != 0 && symbol(c, p) != s) return false;
  }
  return true;
}

std::vector<u64> CriterionBundle::odd_bad_primes() const {
  std::vector<u64> ps;
  for (const auto& t : odd_tables) ps.push_back(t.p);
  return ps;
}

Mod8Table compute_mod8_table(const Quartic& f) {
  Mod8Table t;
  for (int cls : {1, 3, 5, 7}) {
    const i64 u = unit_representative(cls);
    if (localsolve::is_locally_solvable(f, u, 2)) t.odd_allowed.insert(cls);
    if (localsolve::is_locally_solvable(f, 2 * u, 2)) t.half_allowed.insert(cls);
  }
  return t;
}

OddBadPrimeTable odd_table_from_solvability(u64 p, u64 u, bool h_u, bool h_p, bool h_up) {
  OddBadPrimeTable t{p, u, h_u ? CoprimeRule::unconstrained : CoprimeRule::residue_only, DividingRule::forbidden};
  if (h_p && h_up)
    t.dividing_rule = DividingRule::unconstrained;
  else if (h_p)
    t.dividing_rule = DividingRule::cofactor_residue;
  else if (h_up)
    t.dividing_rule = DividingRule::cofactor_nonresidue;
  return t;
}

OddBadPrimeTable compute_odd_table(const Quartic& f, u64 p) {
  if (p % 2 == 0 || !arith::is_prime(p)) throw std::invalid_argument("compute_odd_table: p must be an odd prime");
  if (f.disc() % static_cast<i64>(p) != 0) throw std::invalid_argument("compute_odd_table: p must divide disc(f)");
  const u64 u = arith::least_nonresidue(p);
  const auto sp = static_cast<i64>(p);
  const auto su = static_cast<i64>(u);
  return odd_table_from_solvability(p, u, localsolve::is_locally_solvable(f, su, p),
                                    localsolve::is_locally_solvable(f, sp, p),
                                    localsolve::is_locally_solvable(f, su * sp, p));
}

bool satisfies_congruences(const Mod8Table& mod8, std::span<const OddBadPrimeTable> odd_tables, u64 q) {
  if (q % 2 == 1) {
    if (!mod8.odd_allowed.contains(static_cast<int>(q % 8))) return false;
  } else if (!mod8.half_allowed.contains(static_cast<int>((q / 2) % 8))) {
    return false;
  }
  for (const auto& t : odd_tables) {
    if (q % t.p != 0) {
      if (t.coprime_rule == CoprimeRule::residue_only && symbol(q, t.p) != 1) return false;
    } else if (!dividing_rule_holds(t.dividing_rule, symbol(q / t.p, t.p))) {
      return false;
    }
  }
  return true;
}

std::vector<ConditionSet> condition_sets(const Mod8Table& mod8, std::span<const OddBadPrimeTable> odd_tables) {
  std::vector<ConditionSet> out;
  const std::size_t l = odd_tables.size();
  // Bit 0 of `subset` selects 2, bit j+1 selects the j-th odd bad prime.
  for (u64 subset = 0; subset < (u64{1} << (l + 1)); ++subset) {
    u64 m = (subset & 1) ? 2 : 1;
    bool forbidden = false;
    for (std::size_t j = 0; j < l; ++j) {
      if (!(subset >> (j + 1) & 1)) continue;
      m *= odd_tables[j].p;
      if (odd_tables[j].dividing_rule == DividingRule::forbidden) forbidden = true;
    }
    if (forbidden) continue;
    for (int cls : {1, 3, 5, 7}) {
      // q = m c; test the mod-8 rule on q or q/2.
      if (subset & 1) {
        if (!mod8.half_allowed.contains(static_cast<int>((m / 2 * cls) % 8))) continue;
      } else if (!mod8.odd_allowed.contains(static_cast<int>((m * cls) % 8))) {
        continue;
      }
      for (u64 pattern = 0; pattern < (u64{1} << l); ++pattern) {
        ConditionSet cell{m, cls, {}};
        bool ok = true;
        for (std::size_t j = 0; j < l && ok; ++j) {
          const auto& t = odd_tables[j];
          const int s = (pattern >> j & 1) ? -1 : 1;
          cell.legendre[t.p] = s;
          if (subset >> (j + 1) & 1) {
            ok = dividing_rule_holds(t.dividing_rule, symbol(m / t.p, t.p) * s);
          } else if (t.coprime_rule == CoprimeRule::residue_only) {
            ok = symbol(m, t.p) * s == 1;
          }
        }
        if (ok) out.push_back(std::move(cell));
      }
    }
  }
  return out;
}

std::vector<ConditionSet> condition_sets(const CriterionBundle& bundle) {
  return condition_sets(bundle.mod8, bundle.odd_tables);
}

std::vector<TwistTerm> raw_F_terms(std::span<const ConditionSet> sets, std::span<const u64> odd_bad_primes) {
  const std::size_t l = odd_bad_primes.size();
  mpq_class scale(1, 1L << (l + 2));
  scale.canonicalize();
  std::vector<TwistTerm> out;
  for (const auto& cell : sets) {
    for (int i = 1; i <= 4; ++i) {
      for (u64 subset = 0; subset < (u64{1} << l); ++subset) {
        int sign = series::chi_value(i, cell.mod8_class);
        std::vector<u64> psis;
        for (std::size_t j = 0; j < l; ++j) {
          if (!(subset >> j & 1)) continue;
          const u64 r = odd_bad_primes[j];
          const auto it = cell.legendre.find(r);
          if (it == cell.legendre.end() || it->second == 0)
            throw std::invalid_argument("raw_F_terms: cell leaves the symbol at " + std::to_string(r) + " free");
          sign *= it->second;
          psis.push_back(r);
        }
        out.push_back({scale * sign, i, std::move(psis), cell.bad_part});
      }
    }
  }
  return out;
}

std::vector<TwistTerm> merge_terms(std::vector<TwistTerm> terms) {
  std::map<std::tuple<u64, int, std::vector<u64>>, mpq_class> acc;
  for (auto& t : terms) acc[{t.prefactor, t.chi, t.psis}] += t.coeff;
  std::vector<TwistTerm> out;
  for (auto& [key, c] : acc) {
    if (c == 0) continue;
    out.push_back({c, std::get<1>(key), std::get<2>(key), std::get<0>(key)});
  }
  return out;
}

std::vector<TwistTerm> expand_F_terms(std::span<const ConditionSet> sets, std::span<const u64> odd_bad_primes) {
  return merge_terms(raw_F_terms(sets, odd_bad_primes));
}

std::vector<TwistTerm> expand_F_terms(const CriterionBundle& bundle) {
  const auto primes = bundle.odd_bad_primes();
  return expand_F_terms(bundle.sets, primes);
}

CriterionBundle build_bundle(const Quartic& f) {
  const GaloisType g = quartic::classify_galois_checked(f);
  CriterionBundle b{f, g, compute_mod8_table(f), {}, {}, {}};
  const u64 disc = static_cast<u64>(f.disc() < 0 ? -f.disc() : f.disc());
  for (u64 p : arith::prime_divisors(disc))
    if (p != 2) b.odd_tables.push_back(compute_odd_table(f, p));
  b.sets = condition_sets(b);
  b.terms = expand_F_terms(b);
  return b;
}

bool is_els_criterion(const CriterionBundle& b, u64 q) {
  if (q == 0) throw std::invalid_argument("is_els_criterion: q must be positive");
  const auto primes = arith::squarefree_factor(q);
  if (!primes) throw std::invalid_argument("is_els_criterion: q = " + std::to_string(q) + " is not square-free");
  return is_els_criterion(b, q, *primes, [&](u64 r) { return quartic::has_root_mod_p(b.f, r); });
}

std::string format_terms(std::span<const TwistTerm> terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    const bool neg = t.coeff < 0;
    const mpq_class mag = abs(t.coeff);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (mag != 1) os << "(" << mag.get_str() << ") ";
    if (t.prefactor != 1) os << t.prefactor << "^-s ";
    os << "g";
    std::vector<std::string> chars;
    if (t.chi != 1) chars.push_back("chi_" + std::to_string(t.chi));
    for (u64 r : t.psis) chars.push_back("psi_" + std::to_string(r));
    if (!chars.empty()) {
      os << "^{";
      for (std::size_t i = 0; i < chars.size(); ++i) os << (i ? " " : "") << chars[i];
      os << "}";
    }
  }
  return os.str();
}

nlohmann::json to_json(const CriterionBundle& b) {
  using nlohmann::json;
  json j;
  j["f"] = {b.f.a3(), b.f.a2(), b.f.a1(), b.f.a0()};
  j["polynomial"] = b.f.to_string();
  j["disc"] = b.f.disc();
  j["galois"] = quartic::to_string(b.galois);
  j["mod8"] = {{"odd", std::vector<int>(b.mod8.odd_allowed.begin(), b.mod8.odd_allowed.end())},
               {"half", std::vector<int>(b.mod8.half_allowed.begin(), b.mod8.half_allowed.end())}};
  j["odd_tables"] = json::array();
  for (const auto& t : b.odd_tables)
    j["odd_tables"].push_back(
        {{"p", t.p}, {"u", t.u}, {"coprime_rule", to_string(t.coprime_rule)}, {"dividing_rule", to_string(t.dividing_rule)}});
  j["sets"] = json::array();
  for (const auto& s : b.sets) {
    json leg = json::array();
    for (const auto& [p, v] : s.legendre) leg.push_back({{"p", p}, {"symbol", v}});
    j["sets"].push_back({{"bad_part", s.bad_part}, {"mod8_class", s.mod8_class}, {"legendre", leg}});
  }
  j["terms"] = json::array();
  for (const auto& t : b.terms) {
    const mpz_class num = t.coeff.get_num(), den = t.coeff.get_den();
    j["terms"].push_back({{"sign_num", num.get_si()},
                          {"sign_den", den.get_si()},
                          {"chi", t.chi},
                          {"psis", t.psis},
                          {"prefactor", t.prefactor}});
  }
  return j;
}

CriterionBundle bundle_from_json(const nlohmann::json& j) {
  const auto fc = j.at("f").get<std::vector<i64>>();
  if (fc.size() != 4) throw std::invalid_argument("bundle json: f must hold four coefficients");
  Quartic f(fc[0], fc[1], fc[2], fc[3]);
  if (j.at("disc").get<i64>() != f.disc()) throw std::invalid_argument("bundle json: disc does not match f");
  CriterionBundle b{f, quartic::galois_type_from_string(j.at("galois").get<std::string>()), {}, {}, {}, {}};
  for (int v : j.at("mod8").at("odd").get<std::vector<int>>()) b.mod8.odd_allowed.insert(v);
  for (int v : j.at("mod8").at("half").get<std::vector<int>>()) b.mod8.half_allowed.insert(v);
  for (const auto& t : j.at("odd_tables")) {
    b.odd_tables.push_back(
        {t.at("p").get<u64>(), t.at("u").get<u64>(),
         enum_from_string(t.at("coprime_rule").get<std::string>(),
                          {CoprimeRule::unconstrained, CoprimeRule::residue_only}),
         enum_from_string(t.at("dividing_rule").get<std::string>(),
                          {DividingRule::unconstrained, DividingRule::cofactor_residue,
                           DividingRule::cofactor_nonresidue, DividingRule::forbidden})});
  }
  for (const auto& s : j.at("sets")) {
    ConditionSet c{s.at("bad_part").get<u64>(), s.at("mod8_class").get<int>(), {}};
    for (const auto& l : s.at("legendre")) c.legendre[l.at("p").get<u64>()] = l.at("symbol").get<int>();
    b.sets.push_back(std::move(c));
  }
  for (const auto& t : j.at("terms")) {
    mpq_class coeff(t.at("sign_num").get<long>(), t.at("sign_den").get<long>());
    coeff.canonicalize();
    b.terms.push_back({coeff, t.at("chi").get<int>(), t.at("psis").get<std::vector<u64>>(), t.at("prefactor").get<u64>()});
  }
  return b;
}

}  // namespace els::criterion
