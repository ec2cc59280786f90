#include "els/zeta.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace els::zeta {

namespace {

std::string power_term(const std::string& base, int e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

std::string t_power(int a) { return a == 1 ? "t" : "t^" + std::to_string(a); }

}  // namespace

LocalFactor LocalFactor::one_minus(int a, int e) {
  if (a < 1) throw std::invalid_argument("LocalFactor: degree must be positive");
  LocalFactor f;
  f.add(a, e);
  return f;
}

LocalFactor LocalFactor::one_plus(int a, int e) {
  if (a < 1) throw std::invalid_argument("LocalFactor: degree must be positive");
  LocalFactor f;
  f.add(2 * a, e);
  f.add(a, -e);
  return f;
}

void LocalFactor::add(int a, int e) {
  if (e == 0) return;
  if ((factors_[a] += e) == 0) factors_.erase(a);
}

int LocalFactor::exponent(int a) const {
  const auto it = factors_.find(a);
  return it == factors_.end() ? 0 : it->second;
}

LocalFactor LocalFactor::operator*(const LocalFactor& o) const {
  LocalFactor r = *this;
  for (const auto& [a, e] : o.factors_) r.add(a, e);
  return r;
}

LocalFactor LocalFactor::operator/(const LocalFactor& o) const { return *this * o.pow(-1); }

LocalFactor LocalFactor::pow(int e) const {
  LocalFactor r;
  for (const auto& [a, x] : factors_) r.add(a, x * e);
  return r;
}

std::vector<mpz_class> LocalFactor::series(int order) const {
  std::vector<mpz_class> c(order + 1);
  c[0] = 1;
  for (const auto& [a, e] : factors_) {
    if (a > order) continue;
    // multiply by (1 - t^a) |e| times, or divide by it
    for (int rep = 0; rep < std::abs(e); ++rep) {
      if (e > 0) {
        for (int n = order; n >= a; --n) c[n] -= c[n - a];
      } else {
        for (int n = a; n <= order; ++n) c[n] += c[n - a];
      }
    }
  }
  return c;
}

std::string LocalFactor::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [a, e] : factors_) {
    if (!s.empty()) s += " ";
    s += power_term("(1 - " + t_power(a) + ")", e);
  }
  return s;
}

std::string LocalFactor::to_display_string() const {
  std::map<int, int> minus = factors_;
  std::map<int, int> plus;
  for (auto it = minus.begin(); it != minus.end(); ++it) {
    const int a = it->first;
    const auto up = minus.find(2 * a);
    if (it->second == 0 || up == minus.end()) continue;
    const int ea = it->second, e2 = up->second;
    if ((ea < 0) == (e2 < 0)) continue;
    // (1 + t^a)^k = (1 - t^{2a})^k (1 - t^a)^{-k}
    const int k = ea < 0 ? std::min(-ea, e2) : -std::min(ea, -e2);
    plus[a] += k;
    it->second += k;
    up->second -= k;
  }
  std::string s;
  for (const auto& [a, e] : plus) {
    if (e == 0) continue;
    if (!s.empty()) s += " ";
    s += power_term("(1 + " + t_power(a) + ")", e);
  }
  for (const auto& [a, e] : minus) {
    if (e == 0) continue;
    if (!s.empty()) s += " ";
    s += power_term("(1 - " + t_power(a) + ")", e);
  }
  return s.empty() ? "1" : s;
}

LocalFactor dedekind_local(const Partition& parts) {
  LocalFactor f;
  for (int d : parts) f = f * LocalFactor::one_minus(d, -1);
  return f;
}

LocalFactor ratio_local(const Partition& parts) {
  LocalFactor f;
  for (int d : parts) f = f * LocalFactor::one_plus(d);
  return f;
}

Splitting splitting_in_fields(FactorizationType t, GaloisType g) {
  if (!quartic::realizable(t, g))
    throw std::invalid_argument("type " + quartic::to_string(t) + " does not occur in " + quartic::to_string(g));
  Splitting s{quartic::parts(t), quartic::frobenius_order_type(t, g), std::nullopt};
  if (g == GaloisType::S4) {
    for (const auto& sigma : quartic::group_elements(g).elements) {
      if (quartic::cycle_type(sigma) == t) {
        s.l3 = quartic::coset_orbit_type(sigma);
        break;
      }
    }
  }
  return s;
}

std::string ZetaCase::to_string() const {
  std::ostringstream os;
  os << "g^" << g_exp << " ~ (zeta_K/zeta_K(2s))^" << k_exp;
  if (l_exp != 0) os << " (zeta_L/zeta_L(2s))^" << l_exp;
  if (l3_exp != 0) os << " (zeta_L3/zeta_L3(2s))^" << l3_exp;
  return os.str();
}

ZetaCase zeta_case(GaloisType g) {
  switch (g) {
    case GaloisType::V4: return {g, 4, 1, 0, 0};
    case GaloisType::C4: return {g, 4, 1, 0, 0};
    case GaloisType::D4: return {g, 8, 4, -1, 0};
    case GaloisType::A4: return {g, 4, 4, -1, 0};
    case GaloisType::S4: return {g, 24, 12, -3, 6};
  }
  throw std::invalid_argument("zeta_case: unknown group");
}

IdentityCheck verify_identity(const ZetaCase& c, FactorizationType t) {
  const Splitting s = splitting_in_fields(t, c.galois);
  IdentityCheck r;
  r.lhs = quartic::has_linear_factor(t) ? LocalFactor::one_plus(1, c.g_exp) : LocalFactor();
  r.rhs = ratio_local(s.k).pow(c.k_exp) * ratio_local(s.l).pow(c.l_exp);
  if (c.l3_exp != 0) {
    if (!s.l3) throw std::invalid_argument("verify_identity: L3 factor needs an S4 case");
    r.rhs = r.rhs * ratio_local(*s.l3).pow(c.l3_exp);
  }
  r.residual = r.rhs / r.lhs;
  r.holds = r.residual.exponent(1) == 0;
  return r;
}

IdentityCheck verify_identity(GaloisType g, FactorizationType t) { return verify_identity(zeta_case(g), t); }

std::vector<mpz_class> series_quotient(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  if (b.empty() || b[0] != 1) throw std::invalid_argument("series_quotient: divisor must start with 1");
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<mpz_class> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    mpz_class v = a[k];
    for (std::size_t j = 1; j <= k; ++j) v -= b[j] * q[k - j];
    q[k] = v;
  }
  return q;
}

}  // namespace els::zeta
