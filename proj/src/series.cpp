#include "els/series.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace els::series {

int CharacterProduct::value(u64 n) const {
  int v = chi_value(chi, static_cast<i64>(n % 8));
  for (u64 r : psis) {
    if (v == 0) break;
    v *= psi_value(r, static_cast<i64>(n % r));
  }
  return v;
}

std::string CharacterProduct::name() const {
  std::string s;
  if (chi != 1) s += "chi_" + std::to_string(chi);
  for (u64 r : psis) s += (s.empty() ? "" : " ") + ("psi_" + std::to_string(r));
  return s.empty() ? "chi_1" : s;
}

FrobenianMultiplicative FrobenianMultiplicative::from_quartic(const quartic::Quartic& f) {
  FrobenianMultiplicative rho;
  const u64 d = static_cast<u64>(f.disc() < 0 ? -f.disc() : f.disc());
  rho.exceptional_.insert(2);
  for (u64 p : arith::prime_divisors(d)) rho.exceptional_.insert(p);
  rho.f_ = f;
  rho.rule_ = [f](u64 p) { return quartic::has_root_mod_p(f, p); };
  return rho;
}

FrobenianMultiplicative FrobenianMultiplicative::from_rule(std::set<u64> exceptional, std::function<bool(u64)> rule) {
  FrobenianMultiplicative rho;
  rho.exceptional_ = std::move(exceptional);
  rho.rule_ = std::move(rule);
  return rho;
}

bool FrobenianMultiplicative::at_prime(u64 p) const { return !exceptional_.contains(p) && rule_(p); }

std::vector<std::uint8_t> FrobenianMultiplicative::prime_flags(const arith::PrimeTable& table, u64 bound,
                                                               unsigned threads) const {
  if (bound > table.limit()) throw std::out_of_range("prime_flags: bound exceeds the prime table");
  const auto primes = table.primes(bound);
  std::vector<std::uint8_t> flags(bound + 1, 0);
  threads = std::max(1u, threads);
  const std::size_t chunk = (primes.size() + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk, hi = std::min(primes.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) flags[primes[i]] = at_prime(primes[i]) ? 1 : 0;
    });
  }
  for (auto& th : pool) th.join();
  return flags;
}

CoefficientStream::CoefficientStream(std::vector<mpq_class> a) : a_(std::move(a)) {
  if (a_.empty()) a_.resize(1);
}

CoefficientStream CoefficientStream::operator+(const CoefficientStream& o) const {
  if (size() != o.size()) throw std::invalid_argument("stream lengths differ");
  CoefficientStream r(size());
  for (u64 n = 1; n <= size(); ++n) r.a_[n] = a_[n] + o.a_[n];
  return r;
}

CoefficientStream CoefficientStream::operator-(const CoefficientStream& o) const { return *this + o.scaled(-1); }

CoefficientStream CoefficientStream::scaled(const mpq_class& c) const {
  CoefficientStream r(size());
  for (u64 n = 1; n <= size(); ++n) r.a_[n] = a_[n] * c;
  return r;
}

CoefficientStream CoefficientStream::twisted(const CharacterProduct& chi) const {
  CoefficientStream r(size());
  for (u64 n = 1; n <= size(); ++n)
    if (a_[n] != 0) r.a_[n] = a_[n] * chi.value(n);
  return r;
}

CoefficientStream CoefficientStream::operator*(const CoefficientStream& o) const {
  if (size() != o.size()) throw std::invalid_argument("stream lengths differ");
  CoefficientStream r(size());
  for (u64 d = 1; d <= size(); ++d) {
    if (a_[d] == 0) continue;
    for (u64 m = 1; d * m <= size(); ++m)
      if (o.a_[m] != 0) r.a_[d * m] += a_[d] * o.a_[m];
  }
  return r;
}

CoefficientStream CoefficientStream::inverse() const {
  if (size() < 1 || a_[1] == 0) throw std::invalid_argument("inverse: a_1 must be nonzero");
  CoefficientStream b(size());
  b.a_[1] = 1 / a_[1];
  // b_n = -(1/a_1) sum_{d | n, d > 1} a_d b_{n/d}, accumulated by pushing each b_m forward.
  std::vector<mpq_class> acc(size() + 1);
  for (u64 n = 1; n <= size(); ++n) {
    if (n > 1) b.a_[n] = -acc[n] / a_[1];
    if (b.a_[n] == 0) continue;
    for (u64 d = 2; d * n <= size(); ++d)
      if (a_[d] != 0) acc[d * n] += a_[d] * b.a_[n];
  }
  return b;
}

std::vector<std::uint8_t> rho_indicator(const std::vector<std::uint8_t>& prime_flags, const arith::PrimeTable& table,
                                        u64 n) {
  if (n > table.limit() || prime_flags.size() <= n)
    throw std::out_of_range("rho_indicator: bound exceeds the table or flags");
  std::vector<std::uint8_t> a(n + 1, 0);
  if (n >= 1) a[1] = 1;
  for (u64 m = 2; m <= n; ++m) {
    const u64 p = table.spf(m);
    const u64 rest = m / p;
    // rest coprime to p is needed for square-freeness
    a[m] = prime_flags[p] && a[rest] && (rest == 1 || table.spf(rest) != p);
  }
  return a;
}

CoefficientStream rho_coefficients(const FrobenianMultiplicative& rho, u64 n) {
  const arith::PrimeTable table(std::max<u64>(n, 2));
  const auto flags = rho.prime_flags(table, std::max<u64>(n, 2));
  const auto ind = rho_indicator(flags, table, n);
  CoefficientStream a(n);
  for (u64 m = 1; m <= n; ++m)
    if (ind[m]) a[m] = 1;
  return a;
}

CoefficientStream twist_coefficients(const CoefficientStream& a, const CharacterProduct& chi) {
  return a.twisted(chi);
}

std::optional<u64> filtration_mismatch_mod8(const CoefficientStream& a, int c, u64 n) {
  if (c < 1 || c > 7 || c % 2 == 0) throw std::invalid_argument("filtration_check_mod8: class must be 1, 3, 5 or 7");
  n = std::min(n, a.size());
  for (u64 k = 1; k <= n; ++k) {
    mpq_class lhs = 0;
    for (int i = 1; i <= 4; ++i) lhs += a[k] * (chi_value(i, c) * chi_value(i, static_cast<i64>(k)));
    lhs /= 4;
    const mpq_class rhs = (k % 8 == static_cast<u64>(c)) ? a[k] : mpq_class(0);
    if (lhs != rhs) return k;
  }
  return std::nullopt;
}

std::optional<u64> filtration_mismatch_modr(const CoefficientStream& a, u64 r, int sign, u64 n) {
  if (r % 2 == 0 || !arith::is_prime(r)) throw std::invalid_argument("filtration_check_modr: r must be an odd prime");
  if (sign != 1 && sign != -1) throw std::invalid_argument("filtration_check_modr: sign must be +1 or -1");
  n = std::min(n, a.size());
  for (u64 k = 1; k <= n; ++k) {
    if (k % r == 0) continue;
    const int psi = psi_value(r, static_cast<i64>(k % r));
    const mpq_class lhs = a[k] * (1 + sign * psi) / 2;
    const mpq_class rhs = psi == sign ? a[k] : mpq_class(0);
    if (lhs != rhs) return k;
  }
  return std::nullopt;
}

bool filtration_check_mod8(const CoefficientStream& a, int c, u64 n) {
  return !filtration_mismatch_mod8(a, c, n);
}

bool filtration_check_modr(const CoefficientStream& a, u64 r, int sign, u64 n) {
  return !filtration_mismatch_modr(a, r, sign, n);
}

CoefficientStream F_coefficients(std::span<const criterion::TwistTerm> terms, const CoefficientStream& rho) {
  const u64 n = rho.size();
  CoefficientStream out(n);
  for (const auto& t : terms) {
    const CharacterProduct chi{t.chi, t.psis};
    for (u64 m = 1; m * t.prefactor <= n; ++m) {
      if (rho[m] == 0) continue;
      const int v = chi.value(m);
      if (v != 0) out[m * t.prefactor] += t.coeff * rho[m] * v;
    }
  }
  return out;
}

CoefficientStream F_coefficients(const criterion::CriterionBundle& bundle, u64 n) {
  return F_coefficients(bundle.terms, rho_coefficients(FrobenianMultiplicative::from_quartic(bundle.f), n));
}

double empirical_mean(const FrobenianMultiplicative& rho, const std::optional<CharacterProduct>& chi, u64 bound,
                      unsigned threads) {
  const arith::PrimeTable table(std::max<u64>(bound, 2));
  const auto flags = rho.prime_flags(table, bound, threads);
  i64 sum = 0;
  u64 count = 0;
  for (u64 p : table.primes(bound)) {
    if (rho.exceptional().contains(p)) continue;
    ++count;
    if (flags[p]) sum += chi ? chi->value(p) : 1;
  }
  return count == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(count);
}

void write_csv(const CoefficientStream& a, std::ostream& os) {
  os << "n,a_n\n";
  for (u64 n = 1; n <= a.size(); ++n) os << n << ',' << a[n].get_str() << '\n';
}

}  // namespace els::series
