#pragma once

// Coefficient streams of Dirichlet series: the frobenian function rho behind
// g(s), its character twists, the mod-8 and mod-r filtrations, and the
// coefficients of F(s) read off a criterion term list.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "els/arith.hpp"
#include "els/characters.hpp"
#include "els/criterion.hpp"
#include "els/quartic.hpp"

namespace els::series {

using arith::i64;
using arith::u64;

/// chi_i * psi_{r_1} * ... * psi_{r_k}; chi = 1 is the principal character
/// mod 8 (zero on even n).
struct CharacterProduct {
  int chi = 1;
  std::vector<u64> psis;

  int value(u64 n) const;
  std::string name() const;
};

/// psi_r alone.
struct QuadCharacter {
  u64 r;
  int operator()(i64 n) const { return psi_value(r, n); }
};

/// Multiplicative indicator supported on square-free integers: rho(p) is the
/// prime rule outside the exceptional set S and 0 on S, rho(p^k) = 0 for k >= 2.
class FrobenianMultiplicative {
 public:
  /// rho(p) = 1 iff f has a root mod p, with S = primes dividing 2 disc(f).
  static FrobenianMultiplicative from_quartic(const quartic::Quartic& f);
  static FrobenianMultiplicative from_rule(std::set<u64> exceptional, std::function<bool(u64)> rule);

  const std::set<u64>& exceptional() const { return exceptional_; }
  const std::optional<quartic::Quartic>& quartic() const { return f_; }
  bool at_prime(u64 p) const;

  /// flags[p] = rho(p) for every prime p <= bound (other entries 0).
  std::vector<std::uint8_t> prime_flags(const arith::PrimeTable& table, u64 bound, unsigned threads = 1) const;

 private:
  std::set<u64> exceptional_;
  std::function<bool(u64)> rule_;
  std::optional<quartic::Quartic> f_;
};

/// a_1..a_N of a Dirichlet series, exact rationals. a[0] is unused.
class CoefficientStream {
 public:
  explicit CoefficientStream(u64 n) : a_(n + 1) {}
  explicit CoefficientStream(std::vector<mpq_class> a);

  u64 size() const { return a_.size() - 1; }
  const mpq_class& operator[](u64 n) const { return a_[n]; }
  mpq_class& operator[](u64 n) { return a_[n]; }

  CoefficientStream operator+(const CoefficientStream& o) const;
  CoefficientStream operator-(const CoefficientStream& o) const;
  CoefficientStream scaled(const mpq_class& c) const;
  /// a_n chi(n).
  CoefficientStream twisted(const CharacterProduct& chi) const;
  /// Dirichlet convolution.
  CoefficientStream operator*(const CoefficientStream& o) const;
  /// Convolution inverse; requires a_1 != 0.
  CoefficientStream inverse() const;

  friend bool operator==(const CoefficientStream&, const CoefficientStream&) = default;

 private:
  std::vector<mpq_class> a_;
};

/// Dirichlet coefficients of g(s) = prod'(1 + rho(p) p^-s): 1 on square-free n
/// all of whose primes have rho(p) = 1.
CoefficientStream rho_coefficients(const FrobenianMultiplicative& rho, u64 n);
/// Same, from precomputed prime flags and a table covering n.
std::vector<std::uint8_t> rho_indicator(const std::vector<std::uint8_t>& prime_flags, const arith::PrimeTable& table,
                                        u64 n);

CoefficientStream twist_coefficients(const CoefficientStream& a, const CharacterProduct& chi);

/// (1/4) sum_i chi_i(c) a^{chi_i}(n) = a_n [n = c mod 8] for all n <= N.
bool filtration_check_mod8(const CoefficientStream& a, int c, u64 n);
/// First n where that identity fails.
std::optional<u64> filtration_mismatch_mod8(const CoefficientStream& a, int c, u64 n);

/// (1/2)(a + sign a^{psi_r})(n) = a_n [(n/r) = sign] for n <= N coprime to r.
bool filtration_check_modr(const CoefficientStream& a, u64 r, int sign, u64 n);
std::optional<u64> filtration_mismatch_modr(const CoefficientStream& a, u64 r, int sign, u64 n);

/// sum over terms of coeff * (rho chi psi...)(n/M) for M | n.
CoefficientStream F_coefficients(const criterion::CriterionBundle& bundle, u64 n);
CoefficientStream F_coefficients(std::span<const criterion::TwistTerm> terms, const CoefficientStream& rho);

/// sum_{p <= B, p not in S} rho(p) chi(p) / #{p <= B, p not in S}.
double empirical_mean(const FrobenianMultiplicative& rho, const std::optional<CharacterProduct>& chi, u64 bound,
                      unsigned threads = 1);

/// "n,a_n" rows, rationals as p/q.
void write_csv(const CoefficientStream& a, std::ostream& os);

}  // namespace els::series
