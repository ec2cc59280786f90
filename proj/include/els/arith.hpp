#pragma once

// Exact integer, modular and p-adic helpers shared by the rest of the library.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace els::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Smallest-prime-factor table for 2..limit.
///
/// One 32-bit entry per integer; limit is capped at 2^31. The table is
/// immutable after construction and may be shared between threads.
class PrimeTable {
 public:
  static constexpr u64 kMaxLimit = u64{1} << 31;

  explicit PrimeTable(u64 limit);

  u64 limit() const { return limit_; }
  std::uint32_t spf(u64 n) const;
  bool is_prime(u64 n) const { return n >= 2 && spf(n) == n; }

  /// Primes p <= bound (bound <= limit), ascending.
  std::vector<std::uint32_t> primes(u64 bound) const;

  /// Little-endian file: "SPFTABLE", u64 limit, then u32 spf[n] for n = 2..limit.
  void save(const std::filesystem::path& path) const;
  static PrimeTable load(const std::filesystem::path& path);

 private:
  PrimeTable(u64 limit, std::vector<std::uint32_t> spf) : limit_(limit), spf_(std::move(spf)) {}

  u64 limit_;
  std::vector<std::uint32_t> spf_;  // indexed by n; entries 0 and 1 unused
};

/// One of the eight representatives {1,-1,5,-5,2,-2,10,-10} of Q_2^x / (Q_2^x)^2.
class SquareClass2 {
 public:
  /// Class of a nonzero integer.
  static SquareClass2 of(i64 n);
  static std::span<const int> representatives();

  int value() const { return value_; }
  friend bool operator==(SquareClass2, SquareClass2) = default;

 private:
  explicit SquareClass2(int v) : value_(v) {}
  int value_;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
bool is_prime(u64 n);
u64 gcd(u64 a, u64 b);

/// Jacobi symbol (a/n) for odd n >= 1, computed by reciprocity (no factoring).
int jacobi(i64 a, i64 n);

/// Least positive quadratic non-residue modulo an odd prime.
u64 least_nonresidue(u64 p);

/// Exponent of p in n, n != 0.
int valuation(i64 n, u64 p);
int valuation(const mpz_class& n, u64 p);

/// True iff n is a square in Q_p, n != 0.
bool is_padic_square(i64 n, u64 p);
bool is_padic_square(const mpz_class& n, u64 p);

/// Ascending list of the prime factors of n when n is square-free, otherwise
/// nullopt. Uses the table when given (n must not exceed its limit), trial
/// division otherwise.
std::optional<std::vector<u64>> squarefree_factor(u64 n, const PrimeTable* table = nullptr);

/// Distinct prime divisors of n >= 1, ascending (Pollard rho for large cofactors).
std::vector<u64> prime_divisors(u64 n);

/// Gamma function on (0, 2], relative accuracy about 1e-13.
double gamma_eval(double x);

}  // namespace els::arith
