#include "els/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace els::arith {

namespace {

constexpr char kSpfMagic[8] = {'S', 'P', 'F', 'T', 'A', 'B', 'L', 'E'};

template <class T>
void write_le(std::ostream& os, T v) {
  std::array<char, sizeof(T)> buf{};
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(buf.data(), buf.size());
}

template <class T>
T read_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> buf{};
  is.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!is) throw std::runtime_error("spf table: truncated file");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
  if (limit < 2 || limit > kMaxLimit) throw std::invalid_argument("PrimeTable: limit must lie in [2, 2^31]");
  spf_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  // Linear sieve: every composite is struck exactly once, by its least prime.
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

std::uint32_t PrimeTable::spf(u64 n) const {
  if (n < 2 || n > limit_) throw std::out_of_range("PrimeTable: n outside [2, limit]");
  return spf_[n];
}

std::vector<std::uint32_t> PrimeTable::primes(u64 bound) const {
  if (bound > limit_) throw std::out_of_range("PrimeTable: bound exceeds limit");
  std::vector<std::uint32_t> out;
  for (u64 n = 2; n <= bound; ++n)
    if (spf_[n] == n) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

void PrimeTable::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("spf table: cannot open " + path.string());
  os.write(kSpfMagic, sizeof kSpfMagic);
  write_le<std::uint64_t>(os, limit_);
  for (u64 n = 2; n <= limit_; ++n) write_le<std::uint32_t>(os, spf_[n]);
  if (!os) throw std::runtime_error("spf table: write failed");
}

PrimeTable PrimeTable::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("spf table: cannot open " + path.string());
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kSpfMagic, sizeof magic) != 0) throw std::runtime_error("spf table: bad magic");
  const auto limit = read_le<std::uint64_t>(is);
  if (limit < 2 || limit > kMaxLimit) throw std::runtime_error("spf table: bad limit");
  const auto expected = static_cast<std::uintmax_t>(16 + 4 * (limit - 1));
  if (std::filesystem::file_size(path) != expected) throw std::runtime_error("spf table: size does not match limit");
  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (u64 n = 2; n <= limit; ++n) {
    spf[n] = read_le<std::uint32_t>(is);
    if (spf[n] < 2 || spf[n] > n || n % spf[n] != 0) throw std::runtime_error("spf table: corrupt entry");
  }
  return PrimeTable(limit, std::move(spf));
}

SquareClass2 SquareClass2::of(i64 n) {
  if (n == 0) throw std::invalid_argument("SquareClass2: zero has no square class");
  const bool neg = n < 0;
  u64 m = neg ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  const int v = std::countr_zero(m);
  m >>= v;
  // m odd; class of the unit is determined by m mod 8 and the sign.
  i64 unit = static_cast<i64>(m % 8);
  if (neg) unit = (8 - unit) % 8;
  int rep = 0;
  switch (unit) {
    case 1: rep = 1; break;
    case 3: rep = -5; break;
    case 5: rep = 5; break;
    case 7: rep = -1; break;
  }
  return SquareClass2(v % 2 == 0 ? rep : 2 * rep);
}

std::span<const int> SquareClass2::representatives() {
  static constexpr std::array<int, 8> reps = {1, -1, 5, -5, 2, -2, 10, -10};
  return reps;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 gcd(u64 a, u64 b) {
  while (b) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int jacobi(i64 a, i64 n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd and positive");
  u64 m = static_cast<u64>(n);
  i64 r = a % n;
  if (r < 0) r += n;
  u64 x = static_cast<u64>(r);
  int t = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const u64 mod8 = m & 7;
      if (mod8 == 3 || mod8 == 5) t = -t;
    }
    std::swap(x, m);
    if ((x & 3) == 3 && (m & 3) == 3) t = -t;
    x %= m;
  }
  return m == 1 ? t : 0;
}

u64 least_nonresidue(u64 p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("least_nonresidue: p must be an odd prime");
  for (u64 u = 2;; ++u)
    if (jacobi(static_cast<i64>(u), static_cast<i64>(p)) == -1) return u;
}

int valuation(i64 n, u64 p) {
  if (n == 0) throw std::invalid_argument("valuation: n must be nonzero");
  u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const mpz_class& n, u64 p) {
  if (n == 0) throw std::invalid_argument("valuation: n must be nonzero");
  if (p == 2) return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
  mpz_class m = n;
  const mpz_class pz(static_cast<unsigned long>(p));
  return static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
}

bool is_padic_square(i64 n, u64 p) { return is_padic_square(mpz_class(static_cast<long>(n)), p); }

bool is_padic_square(const mpz_class& n, u64 p) {
  if (n == 0) throw std::invalid_argument("is_padic_square: n must be nonzero");
  mpz_class unit = n;
  const mpz_class pz(static_cast<unsigned long>(p));
  const auto v = mpz_remove(unit.get_mpz_t(), unit.get_mpz_t(), pz.get_mpz_t());
  if (v % 2 != 0) return false;
  if (p == 2) return mpz_fdiv_ui(unit.get_mpz_t(), 8) == 1;
  const u64 r = mpz_fdiv_ui(unit.get_mpz_t(), static_cast<unsigned long>(p));
  return jacobi(static_cast<i64>(r), static_cast<i64>(p)) == 1;
}

std::optional<std::vector<u64>> squarefree_factor(u64 n, const PrimeTable* table) {
  if (n == 0) throw std::invalid_argument("squarefree_factor: n must be positive");
  std::vector<u64> out;
  if (table) {
    if (n > table->limit()) throw std::out_of_range("squarefree_factor: n exceeds table limit");
    while (n > 1) {
      const u64 p = table->spf(n);
      n /= p;
      if (n % p == 0) return std::nullopt;
      out.push_back(p);
    }
    return out;
  }
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return std::nullopt;
    out.push_back(p);
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void collect_prime_divisors(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_rho(n);
  collect_prime_divisors(d, out);
  collect_prime_divisors(n / d, out);
}

}  // namespace

std::vector<u64> prime_divisors(u64 n) {
  if (n == 0) throw std::invalid_argument("prime_divisors: n must be positive");
  std::vector<u64> out;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  collect_prime_divisors(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double gamma_eval(double x) {
  if (!(x > 0.0 && x <= 2.0)) throw std::domain_error("gamma_eval: x must lie in (0, 2]");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_eval(1.0 - x));
  // Lanczos approximation, g = 7, nine coefficients.
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double a = c[0];
  const double t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace els::arith
