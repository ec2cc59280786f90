#pragma once

// L(x) = #{q <= x square-free : H_q is ELS}, counted through the criterion
// tables, plus the diagnostics built on it: c(x) = L(x) (ln x)^m / x, the
// truncated Euler product for c_f, and the prime density of rho.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "els/arith.hpp"
#include "els/criterion.hpp"
#include "els/series.hpp"

namespace els::counting {

using arith::u64;
using quartic::GaloisType;

struct CountCheckpoint {
  u64 x;
  u64 Lx;
  double cx;
};

struct CountOptions {
  unsigned threads = 1;
  /// Directory for the root-flag cache; nullopt disables it.
  std::optional<std::filesystem::path> cache_dir;
};

/// ELS_CACHE_DIR if set, otherwise <tmp>/els-cache.
std::filesystem::path default_cache_dir();

/// flags[p] = 1 iff f has a root mod p, for primes p <= bound; loaded from
/// and written to the cache when a directory is given.
std::vector<std::uint8_t> root_flags(const quartic::Quartic& f, const arith::PrimeTable& table, u64 bound,
                                     const CountOptions& opts);

/// Cache file for (f, bound): <dir>/roots-<16 hex digits of FNV-1a>.bin.
std::filesystem::path root_cache_path(const std::filesystem::path& dir, const quartic::Quartic& f, u64 bound);

/// m = 1 - m(rho) for the group.
mpq_class m_exponent(GaloisType g);

/// L(x) (ln x)^m / x
double cx_value(u64 x, u64 lx, const mpq_class& m);

/// L(x) at each checkpoint (sorted, each <= xmax). Work is split into
/// contiguous q-ranges, one per thread, and merged in order.
std::vector<CountCheckpoint> count_L(const criterion::CriterionBundle& bundle, u64 xmax,
                                     const std::vector<u64>& checkpoints, const CountOptions& opts = {});

/// Raw counts from prebuilt tables (flags from root_flags).
std::vector<u64> count_L_with(const criterion::CriterionBundle& bundle, const arith::PrimeTable& table,
                              const std::vector<std::uint8_t>& flags, const std::vector<u64>& checkpoints,
                              unsigned threads);

struct FitReport {
  std::vector<CountCheckpoint> checkpoints;
  mpq_class m_used;
  double cf_estimate;  // last c(x)
  double trend;        // (c_last - c_prev) / c_prev
};

/// Recomputes c(x) with m = m_exponent(g). Needs two checkpoints with x >= 100.
FitReport fit_cf(const std::vector<CountCheckpoint>& checkpoints, GaloisType g);

/// (1/Gamma(m)) prod_{p <= B} (1 + rho(p)/p)(1 - 1/p)^m
double euler_cf_truncated(const series::FrobenianMultiplicative& rho, const mpq_class& m, u64 bound);

struct DensityResult {
  double fraction;
  mpq_class target;
  bool pass;
};

/// empirical_mean(rho, none, B) against mean_rho(g).
DensityResult density_check(const series::FrobenianMultiplicative& rho, GaloisType g, u64 bound,
                            double tolerance = 0.01, unsigned threads = 1);

}  // namespace els::counting
