#include "els/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace els::counting {

namespace {

constexpr char kMagic[8] = {'R', 'O', 'O', 'T', 'F', 'L', 'A', 'G'};

std::optional<std::vector<std::uint8_t>> load_flags(const std::filesystem::path& path, u64 bound) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  u64 stored = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&stored), sizeof stored);
  if (!in || !std::equal(magic, magic + 8, kMagic) || stored != bound) return std::nullopt;
  std::vector<std::uint8_t> flags(bound + 1);
  in.read(reinterpret_cast<char*>(flags.data()), static_cast<std::streamsize>(flags.size()));
  if (!in || in.peek() != std::char_traits<char>::eof()) return std::nullopt;
  return flags;
}

void store_flags(const std::filesystem::path& path, u64 bound, const std::vector<std::uint8_t>& flags) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(kMagic, 8);
    out.write(reinterpret_cast<const char*>(&bound), sizeof bound);
    out.write(reinterpret_cast<const char*>(flags.data()), static_cast<std::streamsize>(flags.size()));
    if (!out) {
      std::filesystem::remove(tmp);
      return;
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("ELS_CACHE_DIR"); env && *env) return env;
  return std::filesystem::temp_directory_path() / "els-cache";
}

std::filesystem::path root_cache_path(const std::filesystem::path& dir, const quartic::Quartic& f, u64 bound) {
  u64 h = 14695981039346656037ull;
  auto mix = [&](u64 v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (auto c : f.low_coeffs()) mix(static_cast<u64>(c));
  mix(bound);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return dir / ("roots-" + std::string(hex) + ".bin");
}

std::vector<std::uint8_t> root_flags(const quartic::Quartic& f, const arith::PrimeTable& table, u64 bound,
                                     const CountOptions& opts) {
  std::optional<std::filesystem::path> path;
  if (opts.cache_dir) {
    path = root_cache_path(*opts.cache_dir, f, bound);
    if (auto cached = load_flags(*path, bound)) return *cached;
  }
  // Roots are asked for at every prime, ramified ones included.
  const auto rho = series::FrobenianMultiplicative::from_rule({}, [&f](u64 p) { return quartic::has_root_mod_p(f, p); });
  auto flags = rho.prime_flags(table, bound, opts.threads);
  if (path) {
    try {
      store_flags(*path, bound, flags);
    } catch (const std::filesystem::filesystem_error&) {
      // an unwritable cache only costs the recomputation next time
    }
  }
  return flags;
}

mpq_class m_exponent(GaloisType g) { return 1 - quartic::mean_rho(g); }

double cx_value(u64 x, u64 lx, const mpq_class& m) {
  return static_cast<double>(lx) * std::pow(std::log(static_cast<double>(x)), m.get_d()) / static_cast<double>(x);
}

std::vector<u64> count_L_with(const criterion::CriterionBundle& bundle, const arith::PrimeTable& table,
                              const std::vector<std::uint8_t>& flags, const std::vector<u64>& checkpoints,
                              unsigned threads) {
  if (checkpoints.empty()) return {};
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
    throw std::invalid_argument("count_L: checkpoints must be sorted");
  const u64 xmax = checkpoints.back();
  if (xmax > table.limit() || flags.size() <= xmax)
    throw std::out_of_range("count_L: xmax exceeds the prime table");

  threads = std::max(1u, threads);
  // hits[t][i] = ELS q in worker t's range with checkpoints[i-1] < q <= checkpoints[i]
  std::vector<std::vector<u64>> hits(threads, std::vector<u64>(checkpoints.size(), 0));
  const u64 chunk = (xmax + threads - 1) / threads;
  auto work = [&](unsigned t) {
    const u64 lo = 1 + t * chunk, hi = std::min(xmax, (t + 1) * chunk);
    auto bucket = std::lower_bound(checkpoints.begin(), checkpoints.end(), lo) - checkpoints.begin();
    std::vector<u64> primes;
    for (u64 q = lo; q <= hi; ++q) {
      while (checkpoints[bucket] < q) ++bucket;
      primes.clear();
      u64 m = q;
      bool squarefree = true;
      while (m > 1) {
        const u64 p = table.spf(m);
        m /= p;
        if (m % p == 0) {
          squarefree = false;
          break;
        }
        primes.push_back(p);
      }
      if (!squarefree) continue;
      if (criterion::is_els_criterion(bundle, q, primes, [&](u64 r) { return flags[r] != 0; }))
        ++hits[t][bucket];
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();

  std::vector<u64> counts(checkpoints.size(), 0);
  u64 running = 0;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    for (unsigned t = 0; t < threads; ++t) running += hits[t][i];
    counts[i] = running;
  }
  return counts;
}

std::vector<CountCheckpoint> count_L(const criterion::CriterionBundle& bundle, u64 xmax,
                                     const std::vector<u64>& checkpoints, const CountOptions& opts) {
  if (checkpoints.empty()) return {};
  if (checkpoints.back() > xmax) throw std::invalid_argument("count_L: checkpoint beyond xmax");
  if (checkpoints.front() < 1) throw std::invalid_argument("count_L: checkpoints must be positive");
  const u64 top = std::max<u64>(checkpoints.back(), 2);
  const arith::PrimeTable table(top);
  const auto flags = root_flags(bundle.f, table, top, opts);
  const auto counts = count_L_with(bundle, table, flags, checkpoints, opts.threads);
  const mpq_class m = m_exponent(bundle.galois);
  std::vector<CountCheckpoint> out;
  for (std::size_t i = 0; i < checkpoints.size(); ++i)
    out.push_back({checkpoints[i], counts[i], cx_value(checkpoints[i], counts[i], m)});
  return out;
}

FitReport fit_cf(const std::vector<CountCheckpoint>& checkpoints, GaloisType g) {
  std::vector<CountCheckpoint> used;
  for (const auto& c : checkpoints)
    if (c.x >= 100) used.push_back(c);
  if (used.size() < 2) throw std::invalid_argument("fit_cf: need at least two checkpoints with x >= 100");
  FitReport r{{}, m_exponent(g), 0.0, 0.0};
  for (auto c : used) {
    c.cx = cx_value(c.x, c.Lx, r.m_used);
    r.checkpoints.push_back(c);
  }
  const double last = r.checkpoints.back().cx, prev = r.checkpoints[r.checkpoints.size() - 2].cx;
  r.cf_estimate = last;
  r.trend = prev == 0 ? INFINITY : (last - prev) / prev;
  return r;
}

double euler_cf_truncated(const series::FrobenianMultiplicative& rho, const mpq_class& m, u64 bound) {
  if (m <= 0 || m > 1) throw std::invalid_argument("euler_cf_truncated: m must lie in (0, 1]");
  const arith::PrimeTable table(std::max<u64>(bound, 2));
  const double md = m.get_d();
  long double log_prod = 0;
  for (u64 p : table.primes(bound)) {
    const long double inv = 1.0L / static_cast<long double>(p);
    if (rho.at_prime(p)) log_prod += std::log1p(inv);
    log_prod += md * std::log1p(-inv);
  }
  return static_cast<double>(std::exp(log_prod) / arith::gamma_eval(md));
}

DensityResult density_check(const series::FrobenianMultiplicative& rho, GaloisType g, u64 bound, double tolerance,
                            unsigned threads) {
  const double frac = series::empirical_mean(rho, std::nullopt, bound, threads);
  const mpq_class target = quartic::mean_rho(g);
  return {frac, target, std::abs(frac - target.get_d()) <= tolerance};
}

}  // namespace els::counting
