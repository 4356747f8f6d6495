#include "presred/exactmath.hpp"

#include <atomic>
#include <limits>

namespace presred {

namespace {
std::atomic<long long> g_scan_limit{10'000'000};
}

long long scan_limit() { return g_scan_limit; }
long long big_scan_limit() { return 10 * g_scan_limit; }
void set_max_scale(long long scan_points) {
  if (scan_points < 1) throw std::invalid_argument("set_max_scale: limit must be positive");
  g_scan_limit = scan_points;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_euclid(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += boost::multiprecision::abs(m);
  return r;
}

Int mod_inverse(const Int& a, const Int& m) {
  if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  // Extended Euclid on (a mod m, m).
  Int r0 = mod_euclid(a, m), r1 = m;
  Int s0 = 1, s1 = 0;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) {
    throw std::invalid_argument("mod_inverse: " + a.str() + " is not invertible mod " + m.str());
  }
  Int x = mod_euclid(s0, m);
  if (x == 0) x = m;  // representative in [1, m]
  return x;
}

Int crt_solve(const std::vector<std::pair<Int, Int>>& residues) {
  if (residues.empty()) return 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const auto& [r, m] = residues[i];
    if (m < 1) throw std::invalid_argument("crt_solve: modulus must be positive");
    if (r < 0 || r >= m) throw std::invalid_argument("crt_solve: remainder out of [0, modulus)");
    for (std::size_t j = i + 1; j < residues.size(); ++j) {
      if (int_gcd(m, residues[j].second) != 1) {
        throw std::invalid_argument("crt_solve: moduli " + m.str() + " and " +
                                    residues[j].second.str() + " are not coprime");
      }
    }
  }
  Int x = residues[0].first;
  Int mod = residues[0].second;
  for (std::size_t i = 1; i < residues.size(); ++i) {
    const auto& [r, m] = residues[i];
    // x + mod*t == r (mod m)
    Int t = mod_euclid((r - x) * mod_inverse(mod, m), m);
    x += mod * t;
    mod *= m;
    x = mod_euclid(x, mod);
  }
  return x;
}

std::vector<Int> first_primes(std::size_t count, std::size_t offset) {
  std::vector<Int> out;
  out.reserve(count);
  std::size_t seen = 0;
  // Trial division is plenty: the reductions use at most a few dozen primes.
  for (long long n = 2; out.size() < count; ++n) {
    bool prime = true;
    for (long long d = 2; d * d <= n; ++d) {
      if (n % d == 0) { prime = false; break; }
    }
    if (!prime) continue;
    if (seen++ < offset) continue;
    out.push_back(Int(n));
  }
  return out;
}

Int binomial(const Int& n, const Int& k) {
  if (k < 0 || k > n) return 0;
  Int kk = k;
  if (n - k < kk) kk = n - k;
  Int num = 1, den = 1;
  for (Int i = 0; i < kk; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

Int int_pow(const Int& base, unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

long long to_ll(const Int& v) {
  if (v < std::numeric_limits<long long>::min() || v > std::numeric_limits<long long>::max()) {
    throw std::overflow_error("integer " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<long long>();
}

}  // namespace presred
