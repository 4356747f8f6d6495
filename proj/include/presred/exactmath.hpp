#ifndef PRESRED_EXACTMATH_HPP
#define PRESRED_EXACTMATH_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace presred {

// All integer quantities in the toolkit are exact arbitrary-precision
// integers; rationals are kept in lowest terms with positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Thrown when a brute-force oracle is asked to scan beyond desk scale.
class ScaleError : public std::runtime_error {
 public:
  explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed textual input; carries a 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// Desk-scale guards: single scans refuse beyond scan_limit() points
// (default 10^7), combined products beyond big_scan_limit() (10x that).
// set_max_scale rescales both.
long long scan_limit();
long long big_scan_limit();
void set_max_scale(long long scan_points);

// Floor division and the Euclidean remainder in [0, m).
Int floor_div(const Int& a, const Int& b);
Int mod_euclid(const Int& a, const Int& m);

// Unique x in [1, m] with a*x == 1 (mod m).  Requires m >= 2 and gcd(a, m) = 1.
Int mod_inverse(const Int& a, const Int& m);

// Unique e in [0, prod(moduli)) congruent to every remainder.  Remainders must
// lie in [0, modulus) and moduli must be pairwise coprime.
Int crt_solve(const std::vector<std::pair<Int, Int>>& residues);

// First `count` primes after skipping the first `offset` primes, increasing.
// first_primes(3) = {2,3,5}; first_primes(3, 1) = {3,5,7}.
std::vector<Int> first_primes(std::size_t count, std::size_t offset = 0);

Int binomial(const Int& n, const Int& k);
Int int_pow(const Int& base, unsigned exp);

// Converts an Int that is known to fit into long long; throws otherwise.
long long to_ll(const Int& v);

}  // namespace presred

#endif
