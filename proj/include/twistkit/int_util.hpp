#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "twistkit/errors.hpp"

namespace twistkit {

// Arbitrary-precision signed integer. Arithmetic is exact; there is no
// overflow anywhere in the library.
using Int = mpz_class;

inline Int int_pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Int int_pow(long b, unsigned long e) { return int_pow(Int(b), e); }

inline bool divisible(const Int& a, const Int& k) {
  return mpz_divisible_p(a.get_mpz_t(), k.get_mpz_t()) != 0;
}

// Exact quotient a/k; throws NotDivisible when k does not divide a.
inline Int div_exact(const Int& a, const Int& k, long where = -1) {
  if (k == 0) throw NotDivisible("division by zero", where);
  if (!divisible(a, k))
    throw NotDivisible(a.get_str() + " not divisible by " + k.get_str(), where);
  Int r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), k.get_mpz_t());
  return r;
}

// Canonical residue in [0, m).
inline Int mod_canonical(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Symmetric residue in (-m/2, m/2].
inline Int mod_symmetric(const Int& a, const Int& m) {
  Int r = mod_canonical(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline long valuation(Int a, const Int& p) {
  if (a == 0) return -1;  // convention: infinite
  long v = 0;
  while (divisible(a, p)) {
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

inline std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> fs;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      fs.emplace_back(p, e);
    }
  }
  if (n > 1) fs.emplace_back(n, 1);
  return fs;
}

inline int mobius(long n) {
  if (n < 1) throw Precondition("mobius requires n >= 1");
  int sign = 1;
  for (auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

inline std::vector<long> divisors_of(long n) {
  std::vector<long> ds;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) ds.push_back(d);
  return ds;
}

inline long gcd_long(long a, long b) {
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

inline long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

// Deterministic PRNG (splitmix64). Byte-identical streams across platforms,
// which the report determinism contract relies on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] inclusive.
  long uniform(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  Rng fork() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }

 private:
  std::uint64_t s_;
};

}  // namespace twistkit
