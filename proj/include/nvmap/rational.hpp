#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace nvmap {

// Exact scalars. Rat is always kept in canonical form (reduced, positive
// denominator); every constructor path below canonicalizes.
using Int = mpz_class;
using Rat = mpq_class;

inline Int rat_num(const Rat& q) { return q.get_num(); }
inline Int rat_den(const Rat& q) { return q.get_den(); }

inline bool rat_is_int(const Rat& q) { return q.get_den() == 1; }

inline Int rat_to_int(const Rat& q) {
  if (!rat_is_int(q)) throw std::invalid_argument("rat_to_int: not an integer: " + q.get_str());
  return q.get_num();
}

inline int rat_sign(const Rat& q) { return sgn(q); }
inline Rat rat_abs(const Rat& q) { return abs(q); }

inline Int rat_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Int rat_ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Parses "p" or "p/q" with optional leading minus. Anything else (decimals,
// exponents, whitespace) is rejected so inexact input can never slip in.
std::optional<Rat> rat_parse(const std::string& s);

// Formats as "p" or "p/q", inverse to rat_parse on canonical values.
std::string rat_str(const Rat& q);

}  // namespace nvmap
