#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace nia {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline std::size_t hash_value(const Integer& v) {
  // Low limbs and sign are enough for hash-consing.
  std::size_t h = std::hash<long>{}(mpz_get_si(v.get_mpz_t()));
  h ^= static_cast<std::size_t>(mpz_sgn(v.get_mpz_t()) + 1) * 0x9e3779b97f4a7c15ULL;
  h ^= mpz_size(v.get_mpz_t()) << 7;
  return h;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ipow(const Integer& base, unsigned exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

}  // namespace nia
