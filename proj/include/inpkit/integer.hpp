#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace inpkit {

/// Unbounded signed integer. All group coordinates use this type.
using Integer = mpz_class;

inline bool is_odd(const Integer& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }
inline bool is_even(const Integer& v) { return !is_odd(v); }

/// (-1)^e as +1 or -1.
inline int parity_sign(const Integer& e) { return is_odd(e) ? -1 : 1; }

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline std::optional<std::int64_t> to_int64(const Integer& v) {
  if (!mpz_fits_slong_p(v.get_mpz_t())) return std::nullopt;
  return static_cast<std::int64_t>(v.get_si());
}

/// Parses a base-10 integer; throws std::invalid_argument on malformed text.
Integer parse_integer(const std::string& text);

/// Non-negative residue of v modulo a positive modulus.
Integer floor_mod(const Integer& v, const Integer& modulus);

/// True iff divisor divides v. A zero divisor divides only zero.
bool divides(const Integer& divisor, const Integer& v);

}  // namespace inpkit
