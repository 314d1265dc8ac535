#include "inpkit/integer.hpp"

#include <stdexcept>

namespace inpkit {

Integer parse_integer(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return Integer(text[0] == '+' ? text.substr(1) : text, 10);
}

Integer floor_mod(const Integer& v, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

bool divides(const Integer& divisor, const Integer& v) {
  if (divisor == 0) return v == 0;
  return mpz_divisible_p(v.get_mpz_t(), divisor.get_mpz_t()) != 0;
}

}  // namespace inpkit
