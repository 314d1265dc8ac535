#pragma once

// Free groups on generators x_0, x_1, x_2, ... and their abelianization.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "inpkit/integer.hpp"

namespace inpkit::free {

using Generator = std::size_t;

struct Syllable {
  Generator gen;
  Integer exp;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A reduced word: adjacent syllables use distinct generators and no exponent
/// is zero. The empty word is the identity.
class FreeWord {
 public:
  FreeWord() = default;
  /// Freely reduces the given syllables.
  explicit FreeWord(std::vector<Syllable> syllables);
  FreeWord(std::initializer_list<std::pair<Generator, long>> syllables);

  static FreeWord generator_power(Generator gen, Integer exp);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }
  std::size_t syllable_count() const { return syllables_.size(); }
  /// Sum of |exponent| over syllables.
  Integer length() const;
  /// One past the largest generator index used (0 for the identity).
  Generator rank() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend bool operator<(const FreeWord& a, const FreeWord& b);

 private:
  std::vector<Syllable> syllables_;
};

std::ostream& operator<<(std::ostream& os, const FreeWord& w);
std::string to_string(const FreeWord& w);

/// Parses "x0^2 x1^-1 x3" (whitespace or '*' separated; "e" or "" for the identity).
FreeWord parse_word(const std::string& text);

FreeWord mul(const FreeWord& u, const FreeWord& v);
FreeWord inv(const FreeWord& u);
FreeWord pow(const FreeWord& u, const Integer& k);
/// u v u^-1.
FreeWord conjugate(const FreeWord& v, const FreeWord& u);

/// Exponent-sum vector; zero coordinates are never stored.
class AbelianVector {
 public:
  AbelianVector() = default;
  explicit AbelianVector(std::map<Generator, Integer> coords);

  Integer operator[](Generator gen) const;
  const std::map<Generator, Integer>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  AbelianVector operator+(const AbelianVector& rhs) const;
  AbelianVector operator-() const;

  friend bool operator==(const AbelianVector&, const AbelianVector&) = default;
  friend bool operator<(const AbelianVector& a, const AbelianVector& b) { return a.coords_ < b.coords_; }

 private:
  std::map<Generator, Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const AbelianVector& v);

AbelianVector abelianize(const FreeWord& u);

}  // namespace inpkit::free
