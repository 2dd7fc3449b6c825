#pragma once

// Exact arithmetic in a number field Q(a) = Q[x]/(m(x)).
//
// Elements are stored as coordinate vectors in the power basis 1, a, ...,
// a^(d-1). All residues, Camacho-Sad indices and holonomies in the rest of
// the library are FieldElements of a single field declared by the input.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sepkit {

/// GMP keeps mpq_class canonical (reduced, positive denominator) after every
/// arithmetic operation, but not after two-argument construction: build
/// fractions with make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms. Throws DivisionByZero when den == 0.
Rational make_rational(long num, long den);

/// Accepts "p/q" or "p" with optional sign. Throws BadFieldElement.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

/// Dense univariate polynomial over Q, coefficients low-to-high, no trailing
/// zeros. The zero polynomial has an empty coefficient list and degree -1.
class RationalPolynomial {
public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial monomial(const Rational& c, std::size_t power);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const;
  Rational leading() const;

  Rational evaluate(const Rational& x) const;
  RationalPolynomial derivative() const;
  RationalPolynomial monic() const;

  /// Integer coefficients with gcd 1 and positive leading coefficient.
  std::vector<Integer> primitive_integer_coeffs() const;

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) = default;

  /// Euclidean division; divisor must be nonzero.
  static void divmod(const RationalPolynomial& a, const RationalPolynomial& b,
                     RationalPolynomial& quotient, RationalPolynomial& remainder);
  /// Monic gcd (zero if both inputs are zero).
  static RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

  std::string to_string(std::string_view var = "x") const;

private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Distinct rational roots of p, in increasing order.
std::vector<Rational> rational_roots(const RationalPolynomial& p);

/// Q[x]/(m) for a monic m = x^d + c_{d-1}x^{d-1} + ... + c_0.
///
/// Construction screens m: it must be squarefree and, when d > 1, free of
/// rational roots. Full irreducibility is not checked; a reducible m shows up
/// later as DivisionByZero when a zero divisor is inverted.
class NumberField {
public:
  /// `tail` lists c_0..c_{d-1}; the leading 1 is implicit. Throws SchemaError.
  static std::shared_ptr<const NumberField> create(std::vector<Rational> tail);
  static std::shared_ptr<const NumberField> rationals();

  std::size_t degree() const { return tail_.size(); }
  const std::vector<Rational>& min_poly_tail() const { return tail_; }
  const RationalPolynomial& modulus() const { return modulus_; }

  bool operator==(const NumberField& other) const { return tail_ == other.tail_; }

private:
  explicit NumberField(std::vector<Rational> tail);
  std::vector<Rational> tail_;
  RationalPolynomial modulus_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

bool same_field(const FieldPtr& a, const FieldPtr& b);

class FieldElement {
public:
  /// Exactly field->degree() coordinates. Throws BadFieldElement otherwise.
  FieldElement(FieldPtr field, std::vector<Rational> coeffs);

  static FieldElement zero(const FieldPtr& field);
  static FieldElement one(const FieldPtr& field);
  static FieldElement from_rational(const FieldPtr& field, const Rational& q);
  static FieldElement from_int(const FieldPtr& field, long value);
  /// The class of x in Q[x]/(m).
  static FieldElement generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Only meaningful when is_rational().
  const Rational& rational_part() const { return coeffs_.front(); }
  bool is_positive_rational() const;

  FieldElement inverse() const;
  FieldElement pow(std::int64_t exponent) const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// Human-readable, e.g. "-11/10 + 1/10*a".
  std::string to_string() const;

private:
  void require_same_field(const FieldElement& other) const;
  FieldPtr field_;
  std::vector<Rational> coeffs_;
};

enum class ArithOp { Add, Sub, Mul, Div };

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);

/// Candidate orders n with phi(n) <= degree, ascending.
std::vector<std::uint64_t> root_of_unity_candidates(std::size_t degree);

/// Least n among the cyclotomic candidates with u^n = 1. Throws ZeroElement.
std::optional<std::uint64_t> is_root_of_unity(const FieldElement& u);

/// Rank over Q of the coordinate vectors. Throws FieldMismatch.
std::size_t rational_span_dimension(std::span<const FieldElement> elems);

/// Fraction-free (Bareiss) rank of an integer matrix given as rows.
std::size_t integer_matrix_rank(std::vector<std::vector<Integer>> rows);

// Serialization: arrays of rational strings, little-endian in powers of a.
std::vector<std::string> element_to_strings(const FieldElement& e);
FieldElement element_from_strings(const FieldPtr& field, std::span<const std::string> parts);

}  // namespace sepkit
