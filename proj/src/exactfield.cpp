#include "sepkit/exactfield.hpp"

#include "sepkit/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sepkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::BadFieldElement: return "BadFieldElement";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::DisconnectedSelection: return "DisconnectedSelection";
    case ErrorCode::NontrivialRepresentation: return "NontrivialRepresentation";
    case ErrorCode::SaddleNodePresent: return "SaddleNodePresent";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::GorensteinInconsistent: return "GorensteinInconsistent";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::BadParams: return "BadParams";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Rational

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::BadFieldElement, "malformed rational \"" + std::string(text) + "\"");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Integer numerator(n, 10);
  Integer denominator(std::string(den), 10);
  if (denominator == 0) {
    throw Error(ErrorCode::BadFieldElement, "zero denominator in \"" + std::string(text) + "\"");
  }
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------------------
// RationalPolynomial

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) {
  return RationalPolynomial(std::vector<Rational>{c});
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> v(power + 1);
  v[power] = c;
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational RationalPolynomial::leading() const {
  return coeffs_.empty() ? Rational(0) : coeffs_.back();
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return {};
  Rational lc = leading();
  std::vector<Rational> v = coeffs_;
  for (auto& c : v) c /= lc;
  return RationalPolynomial(std::move(v));
}

std::vector<Integer> RationalPolynomial::primitive_integer_coeffs() const {
  if (is_zero()) return {};
  Integer lcm_den = 1;
  for (const auto& c : coeffs_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(coeffs_.size());
  Integer content = 0;
  for (const auto& c : coeffs_) {
    Integer v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (out.back() < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::divmod(const RationalPolynomial& a, const RationalPolynomial& b,
                                RationalPolynomial& quotient, RationalPolynomial& remainder) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs_;
  const int db = b.degree();
  std::vector<Rational> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
  const Rational lc = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational f = r[static_cast<std::size_t>(k)] / lc;
    if (f == 0) continue;
    q[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs_[static_cast<std::size_t>(j)];
  }
  quotient = RationalPolynomial(std::move(q));
  remainder = RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string RationalPolynomial::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << sepkit::to_string(mag);
    if (k > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

namespace {

constexpr unsigned long kTrialDivisionLimit = 1000000;

// Prime factorization by trial division; a leftover cofactor is accepted only
// when it is (probably) prime.
std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  if (n < 0) n = -n;
  for (unsigned long p = 2; p <= kTrialDivisionLimit && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(Integer(p), e);
  }
  if (n > 1) {
    if (Integer(kTrialDivisionLimit) * kTrialDivisionLimit < n && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
      throw Error(ErrorCode::SchemaError,
                  "cannot screen polynomial for rational roots: coefficient " + n.get_str() + " too large to factor");
    }
    out.emplace_back(n, 1);
  }
  return out;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const RationalPolynomial& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  std::vector<Integer> c = p.primitive_integer_coeffs();
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (low + 1 == c.size()) return roots;
  const std::vector<Integer> nums = positive_divisors(c[low]);
  const std::vector<Integer> dens = positive_divisors(c.back());
  for (const auto& a : nums) {
    for (const auto& b : dens) {
      for (int sign : {1, -1}) {
        Rational cand(a * sign, b);
        cand.canonicalize();
        if (p.evaluate(cand) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// NumberField

namespace {

RationalPolynomial modulus_from_tail(const std::vector<Rational>& tail) {
  std::vector<Rational> v = tail;
  v.emplace_back(1);
  return RationalPolynomial(std::move(v));
}

}  // namespace

NumberField::NumberField(std::vector<Rational> tail)
    : tail_(std::move(tail)), modulus_(modulus_from_tail(tail_)) {}

std::shared_ptr<const NumberField> NumberField::create(std::vector<Rational> tail) {
  if (tail.empty()) throw Error(ErrorCode::SchemaError, "field degree must be at least 1");
  RationalPolynomial m = modulus_from_tail(tail);
  if (RationalPolynomial::gcd(m, m.derivative()).degree() > 0) {
    throw Error(ErrorCode::SchemaError, "minimal polynomial " + m.to_string() + " is not squarefree");
  }
  if (m.degree() > 1) {
    auto roots = rational_roots(m);
    if (!roots.empty()) {
      throw Error(ErrorCode::SchemaError, "minimal polynomial " + m.to_string() + " has the rational root " +
                                              to_string(roots.front()) + "; it is reducible over Q");
    }
  }
  return std::shared_ptr<const NumberField>(new NumberField(std::move(tail)));
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const auto q = std::shared_ptr<const NumberField>(new NumberField({Rational(0)}));
  return q;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// FieldElement

namespace {

RationalPolynomial to_poly(const std::vector<Rational>& coeffs) { return RationalPolynomial(coeffs); }

std::vector<Rational> to_coords(const RationalPolynomial& p, std::size_t d) {
  std::vector<Rational> v(d);
  for (std::size_t i = 0; i < d && i < p.coeffs().size(); ++i) v[i] = p.coeffs()[i];
  return v;
}

std::vector<Rational> reduce_product(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                     const std::vector<Rational>& tail) {
  const std::size_t d = tail.size();
  std::vector<Rational> prod(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  }
  // x^d = -sum c_i x^i
  for (std::size_t k = prod.size(); k-- > d;) {
    if (prod[k] == 0) continue;
    Rational top = prod[k];
    prod[k] = 0;
    for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= top * tail[i];
  }
  prod.resize(d);
  return prod;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw Error(ErrorCode::BadFieldElement, "field element without a field");
  if (coeffs_.size() != field_->degree()) {
    throw Error(ErrorCode::BadFieldElement, "field element has " + std::to_string(coeffs_.size()) +
                                                " coordinates, field degree is " + std::to_string(field_->degree()));
  }
  for (auto& c : coeffs_) c.canonicalize();
}

FieldElement FieldElement::zero(const FieldPtr& field) {
  return FieldElement(field, std::vector<Rational>(field->degree()));
}

FieldElement FieldElement::one(const FieldPtr& field) { return from_rational(field, 1); }

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rational& q) {
  std::vector<Rational> v(field->degree());
  v[0] = q;
  return FieldElement(field, std::move(v));
}

FieldElement FieldElement::from_int(const FieldPtr& field, long value) { return from_rational(field, Rational(value)); }

FieldElement FieldElement::generator(const FieldPtr& field) {
  if (field->degree() == 1) return from_rational(field, -field->min_poly_tail()[0]);
  std::vector<Rational> v(field->degree());
  v[1] = 1;
  return FieldElement(field, std::move(v));
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_one() const { return is_rational() && coeffs_[0] == 1; }

bool FieldElement::is_positive_rational() const { return is_rational() && coeffs_[0] > 0; }

void FieldElement::require_same_field(const FieldElement& other) const {
  if (!same_field(field_, other.field_)) {
    throw Error(ErrorCode::FieldMismatch, "operands belong to different number fields");
  }
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  require_same_field(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
  require_same_field(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  require_same_field(other);
  if (coeffs_.size() == 1) {
    coeffs_[0] *= other.coeffs_[0];
  } else {
    coeffs_ = reduce_product(coeffs_, other.coeffs_, field_->min_poly_tail());
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& other) {
  require_same_field(other);
  return *this *= other.inverse();
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero in number field");
  const std::size_t d = field_->degree();
  if (d == 1) return from_rational(field_, 1 / coeffs_[0]);
  // Extended Euclid on (m, a): track s with s*a = r (mod m).
  RationalPolynomial r0 = field_->modulus();
  RationalPolynomial r1 = to_poly(coeffs_);
  RationalPolynomial s0;
  RationalPolynomial s1 = RationalPolynomial::constant(1);
  while (r1.degree() > 0) {
    RationalPolynomial q, r;
    RationalPolynomial::divmod(r0, r1, q, r);
    RationalPolynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.is_zero()) {
    throw Error(ErrorCode::DivisionByZero, "element " + to_string() + " is a zero divisor; the minimal polynomial " +
                                               field_->modulus().to_string() + " is reducible");
  }
  const Rational c = r1.coeff(0);
  std::vector<Rational> inv = to_coords(s1, d);
  for (auto& v : inv) v /= c;
  FieldElement out(field_, std::move(inv));
  return out;
}

FieldElement FieldElement::pow(std::int64_t exponent) const {
  FieldElement base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1 : static_cast<std::uint64_t>(exponent);
  FieldElement acc = one(field_);
  while (e > 0) {
    if (e & 1U) acc *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return acc;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return same_field(a.field_, b.field_) && a.coeffs_ == b.coeffs_;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    if (i == 0) {
      os << sepkit::to_string(mag);
    } else {
      if (mag != 1) os << sepkit::to_string(mag) << "*";
      os << "a";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw Error(ErrorCode::SchemaError, "unknown arithmetic operation");
}

// ---------------------------------------------------------------------------
// Roots of unity and rank

namespace {

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

std::vector<std::uint64_t> root_of_unity_candidates(std::size_t degree) {
  // phi(n) >= sqrt(n/2), so phi(n) <= d forces n <= 2d^2.
  const std::uint64_t bound = 2 * static_cast<std::uint64_t>(degree) * degree;
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= std::max<std::uint64_t>(bound, 2); ++n) {
    if (euler_phi(n) <= degree) out.push_back(n);
  }
  return out;
}

std::optional<std::uint64_t> is_root_of_unity(const FieldElement& u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroElement, "zero is not a root of unity candidate");
  for (std::uint64_t n : root_of_unity_candidates(u.field()->degree())) {
    if (u.pow(static_cast<std::int64_t>(n)).is_one()) return n;
  }
  return std::nullopt;
}

std::size_t integer_matrix_rank(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Integer p = rows[rank][col];
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      const Integer f = rows[i][col];
      for (std::size_t j = col; j < ncols; ++j) {
        Integer v = rows[i][j] * p - f * rows[rank][j];
        Integer rem;
        mpz_tdiv_qr(v.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        if (rem != 0) throw std::logic_error("Bareiss step produced an inexact division");
        rows[i][j] = std::move(v);
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

std::size_t rational_span_dimension(std::span<const FieldElement> elems) {
  if (elems.empty()) return 0;
  std::vector<std::vector<Integer>> rows;
  rows.reserve(elems.size());
  for (const auto& e : elems) {
    if (!same_field(e.field(), elems.front().field())) {
      throw Error(ErrorCode::FieldMismatch, "rational_span_dimension: elements from different fields");
    }
    Integer lcm_den = 1;
    for (const auto& c : e.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> row;
    row.reserve(e.coeffs().size());
    for (const auto& c : e.coeffs()) row.push_back(c.get_num() * (lcm_den / c.get_den()));
    rows.push_back(std::move(row));
  }
  return integer_matrix_rank(std::move(rows));
}

std::vector<std::string> element_to_strings(const FieldElement& e) {
  std::vector<std::string> out;
  out.reserve(e.coeffs().size());
  for (const auto& c : e.coeffs()) out.push_back(to_string(c));
  return out;
}

FieldElement element_from_strings(const FieldPtr& field, std::span<const std::string> parts) {
  if (parts.size() != field->degree()) {
    throw Error(ErrorCode::BadFieldElement, "expected " + std::to_string(field->degree()) +
                                                " rational coordinates, got " + std::to_string(parts.size()));
  }
  std::vector<Rational> coeffs;
  coeffs.reserve(parts.size());
  for (const auto& p : parts) coeffs.push_back(parse_rational(p));
  return FieldElement(field, std::move(coeffs));
}

}  // namespace sepkit
