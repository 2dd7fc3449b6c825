#include "sepkit/intersection.hpp"

#include "sepkit/error.hpp"

namespace sepkit {

std::vector<std::vector<Integer>> IntersectionMatrix::as_integers() const {
  std::vector<std::vector<Integer>> out(order(), std::vector<Integer>(order()));
  for (std::size_t i = 0; i < order(); ++i)
    for (std::size_t j = 0; j < order(); ++j) out[i][j] = static_cast<long>(entries[i][j]);
  return out;
}

IntersectionMatrix intersection_matrix(const DualGraph& g) {
  IntersectionMatrix m;
  const std::size_t n = g.components.size();
  m.entries.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m.ids.push_back(g.components[i].id);
    m.entries[i][i] = g.components[i].self_intersection;
  }
  for (const auto& c : g.crossings) {
    const std::size_t t = g.index_of(c.tail), h = g.index_of(c.head);
    ++m.entries[t][h];
    ++m.entries[h][t];
  }
  return m;
}

Integer determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Definiteness definiteness(const std::vector<std::vector<Integer>>& m) {
  Definiteness d;
  d.determinant = determinant(m);
  d.invertible = d.determinant != 0;

  // Bareiss without pivoting: after step k the (k+1, k+1) entry is the
  // leading principal minor of order k + 2.
  std::vector<std::vector<Integer>> w = m;
  const std::size_t n = w.size();
  Integer prev = 1;
  bool all_signed_positive = n > 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Integer minor = w[k][k];
    d.leading_minors.push_back(minor);
    // (-1)^(k+1) * minor_(k+1) > 0
    const bool ok = (k % 2 == 0) ? minor < 0 : minor > 0;
    if (!ok) all_signed_positive = false;
    if (minor == 0) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = w[i][j] * w[k][k] - w[i][k] * w[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        w[i][j] = std::move(v);
      }
    }
    prev = w[k][k];
  }
  d.negative_definite = all_signed_positive && d.leading_minors.size() == n;
  return d;
}

Definiteness definiteness(const IntersectionMatrix& m) { return definiteness(m.as_integers()); }

std::vector<std::pair<std::string, FieldElement>> divisor_pairing(const DualGraph& g, const Divisor& r) {
  const std::size_t n = g.components.size();
  std::vector<FieldElement> comp_coeff(n, FieldElement::zero(g.field));
  std::vector<FieldElement> germ_sum(n, FieldElement::zero(g.field));

  for (const auto& [key, value] : r.coefficients) {
    if (auto v = g.find(key)) {
      comp_coeff[*v] = value;
      continue;
    }
    bool found = false;
    for (std::size_t v = 0; v < n && !found; ++v) {
      for (const auto& s : g.components[v].smooth_singularities) {
        if (s.id == key) {
          germ_sum[v] += value;  // S_k . C_j = 1 on the host, 0 elsewhere
          found = true;
          break;
        }
      }
    }
    if (!found) throw Error(ErrorCode::UnknownId, "divisor key \"" + key + "\" is neither a component nor a singularity");
  }

  const IntersectionMatrix m = intersection_matrix(g);
  std::vector<std::pair<std::string, FieldElement>> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    FieldElement acc = germ_sum[j];
    for (std::size_t i = 0; i < n; ++i) {
      if (m.entries[i][j] != 0) acc += comp_coeff[i] * FieldElement::from_int(g.field, static_cast<long>(m.entries[i][j]));
    }
    out.emplace_back(g.components[j].id, std::move(acc));
  }
  return out;
}

}  // namespace sepkit
