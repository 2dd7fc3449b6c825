#include "support.hpp"

#include "sepkit/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace testkit {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string data_path(const std::string& name) { return std::string(SEPKIT_TEST_DATA) + "/" + name; }

DualGraph load(const std::string& name) { return parse_graph(read_file(data_path(name))); }

FieldPtr field_q() { return NumberField::rationals(); }
FieldPtr field_gauss() {
  static const FieldPtr f = NumberField::create({Rational(1), Rational(0)});
  return f;
}
FieldPtr field_sqrt2() {
  static const FieldPtr f = NumberField::create({Rational(-2), Rational(0)});
  return f;
}
FieldPtr field_eisenstein() {
  static const FieldPtr f = NumberField::create({Rational(1), Rational(1)});
  return f;
}

Rational random_rational(Rng& rng, std::int64_t max_abs) {
  return make_rational(rng.between(-max_abs, max_abs), rng.between(1, max_abs));
}

FieldElement random_nonzero(Rng& rng, const FieldPtr& field) {
  for (;;) {
    std::vector<Rational> c(field->degree());
    for (auto& x : c) x = random_rational(rng);
    FieldElement e(field, c);
    if (!e.is_zero()) return e;
  }
}

FieldElement random_root_of_unity(Rng& rng, const FieldPtr& field) {
  const FieldElement sign = rng.chance(50) ? FieldElement::one(field) : -FieldElement::one(field);
  if (field->degree() == 1 || field == field_sqrt2()) return sign;
  return sign * FieldElement::generator(field).pow(rng.between(0, 3));
}

namespace {

FieldPtr random_field(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return field_q();
    case 1: return field_gauss();
    case 2: return field_sqrt2();
    default: return field_eisenstein();
  }
}

std::string cid(std::size_t i) { return "E" + std::to_string(i + 1); }

struct Skeleton {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::int64_t> degree;
};

Skeleton random_skeleton(Rng& rng, std::size_t n, std::size_t extra) {
  Skeleton s;
  s.degree.assign(n, 0);
  auto add = [&](std::size_t a, std::size_t b) {
    if (rng.chance(50)) std::swap(a, b);
    s.edges.emplace_back(a, b);
    ++s.degree[a];
    ++s.degree[b];
  };
  for (std::size_t i = 1; i < n; ++i) add(rng.below(i), i);
  for (std::size_t k = 0; k < extra && n >= 2; ++k) {
    std::size_t a = rng.below(n), b = rng.below(n - 1);
    if (b >= a) ++b;
    add(a, b);
  }
  return s;
}

}  // namespace

DualGraph random_cycle_graph(Rng& rng, const CycleGraphOptions& opt) {
  DualGraph g;
  g.field = random_field(rng);
  const std::size_t n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(opt.min_n),
                                                             static_cast<std::int64_t>(opt.max_n)));
  const std::size_t extra = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(opt.min_extra),
                                                                 static_cast<std::int64_t>(opt.max_extra)));
  const Skeleton sk = random_skeleton(rng, n, extra);
  for (std::size_t i = 0; i < n; ++i) {
    Component c;
    c.id = cid(i);
    c.self_intersection = -(sk.degree[i] + 1 + rng.between(0, 2));
    g.components.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < sk.edges.size(); ++k) {
    const auto [a, b] = sk.edges[k];
    Crossing c{"p" + std::to_string(k + 1), cid(a), cid(b), SaddleNodeCrossing{}};
    if (rng.chance(opt.saddle_node_percent)) {
      c.kind = SaddleNodeCrossing{rng.chance(50) ? c.tail : c.head, random_nonzero(rng, g.field)};
    } else if (rng.chance(opt.root_of_unity_percent)) {
      c.kind = NonDegenerateCrossing{-random_root_of_unity(rng, g.field)};
    } else {
      c.kind = NonDegenerateCrossing{random_nonzero(rng, g.field)};
    }
    g.crossings.push_back(std::move(c));
  }
  if (opt.pad) pad_vertex_sums(g);
  return g;
}

DualGraph random_trivial_graph(Rng& rng, std::size_t n, std::size_t extra, const FieldPtr& field) {
  DualGraph g;
  g.field = field;
  const Skeleton sk = random_skeleton(rng, n, extra);
  std::vector<FieldElement> mu;
  for (std::size_t i = 0; i < n; ++i) {
    mu.push_back(random_nonzero(rng, field));
    Component c;
    c.id = cid(i);
    c.self_intersection = -(sk.degree[i] + 1 + rng.between(0, 2));
    g.components.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < sk.edges.size(); ++k) {
    const auto [a, b] = sk.edges[k];
    g.crossings.push_back(
        Crossing{"p" + std::to_string(k + 1), cid(a), cid(b), NonDegenerateCrossing{-(mu[b] / mu[a])}});
  }
  pad_vertex_sums(g);
  return g;
}

DualGraph random_negative_definite_graph(Rng& rng, std::size_t n) {
  for (;;) {
    DualGraph g;
    g.field = field_q();
    const Skeleton sk = random_skeleton(rng, n, static_cast<std::size_t>(rng.between(0, 2)));
    for (std::size_t i = 0; i < n; ++i) {
      Component c;
      c.id = cid(i);
      c.self_intersection = -(sk.degree[i] + rng.between(0, 2));
      if (c.self_intersection == 0) c.self_intersection = -1;
      g.components.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < sk.edges.size(); ++k) {
      const auto [a, b] = sk.edges[k];
      g.crossings.push_back(Crossing{"p" + std::to_string(k + 1), cid(a), cid(b),
                                     NonDegenerateCrossing{-FieldElement::one(g.field)}});
    }
    if (negative_definite_oracle(intersection_matrix(g).as_integers())) return g;
  }
}

DualGraph relabel(const DualGraph& g, Rng& rng) {
  const std::size_t n = g.components.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

  std::map<std::string, std::string> rename;
  for (std::size_t pos = 0; pos < n; ++pos) rename[g.components[perm[pos]].id] = "R" + std::to_string(pos);

  DualGraph out;
  out.field = g.field;
  out.closed_world = g.closed_world;
  for (std::size_t pos = 0; pos < n; ++pos) {
    Component c = g.components[perm[pos]];
    c.id = rename.at(c.id);
    for (auto& s : c.smooth_singularities)
      if (s.attached_to) s.attached_to = rename.at(*s.attached_to);
    out.components.push_back(std::move(c));
  }
  for (Crossing c : g.crossings) {
    c.tail = rename.at(c.tail);
    c.head = rename.at(c.head);
    if (auto* sn = std::get_if<SaddleNodeCrossing>(&c.kind)) sn->weak = rename.at(sn->weak);
    out.crossings.push_back(std::move(c));
  }
  if (g.gorenstein) {
    GorensteinData gd{g.gorenstein->k, {}};
    for (const auto& [id, a] : g.gorenstein->a) gd.a[rename.at(id)] = a;
    out.gorenstein = std::move(gd);
  }
  return out;
}

DualGraph flip_some(const DualGraph& g, Rng& rng) {
  DualGraph out = g;
  for (auto& c : out.crossings) {
    if (!rng.chance(50)) continue;
    std::swap(c.tail, c.head);
    if (auto* nd = std::get_if<NonDegenerateCrossing>(&c.kind)) nd->cs_tail = nd->cs_tail.inverse();
  }
  return out;
}

std::size_t rank_oracle(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Rational pivot = rows[rank][c];
    for (auto& x : rows[rank]) x /= pivot;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c];
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

Integer det_oracle(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Integer term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

bool negative_definite_oracle(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(-m[i][j]);
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return n > 0;
}

std::vector<std::vector<Rational>> coordinate_rows(const std::vector<FieldElement>& elems) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& e : elems) {
    std::vector<Rational> r(e.field()->degree());
    for (std::size_t i = 0; i < e.coeffs().size() && i < r.size(); ++i) r[i] = e.coeffs()[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::set<std::string>> toma_oracle(const DualGraph& g) {
  const std::size_t n = g.components.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& c : g.crossings) {
    if (c.is_saddle_node()) continue;
    const std::size_t a = g.index_of(c.tail), b = g.index_of(c.head);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> label(n, -1);
  std::vector<std::set<std::string>> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::set<std::string> members;
    std::vector<std::size_t> stack{s};
    label[s] = static_cast<int>(comps.size());
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      members.insert(g.components[v].id);
      for (std::size_t w : adj[v]) {
        if (label[w] < 0) {
          label[w] = label[s];
          stack.push_back(w);
        }
      }
    }
    comps.push_back(std::move(members));
  }
  std::vector<std::set<std::string>> out;
  for (const auto& comp : comps) {
    bool incoming = false;
    for (const auto& c : g.crossings) {
      const auto* sn = std::get_if<SaddleNodeCrossing>(&c.kind);
      if (sn && comp.count(sn->weak)) incoming = true;
    }
    if (!incoming) out.push_back(comp);
  }
  return out;
}

}  // namespace testkit
