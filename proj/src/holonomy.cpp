#include "sepkit/holonomy.hpp"

#include "sepkit/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace sepkit {

std::string_view to_string(RepresentationKind kind) {
  switch (kind) {
    case RepresentationKind::Trivial: return "trivial";
    case RepresentationKind::Torsion: return "torsion";
    case RepresentationKind::Infinite: return "infinite";
    case RepresentationKind::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

namespace {

struct Endpoints {
  std::vector<std::size_t> tail;
  std::vector<std::size_t> head;
};

Endpoints endpoints(const DualGraph& g) {
  Endpoints e;
  for (const auto& c : g.crossings) {
    e.tail.push_back(g.index_of(c.tail));
    e.head.push_back(g.index_of(c.head));
  }
  return e;
}

// Parent links of a rooted spanning tree: for each vertex the tree crossing
// leading towards the root.
struct RootedTree {
  std::vector<std::optional<std::size_t>> parent_edge;
  std::vector<std::size_t> depth;
};

RootedTree root_tree(const DualGraph& g, const Endpoints& ep, std::span<const std::size_t> tree) {
  const std::size_t n = g.components.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e : tree) {
    adj[ep.tail[e]].push_back(e);
    adj[ep.head[e]].push_back(e);
  }
  RootedTree rt{std::vector<std::optional<std::size_t>>(n), std::vector<std::size_t>(n, 0)};
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : adj[v]) {
      std::size_t w = ep.tail[e] == v ? ep.head[e] : ep.tail[e];
      if (seen[w]) continue;
      seen[w] = true;
      ++reached;
      rt.parent_edge[w] = e;
      rt.depth[w] = rt.depth[v] + 1;
      queue.push_back(w);
    }
  }
  if (reached != n || tree.size() + 1 != n) {
    throw Error(ErrorCode::SchemaError, "crossing set is not a spanning tree of the dual graph");
  }
  return rt;
}

std::size_t other_end(const Endpoints& ep, std::size_t e, std::size_t v) {
  return ep.tail[e] == v ? ep.head[e] : ep.tail[e];
}

}  // namespace

CycleBasis cycle_basis_from_tree(const DualGraph& g, std::span<const std::size_t> tree) {
  const Endpoints ep = endpoints(g);
  const RootedTree rt = root_tree(g, ep, tree);
  std::vector<bool> in_tree(g.crossings.size(), false);
  for (std::size_t e : tree) in_tree[e] = true;

  CycleBasis basis;
  basis.tree.assign(tree.begin(), tree.end());
  for (std::size_t e = 0; e < g.crossings.size(); ++e) {
    if (in_tree[e]) continue;
    // tail -> head along e, then back from head to tail through the tree:
    // climb from head to the common ancestor, then descend to tail.
    std::vector<DirectedStep> cycle{{e, true}};
    std::size_t a = ep.head[e], b = ep.tail[e];
    std::vector<DirectedStep> up, down;
    while (a != b) {
      if (rt.depth[a] >= rt.depth[b]) {
        std::size_t pe = *rt.parent_edge[a];
        std::size_t next = other_end(ep, pe, a);
        up.push_back({pe, ep.tail[pe] == a});
        a = next;
      } else {
        std::size_t pe = *rt.parent_edge[b];
        std::size_t next = other_end(ep, pe, b);
        // traversed later from `next` down to `b`
        down.push_back({pe, ep.tail[pe] == next});
        b = next;
      }
    }
    cycle.insert(cycle.end(), up.begin(), up.end());
    cycle.insert(cycle.end(), down.rbegin(), down.rend());
    basis.cycles.push_back(std::move(cycle));
  }
  return basis;
}

CycleBasis cycle_basis(const DualGraph& g) {
  const std::size_t n = g.components.size();
  const Endpoints ep = endpoints(g);
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < g.crossings.size(); ++e) {
    incident[ep.tail[e]].push_back(e);
    incident[ep.head[e]].push_back(e);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> tree;
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e : incident[v]) {
      std::size_t w = other_end(ep, e, v);
      if (seen[w]) continue;
      seen[w] = true;
      tree.push_back(e);
      queue.push_back(w);
    }
  }
  if (tree.size() + 1 != n) throw Error(ErrorCode::Disconnected, "dual graph is not connected");
  std::sort(tree.begin(), tree.end());
  return cycle_basis_from_tree(g, tree);
}

FieldElement edge_weight(const DualGraph& g, std::size_t index, bool forward, Convention convention) {
  const Crossing& c = g.crossings.at(index);
  const auto* nd = std::get_if<NonDegenerateCrossing>(&c.kind);
  if (!nd) throw Error(ErrorCode::SaddleNodePresent, "crossing " + c.id + " is a saddle-node; its weight is undefined");
  FieldElement delta = convention == Convention::HeadSide ? -nd->cs_tail.inverse() : -nd->cs_tail;
  return forward ? delta : delta.inverse();
}

std::optional<FieldElement> cycle_holonomy(const DualGraph& g, std::span<const DirectedStep> cycle,
                                           Convention convention) {
  FieldElement acc = FieldElement::one(g.field);
  for (const auto& step : cycle) {
    if (g.crossings.at(step.crossing).is_saddle_node()) return std::nullopt;
    acc *= edge_weight(g, step.crossing, step.forward, convention);
  }
  return acc;
}

RepresentationClass classify(const DualGraph& g, const CycleBasis& basis, Convention convention) {
  RepresentationClass rc;
  bool infinite = false;
  std::uint64_t lcm = 1;
  for (std::size_t i = 0; i < basis.cycles.size(); ++i) {
    CycleHolonomy h{basis.cycles[i], cycle_holonomy(g, basis.cycles[i], convention), std::nullopt};
    if (!h.value) {
      rc.indeterminate_cycles.push_back(i);
    } else {
      h.order = is_root_of_unity(*h.value);
      if (h.order) {
        lcm = std::lcm(lcm, *h.order);
      } else {
        infinite = true;
      }
    }
    rc.holonomies.push_back(std::move(h));
  }
  if (!rc.indeterminate_cycles.empty()) {
    rc.kind = RepresentationKind::Indeterminate;
  } else if (infinite) {
    rc.kind = RepresentationKind::Infinite;
  } else if (lcm > 1) {
    rc.kind = RepresentationKind::Torsion;
    rc.order = lcm;
  } else {
    rc.kind = RepresentationKind::Trivial;
  }
  return rc;
}

RepresentationClass representation_class(const DualGraph& g, Convention convention) {
  return classify(g, cycle_basis(g), convention);
}

Divisor ResidualDivisor::as_divisor() const {
  Divisor d;
  for (const auto& [id, v] : residues) d.coefficients.emplace(id, v);
  for (const auto& [id, v] : separatrix_residues) d.coefficients.emplace(id, v);
  return d;
}

ResidualDivisor residual_divisor(const DualGraph& g) {
  for (const auto& c : g.crossings) {
    if (c.is_saddle_node()) {
      throw Error(ErrorCode::SaddleNodePresent,
                  "crossing " + c.id + " is a saddle-node; residue ratios are undefined across it");
    }
  }
  const std::size_t n = g.components.size();
  const Endpoints ep = endpoints(g);
  const CycleBasis basis = cycle_basis(g);
  const RootedTree rt = root_tree(g, ep, basis.tree);

  // Vertices in BFS order from the root so parents are resolved first.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rt.depth[a] < rt.depth[b]; });

  std::vector<std::optional<FieldElement>> res(n);
  res[0] = FieldElement::one(g.field);
  for (std::size_t v : order) {
    if (v == 0) continue;
    const std::size_t e = *rt.parent_edge[v];
    const FieldElement delta = edge_weight(g, e, true);
    // residue(tail) = delta * residue(head)
    if (ep.head[e] == v) {
      res[v] = *res[ep.tail[e]] / delta;
    } else {
      res[v] = delta * *res[ep.head[e]];
    }
  }

  for (std::size_t e = 0; e < g.crossings.size(); ++e) {
    if (!(*res[ep.tail[e]] == edge_weight(g, e, true) * *res[ep.head[e]])) {
      throw Error(ErrorCode::NontrivialRepresentation,
                  "residues cannot be propagated consistently across crossing " + g.crossings[e].id +
                      "; the residual representation is not trivial");
    }
  }

  ResidualDivisor rd;
  for (std::size_t v = 0; v < n; ++v) {
    rd.residues.emplace_back(g.components[v].id, *res[v]);
    for (const auto& s : g.components[v].smooth_singularities) {
      // An unspecified weak-side index leaves the germ's residue undefined.
      if (!s.cs && s.kind != SingularityKind::SaddleNodeStrongOnC) continue;
      const FieldElement cs = s.cs ? *s.cs : FieldElement::zero(g.field);
      rd.separatrix_residues.emplace_back(s.id, -cs * *res[v]);
    }
  }
  return rd;
}

}  // namespace sepkit
