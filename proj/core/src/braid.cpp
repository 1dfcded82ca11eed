// SPDX-License-Identifier: Apache-2.0
#include "blockset/braid.hpp"

#include <algorithm>

#include "blockset/error.hpp"

namespace blockset {

Space braid_space(const BraidSpec& spec) {
  if (spec.m < 2) throw Error(ErrorKind::InvalidArgument, "braid arrangement needs at least two coordinates");
  return spec.kind == SpaceKind::projective ? Space(SpaceKind::projective, spec.m - 1, spec.q)
                                            : Space(SpaceKind::affine, spec.m, spec.q);
}

Arrangement braid_arrangement(const Space& space) {
  const Field& f = space.field();
  const std::size_t vars = space.coord_count();
  const std::size_t len = static_cast<std::size_t>(space.dim()) + 1;
  std::vector<Coords> forms;
  for (std::size_t i = 0; i < vars; ++i) {
    for (std::size_t j = i + 1; j < vars; ++j) {
      Coords c(len, 0);
      c[i] = 1;
      c[j] = f.neg(1);
      forms.push_back(std::move(c));
    }
  }
  return Arrangement(space, forms, "braid");
}

Arrangement braid_arrangement(const Space& space, const BraidSpec& spec) {
  if (static_cast<std::size_t>(spec.m) != space.coord_count() || spec.kind != space.kind() || spec.q != space.q()) {
    throw Error(ErrorKind::DimensionMismatch, "braid on " + std::to_string(spec.m) + " coordinates does not fit " +
                                                  space.label());
  }
  return braid_arrangement(space);
}

Arrangement braid_arrangement(const BraidSpec& spec) { return braid_arrangement(braid_space(spec)); }

std::vector<Point> braid_complement_points(const BraidSpec& spec) {
  if (spec.kind != SpaceKind::affine) {
    throw Error(ErrorKind::InvalidArgument, "direct enumeration covers the affine braid complement only");
  }
  std::vector<Point> out;
  if (spec.m < 1 || static_cast<std::uint32_t>(spec.m) > spec.q) return out;
  const std::size_t m = static_cast<std::size_t>(spec.m);
  Coords current(m, 0);
  std::vector<char> used(spec.q, 0);
  // Depth-first over coordinates, values ascending: lexicographic order.
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == m) {
      PointIndex index = 0;
      for (auto c : current) index = index * spec.q + c;
      out.push_back(Point{current, index});
      return;
    }
    for (Element v = 0; v < spec.q; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      current[pos] = v;
      self(self, pos + 1);
      used[v] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

std::optional<Escape> escape_parameter(const Field& f, std::span<const Element> x, std::span<const Element> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "points of different dimensions");
  if (std::equal(x.begin(), x.end(), y.begin())) throw Error(ErrorKind::IdenticalPoints, "x and y coincide");
  Coords diff(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) diff[k] = f.sub(x[k], y[k]);
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  for (std::size_t i = 0; i < diff.size() && !pair; ++i) {
    for (std::size_t j = i + 1; j < diff.size(); ++j) {
      if (diff[i] != diff[j]) {
        pair.emplace(i, j);
        break;
      }
    }
  }
  if (!pair) return std::nullopt;
  const auto [i, j] = *pair;
  Escape e;
  e.i = i;
  e.j = j;
  e.t0 = f.div(f.sub(y[j], y[i]), f.sub(diff[i], diff[j]));
  e.point.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) e.point[k] = f.add(y[k], f.mul(e.t0, diff[k]));
  e.on_hyperplane = e.point[i] == e.point[j];
  return e;
}

std::vector<Flat> braid_lines(std::uint32_t q, std::optional<int> m) {
  const int dim = m.value_or(static_cast<int>(q));
  Space space(SpaceKind::affine, dim, q);
  const auto points = braid_complement_points(BraidSpec{dim, q, SpaceKind::affine});
  std::vector<char> seen(space.point_count(), 0);
  const Coords ones(static_cast<std::size_t>(dim), 1);
  std::vector<Flat> lines;
  for (const auto& p : points) {
    if (seen[p.index]) continue;
    auto line = flat_from_generators(space, {ones}, p.coords);
    for (auto idx : line.points) seen[idx] = 1;
    lines.push_back(std::move(line));
  }
  // One direction, so canonical order is base-point order.
  std::sort(lines.begin(), lines.end(), [](const Flat& a, const Flat& b) { return a.base < b.base; });
  return lines;
}

BlockingInstance braid_line_instance(std::uint32_t q, std::optional<int> m) {
  const int dim = m.value_or(static_cast<int>(q));
  Space space(SpaceKind::affine, dim, q);
  return build_instance(space, braid_arrangement(space), dim - 1, Scope::contained);
}

IndexSet braid_transversal(std::uint32_t q, const std::optional<IndexSet>& selection, std::optional<int> m) {
  const int dim = m.value_or(static_cast<int>(q));
  if (q < 2 || dim < 2) throw Error(ErrorKind::InvalidArgument, "transversal needs q >= 2 and m >= 2");
  const auto lines = braid_lines(q, dim);
  IndexSet chosen;
  if (!selection) {
    for (const auto& line : lines) chosen.push_back(line.points.front());
  } else {
    std::vector<int> hits(lines.size(), 0);
    for (auto p : *selection) {
      auto it = std::find_if(lines.begin(), lines.end(), [&](const Flat& l) { return l.contains(p); });
      if (it == lines.end()) {
        throw Error(ErrorKind::BadChooser, "point " + std::to_string(p) + " lies on no (1,...,1)-line of the complement");
      }
      if (++hits[static_cast<std::size_t>(it - lines.begin())] > 1) {
        throw Error(ErrorKind::BadChooser, "selection picks two points from one line");
      }
      chosen.push_back(p);
    }
    if (std::find(hits.begin(), hits.end(), 0) != hits.end()) {
      throw Error(ErrorKind::BadChooser, "selection misses a line");
    }
  }
  std::sort(chosen.begin(), chosen.end());
  if (!is_blocking(braid_line_instance(q, dim), chosen)) {
    throw Error(ErrorKind::PreconditionFailed, "transversal does not block the contained lines");
  }
  return chosen;
}

std::string to_string(BraidOutcome outcome) {
  switch (outcome) {
    case BraidOutcome::empty:
      return "empty";
    case BraidOutcome::exists:
      return "exists";
    case BraidOutcome::vacuous:
      return "vacuous";
    case BraidOutcome::not_exists:
      return "not-exists";
    case BraidOutcome::timeout:
      return "timeout";
  }
  return "empty";
}

BraidExistence braid_existence(int n, std::uint32_t q, int t, Convention convention, Scope scope, SpaceKind kind,
                               const SearchOptions& search) {
  Space space(kind, n, q);
  const auto arr = braid_arrangement(space);
  const auto comp = complement(space, arr);
  BraidExistence out;
  out.complement_size = comp.size();
  const bool expect_empty = kind == SpaceKind::projective ? static_cast<std::uint32_t>(n) + 1 > q
                                                          : static_cast<std::uint32_t>(n) > q;
  if (comp.empty() != expect_empty) {
    throw Error(ErrorKind::PreconditionFailed, "braid complement size contradicts the pigeonhole count");
  }
  if (comp.empty()) {
    out.method = "empty";
    out.verified = true;
    return out;
  }

  const auto inst = build_instance(space, arr, t, scope);
  out.family_size = inst.family.size();
  if (kind == SpaceKind::affine && scope == Scope::contained && inst.blocked_dim == 1 && n >= 2) {
    out.outcome = BraidOutcome::exists;
    out.method = "transversal";
    out.witness = braid_transversal(q, std::nullopt, n);
  } else {
    SearchOptions o = search;
    o.require_nontrivial = convention == Convention::nontrivial;
    const auto r = min_blocking_set(inst, o);
    out.method = "search";
    switch (r.verdict) {
      case Verdict::exists:
        out.outcome = BraidOutcome::exists;
        break;
      case Verdict::vacuous:
        out.outcome = BraidOutcome::vacuous;
        break;
      case Verdict::not_exists:
        out.outcome = BraidOutcome::not_exists;
        break;
      case Verdict::timeout:
        out.outcome = BraidOutcome::timeout;
        return out;
    }
    if (r.verdict == Verdict::exists || r.verdict == Verdict::vacuous) out.witness = r.witness;
  }
  if (out.witness) {
    out.verified = is_blocking(inst, *out.witness) &&
                   (convention != Convention::nontrivial || is_nontrivial(inst, *out.witness)) &&
                   (convention != Convention::minimal || inst.vacuous() || is_minimal(inst, *out.witness));
  }
  return out;
}

}  // namespace blockset
