// SPDX-License-Identifier: Apache-2.0
#include "blockset/instance.hpp"

#include <algorithm>
#include <sstream>

#include "blockset/error.hpp"

namespace blockset {

std::string to_string(Scope scope) { return scope == Scope::contained ? "contained" : "touching"; }

std::string to_string(Convention convention) {
  switch (convention) {
    case Convention::plain:
      return "plain";
    case Convention::minimal:
      return "minimal";
    case Convention::nontrivial:
      return "nontrivial";
  }
  return "plain";
}

Scope parse_scope(const std::string& text) {
  if (text == "contained") return Scope::contained;
  if (text == "touching") return Scope::touching;
  throw Error(ErrorKind::InvalidArgument, "unknown scope '" + text + "' (expected contained or touching)");
}

Convention parse_convention(const std::string& text) {
  if (text == "plain") return Convention::plain;
  if (text == "minimal") return Convention::minimal;
  if (text == "nontrivial") return Convention::nontrivial;
  throw Error(ErrorKind::InvalidArgument, "unknown convention '" + text + "' (expected plain, minimal or nontrivial)");
}

std::string BlockingInstance::describe() const {
  std::ostringstream os;
  os << space.label() << " minus " << arrangement.size() << " hyperplane(s), t=" << t << ", " << to_string(scope)
     << ": universe " << universe.size() << ", family " << family.size() << ", forbidden " << forbidden.size();
  return os.str();
}

namespace {

void collect(const ComplementSet& comp, int d, Scope scope, std::vector<IndexSet>& traces,
             std::vector<Flat>& origins) {
  if (d > comp.space.dim()) return;
  if (scope == Scope::contained) {
    for (auto& flat : flats_in_complement(comp, d)) {
      traces.push_back(flat.points);
      origins.push_back(std::move(flat));
    }
  } else {
    for (auto& tr : touching_traces(comp, d)) {
      traces.push_back(std::move(tr.points));
      origins.push_back(std::move(tr.origin));
    }
  }
}

std::vector<char> membership(const BlockingInstance& inst, const IndexSet& points) {
  std::vector<char> in_universe(inst.space.point_count(), 0);
  for (auto p : inst.universe) in_universe[p] = 1;
  std::vector<char> mask(inst.space.point_count(), 0);
  for (auto p : points) {
    if (p >= mask.size() || !in_universe[p]) {
      throw Error(ErrorKind::NotInUniverse, "point " + std::to_string(p) + " is not in the complement");
    }
    mask[p] = 1;
  }
  return mask;
}

}  // namespace

BlockingInstance build_instance_with_dims(const Space& space, const Arrangement& arr, int t, int blocked_dim,
                                          int forbidden_dim, Scope scope) {
  if (blocked_dim < 0 || forbidden_dim < 0) {
    throw Error(ErrorKind::DimensionOutOfRange, "flat dimensions must be nonnegative");
  }
  auto comp = complement(space, arr);
  BlockingInstance inst{space, arr, t, scope, blocked_dim, forbidden_dim, comp.members, {}, {}, {}, {}};
  collect(comp, blocked_dim, scope, inst.family, inst.family_origin);
  collect(comp, forbidden_dim, scope, inst.forbidden, inst.forbidden_origin);
  return inst;
}

BlockingInstance build_instance(const Space& space, const Arrangement& arr, int t, Scope scope) {
  if (t < 1 || t > space.dim()) {
    throw Error(ErrorKind::DimensionOutOfRange,
                "blocking level t=" + std::to_string(t) + " outside 1.." + std::to_string(space.dim()));
  }
  return build_instance_with_dims(space, arr, t, space.dim() - t, t, scope);
}

std::optional<std::size_t> first_unblocked(const BlockingInstance& inst, const IndexSet& points) {
  const auto mask = membership(inst, points);
  for (std::size_t i = 0; i < inst.family.size(); ++i) {
    const auto& f = inst.family[i];
    if (std::none_of(f.begin(), f.end(), [&](PointIndex p) { return mask[p] != 0; })) return i;
  }
  return std::nullopt;
}

bool is_blocking(const BlockingInstance& inst, const IndexSet& points) { return !first_unblocked(inst, points); }

bool is_minimal(const BlockingInstance& inst, const IndexSet& points) {
  if (!is_blocking(inst, points)) throw Error(ErrorKind::NotBlocking, "set does not block the family");
  const auto mask = membership(inst, points);
  std::vector<char> has_private(inst.space.point_count(), 0);
  for (const auto& f : inst.family) {
    PointIndex only = 0;
    int hits = 0;
    for (auto p : f) {
      if (mask[p]) {
        only = p;
        if (++hits > 1) break;
      }
    }
    if (hits == 1) has_private[only] = 1;
  }
  return std::all_of(points.begin(), points.end(), [&](PointIndex p) { return has_private[p] != 0; });
}

bool is_nontrivial(const BlockingInstance& inst, const IndexSet& points) {
  const auto mask = membership(inst, points);
  return std::none_of(inst.forbidden.begin(), inst.forbidden.end(), [&](const IndexSet& g) {
    return std::all_of(g.begin(), g.end(), [&](PointIndex p) { return mask[p] != 0; });
  });
}

IndexSet minimalize(const BlockingInstance& inst, IndexSet points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  // Each pass removes the largest point lacking a private trace.
  for (;;) {
    const auto mask = membership(inst, points);
    std::vector<int> hits(inst.family.size(), 0);
    std::vector<char> has_private(inst.space.point_count(), 0);
    for (std::size_t i = 0; i < inst.family.size(); ++i) {
      PointIndex only = 0;
      for (auto p : inst.family[i]) {
        if (mask[p]) {
          only = p;
          ++hits[i];
        }
      }
      if (hits[i] == 1) has_private[only] = 1;
    }
    auto it = std::find_if(points.rbegin(), points.rend(), [&](PointIndex p) { return !has_private[p]; });
    if (it == points.rend()) return points;
    points.erase(std::next(it).base());
  }
}

}  // namespace blockset
