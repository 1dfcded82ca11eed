// SPDX-License-Identifier: Apache-2.0
#include "blockset/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "blockset/braid.hpp"
#include "blockset/error.hpp"

namespace blockset {

namespace {

std::string describe_points(const Space& space, const IndexSet& points) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) os << ' ';
    os << '(';
    auto c = space.coords(points[i]);
    for (std::size_t j = 0; j < c.size(); ++j) os << (j ? "," : "") << c[j];
    os << ')';
  }
  os << '}';
  return os.str();
}

Element dot(const Field& f, std::span<const Element> a, std::span<const Element> b) {
  Element acc = 0;
  for (std::size_t i = 0; i < b.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace

Restriction induced_instance(const BlockingInstance& inst, const Flat& subspace) {
  const Space& ambient = inst.space;
  const int d = subspace.dim;
  if (d <= inst.blocked_dim) {
    throw Error(ErrorKind::DimensionTooSmall, "subspace of dimension " + std::to_string(d) +
                                                  " contains no blocking problem for flats of dimension " +
                                                  std::to_string(inst.blocked_dim));
  }
  std::vector<char> in_universe(ambient.point_count(), 0);
  for (auto p : inst.universe) in_universe[p] = 1;
  IndexSet expected;
  for (auto p : subspace.points) {
    if (in_universe[p]) expected.push_back(p);
  }
  if (expected.empty()) throw Error(ErrorKind::FlatDisjointFromUniverse, "subspace misses the complement");
  if (inst.scope == Scope::contained && expected.size() != subspace.points.size()) {
    throw Error(ErrorKind::PreconditionFailed, "subspace is not contained in the complement");
  }

  const Field& f = ambient.field();
  Space sub(ambient.kind(), d, ambient.field_ptr());
  Restriction out{BlockingInstance{sub, Arrangement(sub), 0, inst.scope, 0, 0, {}, {}, {}, {}, {}}, {}, {}, {}, false};
  out.to_global.resize(sub.point_count());
  Coords v(ambient.coord_count());
  for (std::size_t i = 0; i < sub.point_count(); ++i) {
    const auto lambda = sub.coords(static_cast<PointIndex>(i));
    if (ambient.projective()) {
      std::fill(v.begin(), v.end(), 0);
    } else {
      v = subspace.base;
    }
    for (std::size_t r = 0; r < subspace.rows(); ++r) {
      const auto row = subspace.row(r);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(lambda[r], row[j]));
    }
    PointIndex g = 0;
    ambient.locate(v, g);
    out.to_global[i] = g;
  }

  // Pull each form back along the parametrization of S.
  std::set<Coords> forms;
  for (const auto& h : inst.arrangement.forms()) {
    Coords restricted;
    for (std::size_t r = 0; r < subspace.rows(); ++r) restricted.push_back(dot(f, h.coeffs, subspace.row(r)));
    const bool constant_only = std::all_of(restricted.begin(), restricted.end(), [](Element c) { return c == 0; });
    if (constant_only) continue;  // S parallel to H, or S inside H (ruled out above)
    if (!ambient.projective()) restricted.push_back(f.add(dot(f, h.coeffs, subspace.base), h.coeffs.back()));
    forms.insert(make_form(sub, std::move(restricted)).coeffs);
  }
  Arrangement sub_arr(sub, std::vector<Coords>(forms.begin(), forms.end()), inst.arrangement.name());
  out.sub = build_instance_with_dims(sub, sub_arr, d - inst.blocked_dim, inst.blocked_dim, inst.forbidden_dim,
                                     inst.scope);

  IndexSet mapped;
  for (auto p : out.sub.universe) mapped.push_back(out.to_global[p]);
  std::sort(mapped.begin(), mapped.end());
  if (mapped != expected) {
    throw Error(ErrorKind::PreconditionFailed, "restricted arrangement disagrees with the ambient complement on S");
  }
  return out;
}

Restriction restrict_blocking(const BlockingInstance& inst, const IndexSet& blocking, const Flat& subspace) {
  if (!is_blocking(inst, blocking)) throw Error(ErrorKind::NotBlocking, "set does not block the ambient instance");
  Restriction out = induced_instance(inst, subspace);
  std::vector<std::pair<PointIndex, PointIndex>> inverse;
  for (std::size_t i = 0; i < out.to_global.size(); ++i) inverse.emplace_back(out.to_global[i], static_cast<PointIndex>(i));
  std::sort(inverse.begin(), inverse.end());
  for (auto p : blocking) {
    auto it = std::lower_bound(inverse.begin(), inverse.end(), std::make_pair(p, PointIndex{0}));
    if (it != inverse.end() && it->first == p) {
      out.intersection.push_back(it->second);
      out.intersection_global.push_back(p);
    }
  }
  std::sort(out.intersection.begin(), out.intersection.end());
  std::sort(out.intersection_global.begin(), out.intersection_global.end());
  out.blocks = is_blocking(out.sub, out.intersection);
  return out;
}

IndexSet join_blocking(const IndexSet& outside, const IndexSet& inside, const HyperplaneForm& hyperplane,
                       const Space& space, int t) {
  if (!space.projective()) throw Error(ErrorKind::InvalidArgument, "join_blocking works in PG(n,q)");
  const Arrangement single(space, std::vector<Coords>{hyperplane.coeffs});
  const auto affine = build_instance(space, single, t, Scope::touching);
  for (auto p : outside) {
    if (single.on_any(p)) {
      throw Error(ErrorKind::PreconditionFailed, "outer set has a point on the hyperplane: " + describe_points(space, {p}));
    }
  }
  if (auto miss = first_unblocked(affine, outside)) {
    throw Error(ErrorKind::PreconditionFailed,
                "outer set misses the affine trace " + describe_points(space, affine.family[*miss]));
  }
  for (auto p : inside) {
    if (!single.on_any(p)) {
      throw Error(ErrorKind::PreconditionFailed, "inner set has a point off the hyperplane: " + describe_points(space, {p}));
    }
  }
  // Inside H, the set must meet every (n-t)-flat lying in H.
  std::vector<char> in_inner(space.point_count(), 0);
  for (auto p : inside) in_inner[p] = 1;
  std::optional<IndexSet> missed;
  for_each_flat(space, space.dim() - t, [&](const Flat& flat) {
    const bool in_h = std::all_of(flat.points.begin(), flat.points.end(), [&](PointIndex p) { return single.on_any(p); });
    if (in_h && std::none_of(flat.points.begin(), flat.points.end(), [&](PointIndex p) { return in_inner[p] != 0; })) {
      missed = flat.points;
      return false;
    }
    return true;
  });
  if (missed) throw Error(ErrorKind::PreconditionFailed, "inner set misses the flat " + describe_points(space, *missed));

  IndexSet joined = outside;
  joined.insert(joined.end(), inside.begin(), inside.end());
  std::sort(joined.begin(), joined.end());
  joined.erase(std::unique(joined.begin(), joined.end()), joined.end());
  const auto full = build_instance(space, Arrangement(space), t, Scope::contained);
  if (auto miss = first_unblocked(full, joined)) {
    throw Error(ErrorKind::PreconditionFailed, "union misses the flat " + describe_points(space, full.family[*miss]));
  }
  return joined;
}

bool guaranteed_existence_check(int n, std::uint64_t q, int /*t*/) {
  if (n < 0) return true;
  if (n >= 63) return false;
  return q >= (std::uint64_t{1} << n);
}

ArrangementFamily named_family(const std::string& kind, std::uint32_t q) {
  if (kind == "projective") return [q](int n) { return Arrangement(Space(SpaceKind::projective, n, q), {}, "empty"); };
  if (kind == "affine") return [q](int n) { return Arrangement(Space(SpaceKind::affine, n, q), {}, "empty"); };
  if (kind == "affine-classical") {
    return [q](int n) {
      Space s(SpaceKind::projective, n, q);
      Coords h(static_cast<std::size_t>(n) + 1, 0);
      h[0] = 1;
      return Arrangement(s, std::vector<Coords>{h}, "x0=0");
    };
  }
  if (kind == "braid") return [q](int n) { return braid_arrangement(Space(SpaceKind::projective, n, q)); };
  if (kind == "braid-affine") return [q](int n) { return braid_arrangement(Space(SpaceKind::affine, n, q)); };
  throw Error(ErrorKind::InvalidArgument, "unknown arrangement family '" + kind + "'");
}

ScanTable threshold_scan(int t, const ArrangementFamily& family, Scope scope, Convention convention,
                         const ScanOptions& options) {
  ScanTable table;
  SearchOptions search = options.search;
  search.require_nontrivial = convention == Convention::nontrivial;
  for (int n = std::max(options.n_min, t); n <= options.n_max; ++n) {
    const Arrangement arr = family(n);
    const auto inst = build_instance(arr.space(), arr, t, scope);
    const auto r = min_blocking_set(inst, search);
    if (convention == Convention::minimal && r.verdict == Verdict::exists && !is_minimal(inst, *r.witness)) {
      throw Error(ErrorKind::PreconditionFailed, "minimum witness is not minimal");
    }
    ScanRow row{n, r.verdict, r.size, r.optimal, inst.universe.size(), inst.family.size(), r.nodes, r.witness};
    if (r.verdict == Verdict::exists) table.threshold = n;
    table.rows.push_back(std::move(row));
  }
  bool seen_missing = false;
  for (const auto& row : table.rows) {
    if (row.verdict == Verdict::not_exists) seen_missing = true;
    if (row.verdict == Verdict::exists && seen_missing) table.monotonicity_violations.push_back(row.n);
  }
  return table;
}

std::optional<NonexistenceCertificate> nonexistence_by_subspace(const BlockingInstance& inst, bool require_nontrivial) {
  if (inst.scope != Scope::contained) {
    throw Error(ErrorKind::PreconditionFailed, "subspace certificates need contained scope");
  }
  const auto comp = complement(inst.space, inst.arrangement);
  for (int d = inst.blocked_dim + 1; d <= inst.space.dim(); ++d) {
    for (const auto& v : flats_in_complement(comp, d)) {
      const auto r = induced_instance(inst, v);
      if (r.sub.vacuous()) continue;
      SearchResult res;
      if (r.sub.universe.size() <= kOracleFullLimit) {
        res = exhaustive_oracle(r.sub, require_nontrivial);
      } else {
        SearchOptions o;
        o.require_nontrivial = require_nontrivial;
        o.first_feasible = true;
        o.node_budget = 1'000'000;
        res = min_blocking_set(r.sub, o);
      }
      if (res.verdict == Verdict::not_exists) {
        return NonexistenceCertificate{v, r.sub.universe.size(), r.sub.family.size()};
      }
    }
  }
  return std::nullopt;
}

std::string to_string(ArrangementClass c) {
  switch (c) {
    case ArrangementClass::blocking:
      return "blocking-arrangement";
    case ArrangementClass::unblocking:
      return "unblocking-arrangement";
    case ArrangementClass::neutral:
      return "neutral";
    case ArrangementClass::inconclusive:
      return "inconclusive";
  }
  return "neutral";
}

namespace {

Verdict existence(const Space& space, const Arrangement& arr, int t, Scope scope, Convention convention,
                  const SearchOptions& search) {
  SearchOptions o = search;
  o.require_nontrivial = convention == Convention::nontrivial;
  o.first_feasible = true;
  o.size_cap.reset();
  return min_blocking_set(build_instance(space, arr, t, scope), o).verdict;
}

ArrangementClass compare(Verdict without, Verdict with) {
  if (without == Verdict::timeout || with == Verdict::timeout) return ArrangementClass::inconclusive;
  auto holds = [](Verdict v) { return v == Verdict::exists || v == Verdict::vacuous; };
  if (holds(without) && !holds(with)) return ArrangementClass::blocking;
  if (!holds(without) && holds(with)) return ArrangementClass::unblocking;
  return ArrangementClass::neutral;
}

}  // namespace

Classification classify_arrangement(const Space& space, const Arrangement& arr, int t, Scope scope,
                                    Convention convention, const SearchOptions& search,
                                    const std::vector<HyperplaneForm>* pool) {
  Classification out;
  out.without = existence(space, Arrangement(space), t, scope, convention, search);
  out.with = existence(space, arr, t, scope, convention, search);
  out.kind = compare(out.without, out.with);
  if (out.kind != ArrangementClass::blocking && out.kind != ArrangementClass::unblocking) return out;

  auto same_class = [&](const Arrangement& candidate) {
    if (candidate.empty()) return false;
    return compare(out.without, existence(space, candidate, t, scope, convention, search)) == out.kind;
  };
  out.minimal = true;
  for (std::size_t i = 0; i < arr.size() && arr.size() > 1; ++i) {
    auto smaller = arr.without({i});
    if (same_class(smaller)) {
      out.minimal = false;
      out.smaller = std::move(smaller);
      return out;
    }
  }
  if (pool) {
    for (std::size_t k = 1; k < arr.size(); ++k) {
      std::vector<std::size_t> pick(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (k <= pool->size()) {
        std::vector<Coords> forms;
        for (auto i : pick) forms.push_back((*pool)[i].coeffs);
        std::optional<Arrangement> candidate;
        try {
          candidate.emplace(space, forms);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DuplicateForm) throw;
        }
        if (candidate && same_class(*candidate)) {
          out.minimal = false;
          out.smaller = std::move(candidate);
          return out;
        }
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == pool->size() - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  return out;
}

}  // namespace blockset
