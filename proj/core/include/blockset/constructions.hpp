// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blockset/solver.hpp"

namespace blockset {

/// Instance induced on a flat S viewed as a space of its own.
///
/// The blocked and forbidden flat dimensions are kept from the ambient
/// instance, so the sub-instance is a (d - blocked_dim)-blocking problem in
/// S with the arrangement restricted to S.
struct Restriction {
  BlockingInstance sub;
  /// Global point index of every point of the subspace, by sub index.
  std::vector<PointIndex> to_global;
  /// B ∩ S in sub indices and in global indices.
  IndexSet intersection;
  IndexSet intersection_global;
  /// Whether B ∩ S blocks the sub-instance.
  bool blocks = false;
};

/// Builds the sub-instance on S. Throws DimensionTooSmall when
/// dim S <= blocked_dim, FlatDisjointFromUniverse when S misses the universe,
/// PreconditionFailed when S leaves the complement under contained scope.
Restriction induced_instance(const BlockingInstance& inst, const Flat& subspace);

/// Restriction of a blocking set to S. Throws NotBlocking.
Restriction restrict_blocking(const BlockingInstance& inst, const IndexSet& blocking, const Flat& subspace);

/// Union of a blocking set of PG(n,q) minus H (touching scope, level t) and
/// a set inside H meeting every (n-t)-flat contained in H. The result is
/// checked against the full space. Throws PreconditionFailed naming the first
/// unblocked flat.
IndexSet join_blocking(const IndexSet& outside, const IndexSet& inside, const HyperplaneForm& hyperplane,
                       const Space& space, int t = 1);

/// q >= 2^n.
bool guaranteed_existence_check(int n, std::uint64_t q, int t);

struct ScanRow {
  int n = 0;
  Verdict verdict = Verdict::not_exists;
  std::optional<std::size_t> min_size;
  bool optimal = false;
  std::size_t universe = 0;
  std::size_t family = 0;
  std::uint64_t nodes = 0;
  std::optional<IndexSet> witness;
};

struct ScanTable {
  std::vector<ScanRow> rows;
  /// Largest n with verdict exists.
  std::optional<int> threshold;
  /// Values of n that exist although some smaller n does not.
  std::vector<int> monotonicity_violations;
};

using ArrangementFamily = std::function<Arrangement(int n)>;

/// Named families for scans: "projective" (PG(n,q), no hyperplanes), "affine"
/// (AG(n,q), no hyperplanes), "affine-classical" (PG(n,q) minus x_0 = 0),
/// "braid" / "braid-affine" (all x_i = x_j in PG(n,q) / AG(n,q)).
ArrangementFamily named_family(const std::string& kind, std::uint32_t q);

struct ScanOptions {
  int n_min = 1;
  int n_max = 2;
  /// Per-cell search options; require_nontrivial is set from the convention.
  SearchOptions search;
};

/// Existence scan over n for a fixed t and convention. A timeout is recorded
/// in its row; monotonicity is measured, never assumed.
ScanTable threshold_scan(int t, const ArrangementFamily& family, Scope scope, Convention convention,
                         const ScanOptions& options);

/// Looks for a flat V inside the complement whose induced sub-instance has no
/// solution, which rules out solutions of the whole instance. Requires
/// contained scope (throws PreconditionFailed otherwise); nullopt means
/// inconclusive.
std::optional<NonexistenceCertificate> nonexistence_by_subspace(const BlockingInstance& inst,
                                                                 bool require_nontrivial = true);

enum class ArrangementClass { blocking, unblocking, neutral, inconclusive };

std::string to_string(ArrangementClass c);

struct Classification {
  ArrangementClass kind = ArrangementClass::neutral;
  Verdict without = Verdict::not_exists;
  Verdict with = Verdict::not_exists;
  /// Set for blocking/unblocking: no smaller arrangement checked has the same class.
  std::optional<bool> minimal;
  /// A smaller arrangement with the same class, when minimality fails.
  std::optional<Arrangement> smaller;
};

/// Compares existence with and without the arrangement. Minimality is
/// checked over every sub-arrangement with one hyperplane fewer and, when a
/// pool is given, over every arrangement of smaller size drawn from it.
Classification classify_arrangement(const Space& space, const Arrangement& arr, int t, Scope scope,
                                    Convention convention, const SearchOptions& search = {},
                                    const std::vector<HyperplaneForm>* pool = nullptr);

}  // namespace blockset
