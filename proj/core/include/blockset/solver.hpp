// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "blockset/instance.hpp"

namespace blockset {

enum class Verdict { exists, not_exists, vacuous, timeout };

std::string to_string(Verdict verdict);

/// Flat V inside the complement whose induced sub-instance has no solution.
struct NonexistenceCertificate {
  Flat subspace;
  std::size_t sub_universe = 0;
  std::size_t sub_family = 0;
};

struct SearchResult {
  Verdict verdict = Verdict::not_exists;
  std::optional<IndexSet> witness;
  std::optional<std::size_t> size;
  /// False when the witness only satisfies the size cap (feasibility mode)
  /// or is the incumbent of a timed-out search.
  bool optimal = false;
  std::uint64_t nodes = 0;
  std::chrono::duration<double> elapsed{0};
  std::optional<NonexistenceCertificate> certificate;
};

struct SearchOptions {
  bool require_nontrivial = false;
  /// Largest admissible witness size; defaults to |universe|.
  std::optional<std::size_t> size_cap;
  /// Stop at the first witness within the cap instead of proving a minimum.
  bool first_feasible = false;
  std::optional<std::chrono::milliseconds> time_budget;
  std::optional<std::uint64_t> node_budget;
  unsigned workers = 1;
};

/// Exact minimum blocking set by branch and bound.
///
/// Branches on the uncovered trace with the fewest undecided points. The
/// lower bound is the larger of a greedy packing of pairwise disjoint
/// uncovered traces and a degree bound (fewest points whose trace degrees
/// can sum to the uncovered count). The witness is the lexicographically
/// least solution of minimum size, recovered by a second include-first pass
/// over points in index order, so it does not depend on `workers`.
SearchResult min_blocking_set(const BlockingInstance& inst, const SearchOptions& options = {});

inline SearchResult min_blocking_set(const BlockingInstance& inst, bool require_nontrivial,
                                     std::optional<std::size_t> size_cap = std::nullopt) {
  SearchOptions o;
  o.require_nontrivial = require_nontrivial;
  o.size_cap = size_cap;
  return min_blocking_set(inst, o);
}

/// Brute force ground truth: subsets by increasing size, each size in
/// lexicographic order. Full enumeration requires |universe| <= 22; larger
/// universes need `max_size`, and a miss then means "none up to max_size".
/// Throws UniverseTooLarge.
SearchResult exhaustive_oracle(const BlockingInstance& inst, bool require_nontrivial,
                               std::optional<std::size_t> max_size = std::nullopt);

inline constexpr std::size_t kOracleFullLimit = 22;
inline constexpr std::size_t kSolverUniverseLimit = std::size_t{1} << 20;

}  // namespace blockset
