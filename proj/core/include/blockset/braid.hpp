// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockset/solver.hpp"

namespace blockset {

/// Braid arrangement: every coordinate pair constrained to differ.
/// Projective kind lives in PG(m-1,q), affine kind in AG(m,q).
struct BraidSpec {
  int m = 2;
  std::uint32_t q = 2;
  SpaceKind kind = SpaceKind::affine;
};

Space braid_space(const BraidSpec& spec);

/// Hyperplanes x_i - x_j = 0 for all i < j over all coordinates of the space.
Arrangement braid_arrangement(const Space& space);

/// Throws DimensionMismatch unless spec.m is the coordinate count of `space`.
Arrangement braid_arrangement(const Space& space, const BraidSpec& spec);
Arrangement braid_arrangement(const BraidSpec& spec);

/// Injective m-tuples over GF(q), generated directly in lexicographic order
/// with their AG(m,q) indices. Affine kind only (throws InvalidArgument).
std::vector<Point> braid_complement_points(const BraidSpec& spec);

/// Where the line y + s(x - y) leaves the braid complement.
struct Escape {
  Element t0 = 0;
  /// Least coordinate pair (i < j) whose differences disagree.
  std::size_t i = 0;
  std::size_t j = 0;
  /// y + t0 (x - y).
  Coords point;
  /// Whether `point` really has equal i-th and j-th entries.
  bool on_hyperplane = false;
};

/// nullopt when x - y is a multiple of (1,...,1); otherwise the escape
/// parameter t0 = (y_j - y_i) / ((x_i - y_i) - (x_j - y_j)).
/// Throws IdenticalPoints.
std::optional<Escape> escape_parameter(const Field& field, std::span<const Element> x, std::span<const Element> y);

/// Lines p + s(1,...,1) through the affine braid complement in AG(m,q),
/// deduplicated and in canonical flat order. Default m = q.
std::vector<Flat> braid_lines(std::uint32_t q, std::optional<int> m = std::nullopt);

/// Contained-line instance of the affine braid complement in AG(m,q):
/// blocked flats are lines (t = m - 1 in codimension terms).
BlockingInstance braid_line_instance(std::uint32_t q, std::optional<int> m = std::nullopt);

/// One point per (1,...,1)-line. Without a selection the least point of each
/// line is taken; a selection must hit every line exactly once (else
/// BadChooser). The result is sorted AG(m,q) point indices.
IndexSet braid_transversal(std::uint32_t q, const std::optional<IndexSet>& selection = std::nullopt,
                           std::optional<int> m = std::nullopt);

enum class BraidOutcome { empty, exists, vacuous, not_exists, timeout };

std::string to_string(BraidOutcome outcome);

struct BraidExistence {
  BraidOutcome outcome = BraidOutcome::empty;
  std::optional<IndexSet> witness;
  /// "empty", "transversal" or "search".
  std::string method;
  std::size_t complement_size = 0;
  std::size_t family_size = 0;
  bool verified = false;
};

/// Existence of t-blocking sets in the braid complement of PG(n,q) (or
/// AG(n,q) with `kind = affine`). Empty complements are detected by
/// construction (n+1 > q projective, n > q affine). The affine contained-line
/// case (t = n - 1) is answered by the transversal; everything else by
/// min_blocking_set. Witnesses are re-verified.
BraidExistence braid_existence(int n, std::uint32_t q, int t, Convention convention, Scope scope,
                               SpaceKind kind = SpaceKind::projective, const SearchOptions& search = {});

}  // namespace blockset
