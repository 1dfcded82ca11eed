// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "blockset/arrangement.hpp"

namespace blockset {

/// Which flats a blocking set in a complement has to meet.
enum class Scope {
  contained,  ///< flats lying wholly inside the complement
  touching,   ///< traces S ∩ M(A) of every flat S meeting the complement
};

/// Which blocking sets count as solutions.
enum class Convention {
  plain,       ///< any blocking set
  minimal,     ///< blocking sets with no blocking proper subset
  nontrivial,  ///< blocking sets containing no t-flat trace
};

std::string to_string(Scope scope);
std::string to_string(Convention convention);
Scope parse_scope(const std::string& text);
Convention parse_convention(const std::string& text);

/// Hitting-set view of "t-blocking set in the complement of an arrangement".
///
/// `family` holds the traces to be hit (flats of dimension `blocked_dim`),
/// `forbidden` the traces that a nontrivial set may not contain (flats of
/// dimension `forbidden_dim`). For the standard construction
/// blocked_dim = n - t and forbidden_dim = t. All point sets are sorted global
/// point indices of `space`; `*_origin[i]` is the flat behind trace i.
struct BlockingInstance {
  Space space;
  Arrangement arrangement;
  int t = 1;
  Scope scope = Scope::contained;
  int blocked_dim = 0;
  int forbidden_dim = 0;
  IndexSet universe;
  std::vector<IndexSet> family;
  std::vector<IndexSet> forbidden;
  std::vector<Flat> family_origin;
  std::vector<Flat> forbidden_origin;

  bool vacuous() const noexcept { return family.empty(); }
  std::string describe() const;
};

/// Throws DimensionOutOfRange unless 1 <= t <= n.
BlockingInstance build_instance(const Space& space, const Arrangement& arr, int t, Scope scope);

/// Same construction with explicit flat dimensions. A dimension above n
/// yields an empty list (no such flats exist). `t` is recorded as given.
BlockingInstance build_instance_with_dims(const Space& space, const Arrangement& arr, int t, int blocked_dim,
                                          int forbidden_dim, Scope scope);

/// B meets every trace of the family. Throws NotInUniverse.
bool is_blocking(const BlockingInstance& inst, const IndexSet& points);

/// Every point of B has a private trace. Throws NotBlocking when B does not block.
bool is_minimal(const BlockingInstance& inst, const IndexSet& points);

/// No forbidden trace is contained in B.
bool is_nontrivial(const BlockingInstance& inst, const IndexSet& points);

/// Drops points without a private trace until the set is minimal.
IndexSet minimalize(const BlockingInstance& inst, IndexSet points);

/// First trace of the family missed by B, if any.
std::optional<std::size_t> first_unblocked(const BlockingInstance& inst, const IndexSet& points);

}  // namespace blockset
