// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "blockset/field.hpp"

namespace blockset {

using BigInt = boost::multiprecision::cpp_int;
using PointIndex = std::uint32_t;
using Coords = std::vector<Element>;
using IndexSet = std::vector<PointIndex>;

enum class SpaceKind { projective, affine };

std::string to_string(SpaceKind kind);

/// Point of a space: normalized coordinates plus its rank in the canonical
/// lexicographic enumeration.
struct Point {
  Coords coords;
  PointIndex index = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// PG(n,q) or AG(n,q) with every point materialized.
///
/// Projective points are stored with their first nonzero coordinate equal to
/// one; affine points are plain n-tuples. Point indices follow lexicographic
/// order of those coordinate vectors. Copies share the point table.
class Space {
 public:
  static constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 24;

  Space(SpaceKind kind, int n, FieldPtr field);
  Space(SpaceKind kind, int n, std::uint32_t q) : Space(kind, n, Field::make(q)) {}

  SpaceKind kind() const noexcept { return kind_; }
  bool projective() const noexcept { return kind_ == SpaceKind::projective; }
  int dim() const noexcept { return n_; }
  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_->order(); }

  /// n + 1 for projective spaces, n for affine spaces.
  std::size_t coord_count() const noexcept { return cols_; }
  std::size_t point_count() const noexcept { return count_; }

  std::span<const Element> coords(PointIndex i) const noexcept {
    return {table_->data() + std::size_t{i} * cols_, cols_};
  }
  Point point(PointIndex i) const;

  /// Index of an already-normalized coordinate vector.
  PointIndex index_of(std::span<const Element> v) const;

  /// Scales a nonzero projective vector to normal form and returns its index;
  /// returns false for the zero vector. Affine vectors are looked up as-is.
  bool locate(std::span<const Element> v, PointIndex& out) const;

  std::string label() const;

  friend bool operator==(const Space& a, const Space& b) noexcept {
    return a.kind_ == b.kind_ && a.n_ == b.n_ && a.field_ == b.field_;
  }

 private:
  SpaceKind kind_;
  int n_;
  FieldPtr field_;
  std::size_t cols_;
  std::size_t count_;
  std::vector<std::uint64_t> qpow_;
  std::shared_ptr<const std::vector<Element>> table_;
};

/// A d-dimensional flat in canonical form.
///
/// Projective: `basis` is the (d+1) x (n+1) reduced row echelon matrix of the
/// homogeneous span and `base` is empty. Affine: `basis` is the d x n reduced
/// echelon direction matrix and `base` is the lexicographically least member.
/// Two flats are equal iff dim, basis and base agree.
struct Flat {
  int dim = 0;
  std::size_t cols = 0;
  std::vector<Element> basis;
  Coords base;
  IndexSet points;

  std::size_t rows() const noexcept { return cols == 0 ? 0 : basis.size() / cols; }
  std::span<const Element> row(std::size_t r) const noexcept { return {basis.data() + r * cols, cols}; }
  bool contains(PointIndex p) const noexcept;

  friend bool operator==(const Flat& a, const Flat& b) noexcept {
    return a.dim == b.dim && a.basis == b.basis && a.base == b.base;
  }
};

/// Lists every point once, in index order. Guard: construction of the Space.
std::vector<Point> enumerate_points(const Space& space);

/// Number of d-flats of the space.
BigInt flat_count(const Space& space, int d);

/// Visits d-flats in canonical order: pivot columns in lexicographic order,
/// then free echelon entries, then (affine only) base points.
/// The visitor returns false to stop early.
/// Throws DimensionOutOfRange or SpaceTooLarge (more than 2^24 flats).
void for_each_flat(const Space& space, int d, const std::function<bool(const Flat&)>& visit);

std::vector<Flat> enumerate_flats(const Space& space, int d);

/// Smallest flat containing all inputs. Throws InvalidArgument when empty.
Flat span(std::span<const PointIndex> points, const Space& space);

/// Builds the canonical flat whose generator rows (projective) or base point
/// plus directions (affine) are given; rows need not be reduced.
Flat flat_from_generators(const Space& space, std::vector<Coords> rows, Coords base = {});

/// Gaussian binomial [m over k]_q, exact.
BigInt gaussian_binomial(int m, int k, std::uint64_t q);

/// In-place reduced row echelon form of a rows x cols matrix; zero rows are
/// moved to the bottom. Returns the rank.
std::size_t reduce_rows(std::vector<Element>& m, std::size_t rows, std::size_t cols, const Field& f);

}  // namespace blockset
