// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blockset/geometry.hpp"

namespace blockset {

/// Linear form of a hyperplane. Projective: n+1 homogeneous coefficients
/// (a . x = 0). Affine: n variable coefficients followed by the constant
/// (a . x + c = 0). Normalized so the first nonzero entry is one.
struct HyperplaneForm {
  Coords coeffs;

  friend bool operator==(const HyperplaneForm&, const HyperplaneForm&) = default;
  friend auto operator<=>(const HyperplaneForm&, const HyperplaneForm&) = default;
};

/// Validates length and variable part, then scales to normal form.
/// Throws DimensionMismatch or InvalidForm.
HyperplaneForm make_form(const Space& space, Coords coeffs);

/// Value of the form at a point given by its stored coordinates.
Element evaluate(const Field& f, const HyperplaneForm& form, std::span<const Element> point, bool projective);

class Arrangement {
 public:
  /// Forms are normalized in input order; duplicates throw DuplicateForm.
  explicit Arrangement(Space space, const std::vector<Coords>& forms = {}, std::string name = {});

  const Space& space() const noexcept { return space_; }
  const std::vector<HyperplaneForm>& forms() const noexcept { return forms_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return forms_.size(); }
  bool empty() const noexcept { return forms_.empty(); }

  bool on_any(PointIndex p) const;

  /// Copy with the forms at the given positions dropped.
  Arrangement without(const std::vector<std::size_t>& positions) const;

 private:
  Space space_;
  std::vector<HyperplaneForm> forms_;
  std::string name_;
};

/// Points of the space lying on no hyperplane of the arrangement.
struct ComplementSet {
  Space space;
  Arrangement arrangement;
  IndexSet members;
  std::vector<char> mask;

  bool contains(PointIndex p) const noexcept { return mask[p] != 0; }
  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }
};

/// Throws DimensionMismatch when the arrangement lives in another space.
ComplementSet complement(const Space& space, const Arrangement& arr);

/// Reinterprets the same equations in dimension k by zero-padding new
/// variables or dropping all-zero ones. Throws CoefficientLoss.
Arrangement corresponding_arrangement(const Arrangement& arr, int k);

/// d-flats all of whose points lie in the complement, in canonical order.
std::vector<Flat> flats_in_complement(const ComplementSet& comp, int d);

/// Intersection of a flat with the complement, tagged by its originating flat.
struct Trace {
  IndexSet points;
  Flat origin;
};

/// Nonempty traces S ∩ M of all d-flats S, one per flat, in canonical order.
std::vector<Trace> touching_traces(const ComplementSet& comp, int d);

/// Largest d with a d-flat inside the complement; nullopt for an empty complement.
std::optional<int> max_flat_dimension(const ComplementSet& comp);

/// Text format: header `kind n q`, then one coefficient vector per line.
/// Blank lines and lines starting with '#' are skipped. Throws ParseError.
Arrangement parse_arrangement(std::istream& in, std::string name = {});
void write_arrangement(std::ostream& out, const Arrangement& arr);

}  // namespace blockset
