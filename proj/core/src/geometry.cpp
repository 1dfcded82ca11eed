// SPDX-License-Identifier: Apache-2.0
#include "blockset/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "blockset/error.hpp"

namespace blockset {

std::string to_string(SpaceKind kind) { return kind == SpaceKind::projective ? "projective" : "affine"; }

namespace {

BigInt big_pow(std::uint64_t base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Writes the base-q digits of `value` into out[0..len), most significant first.
void write_digits(std::uint64_t value, std::uint32_t q, Element* out, std::size_t len) {
  for (std::size_t i = len; i-- > 0;) {
    out[i] = static_cast<Element>(value % q);
    value /= q;
  }
}

// Lexicographically next k-subset of {0..n-1}; false after the last one.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// v += lambda * row
void axpy(const Field& f, Element lambda, std::span<const Element> row, Coords& v) {
  if (lambda == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(v[i], f.mul(lambda, row[i]));
}

// All coefficient vectors used to sweep a flat's points: normalized
// projective representatives of length `len`, or all of GF(q)^len.
std::vector<Coords> coefficient_vectors(std::size_t len, std::uint32_t q, bool projective) {
  std::vector<Coords> out;
  if (!projective) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= q;
    out.reserve(total);
    Coords c(len, 0);
    for (std::uint64_t v = 0; v < total; ++v) {
      write_digits(v, q, c.data(), len);
      out.push_back(c);
    }
    return out;
  }
  for (std::size_t lead = len; lead-- > 0;) {
    const std::size_t tail = len - lead - 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < tail; ++i) total *= q;
    Coords c(len, 0);
    c[lead] = 1;
    for (std::uint64_t v = 0; v < total; ++v) {
      write_digits(v, q, c.data() + lead + 1, tail);
      out.push_back(c);
    }
  }
  return out;
}

void fill_points(const Space& space, Flat& flat, const std::vector<Coords>& lambdas) {
  const Field& f = space.field();
  const std::size_t rows = flat.rows();
  flat.points.clear();
  flat.points.reserve(lambdas.size());
  Coords v(space.coord_count());
  for (const auto& lambda : lambdas) {
    if (space.projective()) {
      std::fill(v.begin(), v.end(), 0);
    } else {
      v = flat.base;
    }
    for (std::size_t r = 0; r < rows; ++r) axpy(f, lambda[r], flat.row(r), v);
    // Echelon rows make projective combinations already normalized.
    flat.points.push_back(space.index_of(v));
  }
  std::sort(flat.points.begin(), flat.points.end());
}

}  // namespace

Space::Space(SpaceKind kind, int n, FieldPtr field) : kind_(kind), n_(n), field_(std::move(field)) {
  if (n < 1) throw Error(ErrorKind::DimensionOutOfRange, "space dimension must be at least 1");
  const std::uint32_t q = field_->order();
  cols_ = kind == SpaceKind::projective ? static_cast<std::size_t>(n) + 1 : static_cast<std::size_t>(n);
  const BigInt total = kind == SpaceKind::projective ? (big_pow(q, n + 1) - 1) / (q - 1) : big_pow(q, n);
  if (total > kEnumerationGuard) {
    throw Error(ErrorKind::SpaceTooLarge, label() + " has more than 2^24 points");
  }
  count_ = static_cast<std::size_t>(total);
  qpow_.assign(cols_ + 1, 1);
  for (std::size_t i = 1; i <= cols_; ++i) qpow_[i] = qpow_[i - 1] * q;

  auto table = std::make_shared<std::vector<Element>>(count_ * cols_, 0);
  Element* out = table->data();
  if (kind == SpaceKind::affine) {
    for (std::uint64_t v = 0; v < count_; ++v, out += cols_) write_digits(v, q, out, cols_);
  } else {
    for (std::size_t lead = cols_; lead-- > 0;) {
      const std::size_t tail = cols_ - lead - 1;
      for (std::uint64_t v = 0; v < qpow_[tail]; ++v, out += cols_) {
        out[lead] = 1;
        write_digits(v, q, out + lead + 1, tail);
      }
    }
  }
  table_ = std::move(table);
}

Point Space::point(PointIndex i) const {
  auto c = coords(i);
  return Point{Coords(c.begin(), c.end()), i};
}

PointIndex Space::index_of(std::span<const Element> v) const {
  const std::uint32_t q = field_->order();
  std::size_t start = 0;
  std::uint64_t offset = 0;
  if (kind_ == SpaceKind::projective) {
    while (start < cols_ && v[start] == 0) ++start;
    const std::size_t tail = cols_ - start - 1;
    offset = (qpow_[tail] - 1) / (q - 1);
    ++start;
  }
  std::uint64_t value = 0;
  for (std::size_t i = start; i < cols_; ++i) value = value * q + v[i];
  return static_cast<PointIndex>(offset + value);
}

bool Space::locate(std::span<const Element> v, PointIndex& out) const {
  if (kind_ == SpaceKind::affine) {
    out = index_of(v);
    return true;
  }
  std::size_t lead = 0;
  while (lead < cols_ && v[lead] == 0) ++lead;
  if (lead == cols_) return false;
  if (v[lead] == 1) {
    out = index_of(v);
    return true;
  }
  const Element s = field_->inv(v[lead]);
  Coords scaled(v.begin(), v.end());
  for (auto& c : scaled) c = field_->mul(c, s);
  out = index_of(scaled);
  return true;
}

std::string Space::label() const {
  return std::string(kind_ == SpaceKind::projective ? "PG(" : "AG(") + std::to_string(n_) + "," +
         std::to_string(field_->order()) + ")";
}

bool Flat::contains(PointIndex p) const noexcept { return std::binary_search(points.begin(), points.end(), p); }

std::vector<Point> enumerate_points(const Space& space) {
  std::vector<Point> out;
  out.reserve(space.point_count());
  for (std::size_t i = 0; i < space.point_count(); ++i) out.push_back(space.point(static_cast<PointIndex>(i)));
  return out;
}

BigInt gaussian_binomial(int m, int k, std::uint64_t q) {
  if (k < 0 || k > m) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= big_pow(q, m - i) - 1;
    den *= big_pow(q, i + 1) - 1;
  }
  return num / den;
}

BigInt flat_count(const Space& space, int d) {
  const int n = space.dim();
  if (d < 0 || d > n) return 0;
  if (space.projective()) return gaussian_binomial(n + 1, d + 1, space.q());
  return big_pow(space.q(), n - d) * gaussian_binomial(n, d, space.q());
}

void for_each_flat(const Space& space, int d, const std::function<bool(const Flat&)>& visit) {
  const int n = space.dim();
  if (d < 0 || d > n) {
    throw Error(ErrorKind::DimensionOutOfRange,
                "flat dimension " + std::to_string(d) + " outside 0.." + std::to_string(n));
  }
  if (flat_count(space, d) > Space::kEnumerationGuard) {
    throw Error(ErrorKind::SpaceTooLarge, space.label() + " has more than 2^24 flats of dimension " + std::to_string(d));
  }
  const std::uint32_t q = space.q();
  const std::size_t cols = space.coord_count();
  const std::size_t rows = space.projective() ? static_cast<std::size_t>(d) + 1 : static_cast<std::size_t>(d);
  const auto lambdas = coefficient_vectors(rows, q, space.projective());

  Flat flat;
  flat.dim = d;
  flat.cols = cols;

  std::vector<std::size_t> pivots(rows);
  std::iota(pivots.begin(), pivots.end(), std::size_t{0});
  do {
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    // Free entries row by row; the first one is the most significant digit.
    std::vector<std::size_t> free_slots;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = pivots[r] + 1; c < cols; ++c) {
        if (!is_pivot[c]) free_slots.push_back(r * cols + c);
      }
    }
    std::vector<std::size_t> base_slots;
    for (std::size_t c = 0; c < cols; ++c) {
      if (!is_pivot[c]) base_slots.push_back(c);
    }
    std::uint64_t free_total = 1;
    for (std::size_t i = 0; i < free_slots.size(); ++i) free_total *= q;

    std::vector<Element> digits(free_slots.size());
    for (std::uint64_t v = 0; v < free_total; ++v) {
      flat.basis.assign(rows * cols, 0);
      for (std::size_t r = 0; r < rows; ++r) flat.basis[r * cols + pivots[r]] = 1;
      write_digits(v, q, digits.data(), digits.size());
      for (std::size_t i = 0; i < free_slots.size(); ++i) flat.basis[free_slots[i]] = digits[i];

      if (space.projective()) {
        fill_points(space, flat, lambdas);
        if (!visit(flat)) return;
        continue;
      }
      std::uint64_t base_total = 1;
      for (std::size_t i = 0; i < base_slots.size(); ++i) base_total *= q;
      std::vector<Element> base_digits(base_slots.size());
      for (std::uint64_t b = 0; b < base_total; ++b) {
        flat.base.assign(cols, 0);
        write_digits(b, q, base_digits.data(), base_digits.size());
        for (std::size_t i = 0; i < base_slots.size(); ++i) flat.base[base_slots[i]] = base_digits[i];
        fill_points(space, flat, lambdas);
        if (!visit(flat)) return;
      }
    }
  } while (next_combination(pivots, cols));
}

std::vector<Flat> enumerate_flats(const Space& space, int d) {
  std::vector<Flat> out;
  for_each_flat(space, d, [&](const Flat& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::size_t reduce_rows(std::vector<Element>& m, std::size_t rows, std::size_t cols, const Field& f) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(m.begin() + pivot * cols, m.begin() + (pivot + 1) * cols, m.begin() + rank * cols);
    }
    const Element s = f.inv(m[rank * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) m[rank * cols + j] = f.mul(m[rank * cols + j], s);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r * cols + c] == 0) continue;
      const Element factor = f.neg(m[r * cols + c]);
      for (std::size_t j = 0; j < cols; ++j) {
        m[r * cols + j] = f.add(m[r * cols + j], f.mul(factor, m[rank * cols + j]));
      }
    }
    ++rank;
  }
  return rank;
}

Flat flat_from_generators(const Space& space, std::vector<Coords> rows, Coords base) {
  const Field& f = space.field();
  const std::size_t cols = space.coord_count();
  std::vector<Element> m;
  m.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "generator length does not match the space");
    m.insert(m.end(), r.begin(), r.end());
  }
  const std::size_t rank = reduce_rows(m, rows.size(), cols, f);
  m.resize(rank * cols);

  Flat flat;
  flat.cols = cols;
  flat.basis = std::move(m);
  if (space.projective()) {
    if (rank == 0) throw Error(ErrorKind::InvalidArgument, "generators span the zero subspace");
    flat.dim = static_cast<int>(rank) - 1;
  } else {
    if (base.size() != cols) throw Error(ErrorKind::DimensionMismatch, "affine base point length does not match the space");
    flat.dim = static_cast<int>(rank);
    for (std::size_t r = 0; r < rank; ++r) {
      auto row = flat.row(r);
      std::size_t pivot = 0;
      while (row[pivot] == 0) ++pivot;
      axpy(f, f.neg(base[pivot]), row, base);
    }
    flat.base = std::move(base);
  }
  fill_points(space, flat, coefficient_vectors(flat.rows(), space.q(), space.projective()));
  return flat;
}

Flat span(std::span<const PointIndex> points, const Space& space) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "span of an empty point list");
  std::vector<Coords> rows;
  if (space.projective()) {
    for (auto p : points) {
      auto c = space.coords(p);
      rows.emplace_back(c.begin(), c.end());
    }
    return flat_from_generators(space, std::move(rows));
  }
  const auto origin = space.coords(points.front());
  const Field& f = space.field();
  for (std::size_t i = 1; i < points.size(); ++i) {
    auto c = space.coords(points[i]);
    Coords diff(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) diff[j] = f.sub(c[j], origin[j]);
    rows.push_back(std::move(diff));
  }
  return flat_from_generators(space, std::move(rows), Coords(origin.begin(), origin.end()));
}

}  // namespace blockset
