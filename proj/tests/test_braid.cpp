// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "blockset/braid.hpp"
#include "blockset/error.hpp"

using namespace blockset;

namespace {

template <class F>
void expect_error(ErrorKind kind, F&& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error, expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

std::uint64_t falling(std::uint32_t q, int m) {
  std::uint64_t r = 1;
  for (int i = 0; i < m; ++i) r *= (q > static_cast<std::uint32_t>(i)) ? q - static_cast<std::uint32_t>(i) : 0;
  return r;
}

bool distinct_entries(std::span<const Element> c) {
  std::set<Element> s(c.begin(), c.end());
  return s.size() == c.size();
}

}  // namespace

TEST(BraidArrangement, Shapes) {
  EXPECT_EQ(braid_arrangement(BraidSpec{3, 5, SpaceKind::affine}).size(), 3u);
  EXPECT_EQ(braid_arrangement(BraidSpec{3, 5, SpaceKind::projective}).size(), 3u);
  EXPECT_EQ(braid_arrangement(BraidSpec{5, 3, SpaceKind::affine}).size(), 10u);
  auto two = braid_arrangement(BraidSpec{2, 3, SpaceKind::projective});
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.forms()[0].coeffs, (Coords{1, 2}));
  auto aff = braid_arrangement(BraidSpec{2, 3, SpaceKind::affine});
  EXPECT_EQ(aff.forms()[0].coeffs, (Coords{1, 2, 0}));
  Space ag(SpaceKind::affine, 4, 3);
  EXPECT_TRUE(complement(ag, braid_arrangement(ag)).empty());
  expect_error(ErrorKind::DimensionMismatch, [&] { braid_arrangement(ag, BraidSpec{3, 3, SpaceKind::affine}); });
  expect_error(ErrorKind::InvalidArgument, [] { braid_space(BraidSpec{1, 3, SpaceKind::affine}); });
}

TEST(BraidComplement, DirectEnumeration) {
  auto perms = braid_complement_points(BraidSpec{3, 3, SpaceKind::affine});
  ASSERT_EQ(perms.size(), 6u);
  std::vector<Coords> expect = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(perms[i].coords, expect[i]);
  EXPECT_EQ(braid_complement_points(BraidSpec{2, 3, SpaceKind::affine}).size(), 6u);
  EXPECT_TRUE(braid_complement_points(BraidSpec{4, 3, SpaceKind::affine}).empty());
  expect_error(ErrorKind::InvalidArgument, [] { braid_complement_points(BraidSpec{3, 3, SpaceKind::projective}); });
}

TEST(BraidComplement, FallingFactorial) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    for (int m = 2; m <= static_cast<int>(q) + 1; ++m) {
      auto pts = braid_complement_points(BraidSpec{m, q, SpaceKind::affine});
      ASSERT_EQ(pts.size(), falling(q, m)) << q << " " << m;
      Space s(SpaceKind::affine, m, q);
      if (s.point_count() > 200000) continue;
      auto comp = complement(s, braid_arrangement(s));
      IndexSet idx;
      for (const auto& p : pts) {
        ASSERT_EQ(s.index_of(p.coords), p.index);
        idx.push_back(p.index);
      }
      ASSERT_EQ(idx, comp.members);
    }
  }
}

TEST(Escape, WorkedPair) {
  auto f = Field::make(3);
  Coords x{0, 1, 2}, y{1, 0, 2};
  auto e = escape_parameter(*f, x, y);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->t0, 2u);
  EXPECT_EQ(e->i, 0u);
  EXPECT_EQ(e->j, 1u);
  EXPECT_EQ(e->point, (Coords{2, 2, 2}));
  EXPECT_TRUE(e->on_hyperplane);
}

TEST(Escape, DiagonalDirections) {
  auto f = Field::make(3);
  EXPECT_FALSE(escape_parameter(*f, Coords{1, 2, 0}, Coords{0, 1, 2}));
  EXPECT_FALSE(escape_parameter(*f, Coords{2, 0, 1}, Coords{0, 1, 2}));
  expect_error(ErrorKind::IdenticalPoints, [&] { escape_parameter(*f, Coords{0, 1, 2}, Coords{0, 1, 2}); });
}

TEST(Escape, Biconditional) {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const int m = static_cast<int>(q);
    Space s(SpaceKind::affine, m, q);
    auto pts = braid_complement_points(BraidSpec{m, q, SpaceKind::affine});
    std::vector<std::pair<PointIndex, PointIndex>> bad;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const auto e = escape_parameter(s.field(), pts[a].coords, pts[b].coords);
        const auto line = span(IndexSet{pts[a].index, pts[b].index}, s);
        const bool inside =
            std::all_of(line.points.begin(), line.points.end(), [&](PointIndex p) { return distinct_entries(s.coords(p)); });
        if (e.has_value() == inside) bad.emplace_back(pts[a].index, pts[b].index);
        if (e && (e->t0 == 0 || !e->on_hyperplane || distinct_entries(e->point))) bad.emplace_back(pts[a].index, pts[b].index);
      }
    }
    EXPECT_TRUE(bad.empty()) << "q=" << q << " first bad pair " << bad.front().first << "," << bad.front().second;
  }
}

TEST(BraidLines, ThreeElementField) {
  auto lines = braid_lines(3);
  ASSERT_EQ(lines.size(), 2u);
  Space s(SpaceKind::affine, 3, 3);
  auto as_coords = [&](const Flat& l) {
    std::set<Coords> out;
    for (auto p : l.points) out.insert(Coords(s.coords(p).begin(), s.coords(p).end()));
    return out;
  };
  EXPECT_EQ(as_coords(lines[0]), (std::set<Coords>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
  EXPECT_EQ(as_coords(lines[1]), (std::set<Coords>{{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}));
}

TEST(BraidLines, CountsPartitionAndContainedFlats) {
  std::uint64_t fact = 1;
  for (std::uint32_t q : {3u, 4u, 5u}) {
    fact = 1;
    for (std::uint32_t i = 2; i < q; ++i) fact *= i;
    auto lines = braid_lines(q);
    ASSERT_EQ(lines.size(), fact);
    Space s(SpaceKind::affine, static_cast<int>(q), q);
    auto comp = complement(s, braid_arrangement(s));
    std::vector<int> cover(s.point_count(), 0);
    for (const auto& l : lines) {
      ASSERT_EQ(l.points.size(), q);
      ASSERT_EQ(l.basis, std::vector<Element>(q, 1));
      for (auto p : l.points) ++cover[p];
    }
    for (PointIndex p = 0; p < s.point_count(); ++p) ASSERT_EQ(cover[p], comp.contains(p) ? 1 : 0);
    auto contained = flats_in_complement(comp, 1);
    ASSERT_EQ(contained.size(), lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) ASSERT_TRUE(contained[i] == lines[i]);
  }
}

TEST(Transversal, LexLeast) {
  Space s(SpaceKind::affine, 3, 3);
  auto b = braid_transversal(3);
  EXPECT_EQ(b, (IndexSet{s.index_of(Coords{0, 1, 2}), s.index_of(Coords{0, 2, 1})}));
}

TEST(Transversal, Chooser) {
  Space s(SpaceKind::affine, 3, 3);
  auto idx = [&](Coords c) { return s.index_of(c); };
  EXPECT_EQ(braid_transversal(3, IndexSet{idx({2, 1, 0}), idx({1, 2, 0})}),
            (IndexSet{idx({1, 2, 0}), idx({2, 1, 0})}));
  expect_error(ErrorKind::BadChooser, [&] { braid_transversal(3, IndexSet{idx({0, 1, 2}), idx({1, 2, 0})}); });
  expect_error(ErrorKind::BadChooser, [&] { braid_transversal(3, IndexSet{idx({0, 1, 2})}); });
  expect_error(ErrorKind::BadChooser, [&] { braid_transversal(3, IndexSet{idx({0, 0, 1}), idx({0, 2, 1})}); });
}

TEST(Transversal, BlocksMinimally) {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    auto inst = braid_line_instance(q);
    auto b = braid_transversal(q);
    std::size_t fact = 1;
    for (std::uint32_t i = 2; i < q; ++i) fact *= i;
    EXPECT_EQ(b.size(), fact);
    EXPECT_TRUE(is_blocking(inst, b));
    EXPECT_TRUE(is_minimal(inst, b));
  }
}

TEST(Transversal, SmallerAmbientDimension) {
  // Lines p + s(1,...,1) in AG(m,q) with m < q.
  auto lines = braid_lines(4, 2);
  EXPECT_EQ(lines.size(), 3u);
  auto inst = braid_line_instance(4, 2);
  EXPECT_EQ(inst.family.size(), 3u);
  EXPECT_TRUE(is_minimal(inst, braid_transversal(4, std::nullopt, 2)));
}

TEST(BraidExistence, Dichotomy) {
  auto r = braid_existence(3, 3, 1, Convention::plain, Scope::touching);
  EXPECT_EQ(r.outcome, BraidOutcome::empty);
  EXPECT_EQ(r.complement_size, 0u);
  EXPECT_EQ(braid_existence(4, 4, 1, Convention::plain, Scope::touching).outcome, BraidOutcome::empty);
  for (int n = 1; n <= 2; ++n) {
    r = braid_existence(n, 3, 1, Convention::plain, Scope::touching);
    EXPECT_EQ(r.outcome, BraidOutcome::exists) << n;
    EXPECT_TRUE(r.verified);
    ASSERT_TRUE(r.witness);
  }
  // Contained scope in a projective complement: no lines survive.
  r = braid_existence(2, 5, 1, Convention::plain, Scope::contained);
  EXPECT_EQ(r.outcome, BraidOutcome::vacuous);
  EXPECT_EQ(r.family_size, 0u);
}

TEST(BraidExistence, AffineTransversalPath) {
  auto r = braid_existence(3, 3, 2, Convention::minimal, Scope::contained, SpaceKind::affine);
  EXPECT_EQ(r.outcome, BraidOutcome::exists);
  EXPECT_EQ(r.method, "transversal");
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.witness, braid_transversal(3));
  EXPECT_EQ(braid_existence(4, 3, 1, Convention::plain, Scope::contained, SpaceKind::affine).outcome,
            BraidOutcome::empty);
}
