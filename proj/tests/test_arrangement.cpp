// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "blockset/arrangement.hpp"
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

// Membership straight from the definition: a point is on H iff a.x (+c) = 0.
bool on_union(const Space& s, const std::vector<Coords>& raw, PointIndex p) {
  const Field& f = s.field();
  auto x = s.coords(p);
  for (const auto& a : raw) {
    Element v = s.projective() ? 0 : a.back();
    for (std::size_t i = 0; i < x.size(); ++i) v = f.add(v, f.mul(a[i], x[i]));
    if (v == 0) return true;
  }
  return false;
}

std::vector<Coords> random_forms(const Space& s, std::mt19937& rng, int count) {
  std::uniform_int_distribution<Element> pick(0, s.q() - 1);
  std::set<HyperplaneForm> seen;
  std::vector<Coords> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 1000) {
    Coords c(static_cast<std::size_t>(s.dim()) + 1);
    for (auto& v : c) v = pick(rng);
    const bool zero_vars = std::all_of(c.begin(), c.begin() + static_cast<long>(s.coord_count()),
                                       [](Element v) { return v == 0; });
    if (zero_vars) continue;
    if (seen.insert(make_form(s, c)).second) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(Form, Normalization) {
  Space s(SpaceKind::projective, 2, 5);
  auto h = make_form(s, {0, 3, 1});
  EXPECT_EQ(h.coeffs, (Coords{0, 1, 2}));
  Space a(SpaceKind::affine, 2, 3);
  EXPECT_EQ(make_form(a, {2, 0, 1}).coeffs, (Coords{1, 0, 2}));
  expect_error(ErrorKind::InvalidForm, [&] { make_form(a, {0, 0, 1}); });
  expect_error(ErrorKind::InvalidForm, [&] { make_form(a, {3, 0, 1}); });
  expect_error(ErrorKind::DimensionMismatch, [&] { make_form(a, {1, 0}); });
  expect_error(ErrorKind::DuplicateForm, [&] { Arrangement(s, {{1, 1, 0}, {2, 2, 0}}); });
}

TEST(Complement, Examples) {
  Space pg23(SpaceKind::projective, 2, 3);
  EXPECT_EQ(complement(pg23, Arrangement(pg23)).size(), 13u);
  EXPECT_EQ(complement(pg23, Arrangement(pg23, {{1, 0, 0}})).size(), 9u);
  Space pg13(SpaceKind::projective, 1, 3);
  auto c = complement(pg13, Arrangement(pg13, {{1, 2}}));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_FALSE(c.contains(pg13.index_of(Coords{1, 1})));
  Space other(SpaceKind::projective, 2, 4);
  expect_error(ErrorKind::DimensionMismatch, [&] { complement(other, Arrangement(pg23)); });
}

TEST(Complement, PartitionAndMonotonicity) {
  std::mt19937 rng(11);
  for (auto kind : {SpaceKind::projective, SpaceKind::affine}) {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
      Space s(kind, 2, q);
      auto raw = random_forms(s, rng, 4);
      std::size_t prev_size = s.point_count();
      std::size_t prev_lines = enumerate_flats(s, 1).size();
      for (std::size_t k = 1; k <= raw.size(); ++k) {
        std::vector<Coords> part(raw.begin(), raw.begin() + static_cast<long>(k));
        auto comp = complement(s, Arrangement(s, part));
        std::size_t on = 0;
        for (PointIndex p = 0; p < s.point_count(); ++p) {
          const bool u = on_union(s, part, p);
          on += u;
          ASSERT_EQ(comp.contains(p), !u);
        }
        ASSERT_EQ(comp.size() + on, s.point_count());
        ASSERT_LE(comp.size(), prev_size);
        const auto lines = flats_in_complement(comp, 1).size();
        ASSERT_LE(lines, prev_lines);
        prev_size = comp.size();
        prev_lines = lines;
      }
    }
  }
}

TEST(Complement, ScalingInvariance) {
  Space s(SpaceKind::projective, 2, 5);
  auto a = complement(s, Arrangement(s, {{1, 2, 3}, {0, 1, 4}}));
  auto b = complement(s, Arrangement(s, {{3, 1, 4}, {0, 2, 3}}));
  EXPECT_EQ(a.members, b.members);
}

TEST(Corresponding, PadAndTruncate) {
  Space pg2(SpaceKind::projective, 2, 3);
  auto braid = braid_arrangement(pg2);
  auto up = corresponding_arrangement(braid, 3);
  EXPECT_EQ(up.space().dim(), 3);
  ASSERT_EQ(up.size(), braid.size());
  for (std::size_t i = 0; i < up.size(); ++i) {
    Coords padded = braid.forms()[i].coeffs;
    padded.push_back(0);
    EXPECT_EQ(up.forms()[i].coeffs, padded);
  }
  auto same = corresponding_arrangement(braid, 2);
  EXPECT_EQ(same.forms(), braid.forms());
  EXPECT_EQ(corresponding_arrangement(up, 2).forms(), braid.forms());

  Space pg3(SpaceKind::projective, 3, 3);
  Arrangement uses_x3(pg3, {{0, 0, 1, 1}});
  expect_error(ErrorKind::CoefficientLoss, [&] { corresponding_arrangement(uses_x3, 2); });

  Space ag2(SpaceKind::affine, 2, 3);
  auto lifted = corresponding_arrangement(Arrangement(ag2, {{1, 2, 1}}), 3);
  EXPECT_EQ(lifted.forms()[0].coeffs, (Coords{1, 2, 0, 1}));
}

TEST(ContainedFlats, Examples) {
  Space ag33(SpaceKind::affine, 3, 3);
  auto comp = complement(ag33, braid_arrangement(ag33));
  EXPECT_EQ(flats_in_complement(comp, 1).size(), 2u);
  EXPECT_EQ(max_flat_dimension(comp), 1);

  Space pg23(SpaceKind::projective, 2, 3);
  auto full = complement(pg23, Arrangement(pg23));
  for (int d = 0; d <= 2; ++d) EXPECT_EQ(flats_in_complement(full, d).size(), enumerate_flats(pg23, d).size());
  EXPECT_EQ(max_flat_dimension(full), 2);
  auto one = complement(pg23, Arrangement(pg23, {{1, 0, 0}}));
  EXPECT_TRUE(flats_in_complement(one, 1).empty());
  expect_error(ErrorKind::DimensionOutOfRange, [&] { flats_in_complement(one, 3); });

  Space pg25(SpaceKind::projective, 2, 5);
  EXPECT_EQ(max_flat_dimension(complement(pg25, braid_arrangement(pg25))), 0);
  Space pg22(SpaceKind::projective, 2, 2);
  EXPECT_FALSE(max_flat_dimension(complement(pg22, braid_arrangement(pg22))).has_value());
}

TEST(ContainedFlats, AgreeWithFullTraces) {
  std::mt19937 rng(3);
  for (auto kind : {SpaceKind::projective, SpaceKind::affine}) {
    for (std::uint32_t q : {2u, 3u, 4u}) {
      Space s(kind, 3, q);
      auto comp = complement(s, Arrangement(s, random_forms(s, rng, 2)));
      for (int d = 0; d <= 3; ++d) {
        auto contained = flats_in_complement(comp, d);
        std::vector<Flat> full;
        for (auto& tr : touching_traces(comp, d))
          if (tr.points.size() == tr.origin.points.size()) full.push_back(tr.origin);
        ASSERT_EQ(contained.size(), full.size());
        for (std::size_t i = 0; i < full.size(); ++i) ASSERT_TRUE(contained[i] == full[i]);
      }
    }
  }
}

TEST(TouchingTraces, ClassicalAffinePlane) {
  Space pg(SpaceKind::projective, 2, 3);
  auto comp = complement(pg, Arrangement(pg, {{1, 0, 0}}));
  auto traces = touching_traces(comp, 1);
  ASSERT_EQ(traces.size(), 12u);
  for (const auto& tr : traces) EXPECT_EQ(tr.points.size(), 3u);

  auto singles = touching_traces(comp, 0);
  ASSERT_EQ(singles.size(), comp.size());
  for (std::size_t i = 0; i < singles.size(); ++i) EXPECT_EQ(singles[i].points, IndexSet{comp.members[i]});

  auto full = complement(pg, Arrangement(pg));
  for (const auto& tr : touching_traces(full, 1)) EXPECT_EQ(tr.points, tr.origin.points);
}

TEST(TouchingTraces, HyperplanesMatchAffineSpace) {
  for (int n = 2; n <= 3; ++n) {
    for (std::uint32_t q : {2u, 3u, 4u}) {
      Space pg(SpaceKind::projective, n, q);
      Coords h(static_cast<std::size_t>(n) + 1, 0);
      h[0] = 1;
      auto comp = complement(pg, Arrangement(pg, {h}));
      Space ag(SpaceKind::affine, n, q);
      // (1, x_1, ..., x_n) <-> (x_1, ..., x_n)
      std::set<IndexSet> projected;
      for (const auto& tr : touching_traces(comp, n - 1)) {
        IndexSet set;
        for (auto p : tr.points) {
          auto c = pg.coords(p);
          set.push_back(ag.index_of(Coords(c.begin() + 1, c.end())));
        }
        std::sort(set.begin(), set.end());
        projected.insert(set);
      }
      std::set<IndexSet> affine;
      for (const auto& f : enumerate_flats(ag, n - 1)) affine.insert(f.points);
      EXPECT_EQ(projected, affine);
    }
  }
}

TEST(TextFormat, RoundTrip) {
  std::istringstream in("# braid\npg 2 5\n1 4 0\n\n0 2 3\n# tail\n");
  auto arr = parse_arrangement(in, "demo");
  ASSERT_EQ(arr.size(), 2u);
  EXPECT_EQ(arr.forms()[1].coeffs, (Coords{0, 1, 4}));
  std::ostringstream out;
  write_arrangement(out, arr);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_arrangement(back).forms(), arr.forms());
  std::ostringstream again;
  write_arrangement(again, parse_arrangement(*std::make_unique<std::istringstream>(out.str())));
  EXPECT_EQ(again.str(), out.str());
}

TEST(TextFormat, Errors) {
  for (const char* bad : {"", "# only\n", "pg 2\n", "xx 2 3\n", "pg 2 3\n1 2\n", "pg 2 3\n1 2 3\n", "pg 2 3\n1 a 0\n",
                          "pg 0 3\n", "ag 2 3\n1 0 -1\n"}) {
    std::istringstream in(bad);
    expect_error(ErrorKind::ParseError, [&] { parse_arrangement(in); });
  }
  std::istringstream dup("pg 2 3\n1 1 0\n2 2 0\n");
  expect_error(ErrorKind::DuplicateForm, [&] { parse_arrangement(dup); });
}
