// SPDX-License-Identifier: Apache-2.0
#include <random>
#include <sstream>

#include "blockset/braid.hpp"
#include "blockset/error.hpp"
#include "blockset/solver.hpp"
#include "cli.hpp"

namespace blockset::cli {
namespace {

SelftestCheck field_axioms() {
  SelftestCheck c{"field-axioms", true, ""};
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u}) {
    if (!Field::make(q)->verify_axioms()) {
      c.passed = false;
      c.detail = "GF(" + std::to_string(q) + ")";
      return c;
    }
  }
  c.detail = "10 fields";
  return c;
}

SelftestCheck flat_counts() {
  SelftestCheck c{"flat-counts", true, ""};
  int checked = 0;
  for (auto kind : {SpaceKind::projective, SpaceKind::affine}) {
    for (int n = 1; n <= 3; ++n) {
      for (std::uint32_t q : {2u, 3u, 4u}) {
        Space s(kind, n, q);
        for (int d = 0; d <= n; ++d) {
          BigInt expect = kind == SpaceKind::projective
                              ? gaussian_binomial(n + 1, d + 1, q)
                              : BigInt(boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n - d))) *
                                    gaussian_binomial(n, d, q);
          if (BigInt(enumerate_flats(s, d).size()) != expect) {
            c.passed = false;
            c.detail = s.label() + " d=" + std::to_string(d);
            return c;
          }
          ++checked;
        }
      }
    }
  }
  c.detail = std::to_string(checked) + " (space, d) pairs";
  return c;
}

SelftestCheck oracle_equivalence(unsigned cases, unsigned seed) {
  SelftestCheck c{"oracle-equivalence", true, ""};
  std::mt19937 rng(seed);
  const std::vector<Space> spaces = {Space(SpaceKind::projective, 2, 2), Space(SpaceKind::projective, 2, 3),
                                     Space(SpaceKind::affine, 2, 3), Space(SpaceKind::affine, 3, 2),
                                     Space(SpaceKind::projective, 3, 2), Space(SpaceKind::affine, 2, 4)};
  unsigned done = 0;
  while (done < cases) {
    const Space& s = spaces[rng() % spaces.size()];
    std::vector<Coords> forms;
    if (rng() % 2) {
      Coords h(static_cast<std::size_t>(s.dim()) + 1);
      for (auto& v : h) v = rng() % s.q();
      h[rng() % s.coord_count()] = 1;
      forms.push_back(h);
    }
    const int t = 1 + static_cast<int>(rng() % static_cast<unsigned>(s.dim()));
    auto inst = build_instance(s, Arrangement(s, forms), t, rng() % 2 ? Scope::touching : Scope::contained);
    if (inst.universe.size() > 20) continue;
    std::vector<IndexSet> keep;
    for (auto& f : inst.family)
      if (rng() % 3) keep.push_back(f);
    inst.family = keep;
    inst.family_origin.clear();
    const bool nontrivial = rng() % 2;
    const auto a = min_blocking_set(inst, nontrivial);
    const auto b = exhaustive_oracle(inst, nontrivial);
    bool ok = a.verdict == b.verdict && a.size == b.size;
    if (ok && a.witness) ok = is_blocking(inst, *a.witness) && (!nontrivial || is_nontrivial(inst, *a.witness));
    if (!ok) {
      c.passed = false;
      c.detail = "case " + std::to_string(done) + ": " + inst.describe();
      return c;
    }
    ++done;
  }
  c.detail = std::to_string(done) + " random instances";
  return c;
}

SelftestCheck braid_lines_check() {
  SelftestCheck c{"braid-lines", true, ""};
  std::size_t fact = 1;
  for (std::uint32_t q : {3u, 4u}) {
    fact *= q - 1;
    Space s(SpaceKind::affine, static_cast<int>(q), q);
    const auto lines = braid_lines(q);
    const auto flats = flats_in_complement(complement(s, braid_arrangement(s)), 1);
    if (lines.size() != fact || flats.size() != fact || !std::equal(lines.begin(), lines.end(), flats.begin())) {
      c.passed = false;
      c.detail = "q=" + std::to_string(q);
      return c;
    }
  }
  c.detail = "q=3,4";
  return c;
}

SelftestCheck bose_burton() {
  SelftestCheck c{"bose-burton", true, ""};
  for (auto [n, q] : {std::pair{2, 2u}, {2, 3u}, {3, 2u}}) {
    Space s(SpaceKind::projective, n, q);
    for (int t = 1; t < n; ++t) {
      const auto r = min_blocking_set(build_instance(s, Arrangement(s), t, Scope::contained));
      std::size_t expect = 0, pw = 1;
      for (int i = 0; i <= t; ++i, pw *= q) expect += pw;
      if (r.size != expect) {
        c.passed = false;
        c.detail = s.label() + " t=" + std::to_string(t);
        return c;
      }
    }
  }
  c.detail = "PG(2,2), PG(2,3), PG(3,2)";
  return c;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(unsigned cases, unsigned seed) {
  return {field_axioms(), flat_counts(), oracle_equivalence(cases, seed), braid_lines_check(), bose_burton()};
}

}  // namespace blockset::cli
