// SPDX-License-Identifier: Apache-2.0
#include "blockset/arrangement.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "blockset/error.hpp"

namespace blockset {

HyperplaneForm make_form(const Space& space, Coords coeffs) {
  const std::size_t expected = static_cast<std::size_t>(space.dim()) + 1;
  if (coeffs.size() != expected) {
    throw Error(ErrorKind::DimensionMismatch, "form has " + std::to_string(coeffs.size()) + " coefficients, " +
                                                  space.label() + " needs " + std::to_string(expected));
  }
  const Field& f = space.field();
  for (auto c : coeffs) {
    if (c >= f.order()) throw Error(ErrorKind::InvalidForm, "coefficient " + std::to_string(c) + " is not a field element");
  }
  const std::size_t variables = space.projective() ? coeffs.size() : coeffs.size() - 1;
  const auto lead = std::find_if(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(variables),
                                 [](Element c) { return c != 0; });
  if (lead == coeffs.begin() + static_cast<std::ptrdiff_t>(variables)) {
    throw Error(ErrorKind::InvalidForm, "all variable coefficients are zero");
  }
  const Element s = f.inv(*lead);
  for (auto& c : coeffs) c = f.mul(c, s);
  return HyperplaneForm{std::move(coeffs)};
}

Element evaluate(const Field& f, const HyperplaneForm& form, std::span<const Element> point, bool projective) {
  Element acc = projective ? 0 : form.coeffs.back();
  for (std::size_t i = 0; i < point.size(); ++i) acc = f.add(acc, f.mul(form.coeffs[i], point[i]));
  return acc;
}

Arrangement::Arrangement(Space space, const std::vector<Coords>& forms, std::string name)
    : space_(std::move(space)), name_(std::move(name)) {
  std::set<HyperplaneForm> seen;
  for (const auto& raw : forms) {
    auto form = make_form(space_, raw);
    if (!seen.insert(form).second) {
      throw Error(ErrorKind::DuplicateForm, "hyperplane listed twice after normalization");
    }
    forms_.push_back(std::move(form));
  }
}

bool Arrangement::on_any(PointIndex p) const {
  const auto c = space_.coords(p);
  return std::any_of(forms_.begin(), forms_.end(), [&](const HyperplaneForm& h) {
    return evaluate(space_.field(), h, c, space_.projective()) == 0;
  });
}

Arrangement Arrangement::without(const std::vector<std::size_t>& positions) const {
  Arrangement out(space_, {}, name_);
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    if (std::find(positions.begin(), positions.end(), i) == positions.end()) out.forms_.push_back(forms_[i]);
  }
  return out;
}

ComplementSet complement(const Space& space, const Arrangement& arr) {
  if (!(arr.space() == space)) {
    throw Error(ErrorKind::DimensionMismatch, "arrangement lives in " + arr.space().label() + ", not " + space.label());
  }
  ComplementSet comp{space, arr, {}, std::vector<char>(space.point_count(), 0)};
  for (std::size_t i = 0; i < space.point_count(); ++i) {
    const auto p = static_cast<PointIndex>(i);
    if (!arr.on_any(p)) {
      comp.members.push_back(p);
      comp.mask[i] = 1;
    }
  }
  return comp;
}

Arrangement corresponding_arrangement(const Arrangement& arr, int k) {
  const Space& from = arr.space();
  const int n = from.dim();
  Space target = k == n ? from : Space(from.kind(), k, from.field_ptr());
  // Variable slots: projective x_0..x_n, affine x_1..x_n (constant kept last).
  const std::size_t old_vars = from.projective() ? static_cast<std::size_t>(n) + 1 : static_cast<std::size_t>(n);
  const std::size_t new_vars = from.projective() ? static_cast<std::size_t>(k) + 1 : static_cast<std::size_t>(k);
  std::vector<Coords> forms;
  for (const auto& h : arr.forms()) {
    Coords c(new_vars, 0);
    for (std::size_t i = 0; i < old_vars; ++i) {
      if (i < new_vars) {
        c[i] = h.coeffs[i];
      } else if (h.coeffs[i] != 0) {
        throw Error(ErrorKind::CoefficientLoss, "variable " + std::to_string(i) + " has a nonzero coefficient beyond dimension " +
                                                    std::to_string(k));
      }
    }
    if (!from.projective()) c.push_back(h.coeffs.back());
    forms.push_back(std::move(c));
  }
  return Arrangement(target, forms, arr.name());
}

namespace {

void check_dim(const ComplementSet& comp, int d) {
  if (d < 0 || d > comp.space.dim()) {
    throw Error(ErrorKind::DimensionOutOfRange,
                "flat dimension " + std::to_string(d) + " outside 0.." + std::to_string(comp.space.dim()));
  }
}

}  // namespace

std::vector<Flat> flats_in_complement(const ComplementSet& comp, int d) {
  check_dim(comp, d);
  std::vector<Flat> out;
  if (comp.empty()) return out;
  for_each_flat(comp.space, d, [&](const Flat& flat) {
    if (std::all_of(flat.points.begin(), flat.points.end(), [&](PointIndex p) { return comp.contains(p); })) {
      out.push_back(flat);
    }
    return true;
  });
  return out;
}

std::vector<Trace> touching_traces(const ComplementSet& comp, int d) {
  check_dim(comp, d);
  std::vector<Trace> out;
  if (comp.empty()) return out;
  for_each_flat(comp.space, d, [&](const Flat& flat) {
    IndexSet trace;
    for (auto p : flat.points) {
      if (comp.contains(p)) trace.push_back(p);
    }
    if (!trace.empty()) out.push_back(Trace{std::move(trace), flat});
    return true;
  });
  return out;
}

std::optional<int> max_flat_dimension(const ComplementSet& comp) {
  if (comp.empty()) return std::nullopt;
  for (int d = comp.space.dim(); d > 0; --d) {
    bool found = false;
    for_each_flat(comp.space, d, [&](const Flat& flat) {
      found = std::all_of(flat.points.begin(), flat.points.end(), [&](PointIndex p) { return comp.contains(p); });
      return !found;
    });
    if (found) return d;
  }
  return 0;
}

Arrangement parse_arrangement(std::istream& in, std::string name) {
  std::string line;
  std::optional<Space> space;
  std::vector<Coords> forms;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!space) {
      std::string kind;
      long long n = 0, q = 0;
      if (!(fields >> kind >> n >> q)) fail("expected header `kind n q`");
      SpaceKind sk;
      if (kind == "projective" || kind == "pg") {
        sk = SpaceKind::projective;
      } else if (kind == "affine" || kind == "ag") {
        sk = SpaceKind::affine;
      } else {
        fail("unknown space kind '" + kind + "'");
      }
      if (n < 1 || q < 2 || q > Field::kMaxOrder) fail("invalid dimension or field order");
      space.emplace(sk, static_cast<int>(n), static_cast<std::uint32_t>(q));
      continue;
    }
    Coords coeffs;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(token, &used);
      } catch (const std::exception&) {
        fail("coefficient '" + token + "' is not an integer");
      }
      if (used != token.size() || value >= space->q()) fail("coefficient '" + token + "' is not a field element code");
      coeffs.push_back(static_cast<Element>(value));
    }
    if (coeffs.size() != static_cast<std::size_t>(space->dim()) + 1) {
      fail("expected " + std::to_string(space->dim() + 1) + " coefficients, got " + std::to_string(coeffs.size()));
    }
    forms.push_back(std::move(coeffs));
  }
  if (!space) throw Error(ErrorKind::ParseError, "missing header line");
  return Arrangement(*space, forms, std::move(name));
}

void write_arrangement(std::ostream& out, const Arrangement& arr) {
  const Space& s = arr.space();
  out << to_string(s.kind()) << ' ' << s.dim() << ' ' << s.q() << '\n';
  for (const auto& h : arr.forms()) {
    for (std::size_t i = 0; i < h.coeffs.size(); ++i) out << (i ? " " : "") << h.coeffs[i];
    out << '\n';
  }
}

}  // namespace blockset
