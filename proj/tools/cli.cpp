// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "blockset/braid.hpp"
#include "blockset/constructions.hpp"
#include "blockset/error.hpp"

namespace blockset::cli {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------- input

SpaceKind parse_kind(const std::string& s) {
  if (s == "pg" || s == "projective") return SpaceKind::projective;
  if (s == "ag" || s == "affine") return SpaceKind::affine;
  throw Error(ErrorKind::InvalidArgument, "unknown space kind '" + s + "' (expected pg or ag)");
}

std::vector<long long> parse_numbers(const std::string& text, const std::string& what) {
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == ';') c = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<long long> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || v < 0) {
      throw Error(ErrorKind::ParseError, what + " '" + text + "': '" + token + "' is not a field element code");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, what + " '" + text + "' is empty");
  return out;
}

Coords parse_coords(const std::string& text, const Space& space, std::size_t expected, const std::string& what) {
  const auto nums = parse_numbers(text, what);
  if (nums.size() != expected) {
    throw Error(ErrorKind::DimensionMismatch, what + " '" + text + "' has " + std::to_string(nums.size()) +
                                                  " entries, " + space.label() + " needs " + std::to_string(expected));
  }
  Coords c;
  for (auto v : nums) {
    if (v >= static_cast<long long>(space.q())) {
      throw Error(ErrorKind::InvalidArgument, what + " '" + text + "': " + std::to_string(v) + " is not in GF(" +
                                                  std::to_string(space.q()) + ")");
    }
    c.push_back(static_cast<Element>(v));
  }
  return c;
}

PointIndex parse_point(const std::string& text, const Space& space) {
  const Coords c = parse_coords(text, space, space.coord_count(), "point");
  PointIndex p = 0;
  if (!space.locate(c, p)) throw Error(ErrorKind::InvalidArgument, "point '" + text + "' is the zero vector");
  return p;
}

IndexSet parse_points(const std::vector<std::string>& texts, const Space& space) {
  IndexSet out;
  for (const auto& t : texts) out.push_back(parse_point(t, space));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Arrangement read_arrangement_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open arrangement file '" + path + "'");
  return parse_arrangement(in, std::filesystem::path(path).stem().string());
}

struct SpaceArgs {
  std::string kind = "pg";
  int n = 2;
  std::uint32_t q = 2;
  std::string file;
  std::vector<std::string> forms;
  bool braid = false;
  CLI::Option* kind_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* q_opt = nullptr;
};

void add_space_options(CLI::App* app, SpaceArgs& a) {
  a.kind_opt = app->add_option("--space", a.kind, "pg or ag")->capture_default_str();
  a.n_opt = app->add_option("--n", a.n, "dimension")->capture_default_str();
  a.q_opt = app->add_option("--q", a.q, "field order")->capture_default_str();
  app->add_option("--arrangement", a.file, "arrangement file; its header fixes the space");
  app->add_option("--form", a.forms, "hyperplane coefficients such as \"1 0 0\" (repeatable)");
  app->add_flag("--braid", a.braid, "add the braid hyperplanes x_i = x_j on all coordinates");
}

struct Setting {
  Space space;
  Arrangement arrangement;
};

Setting resolve(const SpaceArgs& a) {
  std::optional<Arrangement> file;
  if (!a.file.empty()) file = read_arrangement_file(a.file);
  std::optional<Space> space;
  if (file) {
    const Space& s = file->space();
    if ((a.kind_opt->count() && parse_kind(a.kind) != s.kind()) || (a.n_opt->count() && a.n != s.dim()) ||
        (a.q_opt->count() && a.q != s.q())) {
      throw Error(ErrorKind::InvalidArgument, "--space/--n/--q disagree with the header of " + a.file);
    }
    space = s;
  } else {
    space.emplace(parse_kind(a.kind), a.n, a.q);
  }
  std::vector<Coords> forms;
  std::string name;
  if (file) {
    for (const auto& h : file->forms()) forms.push_back(h.coeffs);
    name = file->name();
  }
  if (a.braid) {
    const Arrangement braid = braid_arrangement(*space);
    for (const auto& h : braid.forms()) forms.push_back(h.coeffs);
    name = name.empty() ? "braid" : name + "+braid";
  }
  for (const auto& text : a.forms) forms.push_back(parse_coords(text, *space, static_cast<std::size_t>(space->dim()) + 1, "form"));
  if (name.empty() && !forms.empty()) name = "custom";
  return {*space, Arrangement(*space, forms, name)};
}

// --------------------------------------------------------------- output

json coords_json(const Space& space, PointIndex p) {
  json a = json::array();
  for (auto c : space.coords(p)) a.push_back(c);
  return a;
}

json points_json(const Space& space, const IndexSet& points) {
  json a = json::array();
  for (auto p : points) a.push_back(coords_json(space, p));
  return a;
}

json forms_json(const Arrangement& arr) {
  json a = json::array();
  for (const auto& h : arr.forms()) a.push_back(h.coeffs);
  return a;
}

json space_json(const Space& s) {
  return {{"label", s.label()}, {"kind", to_string(s.kind())}, {"n", s.dim()}, {"q", s.q()}};
}

json arrangement_json(const Arrangement& arr) {
  return {{"name", arr.name()}, {"size", arr.size()}, {"forms", forms_json(arr)}};
}

json field_json(const Field& f) {
  return {{"order", f.order()}, {"characteristic", f.characteristic()}, {"degree", f.degree()},
          {"modulus", f.modulus_string()}};
}

json optional_size(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

struct Report {
  std::string command;
  json parameters = json::object();
  json result = json::object();
  json meta = json::object();
  json warnings = json::array();
  const Field* field = nullptr;
};

struct OutputArgs {
  bool no_meta = false;
  std::string format = "json";
};

void print_table(const json& result, std::ostream& out) {
  for (const auto& [key, value] : result.items()) {
    if (value.is_primitive()) {
      out << key << '\t' << value.dump() << '\n';
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      std::vector<std::string> cols;
      for (const auto& [k, v] : value.front().items())
        if (v.is_primitive()) cols.push_back(k);
      out << key << '\n';
      for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "\t" : "") << cols[i];
      out << '\n';
      for (const auto& row : value) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "\t" : "") << row.value(cols[i], json()).dump();
        out << '\n';
      }
    } else {
      out << key << '\t' << value.dump() << '\n';
    }
  }
}

void emit(const Report& r, const OutputArgs& o, std::ostream& out, std::ostream& err) {
  for (const auto& w : r.warnings) err << "warning: " << w.get<std::string>() << '\n';
  if (o.format == "table") {
    print_table(r.result, out);
    return;
  }
  json j;
  j["version"] = kReportVersion;
  j["artifact"] = kArtifactVersion;
  j["command"] = r.command;
  j["parameters"] = r.parameters;
  j["result"] = r.result;
  j["warnings"] = r.warnings;
  if (r.field) j["field"] = field_json(*r.field);
  if (!o.no_meta) j["meta"] = r.meta;
  out << j.dump(2) << '\n';
}

json setting_parameters(const Setting& s) {
  return {{"space", space_json(s.space)}, {"arrangement", arrangement_json(s.arrangement)}};
}

void note_vacuous(Report& r, const BlockingInstance& inst) {
  if (inst.vacuous()) {
    r.warnings.push_back("the blocked family of " + inst.space.label() +
                         " is empty; every set, including the empty set, blocks it (vacuous)");
  }
}

// ------------------------------------------------------------- commands

struct BlockArgs {
  int t = 1;
  std::string scope = "contained";
  std::string convention = "plain";
};

void add_block_options(CLI::App* app, BlockArgs& b, bool with_convention) {
  app->add_option("--t", b.t, "blocking level")->capture_default_str();
  app->add_option("--scope", b.scope, "contained or touching")->capture_default_str();
  if (with_convention) app->add_option("--convention", b.convention, "plain, minimal or nontrivial")->capture_default_str();
}

struct SearchArgs {
  std::size_t cap = 0;
  std::uint64_t budget_ms = 0;
  std::uint64_t node_budget = 0;
  unsigned workers = 1;
  bool first_feasible = false;
};

void add_search_options(CLI::App* app, SearchArgs& s, bool with_cap) {
  if (with_cap) {
    app->add_option("--cap", s.cap, "largest admissible size (0: no cap)");
    app->add_flag("--first-feasible", s.first_feasible, "stop at the first witness within the cap");
  }
  app->add_option("--budget", s.budget_ms, "time budget in milliseconds (0: none)");
  app->add_option("--node-budget", s.node_budget, "search node budget (0: none)");
  app->add_option("--workers", s.workers, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
}

SearchOptions to_options(const SearchArgs& s, Convention c) {
  SearchOptions o;
  o.require_nontrivial = c == Convention::nontrivial;
  if (s.cap) o.size_cap = s.cap;
  o.first_feasible = s.first_feasible;
  if (s.budget_ms) o.time_budget = std::chrono::milliseconds(s.budget_ms);
  if (s.node_budget) o.node_budget = s.node_budget;
  o.workers = s.workers;
  return o;
}

json search_parameters(const SearchArgs& s) {
  return {{"cap", s.cap ? json(s.cap) : json(nullptr)},
          {"first_feasible", s.first_feasible},
          {"budget_ms", s.budget_ms ? json(s.budget_ms) : json(nullptr)},
          {"node_budget", s.node_budget ? json(s.node_budget) : json(nullptr)}};
}

int cmd_space(const SpaceArgs& sa, bool list_points, int flats_dim, Report& r) {
  const Setting s = resolve(sa);
  r.field = &s.space.field();
  r.parameters = {{"space", space_json(s.space)}, {"points", list_points}, {"flats", flats_dim >= 0 ? json(flats_dim) : json(nullptr)}};
  json counts = json::array();
  for (int d = 0; d <= s.space.dim(); ++d) counts.push_back({{"d", d}, {"count", flat_count(s.space, d).str()}});
  r.result["point_count"] = s.space.point_count();
  r.result["flat_counts"] = counts;
  if (list_points) {
    IndexSet all(s.space.point_count());
    for (PointIndex i = 0; i < all.size(); ++i) all[i] = i;
    r.result["point_list"] = points_json(s.space, all);
  }
  if (flats_dim >= 0) {
    json list = json::array();
    for_each_flat(s.space, flats_dim, [&](const Flat& f) {
      list.push_back(points_json(s.space, f.points));
      return true;
    });
    r.result["flat_list"] = list;
  }
  return kExitOk;
}

int cmd_arrangement(const SpaceArgs& sa, bool emit_text, int correspond, Report& r, std::ostream& out, bool& printed) {
  const Setting s = resolve(sa);
  Arrangement arr = correspond >= 0 ? corresponding_arrangement(s.arrangement, correspond) : s.arrangement;
  if (emit_text) {
    write_arrangement(out, arr);
    printed = true;
    return kExitOk;
  }
  r.field = &s.space.field();
  r.parameters = setting_parameters(s);
  r.parameters["correspond"] = correspond >= 0 ? json(correspond) : json(nullptr);
  r.result["space"] = space_json(arr.space());
  r.result["arrangement"] = arrangement_json(arr);
  return kExitOk;
}

int cmd_complement(const SpaceArgs& sa, bool members, int contained, int touching, Report& r) {
  const Setting s = resolve(sa);
  r.field = &s.space.field();
  r.parameters = setting_parameters(s);
  const auto comp = complement(s.space, s.arrangement);
  r.result["size"] = comp.size();
  r.result["removed"] = s.space.point_count() - comp.size();
  const auto d = max_flat_dimension(comp);
  r.result["max_flat_dimension"] = d ? json(*d) : json(nullptr);
  if (members) r.result["members"] = points_json(s.space, comp.members);
  if (contained >= 0) {
    json list = json::array();
    for (const auto& f : flats_in_complement(comp, contained)) list.push_back(points_json(s.space, f.points));
    r.result["contained_flats"] = {{"d", contained}, {"count", list.size()}, {"flats", list}};
  }
  if (touching >= 0) {
    json list = json::array();
    for (const auto& tr : touching_traces(comp, touching)) list.push_back(points_json(s.space, tr.points));
    r.result["touching_traces"] = {{"d", touching}, {"count", list.size()}, {"traces", list}};
  }
  return kExitOk;
}

json instance_summary(const BlockingInstance& inst) {
  return {{"universe", inst.universe.size()},     {"family", inst.family.size()},
          {"forbidden", inst.forbidden.size()},   {"blocked_dim", inst.blocked_dim},
          {"forbidden_dim", inst.forbidden_dim}, {"vacuous", inst.vacuous()}};
}

int cmd_instance(const SpaceArgs& sa, const BlockArgs& b, bool dump, Report& r) {
  const Setting s = resolve(sa);
  r.field = &s.space.field();
  r.parameters = setting_parameters(s);
  r.parameters["t"] = b.t;
  r.parameters["scope"] = b.scope;
  const auto inst = build_instance(s.space, s.arrangement, b.t, parse_scope(b.scope));
  r.result["instance"] = instance_summary(inst);
  if (dump) {
    r.result["universe"] = points_json(s.space, inst.universe);
    json fam = json::array(), forb = json::array();
    for (const auto& f : inst.family) fam.push_back(points_json(s.space, f));
    for (const auto& f : inst.forbidden) forb.push_back(points_json(s.space, f));
    r.result["family"] = fam;
    r.result["forbidden"] = forb;
  }
  note_vacuous(r, inst);
  return kExitOk;
}

int cmd_verify(const SpaceArgs& sa, const BlockArgs& b, const std::vector<std::string>& texts, Report& r) {
  const Setting s = resolve(sa);
  r.field = &s.space.field();
  r.parameters = setting_parameters(s);
  r.parameters["t"] = b.t;
  r.parameters["scope"] = b.scope;
  const auto inst = build_instance(s.space, s.arrangement, b.t, parse_scope(b.scope));
  const IndexSet set = parse_points(texts, s.space);
  r.parameters["set"] = points_json(s.space, set);
  const auto miss = first_unblocked(inst, set);
  r.result["size"] = set.size();
  r.result["blocking"] = !miss.has_value();
  r.result["minimal"] = miss ? json(nullptr) : json(is_minimal(inst, set));
  r.result["nontrivial"] = is_nontrivial(inst, set);
  r.result["first_unblocked"] = miss ? points_json(s.space, inst.family[*miss]) : json(nullptr);
  note_vacuous(r, inst);
  return kExitOk;
}

int cmd_search(const SpaceArgs& sa, const BlockArgs& b, const SearchArgs& sr, Report& r) {
  const Setting s = resolve(sa);
  const Convention conv = parse_convention(b.convention);
  r.field = &s.space.field();
  r.parameters = setting_parameters(s);
  r.parameters["t"] = b.t;
  r.parameters["scope"] = b.scope;
  r.parameters["convention"] = to_string(conv);
  r.parameters["search"] = search_parameters(sr);
  const auto inst = build_instance(s.space, s.arrangement, b.t, parse_scope(b.scope));
  auto res = min_blocking_set(inst, to_options(sr, conv));
  if (conv == Convention::minimal && res.witness && !res.witness->empty() && !is_minimal(inst, *res.witness)) {
    throw Error(ErrorKind::PreconditionFailed, "minimum witness is not minimal");
  }
  r.result["instance"] = instance_summary(inst);
  r.result["verdict"] = to_string(res.verdict);
  r.result["size"] = optional_size(res.size);
  r.result["optimal"] = res.optimal;
  r.result["witness"] = res.witness ? points_json(s.space, *res.witness) : json(nullptr);
  if (res.certificate) {
    r.result["certificate"] = {{"dim", res.certificate->subspace.dim},
                               {"points", points_json(s.space, res.certificate->subspace.points)},
                               {"sub_universe", res.certificate->sub_universe},
                               {"sub_family", res.certificate->sub_family}};
  }
  r.meta = {{"nodes", res.nodes}, {"elapsed_seconds", res.elapsed.count()}, {"workers", sr.workers}};
  note_vacuous(r, inst);
  return res.verdict == Verdict::timeout ? kExitTimeout : kExitOk;
}

struct ScanArgs {
  int t = 1;
  std::uint32_t q = 2;
  std::string kind = "projective";
  std::string scope = "contained";
  std::string convention = "nontrivial";
  int nmin = 1;
  int nmax = 2;
  bool witness = false;
};

int cmd_scan(const ScanArgs& a, const SearchArgs& sr, Report& r) {
  const Convention conv = parse_convention(a.convention);
  const Scope scope = parse_scope(a.scope);
  r.field = Field::make(a.q).get();
  r.parameters = {{"t", a.t},       {"q", a.q},         {"kind", a.kind},        {"scope", to_string(scope)},
                  {"convention", to_string(conv)}, {"nmin", a.nmin}, {"nmax", a.nmax}, {"search", search_parameters(sr)}};
  ScanOptions o;
  o.n_min = a.nmin;
  o.n_max = a.nmax;
  o.search = to_options(sr, conv);
  const auto table = threshold_scan(a.t, named_family(a.kind, a.q), scope, conv, o);
  json rows = json::array(), nodes = json::array();
  bool timed_out = false;
  for (const auto& row : table.rows) {
    json j = {{"n", row.n},
              {"verdict", to_string(row.verdict)},
              {"min_size", optional_size(row.min_size)},
              {"optimal", row.optimal},
              {"universe", row.universe},
              {"family", row.family}};
    if (a.witness) {
      const Arrangement arr = named_family(a.kind, a.q)(row.n);
      j["witness"] = row.witness ? points_json(arr.space(), *row.witness) : json(nullptr);
    }
    if (row.verdict == Verdict::vacuous) r.warnings.push_back("n=" + std::to_string(row.n) + ": vacuous family");
    timed_out = timed_out || row.verdict == Verdict::timeout;
    rows.push_back(j);
    nodes.push_back(row.nodes);
  }
  r.result["rows"] = rows;
  r.result["threshold"] = table.threshold ? json(*table.threshold) : json(nullptr);
  r.result["monotonicity_violations"] = table.monotonicity_violations;
  r.meta = {{"nodes", nodes}, {"workers", sr.workers}};
  return timed_out ? kExitTimeout : kExitOk;
}

struct BraidArgs {
  std::uint32_t q = 3;
  int m = 0;
  bool lines = false;
  bool transversal = false;
  bool complement = false;
  bool escape = false;
  bool existence = false;
  std::vector<std::string> choose;
  std::string x, y;
  int n = 1;
  int t = 1;
  std::string convention = "plain";
  std::string scope = "touching";
  std::string kind = "pg";
};

int cmd_braid(const BraidArgs& a, const SearchArgs& sr, Report& r) {
  if (!a.lines && !a.transversal && !a.complement && !a.escape && !a.existence) {
    throw Error(ErrorKind::InvalidArgument, "braid needs one of --lines, --transversal, --complement, --escape, --existence");
  }
  const int m = a.m > 0 ? a.m : static_cast<int>(a.q);
  r.field = Field::make(a.q).get();
  r.parameters = {{"q", a.q}, {"m", m}};
  int code = kExitOk;
  std::optional<Space> ag;
  auto affine = [&]() -> const Space& {
    if (!ag) ag.emplace(SpaceKind::affine, m, a.q);
    return *ag;
  };
  if (a.complement) {
    const auto pts = braid_complement_points(BraidSpec{m, a.q, SpaceKind::affine});
    json list = json::array();
    for (const auto& p : pts) list.push_back(p.coords);
    r.result["complement"] = {{"count", pts.size()}, {"points", list}};
  }
  if (a.lines) {
    const auto lines = braid_lines(a.q, m);
    const Space& s = affine();
    const auto contained = flats_in_complement(complement(s, braid_arrangement(s)), 1);
    const bool same = contained.size() == lines.size() && std::equal(lines.begin(), lines.end(), contained.begin());
    json list = json::array();
    for (const auto& l : lines) list.push_back({{"direction", Coords(l.row(0).begin(), l.row(0).end())}, {"points", points_json(s, l.points)}});
    r.result["lines"] = {{"count", lines.size()}, {"lines", list}, {"matches_contained_flats", same}};
  }
  if (a.transversal) {
    const Space& s = affine();
    std::optional<IndexSet> pick;
    if (!a.choose.empty()) pick = parse_points(a.choose, s);
    const auto b = braid_transversal(a.q, pick, m);
    const auto inst = braid_line_instance(a.q, m);
    r.parameters["choose"] = pick ? points_json(s, *pick) : json(nullptr);
    r.result["transversal"] = {{"size", b.size()},
                               {"points", points_json(s, b)},
                               {"blocking", is_blocking(inst, b)},
                               {"minimal", is_minimal(inst, b)}};
  }
  if (a.escape) {
    const Space& s = affine();
    const Coords x = parse_coords(a.x, s, s.coord_count(), "point");
    const Coords y = parse_coords(a.y, s, s.coord_count(), "point");
    r.parameters["x"] = x;
    r.parameters["y"] = y;
    const auto e = escape_parameter(s.field(), x, y);
    if (e) {
      r.result["escape"] = {{"t0", e->t0}, {"i", e->i}, {"j", e->j}, {"point", e->point}, {"on_hyperplane", e->on_hyperplane}};
    } else {
      r.result["escape"] = nullptr;
    }
  }
  if (a.existence) {
    const Convention conv = parse_convention(a.convention);
    const Scope scope = parse_scope(a.scope);
    const SpaceKind kind = parse_kind(a.kind);
    r.parameters["existence"] = {{"n", a.n}, {"t", a.t}, {"convention", to_string(conv)}, {"scope", to_string(scope)},
                                 {"kind", to_string(kind)}, {"search", search_parameters(sr)}};
    const auto e = braid_existence(a.n, a.q, a.t, conv, scope, kind, to_options(sr, conv));
    const Space s(kind, a.n, a.q);
    r.result["existence"] = {{"outcome", to_string(e.outcome)},
                             {"method", e.method},
                             {"complement_size", e.complement_size},
                             {"family_size", e.family_size},
                             {"verified", e.verified},
                             {"witness", e.witness ? points_json(s, *e.witness) : json(nullptr)}};
    if (e.outcome == BraidOutcome::vacuous) r.warnings.push_back("braid existence: vacuous family");
    if (e.outcome == BraidOutcome::timeout) code = kExitTimeout;
  }
  return code;
}

int cmd_classify(const SpaceArgs& sa, const BlockArgs& b, const std::string& pool_file, const SearchArgs& sr,
                 Report& r) {
  const Setting s = resolve(sa);
  const Convention conv = parse_convention(b.convention);
  r.field = &s.space.field();
  r.parameters = setting_parameters(s);
  r.parameters["t"] = b.t;
  r.parameters["scope"] = b.scope;
  r.parameters["convention"] = to_string(conv);
  std::vector<HyperplaneForm> pool;
  if (!pool_file.empty()) {
    const Arrangement p = read_arrangement_file(pool_file);
    if (!(p.space() == s.space)) throw Error(ErrorKind::DimensionMismatch, "pool lives in " + p.space().label());
    pool = p.forms();
    r.parameters["pool"] = arrangement_json(p);
  }
  const auto c = classify_arrangement(s.space, s.arrangement, b.t, parse_scope(b.scope), conv, to_options(sr, conv),
                                      pool_file.empty() ? nullptr : &pool);
  r.result["class"] = to_string(c.kind);
  r.result["without"] = to_string(c.without);
  r.result["with"] = to_string(c.with);
  r.result["cardinality"] = s.arrangement.size();
  r.result["minimal"] = c.minimal ? json(*c.minimal) : json(nullptr);
  r.result["smaller"] = c.smaller ? arrangement_json(*c.smaller) : json(nullptr);
  return c.kind == ArrangementClass::inconclusive ? kExitTimeout : kExitOk;
}

int cmd_selftest(unsigned cases, unsigned seed, Report& r) {
  r.parameters = {{"cases", cases}, {"seed", seed}};
  const auto t0 = std::chrono::steady_clock::now();
  const auto checks = run_selftest(cases, seed);
  json list = json::array();
  bool all = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  r.result["checks"] = list;
  r.result["passed"] = all;
  r.meta = {{"elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Search and verify point sets meeting flats that avoid given hyperplanes over GF(q)", "blockset"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kArtifactVersion);
  OutputArgs output;
  app.add_flag("--no-meta", output.no_meta, "omit run statistics so reports are byte-stable");
  app.add_option("--format", output.format, "json or table")->capture_default_str()->check(CLI::IsMember({"json", "table"}));

  SpaceArgs sa_space, sa_arr, sa_comp, sa_inst, sa_verify, sa_search, sa_classify;
  BlockArgs ba;
  SearchArgs sr;

  auto* space_cmd = app.add_subcommand("space", "count and list points and flats");
  bool list_points = false;
  int flats_dim = -1;
  add_space_options(space_cmd, sa_space);
  space_cmd->add_flag("--points", list_points, "list every point");
  space_cmd->add_option("--flats", flats_dim, "list the flats of this dimension");

  auto* arr_cmd = app.add_subcommand("arrangement", "parse, normalize and transfer an arrangement");
  bool emit_text = false;
  int correspond = -1;
  add_space_options(arr_cmd, sa_arr);
  arr_cmd->add_flag("--emit", emit_text, "write the normalized arrangement in the text format");
  arr_cmd->add_option("--correspond", correspond, "reinterpret the equations in dimension k");

  auto* comp_cmd = app.add_subcommand("complement", "complement membership, contained flats and traces");
  bool members = false;
  int contained = -1, touching = -1;
  add_space_options(comp_cmd, sa_comp);
  comp_cmd->add_flag("--members", members, "list the complement points");
  comp_cmd->add_option("--contained", contained, "list contained flats of this dimension");
  comp_cmd->add_option("--touching", touching, "list touching traces of this dimension");

  auto* inst_cmd = app.add_subcommand("instance", "build and summarize a blocking instance");
  bool dump = false;
  add_space_options(inst_cmd, sa_inst);
  add_block_options(inst_cmd, ba, false);
  inst_cmd->add_flag("--dump", dump, "list universe, family and forbidden traces");

  auto* verify_cmd = app.add_subcommand("verify", "check a point set for blocking, minimality and nontriviality");
  std::vector<std::string> set_points;
  add_space_options(verify_cmd, sa_verify);
  add_block_options(verify_cmd, ba, false);
  verify_cmd->add_option("--point", set_points, "point as a coordinate tuple such as 0,1,2 (repeatable)");

  auto* search_cmd = app.add_subcommand("search", "exact minimum blocking set");
  add_space_options(search_cmd, sa_search);
  add_block_options(search_cmd, ba, true);
  add_search_options(search_cmd, sr, true);

  auto* scan_cmd = app.add_subcommand("scan", "existence table over the dimension");
  ScanArgs sc;
  scan_cmd->add_option("--t", sc.t, "blocking level")->capture_default_str();
  scan_cmd->add_option("--q", sc.q, "field order")->capture_default_str();
  scan_cmd->add_option("--kind", sc.kind, "projective, affine, affine-classical, braid or braid-affine")->capture_default_str();
  scan_cmd->add_option("--scope", sc.scope, "contained or touching")->capture_default_str();
  scan_cmd->add_option("--convention", sc.convention, "plain, minimal or nontrivial")->capture_default_str();
  scan_cmd->add_option("--nmin", sc.nmin, "smallest dimension")->capture_default_str();
  scan_cmd->add_option("--nmax", sc.nmax, "largest dimension")->capture_default_str();
  scan_cmd->add_flag("--witness", sc.witness, "include witnesses");
  add_search_options(scan_cmd, sr, false);

  auto* braid_cmd = app.add_subcommand("braid", "braid arrangement procedures");
  BraidArgs bra;
  braid_cmd->add_option("--q", bra.q, "field order")->capture_default_str();
  braid_cmd->add_option("--m", bra.m, "coordinates of the affine braid (default q)");
  braid_cmd->add_flag("--lines", bra.lines, "lines p + s(1,...,1) inside the affine complement");
  braid_cmd->add_flag("--transversal", bra.transversal, "one point per line");
  braid_cmd->add_option("--choose", bra.choose, "transversal point (repeatable)");
  braid_cmd->add_flag("--complement", bra.complement, "points with pairwise distinct coordinates");
  braid_cmd->add_flag("--escape", bra.escape, "escape parameter of the line through --x and --y");
  braid_cmd->add_option("--x", bra.x, "affine point");
  braid_cmd->add_option("--y", bra.y, "affine point");
  braid_cmd->add_flag("--existence", bra.existence, "existence of blocking sets in the braid complement");
  braid_cmd->add_option("--n", bra.n, "dimension for --existence")->capture_default_str();
  braid_cmd->add_option("--t", bra.t, "blocking level for --existence")->capture_default_str();
  braid_cmd->add_option("--convention", bra.convention, "plain, minimal or nontrivial")->capture_default_str();
  braid_cmd->add_option("--scope", bra.scope, "contained or touching")->capture_default_str();
  braid_cmd->add_option("--kind", bra.kind, "pg or ag")->capture_default_str();
  add_search_options(braid_cmd, sr, false);

  auto* classify_cmd = app.add_subcommand("classify", "blocking, unblocking or neutral arrangement");
  std::string pool_file;
  add_space_options(classify_cmd, sa_classify);
  add_block_options(classify_cmd, ba, true);
  classify_cmd->add_option("--pool", pool_file, "arrangement file of candidate hyperplanes for minimality");
  add_search_options(classify_cmd, sr, false);

  auto* self_cmd = app.add_subcommand("selftest", "oracle-equivalence and invariant suites");
  unsigned cases = 60, seed = 1;
  self_cmd->add_option("--cases", cases, "random oracle cases")->capture_default_str();
  self_cmd->add_option("--seed", seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Report report;
  bool printed = false;
  int code = kExitOk;
  try {
    if (*space_cmd) {
      report.command = "space";
      code = cmd_space(sa_space, list_points, flats_dim, report);
    } else if (*arr_cmd) {
      report.command = "arrangement";
      code = cmd_arrangement(sa_arr, emit_text, correspond, report, out, printed);
    } else if (*comp_cmd) {
      report.command = "complement";
      code = cmd_complement(sa_comp, members, contained, touching, report);
    } else if (*inst_cmd) {
      report.command = "instance";
      code = cmd_instance(sa_inst, ba, dump, report);
    } else if (*verify_cmd) {
      report.command = "verify";
      code = cmd_verify(sa_verify, ba, set_points, report);
    } else if (*search_cmd) {
      report.command = "search";
      code = cmd_search(sa_search, ba, sr, report);
    } else if (*scan_cmd) {
      report.command = "scan";
      code = cmd_scan(sc, sr, report);
    } else if (*braid_cmd) {
      report.command = "braid";
      code = cmd_braid(bra, sr, report);
    } else if (*classify_cmd) {
      report.command = "classify";
      code = cmd_classify(sa_classify, ba, pool_file, sr, report);
    } else if (*self_cmd) {
      report.command = "selftest";
      code = cmd_selftest(cases, seed, report);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (!printed) emit(report, output, out, err);
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("blockset");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace blockset::cli
