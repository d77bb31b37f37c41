#include "app.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "golodlab/error.hpp"
#include "golodlab/golod.hpp"

namespace golodlab::app {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"betti",   "series",    "golod-ring",     "golod-module",
                                              "certify-huneke", "massey", "construct", "verify-theorem",
                                              "largeness", "run"};
  return names;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InternalError*>(&e)) return 4;
  if (dynamic_cast<const CapError*>(&e)) return 3;
  if (dynamic_cast<const InputError*>(&e)) return 2;
  if (dynamic_cast<const json::exception*>(&e)) return 2;
  return 4;
}

// ---------------------------------------------------------------- spec parsing

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) bad(path.empty() ? k : path + "." + k, "unknown field");
  }
}

std::string str_of(const json& v, const std::string& path) {
  if (!v.is_string()) bad(path, "expected a string");
  return v.get<std::string>();
}

int int_of(const json& v, const std::string& path, int min) {
  if (!v.is_number_integer()) bad(path, "expected an integer");
  auto x = v.get<long long>();
  if (x < min || x > 1000000) bad(path, "must be at least " + std::to_string(min));
  return static_cast<int>(x);
}

std::vector<std::string> strings_of(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(str_of(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> ints_of(const json& v, const std::string& path, int min) {
  if (!v.is_array()) bad(path, "expected a list of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(int_of(v[i], path + "[" + std::to_string(i) + "]", min));
  return out;
}

ModuleSpec parse_module(const json& v) {
  ModuleSpec m;
  if (v.is_string()) {
    m.type = v.get<std::string>();
  } else {
    check_keys(v, {"type", "shift", "generators", "degrees", "relations", "ideal", "presentation"}, "module");
    // {"ideal": [...]} and {"presentation": [[...]], "degrees": [...]} are shorthands
    std::string rel_key = "relations";
    if (v.contains("ideal")) {
      m.type = "ideal";
      m.generators = strings_of(v["ideal"], "module.ideal");
    } else if (v.contains("presentation")) {
      m.type = "presentation";
      rel_key = "presentation";
    } else {
      if (!v.contains("type")) bad("module.type", "missing");
      m.type = str_of(v["type"], "module.type");
    }
    if (v.contains("shift")) m.shift = int_of(v["shift"], "module.shift", 0);
    if (v.contains("generators")) m.generators = strings_of(v["generators"], "module.generators");
    if (v.contains("degrees")) m.degrees = ints_of(v["degrees"], "module.degrees", 0);
    if (v.contains(rel_key)) {
      const auto& rel = v[rel_key];
      if (!rel.is_array()) bad("module." + rel_key, "expected a list of rows");
      for (std::size_t i = 0; i < rel.size(); ++i) {
        m.relations.push_back(strings_of(rel[i], "module." + rel_key + "[" + std::to_string(i) + "]"));
      }
    }
  }
  static const std::set<std::string> types{"residue-field", "regular", "ideal", "presentation"};
  if (!types.count(m.type)) bad("module.type", "unknown module type '" + m.type + "'");
  if (m.type == "ideal" && m.generators.empty()) bad("module.generators", "the module is zero (no generators)");
  if (m.type == "presentation") {
    if (m.degrees.empty() && !m.relations.empty()) m.degrees.assign(m.relations.front().size(), 0);
    if (m.degrees.empty()) bad("module.degrees", "the module is zero (no generators)");
    for (std::size_t i = 0; i < m.relations.size(); ++i) {
      if (m.relations[i].size() != m.degrees.size()) {
        bad("module.relations[" + std::to_string(i) + "]", "expected one entry per generator");
      }
    }
  }
  return m;
}

ConstructionSpec parse_construction(const json& v) {
  check_keys(v, {"type", "ideal", "n", "second_ideal"}, "construction");
  ConstructionSpec c;
  if (!v.contains("type")) bad("construction.type", "missing");
  c.type = str_of(v["type"], "construction.type");
  static const std::set<std::string> types{"trivial-extension", "fibre", "iterated-fibre", "fibre-over-field"};
  if (!types.count(c.type)) bad("construction.type", "unknown construction '" + c.type + "'");
  if (v.contains("ideal")) c.ideal = strings_of(v["ideal"], "construction.ideal");
  if (v.contains("n")) c.n = int_of(v["n"], "construction.n", 2);
  if (v.contains("second_ideal")) c.second_ideal = strings_of(v["second_ideal"], "construction.second_ideal");
  if ((c.type == "fibre" || c.type == "iterated-fibre") && c.ideal.empty()) bad("construction.ideal", "missing");
  if (c.type == "fibre-over-field" && c.second_ideal.empty()) bad("construction.second_ideal", "missing");
  return c;
}

}  // namespace

ProblemSpec parse_spec(const json& doc) {
  check_keys(doc, {"schema", "description", "command", "field", "ring", "module", "construction", "caps", "certify",
                   "massey", "theorem"},
             "");
  ProblemSpec s;
  s.raw = doc;
  if (!doc.contains("schema")) bad("schema", "missing");
  if (!doc["schema"].is_number_integer() || doc["schema"].get<long long>() != 1) bad("schema", "must be 1");
  if (doc.contains("command")) {
    s.command = str_of(doc["command"], "command");
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), s.command) == names.end() || s.command == "run") {
      bad("command", "unknown command '" + s.command + "'");
    }
  }
  if (doc.contains("field")) {
    try {
      s.field = FieldSpec::parse(str_of(doc["field"], "field"));
    } catch (const InputError& e) {
      bad("field", e.what());
    }
  }
  if (!doc.contains("ring")) bad("ring", "missing");
  const auto& ring = doc["ring"];
  check_keys(ring, {"variables", "weights", "ideal"}, "ring");
  if (!ring.contains("variables")) bad("ring.variables", "missing");
  s.variables = strings_of(ring["variables"], "ring.variables");
  if (s.variables.empty()) bad("ring.variables", "at least one variable is required");
  if (ring.contains("weights")) {
    s.weights = ints_of(ring["weights"], "ring.weights", 1);
    if (s.weights.size() != s.variables.size()) bad("ring.weights", "expected one weight per variable");
  } else {
    s.weights.assign(s.variables.size(), 1);
  }
  if (ring.contains("ideal")) s.ideal = strings_of(ring["ideal"], "ring.ideal");
  if (doc.contains("module")) s.module = parse_module(doc["module"]);
  if (doc.contains("construction")) s.construction = parse_construction(doc["construction"]);
  if (doc.contains("caps")) {
    const auto& caps = doc["caps"];
    check_keys(caps, {"h", "d"}, "caps");
    if (caps.contains("h")) s.h_cap = int_of(caps["h"], "caps.h", 0);
    if (caps.contains("d")) s.d_cap = int_of(caps["d"], "caps.d", 0);
  }
  if (doc.contains("certify")) {
    if (!doc["certify"].is_boolean()) bad("certify", "expected a boolean");
    s.certify = doc["certify"].get<bool>();
  }
  if (doc.contains("massey")) {
    const auto& m = doc["massey"];
    check_keys(m, {"mode", "order", "tuple_limit", "budget", "classes"}, "massey");
    if (m.contains("mode")) s.massey.mode = str_of(m["mode"], "massey.mode");
    if (s.massey.mode != "module" && s.massey.mode != "ring") bad("massey.mode", "expected 'module' or 'ring'");
    if (m.contains("order")) s.massey.order = int_of(m["order"], "massey.order", 2);
    if (m.contains("tuple_limit")) s.massey.tuple_limit = int_of(m["tuple_limit"], "massey.tuple_limit", 1);
    if (m.contains("budget")) s.massey.budget = int_of(m["budget"], "massey.budget", 1);
    if (m.contains("classes")) {
      const auto& cl = m["classes"];
      if (!cl.is_array()) bad("massey.classes", "expected a list of [l, d, index] triples");
      for (std::size_t i = 0; i < cl.size(); ++i) {
        auto t = ints_of(cl[i], "massey.classes[" + std::to_string(i) + "]", 0);
        if (t.size() != 3) bad("massey.classes[" + std::to_string(i) + "]", "expected [l, d, index]");
        s.massey.classes.push_back({t[0], t[1], t[2]});
      }
      if (s.massey.classes.size() < 2) bad("massey.classes", "at least two classes are required");
    }
  }
  if (doc.contains("theorem")) {
    const auto& t = doc["theorem"];
    if (t.is_string()) {
      s.theorem = t.get<std::string>();
    } else {
      check_keys(t, {"name", "ns"}, "theorem");
      if (!t.contains("name")) bad("theorem.name", "missing");
      s.theorem = str_of(t["name"], "theorem.name");
      if (t.contains("ns")) s.theorem_ns = ints_of(t["ns"], "theorem.ns", 2);
    }
    auto names = theorem_names();
    if (std::find(names.begin(), names.end(), s.theorem) == names.end()) {
      bad("theorem", "unknown theorem '" + s.theorem + "'");
    }
  }
  return s;
}

// ---------------------------------------------------------------- building the instance

namespace {

template <class F>
struct Built {
  RingPtr<F> ring;
  AlgebraPtr<F> base;
  ModulePtr<F> module;  // over base
  bool module_given = false;
  std::vector<Homogeneous<F>> construction_ideal;
  std::optional<Retract<F>> retract;
  AlgebraPtr<F> second;
  AlgebraPtr<F> algebra;  // constructed algebra, or base
  std::vector<AlgebraMap<F>> sections;
};

template <class F>
Poly<F> parse_at(const std::string& text, const RingPtr<F>& ring, const std::string& path) {
  try {
    return parse_poly<F>(text, ring);
  } catch (const InputError& e) {
    bad(path, e.what());
  }
}

template <class F>
HomogeneousIdeal<F> ideal_at(const std::vector<std::string>& gens, const RingPtr<F>& ring, const std::string& path) {
  std::vector<Poly<F>> ps;
  for (std::size_t i = 0; i < gens.size(); ++i) ps.push_back(parse_at(gens[i], ring, path + "[" + std::to_string(i) + "]"));
  try {
    HomogeneousIdeal<F> out(ring, std::move(ps));
    if (out.has_unit_generator()) bad(path, "the ideal is the whole ring");
    return out;
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    bad(path, e.what());
  }
}

template <class F>
std::optional<Homogeneous<F>> element_at(const AlgebraPtr<F>& a, const Poly<F>& p, const std::string& path) {
  auto info = p.weighted_degree();
  if (info.kind == DegreeInfo::Kind::zero) return std::nullopt;
  if (!info.is_homogeneous()) bad(path, "not homogeneous");
  const int d = static_cast<int>(info.degree);
  if (a->known_zero(d)) return std::nullopt;
  if (d > a->cap()) throw CapError(path + ": degree " + std::to_string(d) + " lies above the stored window");
  auto v = a->presentation()->to_vector(p, d);
  if (v.empty()) return std::nullopt;
  return Homogeneous<F>{d, std::move(v)};
}

template <class F>
std::vector<Homogeneous<F>> elements_at(const AlgebraPtr<F>& a, const std::vector<std::string>& gens,
                                        const std::string& path) {
  std::vector<Homogeneous<F>> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (auto e = element_at(a, parse_at(gens[i], a->presentation()->ring, p), p)) out.push_back(*e);
  }
  return out;
}

bool module_is_zero_everywhere(const auto& m) {
  for (int d = 0; d <= m.cap(); ++d) {
    if (m.dim(d) != 0) return false;
  }
  return true;
}

template <class F>
ModulePtr<F> build_module(const ModuleSpec& ms, const AlgebraPtr<F>& a) {
  if (ms.type == "residue-field") return residue_field(a, ms.shift);
  if (ms.type == "regular") return regular_module(a);
  if (ms.type == "ideal") {
    auto gens = elements_at(a, ms.generators, "module.generators");
    if (gens.empty()) bad("module.generators", "the module is zero (every generator vanishes in R)");
    return ideal_as_module(a, gens);
  }
  const auto& ring = a->presentation()->ring;
  auto f0 = free_module(a, ms.degrees);
  std::vector<Homogeneous<F>> rels;
  for (std::size_t r = 0; r < ms.relations.size(); ++r) {
    const std::string path = "module.relations[" + std::to_string(r) + "]";
    std::optional<int> deg;
    std::vector<std::optional<Homogeneous<F>>> parts;
    for (std::size_t k = 0; k < ms.degrees.size(); ++k) {
      const std::string pk = path + "[" + std::to_string(k) + "]";
      auto p = parse_at(ms.relations[r][k], ring, pk);
      auto info = p.weighted_degree();
      if (info.kind == DegreeInfo::Kind::zero) {
        parts.emplace_back();
        continue;
      }
      if (!info.is_homogeneous()) bad(pk, "not homogeneous");
      const int d = static_cast<int>(info.degree) + ms.degrees[k];
      if (deg && *deg != d) bad(path, "entries have different degrees");
      deg = d;
      parts.push_back(element_at(a, p, pk));
    }
    if (!deg) continue;
    if (f0->known_zero(*deg)) continue;
    if (*deg > f0->cap()) throw CapError(path + ": degree " + std::to_string(*deg) + " lies above the stored window");
    VectorBuilder<F> b(a->field());
    std::uint32_t off = 0;
    for (std::size_t k = 0; k < ms.degrees.size(); ++k) {
      if (ms.degrees[k] > *deg) continue;
      if (parts[k]) b.add_vector(shift_indices(parts[k]->vec, off));
      off += static_cast<std::uint32_t>(a->known_zero(*deg - ms.degrees[k]) ? 0 : a->dim(*deg - ms.degrees[k]));
    }
    auto v = b.build();
    if (!v.empty()) rels.push_back({*deg, std::move(v)});
  }
  auto m = cokernel_module(a, ms.degrees, rels);
  if (module_is_zero_everywhere(*m)) bad("module.relations", "the module is zero");
  return m;
}

template <class F>
int storage_cap(const ProblemSpec& s, const HomogeneousIdeal<F>& ideal, const GroebnerBasis<F>& gb) {
  const int maxw = *std::max_element(s.weights.begin(), s.weights.end());
  const int sumw = std::accumulate(s.weights.begin(), s.weights.end(), 0);
  int extra = 0;
  if (s.module) {
    extra = s.module->shift;
    for (int d : s.module->degrees) extra = std::max(extra, d);
  }
  int cap = s.d_cap.value_or(s.h_cap * maxw + extra + 2);
  int lcm = static_cast<int>(gb.lcm_degree());
  for (auto d : ideal.degrees()) lcm = std::max(lcm, static_cast<int>(d));
  return std::max({cap, lcm + sumw, 2 * maxw});
}

template <class F>
Built<F> build(const ProblemSpec& s, const F& field) {
  Built<F> b;
  b.ring = make_ring<F>(field, s.variables, s.weights);
  auto ideal = ideal_at(s.ideal, b.ring, "ring.ideal");
  GroebnerBasis<F> gb(ideal);
  const int cap = storage_cap(s, ideal, gb);
  b.base = quotient_algebra(ideal, cap);
  b.module_given = s.module.has_value();
  const bool te = s.construction && s.construction->type == "trivial-extension";
  if (s.module) {
    b.module = build_module(*s.module, b.base);
  } else {
    b.module = residue_field(b.base, te ? 1 : 0);
  }
  b.algebra = b.base;
  if (!s.construction) return b;
  const auto& c = *s.construction;
  if (!c.ideal.empty()) {
    b.construction_ideal = elements_at(b.base, c.ideal, "construction.ideal");
  }
  if (c.type == "trivial-extension") {
    if (b.module->dim(0) != 0) bad("module", "a trivial extension needs a module vanishing in degree 0 (set shift >= 1)");
    b.retract = retract_from_trivial_extension(b.base, b.module);
    b.algebra = b.retract->algebra;
    b.sections = b.retract->sections;
  } else if (c.type == "fibre") {
    if (b.construction_ideal.empty()) bad("construction.ideal", "the ideal is zero in R");
    b.retract = retract_from_fibre(b.base, b.construction_ideal);
    b.algebra = b.retract->algebra;
    b.sections = b.retract->sections;
  } else if (c.type == "iterated-fibre") {
    if (b.construction_ideal.empty()) bad("construction.ideal", "the ideal is zero in R");
    auto fp = iterated_fibre(b.base, b.construction_ideal, c.n);
    b.algebra = fp.algebra;
    b.sections = fp.projections;
  } else {
    auto second = ideal_at(c.second_ideal, b.ring, "construction.second_ideal");
    b.second = quotient_algebra(second, cap);
    auto fp = fibre_over_residue_field(b.base, b.second);
    b.algebra = fp.algebra;
    b.sections = fp.projections;
  }
  return b;
}

/// The module the series commands look at: M over R, or over the constructed algebra.
template <class F>
ModulePtr<F> target_module(const Built<F>& b, const ProblemSpec& s) {
  if (!s.construction) return b.module;
  const bool te = s.construction->type == "trivial-extension";
  if (b.module_given && !te) return restrict_along(b.sections.front(), b.module);
  return residue_field(b.algebra);
}

// ---------------------------------------------------------------- report pieces

template <class F>
json coords_json(const F& field, const SparseVector<F>& v) {
  json out = json::array();
  for (const auto& [i, x] : v) out.push_back(json::array({i, field.to_string(x)}));
  return out;
}

template <class F>
json class_json(const KoszulComplex<F>& k, const HomologyClass<F>& c) {
  return {{"l", c.l},
          {"d", c.d},
          {"class", coords_json(k.field(), c.coords)},
          {"cycle", k.format(c.l, c.d, k.homology(c.l, c.d).representative(c.coords))}};
}

json series_json(const std::string& name, const TruncatedSeries& s) {
  return {{"coefficients", s.coeffs}, {"complete_through", s.complete_through()}, {"text", format_truncated(name, s)}};
}

json betti_json(const std::vector<std::vector<std::size_t>>& table) {
  std::size_t width = 0;
  for (const auto& row : table) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) width = std::max(width, j + 1);
    }
  }
  json rows = json::array();
  json totals = json::array();
  for (const auto& row : table) {
    rows.push_back(std::vector<std::size_t>(row.begin(), row.begin() + std::min(width, row.size())));
    totals.push_back(std::accumulate(row.begin(), row.end(), std::size_t{0}));
  }
  return {{"table", rows}, {"totals", totals}};
}

template <class F>
json massey_json(const KoszulComplex<F>& ka, const KoszulComplex<F>* km, const std::vector<HomologyClass<F>>& v,
                 const MasseyResult<F>& r) {
  json classes = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) classes.push_back(class_json(i == 0 && km ? *km : ka, v[i]));
  json out{{"type", "massey"},
           {"module_mode", km != nullptr},
           {"classes", classes},
           {"status", to_string(r.status)},
           {"reason", r.reason}};
  if (r.product) out["product"] = class_json(km ? *km : ka, *r.product);
  if (r.status == MasseyStatus::non_vanishing) {
    json sys = json::array();
    for (const auto& e : r.system) {
      const auto& k = e.in_module && km ? *km : ka;
      sys.push_back({{"i", e.i}, {"j", e.j}, {"l", e.l}, {"d", e.d}, {"chain", k.format(e.l, e.d, e.value)}});
    }
    out["system"] = sys;
    out["reverified"] = verify_massey_witness(ka, km, v, r);
  }
  return out;
}

template <class F>
json huneke_json(const HunekeCertificate<F>& c) {
  return {{"type", "huneke"},
          {"applicable", c.applicable},
          {"reason", c.reason},
          {"derivative_generators", c.derivative_generators},
          {"products_checked", c.products_checked},
          {"annihilator_checks", c.annihilator_checks}};
}

json verdict_json(const std::string& kind, const std::string& reason) {
  return {{"kind", kind}, {"reason", reason}};
}

json empty_series() {
  return {{"poincare", nullptr}, {"kappa_module", nullptr}, {"kappa_ring", nullptr}, {"serre_bound", nullptr}};
}

struct Report {
  json betti = nullptr;
  json series = empty_series();
  json verdict = nullptr;
  json witnesses = json::array();
  json completeness = json::object();
  int h_cap = 0;
  std::optional<int> d_cap;
  int exit_code = 0;
};

template <class F>
void fill_analysis(Report& rep, const GolodAnalysis<F>& g, const ModulePtr<F>& m, bool with_verdict) {
  rep.betti = betti_json(g.betti);
  rep.series = {{"poincare", series_json("P", g.poincare)},
                {"kappa_module", series_json("kappa_M", g.kappa_module)},
                {"kappa_ring", series_json("kappa_R", g.kappa_ring)},
                {"serre_bound", series_json("B", g.serre_bound)}};
  rep.d_cap = g.verdict.d_cap;
  rep.completeness = {{"poincare_complete_through", g.poincare.complete_through()},
                      {"kappa_exact", g.kappa_module.all_complete() && g.kappa_ring.all_complete()},
                      {"window_consistent", g.verdict.window_consistent}};
  if (!with_verdict) return;
  const auto& v = g.verdict;
  rep.verdict = {{"kind", to_string(v.kind)},
                 {"reason", v.reason},
                 {"h_cap", v.h_cap},
                 {"d_cap", v.d_cap},
                 {"window_consistent", v.window_consistent}};
  auto ka = KoszulComplex<F>::of_algebra(m->algebra());
  auto km = KoszulComplex<F>::of_module(m);
  if (v.mismatch) {
    rep.witnesses.push_back({{"type", "series-mismatch"},
                             {"i", v.mismatch->i},
                             {"computed", v.mismatch->computed},
                             {"bound", v.mismatch->bound}});
  }
  if (v.product) {
    const auto& w = *v.product;
    const auto& right = w.ring_product ? *ka : *km;
    rep.witnesses.push_back({{"type", "product"},
                             {"ring_product", w.ring_product},
                             {"left", class_json(*ka, w.left)},
                             {"right", class_json(right, w.right)},
                             {"product", class_json(right, w.product)},
                             {"reverified", verify_product_witness(*ka, *km, w)}});
  }
  if (v.massey) {
    rep.witnesses.push_back(
        massey_json(*ka, v.massey->module_mode ? km.get() : nullptr, v.massey->classes, v.massey->result));
  }
  if (v.huneke) rep.witnesses.push_back(huneke_json(*v.huneke));
  if (v.cycles) {
    rep.witnesses.push_back({{"type", "cycle-products"},
                             {"ring_cycles", v.cycles->ring_cycles},
                             {"module_cycles", v.cycles->module_cycles},
                             {"products_checked", v.cycles->products_checked}});
  }
  rep.witnesses.push_back({{"type", "massey-search"}, {"tuples_checked", g.massey_checked}});
}

template <class F>
GolodOptions golod_options(const ProblemSpec& s) {
  GolodOptions o;
  o.h_cap = s.h_cap;
  o.d_cap = s.d_cap;
  o.massey_order = s.massey.order;
  o.massey_tuple_limit = s.massey.tuple_limit;
  o.certify = s.certify;
  return o;
}

// ---------------------------------------------------------------- commands

template <class F>
void cmd_betti(Report& rep, const ProblemSpec& s, const Built<F>& b) {
  auto m = target_module(b, s);
  auto opt = golod_options<F>(s);
  typename Resolution<F>::Options ro;
  ro.h_cap = s.h_cap;
  ro.d_cap = golod_window(*m, opt);
  Resolution<F> res(m, ro);
  rep.d_cap = ro.d_cap;
  rep.betti = betti_json(res.betti_table());
  rep.series["poincare"] = series_json("P", res.poincare());
  rep.completeness = {{"poincare_complete_through", res.poincare().complete_through()}};
  rep.witnesses.push_back(
      {{"type", "resolution-checks"}, {"minimal", res.is_minimal()}, {"exact_in_window", res.is_exact_in_window()}});
}

template <class F>
void cmd_massey(Report& rep, const ProblemSpec& s, const Built<F>& b) {
  auto m = target_module(b, s);
  auto ka = KoszulComplex<F>::of_algebra(m->algebra());
  auto km = KoszulComplex<F>::of_module(m);
  const bool module_mode = s.massey.mode == "module";
  const KoszulComplex<F>* kmp = module_mode ? km.get() : nullptr;
  MasseyOptions mo;
  mo.budget = s.massey.budget;

  if (!s.massey.classes.empty()) {
    std::vector<HomologyClass<F>> v;
    for (std::size_t i = 0; i < s.massey.classes.size(); ++i) {
      const auto [l, d, idx] = s.massey.classes[i];
      const auto& k = i == 0 && module_mode ? *km : *ka;
      const std::string path = "massey.classes[" + std::to_string(i) + "]";
      if (l > static_cast<int>(k.rank())) bad(path, "homological degree out of range");
      const auto& piece = k.homology(l, d);
      if (static_cast<std::size_t>(idx) >= piece.dim()) {
        bad(path, "H_" + std::to_string(l) + " in degree " + std::to_string(d) + " has dimension " +
                      std::to_string(piece.dim()));
      }
      v.push_back({l, d, SparseVector<F>::unit(static_cast<std::uint32_t>(idx), k.field())});
    }
    auto r = massey_product(*ka, kmp, v, mo);
    rep.verdict = verdict_json(to_string(r.status), r.reason);
    rep.witnesses.push_back(massey_json(*ka, kmp, v, r));
    return;
  }

  auto hb = homology_basis(*ka, 1);
  auto vb = homology_basis(*km, 0);
  std::size_t checked = 0;
  bool truncated = false, any_non = false, any_open = false;
  json per_order = json::array();
  std::optional<json> first_witness;
  for (int n = 2; n <= s.massey.order && !truncated; ++n) {
    std::map<std::string, std::size_t> counts;
    std::vector<std::size_t> sizes(n, hb.size());
    if (module_mode) sizes[0] = vb.size();
    bool empty = std::any_of(sizes.begin(), sizes.end(), [](std::size_t x) { return x == 0; });
    std::vector<std::size_t> idx(n, 0);
    while (!empty) {
      if (checked >= s.massey.tuple_limit) {
        truncated = true;
        break;
      }
      std::vector<HomologyClass<F>> v;
      for (int k = 0; k < n; ++k) v.push_back(module_mode && k == 0 ? vb[idx[0]] : hb[idx[k]]);
      ++checked;
      auto r = massey_product(*ka, kmp, v, mo);
      ++counts[to_string(r.status)];
      if (r.status == MasseyStatus::non_vanishing) {
        any_non = true;
        if (!first_witness) first_witness = massey_json(*ka, kmp, v, r);
      } else if (r.status != MasseyStatus::vanishes) {
        any_open = true;
      }
      int k = n - 1;
      while (k >= 0 && ++idx[k] == sizes[k]) idx[k--] = 0;
      if (k < 0) break;
    }
    per_order.push_back({{"n", n}, {"counts", counts}});
  }
  std::string kind = any_non ? "non-vanishing" : (any_open || truncated ? "inconclusive" : "vanishes");
  std::string reason = truncated ? "tuple limit reached after " + std::to_string(checked) + " tuples" : "";
  rep.verdict = verdict_json(kind, reason);
  rep.verdict["mode"] = s.massey.mode;
  rep.verdict["tuples_checked"] = checked;
  rep.witnesses.push_back({{"type", "massey-counts"}, {"orders", per_order}});
  if (first_witness) rep.witnesses.push_back(*first_witness);
}

template <class F>
void cmd_construct(Report& rep, const ProblemSpec& s, const Built<F>& b) {
  const auto& a = b.algebra;
  std::vector<std::size_t> hf;
  for (int d = 0; d <= a->cap() && !a->known_zero(d); ++d) hf.push_back(a->dim(d));
  auto mg = min_gens(a);
  json info{{"type", "construction"},
            {"kind", to_string(a->kind())},
            {"hilbert_function", hf},
            {"finite", a->is_finite()},
            {"stored_through", a->cap()},
            {"maximal_ideal_generators", mg.generators.size()},
            {"generator_degrees", mg.degrees()},
            {"generators_exact", mg.exact},
            {"associative", check_associative(*a)}};
  if (a->top_degree()) info["top_degree"] = *a->top_degree();
  for (std::size_t k = 0; k < b.sections.size(); ++k) {
    info["sections"].push_back({{"index", k}, {"surjective", b.sections[k].is_surjective_through(b.sections[k].max_degree())}});
  }
  if (a->is_finite()) {
    auto ka = KoszulComplex<F>::of_algebra(a);
    rep.series["kappa_ring"] = series_json("kappa_R", ka->kappa());
    info["d_squared_zero"] = ka->check_d_squared();
  }
  rep.verdict = verdict_json("constructed", s.construction ? s.construction->type : "quotient");
  rep.witnesses.push_back(info);
}

template <class F>
void cmd_theorem(Report& rep, const ProblemSpec& s, const Built<F>& b) {
  if (s.theorem.empty()) bad("theorem", "missing");
  const auto opt = golod_options<F>(s);
  const std::string& name = s.theorem;
  const bool fibre_kind = s.construction && s.construction->type != "trivial-extension";
  TheoremReport tr;
  if (name == "trivial-extension") {
    auto m = b.module_given ? b.module : residue_field(b.base, 1);
    tr = verify_trivial_extension(b.base, m, opt);
  } else if (name == "fibre-ideal" || name == "iterated-fibre") {
    if (!s.construction || b.construction_ideal.empty()) bad("construction.ideal", "this theorem needs an ideal of R");
    tr = name == "fibre-ideal" ? verify_fibre_ideal(b.base, b.construction_ideal, opt)
                               : verify_iterated_fibre(b.base, b.construction_ideal, s.theorem_ns, opt);
  } else if (name == "fibre-over-field") {
    if (!b.second) bad("construction", "this theorem needs a fibre-over-field construction");
    tr = verify_fibre_over_field(b.base, b.second, opt);
  } else if (name == "golod-module-ring") {
    tr = verify_golod_module_ring(b.module, opt);
  } else {
    if (!b.retract) bad("construction", "this theorem needs a trivial-extension or fibre construction");
    auto n = fibre_kind && b.module_given ? b.module : residue_field(b.base);
    tr = verify_retract_theorem(name, *b.retract, n, opt);
  }
  rep.verdict = {{"kind", to_string(tr.status)}, {"theorem", tr.name}, {"note", tr.note}};
  for (const auto& [k, v] : tr.facts) rep.witnesses.push_back({{"type", "fact"}, {"name", k}, {"value", v}});
  if (tr.status == TheoremStatus::violated) rep.exit_code = 4;
}

template <class F>
void cmd_largeness(Report& rep, const ProblemSpec& s, const Built<F>& b) {
  if (b.sections.empty()) bad("construction", "largeness needs a constructed algebra with a projection");
  const auto& f = b.sections.front();
  auto opt = golod_options<F>(s);
  const int d = golod_window(*residue_field(b.algebra), opt);
  auto tor = tor_comparison(f, s.h_cap, d);
  rep.d_cap = d;
  json entries = json::array();
  for (const auto& e : tor.entries) {
    entries.push_back({{"i", e.i}, {"j", e.j}, {"source_dim", e.source_dim}, {"target_dim", e.target_dim}, {"rank", e.rank}});
  }
  int through = -1;
  while (through + 1 < static_cast<int>(tor.complete.size()) && tor.complete[through + 1]) ++through;
  auto fail = tor.first_failure();
  std::string kind = fail ? "not-large" : "surjective";
  std::string reason = fail ? "Tor map not surjective at i = " + std::to_string(*fail)
                            : "Tor maps surjective for i <= " + std::to_string(s.h_cap);
  rep.verdict = verdict_json(kind, reason);
  rep.verdict["complete_through"] = through;
  rep.completeness = {{"tor_complete_through", through}};
  rep.witnesses.push_back({{"type", "tor-comparison"}, {"entries", entries}});
}

template <class F>
Report dispatch(const std::string& cmd, const ProblemSpec& s, const F& field) {
  Report rep;
  rep.h_cap = s.h_cap;
  rep.d_cap = s.d_cap;
  auto b = build(s, field);
  if (cmd == "betti") {
    cmd_betti(rep, s, b);
  } else if (cmd == "series") {
    auto opt = golod_options<F>(s);
    opt.massey_order = 0;
    opt.certify = false;
    auto m = target_module(b, s);
    fill_analysis(rep, golod_module_test(m, opt), m, false);
  } else if (cmd == "golod-ring" || cmd == "golod-module") {
    auto m = cmd == "golod-ring" ? residue_field(b.algebra) : target_module(b, s);
    fill_analysis(rep, golod_module_test(m, golod_options<F>(s)), m, true);
  } else if (cmd == "certify-huneke") {
    auto c = herzog_huneke_certify(target_module(b, s));
    rep.verdict = verdict_json(c.applicable ? "certificate" : "not-applicable", c.reason);
    rep.witnesses.push_back(huneke_json(c));
  } else if (cmd == "massey") {
    cmd_massey(rep, s, b);
  } else if (cmd == "construct") {
    cmd_construct(rep, s, b);
  } else if (cmd == "verify-theorem") {
    cmd_theorem(rep, s, b);
  } else if (cmd == "largeness") {
    cmd_largeness(rep, s, b);
  } else {
    bad("command", "unknown command '" + cmd + "'");
  }
  return rep;
}

}  // namespace

RunResult run(const ProblemSpec& spec_in, const RunOptions& options) {
  ProblemSpec s = spec_in;
  std::string cmd = options.command.value_or("run");
  if (cmd == "run") {
    if (s.command.empty()) bad("command", "missing (required by 'run')");
    cmd = s.command;
  }
  json overrides = json::object();
  if (options.max_h) {
    if (*options.max_h < 0) throw InputError("--max-h: must be nonnegative");
    s.h_cap = *options.max_h;
    overrides["max_h"] = *options.max_h;
  }
  if (options.max_d) {
    if (*options.max_d < 0) throw InputError("--max-d: must be nonnegative");
    s.d_cap = *options.max_d;
    overrides["max_d"] = *options.max_d;
  }
  if (options.field) {
    try {
      s.field = FieldSpec::parse(*options.field);
    } catch (const InputError& e) {
      throw InputError(std::string("--field: ") + e.what());
    }
    overrides["field"] = *options.field;
  }
  Report rep = dispatch_field(s.field, [&](auto field) { return dispatch(cmd, s, field); });
  RunResult out;
  out.exit_code = rep.exit_code;
  out.report = {{"schema", 1},
                {"input", s.raw},
                {"betti", rep.betti},
                {"series", rep.series},
                {"verdict", rep.verdict},
                {"witnesses", rep.witnesses},
                {"meta",
                 {{"command", cmd},
                  {"field", s.field.to_string()},
                  {"overrides", overrides},
                  {"h_cap", rep.h_cap},
                  {"d_cap", rep.d_cap ? json(*rep.d_cap) : json(nullptr)},
                  {"completeness", rep.completeness},
                  {"elapsed_ms", nullptr}}}};
  return out;
}

// ---------------------------------------------------------------- text form

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void betti_grid(std::ostringstream& os, const json& betti) {
  const auto& table = betti["table"];
  std::size_t width = 0;
  for (const auto& row : table) width = std::max(width, row.size());
  // row j - i, column i
  int rmin = 1 << 20, rmax = -1;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      if (table[i][j].get<std::size_t>() == 0) continue;
      int r = static_cast<int>(j) - static_cast<int>(i);
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
  }
  os << "Betti table (rows j - i, columns i)\n";
  auto cell = [](const std::string& s) { return std::string(s.size() < 6 ? 6 - s.size() : 0, ' ') + s; };
  os << "       ";
  for (std::size_t i = 0; i < table.size(); ++i) os << cell(std::to_string(i));
  os << "\n";
  for (int r = rmin; r <= rmax; ++r) {
    std::string label = std::to_string(r) + ":";
    os << std::string(label.size() < 7 ? 7 - label.size() : 0, ' ') << label;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const std::size_t j = static_cast<std::size_t>(r + static_cast<int>(i));
      std::size_t x = j < table[i].size() ? table[i][j].get<std::size_t>() : 0;
      os << cell(x == 0 ? "." : std::to_string(x));
    }
    os << "\n";
  }
  os << " total:";
  for (const auto& t : betti["totals"]) os << cell(t.dump());
  os << "\n";
}

void witness_line(std::ostringstream& os, const json& w) {
  os << "witness " << scalar_text(w.value("type", json("?"))) << ":";
  for (const auto& [k, v] : w.items()) {
    if (k == "type") continue;
    if (v.is_object() && v.contains("cycle")) {
      os << " " << k << "=" << v["cycle"].get<std::string>();
    } else if (v.is_string() && v.get<std::string>().empty()) {
      continue;
    } else {
      os << " " << k << "=" << scalar_text(v);
    }
  }
  os << "\n";
}

}  // namespace

std::string emit_text(const json& report) {
  std::ostringstream os;
  const auto& meta = report["meta"];
  os << "command: " << meta["command"].get<std::string>() << "\n";
  os << "field: " << meta["field"].get<std::string>() << "\n";
  os << "window: h <= " << meta["h_cap"].dump() << ", d <= " << meta["d_cap"].dump() << "\n";
  if (!report["betti"].is_null()) betti_grid(os, report["betti"]);
  for (const char* key : {"poincare", "kappa_module", "kappa_ring", "serre_bound"}) {
    const auto& s = report["series"][key];
    if (!s.is_null()) os << s["text"].get<std::string>() << "\n";
  }
  const auto& v = report["verdict"];
  if (!v.is_null()) {
    os << "verdict: " << scalar_text(v["kind"]);
    if (v.contains("h_cap") && v["kind"] == "ConsistentUpTo") {
      os << "(" << v["h_cap"].dump() << ", " << v["d_cap"].dump() << ")";
    }
    if (v.contains("theorem")) os << " [" << v["theorem"].get<std::string>() << "]";
    for (const char* key : {"reason", "note"}) {
      if (v.contains(key) && v[key].is_string() && !v[key].get<std::string>().empty()) {
        os << ": " << v[key].get<std::string>();
      }
    }
    os << "\n";
  }
  for (const auto& w : report["witnesses"]) {
    if (w.value("type", "") == "fact") {
      os << "  " << w["name"].get<std::string>() << ": " << w["value"].get<std::string>() << "\n";
    } else {
      witness_line(os, w);
    }
  }
  if (!meta["elapsed_ms"].is_null()) os << "elapsed: " << meta["elapsed_ms"].dump() << " ms\n";
  return os.str();
}

}  // namespace golodlab::app
