#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bqmod/biquandle.hpp"
#include "bqmod/catalog.hpp"
#include "bqmod/coloring.hpp"
#include "bqmod/invariant.hpp"
#include "bqmod/mgd.hpp"
#include "bqmod/module.hpp"
#include "bqmod/moves.hpp"

namespace bqmod::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad command-line input that the argument parser cannot see, such as a missing file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  int threads = 0;
  bool json() const { return format == "json"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct NamedDiagram {
  std::string name;
  MarkedGraphDiagram diagram;
};

constexpr std::string_view catalog_scheme = "catalog:";

NamedDiagram load_diagram(const std::string& ref) {
  if (ref.starts_with(catalog_scheme)) {
    const std::string name = ref.substr(catalog_scheme.size());
    return {name, catalog::get(name).diagram};
  }
  return {ref, parse_mgd(read_file(ref))};
}

Json violations_json(const std::vector<Violation>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back({{"axiom", v.axiom}, {"witness", v.witness}});
  return a;
}

void print_violations(std::ostream& out, const std::vector<Violation>& vs) {
  out << vs.size() << " axiom violation(s)\n";
  for (const auto& v : vs) out << "  " << describe(v) << "\n";
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json polynomial_json(const InvariantPolynomial& p) {
  Json a = Json::array();
  for (const auto& [k, c] : p.terms()) a.push_back({k, c});
  return a;
}

// Returns the biquandle, or prints its violations and returns nothing.
std::optional<Biquandle> load_biquandle(const std::string& path, const Options& o, std::ostream& out,
                                        Json* report = nullptr) {
  const BiquandleTables tables = parse_biquandle_tables(read_file(path));
  auto checked = verify_biquandle(tables.under, tables.over);
  if (checked.ok()) return checked.value();
  if (o.json()) {
    Json j = report ? *report : Json::object();
    j["ok"] = false;
    j["stage"] = "biquandle";
    j["violations"] = violations_json(checked.violations());
    out << j.dump() << "\n";
  } else {
    out << "biquandle " << path << ": ";
    print_violations(out, checked.violations());
  }
  return std::nullopt;
}

std::optional<BiquandleModule> load_module(const std::string& path, const Biquandle& x, const Options& o,
                                           std::ostream& out) {
  const ModuleMatrices mm = parse_module_matrices(read_file(path), x.size());
  auto checked = verify_module(x, mm.n, mm.t, mm.s, mm.r);
  if (checked.ok()) return checked.value();
  if (o.json()) {
    out << Json{{"ok", false}, {"stage", "module"}, {"violations", violations_json(checked.violations())}}.dump()
        << "\n";
  } else {
    out << "module " << path << ": ";
    print_violations(out, checked.violations());
  }
  return std::nullopt;
}

int check_biquandle(const std::string& path, const Options& o, std::ostream& out) {
  const auto x = load_biquandle(path, o, out);
  if (!x) return 1;
  if (o.json())
    out << Json{{"ok", true}, {"size", x->size()}, {"fingerprint", fingerprint(*x)}, {"violations", Json::array()}}
               .dump()
        << "\n";
  else
    out << "ok: biquandle of order " << x->size() << ", fingerprint " << fingerprint(*x) << "\n";
  return 0;
}

int check_module(const std::string& bq, const std::string& mod, bool instances, const Options& o,
                 std::ostream& out) {
  const auto x = load_biquandle(bq, o, out);
  if (!x) return 1;
  const ModuleMatrices mm = parse_module_matrices(read_file(mod), x->size());
  auto checked = verify_module(*x, mm.n, mm.t, mm.s, mm.r);
  const std::vector<AxiomInstance> all =
      instances ? module_axiom_instances(*x, mm.n, mm.t, mm.s, mm.r) : std::vector<AxiomInstance>{};
  if (o.json()) {
    Json j{{"ok", checked.ok()}, {"ring", mm.n.value()}};
    if (checked.ok()) j["fingerprint"] = fingerprint(checked.value());
    j["violations"] = violations_json(checked.violations());
    if (instances) {
      Json a = Json::array();
      for (const auto& i : all)
        a.push_back({{"axiom", i.axiom}, {"witness", i.witness}, {"lhs", i.lhs}, {"rhs", i.rhs}});
      j["instances"] = a;
    }
    out << j.dump() << "\n";
  } else {
    if (checked.ok())
      out << "ok: module over Z_" << mm.n.value() << ", fingerprint " << fingerprint(checked.value()) << "\n";
    else
      print_violations(out, checked.violations());
    for (const auto& i : all) {
      out << i.axiom << " (";
      for (std::size_t k = 0; k < i.witness.size(); ++k) out << (k ? "," : "") << i.witness[k];
      out << "): " << i.lhs << (i.lhs == i.rhs ? " = " : " != ") << i.rhs << "\n";
    }
  }
  return checked.ok() ? 0 : 1;
}

int find(const std::string& bq, std::int64_t ring, std::optional<std::size_t> limit, const Options& o,
         std::ostream& out) {
  const auto x = load_biquandle(bq, o, out);
  if (!x) return 1;
  const Modulus n(ring);
  const auto found = find_modules(*x, n, limit, o.threads);
  if (o.json()) {
    Json mods = Json::array();
    for (const auto& m : found)
      mods.push_back({{"fingerprint", fingerprint(m)},
                      {"t", matrix_json(m.t())},
                      {"s", matrix_json(m.s())},
                      {"r", matrix_json(m.r())}});
    out << Json{{"biquandle", fingerprint(*x)}, {"ring", ring}, {"count", found.size()}, {"modules", mods}}.dump()
        << "\n";
  } else {
    out << "# " << found.size() << " module(s) over Z_" << ring << "\n";
    for (std::size_t i = 0; i < found.size(); ++i) out << (i ? "\n" : "") << render_module(found[i]);
  }
  return 0;
}

int colorings(const std::string& dref, const std::string& bq, bool count_only, const Options& o, std::ostream& out) {
  const NamedDiagram d = load_diagram(dref);
  const auto x = load_biquandle(bq, o, out);
  if (!x) return 1;
  const auto& labels = d.diagram.labels();
  if (count_only) {
    const Count c = counting_invariant(d.diagram, *x, o.threads);
    if (o.json())
      out << Json{{"diagram", d.name}, {"biquandle", fingerprint(*x)}, {"count", c}}.dump() << "\n";
    else
      out << c << "\n";
    return 0;
  }
  const auto all = enumerate_colorings(d.diagram, *x, o.threads);
  if (o.json()) {
    Json cs = Json::array();
    for (const auto& f : all) {
      Json row = Json::array();
      for (int c : f) row.push_back(c + 1);
      cs.push_back(row);
    }
    out << Json{{"diagram", d.name}, {"biquandle", fingerprint(*x)}, {"count", all.size()}, {"labels", labels},
                {"colorings", cs}}
               .dump()
        << "\n";
  } else {
    out << "# " << all.size() << " coloring(s); semiarc=element, elements 1-indexed\n";
    for (const auto& f : all) {
      for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << labels[i] << "=" << f[i] + 1;
      out << "\n";
    }
  }
  return 0;
}

int invariant(const std::string& dref, const std::string& bq, const std::string& mod, const Options& o,
              std::ostream& out) {
  const NamedDiagram d = load_diagram(dref);
  const auto x = load_biquandle(bq, o, out);
  if (!x) return 1;
  const auto m = load_module(mod, *x, o, out);
  if (!m) return 1;
  const InvariantReport r = invariant_report(d.name, d.diagram, *m, o.threads);
  if (o.json())
    out << to_json(r) << "\n";
  else
    out << to_string(r.polynomial) << "\n";
  return 0;
}

int verify_moves(const std::string& dref, const std::string& bq, const std::string& mod, int steps,
                 std::uint64_t seed, const Options& o, std::ostream& out) {
  const NamedDiagram d = load_diagram(dref);
  const auto x = load_biquandle(bq, o, out);
  if (!x) return 1;
  const auto m = load_module(mod, *x, o, out);
  if (!m) return 1;
  const Count counting = counting_invariant(d.diagram, *x, o.threads);
  const InvariantPolynomial poly = module_polynomial(d.diagram, *x, *m, o.threads);
  Json log = Json::array();
  std::ostringstream text;
  int failed_step = 0;
  const auto walk = random_walk(d.diagram, steps, seed);
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const auto& step = walk[i];
    const Count c = counting_invariant(step.result, *x, o.threads);
    const InvariantPolynomial p = module_polynomial(step.result, *x, *m, o.threads);
    const bool same = c == counting && p == poly;
    log.push_back({{"step", i + 1},
                   {"move", to_string(step.site.id)},
                   {"nodes", step.result.node_count()},
                   {"counting", c},
                   {"polynomial", polynomial_json(p)},
                   {"unchanged", same}});
    text << "step " << i + 1 << ": " << to_string(step.site.id) << ", " << step.result.node_count()
         << " nodes, counting " << c << ", " << to_string(p) << (same ? "" : "  CHANGED") << "\n";
    if (!same) {
      failed_step = static_cast<int>(i + 1);
      break;
    }
  }
  if (o.json()) {
    out << Json{{"diagram", d.name},
                {"biquandle", fingerprint(*x)},
                {"module", fingerprint(*m)},
                {"seed", seed},
                {"steps", steps},
                {"counting", counting},
                {"polynomial", polynomial_json(poly)},
                {"ok", failed_step == 0},
                {"walk", log}}
               .dump()
        << "\n";
  } else {
    out << "# " << d.name << ": counting " << counting << ", " << to_string(poly) << "\n" << text.str();
    if (failed_step)
      out << "invariant changed at step " << failed_step << "\n";
    else
      out << "ok: " << walk.size() << " step(s), invariants unchanged\n";
  }
  return failed_step ? 1 : 0;
}

int catalog_list(const Options& o, std::ostream& out) {
  const auto names = catalog::list();
  if (o.json()) {
    Json a = Json::array();
    for (const auto& n : names) {
      const auto& e = catalog::get(n);
      a.push_back({{"name", n}, {"components", e.components}, {"genera", e.genera}});
    }
    out << a.dump() << "\n";
  } else {
    for (const auto& n : names) {
      const auto& e = catalog::get(n);
      out << n << "\tcomponents " << e.components << "\tgenera";
      for (int g : e.genera) out << " " << g;
      out << "\n";
    }
  }
  return 0;
}

int catalog_show(const std::string& name, const Options& o, std::ostream& out) {
  const auto& e = catalog::get(name);
  if (o.json())
    out << Json{{"name", e.name},
                {"components", e.components},
                {"genera", e.genera},
                {"provenance", e.provenance},
                {"mgd", catalog::source(name)}}
               .dump()
        << "\n";
  else
    out << catalog::source(name);
  return 0;
}

int smooth_cmd(const std::string& dref, const std::string& bars, const Options& o, std::ostream& out) {
  const NamedDiagram d = load_diagram(dref);
  const ClassicalLinkDiagram l =
      smooth(d.diagram, bars == "along" ? Smoothing::along_bars : Smoothing::against_bars);
  const std::string mgd = render_mgd(l.diagram());
  if (o.json())
    out << Json{{"diagram", d.name}, {"bars", bars}, {"link_components", l.link_components()}, {"mgd", mgd}}.dump()
        << "\n";
  else
    out << "# " << d.name << " smoothed " << bars << " the bars, " << l.link_components() << " link component(s)\n"
        << mgd;
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biquandle module invariants of marked graph diagrams"};
  app.name("bqmod");
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads; 0 uses all cores")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.fallthrough();

  std::string bq, mod, dref, name, bars = "along";
  std::int64_t ring = 0;
  std::size_t limit = 0;
  int steps = 50;
  std::uint64_t seed = 0;
  bool count_only = false, instances = false;
  std::function<int()> action;

  auto* cb = app.add_subcommand("check-biquandle", "Verify the biquandle axioms of a table file");
  cb->add_option("--biquandle", bq, "Biquandle file")->required();
  cb->callback([&] { action = [&] { return check_biquandle(bq, o, out); }; });

  auto* cm = app.add_subcommand("check-module", "Verify the module axioms of a [t, s, r] triple");
  cm->add_option("--biquandle", bq, "Biquandle file")->required();
  cm->add_option("--module", mod, "Module file")->required();
  cm->add_flag("--instances", instances, "List every axiom instance");
  cm->callback([&] { action = [&] { return check_module(bq, mod, instances, o, out); }; });

  auto* fm = app.add_subcommand("find-modules", "Search all modules over Z_n");
  fm->add_option("--biquandle", bq, "Biquandle file")->required();
  fm->add_option("--ring", ring, "Modulus n")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));
  auto* lim = fm->add_option("--limit", limit, "Stop after this many modules")->check(CLI::PositiveNumber);
  fm->callback([&] {
    action = [&, lim] {
      return find(bq, ring, lim->count() ? std::optional<std::size_t>(limit) : std::nullopt, o, out);
    };
  });

  auto* co = app.add_subcommand("colorings", "Enumerate or count colorings of a diagram");
  co->add_option("--diagram", dref, "MGD file or catalog:NAME")->required();
  co->add_option("--biquandle", bq, "Biquandle file")->required();
  co->add_flag("--count", count_only, "Print only the number of colorings");
  co->callback([&] { action = [&] { return colorings(dref, bq, count_only, o, out); }; });

  auto* in = app.add_subcommand("invariant", "Compute the module enhanced polynomial");
  in->add_option("--diagram", dref, "MGD file or catalog:NAME")->required();
  in->add_option("--biquandle", bq, "Biquandle file")->required();
  in->add_option("--module", mod, "Module file")->required();
  in->callback([&] { action = [&] { return invariant(dref, bq, mod, o, out); }; });

  auto* vm = app.add_subcommand("verify-moves", "Check invariance along a seeded random move walk");
  vm->add_option("--diagram", dref, "MGD file or catalog:NAME")->required();
  vm->add_option("--biquandle", bq, "Biquandle file")->required();
  vm->add_option("--module", mod, "Module file")->required();
  vm->add_option("--steps", steps, "Walk length")->check(CLI::NonNegativeNumber)->capture_default_str();
  vm->add_option("--seed", seed, "Walk seed")->capture_default_str();
  vm->callback([&] { action = [&] { return verify_moves(dref, bq, mod, steps, seed, o, out); }; });

  auto* ca = app.add_subcommand("catalog", "Built-in surface-link diagrams");
  ca->require_subcommand(1);
  auto* cl = ca->add_subcommand("list", "List entry names");
  cl->callback([&] { action = [&] { return catalog_list(o, out); }; });
  auto* cs = ca->add_subcommand("show", "Print an entry in MGD format");
  cs->add_option("name", name, "Entry name")->required();
  cs->callback([&] { action = [&] { return catalog_show(name, o, out); }; });

  auto* sm = app.add_subcommand("smooth", "Resolve every marked vertex");
  sm->add_option("--diagram", dref, "MGD file or catalog:NAME")->required();
  sm->add_option("--bars", bars, "Smoothing direction")->check(CLI::IsMember({"along", "against"}))->capture_default_str();
  sm->callback([&] { action = [&] { return smooth_cmd(dref, bars, o, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const AxiomViolation& e) {
    err << "error: ";
    print_violations(err, e.violations());
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownName& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bqmod::cli
