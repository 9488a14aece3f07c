#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hopfsmooth/centraliser.hpp"
#include "hopfsmooth/error.hpp"
#include "hopfsmooth/fol.hpp"
#include "hopfsmooth/io.hpp"
#include "hopfsmooth/primdec.hpp"

namespace hopfsmooth::cli {

namespace {

using io::Json;

struct Options {
  std::string input;
  std::string field;
  std::string order;
  long degree_limit = 0;
  bool json = false;
  bool pretty = false;
  std::string poly;
  std::string vars;
  std::vector<std::string> points;
  bool skip_component = false;
  std::string kind;
  std::size_t n = 0;
  std::string counit;
  std::string output;
  std::string primes = "2..97";
  std::string action;
  std::string example;
  bool char0 = false;
  bool timing = false;
};

// The step currently running, reported with engine errors.
std::string stage = "arguments";

io::Overrides overrides(const Options& o) {
  io::Overrides over;
  if (!o.field.empty()) over.field = Field::parse(o.field);
  if (!o.order.empty()) over.order = o.order;
  return over;
}

io::Document input_document(const Options& o) {
  stage = "parse";
  if (o.input.empty()) throw InputError("MissingInput", "an input file is required (-i)");
  return io::read_document(o.input);
}

// Z is an input ring only; computations over it run over Q.
HopfQuadruple computable(HopfQuadruple H) {
  if (H.ring()->field().kind() == FieldKind::Integers) return change_field(H, Field::rationals());
  return H;
}

io::IdealInput read_ideal(const Options& o) {
  io::Document doc = input_document(o);
  io::Overrides over = overrides(o);
  if (!over.field && doc.json.is_object() && doc.json.value("field", "") == "Z") over.field = Field::rationals();
  return io::read_ideal(doc, over);
}

HopfQuadruple read_group(const Options& o, const std::string& path) {
  io::Document doc = io::read_document(path);
  return computable(io::read_quadruple(doc, overrides(o)));
}

Json strings(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

Json ring_json(const RingPtr& R) {
  std::string order = R->order().name();
  if (R->order().kind() == MonomialOrder::Kind::Block && R->order().blocks().size() == 2)
    order = "block:" + std::to_string(R->order().blocks()[0]);
  return Json{{"field", R->field().name()}, {"order", order}, {"vars", R->vars()}};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Json cmd_groebner(const Options& o) {
  auto in = read_ideal(o);
  stage = "groebner";
  Json out = ring_json(in.ring);
  out["basis"] = strings(in.ideal().groebner().generators());
  return out;
}

Json cmd_member(const Options& o) {
  auto in = read_ideal(o);
  if (o.poly.empty()) throw InputError("MissingInput", "a polynomial is required (-f)");
  Polynomial f = parse_poly(o.poly, in.ring);
  stage = "groebner";
  Ideal I = in.ideal();
  const auto& basis = I.groebner();
  stage = "member";
  Polynomial r = reduce(f, basis.generators());
  return Json{{"member", r.is_zero()}, {"polynomial", f.to_string()}, {"remainder", r.to_string()}};
}

Json cmd_eliminate(const Options& o) {
  auto in = read_ideal(o);
  if (o.vars.empty()) throw InputError("MissingInput", "variables to eliminate are required (--vars)");
  std::vector<bool> mask(in.ring->nvars(), false);
  Json gone = Json::array();
  for (const auto& v : split(o.vars, ',')) {
    mask[in.ring->require_index(v)] = true;
    gone.push_back(v);
  }
  stage = "eliminate";
  GroebnerBasis gb = eliminate(in.ideal().generators(), in.ring, mask);
  Json kept = Json::array();
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (!mask[i]) kept.push_back(in.ring->vars()[i]);
  return Json{{"basis", strings(gb.generators())}, {"eliminated", gone}, {"remaining", kept}};
}

Json cmd_dimension(const Options& o) {
  auto in = read_ideal(o);
  stage = "groebner";
  Ideal I = in.ideal();
  const auto& gb = I.groebner();
  stage = "dimension";
  Json set = Json::array();
  if (!gb.is_unit())
    for (auto i : max_independent_set(gb)) set.push_back(in.ring->vars()[i]);
  return Json{{"dimension", dimension(gb)}, {"independent_set", set}};
}

Json cmd_saturate(const Options& o) {
  auto in = read_ideal(o);
  if (o.poly.empty()) throw InputError("MissingInput", "a polynomial is required (-f)");
  Polynomial f = parse_poly(o.poly, in.ring);
  stage = "saturate";
  Saturation s = saturate(in.ideal(), f);
  return Json{{"basis", strings(s.ideal.groebner().generators())}, {"exponent", s.exponent}};
}

Json cmd_primdec(const Options& o) {
  auto in = read_ideal(o);
  Ideal I = in.ideal();
  stage = "primdec";
  auto comps = primdec(I);
  stage = "verify";
  Json list = Json::array();
  std::optional<Ideal> meet;
  for (const auto& c : comps) {
    list.push_back(Json{{"basis", strings(c.ideal.groebner().generators())},
                        {"isolated", c.isolated},
                        {"primary", to_string(is_primary(c.ideal))}});
    meet = meet ? intersect(*meet, c.ideal) : c.ideal;
  }
  bool exact = meet ? meet->equals(I) : I.is_unit();
  return Json{{"components", list}, {"count", comps.size()}, {"exact", exact}};
}

Json cmd_hopf_check(const Options& o) {
  input_document(o);
  HopfQuadruple H = read_group(o, o.input);
  stage = "hopf-check";
  const auto& rep = H.check();
  Json out{{"is_hopf", rep.valid}, {"bound", H.bound()}};
  if (!rep.valid) {
    out["failed_axiom"] = rep.failed_axiom;
    out["detail"] = rep.detail;
  }
  return out;
}

Json smooth_json(const SmoothnessReport& r) {
  return Json{{"group_dim", r.group_dim}, {"lie_dim", r.lie_dim}, {"smooth", r.smooth}};
}

Json cmd_smooth_check(const Options& o) {
  input_document(o);
  HopfQuadruple H = read_group(o, o.input);
  stage = "smooth-check";
  return smooth_json(is_smooth(H));
}

std::vector<Point> cli_points(const Options& o, const Field& k, std::size_t arity) {
  Json pts = Json::array();
  for (const auto& p : o.points) {
    Json v = Json::array();
    for (const auto& c : split(p, ',')) v.push_back(c);
    pts.push_back(v);
  }
  return io::read_points(pts, k, arity);
}

Json centraliser_json(const CentraliserResult& res) {
  Json out = smooth_json(res.report);
  out["relations"] = strings(res.quadruple.ideal().groebner().generators());
  out["is_hopf"] = res.quadruple.is_hopf();
  out["bound"] = res.bound;
  return out;
}

io::ActionInput read_action_input(const Options& o, const std::string& path) {
  stage = "parse";
  io::Document doc = io::read_document(path);
  io::ActionInput in = io::read_action(doc, overrides(o));
  if (in.action.group.ring()->field().kind() == FieldKind::Integers) {
    std::vector<Point> pts = in.points;
    in.action = in.action.change_field(Field::rationals());
    in.points = pts;
  }
  return in;
}

Json cmd_centralise(const Options& o) {
  input_document(o);
  io::ActionInput in = read_action_input(o, o.input);
  if (!o.points.empty()) in.points = cli_points(o, in.action.chart->field(), in.action.chart->nvars());
  if (in.points.empty()) throw InputError("MissingInput", "at least one point is required");
  stage = "centralise";
  Json out = centraliser_json(centraliser_quadruple(in.action, in.points, o.skip_component));
  out["points"] = in.points.size();
  out["field"] = in.action.chart->field().name();
  return out;
}

Json cmd_emit_formula(const Options& o) {
  stage = "emit-formula";
  if (o.kind.empty()) throw InputError("MissingInput", "a formula kind is required (--kind)");
  fol::FormulaKind kind = fol::parse_kind(o.kind);
  std::vector<Coeff> counit;
  if (!o.counit.empty())
    for (const auto& c : split(o.counit, ',')) counit.push_back(Field::rationals().parse_literal(c));
  std::size_t n = o.n == 0 ? 1 : o.n;
  fol::Formula F = fol::build(kind, n, counit);
  std::string text = fol::print_formula(F);
  Json free = Json::array();
  for (const auto& v : F.free) free.push_back(v.name);
  Json out{{"kind", fol::to_string(kind)}, {"n", n}, {"free_count", F.free.size()}, {"free", free},
           {"bytes", text.size()}, {"sentence", F.is_sentence()}};
  if (o.output.empty()) {
    out["formula"] = text;
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw InputError("FileNotWritable", "cannot write " + o.output);
    file << text << "\n";
    out["output"] = o.output;
  }
  return out;
}

Json error_json(const Error& e) {
  const char* cls = e.error_class() == ErrorClass::Input           ? "input"
                    : e.error_class() == ErrorClass::ResourceLimit ? "resource"
                                                                   : "invariant";
  Json err{{"class", cls}, {"code", e.code()}, {"message", e.what()}, {"stage", stage}};
  if (auto located = dynamic_cast<const io::LocatedError*>(&e)) {
    err["line"] = located->line();
    err["column"] = located->column();
  } else if (auto parse = dynamic_cast<const ParseError*>(&e)) {
    err["column"] = parse->position() + 1;
  }
  return err;
}

int exit_code(const Error& e) {
  switch (e.error_class()) {
    case ErrorClass::Input: return 2;
    case ErrorClass::ResourceLimit: return 3;
    case ErrorClass::Invariant: return 4;
  }
  return 4;
}

// Smallest listed prime from which every listed prime ran and was smooth;
// null when the largest listed prime was not.
Json observed_p0(const std::vector<long>& primes, const std::vector<long>& bad) {
  Json p0 = nullptr;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    if (std::find(bad.begin(), bad.end(), *it) != bad.end()) break;
    p0 = *it;
  }
  return p0;
}

Json cmd_sweep(const Options& o) {
  stage = "parse";
  if (!o.field.empty()) throw InputError("BadFlag", "sweep chooses its own fields; --field does not apply");
  std::vector<long> primes = parse_primes(o.primes);
  enum class Mode { Group, Action, Frobenius } mode;
  std::optional<HopfQuadruple> group;
  std::optional<io::ActionInput> action;
  if (!o.example.empty()) {
    if (o.example != "frobenius-twist") throw InputError("UnknownExample", "unknown example '" + o.example + "'");
    mode = Mode::Frobenius;
  } else if (!o.action.empty()) {
    action = read_action_input(o, o.action);
    if (action->points.empty()) throw InputError("MissingInput", "the action file lists no points");
    mode = Mode::Action;
  } else {
    input_document(o);
    group = io::read_quadruple(io::read_document(o.input), overrides(o));
    mode = Mode::Group;
  }

  auto run_one = [&](const std::optional<long>& p) -> Json {
    auto start = std::chrono::steady_clock::now();
    Json row;
    try {
      stage = p ? "base-change" : "char0";
      if (mode == Mode::Group) {
        HopfQuadruple H = p ? base_change_quadruple(*group, *p) : computable(*group);
        stage = "smooth-check";
        row = Json{{"is_hopf", H.is_hopf()}};
        if (H.is_hopf()) row.update(smooth_json(is_smooth(H)));
      } else {
        ActionSpec A = mode == Mode::Frobenius ? catalog::frobenius_twist(*p)
                                               : action->action.change_field(p ? Field::prime(*p) : Field::rationals());
        std::vector<Point> pts;
        if (mode == Mode::Frobenius) {
          const Field& k = A.chart->field();
          pts = {{k.from_int(1), k.from_int(0)}};
        } else {
          for (const auto& v : action->points) {
            Point w;
            for (const auto& c : v) w.push_back(A.chart->field().normalize(c));
            pts.push_back(std::move(w));
          }
        }
        stage = "centralise";
        CentraliserResult res = centraliser_quadruple(A, pts, o.skip_component);
        row = Json{{"is_hopf", res.quadruple.is_hopf()}};
        row.update(smooth_json(res.report));
      }
      row["status"] = "ok";
    } catch (const Error& e) {
      row = Json{{"status", "failed"}, {"error", error_json(e)}};
    }
    if (o.timing)
      row["seconds"] = std::round(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() * 1e4) / 1e4;
    return row;
  };

  Json records = Json::array();
  std::vector<long> nonsmooth, failed;
  for (long p : primes) {
    Json row = run_one(p);
    row["p"] = p;
    if (row["status"] == "failed") failed.push_back(p);
    else if (!row.value("smooth", true) || !row.value("is_hopf", true)) nonsmooth.push_back(p);
    records.push_back(row);
  }
  std::vector<long> unverified = nonsmooth;
  unverified.insert(unverified.end(), failed.begin(), failed.end());
  Json out{{"records", records},
           {"summary",
            {{"nonsmooth", nonsmooth},
             {"failed", failed},
             {"p0", observed_p0(primes, unverified)},
             {"p0_status", "observed"}}}};
  if (o.char0) {
    if (mode == Mode::Frobenius) throw InputError("BadFlag", "the Frobenius twist has no characteristic 0 instance");
    out["char0"] = run_one(std::nullopt);
  }
  stage = "sweep";
  return out;
}

void pretty_lines(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) pretty_lines(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) pretty_lines(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_array()) {
    out << prefix << ":";
    for (const auto& v : j) out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
    out << "\n";
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void pretty_sweep(const Json& j, std::ostream& out) {
  out << std::left << std::setw(6) << "p" << std::setw(8) << "status" << std::setw(8) << "hopf" << std::setw(11)
      << "group_dim" << std::setw(9) << "lie_dim" << std::setw(8) << "smooth"
      << (j["records"].size() && j["records"][0].contains("seconds") ? "seconds" : "") << "\n";
  auto row = [&](const std::string& label, const Json& r) {
    auto cell = [&](const char* key) { return r.contains(key) ? r[key].dump() : std::string("-"); };
    out << std::setw(6) << label << std::setw(8) << r["status"].get<std::string>() << std::setw(8) << cell("is_hopf")
        << std::setw(11) << cell("group_dim") << std::setw(9) << cell("lie_dim") << std::setw(8) << cell("smooth");
    if (r.contains("seconds")) out << r["seconds"].dump();
    out << "\n";
  };
  for (const auto& r : j["records"]) row(std::to_string(r["p"].get<long>()), r);
  if (j.contains("char0")) row("0", j["char0"]);
  pretty_lines(j["summary"], "summary", out);
}

}  // namespace

std::vector<long> parse_primes(const std::string& text) {
  std::vector<long> out;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used == s.size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw InputError("BadPrimes", "bad prime list '" + text + "'");
  };
  for (const auto& part : split(text, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      long p = number(part);
      if (!is_probable_prime(mpz_class(p))) throw InputError("BadPrimes", std::to_string(p) + " is not prime");
      out.push_back(p);
    } else {
      long lo = number(part.substr(0, dots)), hi = number(part.substr(dots + 2));
      for (long p = lo; p <= hi; ++p)
        if (is_probable_prime(mpz_class(p))) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw InputError("BadPrimes", "no primes in '" + text + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out) {
  stage = "arguments";
  Options o;
  CLI::App app{"Gröbner bases, primary decomposition and smoothness of affine group schemes", "hopfsmooth"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", o.field, "Q, Z or Fp:p");
  app.add_option("--order", o.order, "grlex, lex or block:r");
  app.add_option("--degree-limit", o.degree_limit, "ceiling on degrees during Gröbner computations");
  app.add_flag("--json", o.json, "JSON report (the default)");
  app.add_flag("--pretty", o.pretty, "human-readable report");

  auto input = [&](CLI::App* c) { c->add_option("-i,--input", o.input, "input file"); };
  auto* groebner = app.add_subcommand("groebner", "reduced Gröbner basis");
  auto* member = app.add_subcommand("member", "ideal membership");
  auto* elim = app.add_subcommand("eliminate", "elimination ideal");
  auto* dim = app.add_subcommand("dimension", "Krull dimension");
  auto* sat = app.add_subcommand("saturate", "saturation by a polynomial");
  auto* pd = app.add_subcommand("primdec", "primary decomposition");
  auto* hc = app.add_subcommand("hopf-check", "Hopf axioms of a quadruple");
  auto* sc = app.add_subcommand("smooth-check", "group and Lie algebra dimensions");
  auto* cent = app.add_subcommand("centralise", "centraliser of points under an action");
  auto* emit = app.add_subcommand("emit-formula", "first-order formula in ASCII");
  auto* sweep = app.add_subcommand("sweep", "smoothness across characteristics");
  for (auto* c : {groebner, member, elim, dim, sat, pd, hc, sc, cent}) input(c);
  member->add_option("-f,--poly", o.poly, "polynomial");
  sat->add_option("-f,--poly", o.poly, "polynomial");
  elim->add_option("--vars", o.vars, "comma-separated variables to eliminate");
  cent->add_option("-p,--point", o.points, "point as comma-separated field literals (repeatable)");
  cent->add_flag("--skip-component", o.skip_component, "use the full closure ideal of each point");
  emit->add_option("--kind", o.kind, "phi(e,d), beta(d), delta(e,d), iota(d), zeta(d,r), eta(d), tau(e,d), theta(d), psi(p), Phi(d)");
  emit->add_option("-n,--nvars", o.n, "number of variables");
  emit->add_option("--counit", o.counit, "counit point for tau and theta");
  emit->add_option("-o,--output", o.output, "file for the formula text");
  input(sweep);
  sweep->add_option("--action", o.action, "action file; sweeps its centraliser");
  sweep->add_option("--primes", o.primes, "primes as a..b or a,b,c");
  sweep->add_option("--example", o.example, "built-in family: frobenius-twist");
  sweep->add_flag("--char0", o.char0, "add the characteristic 0 row");
  sweep->add_flag("--timing", o.timing, "record wall time per prime");
  sweep->add_flag("--skip-component", o.skip_component, "use the full closure ideal of each point");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << io::dump(Json{{"error", {{"class", "input"}, {"code", "UsageError"}, {"message", e.what()}, {"stage", stage}}}});
    return 2;
  }

  struct RestoreLimits {
    ResourceLimits saved = default_limits();
    ~RestoreLimits() { set_default_limits(saved); }
  } restore;
  try {
    if (o.degree_limit < 0) throw InputError("BadFlag", "--degree-limit must be positive");
    if (o.degree_limit > 0) {
      ResourceLimits limits = default_limits();
      limits.max_degree = static_cast<std::uint32_t>(o.degree_limit);
      set_default_limits(limits);
    }
    Json report;
    bool is_sweep = false;
    if (groebner->parsed()) report = cmd_groebner(o);
    else if (member->parsed()) report = cmd_member(o);
    else if (elim->parsed()) report = cmd_eliminate(o);
    else if (dim->parsed()) report = cmd_dimension(o);
    else if (sat->parsed()) report = cmd_saturate(o);
    else if (pd->parsed()) report = cmd_primdec(o);
    else if (hc->parsed()) report = cmd_hopf_check(o);
    else if (sc->parsed()) report = cmd_smooth_check(o);
    else if (cent->parsed()) report = cmd_centralise(o);
    else if (emit->parsed()) report = cmd_emit_formula(o);
    else {
      report = cmd_sweep(o);
      is_sweep = true;
    }
    if (o.pretty && !o.json) {
      if (is_sweep) pretty_sweep(report, out);
      else pretty_lines(report, "", out);
    } else {
      out << io::dump(report);
    }
    return 0;
  } catch (const Error& e) {
    out << io::dump(Json{{"error", error_json(e)}});
    return exit_code(e);
  } catch (const std::bad_alloc&) {
    out << io::dump(Json{{"error", {{"class", "resource"}, {"code", "OutOfMemory"}, {"message", "out of memory"}, {"stage", stage}}}});
    return 3;
  } catch (const std::exception& e) {
    out << io::dump(Json{{"error", {{"class", "invariant"}, {"code", "Internal"}, {"message", e.what()}, {"stage", stage}}}});
    return 4;
  }
}

}  // namespace hopfsmooth::cli
