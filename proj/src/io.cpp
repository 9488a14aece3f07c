#include "hopfsmooth/io.hpp"

#include <fstream>
#include <sstream>

namespace hopfsmooth::io {

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void fail_at(const Document& doc, std::size_t offset, const std::string& what,
                          const std::string& code = "ParseError") {
  auto [line, column] = line_column(doc.text, offset);
  throw LocatedError(code, doc.source, line, column, what);
}

// Offset of the first character inside the first JSON string literal equal
// to `value`, or of the document start when it cannot be found.
std::size_t locate(const Document& doc, const std::string& value) {
  std::string quoted = Json(value).dump();
  auto at = doc.text.find(quoted);
  return at == std::string::npos ? 0 : at + 1;
}

const Json& field_of(const Document& doc, const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail_at(doc, 0, std::string("missing field \"") + key + "\"", "MissingField");
  return j.at(key);
}

std::string string_of(const Document& doc, const Json& j, const std::string& where) {
  if (!j.is_string()) fail_at(doc, 0, where + " must be a string", "BadType");
  return j.get<std::string>();
}

std::vector<std::string> strings_of(const Document& doc, const Json& j, const std::string& where) {
  if (!j.is_array()) fail_at(doc, 0, where + " must be an array of strings", "BadType");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_of(doc, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Field declared_field(const Document& doc, const Json& j, const Overrides& over) {
  if (over.field) return *over.field;
  if (!j.contains("field")) return Field::rationals();
  std::string name = string_of(doc, j.at("field"), "field");
  try {
    return Field::parse(name);
  } catch (const InputError& e) {
    fail_at(doc, locate(doc, name), e.what(), e.code());
  }
}

std::string order_name(const MonomialOrder& order) {
  if (order.kind() == MonomialOrder::Kind::Block && order.blocks().size() == 2)
    return "block:" + std::to_string(order.blocks()[0]);
  return order.name();
}

Document as_document(const Json& json) {
  Document doc;
  doc.source = "<json>";
  doc.json = json;
  return doc;
}

}  // namespace

Document parse_document(std::string text, std::string source) {
  Document doc;
  doc.source = std::move(source);
  doc.text = std::move(text);
  try {
    doc.json = Json::parse(doc.text);
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    auto colon = what.rfind(": ");
    fail_at(doc, e.byte == 0 ? 0 : e.byte - 1, colon == std::string::npos ? what : what.substr(colon + 2));
  }
  return doc;
}

Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("FileNotFound", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Document doc = parse_document(buf.str(), path);
  auto slash = path.rfind('/');
  doc.directory = slash == std::string::npos ? "" : path.substr(0, slash + 1);
  return doc;
}

Polynomial read_polynomial(const Document& doc, const std::string& text, const RingPtr& ring,
                           const std::string& where) {
  try {
    return parse_poly(text, ring);
  } catch (const ParseError& e) {
    std::string what = e.what();
    auto cut = what.rfind(" at column ");
    if (cut != std::string::npos) what.resize(cut);
    fail_at(doc, locate(doc, text) + e.position(), where + ": " + what);
  } catch (const InputError& e) {
    fail_at(doc, locate(doc, text), where + ": " + e.what(), e.code());
  }
}

Ideal IdealInput::ideal() const {
  std::vector<Polynomial> nonzero;
  for (const auto& g : generators)
    if (!g.is_zero()) nonzero.push_back(g);
  return nonzero.empty() ? Ideal::zero(ring) : Ideal(ring, nonzero);
}

IdealInput read_ideal(const Document& doc, const Overrides& over) {
  const Json& j = doc.json;
  Field k = declared_field(doc, j, over);
  auto vars = strings_of(doc, field_of(doc, j, "vars"), "vars");
  std::string order = over.order ? *over.order : j.contains("order") ? string_of(doc, j.at("order"), "order") : "grlex";
  RingPtr ring;
  try {
    ring = Ring::make(k, vars, MonomialOrder::parse(order, vars.size()));
  } catch (const InputError& e) {
    fail_at(doc, locate(doc, order), e.what(), e.code());
  }
  auto gens = strings_of(doc, field_of(doc, j, "generators"), "generators");
  IdealInput out{ring, {}};
  for (std::size_t i = 0; i < gens.size(); ++i)
    out.generators.push_back(read_polynomial(doc, gens[i], ring, "generators[" + std::to_string(i) + "]"));
  return out;
}

Json ideal_json(const RingPtr& ring, const std::vector<Polynomial>& generators) {
  Json gens = Json::array();
  for (const auto& g : generators) gens.push_back(g.to_string());
  return Json{{"field", ring->field().name()},
              {"vars", ring->vars()},
              {"order", order_name(ring->order())},
              {"generators", gens}};
}

HopfQuadruple read_quadruple(const Document& doc, const Overrides& over) {
  const Json& j = doc.json;
  Field k = declared_field(doc, j, over.field && !j.contains("field") ? over : Overrides{});
  auto vars = strings_of(doc, field_of(doc, j, "vars"), "vars");
  RingPtr S = Ring::make(k, vars);
  RingPtr T2 = tensor_ring(S, 2);
  std::vector<Polynomial> rel, comul, anti;
  std::vector<Coeff> counit;
  auto rels = strings_of(doc, field_of(doc, j, "relations"), "relations");
  for (std::size_t i = 0; i < rels.size(); ++i)
    rel.push_back(read_polynomial(doc, rels[i], S, "relations[" + std::to_string(i) + "]"));
  auto per_var = [&](const char* key, auto&& read) {
    const Json& m = field_of(doc, j, key);
    if (!m.is_object()) fail_at(doc, 0, std::string(key) + " must map every variable to a string", "BadType");
    for (const auto& v : vars) {
      if (!m.contains(v)) fail_at(doc, locate(doc, key), std::string(key) + " has no entry for " + v, "MissingField");
      read(string_of(doc, m.at(v), std::string(key) + "." + v), std::string(key) + "." + v);
    }
    if (m.size() != vars.size()) fail_at(doc, locate(doc, key), std::string(key) + " has entries for unknown variables", "ArityMismatch");
  };
  per_var("comul", [&](const std::string& s, const std::string& where) { comul.push_back(read_polynomial(doc, s, T2, where)); });
  per_var("antipode", [&](const std::string& s, const std::string& where) { anti.push_back(read_polynomial(doc, s, S, where)); });
  per_var("counit", [&](const std::string& s, const std::string& where) {
    try {
      counit.push_back(k.parse_literal(s));
    } catch (const InputError& e) {
      fail_at(doc, locate(doc, s), where + ": " + e.what(), e.code());
    }
  });
  HopfQuadruple H(S, std::move(rel), std::move(comul), std::move(anti), std::move(counit));
  if (over.field && j.contains("field") && *over.field != k) return change_field(H, *over.field);
  return H;
}

HopfQuadruple read_quadruple(const Json& json, const Overrides& over) { return read_quadruple(as_document(json), over); }

Json quadruple_json(const HopfQuadruple& H, const std::string& name) {
  const auto& vars = H.ring()->vars();
  Json rel = Json::array(), comul = Json::object(), anti = Json::object(), counit = Json::object();
  for (const auto& f : H.relations()) rel.push_back(f.to_string());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    comul[vars[i]] = H.comul()[i].to_string();
    anti[vars[i]] = H.antipode()[i].to_string();
    counit[vars[i]] = H.ring()->field().to_string(H.counit()[i]);
  }
  Json out{{"field", H.ring()->field().name()}, {"vars", vars},       {"relations", rel},
           {"comul", comul},                     {"antipode", anti}, {"counit", counit}};
  if (!name.empty()) out["name"] = name;
  return out;
}

std::vector<Point> read_points(const Json& points, const Field& field, std::size_t arity) {
  if (!points.is_array()) throw InputError("BadType", "points must be an array of coordinate arrays");
  std::vector<Point> out;
  for (const auto& p : points) {
    if (!p.is_array() || p.size() != arity)
      throw InputError("ArityMismatch", "every point needs " + std::to_string(arity) + " coordinates");
    Point v;
    for (const auto& c : p) {
      if (c.is_string()) v.push_back(field.parse_literal(c.get<std::string>()));
      else if (c.is_number_integer()) v.push_back(field.from_int(c.get<long>()));
      else throw InputError("BadType", "coordinates are field literals");
    }
    out.push_back(std::move(v));
  }
  return out;
}

ActionInput read_action(const Document& doc, const Overrides& over) {
  const Json& j = doc.json;
  const Json& g = field_of(doc, j, "group");
  HopfQuadruple group = g.is_string() ? read_quadruple(read_document(doc.directory + g.get<std::string>()), over)
                                      : read_quadruple(Document{doc.source, doc.text, doc.directory, g}, over);
  const Field& k = group.ring()->field();
  auto chart_vars = strings_of(doc, field_of(doc, j, "chart_vars"), "chart_vars");
  RingPtr chart = Ring::make(k, chart_vars);
  std::vector<std::string> all = group.ring()->vars();
  all.insert(all.end(), chart_vars.begin(), chart_vars.end());
  RingPtr combined = Ring::make(k, all);

  std::vector<Polynomial> rel, act;
  if (j.contains("chart_relations")) {
    auto rels = strings_of(doc, j.at("chart_relations"), "chart_relations");
    for (std::size_t i = 0; i < rels.size(); ++i)
      rel.push_back(read_polynomial(doc, rels[i], chart, "chart_relations[" + std::to_string(i) + "]"));
  }
  const Json& a = field_of(doc, j, "action");
  if (!a.is_object() || a.size() != chart_vars.size())
    fail_at(doc, locate(doc, "action"), "action must map every chart variable to a polynomial", "ArityMismatch");
  for (const auto& t : chart_vars) {
    if (!a.contains(t)) fail_at(doc, locate(doc, "action"), "action has no entry for " + t, "MissingField");
    act.push_back(read_polynomial(doc, string_of(doc, a.at(t), "action." + t), combined, "action." + t));
  }
  std::optional<Polynomial> f;
  if (j.contains("localizer") && !j.at("localizer").is_null())
    f = read_polynomial(doc, string_of(doc, j.at("localizer"), "localizer"), combined, "localizer");

  ActionInput out{{std::move(group), chart, std::move(rel), combined, std::move(act), std::move(f)}, {}};
  if (j.contains("points")) {
    try {
      out.points = read_points(j.at("points"), k, chart_vars.size());
    } catch (const InputError& e) {
      fail_at(doc, locate(doc, "points"), e.what(), e.code());
    }
  }
  return out;
}

Json action_json(const ActionSpec& A, const std::vector<Point>& points, const Json& group) {
  const auto& vars = A.chart->vars();
  Json rel = Json::array(), act = Json::object(), pts = Json::array();
  for (const auto& h : A.chart_relations) rel.push_back(h.to_string());
  for (std::size_t i = 0; i < vars.size(); ++i) act[vars[i]] = A.action[i].to_string();
  for (const auto& v : points) {
    Json p = Json::array();
    for (const auto& c : v) p.push_back(A.chart->field().to_string(c));
    pts.push_back(p);
  }
  Json out{{"group", group}, {"chart_vars", vars}, {"chart_relations", rel}, {"action", act}, {"points", pts}};
  if (A.localizer) out["localizer"] = A.localizer->to_string();
  return out;
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace hopfsmooth::io
