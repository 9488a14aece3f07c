#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hopfsmooth/centraliser.hpp"
#include "hopfsmooth/error.hpp"
#include "hopfsmooth/hopf.hpp"
#include "hopfsmooth/ideal.hpp"

namespace hopfsmooth::io {

using Json = nlohmann::json;

/// A parse failure located in an input document (1-based line and column).
class LocatedError : public InputError {
 public:
  LocatedError(std::string code, const std::string& source, std::size_t line, std::size_t column,
               const std::string& what)
      : InputError(std::move(code), source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A JSON document together with its text, so that errors in embedded
/// polynomial strings can be reported at their line and column.
struct Document {
  std::string source;  // file name or "<input>"
  std::string text;
  std::string directory;  // for relative references; empty for text input
  Json json;
};

Document parse_document(std::string text, std::string source = "<input>");
Document read_document(const std::string& path);

/// Flags that override what a file declares.
struct Overrides {
  std::optional<Field> field;
  std::optional<std::string> order;  // grlex, lex or block:r
};

struct IdealInput {
  RingPtr ring;
  std::vector<Polynomial> generators;
  Ideal ideal() const;
};

/// {"field": "Q", "vars": [...], "order": "grlex", "generators": [...]}.
/// field and order are optional.
IdealInput read_ideal(const Document& doc, const Overrides& over = {});
Json ideal_json(const RingPtr& ring, const std::vector<Polynomial>& generators);

/// Parses a polynomial string in the ring, reporting errors against the document.
Polynomial read_polynomial(const Document& doc, const std::string& text, const RingPtr& ring,
                           const std::string& where);

/// {"name", "field", "vars", "relations", "comul", "antipode", "counit"};
/// comul, antipode and counit map each variable to a string, with the two
/// tensor copies of x written x' and x''.
HopfQuadruple read_quadruple(const Document& doc, const Overrides& over = {});
HopfQuadruple read_quadruple(const Json& json, const Overrides& over = {});
Json quadruple_json(const HopfQuadruple& H, const std::string& name = "");

struct ActionInput {
  ActionSpec action;
  std::vector<Point> points;
};

/// {"group": <file name relative to the document, or an inline quadruple>,
///  "chart_vars", "chart_relations", "action": {t: poly}, "localizer",
///  "points": [[literal, ...], ...]}.
ActionInput read_action(const Document& doc, const Overrides& over = {});
Json action_json(const ActionSpec& A, const std::vector<Point>& points, const Json& group);

std::vector<Point> read_points(const Json& points, const Field& field, std::size_t arity);

/// Two-space indented, keys sorted, trailing newline.
std::string dump(const Json& json);

}  // namespace hopfsmooth::io
