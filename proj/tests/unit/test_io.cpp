#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hopfsmooth/io.hpp"

using namespace hopfsmooth;

namespace {

const std::string root = HOPFSMOOTH_SOURCE_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> files(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(root + "/" + dir))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("shipped group files print back bit for bit") {
  auto paths = files("data/groups");
  CHECK(paths.size() >= 8);
  for (const auto& path : paths) {
    INFO(path);
    io::Document doc = io::read_document(path);
    HopfQuadruple H = io::read_quadruple(doc);
    CHECK(io::dump(io::quadruple_json(H, doc.json.value("name", ""))) == doc.text);
    HopfQuadruple Q = H.ring()->field().kind() == FieldKind::Integers ? change_field(H, Field::rationals()) : H;
    CHECK(Q.is_hopf());
  }
}

TEST_CASE("shipped ideal and action files print back bit for bit") {
  for (const auto& path : files("data/ideals")) {
    INFO(path);
    io::Document doc = io::read_document(path);
    auto in = io::read_ideal(doc);
    io::Json j = io::ideal_json(in.ring, in.generators);
    if (!doc.json.contains("order")) j.erase("order");
    CHECK(io::dump(j) == doc.text);
  }
  for (const auto& path : files("data/actions")) {
    INFO(path);
    io::Document doc = io::read_document(path);
    auto in = io::read_action(doc);
    CHECK(io::dump(io::action_json(in.action, in.points, doc.json["group"])) == doc.text);
    CHECK(respects_chart(in.action));
  }
}

TEST_CASE("quadruples survive a round trip through text") {
  for (const auto& k : {Field::rationals(), Field::prime(3)}) {
    for (const auto& H : {catalog::general_linear(k), catalog::roots_of_unity(k, 4), catalog::multiplicative(k)}) {
      std::string text = io::dump(io::quadruple_json(H));
      HopfQuadruple back = io::read_quadruple(io::parse_document(text));
      CHECK(io::dump(io::quadruple_json(back)) == text);
      CHECK(back.ideal().equals(H.ideal()));
      CHECK(back.comul() == H.comul());
    }
  }
  // The field flag reduces a file over Z.
  io::Overrides over;
  over.field = Field::prime(5);
  HopfQuadruple mu6 = io::read_quadruple(io::read_document(root + "/data/groups/mu6.json"), over);
  CHECK(mu6.ring()->field() == Field::prime(5));
  CHECK(is_smooth(mu6).smooth);
}

TEST_CASE("errors carry their position") {
  io::Document doc = io::parse_document("{\n  \"vars\": [\"x\"],\n  \"generators\": [\"x^2\", \"x*+1\"]\n}\n");
  try {
    io::read_ideal(doc);
    FAIL("no error");
  } catch (const io::LocatedError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 28);
    CHECK(e.code() == "ParseError");
  }
  try {
    io::parse_document("{\"vars\": [\"x\",\n \"y\" \"z\"]}");
    FAIL("no error");
  } catch (const io::LocatedError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(io::read_ideal(io::parse_document("{\"vars\": [\"x\"]}")), InputError);
  CHECK_THROWS_AS(io::read_quadruple(io::parse_document(
                      R"({"vars":["x"],"relations":[],"comul":{"x":"x'+x''"},"antipode":{"x":"-x"},"counit":{}})")),
                  InputError);
  CHECK_THROWS_AS(io::read_points(io::Json::parse(R"([["1"]])"), Field::rationals(), 2), InputError);
  auto pts = io::read_points(io::Json::parse(R"([["1/2", 3]])"), Field::prime(5), 2);
  CHECK(pts[0][0] == 3);
  CHECK(pts[0][1] == 3);
}
