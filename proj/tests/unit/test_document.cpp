#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixcat/document.hpp"

using namespace fixcat;

namespace {

const std::filesystem::path kFixtures = FIXCAT_FIXTURE_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> fixture_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(kFixtures))
    if (e.is_regular_file() && e.path().string().ends_with(".fixcat.json")) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("document") {
  TEST_CASE("walking arrow fixture loads") {
    auto doc = load_document(kFixtures / "walking_arrow.fixcat.json");
    CHECK(doc.categories.size() == 1);
    CHECK(doc.functors.size() == 2);
    CHECK(doc.transformations.size() == 1);
    CHECK(doc.category("walking_arrow")->num_morphisms() == 3);
    CHECK_THROWS_AS(doc.functor("nope"), Error);
  }

  TEST_CASE("every fixture loads and round-trips") {
    auto files = fixture_files();
    CHECK(files.size() >= 9);
    for (const auto& f : files) {
      CAPTURE(f.filename().string());
      auto text = slurp(f);
      auto doc = parse_document(text);
      auto once = serialize_document(doc);
      CHECK(once == text);
      CHECK(serialize_document(parse_document(once)) == once);
    }
  }

  TEST_CASE("undefined reference reports name and line") {
    try {
      load_document(kFixtures / "invalid" / "undefined_functor.fixcat.json");
      FAIL("expected a ReferenceError");
    } catch (const ReferenceError& e) {
      CHECK(e.name() == "missing");
      CHECK(e.line() == 28);
    }
  }

  TEST_CASE("broken composition is a validation error") {
    try {
      load_document(kFixtures / "invalid" / "broken_composition.fixcat.json");
      FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.code() == "AssociativityViolation");
    }
  }

  TEST_CASE("malformed JSON reports a line") {
    try {
      load_document(kFixtures / "invalid" / "malformed.fixcat.json");
      FAIL("expected a ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 6);
    }
  }

  TEST_CASE("missing files and unknown sections") {
    CHECK_THROWS_AS(load_document(kFixtures / "does_not_exist.json"), Error);
    CHECK_THROWS_AS(parse_document(R"({"widgets": []})"), ParseError);
    CHECK_THROWS_AS(parse_document(R"({"categories": [{"name": "x", "objects": ["A", "A"], "morphisms": [],
      "identities": {}, "composition": []}]})"),
                    ValidationError);
  }

  TEST_CASE("duplicate names are rejected") {
    std::string cat = R"({"name": "t", "objects": ["*"], "morphisms": [{"id": "i", "dom": "*", "cod": "*"}],
      "identities": {"*": "i"}, "composition": [["i", "i", "i"]]})";
    CHECK_THROWS_AS(parse_document("{\"categories\": [" + cat + ", " + cat + "]}"), ParseError);
  }

  TEST_CASE("groups by orders or by relations, large integers as strings") {
    std::string text = R"({
      "categories": [{"name": "t", "objects": ["*"], "morphisms": [{"id": "i", "dom": "*", "cod": "*"}],
                      "identities": {"*": "i"}, "composition": [["i", "i", "i"]]}],
      "pretopologies": [{"name": "s", "category": "t", "covers": {}, "closure": true}],
      "presheaves": [
        {"name": "p", "site": "s", "values": {"*": {"orders": [2, 3]}}, "restrictions": {"i": [[1, 0], [0, 1]]}},
        {"name": "q", "site": "s", "values": {"*": {"generators": 1, "relations": [["100000000000000000000"]]}},
         "restrictions": {"i": [[1]]}}
      ]
    })";
    auto doc = parse_document(text);
    CHECK(doc.presheaf("p").value(0).invariants().factors == IntVector{6});
    CHECK(doc.presheaf("q").value(0).order() == Integer("100000000000000000000"));
    auto again = parse_document(serialize_document(doc));
    CHECK(serialize_document(again) == serialize_document(doc));
  }
}
