#include "doctest.h"

#include <sstream>

#include "command_cases.hpp"
#include "fixcat/commands.hpp"

namespace {

const std::string kFixtures = FIXCAT_FIXTURE_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = fixcat::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name + ".fixcat.json"; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("fixed points of the codiscrete swap") {
    auto r = invoke({"fixpoints", fixture("codiscrete"), "--functor", "F", "--json"});
    CHECK(r.code == fixcat::cli::kPass);
    CHECK(r.out.find("\"count\": 2") != std::string::npos);
  }

  TEST_CASE("Lefschetz number of the hexagon rotation") {
    auto r = invoke({"lefschetz", fixture("hexagon"), "--functor", "rot"});
    CHECK(r.code == 0);
    CHECK(r.out.find("lefschetz: 0\n") != std::string::npos);
  }

  TEST_CASE("Cech cohomology of the pseudocircle") {
    auto r = invoke({"cech", fixture("pseudocircle"), "--site", "pseudocircle", "--cover", "UV", "--presheaf", "comp",
                     "--max-degree", "2", "--json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"cohomology\": [\n    [\n      2\n    ],\n    [\n      2\n    ],") != std::string::npos);
  }

  TEST_CASE("every command returns its expected exit code") {
    for (const auto& inv : cases::invocations()) {
      auto args = cases::resolve(inv, kFixtures, {"--json"});
      CAPTURE(args[0]);
      auto r = invoke(args);
      CHECK(r.code == inv.exit_code);
      CHECK(r.out.front() == '{');
    }
  }

  TEST_CASE("input errors exit with 2") {
    CHECK(invoke({"validate", fixture("does_not_exist")}).code == fixcat::cli::kInputError);
    CHECK(invoke({"validate", kFixtures + "/invalid/malformed.fixcat.json"}).code == 2);
    CHECK(invoke({"fixpoints", fixture("codiscrete"), "--functor", "nope"}).code == 2);
    CHECK(invoke({"no-such-command"}).code == 2);
    CHECK(invoke({"proptest", "--suite", "nope"}).code == 2);

    auto ref = invoke({"validate", kFixtures + "/invalid/undefined_functor.fixcat.json", "--json"});
    CHECK(ref.code == 2);
    CHECK(ref.out.find("\"name\": \"missing\"") != std::string::npos);
    CHECK(ref.out.find("\"line\": 28") != std::string::npos);
  }

  TEST_CASE("a law violation in the document fails the property") {
    auto r = invoke({"validate", kFixtures + "/invalid/broken_composition.fixcat.json", "--json"});
    CHECK(r.code == fixcat::cli::kPropertyFails);
    CHECK(r.out.find("AssociativityViolation") != std::string::npos);
  }

  TEST_CASE("json output does not depend on the thread count") {
    auto one = invoke({"proptest", "--suite", "sheaf", "--scale", "0.2", "--threads", "1", "--json"});
    auto four = invoke({"proptest", "--suite", "sheaf", "--scale", "0.2", "--threads", "4", "--json"});
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
  }

  TEST_CASE("help lists the commands") {
    auto r = invoke({"--help"});
    CHECK(r.code == 0);
    for (const auto& name : fixcat::cli::command_names()) CHECK(r.out.find(name) != std::string::npos);
  }
}
