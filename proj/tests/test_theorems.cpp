#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

#include "normrel/io.hpp"
#include "normrel/normality.hpp"
#include "normrel/theorems.hpp"
#include "oracles.hpp"

using namespace normrel;
using oracle::corpus_structure;
namespace fs = std::filesystem;

namespace {

  std::size_t count_id(VerificationReport const& r, std::string const& id) {
    return std::count_if(r.checks.begin(), r.checks.end(),
                         [&](Check const& c) { return c.id == id; });
  }

  nlohmann::json without_timing(nlohmann::json j) {
    j.erase("ms");
    return j;
  }

  struct TempDir {
    fs::path path;
    TempDir() {
      path = fs::temp_directory_path() / ("normrel-test-" + std::to_string(::getpid()));
      fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
  };

}  // namespace

TEST_CASE("normalization suite on S3", "[suite]") {
  auto r = suite_normalization(corpus_structure("gp/s3"));
  CHECK(r.passed());
  CHECK(r.suite == "normalization");
  // one nor-normal-to-R check per congruence
  CHECK(count_id(r, "nor-normal-to-R") == 3);
}

TEST_CASE("normalization suite on gpcirc Z2 gives empty normalizations", "[suite]") {
  auto x = corpus_structure("gpcirc/z2");
  auto r = suite_normalization(x);
  CHECK(r.passed());
  for (auto const& s : enumerate_congruences(x)) {
    CHECK(image(nor(s)).empty());
  }
}

TEST_CASE("every suite passes on every corpus instance", "[suite]") {
  for (auto const* sub : {"gp", "gpds", "gpcirc"}) {
    for (auto const& p : oracle::corpus(sub)) {
      auto x = load_structure_file(p);
      INFO(p);
      for (auto suite : {suite_normalization, suite_rel, suite_triangles, suite_equivalence,
                         suite_context_specific}) {
        auto r = suite(x, {});
        CHECK(r.passed());
        CHECK_FALSE(r.checks.empty());
      }
    }
  }
}

TEST_CASE("witness uniqueness is only asserted where it holds", "[suite]") {
  CHECK(count_id(suite_rel(corpus_structure("gp/s3")), "witness-unique") == 3);
  CHECK(count_id(suite_rel(corpus_structure("gpcirc/z2")), "witness-unique") == 0);
}

TEST_CASE("context suites pick the matching characterization", "[suite]") {
  CHECK(count_id(suite_context_specific(corpus_structure("gp/d4")), "bourn-normal-is-kernel") > 0);
  CHECK(count_id(suite_context_specific(corpus_structure("gpds/mixed3")), "conjugation-agreement")
        == oracle::all_subobjects(*corpus_structure("gpds/mixed3")).size());
  CHECK(count_id(suite_context_specific(corpus_structure("gpcirc/s3")), "two-normal-subobjects")
        == 3);
}

TEST_CASE("run_all over the group corpus", "[run_all]") {
  auto files   = corpus_files(oracle::corpus_dir() / "gp");
  REQUIRE(files.size() == 14);
  auto reports = run_all(files);
  REQUIRE(reports.size() == 14);
  for (std::size_t i = 0; i < files.size(); ++i) {
    CHECK(reports[i].instance == files[i].string());
    CHECK(reports[i].passed());
  }
  CHECK(run_all({}).empty());
}

TEST_CASE("a corrupted file does not stop the batch", "[run_all]") {
  TempDir dir;
  fs::copy_file(oracle::corpus_dir() / "gp" / "z3.alg", dir.path / "a.alg");
  std::ofstream(dir.path / "b.alg") << "context gp\ncarrier 2\nop mul 2\n0 1\n";
  fs::copy_file(oracle::corpus_dir() / "gp" / "s3.alg", dir.path / "c.alg");
  std::ofstream(dir.path / "d.alg") << "context gp\ncarrier 2\nop mul 2\n0 0\n0 0\nop inv 1\n0 1\n";
  auto reports = run_all(corpus_files(dir.path));
  REQUIRE(reports.size() == 4);
  CHECK(reports[0].passed());
  CHECK_FALSE(reports[1].passed());
  REQUIRE(reports[1].checks.size() == 1);
  CHECK(reports[1].checks[0].id == "load");
  CHECK(reports[1].checks[0].witness.contains("replay"));
  CHECK(reports[2].passed());
  CHECK_FALSE(reports[3].passed());
  CHECK(reports[3].checks[0].witness["error"].get<std::string>().find("invalid structure")
        != std::string::npos);
}

TEST_CASE("instances above the bound are reported, not run", "[run_all]") {
  auto files = corpus_files(oracle::corpus_dir() / "gpds-large");
  auto small = run_all(files);
  for (auto const& r : small) {
    CHECK_FALSE(r.passed());
  }
  for (auto const& r : run_all(files, 16)) {
    CHECK(r.passed());
  }
}

TEST_CASE("reports serialize to the documented schema", "[json]") {
  auto r = verify_instance(corpus_structure("gp/z4"), {kDefaultMaxCarrier, "z4"});
  auto j = to_json(r);
  CHECK(j["suite"] == "all");
  CHECK(j["instance"] == "z4");
  CHECK(j["ms"].is_number());
  REQUIRE(j["checks"].is_array());
  std::set<std::string> suites;
  for (auto const& c : j["checks"]) {
    CHECK(c.size() == 4);
    CHECK(c["id"].is_string());
    CHECK(c["anchor"].is_string());
    CHECK(c["pass"] == true);
    CHECK(c.contains("witness"));
    auto id = c["id"].get<std::string>();
    suites.insert(id.substr(0, id.find('/')));
  }
  CHECK(suites == std::set<std::string>{"normalization", "rel", "triangles", "equivalence",
                                        "context"});
  CHECK(to_text(r).rfind("PASS all z4", 0) == 0);
}

TEST_CASE("reports are deterministic", "[json]") {
  auto files = corpus_files(oracle::corpus_dir() / "gpds");
  auto a     = run_all(files);
  auto b     = run_all(files);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(without_timing(to_json(a[i])) == without_timing(to_json(b[i])));
  }
}
