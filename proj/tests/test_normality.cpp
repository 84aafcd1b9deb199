#include <catch_amalgamated.hpp>

#include <algorithm>

#include "normrel/io.hpp"
#include "normrel/normality.hpp"
#include "normrel/relations.hpp"
#include "normrel/structure.hpp"
#include "oracles.hpp"

using namespace normrel;
using oracle::corpus_structure;

namespace {

  std::vector<Element> endo_arrows(Structure const& x) {
    std::vector<Element> out;
    for (Element a = 0; a < x.size(); ++a) {
      if (x.is_endo(a)) {
        out.push_back(a);
      }
    }
    return out;
  }

  // Independent conjugation scan straight on the tables: f^-1 alpha f in
  // diagrammatic order is comp(comp(inv f, alpha), f) for f: y -> z.
  bool conjugation_scan(Structure const& x, std::vector<Element> const& s) {
    auto const* comp = x.find_op("comp");
    auto const* inv  = x.find_op("inv");
    auto        in   = [&](Element a) { return std::binary_search(s.begin(), s.end(), a); };
    for (auto alpha : s) {
      if (!x.is_endo(alpha)) {
        continue;
      }
      for (Element f = 0; f < x.size(); ++f) {
        if (x.src(f) != x.src(alpha)) {
          continue;
        }
        Element c = (*comp)((*comp)((*inv)(f), alpha, x.size()), f, x.size());
        if (!in(c)) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("Bourn-normality against a relation", "[normal]") {
  auto z4 = corpus_structure("gp/z4");
  auto n  = subobject(z4, {0, 2});
  CHECK(is_bourn_normal_to(n, parse_relation(z4, "{0,2},{1,3}")));
  CHECK(is_bourn_normal_to(identity_map(z4), codiscrete(z4)));
  CHECK_FALSE(is_bourn_normal_to(n, codiscrete(z4)));
  CHECK_FALSE(is_bourn_normal_to(n, diagonal(z4)));

  auto s3    = corpus_structure("gp/s3");
  auto t     = subobject(s3, {0, 1});
  auto check = is_bourn_normal_to(t, codiscrete(s3));
  CHECK_FALSE(check);
  CHECK(check.square == "second");
  CHECK(check.diagnostic.find("6 elements") != std::string::npos);

  auto z2c   = corpus_structure("gpcirc/z2");
  auto empty = subobject(z2c, {});
  CHECK(is_bourn_normal_to(empty, diagonal(z2c)));
  CHECK(is_bourn_normal_to(empty, codiscrete(z2c)));
}

TEST_CASE("nor", "[nor]") {
  auto s3 = corpus_structure("gp/s3");
  CHECK(image(nor(parse_relation(s3, "{0,4,5},{1,2,3}"))) == std::vector<Element>{0, 4, 5});
  CHECK(image(nor(diagonal(s3))) == std::vector<Element>{0});
  CHECK(image(nor(codiscrete(s3))).size() == 6);
  auto z2c = corpus_structure("gpcirc/z2");
  CHECK(image(nor(codiscrete(z2c))).empty());
  auto g = corpus_structure("gpds/conn2_z2");
  for (auto const& r : enumerate_congruences(g)) {
    auto n = nor(r);
    CHECK(is_mono(n));
    CHECK(has_null_support(*n.domain));
    CHECK(is_bourn_normal_to(n, r));
  }
}

TEST_CASE("rel", "[rel]") {
  auto z4 = corpus_structure("gp/z4");
  CHECK(to_literal(rel(subobject(z4, {0, 2}))) == "{0,2},{1,3}");
  auto s3 = corpus_structure("gp/s3");
  CHECK(rel(subobject(s3, {0, 1})) == codiscrete(s3));
  auto z3c = corpus_structure("gpcirc/z3");
  CHECK(rel(subobject(z3c, {})) == diagonal(z3c));
  // rel does not need a mono
  auto z2 = make::cyclic_group(2);
  CHECK(rel(StructureMap{z4, z2, {0, 1, 0, 1}}) == codiscrete(z2));
}

TEST_CASE("is_bourn_normal", "[normal]") {
  auto s3 = corpus_structure("gp/s3");
  CHECK(is_bourn_normal(subobject(s3, {0, 4, 5})));
  auto c = is_bourn_normal(subobject(s3, {0, 1}));
  CHECK_FALSE(c);
  CHECK(c.diagnostic.rfind("image is not a class of Rel(n)", 0) == 0);
  // Gp: Bourn-normal exactly when normal, on every corpus group
  for (auto const& p : oracle::corpus("gp")) {
    auto x      = load_structure_file(p);
    auto normal = oracle::normal_subgroups(*x);
    for (auto const& s : oracle::all_subobjects(*x)) {
      bool expected = std::find(normal.begin(), normal.end(), s) != normal.end();
      CHECK(bool(is_bourn_normal(subobject(x, s))) == expected);
    }
  }
}

TEST_CASE("cartesian witness morphism", "[rel]") {
  for (auto const& name : {"gp/d4", "gpds/mixed3", "gpcirc/s3"}) {
    auto x = corpus_structure(name);
    for (auto const& s : oracle::all_subobjects(*x)) {
      auto n = subobject(x, s);
      auto m = rel_witness_morphism(n);
      CHECK(is_relation_morphism(m));
      bool cartesian = is_discrete_fibration(m) && is_fully_faithful(m);
      CHECK(cartesian == bool(is_bourn_normal(n)));
    }
  }
}

TEST_CASE("gpds: conjugation-closed subgroupoids are normal", "[gpds]") {
  for (auto const* sub : {"gpds", "gpds-large"}) {
    for (auto const& p : oracle::corpus(sub)) {
      auto x = load_structure_file(p);
      INFO(p);
      for (auto const& s : oracle::all_subobjects(*x)) {
        bool scan = conjugation_scan(*x, s);
        CHECK(is_conjugation_closed(*x, s) == scan);
        CHECK(bool(is_bourn_normal(subobject(x, s))) == scan);
      }
    }
  }
}

TEST_CASE("witness lists", "[witnesses]") {
  auto s3 = corpus_structure("gp/s3");
  auto a3 = normal_to_witnesses(subobject(s3, {0, 4, 5}));
  REQUIRE(a3.size() == 1);
  CHECK(to_literal(a3.front()) == "{0,4,5},{1,2,3}");
  CHECK(normal_to_witnesses(subobject(s3, {0, 1})).empty());
  auto z2c = corpus_structure("gpcirc/z2");
  auto e   = normal_to_witnesses(subobject(z2c, {}));
  REQUIRE(e.size() == 2);
  CHECK(std::find(e.begin(), e.end(), diagonal(z2c)) != e.end());
  CHECK(std::find(e.begin(), e.end(), codiscrete(z2c)) != e.end());
  CHECK_THROWS_AS(normal_to_witnesses(identity_map(corpus_structure("gp/z8")), 4), Error);
}

TEST_CASE("N0 membership", "[N0]") {
  for (auto const& p : oracle::corpus("gp")) {
    auto x = load_structure_file(p);
    for (auto const& s : oracle::normal_subgroups(*x)) {
      CHECK(in_N0(subobject(x, s)));
    }
  }
  auto g = corpus_structure("gpds/conn2_z2");
  auto whole = identity_map(g);
  REQUIRE(is_bourn_normal(whole));
  CHECK_FALSE(in_N0(whole));
  CHECK(image(final_kernel(g)) == endo_arrows(*g));
  CHECK(in_N0(final_kernel(g)));
  auto z3c = corpus_structure("gpcirc/z3");
  CHECK(in_N0(subobject(z3c, {})));
  CHECK_FALSE(in_N0(identity_map(z3c)));
  CHECK_FALSE(in_N0(subobject(corpus_structure("gp/s3"), {0, 1})));
}

TEST_CASE("comparison monos", "[epsilon]") {
  auto g = corpus_structure("gpds/conn2_z2");
  auto e = counit_epsilon(identity_map(g));
  CHECK(commutes(e));
  CHECK(image(e.from) == endo_arrows(*g));
  CHECK(e.bottom == identity_map(g));
  CHECK_THROWS_AS(counit_epsilon(subobject(corpus_structure("gp/s3"), {0, 1})), Error);

  auto z2c = corpus_structure("gpcirc/z2");
  auto ep  = counit_epsilon_prime(codiscrete(z2c));
  CHECK(ep.source == diagonal(z2c));
  CHECK(ep.target == codiscrete(z2c));
  CHECK(is_relation_morphism(ep));
  auto d = counit_epsilon_prime(diagonal(z2c));
  CHECK(d.source == d.target);

  auto z4 = corpus_structure("gp/z4");
  for (auto const& s : enumerate_congruences(z4)) {
    auto m = counit_epsilon_prime(s);
    CHECK(m.source == s);
    CHECK(nor_of(m).top.domain->size() == nor_of(m).top.codomain->size());
  }
}

TEST_CASE("subobject order", "[order]") {
  auto z8 = corpus_structure("gp/z8");
  auto a  = subobject(z8, {0, 4});
  auto b  = subobject(z8, {0, 2, 4, 6});
  CHECK(subobject_leq(a, b));
  CHECK_FALSE(subobject_leq(b, a));
  CHECK(same_subobject(b, subobject(z8, close_subset(*z8, {6}))));
}
