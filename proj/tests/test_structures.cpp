#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "normrel/io.hpp"
#include "normrel/relations.hpp"
#include "normrel/structure.hpp"
#include "oracles.hpp"

using namespace normrel;
using oracle::corpus_structure;

namespace {

  std::string const kZ4 = R"(context gp
carrier 4
op mul 2
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
op inv 1
0 3 2 1
)";

  StructureMap mod2(StructurePtr const& z4) {
    auto z2 = make::cyclic_group(2);
    return {z4, z2, {0, 1, 0, 1}};
  }

}  // namespace

TEST_CASE("load Z4 document", "[io]") {
  auto x = load_structure(kZ4);
  CHECK(x->context() == Context::Gp);
  CHECK(x->size() == 4);
  CHECK(validate_structure(*x).ok());
  CHECK(*x == *make::cyclic_group(4));
  CHECK(x->unit() == Element{0});
}

TEST_CASE("load empty gpcirc document", "[io]") {
  auto x = load_structure("context gpcirc\ncarrier 0\nop mul 2\nop inv 1\n");
  CHECK(x->size() == 0);
  CHECK(x->empty());
  CHECK(validate_structure(*x).ok());
  CHECK(*x == *make::empty_algebra());
}

TEST_CASE("malformed row is a parse error with a position", "[io]") {
  std::string bad = kZ4;
  bad.replace(bad.find("1 2 3 0"), 7, "1 2 3");
  try {
    load_structure(bad);
    FAIL("no error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 5);
  }
  CHECK_THROWS_AS(load_structure("context gp\ncarrier 2\nop mul 2\n0 1\n1 2\nop inv 1\n0 1\n"),
                  ParseError);
  CHECK_THROWS_AS(load_structure("context ring\ncarrier 1\n"), ParseError);
  CHECK_THROWS_AS(load_structure("context gp\ncarrier 2\nop mul 2\n0 1\n"), ParseError);
}

TEST_CASE("every corpus file round-trips through the text format", "[io]") {
  for (auto const* sub : {"gp", "gpds", "gpds-large", "gpcirc"}) {
    for (auto const& p : oracle::corpus(sub)) {
      auto x = load_structure_file(p);
      INFO(p);
      CHECK(validate_structure(*x).ok());
      auto again = load_structure(save_structure(*x));
      CHECK(*again == *x);
      CHECK(save_structure(*again) == save_structure(*x));
    }
  }
}

TEST_CASE("random relabelling gives an isomorphic structure", "[io][iso]") {
  std::mt19937_64 rng(7);
  for (auto const* name : {"gp/s3", "gp/q8", "gpds/mixed3", "gpcirc/z2xz2"}) {
    auto x = corpus_structure(name);
    std::vector<Element> perm(x->size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Operation> ops;
    for (auto const& op : x->ops()) {
      Operation o{op.name, op.arity, std::vector<Element>(op.table.size(), kUndefined)};
      std::size_t const n = x->size();
      for (Element a = 0; a < n; ++a) {
        if (op.arity == 1) {
          o.table[perm[a]] = perm[op.table[a]];
          continue;
        }
        for (Element b = 0; b < n; ++b) {
          Element c = op(a, b, n);
          o.table[perm[a] * n + perm[b]] = c == kUndefined ? kUndefined : perm[c];
        }
      }
      ops.push_back(std::move(o));
    }
    std::optional<GroupoidData> g;
    if (auto const* d = x->groupoid()) {
      g = GroupoidData{d->objects, std::vector<Element>(x->size()),
                       std::vector<Element>(x->size()), {}, d->object_names};
      for (Element a = 0; a < x->size(); ++a) {
        g->src[perm[a]] = d->src[a];
        g->tgt[perm[a]] = d->tgt[a];
      }
      for (auto i : d->identity) {
        g->identity.push_back(perm[i]);
      }
    }
    auto y = std::make_shared<Structure const>(x->context(), x->size(), ops, g);
    INFO(name);
    CHECK(validate_structure(*y).ok());
    CHECK(is_isomorphic(*x, *y));
    CHECK(load_structure(save_structure(*y))->size() == x->size());
  }
  CHECK_FALSE(is_isomorphic(*corpus_structure("gp/z4"), *corpus_structure("gp/z2xz2")));
  CHECK_FALSE(is_isomorphic(*corpus_structure("gp/d4"), *corpus_structure("gp/q8")));
}

TEST_CASE("validation reports violated axioms", "[validate]") {
  SECTION("corrupted Z4 entry") {
    std::string bad = kZ4;
    bad.replace(bad.find("2 3 0 1"), 7, "2 3 1 1");
    auto report = validate_structure(*load_structure(bad));
    REQUIRE_FALSE(report.ok());
    bool assoc_or_identity = false;
    for (auto const& v : report.violations) {
      assoc_or_identity |= v.axiom == "associativity" || v.axiom == "identity";
      if (v.axiom == "associativity") {
        CHECK(v.witness.size() == 3);
      }
    }
    CHECK(assoc_or_identity);
  }
  SECTION("groupoid with a missing identity arrow") {
    std::string doc = R"(context gpds
carrier 4
objects 2
object-names a b
src 0 0 1 1
tgt 0 0 1 1
id 0 3
op comp 2
0 0 0
0 1 1
1 0 1
1 1 0
2 2 2
2 3 3
3 2 3
3 3 2
end
op inv 1
0 1 2 3
)";
    auto report = validate_structure(*load_structure(doc));
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (auto const& v : report.violations) {
      found |= v.message == "identity missing at object b";
    }
    CHECK(found);
  }
  SECTION("gpcirc rejects a non-group") {
    auto x = load_structure("context gpcirc\ncarrier 2\nop mul 2\n0 0\n0 0\nop inv 1\n0 1\n");
    CHECK_FALSE(validate_structure(*x).ok());
  }
}

TEST_CASE("monos", "[maps]") {
  auto z4 = corpus_structure("gp/z4");
  CHECK(is_mono(subobject(z4, {0, 2})));
  auto p = mod2(z4);
  CHECK(is_structure_map(p));
  CHECK_FALSE(is_mono(p));
  auto z2c = corpus_structure("gpcirc/z2");
  auto e   = subobject(z2c, {});
  CHECK(e.domain->empty());
  CHECK(is_structure_map(e));
  CHECK(is_mono(e));
  CHECK(is_structure_map(StructureMap{z4, z4, {0, 2, 0, 2}}));
  CHECK_FALSE(is_structure_map(StructureMap{z4, z4, {0, 1, 1, 0}}));
}

TEST_CASE("kernels", "[maps]") {
  auto z4 = corpus_structure("gp/z4");
  CHECK(image(kernel(mod2(z4))) == std::vector<Element>{0, 2});

  SECTION("gpds: collapsing vertex groups") {
    auto x = corpus_structure("gpds/conn2_z2");
    auto c = corpus_structure("gpds/codisc2");
    // arrow (i, j, g) has index (2i + j) * 2 + g; codisc2 arrow (i, j) has 2i + j
    std::vector<Element> f(x->size());
    for (Element a = 0; a < x->size(); ++a) {
      f[a] = x->src(a) * 2 + x->tgt(a);
    }
    StructureMap collapse{x, c, f};
    REQUIRE(is_structure_map(collapse));
    auto k = image(kernel(collapse));
    std::vector<Element> endo;
    for (Element a = 0; a < x->size(); ++a) {
      if (x->is_endo(a)) {
        endo.push_back(a);
      }
    }
    CHECK(k == endo);
    CHECK(oracle::closed(*x, k));
  }

  SECTION("gpcirc: nonempty domain gives the empty kernel") {
    auto z4c = corpus_structure("gpcirc/z4");
    auto z2c = corpus_structure("gpcirc/z2");
    CHECK(image(kernel(StructureMap{z4c, z2c, {0, 1, 0, 1}})).empty());
  }
}

TEST_CASE("final kernels", "[maps]") {
  auto z6 = corpus_structure("gp/z6");
  CHECK(image(final_kernel(z6)).size() == 6);
  auto x = corpus_structure("gpds/mixed3");
  std::vector<Element> endo;
  for (Element a = 0; a < x->size(); ++a) {
    if (x->is_endo(a)) {
      endo.push_back(a);
    }
  }
  CHECK(image(final_kernel(x)) == endo);
  CHECK(final_object(*x)->size() == 9);
  CHECK(image(final_kernel(corpus_structure("gpcirc/s3"))).empty());
}

TEST_CASE("quotients", "[maps]") {
  auto z4 = corpus_structure("gp/z4");
  auto q  = quotient(parse_relation(z4, "{0,2},{1,3}"));
  CHECK(q.quotient->size() == 2);
  CHECK(is_isomorphic(*q.quotient, *make::cyclic_group(2)));
  CHECK(is_structure_map(q.projection));

  auto s3 = corpus_structure("gp/s3");
  CHECK(is_isomorphic(*quotient(diagonal(s3)).quotient, *s3));
  CHECK(quotient(codiscrete(s3)).quotient->size() == 1);
  CHECK_THROWS(quotient(parse_relation(s3, "{0,1}")));
}

TEST_CASE("products in context", "[maps]") {
  auto x = corpus_structure("gpds/disc2_z2");
  auto p = product_in_context(x);
  CHECK(p.product->size() == 8);
  CHECK(validate_structure(*p.product).ok());
  CHECK(is_structure_map(p.p1));
  CHECK(is_structure_map(p.p2));
  for (auto [a, b] : p.pairs) {
    CHECK(x->parallel(a, b));
  }
  auto g = product_in_context(corpus_structure("gp/s3"));
  CHECK(g.product->size() == 36);
  CHECK(validate_structure(*g.product).ok());
  CHECK(product_in_context(make::empty_algebra()).product->size() == 0);
}

TEST_CASE("null support agrees with the existence of a map to the initial object", "[maps]") {
  CHECK(has_null_support(*corpus_structure("gp/d4")));
  CHECK(has_null_support(*corpus_structure("gpds/disc2_z2")));
  CHECK_FALSE(has_null_support(*corpus_structure("gpds/codisc2")));
  CHECK_FALSE(has_null_support(*corpus_structure("gpcirc/z2")));
  CHECK(has_null_support(*corpus_structure("gpcirc/empty")));
  for (auto const* sub : {"gp", "gpds", "gpcirc"}) {
    for (auto const& p : oracle::corpus(sub)) {
      auto x = load_structure_file(p);
      INFO(p);
      CHECK(has_null_support(*x) == oracle::maps_to_initial(*x));
      for (auto const& s : oracle::all_subobjects(*x)) {
        auto n = subobject(x, s);
        CHECK(has_null_support(*n.domain) == oracle::maps_to_initial(*n.domain));
      }
    }
  }
}

TEST_CASE("subobject enumeration matches the subset scan", "[subobjects]") {
  for (auto const* sub : {"gp", "gpds", "gpds-large", "gpcirc"}) {
    for (auto const& p : oracle::corpus(sub)) {
      auto x = load_structure_file(p);
      INFO(p);
      auto got      = enumerate_subobjects(*x);
      auto expected = oracle::all_subobjects(*x);
      std::sort(got.begin(), got.end());
      std::sort(expected.begin(), expected.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("closure of generators", "[subobjects]") {
  auto s3 = corpus_structure("gp/s3");
  CHECK(close_subset(*s3, {1}) == std::vector<Element>{0, 1});
  CHECK(close_subset(*s3, {4}) == std::vector<Element>{0, 4, 5});
  CHECK(close_subset(*s3, {1, 2}).size() == 6);
  CHECK(close_subset(*s3, {}) == std::vector<Element>{0});
  CHECK(close_subset(*corpus_structure("gpcirc/z3"), {}).empty());
  auto g = corpus_structure("gpds/codisc2");
  CHECK(close_subset(*g, {}) == std::vector<Element>{0, 3});
  CHECK(close_subset(*g, {1}).size() == 4);
  CHECK_THROWS(subobject(s3, {1}));
}

TEST_CASE("builders", "[make]") {
  auto z3 = make::cyclic_group(3);
  CHECK(validate_structure(*z3).ok());
  CHECK(*make::cyclic_group(3, Context::GpCirc) == *corpus_structure("gpcirc/z3"));
  auto c = make::connected_groupoid(2, *make::cyclic_group(2));
  CHECK(validate_structure(*c).ok());
  CHECK(is_isomorphic(*c, *corpus_structure("gpds/conn2_z2")));
  auto d = make::disconnected_groupoid({make::cyclic_group(2), make::cyclic_group(2)});
  CHECK(validate_structure(*d).ok());
  CHECK(is_isomorphic(*d, *corpus_structure("gpds/disc2_z2")));
}
