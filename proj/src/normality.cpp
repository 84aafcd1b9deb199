#include "normrel/normality.hpp"

#include <algorithm>
#include <stdexcept>

namespace normrel {

  NormalityCheck is_bourn_normal_to(StructureMap const& n, EquivRelation const& r) {
    auto const& dom = *n.domain;
    if (r.size() != n.codomain->size()) {
      throw Error("relation and mono live on different structures");
    }
    if (!is_mono(n)) {
      return {false, "second", "n is not a monomorphism", {}};
    }
    // first square: n x n factors through R
    for (Element a = 0; a < dom.size(); ++a) {
      for (Element b = 0; b < dom.size(); ++b) {
        if (dom.parallel(a, b) && !r.related(n(a), n(b))) {
          return {false,
                  "first",
                  "n x n does not factor through R: (" + std::to_string(n(a)) + ","
                      + std::to_string(n(b)) + ") is not related",
                  {n(a), n(b)}};
        }
      }
    }
    // second square: every R-partner of n(a) is n(b) for some b
    std::vector<bool> in_image(r.size(), false);
    for (Element v : n.map) {
      in_image[v] = true;
    }
    for (Element a = 0; a < dom.size(); ++a) {
      for (Element y = 0; y < r.size(); ++y) {
        if (r.related(n(a), y) && !in_image[y]) {
          auto cls = r.class_containing(n(a));
          return {false,
                  "second",
                  "R-class of " + std::to_string(n(a)) + " has "
                      + std::to_string(cls.size()) + " elements but contains "
                      + std::to_string(y) + " outside the image (N has "
                      + std::to_string(dom.size()) + " elements)",
                  {n(a), y}};
        }
      }
    }
    return {};
  }

  StructureMap nor(EquivRelation const& r) {
    auto const&          x    = r.base();
    auto const           init = x->initial_image();
    std::vector<Element> normalization;
    // K = ker(r1) = {(i, y) in R : i in the initial image}; nor = r2 . K
    for (auto [i, y] : r.pairs()) {
      if (std::binary_search(init.begin(), init.end(), i)) {
        normalization.push_back(y);
      }
    }
    return subobject(x, std::move(normalization));
  }

  EquivRelation rel(StructureMap const& n) {
    auto const& dom = *n.domain;
    Pairs       seeds;
    for (Element a = 0; a < dom.size(); ++a) {
      for (Element b = 0; b < dom.size(); ++b) {
        if (dom.parallel(a, b) && n(a) != n(b)) {
          seeds.emplace_back(n(a), n(b));
        }
      }
    }
    return generated_congruence(n.codomain, seeds);
  }

  NormalityCheck is_bourn_normal(StructureMap const& n) {
    auto check = is_bourn_normal_to(n, rel(n));
    if (!check) {
      check.diagnostic = "image is not a class of Rel(n): " + check.diagnostic;
    }
    return check;
  }

  RelationMorphism rel_witness_morphism(StructureMap const& n) {
    return {codiscrete(n.domain), rel(n), n};
  }

  std::vector<EquivRelation> normal_to_witnesses(StructureMap const& n,
                                                 std::size_t         max_carrier) {
    std::vector<EquivRelation> result;
    for (auto& r : enumerate_congruences(n.codomain, max_carrier)) {
      if (is_bourn_normal_to(n, r)) {
        result.push_back(std::move(r));
      }
    }
    return result;
  }

  bool in_N0(StructureMap const& n) {
    return has_null_support(*n.domain) && is_bourn_normal(n);
  }

  bool subobject_leq(StructureMap const& m, StructureMap const& n) {
    auto const a = image(m);
    auto const b = image(n);
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  bool same_subobject(StructureMap const& m, StructureMap const& n) {
    return image(m) == image(n);
  }

  bool operator==(ArrowMorphism const& a, ArrowMorphism const& b) {
    return a.from == b.from && a.to == b.to && a.top == b.top && a.bottom == b.bottom;
  }

  bool commutes(ArrowMorphism const& a) {
    return compose(a.to, a.top).map == compose(a.bottom, a.from).map;
  }

  RelationMorphism rel_of(ArrowMorphism const& a) {
    RelationMorphism m{rel(a.from), rel(a.to), a.bottom};
    if (!is_relation_morphism(m)) {
      throw Error("rel_of: bottom map does not carry rel(from) into rel(to)");
    }
    return m;
  }

  ArrowMorphism nor_of(RelationMorphism const& m) {
    auto from = nor(m.source);
    auto to   = nor(m.target);
    std::vector<Element> top;
    for (Element a = 0; a < from.domain->size(); ++a) {
      Element y  = m.base_map(from(a));
      auto    it = std::find(to.map.begin(), to.map.end(), y);
      if (it == to.map.end()) {
        throw Error("nor_of: base map does not carry nor(source) into nor(target)");
      }
      top.push_back(static_cast<Element>(it - to.map.begin()));
    }
    StructureMap top_map{from.domain, to.domain, std::move(top)};
    return {std::move(from), std::move(to), std::move(top_map), m.base_map};
  }

  ArrowMorphism counit_epsilon(StructureMap const& n) {
    if (auto check = is_bourn_normal(n); !check) {
      throw Error("counit_epsilon: " + check.diagnostic);
    }
    auto k  = final_kernel(n.domain);
    auto nk = compose(n, k);
    if (!same_subobject(nor(rel(n)), nk)) {
      throw std::logic_error("counit_epsilon: nor(rel(n)) differs from n . k");
    }
    return {std::move(nk), n, std::move(k), identity_map(n.codomain)};
  }

  RelationMorphism counit_epsilon_prime(EquivRelation const& s) {
    auto inner = rel(nor(s));
    if (!inner.is_contained_in(s)) {
      throw std::logic_error("counit_epsilon_prime: rel(nor(S)) = " + to_literal(inner)
                             + " is not contained in S = " + to_literal(s));
    }
    return {std::move(inner), s, identity_map(s.base())};
  }

  bool is_conjugation_closed(Structure const& x, std::vector<Element> const& subset) {
    Operation const* comp = x.find_op(x.context() == Context::GpdS ? "comp" : "mul");
    Operation const* inv  = x.find_op("inv");
    if (comp == nullptr || inv == nullptr) {
      throw Error("is_conjugation_closed: structure lacks composition or inverse");
    }
    std::size_t const n = x.size();
    std::vector<bool> in(n, false);
    for (Element a : subset) {
      in[a] = true;
    }
    for (Element alpha : subset) {
      if (!x.is_endo(alpha)) {
        continue;
      }
      for (Element f = 0; f < n; ++f) {
        // f : s -> y, alpha : y -> y; f^-1 alpha f is "f, then alpha, then f^-1"
        Element f_alpha = (*comp)(f, alpha, n);
        if (f_alpha == kUndefined) {
          continue;
        }
        if (!in[(*comp)(f_alpha, (*inv)(f), n)]) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace normrel
