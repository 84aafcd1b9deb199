// Bourn-normal monomorphisms and the two functors relating them to internal
// equivalence relations:
//
//   nor : EqRel -> N,   R |-> r2 . ker(r1)
//   rel : Arr   -> EqRel, n |-> least congruence containing n(N) x n(N)
//
// together with the comparison monos
//
//   epsilon_n  : nor(rel(n)) >-> n
//   epsilon'_S : rel(nor(S)) >-> S

#ifndef NORMREL_NORMALITY_HPP_
#define NORMREL_NORMALITY_HPP_

#include <string>
#include <vector>

#include "normrel/relations.hpp"
#include "normrel/structure.hpp"

namespace normrel {

  struct NormalityCheck {
    bool                 normal = true;
    std::string          square;  // "first" or "second" when failing
    std::string          diagnostic;
    std::vector<Element> witness;
    explicit operator bool() const noexcept { return normal; }
  };

  // Both pullback squares at carrier level:
  //  first:  every parallel pair of n(N) is R-related;
  //  second: for a in N, b |-> (n a, n b) is a bijection onto the R-pairs
  //          with first leg n a.
  NormalityCheck is_bourn_normal_to(StructureMap const& n, EquivRelation const& r);

  //! r2 . ker(r1), as a mono into the base of r.
  StructureMap nor(EquivRelation const& r);

  //! Does not require n to be mono.
  EquivRelation rel(StructureMap const& n);

  //! Bourn-normal to rel(n).
  NormalityCheck is_bourn_normal(StructureMap const& n);

  //! The canonical morphism nabla(N) -> rel(n) over n.
  RelationMorphism rel_witness_morphism(StructureMap const& n);

  // Every congruence of the codomain to which n is Bourn-normal.
  std::vector<EquivRelation>
  normal_to_witnesses(StructureMap const& n,
                      std::size_t         max_carrier = kDefaultMaxCarrier);

  bool in_N0(StructureMap const& n);

  //! Subobject order: image containment.
  bool subobject_leq(StructureMap const& m, StructureMap const& n);
  bool same_subobject(StructureMap const& m, StructureMap const& n);

  // A morphism in Arr(C) from `from` to `to`: to . top == bottom . from.
  struct ArrowMorphism {
    StructureMap from;
    StructureMap to;
    StructureMap top;
    StructureMap bottom;
  };

  bool operator==(ArrowMorphism const& a, ArrowMorphism const& b);
  bool commutes(ArrowMorphism const& a);

  //! rel on morphisms: rel(from) -> rel(to) over bottom.
  RelationMorphism rel_of(ArrowMorphism const& a);
  //! nor on morphisms: nor(source) -> nor(target) over the base map.
  ArrowMorphism nor_of(RelationMorphism const& m);

  // epsilon_n as the arrow morphism (k, 1_X) : n . k -> n, where k is the
  // final kernel of the domain of n.  Throws if n is not Bourn-normal or if
  // nor(rel(n)) != n . k.
  ArrowMorphism counit_epsilon(StructureMap const& n);

  // epsilon'_S as the relation morphism rel(nor(S)) -> S over 1_X.  Throws
  // if the containment fails.
  RelationMorphism counit_epsilon_prime(EquivRelation const& s);

  // Conjugation closure of the endo arrows of a wide subgroupoid: for every
  // endo alpha: y -> y in N and every f: x -> y in X, f^-1 alpha f lies in N.
  // Independent of the pullback checker.
  bool is_conjugation_closed(Structure const& x, std::vector<Element> const& subset);

}  // namespace normrel

#endif  // NORMREL_NORMALITY_HPP_
