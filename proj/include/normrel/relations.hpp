// Internal equivalence relations (congruences) on finite structures.
//
// A relation is stored as a canonical class-id array: class ids are assigned
// in order of least member, so two relations on the same base are equal iff
// their arrays agree.

#ifndef NORMREL_RELATIONS_HPP_
#define NORMREL_RELATIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normrel/structure.hpp"

namespace normrel {

  using Pair  = std::pair<Element, Element>;
  using Pairs = std::vector<Pair>;

  class EquivRelation {
   public:
    EquivRelation() = default;
    // class_of[x] is an arbitrary label; it is canonicalized here.  Throws if
    // the size does not match the base or a class mixes non-parallel elements.
    EquivRelation(StructurePtr base, std::vector<Element> class_of);

    StructurePtr const&         base() const noexcept { return _base; }
    std::size_t                 size() const noexcept { return _class_of.size(); }
    std::size_t                 number_of_classes() const noexcept { return _classes; }
    std::vector<Element> const& class_ids() const noexcept { return _class_of; }

    Element class_of(Element x) const { return _class_of[x]; }
    bool    related(Element a, Element b) const {
      return _class_of[a] == _class_of[b];
    }

    std::vector<std::vector<Element>> classes() const;
    std::vector<Element>              class_containing(Element x) const;
    //! Every related pair (a, b), including the diagonal, sorted.
    Pairs pairs() const;

    //! Pair-set containment: every pair of *this is a pair of other.
    bool is_contained_in(EquivRelation const& other) const;

    friend bool operator==(EquivRelation const& r, EquivRelation const& s) {
      return r._class_of == s._class_of;
    }

   private:
    StructurePtr         _base;
    std::vector<Element> _class_of;
    std::size_t          _classes = 0;
  };

  // Literal form "{0,2},{1,3}" with an optional "rel:" prefix; omitted
  // elements are singletons.  Does not check compatibility.
  EquivRelation parse_relation(StructurePtr const& base, std::string_view text);
  //! Every class, singletons included, in canonical order.
  std::string to_literal(EquivRelation const& r);

  EquivRelation diagonal(StructurePtr const& x);
  //! One class per cell: all of X in gp/gpcirc, one per hom-set in gpds.
  EquivRelation codiscrete(StructurePtr const& x);

  struct RelationCheck {
    bool                 ok = true;
    std::string          property;  // reflexivity, symmetry, ...
    std::vector<Element> witness;
    explicit operator bool() const noexcept { return ok; }
  };

  //! Reflexive, symmetric, transitive, parallel-only and compatible.
  RelationCheck is_internal_equivalence(Structure const& x, Pairs const& pairs);
  //! Compatibility of a partition with every defined operation.
  RelationCheck is_compatible(Structure const& x, EquivRelation const& r);

  // Least congruence containing the seeds: union-find closure interleaved
  // with a worklist over the operation tables.  Throws on non-parallel seeds.
  EquivRelation generated_congruence(StructurePtr const& x, Pairs const& seeds);

  inline constexpr std::size_t kDefaultMaxCarrier = 12;

  enum class EnumerationMode {
    closure,  // joins of principal congruences
    filter    // every cell-respecting set partition, filtered
  };

  // All congruences, sorted by canonical class-id array.  Throws if the
  // carrier exceeds max_carrier (filter mode also refuses carriers above 8).
  std::vector<EquivRelation>
  enumerate_congruences(StructurePtr const& x,
                        std::size_t         max_carrier = kDefaultMaxCarrier,
                        EnumerationMode     mode = EnumerationMode::closure);

  EquivRelation meet(EquivRelation const& r, EquivRelation const& s);
  EquivRelation join(EquivRelation const& r, EquivRelation const& s);

  EquivRelation kernel_pair(StructureMap const& f);

  struct Quotient {
    StructurePtr quotient;
    StructureMap projection;
  };

  //! Throws if r is not compatible.
  Quotient quotient(EquivRelation const& r);

  bool is_effective(EquivRelation const& r);

  // A morphism of relations (R on X) -> (S on Y) over base_map: X -> Y.  The
  // pair map is (a, b) |-> (f a, f b).
  struct RelationMorphism {
    EquivRelation source;
    EquivRelation target;
    StructureMap  base_map;
  };

  bool operator==(RelationMorphism const& m, RelationMorphism const& n);

  //! The pair map lands in the target.
  bool is_relation_morphism(RelationMorphism const& m);
  //! Second-projection square is a pullback.
  bool is_discrete_fibration(RelationMorphism const& m);
  //! First-projection square is a pullback.
  bool is_discrete_opfibration(RelationMorphism const& m);
  //! S(f a, f b) implies R(a, b).
  bool is_fully_faithful(RelationMorphism const& m);

  // Mal'tsev check: every reflexive compatible relation is symmetric and
  // transitive.
  struct MaltsevOptions {
    std::size_t   exhaustive_max = 5;
    std::size_t   samples        = 1000;
    std::uint64_t seed           = 0x5eed;
  };

  struct MaltsevReport {
    bool                 exhaustive = false;
    std::size_t          relations_checked = 0;
    std::optional<Pairs> counterexample;
    bool                 passed() const noexcept { return !counterexample; }
  };

  //! Subalgebra of X x X generated by the diagonal and the seeds.
  Pairs reflexive_compatible_closure(Structure const& x, Pairs const& seeds);
  //! Every reflexive compatible relation, each as a sorted pair list.
  std::vector<Pairs> enumerate_reflexive_relations(Structure const& x);

  MaltsevReport verify_maltsev(Structure const&      x,
                               MaltsevOptions const& opts = {});

}  // namespace normrel

#endif  // NORMREL_RELATIONS_HPP_
