// Finite structures in the three quasi-pointed Mal'tsev contexts handled by
// normrel: groups (gp), groupoids over a fixed object set (gpds), and groups
// with the empty algebra adjoined (gpcirc).
//
// Carriers are dense indices 0..n-1.  Operation tables are stored row-major;
// the only partial operation is groupoid composition, whose undefined entries
// hold kUndefined.  Composition is written in diagrammatic order:
// comp(a, b) is "a then b" and is defined exactly when tgt(a) == src(b).

#ifndef NORMREL_STRUCTURE_HPP_
#define NORMREL_STRUCTURE_HPP_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace normrel {

  using Element = std::uint32_t;
  inline constexpr Element kUndefined = std::numeric_limits<Element>::max();

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  enum class Context { Gp, GpdS, GpCirc };

  std::string_view to_string(Context ctx);
  Context context_from_string(std::string_view s);

  //! Gp is pointed, the other two are only quasi-pointed.
  constexpr bool is_pointed(Context ctx) { return ctx == Context::Gp; }

  struct Operation {
    std::string          name;
    unsigned             arity = 0;
    std::vector<Element> table;

    Element operator()(Element a) const { return table[a]; }
    Element operator()(Element a, Element b, std::size_t n) const {
      return table[a * n + b];
    }

    friend bool operator==(Operation const&, Operation const&) = default;
  };

  struct GroupoidData {
    std::size_t              objects = 0;
    std::vector<Element>     src;
    std::vector<Element>     tgt;
    std::vector<Element>     identity;  // one arrow per object
    std::vector<std::string> object_names;

    friend bool operator==(GroupoidData const&, GroupoidData const&) = default;
  };

  class Structure;
  using StructurePtr = std::shared_ptr<Structure const>;

  // Immutable after construction.  The constructor checks shapes and ranges
  // only; context axioms are checked by validate_structure.
  class Structure {
   public:
    Structure(Context                     ctx,
              std::size_t                 size,
              std::vector<Operation>      ops,
              std::optional<GroupoidData> groupoid = std::nullopt,
              std::vector<std::string>    names    = {});

    Context     context() const noexcept { return _context; }
    std::size_t size() const noexcept { return _size; }
    bool        empty() const noexcept { return _size == 0; }

    std::vector<Operation> const& ops() const noexcept { return _ops; }
    Operation const*              find_op(std::string_view name) const;

    GroupoidData const* groupoid() const noexcept {
      return _groupoid ? &*_groupoid : nullptr;
    }
    std::size_t objects() const noexcept {
      return _groupoid ? _groupoid->objects : 0;
    }
    Element src(Element a) const { return _groupoid->src[a]; }
    Element tgt(Element a) const { return _groupoid->tgt[a]; }
    Element identity_at(Element obj) const { return _groupoid->identity[obj]; }

    std::vector<std::string> const& names() const noexcept { return _names; }
    std::string                     element_name(Element a) const;
    std::string                     object_name(Element obj) const;

    // Elements lying in the same cell are parallel: same source and target in
    // gpds, anything in gp/gpcirc.  Relations may only relate parallel
    // elements.
    std::size_t cell(Element a) const {
      return _groupoid ? _groupoid->src[a] * _groupoid->objects
                             + _groupoid->tgt[a]
                       : 0;
    }
    bool parallel(Element a, Element b) const { return cell(a) == cell(b); }
    bool is_endo(Element a) const {
      return !_groupoid || _groupoid->src[a] == _groupoid->tgt[a];
    }

    // The unit of a gp/gpcirc structure, found as the unique idempotent of
    // mul; empty if there is none.
    std::optional<Element> unit() const noexcept { return _unit; }

    // Image of the initial object: the unit (gp), the identity arrows (gpds),
    // nothing (gpcirc).  Every subobject contains these elements.
    std::vector<Element> initial_image() const;

    friend bool operator==(Structure const&, Structure const&) = default;

   private:
    Context                     _context;
    std::size_t                 _size;
    std::vector<Operation>      _ops;
    std::optional<GroupoidData> _groupoid;
    std::vector<std::string>    _names;
    std::optional<Element>      _unit;
  };

  //! A carrier function between two structures of the same context.
  struct StructureMap {
    StructurePtr         domain;
    StructurePtr         codomain;
    std::vector<Element> map;

    Element operator()(Element a) const { return map[a]; }
  };

  bool operator==(StructureMap const& f, StructureMap const& g);

  // Checks that f is total, lands in the codomain, preserves every defined
  // operation and, in gpds, is constant on objects.  Returns an explanation
  // on failure.
  std::optional<std::string> structure_map_violation(StructureMap const& f);
  inline bool is_structure_map(StructureMap const& f) {
    return !structure_map_violation(f);
  }

  bool is_mono(StructureMap const& f);

  //! Sorted image of the carrier function.
  std::vector<Element> image(StructureMap const& f);

  StructureMap identity_map(StructurePtr const& x);
  //! g after f.
  StructureMap compose(StructureMap const& g, StructureMap const& f);

  //! True iff the set is closed under all defined operations and contains
  //! the initial image.
  bool is_closed(Structure const& x, std::vector<Element> const& subset);

  //! Smallest closed subset containing the generators.
  std::vector<Element> close_subset(Structure const&             x,
                                    std::vector<Element> const& gens);

  // The inclusion of a closed subset, with the induced substructure as
  // domain (elements renumbered in increasing order).  Throws if the subset
  // is not closed.
  StructureMap subobject(StructurePtr const& x, std::vector<Element> subset);

  //! Every closed subset of x, in increasing (size, lexicographic) order.
  std::vector<std::vector<Element>> enumerate_subobjects(Structure const& x);

  StructurePtr final_object(Structure const& x);
  StructureMap terminal_map(StructurePtr const& x);

  //! Pullback of the initial arrow of the codomain along f.
  StructureMap kernel(StructureMap const& f);
  //! Kernel of the map to the final object of the context.
  StructureMap final_kernel(StructurePtr const& x);

  bool has_null_support(Structure const& x);

  struct Product {
    StructurePtr                          product;
    StructureMap                          p1;
    StructureMap                          p2;
    std::vector<std::pair<Element, Element>> pairs;  // index -> pair
  };

  //! X x X in the ambient fibre: parallel pairs in gpds.
  Product product_in_context(StructurePtr const& x);

  // Validation.
  struct Violation {
    std::string          axiom;
    std::vector<Element> witness;
    std::string          message;
  };

  struct ValidationReport {
    std::vector<Violation> violations;
    bool                   ok() const noexcept { return violations.empty(); }
  };

  ValidationReport validate_structure(Structure const& x);

  //! Table-level isomorphism test by backtracking.
  bool is_isomorphic(Structure const& a, Structure const& b);

  // Builders for common structures.
  namespace make {
    StructurePtr cyclic_group(std::size_t n, Context ctx = Context::Gp);
    StructurePtr empty_algebra();
    // Connected groupoid on `objects` objects with vertex group g; arrow
    // (i, x, j) has index (i * objects + j) * |g| + x.
    StructurePtr connected_groupoid(std::size_t objects, Structure const& g);
    //! Disjoint union of one-object groupoids, one per vertex group.
    StructurePtr disconnected_groupoid(std::vector<StructurePtr> const& groups);
  }  // namespace make

}  // namespace normrel

#endif  // NORMREL_STRUCTURE_HPP_
