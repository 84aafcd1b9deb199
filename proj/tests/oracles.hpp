// Brute-force reference implementations used by the tests.  They work
// straight off the operation tables and share no code with the library's
// closure engines, so agreement between the two is a real check.

#ifndef NORMREL_TESTS_ORACLES_HPP_
#define NORMREL_TESTS_ORACLES_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "normrel/structure.hpp"

namespace oracle {

  using normrel::Element;
  using normrel::Structure;
  using Labels = std::vector<Element>;  // class label per element
  using Subset = std::vector<Element>;  // sorted

  //! Relabel by first occurrence, so equal partitions compare equal.
  Labels canonical(Labels const& labels);

  //! Closed under every defined operation and containing the initial image;
  //! checked entry by entry on the tables.
  bool closed(Structure const& x, Subset const& s);

  //! All 2^n subsets filtered by closed().
  std::vector<Subset> all_subobjects(Structure const& x);

  //! Normal subgroups of a group given by mul/inv tables: closed subsets
  //! stable under g n g^-1.
  std::vector<Subset> normal_subgroups(Structure const& g);

  //! Partition of a group into left cosets aN.
  Labels coset_partition(Structure const& g, Subset const& n);

  //! Every set partition respecting cells whose classes are compatible with
  //! the tables.  Restricted-growth strings; only for small carriers.
  std::vector<Labels> congruences(Structure const& x);

  //! a ~ b iff related in every partition of the list (the list must share a
  //! base).  An empty list gives the all-parallel relation.
  Labels meet(Structure const& x, std::vector<Labels> const& ps);

  // Raw Mal'tsev scan: every subset of the parallel pairs that contains the
  // diagonal and is compatible.  Returns the number of such relations and
  // sets `counterexamples` to the number that are not equivalences.
  std::size_t reflexive_compatible_count(Structure const& x, std::size_t& counterexamples);

  //! Does any structure map into the initial object of the context exist?
  //! Tried function by function.
  bool maps_to_initial(Structure const& x);

  std::filesystem::path corpus_dir();
  //! Loads "gp/z4" and the like from the bundled corpus.
  normrel::StructurePtr corpus_structure(std::string const& name);
  std::vector<std::filesystem::path> corpus(std::string const& sub);

}  // namespace oracle

#endif  // NORMREL_TESTS_ORACLES_HPP_
