// Executable checks of the normalization/relation correspondence on finite
// instances.  Every claim is a decidable predicate over finite data and
// reports are deterministic for a given corpus.

#ifndef NORMREL_THEOREMS_HPP_
#define NORMREL_THEOREMS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "normrel/relations.hpp"
#include "normrel/structure.hpp"

namespace normrel {

  struct Check {
    std::string    id;
    std::string    anchor;  // the claim, in words
    bool           pass = true;
    nlohmann::json witness;
  };

  struct VerificationReport {
    std::string        suite;
    std::string        instance;
    std::vector<Check> checks;
    double             ms = 0;

    bool passed() const noexcept;
  };

  nlohmann::json to_json(VerificationReport const& r);
  std::string    to_text(VerificationReport const& r);

  struct SuiteOptions {
    std::size_t max_carrier = kDefaultMaxCarrier;
    // Used in failure witnesses so they can be replayed on the command line.
    std::string instance = "<memory>";
  };

  VerificationReport suite_normalization(StructurePtr const& x, SuiteOptions const& = {});
  VerificationReport suite_rel(StructurePtr const& x, SuiteOptions const& = {});
  VerificationReport suite_triangles(StructurePtr const& x, SuiteOptions const& = {});
  VerificationReport suite_equivalence(StructurePtr const& x, SuiteOptions const& = {});
  VerificationReport suite_context_specific(StructurePtr const& x, SuiteOptions const& = {});

  //! Every suite on one instance, merged into a single report.
  VerificationReport verify_instance(StructurePtr const& x, SuiteOptions const& = {});

  // One report per file, in the given order.  Files that fail to load or
  // validate produce a report with a failed "load" check; the batch always
  // continues.
  std::vector<VerificationReport>
  run_all(std::vector<std::filesystem::path> const& corpus,
          std::size_t max_carrier = kDefaultMaxCarrier);

  //! *.alg files of a directory, sorted by name.
  std::vector<std::filesystem::path> corpus_files(std::filesystem::path const& dir);

}  // namespace normrel

#endif  // NORMREL_THEOREMS_HPP_
