// Line-oriented text format for finite structures.
//
//   context gp|gpds|gpcirc
//   carrier N
//   names e a b ...              (optional, cosmetic)
//   objects K                    (gpds only)
//   object-names a b ...         (gpds only, optional)
//   src i_0 ... i_{N-1}          (gpds only)
//   tgt i_0 ... i_{N-1}          (gpds only)
//   id j_0 ... j_{K-1}           (gpds only)
//   op NAME ARITY
//     binary, gp/gpcirc: N rows of N entries
//     binary, gpds: rows "a b c" for each defined entry, then "end"
//     unary: one row of N entries
//
// '#' starts a comment; blank lines are ignored.

#ifndef NORMREL_IO_HPP_
#define NORMREL_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "normrel/structure.hpp"

namespace normrel {

  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& what);

    std::size_t line() const noexcept { return _line; }
    std::size_t column() const noexcept { return _column; }

   private:
    std::size_t _line;
    std::size_t _column;
  };

  // Parses a document.  Shapes and ranges are checked; the context axioms
  // are not (see validate_structure).
  StructurePtr load_structure(std::string_view text);
  StructurePtr load_structure_file(std::filesystem::path const& path);

  //! Canonical text form; load_structure(save_structure(x)) == x.
  std::string save_structure(Structure const& x);

}  // namespace normrel

#endif  // NORMREL_IO_HPP_
