#include "normrel/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace normrel {

  ParseError::ParseError(std::size_t line, std::size_t column, std::string const& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column)
              + ": " + what),
        _line(line),
        _column(column) {}

  namespace {

    struct Token {
      std::string_view text;
      std::size_t      column;  // 1-based
    };

    struct Line {
      std::size_t        number;
      std::vector<Token> tokens;
    };

    std::vector<Line> tokenize(std::string_view text) {
      std::vector<Line> lines;
      std::size_t       number = 0;
      while (!text.empty()) {
        ++number;
        auto             eol  = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text                  = eol == std::string_view::npos ? std::string_view{}
                                                              : text.substr(eol + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
          line = line.substr(0, hash);
        }
        Line        current{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
          while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
          }
          std::size_t start = i;
          while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
          }
          if (i > start) {
            current.tokens.push_back({line.substr(start, i - start), start + 1});
          }
        }
        if (!current.tokens.empty()) {
          lines.push_back(std::move(current));
        }
      }
      return lines;
    }

    class Parser {
     public:
      explicit Parser(std::string_view text) : _lines(tokenize(text)) {}

      StructurePtr parse() {
        auto const& ctx_line = expect_keyword("context", 2);
        Context     ctx;
        try {
          ctx = context_from_string(ctx_line.tokens[1].text);
        } catch (Error const&) {
          fail(ctx_line, 1, "unknown context '" + std::string(ctx_line.tokens[1].text)
                                + "' (expected gp, gpds or gpcirc)");
        }
        auto const& carrier_line = expect_keyword("carrier", 2);
        _n                       = number(carrier_line, 1);

        std::vector<std::string>    names;
        std::optional<GroupoidData> groupoid;
        if (peek("names")) {
          auto const& line = next();
          names            = words(line, _n);
        }
        if (ctx == Context::GpdS) {
          groupoid = parse_groupoid_header();
        }
        std::vector<Operation> ops;
        while (_pos < _lines.size()) {
          ops.push_back(parse_op(ctx));
        }
        try {
          return std::make_shared<Structure const>(
              ctx, _n, std::move(ops), std::move(groupoid), std::move(names));
        } catch (ParseError const&) {
          throw;
        } catch (Error const& e) {
          throw ParseError(_lines.empty() ? 1 : _lines.back().number, 1, e.what());
        }
      }

     private:
      [[noreturn]] void fail(Line const& line, std::size_t token, std::string const& what) {
        std::size_t column
            = token < line.tokens.size() ? line.tokens[token].column : 1;
        throw ParseError(line.number, column, what);
      }

      [[noreturn]] void fail_eof(std::string const& what) {
        std::size_t last = _lines.empty() ? 1 : _lines.back().number;
        throw ParseError(last + 1, 1, "unexpected end of input: " + what);
      }

      bool peek(std::string_view keyword) const {
        return _pos < _lines.size() && _lines[_pos].tokens[0].text == keyword;
      }

      Line const& next() {
        if (_pos >= _lines.size()) {
          fail_eof("more lines expected");
        }
        return _lines[_pos++];
      }

      Line const& expect_keyword(std::string_view keyword, std::size_t tokens) {
        if (_pos >= _lines.size()) {
          fail_eof("expected '" + std::string(keyword) + "'");
        }
        auto const& line = _lines[_pos];
        if (line.tokens[0].text != keyword) {
          fail(line, 0, "expected '" + std::string(keyword) + "', found '"
                            + std::string(line.tokens[0].text) + "'");
        }
        if (tokens != 0 && line.tokens.size() != tokens) {
          fail(line, std::min(tokens, line.tokens.size()),
               "'" + std::string(keyword) + "' takes " + std::to_string(tokens - 1)
                   + " argument(s)");
        }
        ++_pos;
        return line;
      }

      std::size_t number(Line const& line, std::size_t token) {
        auto        text  = line.tokens[token].text;
        std::size_t value = 0;
        auto [ptr, ec]    = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
          fail(line, token, "expected a non-negative integer, found '" + std::string(text) + "'");
        }
        return value;
      }

      Element element(Line const& line, std::size_t token, std::size_t bound) {
        std::size_t v = number(line, token);
        if (v >= bound) {
          fail(line, token, "value " + std::to_string(v) + " out of range (must be < "
                                + std::to_string(bound) + ")");
        }
        return static_cast<Element>(v);
      }

      std::vector<std::string> words(Line const& line, std::size_t count) {
        if (line.tokens.size() != count + 1) {
          fail(line, std::min(line.tokens.size(), count + 1),
               "expected " + std::to_string(count) + " entries, found "
                   + std::to_string(line.tokens.size() - 1));
        }
        std::vector<std::string> result;
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
          result.emplace_back(line.tokens[i].text);
        }
        return result;
      }

      // A row of `count` entries, each < bound, starting at token `first`.
      std::vector<Element>
      row(Line const& line, std::size_t first, std::size_t count, std::size_t bound) {
        if (line.tokens.size() - first != count) {
          fail(line, std::min(line.tokens.size(), first + count),
               "expected " + std::to_string(count) + " entries, found "
                   + std::to_string(line.tokens.size() - first));
        }
        std::vector<Element> result;
        for (std::size_t i = first; i < line.tokens.size(); ++i) {
          result.push_back(element(line, i, bound));
        }
        return result;
      }

      GroupoidData parse_groupoid_header() {
        GroupoidData g;
        auto const&  objects_line = expect_keyword("objects", 2);
        g.objects                 = number(objects_line, 1);
        if (peek("object-names")) {
          g.object_names = words(next(), g.objects);
        }
        g.src      = row(expect_keyword("src", 0), 1, _n, g.objects);
        g.tgt      = row(expect_keyword("tgt", 0), 1, _n, g.objects);
        g.identity = row(expect_keyword("id", 0), 1, g.objects, _n);
        return g;
      }

      Operation parse_op(Context ctx) {
        auto const& header = expect_keyword("op", 3);
        Operation   op;
        op.name  = std::string(header.tokens[1].text);
        op.arity = static_cast<unsigned>(number(header, 2));
        if (op.arity == 1) {
          if (_n > 0) {
            op.table = row(next(), 0, _n, _n);
          }
        } else if (op.arity == 2 && ctx == Context::GpdS) {
          op.table.assign(_n * _n, kUndefined);
          while (true) {
            if (_pos >= _lines.size()) {
              fail_eof("'end' expected after partial table of " + op.name);
            }
            auto const& line = next();
            if (line.tokens[0].text == "end") {
              if (line.tokens.size() != 1) {
                fail(line, 1, "'end' takes no arguments");
              }
              break;
            }
            auto    entry = row(line, 0, 3, _n);
            Element a = entry[0], b = entry[1];
            if (op.table[a * _n + b] != kUndefined) {
              fail(line, 0, "duplicate entry for (" + std::to_string(a) + ","
                                + std::to_string(b) + ")");
            }
            op.table[a * _n + b] = entry[2];
          }
        } else if (op.arity == 2) {
          op.table.reserve(_n * _n);
          for (std::size_t r = 0; r < _n; ++r) {
            if (_pos >= _lines.size()) {
              fail_eof("table of " + op.name + " needs " + std::to_string(_n) + " rows");
            }
            auto const& line = _lines[_pos];
            if (line.tokens[0].text == "op") {
              fail(line, 0, "table of " + op.name + " has " + std::to_string(r)
                                + " rows, expected " + std::to_string(_n));
            }
            auto entries = row(next(), 0, _n, _n);
            op.table.insert(op.table.end(), entries.begin(), entries.end());
          }
        } else {
          fail(header, 2, "arity must be 1 or 2");
        }
        return op;
      }

      std::vector<Line> _lines;
      std::size_t       _pos = 0;
      std::size_t       _n   = 0;
    };

    void write_row(std::ostringstream& out, std::string_view key, std::vector<Element> const& v) {
      out << key;
      for (Element e : v) {
        out << ' ' << e;
      }
      out << '\n';
    }

  }  // namespace

  StructurePtr load_structure(std::string_view text) {
    return Parser(text).parse();
  }

  StructurePtr load_structure_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
      return load_structure(buffer.str());
    } catch (ParseError const& e) {
      throw ParseError(e.line(), e.column(), path.string() + ": " + e.what());
    }
  }

  std::string save_structure(Structure const& x) {
    std::ostringstream out;
    std::size_t const  n = x.size();
    out << "context " << to_string(x.context()) << '\n';
    out << "carrier " << n << '\n';
    if (!x.names().empty()) {
      out << "names";
      for (auto const& name : x.names()) {
        out << ' ' << name;
      }
      out << '\n';
    }
    if (auto const* g = x.groupoid()) {
      out << "objects " << g->objects << '\n';
      if (!g->object_names.empty()) {
        out << "object-names";
        for (auto const& name : g->object_names) {
          out << ' ' << name;
        }
        out << '\n';
      }
      write_row(out, "src", g->src);
      write_row(out, "tgt", g->tgt);
      write_row(out, "id", g->identity);
    }
    for (auto const& op : x.ops()) {
      out << "op " << op.name << ' ' << op.arity << '\n';
      if (op.arity == 1) {
        for (std::size_t a = 0; a < n; ++a) {
          out << (a == 0 ? "" : " ") << op.table[a] << (a + 1 == n ? "\n" : "");
        }
      } else if (x.context() == Context::GpdS) {
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            if (op.table[a * n + b] != kUndefined) {
              out << a << ' ' << b << ' ' << op.table[a * n + b] << '\n';
            }
          }
        }
        out << "end\n";
      } else {
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            out << (b == 0 ? "" : " ") << op.table[a * n + b];
          }
          out << '\n';
        }
      }
    }
    return out.str();
  }

}  // namespace normrel
