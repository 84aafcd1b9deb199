#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "normrel/io.hpp"
#include "normrel/normality.hpp"
#include "normrel/relations.hpp"
#include "normrel/structure.hpp"
#include "normrel/theorems.hpp"

namespace normrel::cli {

  namespace {

    using nlohmann::json;
    namespace fs = std::filesystem;

    struct Options {
      std::vector<std::string> inputs;
      std::string              format      = "text";
      std::size_t              max_carrier = kDefaultMaxCarrier;
      std::optional<std::string> subset;
      std::optional<std::string> rel;
    };

    // Thrown for problems with user input; carries the exit code.
    struct Failure {
      int         code;
      std::string message;
    };

    std::string join_elements(std::vector<Element> const& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(v[i]);
      }
      return out;
    }

    StructurePtr load_valid(std::string const& path) {
      StructurePtr x;
      try {
        x = load_structure_file(path);
      } catch (Error const& e) {
        throw Failure{kLoadError, e.what()};
      }
      auto report = validate_structure(*x);
      if (!report.ok()) {
        auto const& v = report.violations.front();
        throw Failure{kLoadError, path + ": invalid structure: " + v.axiom + ": " + v.message};
      }
      return x;
    }

    std::vector<Element> parse_generators(Structure const& x, std::string const& text) {
      std::vector<Element> gens;
      std::string_view     s = text;
      while (!s.empty()) {
        while (!s.empty() && (s.front() == ',' || s.front() == ' ')) {
          s.remove_prefix(1);
        }
        if (s.empty()) {
          break;
        }
        Element v      = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || v >= x.size()) {
          throw Failure{kUsage, "bad --subset '" + text + "': expected carrier indices < "
                                    + std::to_string(x.size())};
        }
        gens.push_back(v);
        s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
      }
      return gens;
    }

    // Generators are closed to a subobject before use.
    StructureMap subset_mono(StructurePtr const& x, Options const& opts) {
      if (!opts.subset) {
        throw Failure{kUsage, "--subset is required"};
      }
      return subobject(x, close_subset(*x, parse_generators(*x, *opts.subset)));
    }

    EquivRelation relation_arg(StructurePtr const& x, Options const& opts) {
      if (!opts.rel) {
        throw Failure{kUsage, "--rel is required"};
      }
      EquivRelation r;
      try {
        r = parse_relation(x, *opts.rel);
      } catch (Error const& e) {
        throw Failure{kUsage, e.what()};
      }
      if (auto check = is_internal_equivalence(*x, r.pairs()); !check) {
        throw Failure{kLoadError, "--rel is not an internal equivalence relation: "
                                      + check.property + " fails at ("
                                      + join_elements(check.witness) + ")"};
      }
      return r;
    }

    json classes_json(EquivRelation const& r) {
      return r.classes();
    }

    std::string const& single_input(Options const& opts) {
      if (opts.inputs.size() != 1) {
        throw Failure{kUsage, "exactly one input file expected"};
      }
      return opts.inputs.front();
    }

    int cmd_validate(Options const& opts, std::ostream& out) {
      auto const& path = single_input(opts);
      StructurePtr x;
      try {
        x = load_structure_file(path);
      } catch (Error const& e) {
        throw Failure{kLoadError, e.what()};
      }
      auto report = validate_structure(*x);
      if (opts.format == "json") {
        json violations = json::array();
        for (auto const& v : report.violations) {
          violations.push_back(
              {{"axiom", v.axiom}, {"witness", v.witness}, {"message", v.message}});
        }
        out << json{{"file", path},
                    {"context", to_string(x->context())},
                    {"carrier", x->size()},
                    {"ok", report.ok()},
                    {"violations", violations}}
                   .dump(2)
            << '\n';
      } else if (report.ok()) {
        out << path << ": ok (" << to_string(x->context()) << ", carrier " << x->size()
            << ")\n";
      } else {
        for (auto const& v : report.violations) {
          out << path << ": violation " << v.axiom << ": " << v.message << " [witness "
              << join_elements(v.witness) << "]\n";
        }
      }
      return report.ok() ? kOk : kLoadError;
    }

    int cmd_congruences(Options const& opts, std::ostream& out) {
      auto const& path = single_input(opts);
      auto        x    = load_valid(path);
      std::vector<EquivRelation> congs;
      try {
        congs = enumerate_congruences(x, opts.max_carrier);
      } catch (Error const& e) {
        throw Failure{kUsage, e.what()};
      }
      if (opts.format == "json") {
        json list = json::array();
        for (auto const& r : congs) {
          list.push_back(to_literal(r));
        }
        out << json{{"file", path}, {"count", congs.size()}, {"congruences", list}}.dump(2)
            << '\n';
      } else {
        out << congs.size() << " congruences\n";
        for (auto const& r : congs) {
          out << to_literal(r) << '\n';
        }
      }
      return kOk;
    }

    int cmd_nor(Options const& opts, std::ostream& out) {
      auto x = load_valid(single_input(opts));
      auto r = relation_arg(x, opts);
      auto n = nor(r);
      auto s = image(n);
      if (opts.format == "json") {
        out << json{{"rel", to_literal(r)},
                    {"subset", s},
                    {"null_support", has_null_support(*n.domain)}}
                   .dump(2)
            << '\n';
      } else {
        out << "nor(" << to_literal(r) << ") = {" << join_elements(s) << "}\n";
      }
      return kOk;
    }

    int cmd_rel(Options const& opts, std::ostream& out) {
      auto x = load_valid(single_input(opts));
      auto n = subset_mono(x, opts);
      auto r = rel(n);
      if (opts.format == "json") {
        out << json{{"subset", image(n)}, {"rel", to_literal(r)}, {"classes", classes_json(r)}}
                   .dump(2)
            << '\n';
      } else {
        out << "rel({" << join_elements(image(n)) << "}) = " << to_literal(r) << '\n';
        for (auto const& cls : r.classes()) {
          out << "  class of size " << cls.size() << ": {" << join_elements(cls) << "}\n";
        }
      }
      return kOk;
    }

    int cmd_check_normal(Options const& opts, std::ostream& out) {
      auto           x = load_valid(single_input(opts));
      auto           n = subset_mono(x, opts);
      NormalityCheck check;
      std::string    against;
      if (opts.rel) {
        auto r  = relation_arg(x, opts);
        check   = is_bourn_normal_to(n, r);
        against = to_literal(r);
      } else {
        check   = is_bourn_normal(n);
        against = to_literal(rel(n));
      }
      if (opts.format == "json") {
        out << json{{"subset", image(n)},
                    {"rel", against},
                    {"normal", check.normal},
                    {"in_N0", check.normal && has_null_support(*n.domain)},
                    {"square", check.square},
                    {"diagnostic", check.diagnostic},
                    {"witness", check.witness}}
                   .dump(2)
            << '\n';
      } else if (check) {
        out << "{" << join_elements(image(n)) << "} is Bourn-normal to " << against << '\n';
      } else {
        out << "{" << join_elements(image(n)) << "} is not Bourn-normal to " << against
            << ": " << check.diagnostic << '\n';
      }
      return check ? kOk : kCheckFailed;
    }

    int cmd_witnesses(Options const& opts, std::ostream& out) {
      auto x = load_valid(single_input(opts));
      auto n = subset_mono(x, opts);
      std::vector<EquivRelation> ws;
      try {
        ws = normal_to_witnesses(n, opts.max_carrier);
      } catch (Error const& e) {
        throw Failure{kUsage, e.what()};
      }
      if (opts.format == "json") {
        json list = json::array();
        for (auto const& r : ws) {
          list.push_back(to_literal(r));
        }
        out << json{{"subset", image(n)}, {"count", ws.size()}, {"witnesses", list}}.dump(2)
            << '\n';
      } else {
        out << ws.size() << " witnesses for {" << join_elements(image(n)) << "}\n";
        for (auto const& r : ws) {
          out << to_literal(r) << '\n';
        }
      }
      return kOk;
    }

    int cmd_verify(Options const& opts, std::ostream& out) {
      if (opts.inputs.empty()) {
        throw Failure{kUsage, "verify needs at least one file or directory"};
      }
      std::vector<fs::path> files;
      for (auto const& input : opts.inputs) {
        if (fs::is_directory(input)) {
          auto more = corpus_files(input);
          files.insert(files.end(), more.begin(), more.end());
        } else {
          files.emplace_back(input);
        }
      }
      auto reports = run_all(files, opts.max_carrier);
      bool load_failed = false;
      bool failed      = false;
      for (auto const& r : reports) {
        failed = failed || !r.passed();
        load_failed
            = load_failed
              || std::any_of(r.checks.begin(), r.checks.end(),
                             [](auto const& c) { return c.id == "load" && !c.pass; });
      }
      if (opts.format == "json") {
        json list = json::array();
        for (auto const& r : reports) {
          list.push_back(to_json(r));
        }
        out << list.dump(2) << '\n';
      } else {
        for (auto const& r : reports) {
          out << to_text(r);
        }
      }
      return load_failed ? kLoadError : failed ? kCheckFailed : kOk;
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bourn-normal monomorphisms and internal equivalence relations on finite "
                 "structures"};
    app.name("normrel");
    app.require_subcommand(1, 1);

    Options opts;
    auto    add_common = [&](CLI::App* sub, bool many) {
      if (many) {
        sub->add_option("inputs", opts.inputs, "Structure files or corpus directories")
            ->required();
      } else {
        sub->add_option("file", opts.inputs, "Structure file")->required()->expected(1);
      }
      sub->add_option("--format", opts.format, "Output format")
          ->check(CLI::IsMember({"text", "json"}))
          ->capture_default_str();
      sub->add_option("--max-carrier", opts.max_carrier, "Enumeration bound")
          ->capture_default_str();
    };
    auto add_subset = [&](CLI::App* sub) {
      sub->add_option("--subset", opts.subset, "Generators of the subobject, e.g. 0,2");
    };
    auto add_rel = [&](CLI::App* sub) {
      sub->add_option("--rel", opts.rel, "Relation literal, e.g. \"{0,2},{1,3}\"");
    };

    auto* validate = app.add_subcommand("validate", "Check the context axioms");
    add_common(validate, false);
    auto* congruences = app.add_subcommand("congruences", "List every congruence");
    add_common(congruences, false);
    auto* nor_cmd = app.add_subcommand("nor", "Normalization of a relation");
    add_common(nor_cmd, false);
    add_rel(nor_cmd);
    auto* rel_cmd = app.add_subcommand("rel", "Least relation having the subobject as a class");
    add_common(rel_cmd, false);
    add_subset(rel_cmd);
    auto* check = app.add_subcommand("check-normal", "Bourn-normality test");
    add_common(check, false);
    add_subset(check);
    add_rel(check);
    auto* witnesses = app.add_subcommand("witnesses", "Every relation a subobject is normal to");
    add_common(witnesses, false);
    add_subset(witnesses);
    auto* verify = app.add_subcommand("verify", "Run every verification suite");
    add_common(verify, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::CallForHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::CallForAllHelp const& e) {
      return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      return kUsage;
    }

    try {
      if (validate->parsed()) {
        return cmd_validate(opts, out);
      } else if (congruences->parsed()) {
        return cmd_congruences(opts, out);
      } else if (nor_cmd->parsed()) {
        return cmd_nor(opts, out);
      } else if (rel_cmd->parsed()) {
        return cmd_rel(opts, out);
      } else if (check->parsed()) {
        return cmd_check_normal(opts, out);
      } else if (witnesses->parsed()) {
        return cmd_witnesses(opts, out);
      }
      return cmd_verify(opts, out);
    } catch (Failure const& f) {
      err << "normrel: " << f.message << '\n';
      return f.code;
    } catch (Error const& e) {
      err << "normrel: " << e.what() << '\n';
      return kUsage;
    }
  }

}  // namespace normrel::cli
