#include "normrel/theorems.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <sstream>

#include "normrel/io.hpp"
#include "normrel/normality.hpp"

namespace normrel {

  using nlohmann::json;

  bool VerificationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.pass; });
  }

  json to_json(VerificationReport const& r) {
    json checks = json::array();
    for (auto const& c : r.checks) {
      checks.push_back(
          {{"id", c.id}, {"anchor", c.anchor}, {"pass", c.pass}, {"witness", c.witness}});
    }
    return {{"suite", r.suite}, {"instance", r.instance}, {"checks", checks}, {"ms", r.ms}};
  }

  std::string to_text(VerificationReport const& r) {
    std::ostringstream out;
    out << (r.passed() ? "PASS " : "FAIL ") << r.suite << ' ' << r.instance << " ("
        << r.checks.size() << " checks, " << static_cast<long>(r.ms) << " ms)\n";
    // one summary line per claim, in first-seen order
    std::vector<std::string>                                  order;
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    for (auto const& c : r.checks) {
      auto [it, fresh] = tally.try_emplace(c.id, 0, 0);
      if (fresh) {
        order.push_back(c.id);
      }
      (c.pass ? it->second.first : it->second.second)++;
    }
    for (auto const& id : order) {
      auto [ok, bad] = tally[id];
      out << "  " << (bad == 0 ? "ok  " : "FAIL") << ' ' << id << " (" << ok << '/'
          << ok + bad << ")\n";
    }
    for (auto const& c : r.checks) {
      if (!c.pass) {
        out << "    " << c.id << ": " << c.anchor << "\n      witness: " << c.witness.dump()
            << '\n';
      }
    }
    return out.str();
  }

  namespace {

    using Clock = std::chrono::steady_clock;

    std::string subset_literal(std::vector<Element> const& s) {
      std::string out;
      for (std::size_t i = 0; i < s.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(s[i]);
      }
      return out;
    }

    class ReportBuilder {
     public:
      ReportBuilder(std::string suite, SuiteOptions const& opts)
          : _opts(opts), _start(Clock::now()) {
        _report.suite    = std::move(suite);
        _report.instance = opts.instance;
      }

      // `replay` holds the CLI arguments after the file name that reproduce
      // a failure of this check.
      void add(std::string id, std::string anchor, bool pass, json witness,
               std::string const& verb = "verify", std::string const& args = "") {
        if (!pass) {
          std::string cmd = "normrel " + verb + " " + _opts.instance;
          if (!args.empty()) {
            cmd += " " + args;
          }
          if (_opts.max_carrier != kDefaultMaxCarrier) {
            cmd += " --max-carrier " + std::to_string(_opts.max_carrier);
          }
          witness["replay"] = cmd;
        }
        _report.checks.push_back({std::move(id), std::move(anchor), pass, std::move(witness)});
      }

      VerificationReport finish() {
        _report.ms = std::chrono::duration<double, std::milli>(Clock::now() - _start).count();
        return std::move(_report);
      }

     private:
      SuiteOptions const&     _opts;
      Clock::time_point       _start;
      VerificationReport      _report;
    };

    struct Instance {
      StructurePtr               x;
      std::vector<EquivRelation> congruences;
      std::vector<StructureMap>  subobjects;

      Instance(StructurePtr const& s, std::size_t max_carrier)
          : x(s), congruences(enumerate_congruences(s, max_carrier)) {
        for (auto& sub : enumerate_subobjects(*s)) {
          subobjects.push_back(subobject(s, std::move(sub)));
        }
      }
    };

    std::string subset_arg(StructureMap const& n) {
      return "--subset \"" + subset_literal(image(n)) + "\"";
    }
    std::string rel_arg(EquivRelation const& r) {
      return "--rel \"" + to_literal(r) + "\"";
    }

    json item(StructureMap const& n) {
      return {{"subset", subset_literal(image(n))}};
    }
    json item(EquivRelation const& r) {
      return {{"rel", to_literal(r)}};
    }
    json item(StructureMap const& n, EquivRelation const& r) {
      return {{"subset", subset_literal(image(n))}, {"rel", to_literal(r)}};
    }

    bool is_bijection(StructureMap const& f) {
      return f.domain->size() == f.codomain->size() && is_mono(f);
    }

    bool protomodular(Context ctx) {
      return ctx != Context::GpCirc;
    }

    // Left cosets x.N of a subgroup, computed straight from the table.
    EquivRelation coset_partition(StructurePtr const& x, std::vector<Element> const& sub) {
      auto const&          mul = *x->find_op("mul");
      std::size_t const    n   = x->size();
      std::vector<Element> label(n, kUndefined);
      for (Element a = 0; a < n; ++a) {
        Element least = kUndefined;
        for (Element m : sub) {
          least = std::min(least, mul(a, m, n));
        }
        label[a] = least;
      }
      return EquivRelation(x, std::move(label));
    }

  }  // namespace

  VerificationReport suite_normalization(StructurePtr const& x, SuiteOptions const& opts) {
    ReportBuilder b("normalization", opts);
    Instance      inst(x, opts.max_carrier);
    for (auto const& r : inst.congruences) {
      auto n = nor(r);
      b.add("nor-normal-to-R", "nor(R) is Bourn-normal to R",
            bool(is_bourn_normal_to(n, r)), item(n, r), "check-normal",
            subset_arg(n) + " " + rel_arg(r));
      b.add("nor-null-support", "the domain of nor(R) has null support",
            has_null_support(*n.domain), item(n, r), "nor", rel_arg(r));
    }
    for (auto const& n : inst.subobjects) {
      bool const n0 = in_N0(n);
      for (auto const& r : inst.congruences) {
        if (!is_bourn_normal_to(n, r)) {
          continue;
        }
        auto const nr = nor(r);
        auto const nk = compose(n, final_kernel(n.domain));
        b.add("nor-equals-n-k", "if n is Bourn-normal to R then nor(R) = n . ker(N -> 1)",
              same_subobject(nr, nk), item(n, r), "nor", rel_arg(r));
        b.add("nor-leq-n",
              "if n is Bourn-normal to R then nor(R) <= n, with equality iff n is in N0",
              subobject_leq(nr, n) && same_subobject(nr, n) == n0, item(n, r));
        auto const f = quotient(r).projection;
        auto const k = kernel(f);
        b.add("kernel-leq-n",
              "if n is Bourn-normal to the kernel pair of f then ker(f) <= n, "
              "with equality iff n is in N0",
              kernel_pair(f) == r && subobject_leq(k, n) && same_subobject(k, n) == n0,
              item(n, r));
      }
    }
    return b.finish();
  }

  VerificationReport suite_rel(StructurePtr const& x, SuiteOptions const& opts) {
    ReportBuilder b("rel", opts);
    Instance      inst(x, opts.max_carrier);
    for (auto const& n : inst.subobjects) {
      auto const ws = normal_to_witnesses(n, opts.max_carrier);
      bool const bn = bool(is_bourn_normal(n));
      json       w  = item(n);
      w["witnesses"] = ws.size();
      b.add("existential-free-test",
            "n is Bourn-normal to rel(n) iff it is Bourn-normal to some relation",
            bn == !ws.empty(), w, "witnesses", subset_arg(n));
      auto const m = rel_witness_morphism(n);
      b.add("cartesian-discrete-fibration",
            "n is Bourn-normal iff nabla(N) -> rel(n) is a cartesian discrete fibration",
            bn == (is_discrete_fibration(m) && is_fully_faithful(m)), w);
      b.add("fibration-opfibration",
            "for equivalence relations, discrete fibrations are discrete opfibrations",
            is_discrete_fibration(m) == is_discrete_opfibration(m), w);
      if (!bn) {
        continue;
      }
      auto const r = rel(n);
      auto       meet_all = ws.front();
      for (auto const& s : ws) {
        meet_all = meet(meet_all, s);
      }
      b.add("rel-initial", "rel(n) is the meet of all relations n is Bourn-normal to",
            r == meet_all, w, "witnesses", subset_arg(n));
      if (protomodular(x->context())) {
        b.add("witness-unique", "in a protomodular context the witness relation is unique",
              ws.size() == 1, w, "witnesses", subset_arg(n));
      }
      if (x->context() == Context::Gp) {
        auto const cosets = coset_partition(x, image(n));
        b.add("rel-kernel-pair", "rel(N) is the kernel pair of X -> X/N",
              r == kernel_pair(quotient(cosets).projection), w, "rel", subset_arg(n));
      }
      if (n.domain->empty()) {
        b.add("empty-mono-normal-to-all",
              "the empty mono is Bourn-normal to every relation",
              ws.size() == inst.congruences.size(), w, "witnesses", subset_arg(n));
      }
    }
    return b.finish();
  }

  VerificationReport suite_triangles(StructurePtr const& x, SuiteOptions const& opts) {
    ReportBuilder b("triangles", opts);
    Instance      inst(x, opts.max_carrier);
    for (auto const& n : inst.subobjects) {
      if (!is_bourn_normal(n)) {
        continue;
      }
      bool ok = false;
      json w  = item(n);
      try {
        ok = rel_of(counit_epsilon(n)) == counit_epsilon_prime(rel(n));
      } catch (std::exception const& e) {
        w["error"] = e.what();
      }
      b.add("rel-epsilon", "Rel(epsilon_n) = epsilon'_Rel(n)", ok, w);
    }
    for (auto const& s : inst.congruences) {
      bool eq = false;
      bool iso = false;
      json w   = item(s);
      try {
        auto const lhs = nor_of(counit_epsilon_prime(s));
        eq             = lhs == counit_epsilon(nor(s));
        iso            = is_bijection(lhs.top);
      } catch (std::exception const& e) {
        w["error"] = e.what();
      }
      b.add("nor-epsilon-prime", "Nor(epsilon'_S) = epsilon_Nor(S)", eq, w);
      b.add("nor-epsilon-prime-iso", "Nor(epsilon'_S) is an isomorphism", iso, w);
    }
    return b.finish();
  }

  VerificationReport suite_equivalence(StructurePtr const& x, SuiteOptions const& opts) {
    ReportBuilder b("equivalence", opts);
    Instance      inst(x, opts.max_carrier);
    std::size_t   normal = 0;
    std::size_t   n0     = 0;
    std::vector<EquivRelation> rel_n0;
    for (auto const& n : inst.subobjects) {
      if (!is_bourn_normal(n)) {
        continue;
      }
      ++normal;
      bool const member = in_N0(n);
      auto const nrn    = nor(rel(n));
      b.add("coreflection", "nor(rel(n)) <= n, strictly iff n is not in N0",
            subobject_leq(nrn, n) && same_subobject(nrn, n) == member, item(n), "rel",
            subset_arg(n));
      if (!member) {
        continue;
      }
      ++n0;
      b.add("unit-iso", "nor(rel(n)) = n on N0",
            same_subobject(nrn, n) && is_bijection(counit_epsilon(n).top), item(n), "rel",
            subset_arg(n));
      auto r = rel(n);
      if (std::find(rel_n0.begin(), rel_n0.end(), r) == rel_n0.end()) {
        rel_n0.push_back(std::move(r));
      }
    }
    for (auto const& s : rel_n0) {
      b.add("counit-iso", "rel(nor(S)) = S on Rel(N0)", rel(nor(s)) == s, item(s), "nor",
            rel_arg(s));
    }
    for (auto const& r : inst.congruences) {
      b.add("nor-lands-in-N0", "nor(R) lies in N0", in_N0(nor(r)), item(r), "nor", rel_arg(r));
    }
    json counts = {{"bourn_normal", normal},
                   {"N0", n0},
                   {"rel_N0", rel_n0.size()},
                   {"congruences", inst.congruences.size()}};
    bool expected = false;
    switch (x->context()) {
      case Context::Gp:
        expected = n0 == normal && rel_n0.size() == inst.congruences.size();
        break;
      case Context::GpdS:
        expected = rel_n0.size() == inst.congruences.size();
        break;
      case Context::GpCirc:
        expected = n0 == 1 && rel_n0.size() == 1;
        break;
    }
    b.add("image-size", "size of N0 and Rel(N0) as expected for the context", expected,
          counts);
    return b.finish();
  }

  VerificationReport suite_context_specific(StructurePtr const& x, SuiteOptions const& opts) {
    ReportBuilder b("context", opts);
    Instance      inst(x, opts.max_carrier);
    switch (x->context()) {
      case Context::Gp:
        for (auto const& n : inst.subobjects) {
          bool const bn = bool(is_bourn_normal(n));
          b.add("normal-subgroup-agreement",
                "Bourn-normal subgroups are exactly the conjugation-closed ones",
                bn == is_conjugation_closed(*x, image(n)), item(n), "check-normal",
                subset_arg(n));
          if (bn) {
            auto const k = kernel(quotient(rel(n)).projection);
            b.add("bourn-normal-is-kernel", "every Bourn-normal mono is a kernel",
                  same_subobject(k, n), item(n));
          }
        }
        break;
      case Context::GpdS:
        for (auto const& n : inst.subobjects) {
          b.add("conjugation-agreement",
                "pullback test agrees with closure under conjugation of endo arrows",
                bool(is_bourn_normal(n)) == is_conjugation_closed(*x, image(n)), item(n),
                "check-normal", subset_arg(n));
        }
        break;
      case Context::GpCirc:
        if (x->empty()) {
          bool ok = inst.congruences.size() == 1 && inst.subobjects.size() == 1
                    && is_bourn_normal_to(inst.subobjects[0], inst.congruences[0]);
          b.add("empty-algebra",
                "the empty relation on the empty algebra has the empty mono as normal",
                ok, json::object());
          break;
        }
        for (auto const& s : inst.congruences) {
          std::size_t count = 0;
          json        normals = json::array();
          for (auto const& n : inst.subobjects) {
            if (is_bourn_normal_to(n, s)) {
              ++count;
              normals.push_back(subset_literal(image(n)));
            }
          }
          json w       = item(s);
          w["normals"] = normals;
          b.add("two-normal-subobjects",
                "every nonempty relation admits exactly two Bourn-normal subobjects",
                count == 2, w);
        }
        break;
    }
    return b.finish();
  }

  VerificationReport verify_instance(StructurePtr const& x, SuiteOptions const& opts) {
    auto const         start = Clock::now();
    VerificationReport all;
    all.suite    = "all";
    all.instance = opts.instance;
    for (auto suite : {suite_normalization, suite_rel, suite_triangles, suite_equivalence,
                       suite_context_specific}) {
      auto r = suite(x, opts);
      for (auto& c : r.checks) {
        c.id = r.suite + "/" + c.id;
        all.checks.push_back(std::move(c));
      }
    }
    all.ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return all;
  }

  namespace {
    VerificationReport verify_file(std::filesystem::path const& path, std::size_t max_carrier) {
      SuiteOptions opts;
      opts.max_carrier = max_carrier;
      opts.instance    = path.string();
      try {
        auto x          = load_structure_file(path);
        auto validation = validate_structure(*x);
        if (!validation.ok()) {
          auto const& v = validation.violations.front();
          throw Error("invalid structure: " + v.axiom + ": " + v.message);
        }
        return verify_instance(x, opts);
      } catch (std::exception const& e) {
        VerificationReport r;
        r.suite    = "all";
        r.instance = opts.instance;
        r.checks.push_back({"load", "instance loads, validates and fits the bounds", false,
                            {{"error", e.what()},
                             {"replay", "normrel verify " + opts.instance + " --max-carrier "
                                            + std::to_string(max_carrier)}}});
        return r;
      }
    }
  }  // namespace

  std::vector<VerificationReport> run_all(std::vector<std::filesystem::path> const& corpus,
                                          std::size_t max_carrier) {
    std::vector<std::future<VerificationReport>> pending;
    for (auto const& path : corpus) {
      pending.push_back(std::async(std::launch::async, verify_file, path, max_carrier));
    }
    std::vector<VerificationReport> reports;
    for (auto& p : pending) {
      reports.push_back(p.get());
    }
    return reports;
  }

  std::vector<std::filesystem::path> corpus_files(std::filesystem::path const& dir) {
    std::vector<std::filesystem::path> files;
    for (auto const& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".alg") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    return files;
  }

}  // namespace normrel
