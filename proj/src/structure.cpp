#include "normrel/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace normrel {

  std::string_view to_string(Context ctx) {
    switch (ctx) {
      case Context::Gp:
        return "gp";
      case Context::GpdS:
        return "gpds";
      case Context::GpCirc:
        return "gpcirc";
    }
    return "?";
  }

  Context context_from_string(std::string_view s) {
    if (s == "gp") {
      return Context::Gp;
    } else if (s == "gpds") {
      return Context::GpdS;
    } else if (s == "gpcirc") {
      return Context::GpCirc;
    }
    throw Error("unknown context '" + std::string(s) + "'");
  }

  ////////////////////////////////////////////////////////////////////////
  // Structure
  ////////////////////////////////////////////////////////////////////////

  Structure::Structure(Context                     ctx,
                       std::size_t                 size,
                       std::vector<Operation>      ops,
                       std::optional<GroupoidData> groupoid,
                       std::vector<std::string>    names)
      : _context(ctx),
        _size(size),
        _ops(std::move(ops)),
        _groupoid(std::move(groupoid)),
        _names(std::move(names)) {
    if ((ctx == Context::GpdS) != _groupoid.has_value()) {
      throw Error("groupoid data must be present exactly in context gpds");
    }
    if (!_names.empty() && _names.size() != size) {
      throw Error("expected " + std::to_string(size) + " element names, found "
                  + std::to_string(_names.size()));
    }
    for (auto const& op : _ops) {
      if (op.arity != 1 && op.arity != 2) {
        throw Error("operation " + op.name + " has unsupported arity "
                    + std::to_string(op.arity));
      }
      std::size_t const expected = op.arity == 1 ? size : size * size;
      if (op.table.size() != expected) {
        throw Error("operation " + op.name + " has " + std::to_string(op.table.size())
                    + " entries, expected " + std::to_string(expected));
      }
      for (Element v : op.table) {
        if (v == kUndefined) {
          if (ctx != Context::GpdS || op.arity != 2) {
            throw Error("operation " + op.name + " is partial outside gpds");
          }
        } else if (v >= size) {
          throw Error("operation " + op.name + " has entry " + std::to_string(v)
                      + " outside the carrier");
        }
      }
    }
    if (_groupoid) {
      auto const& g = *_groupoid;
      if (g.src.size() != size || g.tgt.size() != size) {
        throw Error("src/tgt must list one object per arrow");
      }
      if (g.identity.size() != g.objects) {
        throw Error("id must list one arrow per object");
      }
      if (!g.object_names.empty() && g.object_names.size() != g.objects) {
        throw Error("expected " + std::to_string(g.objects) + " object names");
      }
      for (std::size_t a = 0; a < size; ++a) {
        if (g.src[a] >= g.objects || g.tgt[a] >= g.objects) {
          throw Error("arrow " + std::to_string(a) + " has an object out of range");
        }
      }
      for (Element id : g.identity) {
        if (id >= size) {
          throw Error("identity arrow " + std::to_string(id) + " out of range");
        }
      }
    } else if (auto const* mul = find_op("mul"); mul != nullptr && mul->arity == 2) {
      for (Element e = 0; e < size; ++e) {
        if ((*mul)(e, e, size) == e) {
          _unit = e;
          break;
        }
      }
    }
  }

  Operation const* Structure::find_op(std::string_view name) const {
    auto it = std::find_if(
        _ops.begin(), _ops.end(), [&](auto const& op) { return op.name == name; });
    return it == _ops.end() ? nullptr : &*it;
  }

  std::string Structure::element_name(Element a) const {
    return _names.empty() ? std::to_string(a) : _names[a];
  }

  std::string Structure::object_name(Element obj) const {
    if (_groupoid && !_groupoid->object_names.empty()) {
      return _groupoid->object_names[obj];
    }
    return std::to_string(obj);
  }

  std::vector<Element> Structure::initial_image() const {
    switch (_context) {
      case Context::Gp:
        if (_unit) {
          return {*_unit};
        }
        return {};
      case Context::GpdS: {
        std::vector<Element> ids = _groupoid->identity;
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
      }
      case Context::GpCirc:
        return {};
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Maps
  ////////////////////////////////////////////////////////////////////////

  bool operator==(StructureMap const& f, StructureMap const& g) {
    return f.map == g.map && *f.domain == *g.domain && *f.codomain == *g.codomain;
  }

  std::optional<std::string> structure_map_violation(StructureMap const& f) {
    auto const& x = *f.domain;
    auto const& y = *f.codomain;
    if (x.context() != y.context()) {
      return "domain and codomain lie in different contexts";
    }
    if (f.map.size() != x.size()) {
      return "carrier function has the wrong length";
    }
    for (Element v : f.map) {
      if (v >= y.size()) {
        return "carrier function leaves the codomain";
      }
    }
    if (x.context() == Context::GpdS) {
      if (x.objects() != y.objects()) {
        return "object sets differ";
      }
      for (Element a = 0; a < x.size(); ++a) {
        if (y.src(f(a)) != x.src(a) || y.tgt(f(a)) != x.tgt(a)) {
          return "not constant on objects at arrow " + std::to_string(a);
        }
      }
      for (Element s = 0; s < x.objects(); ++s) {
        if (f(x.identity_at(s)) != y.identity_at(s)) {
          return "identity at object " + std::to_string(s) + " not preserved";
        }
      }
    }
    std::size_t const n = x.size();
    std::size_t const m = y.size();
    for (auto const& op : x.ops()) {
      auto const* target = y.find_op(op.name);
      if (target == nullptr || target->arity != op.arity) {
        return "codomain lacks operation " + op.name;
      }
      if (op.arity == 1) {
        for (Element a = 0; a < n; ++a) {
          if (f(op(a)) != (*target)(f(a))) {
            return op.name + " not preserved at " + std::to_string(a);
          }
        }
      } else {
        for (Element a = 0; a < n; ++a) {
          for (Element b = 0; b < n; ++b) {
            Element ab = op(a, b, n);
            if (ab == kUndefined) {
              continue;
            }
            if (f(ab) != (*target)(f(a), f(b), m)) {
              return op.name + " not preserved at (" + std::to_string(a) + ","
                     + std::to_string(b) + ")";
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  bool is_mono(StructureMap const& f) {
    std::vector<bool> hit(f.codomain->size(), false);
    for (Element v : f.map) {
      if (hit[v]) {
        return false;
      }
      hit[v] = true;
    }
    return true;
  }

  std::vector<Element> image(StructureMap const& f) {
    std::vector<Element> result = f.map;
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
  }

  StructureMap identity_map(StructurePtr const& x) {
    std::vector<Element> map(x->size());
    std::iota(map.begin(), map.end(), 0);
    return {x, x, std::move(map)};
  }

  StructureMap compose(StructureMap const& g, StructureMap const& f) {
    if (!(*f.codomain == *g.domain)) {
      throw Error("compose: codomain of f is not the domain of g");
    }
    std::vector<Element> map(f.map.size());
    for (std::size_t a = 0; a < map.size(); ++a) {
      map[a] = g(f(a));
    }
    return {f.domain, g.codomain, std::move(map)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Subobjects
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::vector<bool> membership(std::size_t n, std::vector<Element> const& subset) {
      std::vector<bool> in(n, false);
      for (Element a : subset) {
        if (a >= n) {
          throw Error("element " + std::to_string(a) + " outside the carrier");
        }
        in[a] = true;
      }
      return in;
    }
  }  // namespace

  bool is_closed(Structure const& x, std::vector<Element> const& subset) {
    auto const        in = membership(x.size(), subset);
    std::size_t const n  = x.size();
    for (Element a : x.initial_image()) {
      if (!in[a]) {
        return false;
      }
    }
    for (auto const& op : x.ops()) {
      for (Element a : subset) {
        if (op.arity == 1) {
          if (!in[op(a)]) {
            return false;
          }
          continue;
        }
        for (Element b : subset) {
          Element ab = op(a, b, n);
          if (ab != kUndefined && !in[ab]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  std::vector<Element> close_subset(Structure const& x, std::vector<Element> const& gens) {
    std::size_t const    n  = x.size();
    auto                 in = membership(n, {});
    std::vector<Element> members;
    std::vector<Element> todo;
    auto                 add = [&](Element a) {
      if (a != kUndefined && !in[a]) {
        in[a] = true;
        members.push_back(a);
        todo.push_back(a);
      }
    };
    for (Element a : x.initial_image()) {
      add(a);
    }
    for (Element a : gens) {
      if (a >= n) {
        throw Error("generator " + std::to_string(a) + " outside the carrier");
      }
      add(a);
    }
    while (!todo.empty()) {
      Element a = todo.back();
      todo.pop_back();
      for (auto const& op : x.ops()) {
        if (op.arity == 1) {
          add(op(a));
          continue;
        }
        // members may grow while we scan it
        for (std::size_t i = 0; i < members.size(); ++i) {
          Element b = members[i];
          add(op(a, b, n));
          add(op(b, a, n));
        }
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  }

  StructureMap subobject(StructurePtr const& x, std::vector<Element> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (!is_closed(*x, subset)) {
      throw Error("subset is not closed under the operations");
    }
    std::size_t const    n = x->size();
    std::size_t const    k = subset.size();
    std::vector<Element> index(n, kUndefined);
    for (std::size_t i = 0; i < k; ++i) {
      index[subset[i]] = static_cast<Element>(i);
    }
    auto relabel = [&](Element v) { return v == kUndefined ? kUndefined : index[v]; };

    std::vector<Operation> ops;
    for (auto const& op : x->ops()) {
      Operation sub{op.name, op.arity, {}};
      if (op.arity == 1) {
        for (Element a : subset) {
          sub.table.push_back(relabel(op(a)));
        }
      } else {
        for (Element a : subset) {
          for (Element b : subset) {
            sub.table.push_back(relabel(op(a, b, n)));
          }
        }
      }
      ops.push_back(std::move(sub));
    }
    std::optional<GroupoidData> gd;
    if (auto const* g = x->groupoid()) {
      GroupoidData d;
      d.objects      = g->objects;
      d.object_names = g->object_names;
      for (Element a : subset) {
        d.src.push_back(g->src[a]);
        d.tgt.push_back(g->tgt[a]);
      }
      for (Element id : g->identity) {
        d.identity.push_back(index[id]);
      }
      gd = std::move(d);
    }
    std::vector<std::string> names;
    if (!x->names().empty()) {
      for (Element a : subset) {
        names.push_back(x->names()[a]);
      }
    }
    auto dom = std::make_shared<Structure const>(
        x->context(), k, std::move(ops), std::move(gd), std::move(names));
    return {dom, x, std::move(subset)};
  }

  std::vector<std::vector<Element>> enumerate_subobjects(Structure const& x) {
    std::set<std::vector<Element>>    seen;
    std::vector<std::vector<Element>> queue{close_subset(x, {})};
    seen.insert(queue.front());
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto const current = queue[i];
      auto const in      = membership(x.size(), current);
      for (Element a = 0; a < x.size(); ++a) {
        if (in[a]) {
          continue;
        }
        auto gens = current;
        gens.push_back(a);
        auto next = close_subset(x, gens);
        if (seen.insert(next).second) {
          queue.push_back(std::move(next));
        }
      }
    }
    std::sort(queue.begin(), queue.end(), [](auto const& a, auto const& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return queue;
  }

  ////////////////////////////////////////////////////////////////////////
  // Final object, kernels, null support
  ////////////////////////////////////////////////////////////////////////

  StructurePtr final_object(Structure const& x) {
    if (x.context() != Context::GpdS) {
      return make::cyclic_group(1, x.context());
    }
    // codiscrete groupoid: one arrow i*K+j per ordered pair of objects
    std::size_t const k = x.objects();
    std::size_t const n = k * k;
    GroupoidData      g;
    g.objects      = k;
    g.object_names = x.groupoid()->object_names;
    Operation comp{"comp", 2, std::vector<Element>(n * n, kUndefined)};
    Operation inv{"inv", 1, std::vector<Element>(n)};
    for (Element i = 0; i < k; ++i) {
      g.identity.push_back(static_cast<Element>(i * k + i));
      for (Element j = 0; j < k; ++j) {
        Element a = static_cast<Element>(i * k + j);
        g.src.push_back(i);
        g.tgt.push_back(j);
        inv.table[a] = static_cast<Element>(j * k + i);
        for (Element l = 0; l < k; ++l) {
          comp.table[a * n + j * k + l] = static_cast<Element>(i * k + l);
        }
      }
    }
    return std::make_shared<Structure const>(
        Context::GpdS, n, std::vector<Operation>{comp, inv}, std::move(g));
  }

  StructureMap terminal_map(StructurePtr const& x) {
    auto                 one = final_object(*x);
    std::vector<Element> map(x->size(), 0);
    if (x->context() == Context::GpdS) {
      for (Element a = 0; a < x->size(); ++a) {
        map[a] = static_cast<Element>(x->src(a) * x->objects() + x->tgt(a));
      }
    }
    return {x, std::move(one), std::move(map)};
  }

  StructureMap kernel(StructureMap const& f) {
    auto const           base = f.codomain->initial_image();
    std::vector<Element> preimage;
    for (Element a = 0; a < f.domain->size(); ++a) {
      if (std::binary_search(base.begin(), base.end(), f(a))) {
        preimage.push_back(a);
      }
    }
    return subobject(f.domain, std::move(preimage));
  }

  StructureMap final_kernel(StructurePtr const& x) {
    return kernel(terminal_map(x));
  }

  bool has_null_support(Structure const& x) {
    switch (x.context()) {
      case Context::Gp:
        return true;
      case Context::GpdS:
        for (Element a = 0; a < x.size(); ++a) {
          if (!x.is_endo(a)) {
            return false;
          }
        }
        return true;
      case Context::GpCirc:
        return x.empty();
    }
    return false;
  }

  Product product_in_context(StructurePtr const& x) {
    std::size_t const n = x->size();
    Product           result;
    std::vector<Element> index(n * n, kUndefined);
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        if (x->parallel(a, b)) {
          index[a * n + b] = static_cast<Element>(result.pairs.size());
          result.pairs.emplace_back(a, b);
        }
      }
    }
    std::size_t const m = result.pairs.size();
    auto pair_index     = [&](Element a, Element b) {
      return a == kUndefined || b == kUndefined ? kUndefined : index[a * n + b];
    };
    std::vector<Operation> ops;
    for (auto const& op : x->ops()) {
      Operation prod{op.name, op.arity, {}};
      if (op.arity == 1) {
        for (auto [a, b] : result.pairs) {
          prod.table.push_back(pair_index(op(a), op(b)));
        }
      } else {
        prod.table.reserve(m * m);
        for (auto [a, b] : result.pairs) {
          for (auto [c, d] : result.pairs) {
            prod.table.push_back(pair_index(op(a, c, n), op(b, d, n)));
          }
        }
      }
      ops.push_back(std::move(prod));
    }
    std::optional<GroupoidData> gd;
    if (auto const* g = x->groupoid()) {
      GroupoidData d;
      d.objects      = g->objects;
      d.object_names = g->object_names;
      for (auto [a, b] : result.pairs) {
        d.src.push_back(g->src[a]);
        d.tgt.push_back(g->tgt[a]);
      }
      for (Element id : g->identity) {
        d.identity.push_back(index[id * n + id]);
      }
      gd = std::move(d);
    }
    result.product = std::make_shared<Structure const>(
        x->context(), m, std::move(ops), std::move(gd));
    result.p1 = {result.product, x, {}};
    result.p2 = {result.product, x, {}};
    for (auto [a, b] : result.pairs) {
      result.p1.map.push_back(a);
      result.p2.map.push_back(b);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class Validator {
     public:
      explicit Validator(Structure const& x) : _x(x), _n(x.size()) {}

      ValidationReport run() {
        switch (_x.context()) {
          case Context::Gp:
            if (_n == 0) {
              fail("carrier", {}, "a group has at least one element");
              break;
            }
            if (group_like()) {
              group_axioms();
            }
            break;
          case Context::GpCirc:
            if (group_like()) {
              gpcirc_axioms();
            }
            break;
          case Context::GpdS:
            groupoid_axioms();
            break;
        }
        return std::move(_report);
      }

     private:
      void fail(std::string axiom, std::vector<Element> witness, std::string message) {
        for (auto const& v : _report.violations) {
          if (v.axiom == axiom) {
            return;  // first witness per axiom only
          }
        }
        _report.violations.push_back(
            {std::move(axiom), std::move(witness), std::move(message)});
      }

      std::string name(Element a) const { return _x.element_name(a); }

      bool require_op(char const* op, unsigned arity, Operation const*& out) {
        out = _x.find_op(op);
        if (out == nullptr || out->arity != arity) {
          fail("signature", {},
               std::string("missing operation ") + op + "/" + std::to_string(arity));
          return false;
        }
        return true;
      }

      bool group_like() {
        bool ok = require_op("mul", 2, _mul);
        ok      = require_op("inv", 1, _inv) && ok;
        return ok;
      }

      Element mul(Element a, Element b) const { return (*_mul)(a, b, _n); }
      Element inv(Element a) const { return (*_inv)(a); }

      void associativity() {
        for (Element a = 0; a < _n; ++a) {
          for (Element b = 0; b < _n; ++b) {
            for (Element c = 0; c < _n; ++c) {
              if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                fail("associativity", {a, b, c},
                     "(" + name(a) + "*" + name(b) + ")*" + name(c) + " != " + name(a)
                         + "*(" + name(b) + "*" + name(c) + ")");
                return;
              }
            }
          }
        }
      }

      void group_axioms() {
        associativity();
        std::optional<Element> unit;
        for (Element e = 0; e < _n && !unit; ++e) {
          bool is_unit = true;
          for (Element a = 0; a < _n && is_unit; ++a) {
            is_unit = mul(e, a) == a && mul(a, e) == a;
          }
          if (is_unit) {
            unit = e;
          }
        }
        if (!unit) {
          fail("identity", {}, "no two-sided identity element");
          return;
        }
        for (Element a = 0; a < _n; ++a) {
          if (mul(a, inv(a)) != *unit || mul(inv(a), a) != *unit) {
            fail("inverse", {a}, "inv(" + name(a) + ") is not an inverse");
            return;
          }
        }
      }

      void gpcirc_axioms() {
        associativity();
        for (Element a = 0; a < _n; ++a) {
          if (mul(a, inv(a)) != mul(0, inv(0))) {
            fail("x*x^-1 = y*y^-1", {a, 0},
                 name(a) + "*" + name(a) + "^-1 != " + name(0) + "*" + name(0) + "^-1");
            break;
          }
        }
        for (Element a = 0; a < _n; ++a) {
          if (mul(mul(a, a), inv(a)) != a) {
            fail("x*x*x^-1 = x", {a}, "fails at " + name(a));
            break;
          }
        }
        for (Element a = 0; a < _n; ++a) {
          if (mul(mul(a, inv(a)), a) != a) {
            fail("x*x^-1*x = x", {a}, "fails at " + name(a));
            break;
          }
        }
      }

      void groupoid_axioms() {
        Operation const* comp = nullptr;
        Operation const* inv  = nullptr;
        bool             ok   = require_op("comp", 2, comp);
        ok                    = require_op("inv", 1, inv) && ok;
        if (!ok) {
          return;
        }
        auto c = [&](Element a, Element b) { return (*comp)(a, b, _n); };
        for (Element a = 0; a < _n; ++a) {
          for (Element b = 0; b < _n; ++b) {
            bool composable = _x.tgt(a) == _x.src(b);
            if (composable != (c(a, b) != kUndefined)) {
              fail("composition domain", {a, b},
                   "comp(" + name(a) + "," + name(b) + ") must be defined iff tgt("
                       + name(a) + ") = src(" + name(b) + ")");
              return;
            }
            if (composable
                && (_x.src(c(a, b)) != _x.src(a) || _x.tgt(c(a, b)) != _x.tgt(b))) {
              fail("composition endpoints", {a, b},
                   "comp(" + name(a) + "," + name(b) + ") has wrong source or target");
            }
          }
        }
        for (Element a = 0; a < _n; ++a) {
          for (Element b = 0; b < _n; ++b) {
            if (c(a, b) == kUndefined) {
              continue;
            }
            for (Element d = 0; d < _n; ++d) {
              if (c(b, d) != kUndefined && c(c(a, b), d) != c(a, c(b, d))) {
                fail("associativity", {a, b, d}, "composition is not associative");
              }
            }
          }
        }
        for (Element s = 0; s < _x.objects(); ++s) {
          Element id   = _x.identity_at(s);
          bool    good = _x.src(id) == s && _x.tgt(id) == s;
          for (Element a = 0; a < _n && good; ++a) {
            if (_x.src(a) == s && c(id, a) != a) {
              good = false;
            }
            if (_x.tgt(a) == s && c(a, id) != a) {
              good = false;
            }
          }
          if (!good) {
            fail("identity", {s}, "identity missing at object " + _x.object_name(s));
          }
        }
        for (Element a = 0; a < _n; ++a) {
          Element b = (*inv)(a);
          if (_x.src(b) != _x.tgt(a) || _x.tgt(b) != _x.src(a)
              || c(a, b) != _x.identity_at(_x.src(a))
              || c(b, a) != _x.identity_at(_x.tgt(a))) {
            fail("inverse", {a}, "inv(" + name(a) + ") is not an inverse");
            break;
          }
        }
      }

      Structure const& _x;
      std::size_t      _n;
      Operation const* _mul = nullptr;
      Operation const* _inv = nullptr;
      ValidationReport _report;
    };
  }  // namespace

  ValidationReport validate_structure(Structure const& x) {
    return Validator(x).run();
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphism
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class IsoSearch {
     public:
      IsoSearch(Structure const& a, Structure const& b)
          : _a(a), _b(b), _n(a.size()), _phi(_n, kUndefined), _used(_n, false) {}

      bool run() { return extend(0); }

     private:
      bool consistent(Element upto) const {
        for (auto const& op : _a.ops()) {
          auto const& target = *_b.find_op(op.name);
          for (Element x = 0; x <= upto; ++x) {
            if (op.arity == 1) {
              Element y = op(x);
              if (_phi[y] != kUndefined && _phi[y] != target(_phi[x])) {
                return false;
              }
              continue;
            }
            for (Element z = 0; z <= upto; ++z) {
              Element y  = op(x, z, _n);
              Element ty = target(_phi[x], _phi[z], _n);
              if ((y == kUndefined) != (ty == kUndefined)) {
                return false;
              }
              if (y != kUndefined && _phi[y] != kUndefined && _phi[y] != ty) {
                return false;
              }
            }
          }
        }
        return true;
      }

      bool extend(Element x) {
        if (x == _n) {
          return is_structure_map(
              {std::make_shared<Structure const>(_a), std::make_shared<Structure const>(_b), _phi});
        }
        for (Element y = 0; y < _n; ++y) {
          if (_used[y]) {
            continue;
          }
          if (_a.context() == Context::GpdS
              && (_a.src(x) != _b.src(y) || _a.tgt(x) != _b.tgt(y))) {
            continue;
          }
          _phi[x]  = y;
          _used[y] = true;
          if (consistent(x) && extend(x + 1)) {
            return true;
          }
          _used[y] = false;
          _phi[x]  = kUndefined;
        }
        return false;
      }

      Structure const&     _a;
      Structure const&     _b;
      std::size_t          _n;
      std::vector<Element> _phi;
      std::vector<bool>    _used;
    };
  }  // namespace

  bool is_isomorphic(Structure const& a, Structure const& b) {
    if (a.context() != b.context() || a.size() != b.size()
        || a.objects() != b.objects() || a.ops().size() != b.ops().size()) {
      return false;
    }
    for (auto const& op : a.ops()) {
      auto const* other = b.find_op(op.name);
      if (other == nullptr || other->arity != op.arity) {
        return false;
      }
    }
    return IsoSearch(a, b).run();
  }

  ////////////////////////////////////////////////////////////////////////
  // Builders
  ////////////////////////////////////////////////////////////////////////

  namespace make {

    StructurePtr cyclic_group(std::size_t n, Context ctx) {
      if (ctx == Context::GpdS) {
        throw Error("cyclic_group: use connected_groupoid for gpds");
      }
      Operation mul{"mul", 2, std::vector<Element>(n * n)};
      Operation inv{"inv", 1, std::vector<Element>(n)};
      for (std::size_t a = 0; a < n; ++a) {
        inv.table[a] = static_cast<Element>((n - a) % n);
        for (std::size_t b = 0; b < n; ++b) {
          mul.table[a * n + b] = static_cast<Element>((a + b) % n);
        }
      }
      return std::make_shared<Structure const>(ctx, n, std::vector<Operation>{mul, inv});
    }

    StructurePtr empty_algebra() {
      return cyclic_group(0, Context::GpCirc);
    }

    StructurePtr connected_groupoid(std::size_t objects, Structure const& g) {
      auto const*       mul = g.find_op("mul");
      auto const*       inv = g.find_op("inv");
      std::size_t const m   = g.size();
      if (mul == nullptr || inv == nullptr || !g.unit()) {
        throw Error("connected_groupoid: vertex group must have mul, inv and a unit");
      }
      std::size_t const k     = objects;
      std::size_t const n     = k * k * m;
      auto              arrow = [&](std::size_t i, std::size_t x, std::size_t j) {
        return static_cast<Element>((i * k + j) * m + x);
      };
      GroupoidData d;
      d.objects = k;
      Operation comp{"comp", 2, std::vector<Element>(n * n, kUndefined)};
      Operation inverse{"inv", 1, std::vector<Element>(n)};
      d.src.resize(n);
      d.tgt.resize(n);
      for (std::size_t i = 0; i < k; ++i) {
        d.identity.push_back(arrow(i, *g.unit(), i));
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t x = 0; x < m; ++x) {
            Element a = arrow(i, x, j);
            d.src[a]  = static_cast<Element>(i);
            d.tgt[a]  = static_cast<Element>(j);
            inverse.table[a] = arrow(j, (*inv)(static_cast<Element>(x)), i);
            for (std::size_t l = 0; l < k; ++l) {
              for (std::size_t y = 0; y < m; ++y) {
                Element xy = (*mul)(static_cast<Element>(x), static_cast<Element>(y), m);
                comp.table[a * n + arrow(j, y, l)] = arrow(i, xy, l);
              }
            }
          }
        }
      }
      return std::make_shared<Structure const>(
          Context::GpdS, n, std::vector<Operation>{comp, inverse}, std::move(d));
    }

    StructurePtr disconnected_groupoid(std::vector<StructurePtr> const& groups) {
      std::size_t n = 0;
      for (auto const& g : groups) {
        n += g->size();
      }
      GroupoidData d;
      d.objects = groups.size();
      Operation   comp{"comp", 2, std::vector<Element>(n * n, kUndefined)};
      Operation   inverse{"inv", 1, std::vector<Element>(n)};
      std::size_t offset = 0;
      for (std::size_t s = 0; s < groups.size(); ++s) {
        auto const&       g   = *groups[s];
        std::size_t const m   = g.size();
        auto const&       mul = *g.find_op("mul");
        auto const&       inv = *g.find_op("inv");
        d.identity.push_back(static_cast<Element>(offset + *g.unit()));
        for (Element x = 0; x < m; ++x) {
          d.src.push_back(static_cast<Element>(s));
          d.tgt.push_back(static_cast<Element>(s));
          inverse.table[offset + x] = static_cast<Element>(offset + inv(x));
          for (Element y = 0; y < m; ++y) {
            comp.table[(offset + x) * n + offset + y]
                = static_cast<Element>(offset + mul(x, y, m));
          }
        }
        offset += m;
      }
      return std::make_shared<Structure const>(
          Context::GpdS, n, std::vector<Operation>{comp, inverse}, std::move(d));
    }

  }  // namespace make

}  // namespace normrel
