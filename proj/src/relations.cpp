#include "normrel/relations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace normrel {

  namespace {

    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), 0);
      }

      Element find(Element x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      // Union by least root keeps the representative the least member.
      bool unite(Element a, Element b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (b < a) {
          std::swap(a, b);
        }
        _parent[b] = a;
        return true;
      }

      std::vector<Element> labels() {
        std::vector<Element> result(_parent.size());
        for (Element x = 0; x < result.size(); ++x) {
          result[x] = find(x);
        }
        return result;
      }

     private:
      std::vector<Element> _parent;
    };

    // Dense n x n membership matrix for pair sets.
    class PairMatrix {
     public:
      explicit PairMatrix(std::size_t n) : _n(n), _bits(n * n, false) {}

      bool contains(Element a, Element b) const { return _bits[a * _n + b]; }
      bool insert(Element a, Element b) {
        if (_bits[a * _n + b]) {
          return false;
        }
        _bits[a * _n + b] = true;
        return true;
      }

     private:
      std::size_t       _n;
      std::vector<bool> _bits;
    };

    void check_same_base(EquivRelation const& r, EquivRelation const& s) {
      if (r.size() != s.size()
          || (r.base() != s.base() && !(*r.base() == *s.base()))) {
        throw Error("relations live on different structures");
      }
    }

    void check_pair(Structure const& x, Pair const& p) {
      if (p.first >= x.size() || p.second >= x.size()) {
        throw Error("pair (" + std::to_string(p.first) + "," + std::to_string(p.second)
                    + ") outside the carrier");
      }
      if (!x.parallel(p.first, p.second)) {
        throw Error("pair (" + std::to_string(p.first) + "," + std::to_string(p.second)
                    + ") relates non-parallel arrows");
      }
    }

    //! (representative, member) for every non-representative member.
    Pairs spanning_pairs(EquivRelation const& r) {
      Pairs                result;
      std::vector<Element> rep(r.number_of_classes(), kUndefined);
      for (Element x = 0; x < r.size(); ++x) {
        Element c = r.class_of(x);
        if (rep[c] == kUndefined) {
          rep[c] = x;
        } else {
          result.emplace_back(rep[c], x);
        }
      }
      return result;
    }

    bool symmetric_and_transitive(std::size_t n, Pairs const& pairs, Pairs& witness) {
      PairMatrix in(n);
      for (auto [a, b] : pairs) {
        in.insert(a, b);
      }
      for (auto [a, b] : pairs) {
        if (!in.contains(b, a)) {
          witness = {{a, b}};
          return false;
        }
      }
      for (auto [a, b] : pairs) {
        for (Element c = 0; c < n; ++c) {
          if (in.contains(b, c) && !in.contains(a, c)) {
            witness = {{a, b}, {b, c}};
            return false;
          }
        }
      }
      return true;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // EquivRelation
  ////////////////////////////////////////////////////////////////////////

  EquivRelation::EquivRelation(StructurePtr base, std::vector<Element> class_of)
      : _base(std::move(base)), _class_of(std::move(class_of)) {
    if (_base && _class_of.size() != _base->size()) {
      throw Error("relation has " + std::to_string(_class_of.size())
                  + " entries for a carrier of size " + std::to_string(_base->size()));
    }
    std::map<Element, Element> relabel;
    std::vector<Element>       first;  // least member of each class
    for (Element x = 0; x < _class_of.size(); ++x) {
      auto [it, inserted] = relabel.try_emplace(_class_of[x], static_cast<Element>(relabel.size()));
      _class_of[x]        = it->second;
      if (inserted) {
        first.push_back(x);
      } else if (_base && !_base->parallel(first[it->second], x)) {
        throw Error("relation relates non-parallel elements " + std::to_string(first[it->second])
                    + " and " + std::to_string(x));
      }
    }
    _classes = relabel.size();
  }

  std::vector<std::vector<Element>> EquivRelation::classes() const {
    std::vector<std::vector<Element>> result(_classes);
    for (Element x = 0; x < _class_of.size(); ++x) {
      result[_class_of[x]].push_back(x);
    }
    return result;
  }

  std::vector<Element> EquivRelation::class_containing(Element x) const {
    std::vector<Element> result;
    for (Element y = 0; y < _class_of.size(); ++y) {
      if (_class_of[y] == _class_of[x]) {
        result.push_back(y);
      }
    }
    return result;
  }

  Pairs EquivRelation::pairs() const {
    Pairs result;
    for (Element a = 0; a < size(); ++a) {
      for (Element b = 0; b < size(); ++b) {
        if (related(a, b)) {
          result.emplace_back(a, b);
        }
      }
    }
    return result;
  }

  bool EquivRelation::is_contained_in(EquivRelation const& other) const {
    if (other.size() != size()) {
      return false;
    }
    // every class of *this maps into a single class of other
    std::vector<Element> image(_classes, kUndefined);
    for (Element x = 0; x < size(); ++x) {
      Element& slot = image[_class_of[x]];
      if (slot == kUndefined) {
        slot = other.class_of(x);
      } else if (slot != other.class_of(x)) {
        return false;
      }
    }
    return true;
  }

  EquivRelation parse_relation(StructurePtr const& base, std::string_view text) {
    auto fail = [&](std::string const& why) -> void {
      throw Error("bad relation literal '" + std::string(text) + "': " + why);
    };
    std::string_view s = text;
    auto             skip_ws = [&] {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
    };
    skip_ws();
    if (s.starts_with("rel:")) {
      s.remove_prefix(4);
    }
    std::size_t const    n = base->size();
    std::vector<Element> label(n, kUndefined);
    Element              next_label = 0;
    skip_ws();
    while (!s.empty()) {
      if (s.front() != '{') {
        fail("expected '{'");
      }
      s.remove_prefix(1);
      Element const current = next_label++;
      skip_ws();
      while (!s.empty() && s.front() != '}') {
        Element value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc()) {
          fail("expected an element index");
        }
        s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
        if (value >= n) {
          fail("element " + std::to_string(value) + " outside the carrier");
        }
        if (label[value] != kUndefined) {
          fail("element " + std::to_string(value) + " appears twice");
        }
        label[value] = current;
        skip_ws();
        if (!s.empty() && s.front() == ',') {
          s.remove_prefix(1);
          skip_ws();
        }
      }
      if (s.empty()) {
        fail("unterminated class");
      }
      s.remove_prefix(1);
      skip_ws();
      if (!s.empty() && s.front() == ',') {
        s.remove_prefix(1);
        skip_ws();
      }
    }
    for (auto& l : label) {
      if (l == kUndefined) {
        l = next_label++;
      }
    }
    return EquivRelation(base, std::move(label));
  }

  std::string to_literal(EquivRelation const& r) {
    if (r.size() == 0) {
      return "{}";
    }
    std::string out;
    for (auto const& cls : r.classes()) {
      out += out.empty() ? "{" : ",{";
      for (std::size_t i = 0; i < cls.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(cls[i]);
      }
      out += "}";
    }
    return out;
  }

  EquivRelation diagonal(StructurePtr const& x) {
    std::vector<Element> ids(x->size());
    std::iota(ids.begin(), ids.end(), 0);
    return EquivRelation(x, std::move(ids));
  }

  EquivRelation codiscrete(StructurePtr const& x) {
    std::vector<Element> ids(x->size());
    for (Element a = 0; a < x->size(); ++a) {
      ids[a] = static_cast<Element>(x->cell(a));
    }
    return EquivRelation(x, std::move(ids));
  }

  ////////////////////////////////////////////////////////////////////////
  // Checks
  ////////////////////////////////////////////////////////////////////////

  RelationCheck is_internal_equivalence(Structure const& x, Pairs const& pairs) {
    std::size_t const n = x.size();
    PairMatrix        in(n);
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        return {false, "carrier", {a, b}};
      }
      in.insert(a, b);
    }
    for (Element a = 0; a < n; ++a) {
      if (!in.contains(a, a)) {
        return {false, "reflexivity", {a}};
      }
    }
    for (auto [a, b] : pairs) {
      if (!x.parallel(a, b)) {
        return {false, "parallel", {a, b}};
      }
    }
    Pairs witness;
    if (!symmetric_and_transitive(n, pairs, witness)) {
      if (witness.size() == 1) {
        return {false, "symmetry", {witness[0].first, witness[0].second}};
      }
      return {false,
              "transitivity",
              {witness[0].first, witness[0].second, witness[1].second}};
    }
    for (auto const& op : x.ops()) {
      for (auto [a, b] : pairs) {
        if (op.arity == 1) {
          if (!in.contains(op(a), op(b))) {
            return {false, "compatibility:" + op.name, {a, b}};
          }
          continue;
        }
        for (auto [c, d] : pairs) {
          Element ac = op(a, c, n);
          Element bd = op(b, d, n);
          if ((ac == kUndefined) != (bd == kUndefined)
              || (ac != kUndefined && !in.contains(ac, bd))) {
            return {false, "compatibility:" + op.name, {a, b, c, d}};
          }
        }
      }
    }
    return {};
  }

  RelationCheck is_compatible(Structure const& x, EquivRelation const& r) {
    std::size_t const    n = x.size();
    std::vector<Element> rep(r.number_of_classes(), kUndefined);
    for (Element a = 0; a < n; ++a) {
      if (rep[r.class_of(a)] == kUndefined) {
        rep[r.class_of(a)] = a;
      }
    }
    auto repr = [&](Element a) { return rep[r.class_of(a)]; };
    for (Element a = 0; a < n; ++a) {
      if (!x.parallel(a, repr(a))) {
        return {false, "parallel", {repr(a), a}};
      }
    }
    for (auto const& op : x.ops()) {
      for (Element a = 0; a < n; ++a) {
        if (op.arity == 1) {
          if (!r.related(op(a), op(repr(a)))) {
            return {false, "compatibility:" + op.name, {repr(a), a}};
          }
          continue;
        }
        for (Element c = 0; c < n; ++c) {
          Element ac = op(a, c, n);
          Element rr = op(repr(a), repr(c), n);
          if ((ac == kUndefined) != (rr == kUndefined)
              || (ac != kUndefined && !r.related(ac, rr))) {
            return {false, "compatibility:" + op.name, {repr(a), a, repr(c), c}};
          }
        }
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Closure and enumeration
  ////////////////////////////////////////////////////////////////////////

  EquivRelation generated_congruence(StructurePtr const& x, Pairs const& seeds) {
    std::size_t const n = x->size();
    UnionFind         uf(n);
    Pairs             todo;
    for (auto const& p : seeds) {
      check_pair(*x, p);
      if (uf.unite(p.first, p.second)) {
        todo.push_back(p);
      }
    }
    auto merge = [&](Element a, Element b) {
      if (a != kUndefined && b != kUndefined && uf.unite(a, b)) {
        todo.emplace_back(a, b);
      }
    };
    // Every identified pair is pushed once; translating it through each
    // operation argument slot makes the final partition compatible.
    while (!todo.empty()) {
      auto [a, b] = todo.back();
      todo.pop_back();
      for (auto const& op : x->ops()) {
        if (op.arity == 1) {
          merge(op(a), op(b));
          continue;
        }
        for (Element c = 0; c < n; ++c) {
          merge(op(a, c, n), op(b, c, n));
          merge(op(c, a, n), op(c, b, n));
        }
      }
    }
    return EquivRelation(x, uf.labels());
  }

  namespace {

    std::vector<EquivRelation> enumerate_by_closure(StructurePtr const& x) {
      std::size_t const       n = x->size();
      std::set<std::vector<Element>> seen;
      std::vector<EquivRelation>     principal;
      for (Element a = 0; a < n; ++a) {
        for (Element b = a + 1; b < n; ++b) {
          if (!x->parallel(a, b)) {
            continue;
          }
          auto cg = generated_congruence(x, {{a, b}});
          if (seen.insert(cg.class_ids()).second) {
            principal.push_back(std::move(cg));
          }
        }
      }
      seen.clear();
      std::vector<EquivRelation> all{diagonal(x)};
      seen.insert(all.front().class_ids());
      for (std::size_t i = 0; i < all.size(); ++i) {
        for (auto const& p : principal) {
          if (p.is_contained_in(all[i])) {
            continue;
          }
          auto j = join(all[i], p);
          if (seen.insert(j.class_ids()).second) {
            all.push_back(std::move(j));
          }
        }
      }
      return all;
    }

    // Restricted-growth strings, where an element may only join a block of
    // its own cell.
    void enumerate_partitions(Structure const&                   x,
                              std::vector<Element>&              labels,
                              std::vector<std::size_t>&          block_cell,
                              Element                            next,
                              std::vector<std::vector<Element>>& out) {
      if (next == x.size()) {
        out.push_back(labels);
        return;
      }
      for (std::size_t b = 0; b < block_cell.size(); ++b) {
        if (block_cell[b] == x.cell(next)) {
          labels[next] = static_cast<Element>(b);
          enumerate_partitions(x, labels, block_cell, next + 1, out);
        }
      }
      labels[next] = static_cast<Element>(block_cell.size());
      block_cell.push_back(x.cell(next));
      enumerate_partitions(x, labels, block_cell, next + 1, out);
      block_cell.pop_back();
    }

    std::vector<EquivRelation> enumerate_by_filter(StructurePtr const& x) {
      if (x->size() > 8) {
        throw Error("filter enumeration is limited to carriers of size <= 8");
      }
      std::vector<std::vector<Element>> partitions;
      std::vector<Element>              labels(x->size());
      std::vector<std::size_t>          block_cell;
      enumerate_partitions(*x, labels, block_cell, 0, partitions);
      std::vector<EquivRelation> result;
      for (auto& p : partitions) {
        EquivRelation r(x, std::move(p));
        if (is_internal_equivalence(*x, r.pairs())) {
          result.push_back(std::move(r));
        }
      }
      return result;
    }

  }  // namespace

  std::vector<EquivRelation> enumerate_congruences(StructurePtr const& x,
                                                   std::size_t         max_carrier,
                                                   EnumerationMode     mode) {
    if (x->size() > max_carrier) {
      throw Error("carrier of size " + std::to_string(x->size())
                  + " exceeds the enumeration bound " + std::to_string(max_carrier));
    }
    auto result = mode == EnumerationMode::closure ? enumerate_by_closure(x)
                                                   : enumerate_by_filter(x);
    std::sort(result.begin(), result.end(), [](auto const& r, auto const& s) {
      return r.class_ids() < s.class_ids();
    });
    return result;
  }

  EquivRelation meet(EquivRelation const& r, EquivRelation const& s) {
    check_same_base(r, s);
    std::vector<Element> labels(r.size());
    for (Element x = 0; x < r.size(); ++x) {
      labels[x] = static_cast<Element>(r.class_of(x) * s.number_of_classes() + s.class_of(x));
    }
    return EquivRelation(r.base(), std::move(labels));
  }

  EquivRelation join(EquivRelation const& r, EquivRelation const& s) {
    check_same_base(r, s);
    Pairs seeds = spanning_pairs(r);
    Pairs more  = spanning_pairs(s);
    seeds.insert(seeds.end(), more.begin(), more.end());
    return generated_congruence(r.base(), seeds);
  }

  EquivRelation kernel_pair(StructureMap const& f) {
    return EquivRelation(f.domain, f.map);
  }

  Quotient quotient(EquivRelation const& r) {
    auto const& x = r.base();
    if (auto check = is_compatible(*x, r); !check) {
      throw Error("quotient: relation is not a congruence (" + check.property + ")");
    }
    std::size_t const    n = x->size();
    std::size_t const    m = r.number_of_classes();
    std::vector<Element> rep(m, kUndefined);
    for (Element a = 0; a < n; ++a) {
      if (rep[r.class_of(a)] == kUndefined) {
        rep[r.class_of(a)] = a;
      }
    }
    auto cls = [&](Element a) { return a == kUndefined ? kUndefined : r.class_of(a); };
    std::vector<Operation> ops;
    for (auto const& op : x->ops()) {
      Operation q{op.name, op.arity, {}};
      for (Element c = 0; c < m; ++c) {
        if (op.arity == 1) {
          q.table.push_back(cls(op(rep[c])));
        } else {
          for (Element d = 0; d < m; ++d) {
            q.table.push_back(cls(op(rep[c], rep[d], n)));
          }
        }
      }
      ops.push_back(std::move(q));
    }
    std::optional<GroupoidData> gd;
    if (auto const* g = x->groupoid()) {
      GroupoidData d;
      d.objects      = g->objects;
      d.object_names = g->object_names;
      for (Element c = 0; c < m; ++c) {
        d.src.push_back(g->src[rep[c]]);
        d.tgt.push_back(g->tgt[rep[c]]);
      }
      for (Element id : g->identity) {
        d.identity.push_back(r.class_of(id));
      }
      gd = std::move(d);
    }
    auto q = std::make_shared<Structure const>(x->context(), m, std::move(ops), std::move(gd));
    return {q, StructureMap{x, q, r.class_ids()}};
  }

  bool is_effective(EquivRelation const& r) {
    return kernel_pair(quotient(r).projection) == r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Relation morphisms
  ////////////////////////////////////////////////////////////////////////

  bool operator==(RelationMorphism const& m, RelationMorphism const& n) {
    return m.source == n.source && m.target == n.target && m.base_map == n.base_map;
  }

  bool is_relation_morphism(RelationMorphism const& m) {
    auto const& f = m.base_map;
    if (m.source.size() != f.domain->size() || m.target.size() != f.codomain->size()
        || f.map.size() != f.domain->size()) {
      return false;
    }
    // classes of the source map into classes of the target
    std::vector<Element> image(m.source.number_of_classes(), kUndefined);
    for (Element a = 0; a < m.source.size(); ++a) {
      Element& slot = image[m.source.class_of(a)];
      Element  t    = m.target.class_of(f(a));
      if (slot == kUndefined) {
        slot = t;
      } else if (slot != t) {
        return false;
      }
    }
    return true;
  }

  namespace {
    // Lifts of a target pair against a fixed leg: the number of x with
    // R(fixed, x) (or R(x, fixed)) and f x == y must be exactly one.
    bool unique_lifts(RelationMorphism const& m, bool second_leg) {
      if (!is_relation_morphism(m)) {
        return false;
      }
      auto const&       f = m.base_map;
      std::size_t const n = m.source.size();
      std::size_t const k = m.target.size();
      for (Element fixed = 0; fixed < n; ++fixed) {
        for (Element y = 0; y < k; ++y) {
          if (!m.target.related(y, f(fixed))) {
            continue;
          }
          std::size_t lifts = 0;
          for (Element x = 0; x < n; ++x) {
            // second_leg: pairs (x, fixed); otherwise (fixed, x)
            bool in = second_leg ? m.source.related(x, fixed) : m.source.related(fixed, x);
            if (in && f(x) == y) {
              ++lifts;
            }
          }
          if (lifts != 1) {
            return false;
          }
        }
      }
      return true;
    }
  }  // namespace

  bool is_discrete_fibration(RelationMorphism const& m) {
    return unique_lifts(m, true);
  }

  bool is_discrete_opfibration(RelationMorphism const& m) {
    return unique_lifts(m, false);
  }

  bool is_fully_faithful(RelationMorphism const& m) {
    if (!is_relation_morphism(m)) {
      return false;
    }
    auto const& f = m.base_map;
    for (Element a = 0; a < m.source.size(); ++a) {
      for (Element b = 0; b < m.source.size(); ++b) {
        if (m.target.related(f(a), f(b)) && !m.source.related(a, b)) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Mal'tsev
  ////////////////////////////////////////////////////////////////////////

  Pairs reflexive_compatible_closure(Structure const& x, Pairs const& seeds) {
    std::size_t const n = x.size();
    PairMatrix        in(n);
    Pairs             members;
    std::size_t       done = 0;
    auto              add  = [&](Element a, Element b) {
      if (a != kUndefined && b != kUndefined && in.insert(a, b)) {
        members.emplace_back(a, b);
      }
    };
    for (Element a = 0; a < n; ++a) {
      add(a, a);
    }
    for (auto const& p : seeds) {
      check_pair(x, p);
      add(p.first, p.second);
    }
    // members[0, done) have been combined with every earlier member
    while (done < members.size()) {
      auto [a, b] = members[done];
      for (auto const& op : x.ops()) {
        if (op.arity == 1) {
          add(op(a), op(b));
          continue;
        }
        for (std::size_t i = 0; i <= done; ++i) {
          auto [c, d] = members[i];
          add(op(a, c, n), op(b, d, n));
          add(op(c, a, n), op(d, b, n));
        }
      }
      ++done;
    }
    std::sort(members.begin(), members.end());
    return members;
  }

  std::vector<Pairs> enumerate_reflexive_relations(Structure const& x) {
    std::size_t const  n = x.size();
    std::set<Pairs>    seen;
    std::vector<Pairs> queue{reflexive_compatible_closure(x, {})};
    seen.insert(queue.front());
    for (std::size_t i = 0; i < queue.size(); ++i) {
      PairMatrix in(n);
      for (auto [a, b] : queue[i]) {
        in.insert(a, b);
      }
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          if (in.contains(a, b) || !x.parallel(a, b)) {
            continue;
          }
          Pairs seeds = queue[i];
          seeds.emplace_back(a, b);
          auto next = reflexive_compatible_closure(x, seeds);
          if (seen.insert(next).second) {
            queue.push_back(std::move(next));
          }
        }
      }
    }
    return queue;
  }

  MaltsevReport verify_maltsev(Structure const& x, MaltsevOptions const& opts) {
    MaltsevReport     report;
    std::size_t const n = x.size();
    Pairs             witness;
    if (n <= opts.exhaustive_max || n == 0) {
      report.exhaustive = true;
      for (auto const& r : enumerate_reflexive_relations(x)) {
        ++report.relations_checked;
        if (!symmetric_and_transitive(n, r, witness)) {
          report.counterexample = r;
          return report;
        }
      }
      return report;
    }
    std::mt19937_64                            rng(opts.seed);
    std::uniform_int_distribution<std::size_t> how_many(1, 3);
    std::uniform_int_distribution<Element>     pick(0, static_cast<Element>(n - 1));
    for (std::size_t s = 0; s < opts.samples; ++s) {
      Pairs seeds;
      for (std::size_t k = how_many(rng); k > 0; --k) {
        Element a = pick(rng);
        Element b = pick(rng);
        while (!x.parallel(a, b)) {
          b = pick(rng);
        }
        seeds.emplace_back(a, b);
      }
      auto r = reflexive_compatible_closure(x, seeds);
      ++report.relations_checked;
      if (!symmetric_and_transitive(n, r, witness)) {
        report.counterexample = r;
        return report;
      }
    }
    return report;
  }

}  // namespace normrel
