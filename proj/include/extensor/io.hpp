#pragma once

// Line-oriented text format shared by every structure kind.
//
//   kind <tag> v=<count> k=<arity> [n=<colors>]
//   [ext = <vertex>]
//   [labeling = <code of color 0>,<code of color 1>,...]
//   [plane = 1]
//   body
//
// SubsetMap kinds list one `(i1,...,ik) = value` line per subset in colex
// order. lin and circ are stored as 2- and 3-orientations (bit 0: the sorted
// tuple is increasing / cyclically positive). Trees use one Newick line with
// `#color` and `@rank` after internal nodes. eqrel lists `{...}` classes.
// Palettes use `kind palette n=<colors>` and one `{a,b,c,d}` line per member.

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "extensor/eqrel.hpp"
#include "extensor/hyperext.hpp"
#include "extensor/orient.hpp"
#include "extensor/palette.hpp"
#include "extensor/tourney.hpp"
#include "extensor/treeset.hpp"

namespace extensor {

using Structure = std::variant<ColoredHypergraph, Orientation, Hypertournament, EquivalenceRelation, LinearOrder,
                               CircularOrder, RootedLeafTree, UnrootedLeafTree, Palette>;

struct Document {
  Structure body;
  std::optional<int> ext;
  std::optional<BitLabeling> labeling;
};

inline const char* kind_tag(const Structure& s) {
  static const char* tags[] = {"chg", "orient", "htour", "eqrel", "lin", "circ", "ctree", "dtree", "palette"};
  return tags[s.index()];
}

namespace detail {

inline std::string join_ints(const std::vector<int>& xs, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

inline std::string tuple_text(const KSubset& s) { return "(" + join_ints(s) + ")"; }

inline LinearOrder order_from_bits(const Orientation& o, int line) {
  // i < j for sorted (i,j) iff bit 0. Position of x = number of y below it.
  const int v = o.v;
  std::vector<int> below(static_cast<std::size_t>(v), 0);
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) ++below[o.bit(std::vector<int>{i, j}) ? i : j];
  LinearOrder l;
  l.order.assign(static_cast<std::size_t>(v), -1);
  for (int x = 0; x < v; ++x) {
    if (l.order[below[x]] != -1) throw ParseError(line, "lin body is not a transitive order");
    l.order[below[x]] = x;
  }
  return l;
}

inline Orientation bits_from_order(const LinearOrder& l) {
  const auto pos = l.positions();
  Orientation o(l.v(), 2);
  for_each_subset(l.v(), 2, [&](const KSubset& s) { o.set_bit(s, pos[s[0]] < pos[s[1]] ? 0 : 1); });
  return o;
}

inline void write_newick(const RootedLeafTree& t, int u, std::string& out) {
  const TreeNode& n = t.nodes[u];
  if (n.leaf >= 0) {
    out += std::to_string(n.leaf);
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ',';
    write_newick(t, n.children[i], out);
  }
  out += ')';
  if (n.color >= 0) out += "#" + std::to_string(n.color);
  if (n.rank >= 0) out += "@" + std::to_string(n.rank);
}

class NewickParser {
 public:
  NewickParser(std::string_view text, int line) : s_(text), line_(line) {}

  RootedLeafTree parse() {
    RootedLeafTree t;
    node(t, -1);
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ';') fail("expected ';' after the tree");
    ++pos_;
    skip_ws();
    if (pos_ != s_.size()) fail("trailing text after ';'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, msg + " (column " + std::to_string(pos_ + 1) + ")");
  }
  void skip_ws() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  int number() {
    skip_ws();
    int value = 0;
    auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
    if (ec != std::errc() || value < 0) fail("expected a non-negative integer");
    pos_ = static_cast<std::size_t>(p - s_.data());
    return value;
  }
  void node(RootedLeafTree& t, int parent) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      const int id = t.add_internal(parent);
      while (true) {
        node(t, id);
        skip_ws();
        if (pos_ >= s_.size()) fail("unterminated '('");
        if (s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '#') {
        ++pos_;
        t.nodes[id].color = number();
      }
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '@') {
        ++pos_;
        t.nodes[id].rank = number();
      }
      return;
    }
    if (parent < 0) fail("a tree must start with '('");
    t.add_leaf(parent, number());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

// Keeps every node; the root becomes an ordinary node of degree >= 3.
inline UnrootedLeafTree unrooted_from_newick(const RootedLeafTree& r) {
  UnrootedLeafTree u;
  u.plane = r.plane;
  for (const auto& n : r.nodes) {
    const int id = u.add_node(n.leaf);
    u.color[id] = n.leaf < 0 ? n.color : -1;
  }
  for (std::size_t x = 0; x < r.nodes.size(); ++x) {
    if (r.nodes[x].parent >= 0) u.adj[x].push_back(r.nodes[x].parent);
    for (int c : r.nodes[x].children) u.adj[x].push_back(c);
  }
  return u;
}

inline std::vector<int> parse_int_list(std::string_view text, int line, const char* what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    int value = 0;
    auto [p, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) throw ParseError(line, std::string("malformed ") + what + ": '" + std::string(text) + "'");
    out.push_back(value);
    pos = static_cast<std::size_t>(p - text.data());
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError(line, std::string("malformed ") + what + ": '" + std::string(text) + "'");
    ++pos;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Reads "(a,b,...) = value" lines into a table keyed by subset.
template <class V, class Convert>
SubsetMap<V> read_subset_body(const std::vector<std::pair<int, std::string>>& body, int v, int k, Convert convert,
                              int end_line) {
  SubsetMap<V> table(v, k);
  std::vector<int> defined(table.size(), 0);
  for (const auto& [line, text] : body) {
    const auto eq = text.find('=');
    if (text.empty() || text[0] != '(' || eq == std::string::npos) throw ParseError(line, "expected '(subset) = value'");
    const std::string_view lhs = trim(std::string_view(text).substr(0, eq));
    if (lhs.size() < 2 || lhs.back() != ')') throw ParseError(line, "subset must be written as (i1,...,ik)");
    std::vector<int> s = parse_int_list(lhs.substr(1, lhs.size() - 2), line, "subset");
    if (static_cast<int>(s.size()) != k)
      throw ParseError(line, "subset " + tuple_text(s) + " has " + std::to_string(s.size()) + " entries, expected " +
                                 std::to_string(k));
    for (int x : s)
      if (x < 0 || x >= v) throw ParseError(line, "vertex " + std::to_string(x) + " out of range 0.." + std::to_string(v - 1));
    if (!has_distinct_entries(s))
      throw ParseError(line, "subset " + tuple_text(s) + " repeats a vertex; subsets must be irreflexive");
    const KSubset sorted = sorted_copy(s);
    if (sorted != s) throw ParseError(line, "subset " + tuple_text(s) + " is not written in increasing order");
    const auto r = rank_subset(sorted, v);
    if (defined[r]) throw ParseError(line, "subset " + tuple_text(sorted) + " is given twice");
    defined[r] = line;
    table.at_rank(r) = convert(trim(std::string_view(text).substr(eq + 1)), line, sorted);
  }
  for (std::size_t r = 0; r < table.size(); ++r)
    if (!defined[r])
      throw ParseError(end_line, "missing entry for subset " + tuple_text(unrank_subset(r, k, v)) + " (the map must be total)");
  return table;
}

inline int parse_one_int(std::string_view text, int line, const char* what) {
  auto xs = parse_int_list(text, line, what);
  if (xs.size() != 1) throw ParseError(line, std::string("expected a single ") + what);
  return xs[0];
}

}  // namespace detail

inline std::string serialize(const Document& doc) {
  std::vector<std::string> lines;
  const Structure& s = doc.body;
  std::string header = std::string("kind ") + kind_tag(s);
  std::vector<std::string> body;
  bool plane = false;

  auto subset_lines = [&](const auto& table, auto fmt) {
    table.for_each([&](const KSubset& x, const auto& val) { body.push_back(detail::tuple_text(x) + " = " + fmt(val)); });
  };
  auto bit_fmt = [](std::uint8_t b) { return std::to_string(b); };

  if (auto* h = std::get_if<ColoredHypergraph>(&s)) {
    header += " v=" + std::to_string(h->v) + " k=" + std::to_string(h->k) + " n=" + std::to_string(h->n);
    subset_lines(h->colors, [](int c) { return std::to_string(c); });
  } else if (auto* o = std::get_if<Orientation>(&s)) {
    header += " v=" + std::to_string(o->v) + " k=" + std::to_string(o->k);
    subset_lines(o->bits, bit_fmt);
  } else if (auto* t = std::get_if<Hypertournament>(&s)) {
    header += " v=" + std::to_string(t->v) + " k=" + std::to_string(t->k);
    subset_lines(t->orderings, [](const Tuple& x) { return detail::join_ints(x); });
  } else if (auto* e = std::get_if<EquivalenceRelation>(&s)) {
    header += " v=" + std::to_string(e->v) + " k=2";
    for (const auto& c : e->classes) body.push_back("{" + detail::join_ints(c) + "}");
  } else if (auto* l = std::get_if<LinearOrder>(&s)) {
    header += " v=" + std::to_string(l->v()) + " k=2";
    subset_lines(detail::bits_from_order(*l).bits, bit_fmt);
  } else if (auto* c = std::get_if<CircularOrder>(&s)) {
    header += " v=" + std::to_string(c->v()) + " k=3";
    subset_lines(c->rel.bits, bit_fmt);
  } else if (auto* r = std::get_if<RootedLeafTree>(&s)) {
    const RootedLeafTree n = r->normalized();
    header += " v=" + std::to_string(n.v()) + " k=3";
    if (n.colored()) header += " n=" + std::to_string(n.color_count());
    plane = n.plane;
    std::string nw;
    detail::write_newick(n, n.root, nw);
    body.push_back(nw + ";");
  } else if (auto* u = std::get_if<UnrootedLeafTree>(&s)) {
    const UnrootedLeafTree n = u->normalized();
    header += " v=" + std::to_string(n.v()) + " k=4";
    if (n.colored()) header += " n=" + std::to_string(n.color_count());
    plane = n.plane;
    const RootedLeafTree r = as_rooted(n, 0);
    std::string nw;
    detail::write_newick(r, r.root, nw);
    body.push_back(nw + ";");
  } else if (auto* p = std::get_if<Palette>(&s)) {
    header += " n=" + std::to_string(p->n);
    Palette q = *p;
    q.normalize();
    for (const auto& m : q.members) body.push_back("{" + detail::join_ints(m) + "}");
  }

  lines.push_back(header);
  if (doc.ext) lines.push_back("ext = " + std::to_string(*doc.ext));
  if (doc.labeling) {
    std::vector<int> codes(doc.labeling->code.begin(), doc.labeling->code.end());
    lines.push_back("labeling = " + detail::join_ints(codes));
  }
  if (plane) lines.push_back("plane = 1");
  for (auto& b : body) lines.push_back(std::move(b));
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

inline std::string serialize(const Structure& s) { return serialize(Document{s, std::nullopt, std::nullopt}); }

inline Document parse(const std::string& text) {
  std::vector<std::pair<int, std::string>> lines;
  {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      const std::string_view t = detail::trim(line);
      if (t.empty() || t[0] == '%') continue;
      lines.emplace_back(no, std::string(t));
    }
  }
  if (lines.empty()) throw ParseError(1, "empty input");

  // Header.
  const auto [hline, htext] = lines[0];
  std::istringstream hs(htext);
  std::string word, tag;
  hs >> word >> tag;
  if (word != "kind" || tag.empty()) throw ParseError(hline, "first line must be 'kind <tag> ...'");
  std::map<std::string, int> fields;
  while (hs >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(hline, "header field '" + word + "' is not key=value");
    const std::string key = word.substr(0, eq);
    if (key != "v" && key != "k" && key != "n") throw ParseError(hline, "unknown header field '" + key + "'");
    if (fields.count(key)) throw ParseError(hline, "header field '" + key + "' is given twice");
    fields[key] = detail::parse_one_int(std::string_view(word).substr(eq + 1), hline, "header value");
  }
  auto field = [&](const char* key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(hline, std::string("header lacks ") + key + "=");
    return it->second;
  };

  // Metadata and body.
  Document doc;
  bool plane = false;
  std::vector<std::pair<int, std::string>> body;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, t] = lines[i];
    const char c0 = t[0];
    if (c0 != '(' && c0 != '{' && std::isalpha(static_cast<unsigned char>(c0))) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ParseError(no, "expected 'key = value'");
      const std::string key(detail::trim(std::string_view(t).substr(0, eq)));
      const std::string_view val = detail::trim(std::string_view(t).substr(eq + 1));
      if (!body.empty()) throw ParseError(no, "metadata must come before the body");
      if (key == "ext") {
        doc.ext = detail::parse_one_int(val, no, "extension point");
      } else if (key == "labeling") {
        BitLabeling l;
        for (int c : detail::parse_int_list(val, no, "labeling")) {
          if (c < 0) throw ParseError(no, "labeling codes must be non-negative");
          l.code.push_back(static_cast<unsigned>(c));
        }
        l.n = static_cast<int>(l.code.size());
        doc.labeling = l;
      } else if (key == "plane") {
        plane = detail::parse_one_int(val, no, "plane flag") != 0;
      } else {
        throw ParseError(no, "unknown metadata key '" + key + "'");
      }
      continue;
    }
    body.push_back(lines[i]);
  }
  const int end_line = lines.back().first + 1;

  auto parse_bit = [](std::string_view val, int line, const KSubset&) -> std::uint8_t {
    const int b = detail::parse_one_int(val, line, "bit");
    if (b != 0 && b != 1) throw ParseError(line, "bit must be 0 or 1");
    return static_cast<std::uint8_t>(b);
  };

  try {
    if (tag == "chg") {
      const int v = field("v"), k = field("k"), n = field("n");
      if (k < 1 || k > v) throw ParseError(hline, "need 1 <= k <= v");
      ColoredHypergraph h(v, k, n);
      h.colors = detail::read_subset_body<int>(
          body, v, k,
          [&](std::string_view val, int line, const KSubset&) {
            const int c = detail::parse_one_int(val, line, "color");
            if (c < 0 || c >= n) throw ParseError(line, "color " + std::to_string(c) + " outside 0.." + std::to_string(n - 1));
            return c;
          },
          end_line);
      doc.body = std::move(h);
    } else if (tag == "orient" || tag == "circ") {
      const int v = field("v"), k = field("k");
      if (tag == "circ" && k != 3) throw ParseError(hline, "circ needs k=3");
      if (k < 2 || k > v) throw ParseError(hline, "need 2 <= k <= v");
      Orientation o(v, k);
      o.bits = detail::read_subset_body<std::uint8_t>(body, v, k, parse_bit, end_line);
      if (tag == "orient") {
        doc.body = std::move(o);
      } else {
        CircularOrder c;
        c.rel = std::move(o);
        if (auto bad = circular_order_violation(c))
          throw ParseError(end_line, "circ body is not a circular order at " + detail::tuple_text(*bad));
        doc.body = std::move(c);
      }
    } else if (tag == "lin") {
      const int v = field("v");
      if (field("k") != 2) throw ParseError(hline, "lin needs k=2");
      Orientation o(v, 2);
      o.bits = detail::read_subset_body<std::uint8_t>(body, v, 2, parse_bit, end_line);
      doc.body = detail::order_from_bits(o, end_line);
    } else if (tag == "htour") {
      const int v = field("v"), k = field("k");
      if (k < 2 || k > v) throw ParseError(hline, "need 2 <= k <= v");
      Hypertournament t(v, k);
      t.orderings = detail::read_subset_body<Tuple>(
          body, v, k,
          [&](std::string_view val, int line, const KSubset& s) {
            Tuple o = detail::parse_int_list(val, line, "ordering");
            if (sorted_copy(o) != s) throw ParseError(line, "ordering does not list the subset " + detail::tuple_text(s));
            return o;
          },
          end_line);
      doc.body = std::move(t);
    } else if (tag == "eqrel") {
      const int v = field("v");
      std::vector<std::vector<Vertex>> blocks;
      for (const auto& [no, t] : body) {
        if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw ParseError(no, "class must be written as {i1,...,im}");
        blocks.push_back(detail::parse_int_list(std::string_view(t).substr(1, t.size() - 2), no, "class"));
      }
      try {
        doc.body = EquivalenceRelation(v, std::move(blocks));
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        throw ParseError(end_line, e.what());
      }
    } else if (tag == "ctree" || tag == "dtree") {
      if (body.size() != 1) throw ParseError(body.empty() ? end_line : body[1].first, "tree body must be one Newick line");
      RootedLeafTree r = detail::NewickParser(body[0].second, body[0].first).parse();
      r.plane = plane;
      try {
        if (tag == "ctree") {
          r.validate();
          if (r.v() != field("v")) throw ParseError(hline, "header v does not match the number of leaves");
          doc.body = std::move(r);
        } else {
          UnrootedLeafTree u = detail::unrooted_from_newick(r);
          u.validate();
          if (u.v() != field("v")) throw ParseError(hline, "header v does not match the number of leaves");
          doc.body = std::move(u);
        }
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        throw ParseError(body[0].first, e.what());
      }
    } else if (tag == "palette") {
      const int n = field("n");
      Palette p;
      p.n = n;
      for (const auto& [no, t] : body) {
        if (t.size() < 2 || t.front() != '{' || t.back() != '}') throw ParseError(no, "member must be written as {a,b,c,d}");
        Multiset m = detail::parse_int_list(std::string_view(t).substr(1, t.size() - 2), no, "member");
        if (m.size() != 4) throw ParseError(no, "palette members have 4 entries");
        for (int c : m)
          if (c < 1 || c > n) throw ParseError(no, "color " + std::to_string(c) + " outside 1.." + std::to_string(n));
        std::sort(m.begin(), m.end());
        p.members.push_back(std::move(m));
      }
      p.normalize();
      doc.body = std::move(p);
    } else {
      throw ParseError(hline, "unknown kind '" + tag + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(hline, e.what());
  }

  if (doc.ext) {
    const int v = std::visit(
        [](const auto& x) -> int {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, LinearOrder> || std::is_same_v<T, CircularOrder> ||
                        std::is_same_v<T, RootedLeafTree> || std::is_same_v<T, UnrootedLeafTree>)
            return x.v();
          else if constexpr (std::is_same_v<T, Palette>)
            return 0;
          else
            return x.v;
        },
        doc.body);
    if (*doc.ext != v - 1) throw ParseError(hline, "ext must name the last vertex " + std::to_string(v - 1));
  }
  if (doc.labeling) {
    const auto* h = std::get_if<ColoredHypergraph>(&doc.body);
    if (!h || h->n != doc.labeling->n) throw ParseError(hline, "labeling needs a chg with the same n");
    try {
      doc.labeling->validate();
    } catch (const InputError& e) {
      throw ParseError(hline, e.what());
    }
  }
  return doc;
}

}  // namespace extensor
