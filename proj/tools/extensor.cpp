// extensor command-line tool. Each subcommand reads structures in the text
// format from io.hpp and either writes a structure or prints a report.
//
// Exit codes: 0 verified/found, 1 refuted/none, 2 bound or budget exceeded,
// 3 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "extensor.hpp"

using namespace extensor;

namespace {

constexpr int kOk = 0, kRefuted = 1, kBound = 2, kInput = 3;

struct Config {
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;  // 0: per-operation default
  int bound = 0;             // 0: per-operation default
  std::string in, out, ext_in, order_in;
  bool machine = false;
};

class Report {
 public:
  explicit Report(bool machine) : machine_(machine) {}
  template <class T>
  void add(const std::string& k, const T& v) {
    std::ostringstream os;
    os << v;
    fields_.emplace_back(k, os.str());
  }
  void flag(const std::string& k, bool v) { fields_.emplace_back(k, v ? "true" : "false"); }
  void print() const {
    for (const auto& [k, v] : fields_) std::cout << k << (machine_ ? "=" : ": ") << v << "\n";
  }

 private:
  bool machine_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string read_text(const std::string& path) {
  if (path.empty()) throw InputError("missing --in");
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Document read_doc(const std::string& path) { return parse(read_text(path)); }

void write_text(const Config& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw InputError("cannot write " + cfg.out);
  f << text;
}

template <class T>
const T& expect(const Document& d, const char* what) {
  if (auto* p = std::get_if<T>(&d.body)) return *p;
  throw InputError(std::string("expected ") + what + ", got kind " + kind_tag(d.body));
}

std::string tuple_str(const Tuple& t) { return detail::tuple_text(t); }

RelationalStructure flatten_any(const Structure& s) {
  return std::visit(
      [](const auto& x) -> RelationalStructure {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Palette>)
          throw InputError("a palette is not a relational structure");
        else
          return flatten(x);
      },
      s);
}

int vertex_count(const Structure& s) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Palette>)
          throw InputError("a palette has no vertices");
        else if constexpr (std::is_same_v<T, LinearOrder> || std::is_same_v<T, CircularOrder> ||
                           std::is_same_v<T, RootedLeafTree> || std::is_same_v<T, UnrootedLeafTree>)
          return x.v();
        else
          return x.v;
      },
      s);
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  int v = 6, k = 2, n = 2, classes = 2, colors = 0, degree = 0;
  bool ranked = false, plane = false;
};

int cmd_gen(const Config& cfg, const GenArgs& g) {
  SplitMix64 rng(cfg.seed);
  Structure s;
  TreeGenOptions topt{g.colors, g.ranked, g.plane, std::nullopt};
  if (g.degree > 0) topt.regular_degree = g.degree;
  if (g.kind == "chg")
    s = random_colored_hypergraph(rng, g.v, g.k, g.n);
  else if (g.kind == "orient")
    s = random_orientation(rng, g.v, g.k);
  else if (g.kind == "htour")
    s = random_hypertournament(rng, g.v, g.k);
  else if (g.kind == "lin")
    s = random_linear_order(rng, g.v);
  else if (g.kind == "eqrel")
    s = random_equivalence(rng, g.v, g.classes);
  else if (g.kind == "ctree")
    s = random_rooted_tree(rng, g.v, topt);
  else if (g.kind == "dtree")
    s = random_unrooted_tree(rng, g.v, topt);
  else
    throw InputError("gen: unknown kind " + g.kind + " (chg, orient, htour, lin, eqrel, ctree, dtree)");
  write_text(cfg, serialize(s));
  return kOk;
}

// ---- extend ----------------------------------------------------------------

int cmd_extend(const Config& cfg) {
  const Document d = read_doc(cfg.in);
  Document out;
  if (auto* h = std::get_if<ColoredHypergraph>(&d.body)) {
    if (h->n == 2) {
      out.body = extend_plain(*h);
    } else {
      const BitLabeling l = d.labeling ? *d.labeling : BitLabeling::binary(h->n);
      out.body = extend_colored(*h, l);
      out.labeling = l;
    }
    out.ext = h->v;
  } else if (auto* o = std::get_if<Orientation>(&d.body)) {
    out.body = extend_orientation(*o);
    out.ext = o->v;
  } else if (auto* t = std::get_if<RootedLeafTree>(&d.body)) {
    out.body = t->colored() ? colored_extension(*t) : extend_c_to_d(*t);
    out.ext = t->v();
  } else if (auto* l = std::get_if<LinearOrder>(&d.body)) {
    out.body = circular_from_linear(*l);
    out.ext = l->v();
  } else {
    throw InputError(std::string("extend: no extension defined for kind ") + kind_tag(d.body));
  }
  write_text(cfg, serialize(out));
  return kOk;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify_even(const Config& cfg) {
  const Document d = read_doc(cfg.in);
  Report r(cfg.machine);
  std::optional<KSubset> witness;
  if (auto* h = std::get_if<ColoredHypergraph>(&d.body)) {
    if (h->n == 2) {
      witness = is_even_hypergraph(*h).witness;
    } else {
      // Colored: every bit channel must be even.
      const BitLabeling l = d.labeling ? *d.labeling : BitLabeling::binary(h->n);
      const auto channels = bit_decompose(*h, l);
      for (std::size_t i = 0; i < channels.size() && !witness; ++i) {
        witness = is_even_hypergraph(channels[i]).witness;
        if (witness) r.add("channel", i);
      }
    }
  } else if (auto* o = std::get_if<Orientation>(&d.body)) {
    witness = is_even_orientation(*o).witness;
  } else {
    throw InputError(std::string("verify even: expected chg or orient, got ") + kind_tag(d.body));
  }
  r.flag("even", !witness);
  if (witness) r.add("witness", subset_to_string(*witness));
  r.print();
  return witness ? kRefuted : kOk;
}

int cmd_verify_axioms(const Config& cfg) {
  const Document d = read_doc(cfg.in);
  Report r(cfg.machine);
  bool ok = true;
  auto axiom_report = [&](const AxiomReport& a) {
    ok = a.ok();
    if (a.violation) {
      r.add("axiom", a.violation->axiom);
      r.add("witness", tuple_str(a.violation->witness));
    }
    for (const auto& s : a.not_evaluated) r.add("not_evaluated", s);
  };
  if (auto* t = std::get_if<RootedLeafTree>(&d.body)) {
    axiom_report(check_c_axioms(c_relation(*t)));
  } else if (auto* u = std::get_if<UnrootedLeafTree>(&d.body)) {
    axiom_report(check_d_axioms(d_relation(*u)));
  } else if (auto* c = std::get_if<CircularOrder>(&d.body)) {
    if (auto w = circular_order_violation(*c)) {
      ok = false;
      r.add("witness", tuple_str(*w));
    }
  } else if (auto* p = std::get_if<Palette>(&d.body)) {
    if (auto w = is_palette(*p)) {
      ok = false;
      r.add("violation", w->describe());
    }
  } else {
    throw InputError(std::string("verify axioms: expected ctree, dtree, circ or palette, got ") + kind_tag(d.body));
  }
  r.flag("ok", ok);
  r.print();
  return ok ? kOk : kRefuted;
}

int cmd_verify_extension(const Config& cfg) {
  const Document base = read_doc(cfg.in);
  if (cfg.ext_in.empty()) throw InputError("verify extension: missing --ext");
  const Document ext = read_doc(cfg.ext_in);
  const int v = vertex_count(base.body);
  if (ext.ext && *ext.ext != v) throw InputError("verify extension: ext must be the last vertex");
  VerifyOptions opt;
  if (cfg.bound > 0) opt.bound = cfg.bound;
  const ExtensionReport rep = verify_one_point_extension(flatten_any(base.body), flatten_any(ext.body), v, opt);
  Report r(cfg.machine);
  r.flag("is_one_point_extension", rep.is_one_point_extension);
  r.flag("is_transitive", rep.is_transitive);
  r.add("aut_order", rep.aut_M_order);
  r.add("aut_ext_order", rep.aut_ext_order);
  r.add("stabilizer_order", rep.stabilizer_order);
  if (rep.witness) {
    r.add("witness", rep.witness->to_string());
    r.add("witness_in", rep.witness_in_aut_M ? "aut" : "stabilizer");
  }
  r.print();
  return rep.is_one_point_extension && rep.is_transitive ? kOk : kRefuted;
}

int cmd_verify_transitive(const Config& cfg) {
  const Document d = read_doc(cfg.in);
  AutOptions opt;
  if (cfg.bound > 0) opt.bound = cfg.bound;
  const PermutationGroup g = automorphism_group(flatten_any(d.body), opt);
  Report r(cfg.machine);
  const bool t = is_transitive(g);
  r.add("aut_order", g.order());
  r.flag("transitive", t);
  r.print();
  return t ? kOk : kRefuted;
}

// ---- palette ---------------------------------------------------------------

int report_outcome(const Config& cfg, const SearchOutcome& o) {
  Report r(cfg.machine);
  r.add("outcome", outcome_name(o));
  r.add("nodes", outcome_nodes(o));
  r.print();
  if (auto* f = std::get_if<Found>(&o)) {
    std::cout << serialize(f->palette);
    return kOk;
  }
  return std::holds_alternative<ProvenNone>(o) ? kRefuted : kBound;
}

int cmd_palette(const Config& cfg, const std::string& action, int n) {
  if (action == "canonical") {
    write_text(cfg, serialize(canonical_palette(n)));
    return kOk;
  }
  if (action == "search") {
    if (n < 1) throw InputError("palette search: need -n >= 1");
    return report_outcome(cfg, search_palette(n, cfg.budget ? cfg.budget : default_palette_budget(n)));
  }
  const Palette p = cfg.in.empty() ? canonical_palette(n) : expect<Palette>(read_doc(cfg.in), "palette");
  if (action == "check") {
    Report r(cfg.machine);
    const auto w = is_palette(p);
    r.flag("ok", !w);
    if (w) r.add("violation", w->describe());
    r.print();
    return w ? kRefuted : kOk;
  }
  if (action == "reduce") {
    write_text(cfg, serialize(reduce_palette(p)));
    return kOk;
  }
  throw InputError("palette: unknown action " + action);
}

// ---- obstruct --------------------------------------------------------------

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '+')) {
    try {
      out.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw InputError("bad class sizes '" + text + "' (expected e.g. 2+2+2)");
    }
  }
  return out;
}

int cmd_obstruct(const Config& cfg, const std::string& what, int k, const std::string& classes) {
  Report r(cfg.machine);
  if (what == "orient") {
    const ObstructionCertificate c = odd_obstruction(k);
    r.add("k", c.k);
    r.add("sigma", c.sigma.to_string());
    r.flag("sigma_is_automorphism", c.sigma_is_automorphism);
    r.add("extended_cycle_length", c.extended_cycle_length);
    r.add("extended_parity", c.extended_parity ? "odd" : "even");
    r.flag("preserves_no_orientation", c.preserves_no_orientation);
    r.print();
    std::cout << serialize(c.g0);
    return kOk;
  }
  if (what == "eqrel") {
    const EquivalenceRelation e = EquivalenceRelation::with_class_sizes(parse_sizes(classes));
    RefuteOptions opt;
    if (cfg.bound > 0) opt.bound = cfg.bound;
    const RefutationCertificate c = refute_extension(e, opt);
    r.add("classes", classes);
    r.add("candidates", c.candidates_examined);
    r.add("passing", c.passing);
    for (int i = 0; i < 5; ++i) {
      const auto reason = static_cast<RefutationReason>(i);
      r.add(std::string("reason.") + reason_name(reason), c.histogram[i]);
      if (auto it = c.first_witness.find(reason); it != c.first_witness.end() && !it->second.empty())
        r.add(std::string("witness.") + reason_name(reason), it->second);
    }
    r.flag("claim2_survivors_forced", c.claim2_survivors_all_forced);
    for (const auto& s : c.survivor_difference_shapes) r.add("survivor_difference_shape", s);
    r.print();
    return c.passing == 0 ? kOk : kRefuted;
  }
  if (what == "leveled") {
    const LeveledDemoReport d = leveled_obstruction_demo();
    r.flag("assertion_i", d.assertion_i());
    r.flag("assertion_ii", d.assertion_ii());
    r.flag("assertion_iii", d.assertion_iii());
    std::string counts;
    for (std::size_t i = 0; i < d.monotonic.sequences_by_length.size(); ++i)
      counts += (i ? " " : "") + std::to_string(d.monotonic.sequences_by_length[i]);
    r.add("monotonic_sequences_by_length", counts);
    r.print();
    std::cout << serialize(d.tree);
    return d.passed() ? kOk : kRefuted;
  }
  throw InputError("obstruct: unknown target " + what);
}

// ---- orbits ----------------------------------------------------------------

int cmd_orbits(const Config& cfg, int m, bool subsets) {
  const Document d = read_doc(cfg.in);
  AutOptions opt;
  if (cfg.bound > 0) opt.bound = cfg.bound;
  const PermutationGroup g = automorphism_group(flatten_any(d.body), opt);
  const auto orb = orbits(g, m, subsets ? OrbitMode::kSubsets : OrbitMode::kTuples);
  Report r(cfg.machine);
  r.add("aut_order", g.order());
  r.add("orbits", orb.size());
  for (std::size_t i = 0; i < orb.size(); ++i) {
    std::string members;
    for (std::size_t j = 0; j < orb[i].size(); ++j) members += (j ? " " : "") + tuple_str(orb[i][j]);
    r.add("orbit." + std::to_string(i), members);
  }
  r.print();
  return kOk;
}

// ---- interpret -------------------------------------------------------------

int cmd_interpret(const Config& cfg, const std::string& what) {
  const Document d = read_doc(cfg.in);
  Document out;
  if (what == "htour2chg") {
    const Hypertournament& t = expect<Hypertournament>(d, "htour");
    const LinearOrder l = cfg.order_in.empty() ? LinearOrder::identity(t.v)
                                               : expect<LinearOrder>(read_doc(cfg.order_in), "lin");
    out.body = interpret_colored_graph(t, l);
  } else if (what == "c2d") {
    const RootedLeafTree& t = expect<RootedLeafTree>(d, "ctree");
    out.body = extend_c_to_d(t);
    out.ext = t.v();
  } else if (what == "lin2circ") {
    const LinearOrder& l = expect<LinearOrder>(d, "lin");
    out.body = circular_from_linear(l);
    out.ext = l.v();
  } else {
    throw InputError("interpret: unknown conversion " + what);
  }
  write_text(cfg, serialize(out));
  return kOk;
}

// ---- selftest --------------------------------------------------------------

int cmd_selftest(const Config& cfg) {
  std::vector<int> failed;
  run_acceptance(cfg.seed, [&](const CriterionResult& r) {
    std::cout << format_result(r, cfg.machine) << std::flush;
    if (!r.passed) failed.push_back(r.id);
  });
  std::vector<int> unexpected;
  for (int id : failed)
    if (!known_failures().count(id)) unexpected.push_back(id);
  std::string fl, un;
  for (int id : failed) fl += (fl.empty() ? "" : ",") + std::to_string(id);
  for (int id : unexpected) un += (un.empty() ? "" : ",") + std::to_string(id);
  Report r(cfg.machine);
  r.add("seed", cfg.seed);
  r.add("failed", fl.empty() ? "none" : fl);
  r.add("unexpected_failures", un.empty() ? "none" : un);
  r.print();
  return failed.empty() ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parity extensions of finite relational structures"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", cfg.seed, "RNG seed");
    c->add_option("--budget", cfg.budget, "search node budget");
    c->add_option("--bound", cfg.bound, "vertex bound for automorphism searches");
    c->add_option("--in", cfg.in, "input file (- for stdin)");
    c->add_option("--out", cfg.out, "output file (default stdout)");
    c->add_flag("--machine", cfg.machine, "key=value report lines");
  };

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "random structure");
  common(gen);
  gen->add_option("kind", g.kind, "chg, orient, htour, lin, eqrel, ctree, dtree")->required();
  gen->add_option("-v", g.v, "vertices or leaves");
  gen->add_option("-k", g.k, "arity");
  gen->add_option("-n", g.n, "colors (chg)");
  gen->add_option("--classes", g.classes, "block count (eqrel)");
  gen->add_option("--colors", g.colors, "node colors (trees)");
  gen->add_option("--degree", g.degree, "regular branching degree (trees)");
  gen->add_flag("--ranked", g.ranked, "ranked internal nodes (ctree)");
  gen->add_flag("--plane", g.plane, "ordered children (trees)");

  auto* extend = app.add_subcommand("extend", "one-point extension");
  common(extend);

  std::string verify_what;
  auto* verify = app.add_subcommand("verify", "check a property");
  common(verify);
  verify->add_option("what", verify_what, "even, axioms, extension, transitive")
      ->required()
      ->check(CLI::IsMember({"even", "axioms", "extension", "transitive"}));
  verify->add_option("--ext", cfg.ext_in, "extension file (verify extension)");

  std::string palette_what;
  int palette_n = 2;
  auto* pal = app.add_subcommand("palette", "palettes");
  common(pal);
  pal->add_option("action", palette_what, "check, canonical, search, reduce")
      ->required()
      ->check(CLI::IsMember({"check", "canonical", "search", "reduce"}));
  pal->add_option("-n", palette_n, "colors");

  std::string obstruct_what, classes = "2+2";
  int obstruct_k = 3;
  auto* obs = app.add_subcommand("obstruct", "obstruction certificates");
  common(obs);
  obs->add_option("what", obstruct_what, "orient, eqrel, leveled")
      ->required()
      ->check(CLI::IsMember({"orient", "eqrel", "leveled"}));
  obs->add_option("-k", obstruct_k, "odd arity (orient)");
  obs->add_option("--classes", classes, "class sizes, e.g. 2+2+2 (eqrel)");

  int orbit_m = 1;
  bool orbit_subsets = false;
  auto* orb = app.add_subcommand("orbits", "automorphism orbits");
  common(orb);
  orb->add_option("-m", orbit_m, "tuple length");
  orb->add_flag("--subsets", orbit_subsets, "orbits on m-subsets instead of m-tuples");

  std::string interpret_what;
  auto* interp = app.add_subcommand("interpret", "structure conversions");
  common(interp);
  interp->add_option("what", interpret_what, "htour2chg, c2d, lin2circ")
      ->required()
      ->check(CLI::IsMember({"htour2chg", "c2d", "lin2circ"}));
  interp->add_option("--order", cfg.order_in, "linear order file (htour2chg; default identity)");

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  common(self);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*gen) return cmd_gen(cfg, g);
    if (*extend) return cmd_extend(cfg);
    if (*verify) {
      if (verify_what == "even") return cmd_verify_even(cfg);
      if (verify_what == "axioms") return cmd_verify_axioms(cfg);
      if (verify_what == "extension") return cmd_verify_extension(cfg);
      return cmd_verify_transitive(cfg);
    }
    if (*pal) return cmd_palette(cfg, palette_what, palette_n);
    if (*obs) return cmd_obstruct(cfg, obstruct_what, obstruct_k, classes);
    if (*orb) return cmd_orbits(cfg, orbit_m, orbit_subsets);
    if (*interp) return cmd_interpret(cfg, interpret_what);
    if (*self) return cmd_selftest(cfg);
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
