#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "affina/affina.hpp"

namespace affina::cli {
namespace {

using nlohmann::ordered_json;

// A report: the result on the first line, optional `key: value` details,
// optional free-form body lines, then the operation line.
struct Report {
  std::string command;
  std::string op;
  std::string result;
  std::vector<std::pair<std::string, std::string>> details;
  std::vector<std::string> lines;
  int exit_code = 0;

  void detail(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
};

Report report(std::string command, std::string op) {
  Report r;
  r.command = std::move(command);
  r.op = std::move(op);
  return r;
}

void render(const Report& r, bool as_json, std::ostream& out) {
  if (as_json) {
    ordered_json j;
    j["command"] = r.command;
    j["result"] = r.result;
    ordered_json d = ordered_json::object();
    for (const auto& [k, v] : r.details) d[k] = v;
    j["details"] = d;
    j["lines"] = r.lines;
    j["op"] = r.op;
    j["exit"] = r.exit_code;
    out << j.dump(2) << '\n';
    return;
  }
  out << r.result << '\n';
  for (const auto& [k, v] : r.details) out << k << ": " << v << '\n';
  for (const auto& l : r.lines) out << l << '\n';
  out << "# op: " << r.op << '\n';
}

struct Common {
  bool tree = false;
  bool word = false;
  std::string sigma = "ab";
  bool json = false;
  std::string file;
  std::vector<std::string> terms;

  Mode mode() const {
    if (tree && word) throw PreconditionError("--tree and --word are exclusive");
    return tree ? Mode::tree : Mode::word;
  }
};

void add_common(CLI::App* sub, Common& c, const std::string& terms_help) {
  sub->add_flag("--tree", c.tree, "Binary tree algebra");
  sub->add_flag("--word", c.word, "Word algebra (default)");
  sub->add_option("--sigma", c.sigma, "Alphabet letters")->capture_default_str();
  sub->add_flag("--json", c.json, "JSON report");
  sub->add_option("--file", c.file, "Read additional whitespace-separated terms from a file");
  sub->add_option("terms", c.terms, terms_help);
}

std::vector<std::string> all_terms(const Common& c) {
  std::vector<std::string> out = c.terms;
  if (!c.file.empty()) {
    std::ifstream in(c.file);
    if (!in) throw PreconditionError("cannot read " + c.file);
    std::copy(std::istream_iterator<std::string>(in), std::istream_iterator<std::string>(), std::back_inserter(out));
  }
  return out;
}

void need_terms(const std::vector<std::string>& terms, std::size_t n, const char* what) {
  if (terms.size() != n) throw CLI::ValidationError(std::string(what) + " expects " + std::to_string(n) + " term(s), got " + std::to_string(terms.size()));
}

std::string verdict(bool b) { return b ? "true" : "false"; }

// --- oracles ---------------------------------------------------------------

struct OracleArgs {
  std::string poly;
  std::string builtin;
  std::string value = "_";
  std::size_t arity = 0;  // 0: inferred
};

void add_oracle(CLI::App* sub, OracleArgs& o) {
  sub->add_option("--poly", o.poly, "Polynomial to wrap as the oracle (variables x1, x2, ...)");
  sub->add_option("--builtin", o.builtin, "Builtin oracle: reverse | mirror | sort-letters | constant");
  sub->add_option("--value", o.value, "Value of the constant builtin");
  sub->add_option("--arity", o.arity, "Arity (polynomial or constant)");
}

std::pair<FunctionOracle, std::string> make_oracle(const OracleArgs& o, Mode mode, const Alphabet& alphabet) {
  if (o.poly.empty() == o.builtin.empty()) throw CLI::ValidationError("give exactly one of --poly or --builtin");
  if (!o.poly.empty()) {
    const Object body = parse_object(o.poly, mode, alphabet, {.allow_variables = true});
    Polynomial p = o.arity ? Polynomial(body, o.arity) : Polynomial(body);
    return {builtin::polynomial(p), "polynomial " + to_string(p)};
  }
  if (o.builtin == "reverse") {
    if (mode != Mode::word) throw ModeMismatch("reverse is a word function");
    return {builtin::reverse(), "reverse"};
  }
  if (o.builtin == "mirror") {
    if (mode != Mode::tree) throw ModeMismatch("mirror is a tree function");
    return {builtin::mirror(), "mirror"};
  }
  if (o.builtin == "sort-letters") {
    if (mode != Mode::word) throw ModeMismatch("sort-letters is a word function");
    return {builtin::sort_letters(alphabet), "sort-letters"};
  }
  if (o.builtin == "constant") {
    const std::size_t arity = o.arity ? o.arity : 1;
    return {builtin::constant(parse_object(o.value, mode, alphabet), arity), "constant " + o.value + " of arity " + std::to_string(arity)};
  }
  throw CLI::ValidationError("unknown builtin '" + o.builtin + "'");
}

CongruenceSpec parse_family(const std::string& text, Mode mode, const Alphabet& alphabet) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (name == "first-letter") return congruence::FirstLetter{};
  if (name == "length") return congruence::TotalLength{};
  if (name == "letter-count") {
    if (arg.size() != 1 || !alphabet.contains(arg[0])) throw CLI::ValidationError("letter-count needs a letter of the alphabet, e.g. letter-count:a");
    return congruence::LetterCount{Symbol::letter(arg[0])};
  }
  if (name == "leaf-side") {
    if (arg == "left") return congruence::LeafSideCount{Side::left};
    if (arg == "right") return congruence::LeafSideCount{Side::right};
    throw CLI::ValidationError("leaf-side needs left or right");
  }
  if (name == "length-mod") {
    try {
      return congruence::LengthMod{static_cast<std::size_t>(std::stoul(arg))};
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("length-mod needs a positive integer");
    }
  }
  if (name == "principal") {
    // Split at the top-level comma.
    int depth = 0;
    for (std::size_t i = 0; i < arg.size(); ++i) {
      if (arg[i] == '(') ++depth;
      if (arg[i] == ')') --depth;
      if (arg[i] == ',' && depth == 0)
        return congruence::Principal{parse_object(arg.substr(0, i), mode, alphabet), parse_object(arg.substr(i + 1), mode, alphabet)};
    }
    throw CLI::ValidationError("principal needs two terms, e.g. principal:aa,b");
  }
  throw CLI::ValidationError("unknown congruence family '" + name + "'");
}

// --- demos -----------------------------------------------------------------

Report demo_fig2() {
  const Alphabet sigma("abcd");
  const Object tau = parse_object("(c.d)", Mode::tree, sigma);
  const Polynomial q(parse_object("((b.x1).(c.d))", Mode::tree, sigma, {.allow_variables = true}));
  const Polynomial reduced = polynomial_reduce(q, tau, 2, sigma);
  Report r = report("demo fig2", "polynomial reduction: tau-occurrences of Q replaced by a fresh variable");
  r.result = to_string(reduced);
  r.detail("Q", to_string(q));
  r.detail("tau", to_string(tau));
  return r;
}

Report demo_fig3() {
  const Alphabet sigma("abcd");
  const ReductionSpec spec{parse_object("(c.d)", Mode::tree, sigma), parse_object("a", Mode::tree, sigma)};
  const Object t = parse_object("(((c.d)._).(c.d))", Mode::tree, sigma);
  const Object t1 = reduce_once(t, spec);
  const Object t2 = reduce_once(t1, spec);
  Report r = report("demo fig3", "leftmost single-step reduction Red, applied twice");
  r.result = to_string(t2);
  r.detail("t", to_string(t));
  r.detail("step 1", to_string(t1));
  r.detail("step 2", to_string(t2));
  r.detail("canonical", verdict(reduce_star(t, spec) == t2));
  return r;
}

Report demo_remark_nonunique() {
  const Alphabet sigma("ab");
  const Object aa = parse_object("aa", Mode::word, sigma), b = parse_object("b", Mode::word, sigma);
  const Object aaa = parse_object("aaa", Mode::word, sigma);
  const Partition p = closure_oracle(aa, b, 3, sigma);
  const auto& cls = p.classes[p.class_of(aaa)];
  std::vector<std::string> minimal;
  for (const Object& m : cls)
    if (m.length() == cls.front().length()) minimal.push_back(to_string(m));
  Report r = report("demo remark-nonunique", "bounded congruence closure of (aa,b); minimal representatives need not be unique");
  std::string joined;
  for (const auto& m : minimal) joined += (joined.empty() ? "" : " ") + m;
  r.result = joined;
  std::string members;
  for (const Object& m : cls) members += (members.empty() ? "" : " ") + to_string(m);
  r.detail("class of aaa", members);
  r.detail("minimal members", std::to_string(minimal.size()));
  return r;
}

Report demo_aba_failure() {
  const Alphabet sigma("ab");
  const Object tau = parse_object("aba", Mode::word, sigma), v = Object::empty(Mode::word);
  const ContextPolynomial c(parse_object("aby", Mode::word, sigma, {.allow_hole = true}));
  const ReductionSpec spec{tau, v};
  Report r = report("demo aba-failure", "context compatibility of Red* fails for a self-overlapping tau");
  const bool ok = check_assumption1(tau, v, c);
  r.result = verdict(ok);
  r.detail("tau", to_string(tau));
  r.detail("v", to_string(v));
  r.detail("context", to_string(c));
  r.detail("Red*(C(tau))", to_string(reduce_star(c(tau), spec)));
  r.detail("Red*(C(v))", to_string(reduce_star(c(v), spec)));
  return r;
}

Report demo_aabb_failure() {
  const Alphabet sigma("ab");
  const Object tau = parse_object("aabb", Mode::word, sigma);
  Report r = report("demo aabb-failure", "strong irreducibility of the length->=4 factors of aaabb and aabbb");
  bool any = false;
  for (const char* w : {"aaabb", "aabbb", "aabb", "aaab", "abbb"}) {
    const auto s = classify_strong_irreducibility(parse_object(w, Mode::word, sigma), tau);
    any = any || static_cast<bool>(s);
    std::string line = std::string(w) + " " + to_string(s.verdict);
    if (s.overlap) line += " " + to_string(*s.overlap);
    r.lines.push_back(line);
  }
  r.result = any ? "some factor is strongly irreducible" : "none strongly irreducible";
  r.detail("tau", to_string(tau));
  return r;
}

Report demo_nat_counterexample() {
  Report r = report("demo nat-counterexample", "x -> floor(e*x!) on <N,+>: congruence preserving, not affine");
  const unsigned n = 10;
  const auto table = numeric::difference_table(n, [](unsigned x) { return numeric::euler_factorial(x); });
  r.lines.push_back("x f(x) d1 d2");
  for (unsigned x = 0; x <= n; ++x) {
    std::string line = std::to_string(x) + " " + table[0][x].str();
    line += " " + (x < table[1].size() ? table[1][x].str() : std::string("-"));
    line += " " + (x < table[2].size() ? table[2][x].str() : std::string("-"));
    r.lines.push_back(line);
  }
  const auto div = numeric::check_divisibility_cp(12);
  const bool not_affine = numeric::check_not_affine(n);
  r.result = div ? "divisibility fails at (" + std::to_string(div->first) + "," + std::to_string(div->second) + ")" : "divisibility holds up to 12";
  r.detail("not affine up to 10", verdict(not_affine));
  r.exit_code = div ? 1 : 0;
  return r;
}

Report demo_nat2_synthesis() {
  using numeric::NatVec;
  Report r = report("demo nat2-synthesis", "affine synthesis on <N^2,+>");
  const numeric::AffineMap target{NatVec({1, 2}), {2, 0, 3}};
  const auto ok = numeric::synthesize_affine([&](std::span<const NatVec> x) { return target(x); }, 2, 3, 2);
  const auto sort = numeric::synthesize_affine(
      [](std::span<const NatVec> x) {
        auto e = x[0].entries();
        std::sort(e.begin(), e.end());
        return NatVec(e);
      },
      2, 1, 3);
  r.result = ok ? ok.map->to_string() : "failure";
  r.detail("target", target.to_string());
  r.detail("round trip", verdict(ok && *ok.map == target));
  std::string w;
  for (const auto& x : sort.witness) w += x.to_string();
  r.detail("componentwise sort", sort ? "synthesized (unexpected)" : "failure at " + w);
  r.detail("reason", sort.reason);
  return r;
}

Report run_demo(const std::string& name) {
  static const std::map<std::string, Report (*)()> demos = {
      {"fig2", demo_fig2},
      {"fig3", demo_fig3},
      {"remark-nonunique", demo_remark_nonunique},
      {"aba-failure", demo_aba_failure},
      {"aabb-failure", demo_aabb_failure},
      {"nat-counterexample", demo_nat_counterexample},
      {"nat2-synthesis", demo_nat2_synthesis},
  };
  auto it = demos.find(name);
  if (it == demos.end()) {
    std::string names;
    for (const auto& [k, _] : demos) names += " " + k;
    throw CLI::ValidationError("unknown demo '" + name + "'; available:" + names);
  }
  Report r = it->second();
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"affina: rewriting, canonical forms and polynomial synthesis in free binary algebras", "affina"};
  app.require_subcommand(1, 1);

  Common c;
  std::string tau, v = "_";
  bool use_oracle = false;
  std::size_t max_len = 5;
  OracleArgs oracle;
  SynthesisOptions synth_opts;
  RefuteOptions refute_opts;
  std::vector<std::string> families;

  auto* reduce = app.add_subcommand("reduce", "One leftmost reduction step Red_{tau,v}");
  auto* canon = app.add_subcommand("canon", "Canonical form Red*_{tau,v}");
  auto* equiv = app.add_subcommand("equiv", "Decide t ~(tau,v) t'");
  auto* ct = app.add_subcommand("ct", "Membership in the curated set CT");
  auto* strong = app.add_subcommand("strong", "Strong tau-irreducibility of a word");
  auto* occurs = app.add_subcommand("occurs", "Leftmost occurrence of u in t as a context");
  auto* evalc = app.add_subcommand("eval", "Evaluate a polynomial");
  auto* mdeg = app.add_subcommand("mdeg", "Multidegree of a black-box function");
  auto* synth = app.add_subcommand("synth", "Synthesize the polynomial of a congruence preserving function");
  auto* refute = app.add_subcommand("refute", "Search for a congruence the function does not preserve");
  auto* closure = app.add_subcommand("closure", "Bounded congruence generated by (u,v)");
  auto* demo = app.add_subcommand("demo", "Reproduce a worked example");

  for (auto* sub : {reduce, canon, equiv, strong}) {
    sub->add_option("--tau", tau, "Pattern tau")->required();
    if (sub != strong) sub->add_option("--v", v, "Replacement v")->capture_default_str();
  }
  equiv->add_flag("--oracle", use_oracle, "Decide with the bounded closure oracle instead of Red*");
  equiv->add_option("--max-len", max_len, "Bound for --oracle")->capture_default_str();
  closure->add_option("--max-len", max_len, "Measure bound (length, or size for trees)")->capture_default_str();
  for (auto* sub : {mdeg, synth, refute}) add_oracle(sub, oracle);
  synth->add_option("--verify-len", synth_opts.verify_len, "Verification grid bound")->capture_default_str();
  refute->add_option("--family", families, "first-letter | length | letter-count:<c> | leaf-side:left|right | principal:<u>,<v> | length-mod:<m>");
  refute->add_option("--budget", refute_opts.budget, "Oracle query budget")->capture_default_str();

  add_common(reduce, c, "term");
  add_common(canon, c, "term");
  add_common(equiv, c, "two terms");
  add_common(ct, c, "term");
  add_common(strong, c, "word");
  add_common(occurs, c, "t u");
  add_common(evalc, c, "polynomial followed by its arguments");
  add_common(mdeg, c, "(unused)");
  add_common(synth, c, "(unused)");
  add_common(refute, c, "(unused)");
  add_common(closure, c, "u v");
  add_common(demo, c, "demo name: fig2 | fig3 | remark-nonunique | aba-failure | aabb-failure | nat-counterexample | nat2-synthesis");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const Mode mode = c.mode();
    const Alphabet sigma(c.sigma);
    const auto terms = all_terms(c);
    auto term = [&](const std::string& s) { return parse_object(s, mode, sigma); };
    Report r;

    if (reduce->parsed() || canon->parsed() || equiv->parsed()) {
      const ReductionSpec spec{term(tau), term(v)};
      if (reduce->parsed()) {
        need_terms(terms, 1, "reduce");
        const Object t = term(terms[0]);
        r = report("reduce", "Red_{tau,v}: replace the leftmost occurrence of tau by v");
        if (!is_reducible(t, spec.tau)) {
          r.result = to_string(t);
          r.detail("reducible", "false");
          r.exit_code = 1;
        } else {
          r.result = to_string(reduce_once(t, spec));
        }
      } else if (canon->parsed()) {
        need_terms(terms, 1, "canon");
        r = report("canon", "Red*_{tau,v}: iterate Red to the tau-irreducible canonical form");
        r.result = to_string(reduce_star(term(terms[0]), spec));
      } else {
        need_terms(terms, 2, "equiv");
        const Object t1 = term(terms[0]), t2 = term(terms[1]);
        if (use_oracle) {
          r = report("equiv", "bounded congruence closure of (tau,v)");
          const Partition p = closure_oracle(spec.tau, spec.v, max_len, sigma);
          if (measure(t1) > max_len || measure(t2) > max_len)
            throw PreconditionError("equiv --oracle: terms exceed --max-len " + std::to_string(max_len));
          const bool same = p.class_of(t1) == p.class_of(t2);
          r.result = verdict(same);
          r.detail("max-len", std::to_string(max_len));
          r.exit_code = same ? 0 : 1;
        } else {
          r = report("equiv", "t ~ t' iff Red*(t) = Red*(t') for tau in CT");
          const bool same = equivalent(t1, t2, spec, sigma);
          r.result = verdict(same);
          r.detail("Red*(t)", to_string(reduce_star(t1, spec)));
          r.detail("Red*(t')", to_string(reduce_star(t2, spec)));
          r.exit_code = same ? 0 : 1;
        }
      }
    } else if (ct->parsed()) {
      need_terms(terms, 1, "ct");
      const bool in = in_ct(term(terms[0]), sigma);
      r = report("ct", "curated set CT: a^n b a b^n (words), left combs (trees)");
      r.result = verdict(in);
      if (mode == Mode::word && in) r.detail("n", std::to_string(*ct_word_exponent(term(terms[0]), sigma)));
      r.exit_code = in ? 0 : 1;
    } else if (strong->parsed()) {
      need_terms(terms, 1, "strong");
      const auto s = classify_strong_irreducibility(term(terms[0]), term(tau));
      r = report("strong", "strong tau-irreducibility: irreducible, long enough, no overlap with tau");
      r.result = verdict(static_cast<bool>(s));
      r.detail("verdict", to_string(s.verdict));
      if (s.overlap) r.detail("overlap", to_string(*s.overlap));
      r.exit_code = s ? 0 : 1;
    } else if (occurs->parsed()) {
      need_terms(terms, 2, "occurs");
      const auto ctx = find_occurrence(term(terms[0]), term(terms[1]));
      r = report("occurs", "leftmost occurrence t = C(u) as a context polynomial");
      r.result = ctx ? to_string(*ctx) : "absent";
      r.exit_code = ctx ? 0 : 1;
    } else if (evalc->parsed()) {
      if (terms.empty()) throw CLI::ValidationError("eval expects a polynomial");
      const Polynomial p(parse_object(terms[0], mode, sigma, {.allow_variables = true}));
      std::vector<Object> xs;
      for (std::size_t i = 1; i < terms.size(); ++i) xs.push_back(term(terms[i]));
      if (xs.size() < p.arity()) throw PreconditionError("eval: polynomial of arity " + std::to_string(p.arity()) + " needs that many arguments");
      const Polynomial padded(p.body(), xs.size());
      r = report("eval", "polynomial evaluation (homomorphic substitution)");
      r.result = to_string(eval(padded, xs));
    } else if (mdeg->parsed() || synth->parsed() || refute->parsed()) {
      auto [f, name] = make_oracle(oracle, mode, sigma);
      if (mdeg->parsed()) {
        r = report("mdeg", "multidegree from the affine length law");
        try {
          const LengthProfile prof = extract_multidegree(f, sigma);
          std::string k;
          for (std::size_t d : prof.multidegree) k += (k.empty() ? "" : " ") + std::to_string(d);
          r.result = "<" + k + ">";
          r.detail("base", std::to_string(prof.base));
          r.detail("degree", std::to_string(prof.degree()));
        } catch (const AffineLawViolation& e) {
          r.result = "violation";
          r.detail("reason", e.what());
          r.detail("witness", format_tuple(e.witness()));
          r.exit_code = 1;
        }
      } else if (synth->parsed()) {
        r = report("synth", "polynomial synthesis by recursion on arity with curated tau");
        const SynthesisResult s = synthesize(f, sigma, synth_opts);
        for (const auto& t : s.trace)
          r.lines.push_back("tau arity=" + std::to_string(t.arity) + " k=" + std::to_string(t.degree) + " |f(a..a)|=" +
                            std::to_string(t.image_of_a) + " |tau|=" + std::to_string(t.tau.length()));
        if (s) {
          r.result = to_string(*s.polynomial);
        } else {
          r.result = "failure";
          r.detail("witness", format_tuple(s.failure->witness));
          r.detail("expected", to_string(s.failure->expected));
          r.detail("actual", to_string(s.failure->actual));
          r.detail("reason", s.failure->reason);
          r.exit_code = 1;
        }
      } else {
        if (families.empty()) throw CLI::ValidationError("refute needs at least one --family");
        std::vector<CongruenceSpec> specs;
        for (const auto& fam : families) specs.push_back(parse_family(fam, mode, sigma));
        r = report("refute", "congruence preservation refutation by bounded search");
        const RefutationReport rep = refute_cp(f, specs, sigma, refute_opts);
        if (rep.witness) {
          r.result = "refuted";
          r.detail("family", rep.witness->family);
          r.detail("lhs", format_tuple(rep.witness->lhs));
          r.detail("rhs", format_tuple(rep.witness->rhs));
          r.detail("f(lhs)", to_string(rep.witness->lhs_image));
          r.detail("f(rhs)", to_string(rep.witness->rhs_image));
          r.exit_code = 1;
        } else {
          r.result = "no witness (inconclusive)";
        }
        r.detail("queries", std::to_string(rep.queries));
        for (const auto& w : rep.warnings) r.lines.push_back("warning: " + w);
      }
      r.detail("oracle", name);
    } else if (closure->parsed()) {
      need_terms(terms, 2, "closure");
      r = report("closure", "bounded congruence closure of (u,v)");
      const Partition p = closure_oracle(term(terms[0]), term(terms[1]), max_len, sigma);
      r.result = std::to_string(p.classes.size()) + " classes";
      std::istringstream lines(format_partition(p));
      for (std::string l; std::getline(lines, l);) r.lines.push_back(l);
    } else if (demo->parsed()) {
      need_terms(terms, 1, "demo");
      r = run_demo(terms[0]);
    }

    render(r, c.json, out);
    return r.exit_code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace affina::cli
