#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "pcsl/catalog.hpp"
#include "pcsl/chains.hpp"
#include "pcsl/closure.hpp"
#include "pcsl/construct.hpp"
#include "pcsl/expr.hpp"
#include "pcsl/json_io.hpp"
#include "pcsl/logic.hpp"
#include "pcsl/morphisms.hpp"

namespace fs = std::filesystem;
using namespace pcsl;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct RunConfig {
  std::string format = "text";
  std::size_t jobs = 0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> cap;

  bool json() const { return format == "json"; }
  std::size_t build_cap() const { return cap.value_or(kDefaultSizeCap); }
  std::size_t catalog_cap() const { return cap.value_or(kDefaultCatalogCap); }
};

// an existing file is read as algebra JSON, anything else as a build expression
Built load_or_build(const std::string& arg, const RunConfig& cfg) {
  if (fs::is_regular_file(arg)) {
    FinPSL p = load_algebra(arg);
    if (p.size() > cfg.build_cap()) throw SizeCapError(p.size(), cfg.build_cap());
    ProductCoding c({p}, {1});
    return Built{Product{std::move(p), std::move(c)}};
  }
  return build_expr(arg, cfg.build_cap());
}

std::pair<std::string, logic::Sentence> load_sentence(const std::string& arg) {
  const auto& names = logic::sentence_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) return {arg, logic::axiom(arg)};
  if (fs::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::ostringstream text;
    text << in.rdbuf();
    return {fs::path(arg).stem().string(), logic::parse(text.str())};
  }
  const bool bare_name = !arg.empty() && std::all_of(arg.begin(), arg.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
  if (bare_name) throw std::invalid_argument("unknown sentence '" + arg + "'");
  return {arg, logic::parse(arg)};
}

std::string assignment_text(const FinPSL& p, const std::vector<logic::Binding>& a) {
  std::string out;
  for (const auto& b : a) {
    if (!out.empty()) out += ", ";
    out += b.var + " = " + p.label(b.value);
  }
  return out;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

// ---- build ------------------------------------------------------------------

int cmd_build(const RunConfig& cfg, const std::string& expr, const std::string& out) {
  const Built b = build_expr(expr, cfg.build_cap());
  const FinPSL& p = b.algebra();
  if (!out.empty()) save_algebra(p, out);
  if (cfg.json()) {
    json j;
    j["expr"] = expr;
    j["size"] = p.size();
    j["skeleton"] = p.skeleton().size();
    j["dense"] = p.dense().size();
    j["central"] = p.central().size();
    j["algebra"] = algebra_to_json(p);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << expr << ": size " << p.size() << ", |Sk| " << p.skeleton().size() << ", |D| "
              << p.dense().size() << ", |C| " << p.central().size() << '\n';
    if (!out.empty()) std::cout << "wrote " << out << '\n';
  }
  return kTrue;
}

// ---- check ------------------------------------------------------------------

int cmd_check(const RunConfig& cfg, const std::string& alg, const std::string& sentence) {
  const Built b = load_or_build(alg, cfg);
  const auto [name, s] = load_sentence(sentence);
  const logic::EvalResult r = logic::eval(b.algebra(), s);
  if (cfg.json()) {
    json j;
    j["algebra"] = alg;
    j["sentence"] = name;
    j["value"] = r.value;
    j["role"] = logic::role_name(r.role);
    json a = json::object();
    for (const auto& x : r.assignment) a[x.var] = b.algebra().label(x.value);
    j["assignment"] = std::move(a);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << name << " on " << alg << ": " << (r.value ? "true" : "false") << '\n';
    if (r.role != logic::AssignmentRole::kNone)
      std::cout << logic::role_name(r.role) << ": " << assignment_text(b.algebra(), r.assignment) << '\n';
  }
  return r.value ? kTrue : kFalse;
}

// ---- report -----------------------------------------------------------------

int cmd_report(const RunConfig& cfg, const std::string& alg) {
  const Built b = load_or_build(alg, cfg);
  const FinPSL& p = b.algebra();
  const Classification c = classify(p);
  if (cfg.json()) {
    std::cout << classification_to_json(p, c).dump() << '\n';
  } else {
    std::cout << alg << ": size " << p.size() << ", boolean " << (c.is_boolean ? "yes" : "no")
              << ", theorem1_finite " << (c.theorem1 ? "yes" : "no") << '\n';
    for (const auto& v : c.verdicts) {
      std::cout << "  " << pad(v.name, 6) << pad(v.result.value ? "true" : "false", 7);
      if (v.result.role != logic::AssignmentRole::kNone)
        std::cout << logic::role_name(v.result.role) << ": " << assignment_text(p, v.result.assignment);
      std::cout << '\n';
    }
    for (const auto& i : c.inconsistencies) std::cout << "  inconsistent: " << i << '\n';
  }
  return c.inconsistencies.empty() ? kTrue : kFalse;
}

// ---- sweep ------------------------------------------------------------------

int cmd_sweep(const RunConfig& cfg, const std::string& path, const std::vector<std::string>& axioms,
              bool theorem1, const std::string& out) {
  auto entries = load_catalog(path);
  ClassifyOptions opts;
  opts.axioms = axioms;
  opts.theorem1 = theorem1;
  for (const auto& a : axioms) logic::axiom(a);
  // stored verdicts may cover other axioms
  for (auto& e : entries) e.classification.reset();
  classify_all(entries, cfg.jobs, opts);

  const auto& names = axioms.empty() ? logic::axiom_names() : axioms;
  std::map<std::string, std::size_t> truths;
  for (const auto& n : names) truths[n] = 0;
  std::size_t booleans = 0, thm1 = 0, ac_all = 0;
  bool have_ac = true;
  for (const char* n : {"AC1", "AC2", "AC3", "AC4"})
    have_ac = have_ac && std::find(names.begin(), names.end(), n) != names.end();
  std::vector<std::string> failures;
  std::string lines;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto& c = *e.classification;
    booleans += c.is_boolean;
    thm1 += c.theorem1;
    ac_all += have_ac && c.ac_all();
    for (const auto& v : c.verdicts) truths[v.name] += v.result.value;
    for (const auto& x : c.inconsistencies) failures.push_back("entry " + std::to_string(i) + ": " + x);
    json j = classification_to_json(e.algebra, c);
    lines += j.dump() + '\n';
  }
  if (have_ac && ac_all != booleans) failures.push_back("AC1-AC4 count differs from boolean count");

  json summary;
  summary["entries"] = entries.size();
  summary["boolean"] = booleans;
  if (theorem1) summary["theorem1"] = thm1;
  if (have_ac) summary["ac_all"] = ac_all;
  json t = json::object();
  for (const auto& n : names) t[n] = truths[n];
  summary["true"] = std::move(t);
  summary["failures"] = failures;

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << lines;
  }
  if (cfg.json()) {
    if (out.empty()) std::cout << lines;
    json s;
    s["summary"] = std::move(summary);
    std::cout << s.dump() << '\n';
  } else {
    std::cout << pad("entries", 10) << entries.size() << '\n' << pad("boolean", 10) << booleans << '\n';
    if (theorem1) std::cout << pad("theorem1", 10) << thm1 << '\n';
    if (have_ac) std::cout << pad("AC1-AC4", 10) << ac_all << '\n';
    for (const auto& n : names) std::cout << pad(n, 10) << truths[n] << '\n';
    if (failures.empty()) std::cout << "checks    ok\n";
    for (const auto& f : failures) std::cout << "FAILED    " << f << '\n';
  }
  return failures.empty() ? kTrue : kFalse;
}

// ---- chain ------------------------------------------------------------------

ElementSet resolve_s(const Product& t, const std::string& spec, std::size_t atom) {
  const FinPSL& p = t.algebra;
  if (spec == "const") return sg(p, ElementSet(p.size()));
  if (spec == "eq7") return case3_subalgebra(t, atom);
  if (spec == "diag3") {
    std::vector<Elem> w;
    for (const auto& f : t.coding.factors()) {
      // e of a hatted factor, the top of a two-element one
      w.push_back(static_cast<Elem>(f.size() == 2 ? 1 : f.size() - 2));
    }
    const Elem d = t.coding.index(w);
    return sg(p, ElementSet(p.size(), {d}));
  }
  if (spec.rfind("gens:", 0) == 0) {
    ElementSet g(p.size());
    std::string rest = spec.substr(5);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const std::size_t end = std::min(rest.find(';', start), rest.size());
      const std::string item = rest.substr(start, end - start);
      if (!item.empty()) g.insert(resolve_element(t, item));
      start = end + 1;
    }
    return sg(p, g);
  }
  if (spec.rfind("shape:", 0) == 0) {
    const Built shape = build_expr(spec.substr(6));
    SearchResult r = find_embedding_over(shape.algebra(), p);
    if (!r) throw ChainError("no copy of " + spec.substr(6) + " inside T");
    ElementSet s(p.size());
    for (Elem x : r.morphism->map) s.insert(x);
    return s;
  }
  throw std::invalid_argument("unknown S spec '" + spec + "' (const, diag3, eq7, gens:..., shape:...)");
}

bool leading_twos(const Product& t) {
  bool seen_hat = false, seen_two = false;
  for (const auto& f : t.coding.factors()) {
    if (f.size() == 2) {
      if (seen_hat) return false;
      seen_two = true;
    } else {
      seen_hat = true;
    }
  }
  return seen_two;
}

void print_chain(const FinPSL& p, const ChainReport& r) {
  std::cout << "lemma " << r.lemma << ", factor order";
  for (auto i : r.permutation) std::cout << ' ' << i;
  std::cout << '\n';
  std::cout << pad("step", 8) << pad("size", 6) << pad("shape", 16) << pad("verified", 10) << "adjoined\n";
  for (const auto& s : r.steps) {
    std::string gens;
    for (Elem x : s.generators) gens += (gens.empty() ? "" : " ") + p.label(x);
    std::string check = s.verified ? "yes" : "NO";
    if (s.closed_form) check += *s.closed_form ? " cf" : " cf-NO";
    std::cout << pad(s.name, 8) << pad(std::to_string(s.carrier.size()), 6) << pad(s.shape.to_string(), 16)
              << pad(check, 10) << (gens.empty() ? "-" : gens) << '\n';
  }
  std::cout << (r.ok ? "chain verified" : "chain FAILED: " + r.failure) << '\n';
}

int cmd_chain(const RunConfig& cfg, const std::string& texpr, const std::string& spec, std::size_t atom) {
  const Built b = build_expr(texpr, cfg.build_cap());
  const Product& t = b.product;
  const ElementSet s = resolve_s(t, spec, atom);
  const bool ext2 = leading_twos(t);
  const ChainReport r = ext2 ? chain_ext2(t, s) : chain_ext1(t, s);
  std::optional<Case3Result> c3;
  bool c3_tried = false;
  if (spec == "eq7") {
    c3_tried = true;
    c3 = case3_witness_and_iso(t, atom);
  }
  const bool ok = r.ok && (!c3_tried || (c3 && c3->ok()));
  if (cfg.json()) {
    json j;
    j["T"] = texpr;
    j["S"] = spec;
    j["chain"] = chain_report_to_json(t.algebra, r);
    if (c3_tried) j["case3"] = c3 ? case3_to_json(t.algebra, *c3) : json(nullptr);
    std::cout << j.dump() << '\n';
  } else {
    print_chain(t.algebra, r);
    if (c3_tried) {
      if (!c3) std::cout << "case 3: no witness b\n";
      else
        std::cout << "case 3: b = " << t.algebra.label(c3->b) << ", h : " << c3->direction << " is "
                  << (c3->ok() ? "an isomorphism" : "NOT an isomorphism") << " onto " << c3->s_prime.size()
                  << " elements\n";
    }
  }
  return ok ? kTrue : kFalse;
}

// ---- enumerate --------------------------------------------------------------

int cmd_enumerate(const RunConfig& cfg, std::size_t n_max, const std::string& out, bool with_class) {
  EnumerateOptions opts;
  opts.cap = cfg.catalog_cap();
  opts.jobs = cfg.jobs;
  opts.classify = with_class;
  const auto entries = enumerate(n_max, opts);
  if (!out.empty()) save_catalog(entries, out);
  const auto counts = count_by_size(entries);
  if (cfg.json()) {
    json j;
    j["n_max"] = n_max;
    json c = json::object();
    for (std::size_t n = 1; n < counts.size(); ++n) c[std::to_string(n)] = counts[n];
    j["counts"] = std::move(c);
    j["total"] = entries.size();
    if (!out.empty()) j["out"] = out;
    std::cout << j.dump() << '\n';
  } else {
    for (std::size_t n = 1; n < counts.size(); ++n) std::cout << "n=" << pad(std::to_string(n), 3) << counts[n] << '\n';
    std::cout << "total " << entries.size() << '\n';
    if (!out.empty()) std::cout << "wrote " << out << " and " << manifest_path(out).string() << '\n';
  }
  return kTrue;
}

// ---- transfer ---------------------------------------------------------------

int cmd_transfer(const RunConfig& cfg, const std::string& path, std::size_t n_max, std::size_t pairs) {
  std::vector<FinPSL> pool;
  if (!path.empty()) {
    for (auto& e : load_catalog(path)) pool.push_back(std::move(e.algebra));
  } else {
    EnumerateOptions opts;
    opts.cap = cfg.catalog_cap();
    opts.jobs = cfg.jobs;
    for (auto& e : enumerate(n_max, opts)) pool.push_back(std::move(e.algebra));
  }
  const TransferReport r = product_transfer(pool, pairs, cfg.seed);
  std::map<std::string, std::size_t> by_axiom;
  for (const auto& m : r.mismatches) ++by_axiom[m.axiom];
  if (cfg.json()) {
    json j;
    j["seed"] = cfg.seed;
    j["pool"] = pool.size();
    j["pairs"] = r.pairs;
    j["checks"] = r.checks;
    json mm = json::array();
    for (const auto& m : r.mismatches) {
      json x;
      x["first"] = m.first;
      x["second"] = m.second;
      x["axiom"] = m.axiom;
      x["product"] = m.product;
      x["factors"] = m.factors;
      mm.push_back(std::move(x));
    }
    j["mismatches"] = std::move(mm);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "seed " << cfg.seed << ", pool " << pool.size() << ", pairs " << r.pairs << ", checks " << r.checks
              << ", mismatches " << r.mismatches.size() << '\n';
    for (const auto& [a, k] : by_axiom) std::cout << "  " << pad(a, 6) << k << '\n';
    std::size_t shown = 0;
    for (const auto& m : r.mismatches) {
      if (shown++ == 5) break;
      std::cout << "  pool[" << m.first << "] x pool[" << m.second << "] " << m.axiom << ": product "
                << (m.product ? "true" : "false") << ", factors " << (m.factors ? "true" : "false") << '\n';
    }
  }
  return r.ok() ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite pseudocomplemented semilattices: build, check, sweep, chain, enumerate."};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::size_t cap = 0;
  app.add_option("--format", cfg.format, "text or json")
      ->envname("PCSL_FORMAT")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", cfg.jobs, "worker threads, 0 = all cores")->envname("PCSL_JOBS");
  app.add_option("--seed", cfg.seed, "seed for sampled sweeps")->envname("PCSL_SEED");
  auto* cap_opt = app.add_option("--cap", cap, "size cap")->envname("PCSL_CAP")->check(CLI::PositiveNumber);

  std::string expr, out, alg, sentence, path, spec = "const";
  std::vector<std::string> axioms;
  bool no_thm1 = false, with_class = false;
  std::size_t n_max = 5, pairs = 200, atom = 0;

  auto* build = app.add_subcommand("build", "build an algebra from an expression");
  build->add_option("expr", expr, "e.g. B(2)*F(1)")->required();
  build->add_option("-o,--out", out, "write the algebra JSON here");

  auto* check = app.add_subcommand("check", "evaluate a sentence; exit 0 true, 1 false");
  check->add_option("algebra", alg, "algebra JSON file or expression")->required();
  check->add_option("sentence", sentence, "shipped name, sentence file or sentence text")->required();

  auto* report = app.add_subcommand("report", "classify one algebra");
  report->add_option("algebra", alg, "algebra JSON file or expression")->required();

  auto* sweep = app.add_subcommand("sweep", "classify every catalog entry");
  sweep->add_option("catalog", path, "catalog JSON-lines file")->required();
  sweep->add_option("--axiom", axioms, "evaluate only these axioms");
  sweep->add_flag("--no-theorem1", no_thm1, "skip theorem1_finite");
  sweep->add_option("-o,--out", out, "write classification JSON-lines here");

  auto* chain = app.add_subcommand("chain", "build and verify a subalgebra chain from S to T");
  chain->add_option("T", expr, "product expression such as F(1)*F(1)")->required();
  chain->add_option("--s", spec, "const, diag3, eq7, gens:x;y or shape:EXPR");
  chain->add_option("--atom", atom, "atom of the last factor for eq7");

  auto* en = app.add_subcommand("enumerate", "enumerate all algebras up to a size");
  en->add_option("n_max", n_max, "largest size")->required();
  en->add_option("-o,--out", out, "catalog file; a manifest is written next to it");
  en->add_flag("--classify", with_class, "store classifications");

  auto* tr = app.add_subcommand("transfer", "compare axioms on products with their factors");
  tr->add_option("catalog", path, "catalog file; default enumerates up to --n-max");
  tr->add_option("--n-max", n_max, "pool size limit when enumerating");
  tr->add_option("--pairs", pairs, "number of sampled pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }
  if (*cap_opt) cfg.cap = cap;

  try {
    if (*build) return cmd_build(cfg, expr, out);
    if (*check) return cmd_check(cfg, alg, sentence);
    if (*report) return cmd_report(cfg, alg);
    if (*sweep) return cmd_sweep(cfg, path, axioms, !no_thm1, out);
    if (*chain) return cmd_chain(cfg, expr, spec, atom);
    if (*en) return cmd_enumerate(cfg, n_max, out, with_class);
    if (*tr) return cmd_transfer(cfg, path, n_max, pairs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
