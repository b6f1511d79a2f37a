#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcsl/catalog.hpp"
#include "pcsl/construct.hpp"
#include "pcsl/json_io.hpp"
#include "pcsl/morphisms.hpp"

namespace pcsl {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  // ctest runs cases as separate processes, possibly at once
  static const fs::path d = fs::temp_directory_path() / ("pcsl_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

Outcome pcsl(const std::vector<std::string>& args, const std::string& env = "") {
  const fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += quote(PCSL_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
  const int status = std::system(cmd.c_str());
  Outcome r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool has(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

fs::path catalog(std::size_t n) {
  const fs::path p = work_dir() / ("cat" + std::to_string(n) + ".jsonl");
  if (!fs::exists(p)) save_catalog(enumerate(n), p);
  return p;
}

TEST(CliBuild, ThreeElementChain) {
  const Outcome r = pcsl({"build", "F(1)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "size 3")) << r.out;
}

TEST(CliBuild, ProductOfTwelve) {
  const fs::path f = work_dir() / "b2f1.json";
  const Outcome r = pcsl({"build", "B(2)*F(1)", "-o", f.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "size 12"));
  EXPECT_EQ(load_algebra(f).size(), 12u);
}

TEST(CliBuild, QuotientIsTwo) {
  const fs::path f = work_dir() / "quot.json";
  const Outcome r = pcsl({"build", "quot(F(1)*B(1), (0,1))", "-o", f.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(canonical_form(load_algebra(f)), canonical_form(boolean_algebra(1).algebra));
}

TEST(CliBuild, JsonReportsCounts) {
  const Outcome r = pcsl({"--format", "json", "build", "hat(B(2))"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["size"], 5);
  EXPECT_EQ(j["skeleton"], 4);
  EXPECT_EQ(j["dense"], 2);
  EXPECT_EQ(j["central"], 2);
}

TEST(CliBuild, Errors) {
  EXPECT_EQ(pcsl({"build", "F(1"}).code, 2);
  EXPECT_EQ(pcsl({"build", "G(1)"}).code, 2);
  EXPECT_EQ(pcsl({"build", "quot(F(1), zz)"}).code, 2);
  const Outcome cap = pcsl({"--cap", "10", "build", "B(4)"});
  EXPECT_EQ(cap.code, 2);
  EXPECT_TRUE(has(cap.err, "cap")) << cap.err;
  EXPECT_EQ(pcsl({"build", "B(4)"}, "PCSL_CAP=10").code, 2);
}

TEST(CliCheck, ExitCodesFollowVerdicts) {
  const Outcome ac4 = pcsl({"check", "3", "AC4"});
  EXPECT_EQ(ac4.code, 1);
  EXPECT_TRUE(has(ac4.out, "counterexample")) << ac4.out;
  EXPECT_EQ(pcsl({"check", "B(3)", "AC1"}).code, 0);
  EXPECT_EQ(pcsl({"check", "2", "EC3"}).code, 1);
  EXPECT_EQ(pcsl({"check", "F(1)", "EC3"}).code, 0);
}

TEST(CliCheck, SentenceFromTextAndFile) {
  EXPECT_EQ(pcsl({"check", "3", "A x. x ^ x* = 0"}).code, 0);
  EXPECT_EQ(pcsl({"check", "3", "A x:D. x = 1"}).code, 1);
  const fs::path f = work_dir() / "dense_top.psl";
  std::ofstream(f) << "# only the top is dense\nA x:D. x = 1\n";
  EXPECT_EQ(pcsl({"check", "B(2)", f.string()}).code, 0);
}

TEST(CliCheck, JsonAndEnvFormat) {
  const Outcome r = pcsl({"check", "3", "AC4"}, "PCSL_FORMAT=json");
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["value"].get<bool>());
  EXPECT_EQ(j["role"], "counterexample");
  EXPECT_EQ(j["assignment"]["d"], "e");
  // the flag wins over the environment
  EXPECT_FALSE(has(pcsl({"--format", "text", "check", "3", "AC4"}, "PCSL_FORMAT=json").out, "{"));
}

TEST(CliCheck, Errors) {
  EXPECT_EQ(pcsl({"check", "3", "NOPE"}).code, 2);
  EXPECT_EQ(pcsl({"check", "3", "A x. x <"}).code, 2);
  EXPECT_EQ(pcsl({"check", "3"}).code, 2);
  EXPECT_EQ(pcsl({"--format", "xml", "check", "3", "AC1"}).code, 2);
}

TEST(CliSweep, SmallCatalogPassesCrossChecks) {
  const Outcome r = pcsl({"--format", "json", "sweep", catalog(5).string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 10u);
  const json& s = lines.back()["summary"];
  EXPECT_EQ(s["entries"], 9);
  EXPECT_EQ(s["ac_all"], s["boolean"]);
  EXPECT_EQ(s["theorem1"], s["boolean"]);
  EXPECT_TRUE(s["failures"].empty());
}

TEST(CliSweep, OnlyEc3) {
  const Outcome r = pcsl({"--format", "json", "sweep", catalog(5).string(), "--axiom", "EC3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = json_lines(r.out);
  lines.pop_back();
  std::size_t booleans = 0;
  for (const auto& l : lines) {
    EXPECT_EQ(l["axioms"].size(), 1u);
    if (l["boolean"].get<bool>()) {
      ++booleans;
      EXPECT_FALSE(l["axioms"]["EC3"]["value"].get<bool>());
    }
  }
  EXPECT_EQ(booleans, 3u);
}

TEST(CliSweep, EmptyCatalog) {
  const fs::path p = work_dir() / "empty.jsonl";
  std::ofstream(p).close();
  fs::remove(manifest_path(p));
  const Outcome r = pcsl({"sweep", p.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "entries   0"));
}

TEST(CliSweep, WritesLinesAndIsDeterministic) {
  const fs::path a = work_dir() / "sweep_a.jsonl", b = work_dir() / "sweep_b.jsonl";
  EXPECT_EQ(pcsl({"--jobs", "1", "sweep", catalog(5).string(), "-o", a.string()}).code, 0);
  EXPECT_EQ(pcsl({"--jobs", "4", "sweep", catalog(5).string(), "-o", b.string()}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(json_lines(slurp(a)).size(), 9u);
}

TEST(CliSweep, Errors) {
  EXPECT_EQ(pcsl({"sweep", (work_dir() / "absent.jsonl").string()}).code, 2);
  EXPECT_EQ(pcsl({"sweep", catalog(3).string(), "--axiom", "AC9"}).code, 2);
}

TEST(CliChain, Diagonal) {
  const Outcome r = pcsl({"chain", "F(1)*F(1)", "--s", "diag3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "chain verified"));
  const Outcome j = pcsl({"--format", "json", "chain", "F(1)*F(1)", "--s", "diag3"});
  const json c = json::parse(j.out)["chain"];
  EXPECT_EQ(c["steps"].size(), 5u);
  for (const auto& s : c["steps"]) EXPECT_TRUE(s["verified"].get<bool>());
}

TEST(CliChain, CaseThree) {
  const Outcome r = pcsl({"--format", "json", "chain", "2*F(1)", "--s", "eq7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["chain"]["lemma"], "ext2");
  EXPECT_EQ(j["chain"]["steps"].size(), 2u);
  EXPECT_TRUE(j["case3"]["ok"].get<bool>());
  EXPECT_EQ(j["case3"]["b"], "(0,1)");
}

TEST(CliChain, ConstantInSingleFactor) {
  const Outcome r = pcsl({"--format", "json", "chain", "F(1)", "--s", "const"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out)["chain"];
  ASSERT_EQ(j["steps"].size(), 3u);
  EXPECT_EQ(j["steps"][0]["size"], 2);
  EXPECT_EQ(j["steps"][2]["size"], 3);
}

TEST(CliChain, GeneratorsAndShapes) {
  EXPECT_EQ(pcsl({"chain", "F(2)*F(1)", "--s", "gens:(e,e)"}).code, 0);
  EXPECT_EQ(pcsl({"chain", "F(1)*F(1)", "--s", "shape:F(1)"}).code, 0);
  EXPECT_EQ(pcsl({"chain", "2*2*F(1)", "--s", "diag3"}).code, 0);
}

TEST(CliChain, PreconditionsSurfaceVerbatim) {
  const Outcome r = pcsl({"chain", "2*F(1)", "--s", "gens:(1,0)"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.err, "error: S has an element other than 1")) << r.err;
  EXPECT_EQ(pcsl({"chain", "F(1)*F(1)", "--s", "shape:B(2)"}).code, 2);
  EXPECT_EQ(pcsl({"chain", "F(1)*F(1)", "--s", "shape:F(0)"}).code, 0);
  EXPECT_EQ(pcsl({"chain", "F(1)*F(1)", "--s", "shape:B(3)"}).code, 2);
  EXPECT_EQ(pcsl({"chain", "F(1)", "--s", "bogus"}).code, 2);
}

TEST(CliChain, JsonIsByteStable) {
  const auto a = pcsl({"--format", "json", "chain", "F(2)*F(1)", "--s", "gens:(e,e)"});
  const auto b = pcsl({"--format", "json", "chain", "F(2)*F(1)", "--s", "gens:(e,e)"});
  EXPECT_EQ(a.out, b.out);
}

TEST(CliEnumerate, WritesCatalogAndManifest) {
  const fs::path p = work_dir() / "enum4.jsonl";
  const Outcome r = pcsl({"--format", "json", "enumerate", "4", "-o", p.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["total"], 5);
  EXPECT_EQ(load_catalog(p).size(), 5u);
  EXPECT_TRUE(fs::exists(manifest_path(p)));
}

TEST(CliEnumerate, CapIsEnforced) {
  EXPECT_EQ(pcsl({"enumerate", "9"}).code, 2);
  EXPECT_EQ(pcsl({"--cap", "3", "enumerate", "4"}).code, 2);
}

TEST(CliTransfer, SeedDeterminesOutput) {
  const auto a = pcsl({"--format", "json", "--seed", "11", "transfer", "--n-max", "4", "--pairs", "30"});
  const auto b = pcsl({"--format", "json", "transfer", "--n-max", "4", "--pairs", "30"}, "PCSL_SEED=11");
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["pairs"], 30);
  EXPECT_EQ(j["checks"], 270);
  EXPECT_EQ(a.code, j["mismatches"].empty() ? 0 : 1);
}

TEST(CliTransfer, MismatchesGiveExitOne) {
  const auto r = pcsl({"transfer", catalog(5).string(), "--pairs", "200"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.out, "seed 1"));
}

TEST(CliReport, ThreeElementChain) {
  const Outcome r = pcsl({"--format", "json", "report", "3"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["boolean"].get<bool>());
  EXPECT_TRUE(j["axioms"]["AC1"]["value"].get<bool>());
  EXPECT_FALSE(j["axioms"]["AC4"]["value"].get<bool>());
}

TEST(CliUsage, ExitCodes) {
  EXPECT_EQ(pcsl({}).code, 2);
  EXPECT_EQ(pcsl({"frobnicate"}).code, 2);
  EXPECT_EQ(pcsl({"--help"}).code, 0);
  EXPECT_EQ(pcsl({"--jobs", "x", "build", "F(1)"}).code, 2);
}

}  // namespace
}  // namespace pcsl
