#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "cohw/commands.hpp"
#include "cohw/textio.hpp"

using namespace cohw;
namespace fs = std::filesystem;

namespace {

std::string corpus(const std::string& name) { return std::string(COHW_CORPUS_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string scratch(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("cohw_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

CommandOutput run(const std::string& command, const std::string& path, const std::function<void(CommandRequest&)>& tweak = {}) {
  CommandRequest r;
  r.command = command;
  r.path = path;
  if (tweak) tweak(r);
  return run_command(r);
}

InputError parse_error(const std::string& text) {
  try {
    load_model(text);
  } catch (const InputError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return InputError(0, 0, "");
}

}  // namespace

TEST(Parse, LocatedErrors) {
  InputError empty = parse_error("");
  EXPECT_EQ(empty.line(), 1u);
  EXPECT_EQ(empty.column(), 1u);
  EXPECT_NE(std::string(empty.what()).find("syntax error"), std::string::npos);
  EXPECT_EQ(parse_error("# only a comment\n").line(), 1u);

  InputError range = parse_error("[lie H]\nbasis = x y z\nbracket = 0 1 7 1\n");
  EXPECT_EQ(range.line(), 3u);
  EXPECT_EQ(range.column(), 15u);
  EXPECT_NE(range.message().find("out of range"), std::string::npos);

  EXPECT_EQ(parse_error("basis = x\n").line(), 1u);
  EXPECT_NE(parse_error("[lie H]\nbasis = x\ncolour = red\n").message().find("unknown key"), std::string::npos);
  EXPECT_NE(parse_error("[lie H]\nbasis = x\n[lie H]\nbasis = y\n").message().find("duplicate"), std::string::npos);
  EXPECT_NE(parse_error("[phin U]\nlie = H\nphi = [1]\n").message().find("no lie section"), std::string::npos);
  InputError dims = parse_error("[lie H]\nbasis = x y\n[phin U]\nlie = H\nphi = [1 0 0; 0 1 0]\n");
  EXPECT_EQ(dims.line(), 5u);
  EXPECT_NE(dims.message().find("expected 2x2"), std::string::npos);
  EXPECT_NE(parse_error("[widget W]\n").message().find("unknown section kind"), std::string::npos);
  EXPECT_NE(parse_error("[lie H]\nbasis = x\nbracket = x\n").message().find("i j k"), std::string::npos);
}

TEST(Parse, InvariantFailuresAreRecorded) {
  Model m = load_model("[lie L]\nbasis = x y\nbracket = x y y 1\n[phin U]\nlie = L\nphi = [1 0; 0 1]\n");
  ASSERT_EQ(m.status.size(), 2u);
  EXPECT_FALSE(m.status[0].valid);
  EXPECT_FALSE(m.status[1].valid);
  EXPECT_NE(m.status[1].violation.find("depends on invalid"), std::string::npos);

  std::string bad = scratch("nonnilpotent.alg", "[lie L]\nbasis = x y\nbracket = x y y 1\n");
  CommandOutput v = run("validate", bad);
  EXPECT_EQ(v.exit_code, kExitNegative);
  EXPECT_NE(v.out.find("valid: no"), std::string::npos);

  std::string jacobi = scratch("jacobi.alg", "[lie L]\nbasis = a b c\nbracket = a b c 1\nbracket = b c a 1\n");
  EXPECT_EQ(run("validate", jacobi).exit_code, kExitNegative);
}

TEST(Parse, CorpusParsesValidatesAndRoundTrips) {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(COHW_CORPUS_DIR)) {
    if (entry.path().extension() != ".alg") continue;
    ++files;
    std::string text = slurp(entry.path().string());
    Document d = parse_document(text);
    Document again = parse_document(format_document(d));
    EXPECT_TRUE(same_content(d, again)) << entry.path();
    EXPECT_EQ(format_document(again), format_document(d));
    CommandOutput v = run("validate", entry.path().string());
    EXPECT_EQ(v.exit_code, kExitSuccess) << entry.path() << "\n" << v.out << v.err;
  }
  EXPECT_GE(files, 8);
}

TEST(Parse, HeisenbergHasClassTwo) {
  Model m = load_model(slurp(corpus("heisenberg.alg")));
  EXPECT_EQ(m.lies.at("H")->nilpotency_class(), 2);
  CommandOutput v = run("validate", corpus("heisenberg.alg"));
  EXPECT_NE(v.out.find("class: 2"), std::string::npos);
}

TEST(Commands, DocumentedExamples) {
  CommandOutput pi = run("pi", corpus("s3_double_coset.alg"), [](CommandRequest& r) { r.degree = 1; });
  EXPECT_EQ(pi.exit_code, kExitSuccess) << pi.err;
  EXPECT_NE(pi.out.find("pi1 classes: 2"), std::string::npos) << pi.out;

  CommandOutput les = run("phin-les", corpus("heisenberg_isocrystal.alg"));
  EXPECT_EQ(les.exit_code, kExitSuccess) << les.err;
  EXPECT_NE(les.out.find("middle map bijective: yes; H1_{g/e}(Z) dim 1"), std::string::npos) << les.out;

  CommandOutput h = run("hodge-classify", corpus("heisenberg_mhs.alg"), [](CommandRequest& r) { r.element = "0,0,1+2i"; });
  EXPECT_EQ(h.exit_code, kExitSuccess) << h.err;
  EXPECT_NE(h.out.find("normal form: 0+0*i, 0+0*i, 0+2*i"), std::string::npos) << h.out;
  EXPECT_NE(h.out.find("normal form imaginary parts: 0, 0, 2"), std::string::npos);
}

TEST(Commands, OtherCommands) {
  CommandOutput pi0 = run("pi", corpus("s3_double_coset.alg"));
  EXPECT_NE(pi0.out.find("pi0 order: 1"), std::string::npos);
  CommandOutput two = run("pi", corpus("two_term.alg"), [](CommandRequest& r) { r.degree = 1; });
  EXPECT_NE(two.out.find("pi1 dim: 1"), std::string::npos) << two.out;
  EXPECT_EQ(run("pi", corpus("two_term.alg"), [](CommandRequest& r) { r.degree = 5; }).exit_code, kExitInput);

  CommandOutput h1 = run("h1", corpus("d4_by_c2.alg"));
  EXPECT_EQ(h1.exit_code, kExitSuccess) << h1.err;
  EXPECT_NE(h1.out.find("H1 classes: 4"), std::string::npos) << h1.out;
  EXPECT_NE(h1.out.find("exact: yes"), std::string::npos);
  EXPECT_EQ(run("h1", corpus("heisenberg_c2.alg")).exit_code, kExitSuccess);

  CommandOutput tate = run("phin-classify", corpus("tate.alg"));
  EXPECT_NE(tate.out.find("pi dims: 0, 1, 1"), std::string::npos) << tate.out;
  EXPECT_EQ(run("hodge-les", corpus("heisenberg_mhs.alg")).exit_code, kExitSuccess);
  EXPECT_EQ(run("hodge-les", corpus("pure_weight.alg")).exit_code, kExitInput);
  EXPECT_EQ(run("hodge-classify", corpus("heisenberg_mhs.alg"), [](CommandRequest& r) { r.element = "1,2"; }).exit_code, kExitInput);
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(run("validate", "/nonexistent/file.alg").exit_code, kExitInput);
  EXPECT_EQ(run("validate", scratch("empty.alg", "")).exit_code, kExitInput);
  CommandOutput unknown = run("verify", "", [](CommandRequest& r) { r.suite = "no-such-suite"; });
  EXPECT_EQ(unknown.exit_code, kExitInput);
  // phi = 1 with N = 1 violates N phi = p phi N.
  std::string bad = scratch("badphin.alg", "[lie T]\nbasis = t\n[phin U]\nlie = T\nphi = [1]\nN = [1]\n");
  EXPECT_EQ(run("phin-classify", bad).exit_code, kExitNegative);
  EXPECT_EQ(run("validate", bad).exit_code, kExitNegative);
}

TEST(Commands, JsonUsesTheSameFieldNames) {
  CommandOutput j = run("pi", corpus("s3_double_coset.alg"), [](CommandRequest& r) {
    r.degree = 1;
    r.json = true;
  });
  auto tree = nlohmann::json::parse(j.out);
  EXPECT_EQ(tree["pi1 classes"], 2);
  EXPECT_EQ(tree["command"], "pi");
  EXPECT_EQ(tree["input"]["fnv1a64"].get<std::string>().size(), 16u);
}

TEST(Commands, ReportsAreDeterministic) {
  for (const char* file : {"heisenberg_isocrystal.alg", "heisenberg_mhs.alg"}) {
    std::string cmd = std::string(file) == "heisenberg_mhs.alg" ? "hodge-les" : "phin-les";
    EXPECT_EQ(run(cmd, corpus(file)).out, run(cmd, corpus(file)).out);
  }
}

TEST(Verify, SuitesPass) {
  CommandOutput bch = run("verify", "", [](CommandRequest& r) {
    r.suite = "bch";
    r.seed = 7;
    r.instances = 1000;
  });
  EXPECT_EQ(bch.exit_code, kExitSuccess) << bch.out;
  EXPECT_NE(bch.out.find("instances: 1000"), std::string::npos);
  EXPECT_NE(bch.out.find("result: pass"), std::string::npos);

  CommandOutput dk = run("verify", "", [](CommandRequest& r) { r.suite = "dold-kan"; });
  EXPECT_EQ(dk.exit_code, kExitSuccess);
  EXPECT_NE(dk.out.find("instances: 100"), std::string::npos);
}
