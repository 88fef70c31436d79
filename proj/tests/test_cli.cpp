#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "gould/commands.hpp"
#include "gould/document.hpp"
#include "gould/generate.hpp"
#include "support/generators.hpp"

using namespace gould;
using namespace gould::testsupport;

namespace {

const char* kPaperDoc =
    "# three-point example\n"
    "space a b c\n"
    "measure m { {a,b,c} = 2 {a,b} = 1 {c} = 1 default = 0 }\n"
    "function f dim 1 { a = (1) b = (2) c = (3) }\n";

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& text, const char* name) {
  std::string path = std::string("/tmp/gould_test_") + name + ".doc";
  std::FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f);
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
  return path;
}

} // namespace

TEST_CASE("parsing the paper document") {
  Document doc = parse_document(kPaperDoc);
  CHECK(doc.universe->point_count() == 3);
  const SetFunction& m = doc.measure("m");
  CHECK(m.at_mask(7) == 2);
  CHECK(m.at_mask(3) == 1);
  CHECK(m.at_mask(4) == 1);
  CHECK(m.at_mask(5) == 0);
  const VecFunction& f = doc.function("f");
  CHECK(f.at(2) == RatVec{3});
}

TEST_CASE("default-only measure is the zero set function") {
  Document doc = parse_document("space a b c\nmeasure m { default = 0 }\n");
  for (Mask b = 0; b <= 7; ++b) CHECK(doc.measure("m").at_mask(b) == 0);
}

TEST_CASE("undeclared labels are rejected with their location") {
  try {
    parse_document("space a b c\nmeasure m { {a,x} = 1 default = 0 }\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("'x'") != std::string::npos);
  }
}

TEST_CASE("parser rejects malformed and invalid input") {
  CHECK_THROWS_AS(parse_document(""), ParseError);
  CHECK_THROWS_AS(parse_document("space\n"), ParseError);
  CHECK_THROWS_AS(parse_document("space a a\n"), ParseError);
  CHECK_THROWS_AS(parse_document("space a\nmeasure m { {a} = 1 }\n"), ParseError);
  CHECK_THROWS_AS(parse_document("space a\nmeasure m { {} = 1 default = 0 }\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_document("space a\nmeasure m { {a} = -1 default = 0 }\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_document("space a\nmeasure m { {a} = 1/0 default = 0 }\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_document("space a b\nblocks {a}\n"), ParseError);
  CHECK_THROWS_AS(
      parse_document("space a\nfunction f dim 2 { a = (1) }\n"), ParseError);
  CHECK_THROWS_AS(parse_document("space a b\nfunction f dim 1 { a = (1) }\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_document("space a\nvmeasure v dim 1 { {a} = (1) default = (2) }\n"),
      ParseError);
  // nonzero default without pinning the empty set
  CHECK_THROWS_AS(parse_document("space a\nmeasure m { default = 3 }\n"),
                  ParseError);
}

TEST_CASE("block algebras parse and restrict the sets") {
  Document doc = parse_document(
      "space a b c\nblocks {a,b} {c}\nmeasure m { {a,b} = 1 default = 0 }\n");
  CHECK(doc.universe->block_count() == 2);
  CHECK_THROWS_AS(
      parse_document("space a b c\nblocks {a,b} {c}\nmeasure m { {a} = 1 default = 0 }\n"),
      ParseError);
}

TEST_CASE("print-parse round trip") {
  SplitMix64 rng(71);
  for (int i = 0; i < 20; ++i) {
    GeneratorSpec spec;
    spec.seed = rng.next();
    spec.points = 1 + rng.below(6);
    spec.carriers = 1 + rng.below(spec.points);
    spec.kind = static_cast<GenKind>(rng.below(3));
    spec.dim = 1 + rng.below(3);
    Document doc = generate(spec);
    Document back = parse_document(print_document(doc));
    CHECK(documents_equal(doc, back));
    CHECK(print_document(doc) == print_document(back));
  }
  // block universes round-trip too
  Document doc = parse_document(
      "space a b c\nblocks {a,b} {c}\nmeasure m { {a,b} = 1 {a,b,c} = 1 default = 0 }\n"
      "function f dim 2 { a = (1,0) b = (1,0) c = (0,-1/2) }\n"
      "vmeasure v dim 1 { {c} = (2) default = (0) }\n");
  Document back = parse_document(print_document(doc));
  CHECK(documents_equal(doc, back));
}

TEST_CASE("generator is deterministic and self-checked") {
  GeneratorSpec spec;
  spec.seed = 12345;
  spec.points = 6;
  spec.carriers = 3;
  spec.kind = GenKind::square;
  spec.dim = 2;
  Document a = generate(spec);
  Document b = generate(spec);
  CHECK(print_document(a) == print_document(b));
  CHECK(check_property(a.measure("m"), Property::monotone).holds);
  CHECK(check_property(a.measure("m"), Property::null_additive).holds);
  CHECK(decompose(a.measure("m")).has_value());

  spec.kind = GenKind::additive;
  Document c = generate(spec);
  CHECK(print_document(a) != print_document(c));

  GeneratorSpec bad;
  bad.carriers = 0;
  CHECK_THROWS_AS(generate(bad), ValidationError);
}

TEST_CASE("square kind is non-additive but null-additive and monotone") {
  // two carriers with weight 1: m(T) = 4 but the cells sum to 2
  Universe u = letters(2);
  SetFunction m = carrier_measure(u, {0, 1}, {1, 1}, CarrierKind::square);
  CHECK(m.at_mask(3) == 4);
  CHECK(m.at_mask(1) + m.at_mask(2) == 2);
  CHECK(!check_property(m, Property::finitely_additive).holds);
  CHECK(check_property(m, Property::monotone).holds);
  CHECK(check_property(m, Property::null_additive).holds);
}

TEST_CASE("cli: check reports the monotonicity witness with exit 1") {
  const std::string path = write_temp(kPaperDoc, "paper");
  RunResult r = run({"check", path, "--object", "m", "--property", "monotone"});
  CHECK(r.code == 1);
  CHECK(r.out.find("property monotone: false") != std::string::npos);
  CHECK(r.out.find("{c} {a,c}") != std::string::npos);

  RunResult ok = run({"check", path, "--object", "m", "--property", "null_continuous"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("note:") != std::string::npos);
}

TEST_CASE("cli: gould prints the exact value with exit 0") {
  const std::string path = write_temp(kPaperDoc, "paper2");
  RunResult r = run({"gould", path, "--measure", "m", "--function", "f"});
  CHECK(r.code == 0);
  CHECK(r.out == "integrable: true\nvalue: (3)\n");

  RunResult v = run({"variation", path, "--object", "m"});
  CHECK(v.code == 0);
  CHECK(v.out == "variation {a,b,c} = 2\n");

  RunResult d = run({"decompose", path, "--object", "m"});
  CHECK(d.code == 0);
  CHECK(d.out == "decomposition {{a,b},{c}}\n");

  RunResult at = run({"atoms", path, "--object", "m"});
  CHECK(at.code == 0);
  CHECK(at.out == "atom {a,b} m = 1\natom {c} m = 1\n");
}

TEST_CASE("cli: non-integrable instances exit 1 with a witness") {
  const std::string path = write_temp(
      "space a b\nblocks {a,b}\nmeasure m { {a,b} = 1 default = 0 }\n"
      "function f dim 1 { a = (0) b = (1) }\n",
      "nonint");
  RunResult r = run({"gould", path, "--measure", "m", "--function", "f"});
  CHECK(r.code == 1);
  CHECK(r.out.find("integrable: false") != std::string::npos);
  CHECK(r.out.find("witness: block {a,b} mass 1") != std::string::npos);
}

TEST_CASE("cli: rn verifies the carrier example") {
  const std::string path = write_temp(
      "space a b\nmeasure m { {a} = 1 {a,b} = 1 default = 0 }\n"
      "vmeasure mu dim 1 { {a} = (3) {a,b} = (3) default = (0) }\n",
      "rn");
  RunResult r = run({"rn", path, "--measure", "m", "--vmeasure", "mu", "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("atoms {{a,b}}") != std::string::npos);
  CHECK(r.out.find("f a = (3)") != std::string::npos);
  CHECK(r.out.find("f b = (3)") != std::string::npos);
  CHECK(r.out.find("verified: true") != std::string::npos);
  CHECK(r.out.find("integral {a} = (3)") != std::string::npos);
}

TEST_CASE("cli: usage and input errors exit 2") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check", "/nonexistent.doc", "--object", "m", "--property",
             "monotone"}).code == 2);
  CHECK(run({"check"}).code == 2);  // missing arguments
  const std::string bad = write_temp("space a b c\nmeasure m { {a,x} = 1 default = 0 }\n",
                                     "bad");
  RunResult r = run({"check", bad, "--object", "m", "--property", "monotone"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  const std::string paper = write_temp(kPaperDoc, "paper3");
  CHECK(run({"check", paper, "--object", "nope", "--property", "monotone"}).code == 2);
  CHECK(run({"check", paper, "--object", "m", "--property", "nope"}).code == 2);
  // hypothesis violations are input errors
  CHECK(run({"locate-point", paper, "--object", "m", "--on", "{a,b}"}).code == 2);
}

TEST_CASE("cli: gen output is byte-identical across runs and parses back") {
  RunResult a = run({"gen", "--seed", "7", "--points", "5", "--carriers", "2",
                     "--kind", "max", "--dim", "2"});
  RunResult b = run({"gen", "--seed", "7", "--points", "5", "--carriers", "2",
                     "--kind", "max", "--dim", "2"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Document doc = parse_document(a.out);
  CHECK(doc.measures.count("m") == 1);
  CHECK(doc.functions.count("f") == 1);
  CHECK(doc.vmeasures.count("mu") == 1);
}

TEST_CASE("cli: simulate-net output is byte-identical per seed") {
  const std::string path = write_temp(kPaperDoc, "paper4");
  std::vector<std::string> args{"simulate-net", path,      "--measure", "m",
                                "--function",   "f",       "--chains",  "3",
                                "--depth",      "4",       "--seed",    "42"};
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("integrable: true") != std::string::npos);
  CHECK(a.out.find("integral: (3)") != std::string::npos);
}

TEST_CASE("cli: --out writes the report to a file") {
  const std::string path = write_temp(kPaperDoc, "paper5");
  const std::string out_path = "/tmp/gould_test_report.txt";
  std::remove(out_path.c_str());
  RunResult r = run({"variation", path, "--object", "m", "--out", out_path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::FILE* f = std::fopen(out_path.c_str(), "r");
  REQUIRE(f);
  char buf[128] = {};
  const std::size_t got = std::fread(buf, 1, sizeof(buf) - 1, f);
  std::fclose(f);
  CHECK(std::string(buf, got) == "variation {a,b,c} = 2\n");
}

TEST_CASE("cli binary wiring matches the in-process driver") {
  const std::string path = write_temp(kPaperDoc, "paper6");
  const std::string cmd = std::string(GOULD_CLI_PATH) + " variation " + path +
                          " --object m 2>/dev/null";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[128] = {};
  const std::size_t got = std::fread(buf, 1, sizeof(buf) - 1, pipe);
  const int status = pclose(pipe);
  CHECK(status == 0);
  CHECK(std::string(buf, got) == "variation {a,b,c} = 2\n");
}
