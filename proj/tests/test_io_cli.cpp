#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wcx/cli.hpp"
#include "wcx/io.hpp"
#include "wcx/random.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wcx;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = WCX_FIXTURE_DIR;

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string fx(const std::string& name) { return (kFixtures / name).string(); }

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("wcx_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

// text between BEGIN name and END name
std::string block(const std::string& out, const std::string& name) {
  const std::string b = "BEGIN " + name + "\n", e = "END " + name + "\n";
  const size_t i = out.find(b);
  const size_t j = out.find(e, i);
  REQUIRE(i != std::string::npos);
  REQUIRE(j != std::string::npos);
  return out.substr(i + b.size(), j - i - b.size());
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("every fixture round-trips byte-exactly") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    const std::string name = entry.path().filename().string();
    if (name == "expr_bad_codim.json") continue;
    const std::string text = read_text_file(entry.path().string());
    INFO(name);
    std::string again;
    if (name.starts_with("complex_")) {
      again = std::visit([](const auto& c) { return serialize_complex(c); }, parse_complex(text));
    } else if (name.starts_with("map_")) {
      again = std::visit([](const auto& f) { return serialize_chain_map(f); }, parse_chain_map(text));
    } else if (name.starts_with("square_")) {
      again = serialize_square(parse_square(text));
    } else {
      again = serialize_expr(parse_expr(text));
    }
    CHECK(again == text);
    ++count;
  }
  CHECK(count >= 20);
}

TEST_CASE("complex parsing examples") {
  const auto z = parse_complex(R"({"instance":"tate","terms":{},"diffs":{}})");
  CHECK(std::get<Complex<Rational>>(z).is_zero());
  const auto c = std::get<Complex<Rational>>(parse_complex(read_text_file(fx("complex_q_rational.json"))));
  CHECK(c.d(0)(0, 0) == Rational(3, 2));
  CHECK(c.d(0)(1, 0) == Rational(-1, 3));
  CHECK(c.d(1)(0, 0) == Rational(2, 9));
  const auto zc = parse_complex(read_text_file(fx("complex_z_two.json")));
  CHECK(std::holds_alternative<Complex<Integer>>(zc));
}

TEST_CASE("random complexes round-trip") {
  const std::vector<Instance> insts{Instance::rationals(), Instance::tate(),
                                    Instance::algebra(Algebra::dual_numbers())};
  for (int i = 0; i < 30; ++i) {
    Rng rng = Rng::derive(41, 0, i);
    const auto c = random_complex<Rational>(insts[i % 3], rng);
    const std::string text = serialize_complex(c);
    CHECK(std::get<Complex<Rational>>(parse_complex(text)) == c);
    CHECK(std::visit([](const auto& x) { return serialize_complex(x); }, parse_complex(text)) == text);
    const auto d = random_complex<Rational>(insts[i % 3], rng);
    const auto f = random_chain_map(c, d, rng);
    CHECK(std::get<ChainMap<Rational>>(parse_chain_map(serialize_chain_map(f))) == f);
    const VarietyExpr e = random_expr(rng);
    CHECK(parse_expr(serialize_expr(e)) == e);
    CHECK(serialize_expr(parse_expr(serialize_expr(e))) == serialize_expr(e));
  }
  for (int i = 0; i < 10; ++i) {
    Rng rng = Rng::derive(41, 1, i);
    const auto c = random_complex<Integer>(Instance::integers(), rng);
    CHECK(std::get<Complex<Integer>>(parse_complex(serialize_complex(c))) == c);
  }
}

TEST_CASE("parse errors name the field") {
  CHECK(message_of([] { parse_complex(R"({"instance":"q","terms":{"0":1,"1":1},"diffs":{"0":[["x"]]}})"); })
            .find("$.diffs.0[0][0]") != std::string::npos);
  CHECK(message_of([] { parse_complex(R"({"instance":"w","terms":{},"diffs":{}})"); }).find("$.instance") !=
        std::string::npos);
  CHECK(message_of([] { parse_complex("{\n  \"instance\": \"q\",\n  \"terms\": {\n}"); }).find("line") !=
        std::string::npos);
  CHECK(message_of([] { parse_complex(R"({"instance":"q","terms":{"a":1},"diffs":{}})"); }).find("$.terms") !=
        std::string::npos);
  CHECK(message_of([] { parse_expr(R"({"op":"proj"})"); }).find("n") != std::string::npos);
  CHECK_THROWS_AS(parse_complex(R"({"instance":"q","terms":{"0":1},"diffs":{"0":[["1/0"]]}})"), ParseError);
  CHECK_THROWS_AS(parse_complex(R"({"instance":"q","terms":{"0":[1]},"diffs":{}})"), ParseError);
  CHECK_THROWS_AS(parse_complex(R"({"instance":"z","terms":{"0":1,"1":1},"diffs":{"0":[["1/2"]]}})"), ParseError);
  CHECK_THROWS_AS(parse_expr(read_text_file(fx("expr_bad_codim.json"))), MalformedExpr);
  CHECK(message_of([] { parse_complex(R"({"instance":"q","terms":{"0":2,"1":1},"diffs":{"0":[["1"]]}})"); })
            .find("$.diffs.0[0]") != std::string::npos);
}

TEST_CASE("cli golden outputs") {
  CHECK(run({"chi", fx("proj2.json")}).out == "1 + 1*L^1 + 1*L^2\n");
  CHECK(run({"chi-dual", fx("proj2.json")}).out == "1*L^-2 + 1*L^-1 + 1\n");
  CHECK(run({"chi-dual", "--s", "1", fx("proj2.json")}).out == "1*L^-1 + 1 + 1*L^1\n");
  CHECK(run({"chi", fx("expr_blowup_p2.json")}).out == "1 + 2*L^1 + 1*L^2\n");
  CHECK(run({"chi", fx("expr_toric_p2.json")}).out == "1 + 1*L^1 + 1*L^2\n");
  CHECK(run({"chi", fx("expr_torus1.json")}).out == "-1 + 1*L^1\n");
  CHECK(run({"windows", fx("expr_torus1.json")}).out == "DIM: 1\nFORWARD: [0, 1]\nDUAL: [-1, 0]\n");
  CHECK(run({"windows", fx("proj2.json")}).out == "DIM: 2\nFORWARD: [0, 0]\nDUAL: [0, 0]\n");
  CHECK(run({"validate", fx("complex_q_rational.json")}).out == "INSTANCE: q\nVALID: true\nSUPPORT: {0, 1, 2}\n");
  CHECK(run({"hom", "--cat", "K", fx("complex_dual_eps.json"), fx("complex_dual_eps.json")}).out ==
        "CATEGORY: K\nFREE_RANK: 2\nINVARIANT_FACTORS: []\nGENERATORS: 2\n");
  CHECK(run({"hom", "--cat", "QK", fx("complex_dual_eps.json"), fx("complex_dual_eps.json")}).out ==
        "CATEGORY: QK\nFREE_RANK: 1\nINVARIANT_FACTORS: []\nGENERATORS: 1\n");
  CHECK(run({"hom", "--cat", "K", fx("complex_z_two.json"), fx("complex_z_two.json")}).rc == kOk);

  const Run sq = run({"check-square", fx("square_blowup.json")});
  CHECK(sq.rc == kOk);
  CHECK(sq.out ==
        "KIND: cdh\nCHI_X: 1 + 1*L^1 + 1*L^2\nCHI_A: 1\nCHI_B: 1 + 2*L^1 + 1*L^2\nCHI_Y: 1 + 1*L^1\nRESULT: pass\n");
  CHECK(run({"check-square", fx("square_nisnevich.json")}).rc == kOk);
  CHECK(run({"check-square", fx("square_trivial.json")}).rc == kOk);

  const Run m = run({"minimize", fx("complex_z_hidden_unit.json")});
  CHECK(m.rc == kOk);
  CHECK(m.out.starts_with("SUPPORT: {0, 1}\nMINIMAL_SUPPORT: {0}\nFIELD_MINIMAL: true\nEQUIVALENCE: verified\n"));
  CHECK(std::get<Complex<Integer>>(parse_complex(block(m.out, "MINIMAL"))).support() == std::set<int>{0});

  const Run w = run({"weight-complex", fx("complex_dual_chain.json")});
  CHECK(w.rc == kOk);
  CHECK(w.out.starts_with("WINDOW: [0, 1]\nSUPPORT: {-1, 0}\nSIGN_LAW: verified\nEQUIVALENCE: verified\nEULER: 0\n"));

  const Run t = run({"truncate", "--n", "-1", fx("complex_dual_eps.json")});
  CHECK(t.rc == kOk);
  CHECK(t.out.starts_with("N: -1\nWINDOW: [-1, 0]\nLOW_SUPPORT: {1}\nHIGH_SUPPORT: {0}\nCERTIFIED: true\n"));
  const auto low = std::get<Complex<Rational>>(parse_complex(block(t.out, "LOW")));
  CHECK(low.support() == std::set<int>{1});
}

TEST_CASE("every complex fixture runs through the pipeline") {
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    const std::string name = entry.path().filename().string();
    if (!name.starts_with("complex_") || name == "complex_q_invalid.json") continue;
    INFO(name);
    CHECK(run({"validate", entry.path().string()}).rc == kOk);
    CHECK(run({"minimize", entry.path().string()}).rc == kOk);
    CHECK(run({"weight-complex", entry.path().string()}).rc == kOk);
    for (int n = -2; n <= 1; ++n) CHECK(run({"truncate", "--n", std::to_string(n), entry.path().string()}).rc == kOk);
  }
}

TEST_CASE("exit codes") {
  const Run bad = run({"validate", fx("complex_q_invalid.json")});
  CHECK(bad.rc == kCheckFailed);
  CHECK(bad.out.find("VALID: false\n") != std::string::npos);
  CHECK(bad.out.find("FAILING_DEGREE: 0\n") != std::string::npos);
  // the dumped counterexample re-parses and fails again on its own
  const std::string again = write_temp("counterexample.json", block(bad.out, "COUNTEREXAMPLE"));
  CHECK(run({"validate", again}).rc == kCheckFailed);

  CHECK(run({"chi", fx("expr_bad_codim.json")}).rc == kInputError);
  CHECK_FALSE(run({"chi", fx("expr_bad_codim.json")}).err.empty());
  CHECK(run({"validate", fx("does_not_exist.json")}).rc == kInputError);
  CHECK(run({}).rc == kInputError);
  CHECK(run({"bogus"}).rc == kInputError);
  CHECK(run({"hom", "--cat", "X", fx("complex_q_unit.json"), fx("complex_q_unit.json")}).rc == kInputError);
  const Run mis = run({"hom", fx("complex_dual_eps.json"), fx("complex_q_unit.json")});
  CHECK(mis.rc == kInputError);
  CHECK(mis.err.find("instance mismatch") != std::string::npos);
  CHECK(run({"hom", fx("complex_q_unit.json"), fx("complex_z_two.json")}).rc == kInputError);
  CHECK(run({"minimize", fx("complex_q_invalid.json")}).rc == kInputError);
  const std::string syntax = write_temp("syntax.json", "{\n  \"instance\": \"q\",\n  \"terms\": [\n");
  const Run se = run({"validate", syntax});
  CHECK(se.rc == kInputError);
  CHECK(se.err.find("line") != std::string::npos);
  CHECK(run({"verify-axioms", "--instance", "nope"}).rc == kInputError);

  // a square whose additivity fails: exit 1, and the dump re-fails
  const std::string wrong = R"({"kind":"cdh","x":{"op":"proj","n":2},"a":{"op":"point"},"b":{"op":"proj","n":2},"y":{"op":"proj","n":1}})";
  const Run ws = run({"check-square", write_temp("wrong_square.json", wrong)});
  CHECK(ws.rc == kCheckFailed);
  CHECK(ws.out.find("RESULT: fail\n") != std::string::npos);
  CHECK(run({"check-square", write_temp("wrong_square_dump.json", block(ws.out, "SQUARE"))}).rc == kCheckFailed);
}

TEST_CASE("verify-axioms is deterministic") {
  for (const std::string inst : {"q", "tate", "algebra", "z"}) {
    const std::vector<std::string> args{"verify-axioms", "--instance", inst, "--samples", "15", "--seed", "7"};
    const Run a = run(args), b = run(args);
    CHECK(a.rc == kOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("RESULT: pass\n") != std::string::npos);
    CHECK(a.out.find("PASSED_SP4: 15\n") != std::string::npos);
  }
  const Run one = run({"verify-axioms", "--instance", "tate", "--seed", "7", "--sample", "3"});
  CHECK(one.rc == kOk);
  CHECK(one.out.find("SAMPLES: 1\n") != std::string::npos);
}
