// Black-box tests of the knop executable.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path kData = KNOP_TEST_DATA;
const std::string kBinary = KNOP_BINARY;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("knop-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Result knop(const std::string& args, const std::string& env = "") {
  const auto out = scratch() / "stdout";
  const auto err = scratch() / "stderr";
  const std::string cmd = env + (env.empty() ? "" : " ") + quote(kBinary) +
                          " " + args + " >" + quote(out.string()) + " 2>" +
                          quote(err.string());
  const int raw = std::system(cmd.c_str());
  Result r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string golden(const std::string& name) {
  return quote((kData / "golden" / name).string());
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(knop("--help").status == 0);
  CHECK(knop("generate --help").status == 0);
  CHECK(knop("").status == 2);
  CHECK(knop("frobnicate").status == 2);
  CHECK(knop("generate").status == 2);
  CHECK(knop("generate --model sl3-torus").status == 2);
  CHECK(knop("validate --bogus " + golden("sl2-torus.json")).status == 2);
  CHECK(knop("validate").status == 2);
  CHECK(knop("export " + golden("sl2-torus.json")).status == 2);
  CHECK(knop("export --format svg " + golden("sl2-torus.json")).status == 2);

  const auto r = knop("generate --model weak-order");
  CHECK(r.status == 2);
  CHECK(r.err.find("--cartan") != std::string::npos);
  CHECK(knop("generate --model product").status == 2);
  CHECK(knop("validate " + golden("sl2-torus.json"), "KNOP_ELEMENT_BOUND=abc")
            .status == 2);
}

TEST_CASE("I/O errors") {
  CHECK(knop("validate /nonexistent/system.json").status == 3);
  CHECK(knop("generate --model weak-order --cartan /nonexistent.json").status == 3);
  CHECK(knop("generate --model sl2-torus -o /nonexistent/dir/out.json").status == 3);
}

TEST_CASE("malformed documents exit 1 with a classified message") {
  for (const auto& entry : fs::directory_iterator(kData / "malformed")) {
    const auto stem = entry.path().stem().string();
    CAPTURE(stem);
    const auto cls = stem.substr(0, stem.find("__"));
    const auto r = knop("validate " + quote(entry.path().string()));
    CHECK(r.status == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find(cls + " error") != std::string::npos);
  }
}

TEST_CASE("generate reproduces the golden corpus") {
  const auto cartan = [](const char* t) {
    return quote((kData / "cartan" / (std::string(t) + ".json")).string());
  };
  CHECK(knop("generate --model sl2-torus").out == slurp(kData / "golden" / "sl2-torus.json"));
  CHECK(knop("generate --model sl2-ntorus").out == slurp(kData / "golden" / "sl2-ntorus.json"));
  CHECK(knop("generate --model sl2-borel").out == slurp(kData / "golden" / "sl2-borel.json"));
  for (const char* t : {"A1", "A2", "A3", "B2", "B3", "G2"}) {
    CAPTURE(t);
    const auto w = knop(std::string("generate --model weak-order --cartan ") + cartan(t));
    CHECK(w.status == 0);
    CHECK(w.out == slurp(kData / "golden" / ("weak-order-" + std::string(t) + ".json")));
    const auto g = knop(std::string("generate --model group-case --cartan ") + cartan(t));
    CHECK(g.out == slurp(kData / "golden" / ("group-case-" + std::string(t) + ".json")));
  }
  const auto p = knop("generate --model product --factors " + golden("sl2-torus.json") +
                      " " + golden("sl2-ntorus.json") + " " + golden("sl2-borel.json"));
  CHECK(p.status == 0);
  CHECK(p.out == slurp(kData / "golden" / "product-torus-ntorus-borel.json"));

  // a full system document works as a Cartan source too
  const auto again =
      knop("generate --model weak-order --cartan " + golden("weak-order-B2.json"));
  CHECK(again.out == slurp(kData / "golden" / "weak-order-B2.json"));

  CHECK(knop("generate --model weak-order --cartan " +
             quote((kData / "cartan" / "affine-A2.json").string()))
            .status == 1);
}

TEST_CASE("output files match stdout and runs are deterministic") {
  const auto target = scratch() / "out.json";
  const auto a = knop("report " + golden("product-torus-borel.json"));
  const auto b = knop("report " + golden("product-torus-borel.json") + " -o " +
                      quote(target.string()));
  CHECK(a.status == 0);
  CHECK(b.status == 0);
  CHECK(b.out.empty());
  CHECK(slurp(target) == a.out);
  CHECK(knop("report " + golden("product-torus-borel.json")).out == a.out);
}

TEST_CASE("validate") {
  const auto ok = knop("validate " + golden("group-case-A2.json"));
  CHECK(ok.status == 0);
  CHECK(ok.out.find("\"ok\": true") != std::string::npos);
  CHECK(ok.out.find("\"R5\"") != std::string::npos);  // not checked: no rho

  for (const auto& entry : fs::directory_iterator(kData / "invalid")) {
    const auto stem = entry.path().stem().string();
    CAPTURE(stem);
    const auto rule = stem.substr(0, stem.find("__"));
    const auto r = knop("validate " + quote(entry.path().string()));
    CHECK(r.status == 1);
    CHECK(r.out.find("\"rule\": \"" + rule + "\"") != std::string::npos);
    // commands that need a valid system print the same report
    const auto act = knop("act " + quote(entry.path().string()));
    CHECK(act.status == 1);
    CHECK(act.out == r.out);
    CHECK(knop("orbits " + quote(entry.path().string())).status == 1);
    CHECK(knop("report " + quote(entry.path().string())).status == 1);
    CHECK(knop("export --format dot --with-report " + quote(entry.path().string()))
              .status == 1);
    // plain export draws whatever is there
    CHECK(knop("export --format dot " + quote(entry.path().string())).status == 0);
  }
}

TEST_CASE("act, orbits, report and export on golden systems") {
  const fs::path reports = kData / "golden" / "reports";
  CHECK(knop("act " + golden("sl2-torus.json")).out ==
        slurp(reports / "sl2-torus.act.json"));
  CHECK(knop("orbits " + golden("product-ntorus-torus.json")).out ==
        slurp(reports / "product-ntorus-torus.orbits.json"));
  for (const char* m : {"sl2-torus", "sl2-ntorus", "sl2-borel", "weak-order-A2",
                        "product-torus-borel"}) {
    CAPTURE(m);
    const auto r = knop("report " + golden(std::string(m) + ".json"));
    CHECK(r.status == 0);
    CHECK(r.out == slurp(reports / (std::string(m) + ".json")));
  }
  CHECK(knop("export --format dot --with-report " + golden("sl2-torus.json")).out ==
        slurp(reports / "sl2-torus.dot"));
}

TEST_CASE("strict reports fail on not-checked verdicts") {
  // H = N(T) is disconnected, so the minimal-rank count is not compared
  const auto loose = knop("report " + golden("sl2-ntorus.json"));
  CHECK(loose.status == 0);
  CHECK(loose.err.find("minimal_rank: not-checked") != std::string::npos);
  CHECK(knop("report --strict " + golden("sl2-ntorus.json")).status == 1);
  CHECK(knop("report --strict " + golden("sl2-torus.json")).status == 0);
}

TEST_CASE("element bound from the environment") {
  const auto cartan = quote((kData / "cartan" / "A3.json").string());
  const auto r = knop("generate --model weak-order --cartan " + cartan,
                      "KNOP_ELEMENT_BOUND=10");
  CHECK(r.status == 1);
  CHECK(r.err.find("10") != std::string::npos);
  CHECK(knop("generate --model weak-order --cartan " + cartan,
             "KNOP_ELEMENT_BOUND=24")
            .status == 0);
}
