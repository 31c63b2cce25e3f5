#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CLI_BINARY_PATH
#error "CLI_BINARY_PATH must point at the goodpair executable"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

// One scratch directory per test process; names stay short and unique.
const std::string& scratch_dir() {
  static std::string dir = [] {
    std::string tmpl = "/tmp/goodpair_cli_XXXXXX";
    char* made = mkdtemp(tmpl.data());
    REQUIRE(made != nullptr);
    return std::string(made);
  }();
  return dir;
}

std::string scratch(const std::string& name) { return scratch_dir() + "/" + name; }

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = scratch("stdout.tmp");
  const std::string err_path = scratch("stderr.tmp");
  const std::string cmd = env + (env.empty() ? "" : " ") + CLI_BINARY_PATH + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

const char* kM24 = R"({"l": 2, "n": 4, "entries": [["z1", "z2"], ["-z1"]]})";
const char* kM37 = R"({
  "l": 3, "n": 7,
  "entries": [["z1", "z2", "z3", "-z3"],
              ["z2", "-z1", "z3", "z3"],
              ["z3", "z3", "z1", "z2"],
              ["-z3", "z3", "z2", "-z1"]]
})";

}  // namespace

TEST_CASE("verify renders determinant, obstruction, and verdict") {
  spit(scratch("m37.json"), kM37);
  const RunResult r = run_cli("verify " + scratch("m37.json"));
  CHECK(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out["det_text"] == "z1^4 + 2*z1^2*z2^2 + z2^4 + 4*z3^4");
  CHECK(out["degree"] == 4);
  CHECK(out["homogeneous"] == true);
  CHECK(out["obstruction"]["status"] == "passes");
  CHECK(out["verdict"]["kind"] == "PositiveDefinite");
  CHECK(r.err.find("PositiveDefinite") != std::string::npos);
}

TEST_CASE("verify writes a reusable certificate") {
  spit(scratch("m24.json"), kM24);
  const std::string cert = scratch("m24_cert.json");
  const RunResult r = run_cli("verify " + scratch("m24.json") + " --certificate " + cert);
  CHECK(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out["det_text"] == "-z1^2 - z2^2");
  CHECK(out["verdict"]["kind"] == "NegativeDefinite");
  CHECK(out["certificate_path"] == cert);
  const json stored = json::parse(slurp(cert));
  CHECK(stored["kind"] == "NegativeDefinite");
}

TEST_CASE("verify flags degenerate and malformed inputs") {
  spit(scratch("zrow.json"), R"({"l":2,"n":4,"entries":[["0","0"],["0","z1"]]})");
  const RunResult zero = run_cli("verify " + scratch("zrow.json"));
  CHECK(zero.exit_code == 1);
  const json out = json::parse(zero.out);
  CHECK(out["det_text"] == "0");
  CHECK(out["verdict"]["kind"] == "IdenticallyZero");

  spit(scratch("bad.json"), "{\"l\": 2,\n \"n\": 4, \"entries\": [[}");
  const RunResult bad = run_cli("verify " + scratch("bad.json"));
  CHECK(bad.exit_code == 4);
  CHECK(bad.err.find("line 2") != std::string::npos);

  CHECK(run_cli("verify " + scratch("absent.json")).exit_code == 4);

  spit(scratch("skew.json"), R"({"l":2,"n":4,"entries":[["z1","z2"],["-z2","-z1"]]})");
  const RunResult skew = run_cli("verify " + scratch("skew.json"));
  CHECK(skew.exit_code == 4);
  CHECK(skew.err.find("not symmetric") != std::string::npos);
}

TEST_CASE("search finds the (2,4) classes and refuses obstructed pairs") {
  const RunResult ok = run_cli("search --l 2 --n 4 --seed 7");
  CHECK(ok.exit_code == 0);
  const json report = json::parse(ok.out);
  CHECK(report["exhaustive"] == true);
  CHECK(report["accepted"].size() >= 1);
  CHECK(ok.err.find("exhaustive         yes") != std::string::npos);

  const RunResult refused = run_cli("search --l 2 --n 5");
  CHECK(refused.exit_code == 3);
  CHECK(refused.out.empty());
  CHECK(refused.err.find("odd") != std::string::npos);
  CHECK(refused.err.find("--force") != std::string::npos);

  const RunResult forced = run_cli("search --l 2 --n 5 --force");
  CHECK(forced.exit_code == 1);
  const json empty_report = json::parse(forced.out);
  CHECK(empty_report["exhaustive"] == true);
  CHECK(empty_report["accepted"].empty());
}

TEST_CASE("search output bytes depend only on the config") {
  const RunResult a = run_cli("search --l 2 --n 4 --seed 11");
  const RunResult b = run_cli("search --l 2 --n 4 --seed 11");
  CHECK(a.out == b.out);

  const RunResult two = run_cli("search --l 2 --n 4 --seed 11", "GOODPAIR_WORKERS=2");
  CHECK(two.out == a.out);

  CHECK(run_cli("search --l 2 --n 4", "GOODPAIR_WORKERS=zero").exit_code == 3);
}

TEST_CASE("search checkpoints resume and guard their config") {
  const std::string ckpt = scratch("ckpt.bin");
  std::remove(ckpt.c_str());
  const RunResult first = run_cli("search --l 2 --n 4 --seed 5 --checkpoint " + ckpt);
  CHECK(first.exit_code == 0);
  const RunResult second = run_cli("search --l 2 --n 4 --seed 5 --checkpoint " + ckpt);
  CHECK(second.exit_code == 0);
  CHECK(first.out == second.out);

  const RunResult clash = run_cli("search --l 2 --n 4 --seed 6 --checkpoint " + ckpt);
  CHECK(clash.exit_code == 3);
  CHECK(clash.err.find("different search configuration") != std::string::npos);
}

TEST_CASE("construct and check2 chain through a manifold file") {
  spit(scratch("m24.json"), kM24);
  const std::string manifold = scratch("m24_manifold.json");
  const RunResult made = run_cli("construct --matrix " + scratch("m24.json") + " --out " +
                                 manifold);
  CHECK(made.exit_code == 0);
  const json spec = json::parse(made.out);
  CHECK(spec["label"] == "M_2_4");
  CHECK(spec["n"] == 4);
  CHECK(spec["l"] == 2);
  CHECK(spec["hessians"].size() == 2);
  CHECK(json::parse(slurp(manifold)) == spec);

  const RunResult checked = run_cli("check2 --manifold " + manifold);
  CHECK(checked.exit_code == 0);
  const json verdict = json::parse(checked.out);
  CHECK(verdict["det_text"] == "-s1^2 - s2^2");
  CHECK(verdict["verdict"]["kind"] == "NegativeDefinite");

  const RunResult labeled = run_cli("construct --matrix " + scratch("m24.json") +
                                    " --label twisted");
  CHECK(json::parse(labeled.out)["label"] == "twisted");
}

TEST_CASE("analyze reports the dichotomy and shell table") {
  const RunResult crit = run_cli("analyze --n 7 --l 3 --tau 7 --s 4");
  CHECK(crit.exit_code == 0);
  const json out = json::parse(crit.out);
  CHECK(out["classification"] == "Critical");
  CHECK(out["s_star"] == "4");
  CHECK(out["shell_exponent"] == "-1");
  CHECK(out["shells"].size() == 8);
  CHECK(out["shells"][0]["vectors"] == "2186");
  CHECK(out["shells"][0]["partial_sum"] == "2186");

  const RunResult conv = run_cli("analyze --n 7 --l 3 --tau 7 --s 5 --shells 2");
  const json conv_out = json::parse(conv.out);
  CHECK(conv_out["classification"] == "Convergent");
  CHECK(conv_out["shells"].size() == 2);
  CHECK(conv_out["shells"][1]["partial_sum"] == "35853393/16384");

  // Fractional per-vector exponent: classification still reported, shells
  // withheld with a note.
  const RunResult frac = run_cli("analyze --n 7 --l 3 --tau 7 --s 1/3");
  CHECK(frac.exit_code == 0);
  const json frac_out = json::parse(frac.out);
  CHECK(frac_out["classification"] == "Divergent");
  CHECK(frac_out["shells"].empty());
  CHECK(frac_out.contains("shells_note"));

  CHECK(run_cli("analyze --n 7 --l 3 --tau 5 --s 4").exit_code == 3);
  CHECK(run_cli("analyze --n 7 --l 3 --tau x --s 4").exit_code == 3);
}

TEST_CASE("cover walks the dyadic ladder of a manifold file") {
  spit(scratch("m24.json"), kM24);
  const std::string manifold = scratch("cover_manifold.json");
  REQUIRE(run_cli("construct --matrix " + scratch("m24.json") + " --out " + manifold)
              .exit_code == 0);

  const RunResult r = run_cli("cover --manifold " + manifold +
                              " --alpha 1 --delta-ladder 3:5 --weights 1,0 --linear 1,0");
  CHECK(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out["dimension"] == 2);
  CHECK(out["rungs"].size() == 3);
  CHECK(out["rungs"][0]["delta"] == "1/8");
  CHECK(out["rungs"][0]["cells"].get<std::uint64_t>() > 0);
  CHECK(out["slope"].is_number());

  CHECK(run_cli("cover --manifold " + manifold + " --alpha 1 --delta-ladder 9:3").exit_code ==
        3);
  CHECK(run_cli("cover --manifold " + manifold + " --alpha 0 --delta-ladder 3:5").exit_code ==
        3);
  CHECK(run_cli("cover --manifold " + scratch("absent.json") + " --alpha 1").exit_code == 4);
}

TEST_CASE("catalog lists the built-in manifolds") {
  const RunResult r = run_cli("catalog");
  CHECK(r.exit_code == 0);
  const json out = json::parse(r.out);
  REQUIRE(out.size() == 4);

  CHECK(out[0]["label"] == "M-delta(1)");
  CHECK(out[0]["condition_I"] == "(I) fails: dim 2");
  CHECK(out[0]["condition_II"] == "NegativeDefinite");

  bool saw_m37 = false;
  for (const auto& entry : out) {
    if (entry["label"] != "M37") continue;
    saw_m37 = true;
    CHECK(entry["condition_I"] == "[4, 6)");
    CHECK(entry["condition_II"] == "PositiveDefinite");
  }
  CHECK(saw_m37);
  CHECK(r.err.find("M-delta(1)") != std::string::npos);
}

TEST_CASE("bare invocation and unknown flags are usage errors") {
  CHECK(run_cli("").exit_code == 3);
  CHECK(run_cli("search --l 2").exit_code == 3);
  CHECK(run_cli("frobnicate").exit_code == 3);
  CHECK(run_cli("--help").exit_code == 0);
}
