#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "tenstruct/generate.hpp"
#include "tenstruct/json_io.hpp"

using namespace tenstruct;

namespace {

const std::string kScratch = "cli_scratch";

std::string scratchPath(const std::string& name) {
  std::filesystem::create_directories(kScratch);
  return kScratch + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string binPath() {
  const char* bin = std::getenv("TENSTRUCT_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "TENSTRUCT_BIN must point at the CLI");
  return bin;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult runShell(const std::string& cmd) {
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int rc = pclose(pipe);
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

CliResult runCli(const std::string& args) {
  return runShell("\"" + binPath() + "\" " + args + " 2>&1");
}

Tensor<double> exampleTensor() {
  std::vector<CoordEntry<double>> coords = {
      {{1, 1, 1}, 4.0}, {{1, 2, 2}, -1.0}, {{2, 2, 2}, 2.0}};
  return Tensor<double>::fromCoords(3, 2, coords);
}

}  // namespace

TEST_CASE("tensor files round trip bitwise") {
  const Tensor<double> A(
      2, 2, std::vector<double>{0.1, 1.0 / 3.0, -2.2250738585072014e-308, 4});
  const auto path = scratchPath("roundtrip.json");
  writeTensorFile(path, A);
  const auto back = readTensorFile(path);
  CHECK(oracle::sameEntries(A, back));

  // canonical form: a second serialization is byte-identical
  const auto path2 = scratchPath("roundtrip2.json");
  writeTensorFile(path2, back);
  CHECK(slurp(path) == slurp(path2));

  const Json doc = tensorToJson(A);
  CHECK(doc["order"] == 2);
  CHECK(doc["dim"] == 2);
  CHECK(doc["dense"].size() == 4);
}

TEST_CASE("coordinate documents parse to the dense layout") {
  const Json doc = Json::parse(R"({
    "order": 3, "dim": 2,
    "entries": [
      {"idx": [1,1,1], "val": 4},
      {"idx": [1,2,2], "val": -1},
      {"idx": [2,2,2], "val": 2}
    ]
  })");
  CHECK(oracle::sameEntries(tensorFromJson(doc), exampleTensor()));
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(tensorFromJson(Json::parse("[1,2]")), ParseError);
  CHECK_THROWS_AS(tensorFromJson(Json::parse(R"({"order":2})")), ParseError);
  CHECK_THROWS_AS(
      tensorFromJson(Json::parse(R"({"order":2,"dim":2,"dense":[1,2,3]})")),
      ParseError);
  CHECK_THROWS_AS(
      tensorFromJson(Json::parse(R"({"order":2,"dim":2,"dense":[1,2,"x",4]})")),
      ParseError);
  CHECK_THROWS_AS(tensorFromJson(Json::parse(
                      R"({"order":2,"dim":2,"entries":[{"idx":[1],"val":1}]})")),
                  ParseError);
  CHECK_THROWS_AS(
      tensorFromJson(Json::parse(
          R"({"order":2,"dim":2,"entries":[{"idx":[1,3],"val":1}]})")),
      ParseError);
  CHECK_THROWS_AS(tensorFromJson(Json::parse(R"({"order":1.5,"dim":2})")),
                  ParseError);

  CHECK_THROWS_AS(readTensorFile(scratchPath("no_such_file.json")),
                  FileNotFound);
  const auto garbled = scratchPath("garbled.json");
  std::ofstream(garbled) << "this is not json {{{";
  CHECK_THROWS_AS(readTensorFile(garbled), ParseError);
}

TEST_CASE("report serializers expose the documented fields") {
  const auto report = classificationToJson(classify(identityTensor<double>(3, 2)));
  for (const char* key :
       {"verdict", "is_Z", "is_B", "is_B0", "strictly_diag_dominated",
        "diag_dominated", "entry_conditions_B", "entry_conditions_B0",
        "z_dominance_matches_class", "per_row", "failures"})
    CHECK_MESSAGE(report.contains(key), key);
  CHECK(report["verdict"] == "B");

  const auto alpha =
      alphaToJson(alphaEstimate(identityTensor<double>(2, 2), MapKind::T));
  CHECK(alpha.begin().key() == "value");
  CHECK(alpha["certified"] == true);

  const auto verdict = pVerdictToJson(pClassify(identityTensor<double>(2, 2)));
  CHECK(verdict["class"] == "P");
  CHECK(verdict["witness"].is_null());

  SpectralConfig scfg;
  const auto spec = spectralToJson(
      zEigenpairs(diagonalTensor(4, Vectord(Vectord::Constant(2, 1.0))), scfg));
  for (const char* key : {"pairs", "symmetrized", "certified_complete",
                          "converged_runs", "attempted_runs"})
    CHECK_MESSAGE(spec.contains(key), key);
  REQUIRE_FALSE(spec["pairs"].empty());
  for (const auto& pair : spec["pairs"]) {
    CHECK(pair.size() == 4);
    for (const char* key : {"lambda", "x", "kind", "residual"})
      CHECK_MESSAGE(pair.contains(key), key);
  }
}

TEST_CASE("cli classify") {
  const auto path = scratchPath("identity32.json");
  writeTensorFile(path, identityTensor<double>(3, 2));
  const auto r = runCli("classify \"" + path + "\"");
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["is_Z"] == true);
  CHECK(doc["is_B"] == true);
  CHECK(doc["verdict"] == "B");
  CHECK(doc["version"] == kVersion);
  CHECK(doc["config"]["eps"] == 0.0);
}

TEST_CASE("cli alpha") {
  const auto path = scratchPath("identity42.json");
  writeTensorFile(path, identityTensor<double>(4, 2));
  const auto r =
      runCli("alpha \"" + path + "\" --op T --method grid --h 0.01");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("{\n  \"value\"", 0) == 0);  // payload leads the report
  const Json doc = Json::parse(r.out);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(doc["certified"] == true);
  CHECK(doc["config"]["h"] == 0.01);
  CHECK(doc["config"]["op"] == "T");
}

TEST_CASE("cli pcheck") {
  const auto path = scratchPath("identity33.json");
  writeTensorFile(path, identityTensor<double>(3, 2));
  const auto r = runCli("pcheck \"" + path + "\"");
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["class"] == "NOT_P0");
  REQUIRE(doc["witness"].is_array());
  CHECK(doc["witness"][0].get<double>() == -1.0);
  CHECK(doc["witness"][1].get<double>() == -1.0);
}

TEST_CASE("cli subtensor") {
  const auto path = scratchPath("example.json");
  writeTensorFile(path, exampleTensor());

  const auto full = runCli("subtensor \"" + path + "\" --indices 1,2");
  REQUIRE(full.code == 0);
  CHECK(full.out == slurp(path));  // byte-identical re-serialization

  const auto corner = runCli("subtensor \"" + path + "\" --indices 1");
  REQUIRE(corner.code == 0);
  const Json doc = Json::parse(corner.out);
  CHECK(doc["order"] == 3);
  CHECK(doc["dim"] == 1);
  CHECK(doc["dense"] == Json::array({4.0}));
}

TEST_CASE("cli eig") {
  const auto path = scratchPath("diag12.json");
  writeTensorFile(path, diagonalTensor(4, (Vectord(2) << 1.0, 2.0).finished()));
  const auto r = runCli("eig \"" + path + "\" --kind Z");
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  REQUIRE(doc["pairs"].is_array());
  REQUIRE_FALSE(doc["pairs"].empty());
  for (const auto& pair : doc["pairs"]) {
    CHECK(pair.size() == 4);
    CHECK(pair["kind"] == "Z");
  }
  CHECK(doc["config"]["kind"] == "Z");

  const auto missingKind = runCli("eig \"" + path + "\"");
  CHECK(missingKind.code == 2);
}

TEST_CASE("cli gen") {
  const auto dir = scratchPath("corpus");
  const auto r = runCli("gen --class B --m 3 --n 2 --seed 7 --count 2 --output \"" +
                        dir + "\"");
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["written"] == Json::array({"B_3_2_7.json", "B_3_2_8.json"}));
  for (const std::string name : {"B_3_2_7.json", "B_3_2_8.json"}) {
    const auto A = readTensorFile(dir + "/" + name);
    CHECK(bClassify(A).verdict == BVerdict::B);
  }
  // determinism: the seed-7 file matches in-process generation
  GenSpec spec{3, 2, TensorClass::B, 7};
  CHECK(oracle::sameEntries(readTensorFile(dir + "/B_3_2_7.json"),
                            generate(spec)));
}

TEST_CASE("cli exit codes and error reports") {
  const auto missing = runCli("classify definitely_missing.json");
  CHECK(missing.code == 2);
  CHECK(missing.out.find("FileNotFound") != std::string::npos);
  CHECK(missing.out.find("\"module\": \"cli\"") != std::string::npos);

  const auto badFlag = runCli("classify --no-such-flag x.json");
  CHECK(badFlag.code == 2);

  const auto noVerb = runCli("");
  CHECK(noVerb.code == 2);

  const auto version = runCli("--version");
  CHECK(version.code == 0);
  CHECK(version.out.find(kVersion) != std::string::npos);

  const auto path = scratchPath("identity23.json");
  writeTensorFile(path, identityTensor<double>(2, 3));
  const auto capped = runShell("TENSTRUCT_MAX_EVALS=10 \"" + binPath() +
                               "\" alpha \"" + path + "\" --h 0.01 2>&1");
  CHECK(capped.code == 3);
  CHECK(capped.out.find("ResourceLimit") != std::string::npos);

  const auto badEnv = runShell("TENSTRUCT_MAX_EVALS=abc \"" + binPath() +
                               "\" alpha \"" + path + "\" 2>&1");
  CHECK(badEnv.code == 2);
  CHECK(badEnv.out.find("ParseError") != std::string::npos);

  const auto dupIdx = runCli("subtensor \"" + path + "\" --indices 1,1");
  CHECK(dupIdx.code == 2);
}

TEST_CASE("cli text format") {
  const auto path = scratchPath("identity22.json");
  writeTensorFile(path, identityTensor<double>(2, 2));
  const auto r = runCli("classify \"" + path + "\" --format text");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verdict: B") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);

  const auto out = scratchPath("alpha_report.json");
  const auto w = runCli("alpha \"" + path + "\" --output \"" + out + "\"");
  REQUIRE(w.code == 0);
  const Json doc = Json::parse(slurp(out));
  CHECK(doc["value"].get<double>() == 1.0);
}
