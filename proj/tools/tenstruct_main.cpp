// Command-line front end: ingest tensor JSON, run the library analyses, emit
// deterministic reports (JSON or text), generate seeded corpora.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tenstruct/json_io.hpp"

namespace {

using tenstruct::Json;

const char* moduleOf(const std::string& code) {
  if (code == "FileNotFound" || code == "ParseError") return "cli";
  if (code == "OddOrderUnsupported" || code == "NoPositiveProduct")
    return "p_analysis";
  if (code == "InternalDisagreement") return "cross_check";
  return "tensor_core";
}

void printError(const tenstruct::Error& e) {
  Json doc;
  doc["error"] = e.code();
  doc["module"] = moduleOf(e.code());
  doc["message"] = e.what();
  std::cerr << doc.dump(2) << '\n';
}

void renderText(const Json& doc, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto inlineable = [](const Json& v) {
    if (!v.is_array()) return v.is_primitive();
    for (const Json& item : v)
      if (!item.is_primitive()) return false;
    return true;
  };
  auto inlineDump = [](const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items()) {
      if (inlineable(value)) {
        os << pad << key << ": " << inlineDump(value) << '\n';
      } else {
        os << pad << key << ":\n";
        renderText(value, os, indent + 2);
      }
    }
  } else if (doc.is_array()) {
    for (const Json& item : doc) {
      if (inlineable(item)) {
        os << pad << "- " << inlineDump(item) << '\n';
      } else {
        os << pad << "-\n";
        renderText(item, os, indent + 2);
      }
    }
  } else {
    os << pad << inlineDump(doc) << '\n';
  }
}

void emitReport(const Json& doc, const std::string& format,
                const std::string& output) {
  std::ostringstream body;
  if (format == "json")
    body << doc.dump(2) << '\n';
  else
    renderText(doc, body, 0);
  if (output.empty()) {
    std::cout << body.str();
    return;
  }
  std::ofstream out(output);
  if (!out) throw tenstruct::FileNotFound("cannot write \"" + output + "\"");
  out << body.str();
}

std::int64_t envMaxEvals() {
  const char* raw = std::getenv("TENSTRUCT_MAX_EVALS");
  if (raw == nullptr) return 100'000'000;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || v <= 0)
    throw tenstruct::ParseError(
        "TENSTRUCT_MAX_EVALS must be a positive integer, got \"" +
        std::string(raw) + "\"");
  return static_cast<std::int64_t>(v);
}

struct CommonFlags {
  std::string format = "json";
  std::string output;
};

void addCommon(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--format", flags.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--output", flags.output,
                  "output file (gen: output directory); default stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured tensor analysis toolkit"};
  app.set_version_flag("--version", tenstruct::kVersion);
  app.require_subcommand(1);

  // classify
  auto* classifyCmd =
      app.add_subcommand("classify", "full structure classification report");
  std::string classifyInput;
  double eps = 0.0;
  CommonFlags classifyFlags;
  classifyCmd->add_option("input", classifyInput, "tensor JSON file")
      ->required();
  classifyCmd->add_option("--eps", eps, "comparison tolerance (default 0)");
  addCommon(classifyCmd, classifyFlags);
  classifyCmd->callback([&] {
    const auto A = tenstruct::readTensorFile(classifyInput);
    const auto report = tenstruct::classify(A, tenstruct::Tolerance{eps});
    Json doc = tenstruct::classificationToJson(report);
    doc["version"] = tenstruct::kVersion;
    doc["config"] = Json{{"eps", eps}};
    emitReport(doc, classifyFlags.format, classifyFlags.output);
  });

  // alpha
  auto* alphaCmd = app.add_subcommand(
      "alpha", "minimax operator statistic over the unit infinity-sphere");
  std::string alphaInput;
  std::string op = "T";
  std::string method = "grid";
  tenstruct::AlphaConfig alphaCfg;
  CommonFlags alphaFlags;
  alphaCmd->add_option("input", alphaInput, "tensor JSON file")->required();
  alphaCmd->add_option("--op", op, "operator: T or F")
      ->check(CLI::IsMember({"T", "F"}));
  alphaCmd->add_option("--method", method, "grid or multistart")
      ->check(CLI::IsMember({"grid", "multistart"}));
  // --h would clash with the auto help short flag, so keep only --help here
  alphaCmd->set_help_flag("--help", "print help");
  alphaCmd->add_option("--h", alphaCfg.h, "grid spacing (default 0.05)");
  alphaCmd->add_option("--starts", alphaCfg.starts,
                       "multistart count (default 64)");
  alphaCmd->add_option("--iters", alphaCfg.iters,
                       "descent iterations (default 500)");
  alphaCmd->add_option("--seed", alphaCfg.seed, "RNG seed (default 1)");
  addCommon(alphaCmd, alphaFlags);
  alphaCmd->callback([&] {
    const auto A = tenstruct::readTensorFile(alphaInput);
    alphaCfg.method = method == "grid" ? tenstruct::AlphaMethod::Grid
                                       : tenstruct::AlphaMethod::Multistart;
    alphaCfg.maxEvals = envMaxEvals();
    const auto map =
        op == "T" ? tenstruct::MapKind::T : tenstruct::MapKind::F;
    const auto estimate = tenstruct::alphaEstimate(A, map, alphaCfg);
    Json doc = tenstruct::alphaToJson(estimate);
    doc["version"] = tenstruct::kVersion;
    Json cfg = tenstruct::alphaConfigToJson(alphaCfg);
    cfg["op"] = op;
    doc["config"] = cfg;
    emitReport(doc, alphaFlags.format, alphaFlags.output);
  });

  // pcheck
  auto* pcheckCmd =
      app.add_subcommand("pcheck", "P / P0 / NOT_P0 decision with witness");
  std::string pcheckInput;
  tenstruct::AlphaConfig pcheckCfg;
  CommonFlags pcheckFlags;
  pcheckCmd->add_option("input", pcheckInput, "tensor JSON file")->required();
  addCommon(pcheckCmd, pcheckFlags);
  pcheckCmd->callback([&] {
    const auto A = tenstruct::readTensorFile(pcheckInput);
    pcheckCfg.maxEvals = envMaxEvals();
    const auto verdict = tenstruct::pClassify(A, pcheckCfg);
    Json doc = tenstruct::pVerdictToJson(verdict);
    doc["version"] = tenstruct::kVersion;
    doc["config"] = tenstruct::alphaConfigToJson(pcheckCfg);
    emitReport(doc, pcheckFlags.format, pcheckFlags.output);
  });

  // eig
  auto* eigCmd = app.add_subcommand("eig", "H- or Z-eigenpair search");
  std::string eigInput;
  std::string kind;
  CommonFlags eigFlags;
  eigCmd->add_option("input", eigInput, "tensor JSON file")->required();
  eigCmd->add_option("--kind", kind, "H or Z")
      ->required()
      ->check(CLI::IsMember({"H", "Z"}));
  addCommon(eigCmd, eigFlags);
  eigCmd->callback([&] {
    const auto A = tenstruct::readTensorFile(eigInput);
    tenstruct::SpectralConfig scfg;
    const auto result = kind == "H" ? tenstruct::hEigenpairs(A, scfg)
                                    : tenstruct::zEigenpairs(A, scfg);
    Json doc = tenstruct::spectralToJson(result);
    doc["version"] = tenstruct::kVersion;
    doc["config"] = Json{{"kind", kind},
                         {"starts", scfg.starts},
                         {"iters", scfg.iters},
                         {"tol", scfg.tol},
                         {"seed", scfg.seed}};
    emitReport(doc, eigFlags.format, eigFlags.output);
  });

  // subtensor
  auto* subCmd = app.add_subcommand(
      "subtensor", "extract a principal sub-tensor to the same JSON schema");
  std::string subInput;
  std::vector<int> indices;
  CommonFlags subFlags;
  subCmd->add_option("input", subInput, "tensor JSON file")->required();
  subCmd->add_option("--indices", indices, "one-based index list")
      ->required()
      ->delimiter(',');
  addCommon(subCmd, subFlags);
  subCmd->callback([&] {
    const auto A = tenstruct::readTensorFile(subInput);
    const auto B =
        tenstruct::principalSubtensor(A, tenstruct::IndexSet(indices));
    const Json doc = tenstruct::tensorToJson(B);
    if (subFlags.output.empty()) {
      std::cout << doc.dump(2) << '\n';
    } else {
      tenstruct::writeTensorFile(subFlags.output, B);
    }
  });

  // gen
  auto* genCmd =
      app.add_subcommand("gen", "write a seeded corpus of class instances");
  std::string genClass;
  int genM = 3;
  int genN = 2;
  std::uint64_t genSeed = 1;
  int genCount = 1;
  CommonFlags genFlags;
  genCmd->add_option("--class", genClass,
                     "B | B0 | Z_diag_dominated | symmetric | general")
      ->required();
  genCmd->add_option("--m", genM, "tensor order")->required();
  genCmd->add_option("--n", genN, "tensor dimension")->required();
  genCmd->add_option("--seed", genSeed, "base seed (default 1)");
  genCmd->add_option("--count", genCount,
                     "number of tensors, seeds base..base+count-1");
  addCommon(genCmd, genFlags);
  genCmd->callback([&] {
    if (genCount < 1)
      throw tenstruct::ParseError("--count must be at least 1");
    const std::string dir = genFlags.output.empty() ? "." : genFlags.output;
    std::filesystem::create_directories(dir);
    tenstruct::GenSpec spec;
    spec.order = genM;
    spec.dim = genN;
    spec.cls = tenstruct::tensorClassFromString(genClass);
    Json written = Json::array();
    for (int k = 0; k < genCount; ++k) {
      spec.seed = genSeed + static_cast<std::uint64_t>(k);
      const auto T = tenstruct::generate(spec);
      const std::string name = tenstruct::corpusFileName(spec);
      tenstruct::writeTensorFile(dir + "/" + name, T);
      written.push_back(name);
    }
    Json doc;
    doc["written"] = written;
    doc["directory"] = dir;
    doc["version"] = tenstruct::kVersion;
    spec.seed = genSeed;
    Json cfg = tenstruct::genSpecToJson(spec);
    cfg["count"] = genCount;
    doc["config"] = cfg;
    emitReport(doc, genFlags.format, "");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const tenstruct::ResourceLimit& e) {
    printError(e);
    return 3;
  } catch (const tenstruct::Error& e) {
    printError(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
