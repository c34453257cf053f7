#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "tenstruct/analysis.hpp"
#include "tenstruct/generate.hpp"
#include "tenstruct/spectral.hpp"
#include "tenstruct/structure.hpp"
#include "tenstruct/version.hpp"

namespace tenstruct {

using Json = nlohmann::ordered_json;

// Tensor document: {"order": m, "dim": n, "dense": [...]} row-major, the
// canonical written form. Readers also accept {"entries": [{"idx": [...],
// "val": v}, ...]} with one-based indices.
inline Json tensorToJson(const Tensor<double>& A) {
  Json doc;
  doc["order"] = A.order();
  doc["dim"] = A.dim();
  doc["dense"] = std::vector<double>(A.entries().data(),
                                     A.entries().data() + A.size());
  return doc;
}

namespace detail {

inline long requireInt(const Json& doc, const char* key) {
  if (!doc.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  const Json& v = doc.at(key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<long>();
}

}  // namespace detail

inline Tensor<double> tensorFromJson(const Json& doc) {
  if (!doc.is_object())
    throw ParseError("tensor document must be a JSON object");
  const long order = detail::requireInt(doc, "order");
  const long dim = detail::requireInt(doc, "dim");
  if (order < 2 || order > 1'000'000)
    throw ParseError("field \"order\" out of range");
  if (dim < 1 || dim > 1'000'000)
    throw ParseError("field \"dim\" out of range");

  if (doc.contains("dense")) {
    const Json& dense = doc.at("dense");
    if (!dense.is_array())
      throw ParseError("field \"dense\" must be an array of numbers");
    std::vector<double> entries;
    entries.reserve(dense.size());
    for (const Json& v : dense) {
      if (!v.is_number())
        throw ParseError("field \"dense\" must contain only numbers");
      entries.push_back(v.get<double>());
    }
    try {
      return Tensor<double>(static_cast<int>(order), static_cast<int>(dim),
                            std::move(entries));
    } catch (const SizeMismatch& e) {
      throw ParseError(e.what());  // structural defects in a document parse
    }
  }
  if (doc.contains("entries")) {
    const Json& list = doc.at("entries");
    if (!list.is_array())
      throw ParseError("field \"entries\" must be an array");
    std::vector<CoordEntry<double>> coords;
    coords.reserve(list.size());
    for (const Json& item : list) {
      if (!item.is_object() || !item.contains("idx") || !item.contains("val"))
        throw ParseError(
            "each entry must be an object with \"idx\" and \"val\"");
      const Json& idx = item.at("idx");
      if (!idx.is_array())
        throw ParseError("entry field \"idx\" must be an array of indices");
      CoordEntry<double> e;
      for (const Json& i : idx) {
        if (!i.is_number_integer())
          throw ParseError("entry indices must be integers");
        e.idx.push_back(i.get<int>());
      }
      if (!item.at("val").is_number())
        throw ParseError("entry field \"val\" must be a number");
      e.val = item.at("val").get<double>();
      coords.push_back(std::move(e));
    }
    try {
      return Tensor<double>::fromCoords(static_cast<int>(order),
                                        static_cast<int>(dim), coords);
    } catch (const SizeMismatch& e) {
      throw ParseError(e.what());
    } catch (const IndexOutOfRange& e) {
      throw ParseError(e.what());
    } catch (const DuplicateCoordinate& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("tensor document needs a \"dense\" or \"entries\" field");
}

inline Tensor<double> readTensorFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open \"" + path + "\"");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("\"") + path + "\": " + e.what());
  }
  return tensorFromJson(doc);
}

inline void writeTensorFile(const std::string& path, const Tensor<double>& A) {
  std::ofstream out(path);
  if (!out) throw FileNotFound("cannot write \"" + path + "\"");
  out << tensorToJson(A).dump(2) << '\n';
}

inline Json violationToJson(const Violation& v) {
  Json doc;
  doc["row"] = v.row;
  doc["tuple"] = v.tuple;
  doc["detail"] = v.detail;
  return doc;
}

inline Json classificationToJson(const ClassificationReport<double>& r) {
  Json doc;
  doc["verdict"] = toString(r.verdict);
  doc["is_Z"] = r.isZ;
  doc["is_B"] = r.isB;
  doc["is_B0"] = r.isB0;
  doc["strictly_diag_dominated"] = r.strictlyDiagDominated;
  doc["diag_dominated"] = r.diagDominated;
  doc["entry_conditions_B"] = r.entryConditionsB;
  doc["entry_conditions_B0"] = r.entryConditionsB0;
  doc["z_dominance_matches_class"] = r.zB0DominanceEquiv;
  doc["per_row"] = Json::array();
  for (const auto& row : r.perRow) {
    Json item;
    item["i"] = row.i;
    item["row_sum"] = row.rowSum;
    item["beta"] = row.beta;
    item["threshold"] = row.threshold;
    item["offdiag_abs_sum"] = row.offdiagAbsSum;
    doc["per_row"].push_back(std::move(item));
  }
  doc["failures"] = Json::array();
  for (const auto& v : r.failures) doc["failures"].push_back(violationToJson(v));
  return doc;
}

inline Json alphaToJson(const AlphaEstimate<double>& a) {
  Json doc;
  doc["value"] = a.value;
  doc["minimizer"] = std::vector<double>(
      a.minimizer.data(), a.minimizer.data() + a.minimizer.size());
  doc["map"] = toString(a.map);
  doc["method"] = toString(a.method);
  doc["h"] = a.h;
  doc["starts"] = a.starts;
  doc["iters"] = a.iters;
  doc["certified"] = a.certified;
  doc["evaluations"] = a.evaluations;
  return doc;
}

inline Json pVerdictToJson(const PVerdict<double>& v) {
  Json doc;
  doc["class"] = toString(v.cls);
  if (v.witness) {
    doc["witness"] = std::vector<double>(
        v.witness->data(), v.witness->data() + v.witness->size());
  } else {
    doc["witness"] = nullptr;
  }
  doc["alpha_T"] = alphaToJson(v.alphaT);
  doc["certified"] = v.certified;
  return doc;
}

inline Json eigenPairsToJson(const SpectralResult<double>& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json item;
    item["lambda"] = p.lambda;
    item["x"] = std::vector<double>(p.x.data(), p.x.data() + p.x.size());
    item["kind"] = toString(p.kind);
    item["residual"] = p.residual;
    pairs.push_back(std::move(item));
  }
  return pairs;
}

inline Json spectralToJson(const SpectralResult<double>& r) {
  Json doc;
  doc["pairs"] = eigenPairsToJson(r);
  doc["symmetrized"] = r.symmetrized;
  doc["certified_complete"] = r.certifiedComplete;
  doc["converged_runs"] = r.convergedRuns;
  doc["attempted_runs"] = r.attemptedRuns;
  if (!r.note.empty()) doc["note"] = r.note;
  return doc;
}

inline Json definitenessToJson(const DefinitenessVerdict<double>& v) {
  Json doc;
  doc["status"] = toString(v.status);
  doc["min_z_value"] = v.minZValue;
  if (v.minHEstimate)
    doc["min_h_estimate"] = *v.minHEstimate;
  else
    doc["min_h_estimate"] = nullptr;
  doc["certified"] = v.certified;
  doc["symmetrized"] = v.symmetrized;
  if (!v.note.empty()) doc["note"] = v.note;
  return doc;
}

inline AlphaConfig alphaConfigFromJson(const Json& doc) {
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  AlphaConfig cfg;
  if (doc.contains("method")) {
    const std::string method = doc.at("method").get<std::string>();
    if (method == "grid")
      cfg.method = AlphaMethod::Grid;
    else if (method == "multistart")
      cfg.method = AlphaMethod::Multistart;
    else
      throw ParseError("unknown method \"" + method + "\"");
  }
  if (doc.contains("h")) cfg.h = doc.at("h").get<double>();
  if (doc.contains("starts")) cfg.starts = doc.at("starts").get<int>();
  if (doc.contains("iters")) cfg.iters = doc.at("iters").get<int>();
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("max_evals"))
    cfg.maxEvals = doc.at("max_evals").get<std::int64_t>();
  return cfg;
}

inline Json alphaConfigToJson(const AlphaConfig& cfg) {
  Json doc;
  doc["method"] = cfg.method == AlphaMethod::Grid ? "grid" : "multistart";
  doc["h"] = cfg.h;
  doc["starts"] = cfg.starts;
  doc["iters"] = cfg.iters;
  doc["seed"] = cfg.seed;
  doc["max_evals"] = cfg.maxEvals;
  return doc;
}

inline GenSpec genSpecFromJson(const Json& doc) {
  if (!doc.is_object()) throw ParseError("GenSpec must be a JSON object");
  GenSpec spec;
  if (doc.contains("m")) spec.order = static_cast<int>(detail::requireInt(doc, "m"));
  if (doc.contains("n")) spec.dim = static_cast<int>(detail::requireInt(doc, "n"));
  if (doc.contains("class"))
    spec.cls = tensorClassFromString(doc.at("class").get<std::string>());
  if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("scale")) spec.scale = doc.at("scale").get<double>();
  return spec;
}

inline Json genSpecToJson(const GenSpec& spec) {
  Json doc;
  doc["m"] = spec.order;
  doc["n"] = spec.dim;
  doc["class"] = toString(spec.cls);
  doc["seed"] = spec.seed;
  doc["scale"] = spec.scale;
  return doc;
}

}  // namespace tenstruct
