#pragma once

// JSON encoding shared by every module and the CLI.
//
//   class:        {"domain_size": n, "labels": ["a", ...], "hypotheses": [[y(0), ..., y(n-1)], ...],
//                  "loss": "zero_one" | {"kind": "squared", "values": [...]}
//                                     | {"kind": "intersection", "sets": [[...], ...]}}   (loss optional)
//   sample:       {"examples": [[x, y], ...]}
//   distribution: {"support": [[x, y], ...], "weights": [w, ...]}
//   compression:  {"indices": [...], "side_info": {"hex": "...", "bits": n}}

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sclab/bits.hpp"
#include "sclab/core.hpp"
#include "sclab/errors.hpp"
#include "sclab/selection.hpp"

namespace sclab {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

inline std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw PreconditionError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

inline Example example_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw PreconditionError("an example must be a [x, y] pair");
  return {as_index(j[0], "example point"), as_index(j[1], "example label")};
}

}  // namespace detail

inline Json to_json(const FiniteClass& h) {
  Json j;
  j["domain_size"] = h.domain_size();
  j["labels"] = h.labels().names();
  Json hs = Json::array();
  for (const auto& hyp : h.hypotheses()) hs.push_back(hyp.table());
  j["hypotheses"] = std::move(hs);
  return j;
}

inline FiniteClass class_from_json(const Json& j) {
  const std::size_t n = detail::as_index(detail::field(j, "domain_size"), "domain_size");
  const Json& labels = detail::field(j, "labels");
  if (!labels.is_array() || labels.empty()) throw PreconditionError("'labels' must be a non-empty array");
  std::vector<std::string> names;
  for (const auto& l : labels) names.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  std::vector<Hypothesis> hs;
  for (const auto& row : detail::field(j, "hypotheses")) {
    if (!row.is_array()) throw PreconditionError("each hypothesis must be an array of label indices");
    std::vector<LabelIndex> table;
    for (const auto& y : row) table.push_back(detail::as_index(y, "hypothesis label"));
    hs.emplace_back(std::move(table));
  }
  return FiniteClass(n, LabelUniverse(std::move(names)), std::move(hs));
}

inline Json to_json(const LossFunction& loss) {
  switch (loss.kind()) {
    case LossKind::zero_one:
      return "zero_one";
    case LossKind::squared:
      return Json{{"kind", "squared"}, {"values", loss.values()}};
    case LossKind::intersection:
      return Json{{"kind", "intersection"}, {"sets", loss.sets()}};
  }
  return nullptr;
}

inline LossFunction loss_from_json(const Json& j) {
  if (j.is_null()) return LossFunction::zero_one();
  if (j.is_string()) {
    if (j.get<std::string>() == "zero_one") return LossFunction::zero_one();
    throw PreconditionError("unknown loss '" + j.get<std::string>() + "'");
  }
  const auto kind = detail::field(j, "kind").get<std::string>();
  if (kind == "zero_one") return LossFunction::zero_one();
  if (kind == "squared") return LossFunction::squared(detail::field(j, "values").get<std::vector<double>>());
  if (kind == "intersection") {
    return LossFunction::intersection(detail::field(j, "sets").get<std::vector<std::vector<int>>>());
  }
  throw PreconditionError("unknown loss kind '" + kind + "'");
}

inline Json to_json(const Sample& s) {
  Json ex = Json::array();
  for (const auto& z : s) ex.push_back({z.x, z.y});
  return Json{{"examples", std::move(ex)}};
}

inline Sample sample_from_json(const Json& j) {
  Sample s;
  for (const auto& e : detail::field(j, "examples")) s.push_back(detail::example_from_json(e));
  return s;
}

inline Json to_json(const FiniteDistribution& d) {
  Json sup = Json::array();
  for (const auto& z : d.support()) sup.push_back({z.x, z.y});
  return Json{{"support", std::move(sup)}, {"weights", d.weights()}};
}

inline FiniteDistribution distribution_from_json(const Json& j) {
  std::vector<Example> sup;
  for (const auto& e : detail::field(j, "support")) sup.push_back(detail::example_from_json(e));
  return FiniteDistribution(std::move(sup), detail::field(j, "weights").get<std::vector<double>>());
}

inline Json to_json(const BitString& b) { return Json{{"hex", b.to_hex()}, {"bits", b.size()}}; }

inline BitString bits_from_json(const Json& j) {
  return BitString::from_hex(detail::field(j, "hex").get<std::string>(),
                             detail::as_index(detail::field(j, "bits"), "bit length"));
}

inline Json to_json(const CompressionOutput& out) {
  return Json{{"indices", out.indices}, {"side_info", to_json(out.side_info)}};
}

inline CompressionOutput compression_from_json(const Json& j) {
  CompressionOutput out;
  for (const auto& i : detail::field(j, "indices")) out.indices.push_back(detail::as_index(i, "index"));
  out.side_info = bits_from_json(detail::field(j, "side_info"));
  return out;
}

// Samples must stay inside the class's universes.
inline void require_compatible(const FiniteClass& h, const Sample& s) {
  for (const auto& z : s) require(h.admits(z), "sample example outside the class's domain or label universe");
}

}  // namespace sclab
