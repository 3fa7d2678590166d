#include "bbt/report_json.hpp"

#include <limits>

namespace bbt {

nlohmann::json bigint_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::uint64_t>());
}

nlohmann::json to_json(const ReportedAction& a) {
  nlohmann::json j;
  j["block_size"] = bigint_to_json(a.block_size);
  j["classes"] = a.classes ? bigint_to_json(*a.classes) : nlohmann::json(nullptr);
  j["sharp"] = a.sharp;
  j["pair_order"] = bigint_to_json(a.pair_order);
  j["source"] = a.source;
  j["type"] = a.type;
  j["label"] = a.label;
  j["citation"] = a.citation;
  return j;
}

nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["group"] = r.group;
  j["case"] = r.case_tag;
  j["actions"] = nlohmann::json::array();
  for (const auto& a : r.actions) j["actions"].push_back(to_json(a));
  j["citations"] = r.citations;
  j["k3_verdict"] = r.k3_verdict;
  return j;
}

ClassificationReport report_from_json(const nlohmann::json& j) {
  ClassificationReport r;
  r.group = j.at("group").get<std::string>();
  r.case_tag = j.at("case").get<std::string>();
  for (const auto& ja : j.at("actions")) {
    ReportedAction a;
    a.block_size = bigint_from_json(ja.at("block_size"));
    if (!ja.at("classes").is_null()) a.classes = bigint_from_json(ja.at("classes"));
    a.sharp = ja.at("sharp").get<bool>();
    a.pair_order = bigint_from_json(ja.at("pair_order"));
    a.source = ja.at("source").get<std::string>();
    a.type = ja.value("type", "");
    a.label = ja.value("label", "");
    a.citation = ja.value("citation", "");
    r.actions.push_back(std::move(a));
  }
  r.citations = j.value("citations", std::vector<std::string>{});
  r.k3_verdict = j.value("k3_verdict", std::string(kK3Verdict));
  return r;
}

bool operator==(const ReportedAction& a, const ReportedAction& b) {
  return a.type == b.type && a.label == b.label && a.block_size == b.block_size && a.classes == b.classes &&
         a.sharp == b.sharp && a.pair_order == b.pair_order && a.source == b.source && a.citation == b.citation;
}

bool operator==(const ClassificationReport& a, const ClassificationReport& b) {
  return a.group == b.group && a.case_tag == b.case_tag && a.actions == b.actions && a.citations == b.citations &&
         a.k3_verdict == b.k3_verdict;
}

}  // namespace bbt
