#pragma once

#include <json.hpp>

#include "bbt/classify.hpp"

namespace bbt {

// Integers that do not fit in 64 bits are written as decimal strings.
nlohmann::json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReportedAction& a);
nlohmann::json to_json(const ClassificationReport& r);
ClassificationReport report_from_json(const nlohmann::json& j);

bool operator==(const ReportedAction& a, const ReportedAction& b);
bool operator==(const ClassificationReport& a, const ClassificationReport& b);

}  // namespace bbt
