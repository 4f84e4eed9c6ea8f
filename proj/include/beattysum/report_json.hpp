#pragma once

#include <json.hpp>

#include "beattysum/harness.hpp"

namespace bsum::report {

using nlohmann::ordered_json;

/// Big integers become JSON integers when they fit in 64 bits, strings otherwise.
ordered_json big_integer(const mpz_class& v);

ordered_json to_json(const harness::HarnessConfig& cfg);
ordered_json to_json(const harness::AuditReport& audit);
/// {meta, results, provenance}.
ordered_json to_json(const harness::TheoremReport& rep);
ordered_json to_json(const harness::CorollaryReport& rep);

}  // namespace bsum::report
