#pragma once

#include <json.hpp>

#include "era/rays.hpp"
#include "era/spiralweb.hpp"
#include "era/verify.hpp"

namespace era {

/// Structured-output schema shared by the CLI and the test suite.
nlohmann::json to_json(const Ray& ray);
nlohmann::json to_json(const RayMatrix& matrix);
nlohmann::json to_json(const Counterexample& ce);
nlohmann::json to_json(const CheckResult& result);
nlohmann::json to_json(const VerificationReport& report);

const char* truncation_name(Truncation t);
const char* status_name(CheckStatus s);

}  // namespace era
