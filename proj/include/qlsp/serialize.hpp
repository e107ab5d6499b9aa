#pragma once

#include <json.hpp>

#include "qlsp/blockenc.hpp"
#include "qlsp/driver.hpp"
#include "qlsp/problem.hpp"
#include "qlsp/qrt.hpp"
#include "qlsp/qsp.hpp"

namespace qlsp {

using Json = nlohmann::json;

Json to_json(const LseInstance& inst);
LseInstance instance_from_json(const Json& j);

Json to_json(const OracleCostModel& model);
Json to_json(const SolveReport& report);
Json to_json(const QrtRunRecord& record);
Json to_json(const FilterPolynomial& poly);
Json to_json(const PhaseFactorSequence& seq);

void save_instance(const LseInstance& inst, const std::string& path);
LseInstance load_instance(const std::string& path);

// File name pattern for generated instances: {N}_{kappa}_{seed}.json
std::string instance_file_name(int n, double kappa, std::uint64_t seed);

}  // namespace qlsp
