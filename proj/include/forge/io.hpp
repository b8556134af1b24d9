#ifndef FORGE_IO_HPP
#define FORGE_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/coefficient.hpp"
#include "forge/levy.hpp"
#include "forge/path.hpp"
#include "forge/report.hpp"
#include "forge/stats.hpp"
#include "forge/symbol.hpp"
#include "forge/timechange.hpp"

namespace forge {

using Json = nlohmann::json;

// All parsers are strict: unknown keys are rejected with ParameterError so a
// typo in a config cannot silently change an experiment.

Json json_of(const ExponentSpec& spec);
ExponentSpec exponent_from_json(const Json& j);

Json json_of(const StateCoefficient& c);
StateCoefficient coefficient_from_json(const Json& j);

Json json_of(const StateSymbol& sym);
StateSymbol symbol_from_json(const Json& j);

Json json_of(const MCConfig& mc);
MCConfig mc_from_json(const Json& j);

Json json_of(const ConditionReport& r);
ConditionReport condition_report_from_json(const Json& j);

Json json_of(const VerifyReport& r);
VerifyReport verify_report_from_json(const Json& j);

// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

// Ensemble rows: path_id,t,state_1..state_d,flag with flag one of
// ok | exploded | censored.
void write_ensemble_csv(std::ostream& os, const std::vector<PathSkeleton>& paths);

// Clock rows: u,A_of_u.
void write_clock_csv(std::ostream& os, const ClockResult& clock);

// CF table rows: xi,re,im,se.
void write_cf_csv(std::ostream& os, const CFEstimate& est);

// Sample rows: one value per line under a `value` header.
void write_samples_csv(std::ostream& os, const std::vector<double>& xs);

}  // namespace forge

#endif
