#pragma once

#include <filesystem>
#include <string>

#include <horoflow/counterexample.hpp>
#include <horoflow/flow.hpp>
#include <horoflow/gauge.hpp>
#include <horoflow/group.hpp>
#include <horoflow/spec_io.hpp>
#include <horoflow/uniqueness.hpp>

namespace horoflow::cli {

Json to_json(const GroupElement& x);
Json to_json(const IntegratorMeta& m);
Json to_json(const GroupCheckReport& r);
Json to_json(const GaugeCheckReport& r);
Json to_json(const RungMonitor& m);
Json to_json(const EquilibriumCondition& c);
Json to_json(const StabilityReport& r);
Json to_json(const NonuniquenessReport& r);

std::string utc_timestamp();

// Adds the timestamp and writes to stdout (json_stdout) or <dir>/report.json.
void emit_report(Json report, bool json_stdout, const std::filesystem::path& dir);

void write_uv_csv(const std::filesystem::path& path, const UVTrajectory& uv);
void write_csv(const std::filesystem::path& path, const Trajectory& tr);

}  // namespace horoflow::cli
