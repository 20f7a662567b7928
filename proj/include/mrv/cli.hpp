#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrv/betti.hpp"
#include "mrv/horace.hpp"
#include "mrv/maxrank.hpp"

namespace mrv {

using ordered_json = nlohmann::ordered_json;

// Serializers shared by the command-line driver and the report tests.  All
// output goes through these so that identical inputs yield identical bytes.
ordered_json rank_report_json(const RankReport& rep);
ordered_json consistency_json(const ConsistencyReport& rep);
ordered_json betti_table_json(const BettiTable& table);
ordered_json comparison_json(const MrcComparison& cmp);
ordered_json theorem1_json(const Theorem1Check& chk);
ordered_json trace_json(const horace::ReductionTrace& trace);

// Runs one invocation.  `args` excludes the program name.  Returns the process
// exit code: 0 success/certified, 1 refuted/stuck/mismatch, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrv
