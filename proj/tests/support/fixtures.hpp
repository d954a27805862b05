// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "araucaria/config/topology.hpp"
#include "araucaria/intent/analyzer.hpp"
#include "araucaria/p4/ast.hpp"

namespace testsupport {

// Canonical synchronization intent used across the suite.
extern const char* const kSyncIntentText;

// Paths into the checked-in sample corpus.
std::string sample_path(const std::string& name);
std::string template_dir();
std::string cli_path();

// The in-network GVT program parsed from samples/netgvt.p4s.
araucaria::p4::Program load_netgvt();

// Plans with the common shapes the pipeline produces.
araucaria::intent::RefinementPlan make_plan(int replica_count,
                                            araucaria::intent::ConsistencyMode mode,
                                            bool with_merge);
araucaria::intent::RefinementPlan listing_one_plan();

}  // namespace testsupport
