#pragma once

#include "analysis.hpp"
#include "transform.hpp"

#include <string>

namespace qpf::report {

struct OptimizeResult {
  an::MergeReport merges;
  xform::GateStats before;
  xform::GateStats after;
};

// Stats document for the CLI: counts, partitions, invariants, warnings.
std::string to_json(const ir::Program& p, const OptimizeResult& r, const std::string& name);
std::string to_text(const ir::Program& p, const OptimizeResult& r, const std::string& name);

}  // namespace qpf::report
