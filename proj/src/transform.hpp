#pragma once

#include "analysis.hpp"
#include "ir.hpp"

#include <map>

namespace qpf::xform {

struct GateStats {
  int total = 0;
  int t = 0;  // T/Tdg gates, odd pi/4 rotations, 7 per primitive CCZ/Toffoli
  int h = 0;
  int cnot = 0;
  int ccz_tof = 0;
  std::map<std::string, int> per_kind;
  uint64_t dynamic_t = 0;  // trip-count weighted estimate

  bool operator==(const GateStats& o) const {
    return total == o.total && t == o.t && h == o.h && cnot == o.cnot && ccz_tof == o.ccz_tof;
  }
};

GateStats count(const ir::Program& p);

// Applies a merge report: eliminable partitions are deleted, multi-member
// partitions keep one representative at the earliest location carrying the
// total angle. A CCZ/Toffoli whose virtual gadget terms were touched is
// decomposed into its Clifford+T network first. The optional cleanup pass
// cancels adjacent inverse pairs afterwards.
ir::Program apply_merges(const ir::Program& p, const an::MergeReport& r, bool cleanup);

// Adjacent inverse-pair cancellation (scanning past disjoint gates) within
// every straightline run; exposed for reuse.
void cancel_pass(ir::Program& p);

}  // namespace qpf::xform
