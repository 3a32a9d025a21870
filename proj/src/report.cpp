#include "report.hpp"

#include <json.hpp>

#include <sstream>

namespace qpf::report {

using nlohmann::json;

std::string to_json(const ir::Program& p, const OptimizeResult& r, const std::string& name) {
  json j;
  j["name"] = name;
  j["n"] = p.nqubits();
  j["mode"] = an::mode_name(r.merges.mode);
  j["counts"]["before"] = {{"gates", r.before.total}, {"t", r.before.t},
                           {"h", r.before.h},         {"cnot", r.before.cnot},
                           {"ccz_tof", r.before.ccz_tof}};
  j["counts"]["after"] = {{"gates", r.after.total}, {"t", r.after.t},
                          {"h", r.after.h},         {"cnot", r.after.cnot},
                          {"ccz_tof", r.after.ccz_tof}};
  if (r.before.dynamic_t != uint64_t(r.before.t))
    j["counts"]["dynamic_t_before"] = r.before.dynamic_t;
  if (r.after.dynamic_t != uint64_t(r.after.t))
    j["counts"]["dynamic_t_after"] = r.after.dynamic_t;
  j["wall_ms"] = r.merges.wall_ms;
  j["degraded"] = r.merges.degraded;
  if (!r.merges.global_phase.is_zero())
    j["global_phase"] = poly::to_string(r.merges.global_phase);
  json parts = json::array();
  for (const auto& part : r.merges.partitions) {
    json pj;
    pj["condition"] = part.cond_text;
    pj["angle"] = poly::to_string(part.angle);
    json locs = json::array();
    for (const auto& l : part.locs) {
      if (l.sub < 0)
        locs.push_back(l.gate);
      else
        locs.push_back(std::to_string(l.gate) + "." + std::to_string(l.sub));
    }
    pj["locations"] = locs;
    pj["eliminable"] = part.eliminable();
    if (part.scope) pj["inner"] = true;
    parts.push_back(std::move(pj));
  }
  j["partitions"] = std::move(parts);
  json invs = json::array();
  for (const auto& inv : r.merges.invariants) {
    json ij;
    ij["loop"] = inv.index;
    ij["invariant"] = inv.text;
    if (inv.widened) ij["widened"] = true;
    invs.push_back(std::move(ij));
  }
  j["loop_invariants"] = std::move(invs);
  j["final_relation"] = r.merges.final_relation;
  j["warnings"] = r.merges.warnings;
  return j.dump(2);
}

std::string to_text(const ir::Program& p, const OptimizeResult& r, const std::string& name) {
  std::ostringstream out;
  out << name << ": n=" << p.nqubits() << " mode=" << an::mode_name(r.merges.mode) << "\n";
  out << "  gates: " << r.before.total << " -> " << r.after.total << "\n";
  out << "  T:     " << r.before.t << " -> " << r.after.t << "\n";
  if (r.before.dynamic_t != uint64_t(r.before.t))
    out << "  T (dynamic estimate): " << r.before.dynamic_t << " -> " << r.after.dynamic_t
        << "\n";
  for (const auto& inv : r.merges.invariants) {
    out << "  loop " << inv.index << " invariant: " << inv.text;
    if (inv.widened) out << " (widened)";
    out << "\n";
  }
  for (const auto& w : r.merges.warnings) out << "  warning: " << w << "\n";
  return out.str();
}

}  // namespace qpf::report
