#pragma once

#include "affine_domain.hpp"
#include "groebner.hpp"
#include "ir.hpp"
#include "poly_domain.hpp"

#include <map>
#include <string>

namespace qpf::an {

enum class Mode { Aff, Quad, Pol };
const char* mode_name(Mode m);

struct Options {
  Mode mode = Mode::Pol;
  gb::Budget gb_budget{};
  size_t rewrite_budget = 100000;
  uint32_t star_cap = 64;
  bool toffoli_hczh = false;  // desugar Toffoli through its phase gadget in
                              // every mode (the affine analysis always does)
};

// A phase contribution: a real gate location, or the k-th virtual rotation
// of a CCZ/Toffoli phase gadget (conditions a,b,c,ab,ac,bc,abc for k=0..6).
struct Loc {
  int32_t gate = -1;
  int16_t sub = -1;
  bool operator<(const Loc& o) const {
    return gate != o.gate ? gate < o.gate : sub < o.sub;
  }
  bool operator==(const Loc& o) const { return gate == o.gate && sub == o.sub; }
};

struct Partition {
  poly::BoolPoly cond;   // canonical condition, affine constant split off
  bool bottom = false;   // unmergeable representative
  uint32_t scope = 0;    // nonzero: confined to a summarized region
  bool nullable = false; // condition reduced to zero under the entry state
  std::vector<Loc> locs;
  poly::Angle angle;
  std::string cond_text;

  bool eliminable() const {
    return nullable || (!bottom && cond.is_zero()) || angle.is_zero();
  }
};

struct LoopInvariant {
  int32_t index = 0;
  std::string text;
  bool widened = false;
};

struct MergeReport {
  Mode mode = Mode::Pol;
  std::vector<Partition> partitions;
  poly::Angle global_phase;
  std::vector<LoopInvariant> invariants;
  std::vector<std::string> final_relation;  // two-vocabulary generators
  std::vector<std::string> warnings;
  bool degraded = false;
  double wall_ms = 0;

  struct Action {
    bool remove = false;
    poly::Angle angle;  // representative total when !remove
  };
  // Only touched locations appear; untouched gates have no entry.
  std::map<Loc, Action> actions;
};

MergeReport run(const ir::Program& p, const Options& opt);

// Two-vocabulary relation of a loop-free program body (test/report hook).
dom::TransitionIdeal top_relation_pol(const ir::Program& p, const Options& opt);
dom::KsElement top_relation_aff(const ir::Program& p, const Options& opt);

// Names for rendering: qubits x,y,z for n <= 3 else x0,x1,...; primed posts.
std::string var_display_name(uint32_t var, uint32_t n);

}  // namespace qpf::an
