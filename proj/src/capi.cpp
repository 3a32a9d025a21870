#include "phasefold.h"

#include "analysis.hpp"
#include "frontend.hpp"
#include "report.hpp"
#include "simulator.hpp"
#include "transform.hpp"

#include <cstring>
#include <string>

struct pf_program {
  qpf::ir::Program prog;
};

struct pf_result {
  qpf::report::OptimizeResult res;
  pf_program optimized;
};

namespace {

thread_local std::string g_error;

pf_status fail(pf_status code, const std::string& msg) {
  g_error = msg;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(malloc(s.size() + 1));
  memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

void pf_options_default(pf_options* opt) {
  opt->mode = "pol";
  opt->cleanup = 1;
  opt->toffoli_hczh = 0;
  opt->star_cap = 64;
  opt->groebner_pairs = 50000;
  opt->rewrite_steps = 100000;
}

pf_status pf_parse_file(const char* path, pf_program** out) {
  if (!path || !out) return fail(PF_INVALID_ARGUMENT, "null argument");
  try {
    auto p = new pf_program{qpf::frontend::parse_file(path)};
    *out = p;
    return PF_OK;
  } catch (const std::exception& e) {
    return fail(PF_PARSE_ERROR, e.what());
  }
}

pf_status pf_parse_string(const char* text, const char* format, pf_program** out) {
  if (!text || !format || !out) return fail(PF_INVALID_ARGUMENT, "null argument");
  try {
    qpf::ir::SourceFormat fmt = strcmp(format, "qc") == 0 ? qpf::ir::SourceFormat::QC
                                                          : qpf::ir::SourceFormat::QASM3;
    *out = new pf_program{qpf::frontend::parse_string(text, fmt)};
    return PF_OK;
  } catch (const std::exception& e) {
    return fail(PF_PARSE_ERROR, e.what());
  }
}

void pf_program_free(pf_program* p) { delete p; }

pf_status pf_emit(const pf_program* p, const char* format, char** out_text) {
  if (!p || !out_text) return fail(PF_INVALID_ARGUMENT, "null argument");
  try {
    std::string text;
    if (!format) {
      text = qpf::frontend::emit(p->prog);
    } else {
      qpf::ir::SourceFormat fmt = strcmp(format, "qc") == 0 ? qpf::ir::SourceFormat::QC
                                                            : qpf::ir::SourceFormat::QASM3;
      text = qpf::frontend::emit(p->prog, fmt);
    }
    *out_text = dup_string(text);
    return PF_OK;
  } catch (const std::exception& e) {
    return fail(PF_ERROR, e.what());
  }
}

void pf_string_free(char* s) { free(s); }

uint32_t pf_num_qubits(const pf_program* p) { return p ? p->prog.nqubits() : 0; }

int pf_t_count(const pf_program* p) { return p ? qpf::xform::count(p->prog).t : 0; }

int pf_gate_count(const pf_program* p) { return p ? qpf::xform::count(p->prog).total : 0; }

pf_status pf_optimize(const pf_program* p, const pf_options* opt, pf_result** out) {
  if (!p || !opt || !out) return fail(PF_INVALID_ARGUMENT, "null argument");
  try {
    qpf::an::Options o;
    if (strcmp(opt->mode, "aff") == 0)
      o.mode = qpf::an::Mode::Aff;
    else if (strcmp(opt->mode, "quad") == 0)
      o.mode = qpf::an::Mode::Quad;
    else if (strcmp(opt->mode, "pol") == 0)
      o.mode = qpf::an::Mode::Pol;
    else
      return fail(PF_INVALID_ARGUMENT, "unknown mode; expected aff, quad or pol");
    o.star_cap = opt->star_cap;
    o.gb_budget.max_pairs = opt->groebner_pairs;
    o.rewrite_budget = opt->rewrite_steps;
    o.toffoli_hczh = opt->toffoli_hczh != 0;

    auto r = new pf_result;
    r->res.before = qpf::xform::count(p->prog);
    r->res.merges = qpf::an::run(p->prog, o);
    r->optimized.prog = qpf::xform::apply_merges(p->prog, r->res.merges, opt->cleanup != 0);
    r->res.after = qpf::xform::count(r->optimized.prog);
    *out = r;
    return PF_OK;
  } catch (const std::exception& e) {
    return fail(PF_ERROR, e.what());
  }
}

void pf_result_free(pf_result* r) { delete r; }

const pf_program* pf_result_program(const pf_result* r) { return r ? &r->optimized : nullptr; }

pf_status pf_result_json(const pf_result* r, const char* name, char** out_text) {
  if (!r || !out_text) return fail(PF_INVALID_ARGUMENT, "null argument");
  *out_text = dup_string(
      qpf::report::to_json(r->optimized.prog, r->res, name ? name : "circuit"));
  return PF_OK;
}

pf_status pf_result_text(const pf_result* r, const char* name, char** out_text) {
  if (!r || !out_text) return fail(PF_INVALID_ARGUMENT, "null argument");
  *out_text = dup_string(
      qpf::report::to_text(r->optimized.prog, r->res, name ? name : "circuit"));
  return PF_OK;
}

pf_status pf_verify(const pf_program* original, const pf_program* optimized, uint32_t unroll,
                    uint32_t qubit_cap) {
  if (!original || !optimized) return fail(PF_INVALID_ARGUMENT, "null argument");
  if (original->prog.nqubits() > qubit_cap)
    return fail(PF_UNSUPPORTED,
                "instance exceeds the verification qubit cap; skipped");
  try {
    auto a = qpf::sim::enumerate_paths(original->prog, unroll);
    auto b = qpf::sim::enumerate_paths(optimized->prog, unroll);
    if (a.size() != b.size())
      return fail(PF_VERIFY_MISMATCH, "path count differs between programs");
    for (size_t i = 0; i < a.size(); ++i) {
      if (!qpf::sim::equiv_up_to_phase(a[i].op, b[i].op))
        return fail(PF_VERIFY_MISMATCH, "path " + std::to_string(i) +
                                            " differs beyond a global phase");
    }
    return PF_OK;
  } catch (const qpf::sim::Unsupported& e) {
    return fail(PF_UNSUPPORTED, e.what());
  } catch (const std::exception& e) {
    return fail(PF_ERROR, e.what());
  }
}

const char* pf_last_error(void) { return g_error.c_str(); }

}  // extern "C"
