/* Phase folding for quantum programs: C interface.
 *
 * All functions return pf_status; handles are opaque and must be released
 * with their matching free function. Error details for the calling thread
 * are available through pf_last_error().
 */
#ifndef PHASEFOLD_H
#define PHASEFOLD_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pf_program pf_program;
typedef struct pf_result pf_result;

typedef enum pf_status {
  PF_OK = 0,
  PF_ERROR = 1,
  PF_PARSE_ERROR = 2,
  PF_VERIFY_MISMATCH = 3,
  PF_INVALID_ARGUMENT = 4,
  PF_UNSUPPORTED = 5
} pf_status;

typedef struct pf_options {
  const char* mode;     /* "aff", "quad" or "pol" */
  int cleanup;          /* cancel adjacent inverse pairs after merging */
  int toffoli_hczh;     /* desugar Toffoli through its phase gadget everywhere */
  uint32_t star_cap;    /* Kleene iteration bound */
  uint64_t groebner_pairs; /* completion budget before degrading */
  uint64_t rewrite_steps;  /* path-sum rewrite budget */
} pf_options;

void pf_options_default(pf_options* opt);

/* Format is taken from the extension: .qc, else openQASM 3 subset. */
pf_status pf_parse_file(const char* path, pf_program** out);
pf_status pf_parse_string(const char* text, const char* format /* "qc"|"qasm3" */,
                          pf_program** out);
void pf_program_free(pf_program* p);

pf_status pf_emit(const pf_program* p, const char* format /* NULL: native */, char** out_text);
void pf_string_free(char* s);

uint32_t pf_num_qubits(const pf_program* p);
int pf_t_count(const pf_program* p);
int pf_gate_count(const pf_program* p);

pf_status pf_optimize(const pf_program* p, const pf_options* opt, pf_result** out);
void pf_result_free(pf_result* r);
const pf_program* pf_result_program(const pf_result* r);
pf_status pf_result_json(const pf_result* r, const char* name, char** out_text);
pf_status pf_result_text(const pf_result* r, const char* name, char** out_text);

/* Path-wise equivalence up to a per-path global phase with loops unrolled
 * 0..unroll times. PF_UNSUPPORTED marks instances beyond the qubit cap or
 * the exact arithmetic (callers should treat it as a skip). */
pf_status pf_verify(const pf_program* original, const pf_program* optimized, uint32_t unroll,
                    uint32_t qubit_cap);

const char* pf_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* PHASEFOLD_H */
