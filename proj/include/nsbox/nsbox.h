/* C interface to the nsbox library.
 *
 * Conventions: functions returning pointers yield NULL on failure; functions
 * returning int yield -1 on failure, otherwise the documented value. The
 * failure cause is kept per thread and read back with nsx_last_error_code /
 * nsx_last_error_message. Strings returned as char* are owned by the caller
 * and released with nsx_string_free.
 */
#ifndef NSBOX_NSBOX_H
#define NSBOX_NSBOX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  NSX_OK = 0,
  NSX_ERR_INVALID_ARGUMENT = 1,
  NSX_ERR_ZERO_DENOMINATOR = 2,
  NSX_ERR_SIGNALING = 3,
  NSX_ERR_ZERO_PROBABILITY = 4,
  NSX_ERR_SHAPE_MISMATCH = 5,
  NSX_ERR_VALIDATION = 6,
  NSX_ERR_NOT_PERMUTATION = 7,
  NSX_ERR_PARSE = 8,
  NSX_ERR_BUDGET_EXCEEDED = 9,
  NSX_ERR_TRUNCATED = 10,
  NSX_ERR_NO_PLAN = 11,
  NSX_ERR_UNKNOWN = 127
};

typedef struct nsx_box nsx_box;
typedef struct nsx_wiring nsx_wiring;
typedef struct nsx_plan nsx_plan;

const char* nsx_version(void);

int nsx_last_error_code(void);
const char* nsx_last_error_message(void);
void nsx_string_free(char* str);

/* ---- boxes ---- */

nsx_box* nsx_box_make_d(int d);
void nsx_box_free(nsx_box* box);
nsx_box* nsx_box_parse(const char* text, int strict);
char* nsx_box_write(const nsx_box* box);
int nsx_box_shape(const nsx_box* box, int* x_size, int* y_size, int* a_size, int* b_size);
/* 1 equal, 0 different */
int nsx_box_equal(const nsx_box* a, const nsx_box* b);
/* "num/den" */
char* nsx_box_entry(const nsx_box* box, int x, int y, int a, int b);
/* 1 pass, 0 fail; *report (optional) receives the rendered report */
int nsx_box_check_no_signaling(const nsx_box* box, int machine, char** report);
/* Full document check: parse errors return -1 (NSX_ERR_PARSE); semantic
 * failures (normalization, signaling) return 0 with the report rendered. */
int nsx_verify_box_document(const char* text, int machine, char** report);
char* nsx_box_total_variation(const nsx_box* a, const nsx_box* b);
char* nsx_box_game_win_probability(const nsx_box* box);

/* ---- interconversion ---- */

nsx_box* nsx_box_protocol2(const nsx_box* box, int d1);
/* *tv_error (optional) receives the total-variation distance from the exact
 * d2-box as "num/den" */
nsx_box* nsx_protocol3_box(int d1, int n, int d2, char** tv_error);

nsx_wiring* nsx_wiring_protocol1(const nsx_box* box1, const nsx_box* box2);
/* protocol: "p4", "two-zero", or "threshold" (s used only by threshold) */
nsx_wiring* nsx_wiring_round(const char* protocol, int d, int s);
nsx_wiring* nsx_wiring_parse(const char* text, int strict);
char* nsx_wiring_write(const nsx_wiring* w);
void nsx_wiring_free(nsx_wiring* w);
int nsx_wiring_equal(const nsx_wiring* a, const nsx_wiring* b);
nsx_box* nsx_wiring_effective_box(const nsx_wiring* w);
/* x = y = -1 renders every block */
char* nsx_wiring_round_table(const nsx_wiring* w, int x, int y, int machine);
char* nsx_wiring_cycles(const nsx_wiring* w, int machine);
/* Conditioned box of the repeat-until-success round; *success (optional)
 * receives the per-round success probability as "num/den". */
nsx_box* nsx_wiring_condition(const nsx_wiring* w, char** success);

/* ---- conversion plans ---- */

nsx_plan* nsx_plan_make(int d_from, int d_to);
void nsx_plan_free(nsx_plan* plan);
char* nsx_plan_render(const nsx_plan* plan, int machine);
char* nsx_plan_consumption(const nsx_plan* plan);
/* Runs the plan on exact tables: 1 when every step and the final box are
 * exact, 0 otherwise. */
int nsx_plan_execute(const nsx_plan* plan);

/* ---- sampling ---- */

/* schedule: "alt", "alice-first", or "bob-first" */
char* nsx_simulate(const char* protocol, int d, int s, int x, int y, long long trials,
                   uint64_t seed, const char* schedule, int machine);

#ifdef __cplusplus
}
#endif

#endif /* NSBOX_NSBOX_H */
