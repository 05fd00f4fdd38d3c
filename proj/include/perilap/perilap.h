/* Copyright 2026 The perilap Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to perilap. Every function returns a plp_status; on failure the
 * message is available from plp_last_error() on the calling thread. Strings
 * returned through char** out-parameters are owned by the caller and released
 * with plp_string_free().
 */

#ifndef PERILAP_PERILAP_H_
#define PERILAP_PERILAP_H_

#include <stdint.h>

#if defined(PERILAP_BUILDING_LIBRARY)
#define PLP_API __attribute__((visibility("default")))
#else
#define PLP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plp_status {
  PLP_OK = 0,
  PLP_INVALID_ARGUMENT = 1,
  PLP_INVALID_CELL = 2,
  PLP_ZERO_FREQUENCY = 3,
  PLP_SINGULARITY = 4,
  PLP_INVALID_GEOMETRY = 5,
  PLP_DIMENSION_MISMATCH = 6,
  PLP_SINGULAR_TARGET = 7,
  PLP_SINGULAR_OPERATOR = 8,
  PLP_DOMAIN = 9,
  PLP_FAMILY_INVALID = 10,
  PLP_INSUFFICIENT_DATA = 11,
  PLP_CONFIG = 12,
  PLP_INTERNAL = 99
} plp_status;

/* Flags reported by plp_solution_eval. */
#define PLP_EVAL_IN_HOLE 1
#define PLP_EVAL_NEAR_BOUNDARY 2

typedef struct plp_cell plp_cell;
typedef struct plp_solution plp_solution;

PLP_API const char* plp_version(void);
PLP_API const char* plp_last_error(void);
PLP_API const char* plp_status_name(plp_status status);

/* n = 0 restores the hardware default. */
PLP_API plp_status plp_set_threads(int n);

PLP_API plp_status plp_cell_create(double q11, double q22, plp_cell** out);
PLP_API void plp_cell_destroy(plp_cell* cell);
PLP_API plp_status plp_cell_greens(const plp_cell* cell, double x, double y, double* value);
PLP_API plp_status plp_cell_greens_grad(const plp_cell* cell, double x, double y, double* gx, double* gy);

PLP_API plp_status plp_config_validate(const char* config_json);
/* File name configured for an output: "solution", "grid", "reports",
 * "coefficients" or "verify". */
PLP_API plp_status plp_config_output_name(const char* config_json, const char* which, char** out);

PLP_API plp_status plp_solve_config(const char* config_json, plp_solution** out);
PLP_API void plp_solution_destroy(plp_solution* sol);
/* Points inside a hole set PLP_EVAL_IN_HOLE and leave the outputs untouched.
 * Any output pointer may be NULL. */
PLP_API plp_status plp_solution_eval(const plp_solution* sol, double x, double y, double* u, double* ux,
                                     double* uy, int* flags);
PLP_API plp_status plp_solution_constant(const plp_solution* sol, double* constant);
PLP_API plp_status plp_solution_to_json(const plp_solution* sol, char** out);
/* Grid from the solve block of the config that produced the solution. */
PLP_API plp_status plp_solution_grid_csv(const plp_solution* sol, char** out);

/* all_passed receives 1 iff every verdict meets its threshold. */
PLP_API plp_status plp_sweep_config(const char* config_json, char** report_json, char** coefficients_csv,
                                    int* all_passed);

PLP_API plp_status plp_verify_config(const char* config_json, uint64_t seed, char** table, char** report_json,
                                     int* all_passed);

PLP_API void plp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* PERILAP_PERILAP_H_ */
