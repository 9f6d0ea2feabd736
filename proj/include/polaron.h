/* polaron.h — C API for the Dirac polaron spectral laboratory.
 *
 * All objects are opaque handles created and destroyed through this header;
 * every function returns a plr_status, with a thread-local message available
 * from plr_last_error() after a failure.  The configuration uses the same
 * `key = value` grammar as the config files (see README).
 */

#ifndef POLARON_H
#define POLARON_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plr_status {
    PLR_OK = 0,
    PLR_ERR_INVALID_ARGUMENT = 1,
    PLR_ERR_DIMENSION_MISMATCH = 2,
    PLR_ERR_PARSE = 3,
    PLR_ERR_BUDGET = 4,
    PLR_ERR_SINGULAR_NODE = 5,
    PLR_ERR_SYMMETRY = 6,
    PLR_ERR_SOLVER = 7,
    PLR_ERR_HYPOTHESIS = 8,
    PLR_ERR_IO = 9,
    PLR_ERR_INTERNAL = 10
} plr_status;

typedef struct plr_config plr_config;
typedef struct plr_hamiltonian plr_hamiltonian;
typedef struct plr_spectrum plr_spectrum;

const char *plr_status_name(plr_status s);
/* message of the most recent failure on this thread; never NULL */
const char *plr_last_error(void);

/* ---- configuration ---- */
plr_status plr_config_create(plr_config **out);
plr_status plr_config_load(const char *path, plr_config **out);
plr_status plr_config_parse(const char *text, plr_config **out);
void plr_config_destroy(plr_config *cfg);
plr_status plr_config_set(plr_config *cfg, const char *key, const char *value);
plr_status plr_config_get(const plr_config *cfg, const char *key, char *buf, size_t buflen);

/* ---- assembly and eigensolvers ---- */
plr_status plr_assemble(const plr_config *cfg, plr_hamiltonian **out);
void plr_hamiltonian_destroy(plr_hamiltonian *h);
plr_status plr_hamiltonian_dim(const plr_hamiltonian *h, uint64_t *dim);
plr_status plr_hamiltonian_nnz(const plr_hamiltonian *h, uint64_t *nnz);
plr_status plr_hamiltonian_write_json(const plr_hamiltonian *h, const char *path);

plr_status plr_solve_lowest(const plr_hamiltonian *h, uint32_t n_eigs, plr_spectrum **out);
plr_status plr_solve_dense(const plr_hamiltonian *h, plr_spectrum **out);
void plr_spectrum_destroy(plr_spectrum *s);
plr_status plr_spectrum_count(const plr_spectrum *s, uint64_t *count);
plr_status plr_spectrum_eigenvalue(const plr_spectrum *s, uint64_t i, double *value);
plr_status plr_spectrum_residual(const plr_spectrum *s, uint64_t i, double *value);

/* lowest eigenvalue of the configured model */
plr_status plr_ground_energy(const plr_config *cfg, double *energy);

/* ---- batch pipelines; out_dir == NULL uses the config's output.dir ----
 * Reports land under out_dir as CSV/JSON (and SVG for scan/dispersion).
 */
plr_status plr_run_assemble(const plr_config *cfg, const char *out_dir);
plr_status plr_run_solve(const plr_config *cfg, const char *out_dir);
plr_status plr_run_scan(const plr_config *cfg, const char *out_dir);
plr_status plr_run_dispersion(const plr_config *cfg, const char *out_dir);
plr_status plr_run_ir(const plr_config *cfg, const char *out_dir);
plr_status plr_run_sectors(const plr_config *cfg, const char *out_dir);

/* which: comma-separated check names, or "all" / NULL for every check.
 * hard_failures counts checks whose assertions failed; unmet theorem
 * hypotheses are flagged in the reports but do not count.
 */
plr_status plr_run_check(const plr_config *cfg, const char *which, const char *out_dir,
                         int *hard_failures);

#ifdef __cplusplus
}
#endif

#endif /* POLARON_H */
