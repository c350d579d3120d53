// Copyright 2026 The tomoforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to tomoforge: two-spin NMR density-matrix reconstruction.
 *
 * Every object is an opaque handle released by its matching *_free call.
 * Strings returned through `char**` are heap-allocated and released with
 * tf_string_free. Functions that can fail return a tf_status; on failure
 * tf_last_error() describes the problem (per calling thread).
 *
 * Read-out ids follow the usual table numbering: 1..9 are the rotations
 * II, IX, IY, XI, XX, XY, YI, YX, YY observed on the H spin, 10..18 the same
 * rotations observed on the P spin.
 */
#ifndef TOMOFORGE_TOMOFORGE_H_
#define TOMOFORGE_TOMOFORGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TOMOFORGE_API __declspec(dllexport)
#else
#define TOMOFORGE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
  TF_OK = 0,
  TF_ERR_NUMERIC = 1, /* numerical failure, e.g. nothing determinable */
  TF_ERR_INVALID = 2, /* invalid input: bad file, id, flag value */
  TF_ERR_INTERNAL = 3
} tf_status;

typedef enum tf_format { TF_FORMAT_TEXT = 0, TF_FORMAT_CSV = 1 } tf_format;
typedef enum tf_norm { TF_NORM_SPECTRAL = 0, TF_NORM_FROBENIUS = 1 } tf_norm;

typedef struct tf_design tf_design;
typedef struct tf_analysis tf_analysis;
typedef struct tf_reconstruction tf_reconstruction;
typedef struct tf_set_list tf_set_list;

TOMOFORGE_API const char* tf_version(void);
TOMOFORGE_API const char* tf_last_error(void);
TOMOFORGE_API void tf_string_free(char* s);
TOMOFORGE_API double tf_default_threshold(void);

/* "all" or "1-9,10,11". Writes up to `capacity` ids; *count receives the
 * full count. */
TOMOFORGE_API tf_status tf_parse_readout_list(const char* text, int* ids, size_t capacity, size_t* count);

/* flag (may be NULL) > $TOMOFORGE_THRESHOLD > default. */
TOMOFORGE_API tf_status tf_resolve_threshold(const double* flag, double* out);

/* ---- design systems ---------------------------------------------------- */

TOMOFORGE_API tf_status tf_design_create(const int* ids, size_t count, int include_trace, tf_design** out);
TOMOFORGE_API tf_status tf_design_from_readings(const char* readings_text, int include_trace, tf_design** out);
TOMOFORGE_API void tf_design_free(tf_design* d);
TOMOFORGE_API size_t tf_design_rows(const tf_design* d);
/* Row-major rows x 16 coefficients and the rows right-hand sides. */
TOMOFORGE_API const double* tf_design_matrix(const tf_design* d);
TOMOFORGE_API const double* tf_design_rhs(const tf_design* d);
TOMOFORGE_API tf_status tf_design_rank(const tf_design* d, double tol, size_t* out);

/* ---- error-matrix analysis --------------------------------------------- */

TOMOFORGE_API tf_status tf_analysis_create(const tf_design* d, double threshold, tf_analysis** out);
TOMOFORGE_API void tf_analysis_free(tf_analysis* a);
TOMOFORGE_API const double* tf_analysis_normal_matrix(const tf_analysis* a); /* 16x16 */
TOMOFORGE_API const double* tf_analysis_eigenvalues(const tf_analysis* a);   /* 16, descending */
TOMOFORGE_API const double* tf_analysis_combinations(const tf_analysis* a);  /* row k = y_k */
TOMOFORGE_API size_t tf_analysis_ill_count(const tf_analysis* a);
TOMOFORGE_API tf_status tf_analysis_format(const tf_analysis* a, tf_format format, char** out);

/* ---- reconstruction ---------------------------------------------------- */

/* prior_density_text NULL selects the maximally mixed prior. */
TOMOFORGE_API tf_status tf_reconstruct(const tf_design* d, double threshold, const char* prior_density_text,
                                       int psd_project, tf_reconstruction** out);
TOMOFORGE_API void tf_reconstruction_free(tf_reconstruction* r);
TOMOFORGE_API double tf_reconstruction_chi2(const tf_reconstruction* r);
TOMOFORGE_API const double* tf_reconstruction_params(const tf_reconstruction* r); /* x1..x16 */
TOMOFORGE_API size_t tf_reconstruction_truncated_count(const tf_reconstruction* r);
TOMOFORGE_API tf_status tf_reconstruction_density(const tf_reconstruction* r, char** out);
TOMOFORGE_API tf_status tf_reconstruction_report(const tf_reconstruction* r, tf_format format, char** out);

/* ---- simulation and comparison ----------------------------------------- */

TOMOFORGE_API tf_status tf_simulate(const char* density_text, const int* ids, size_t count, double noise_sigma,
                                    uint64_t seed, char** readings_text);

/* delta = ||a - b|| / ||a||. Inputs with a Hermiticity defect above
 * hermitian_tol are rejected. */
TOMOFORGE_API tf_status tf_compare(const char* a_text, const char* b_text, tf_norm norm, double hermitian_tol,
                                   double* delta);

/* Largest |M(i,j) - conj(M(j,i))| of a density file. */
TOMOFORGE_API tf_status tf_density_hermiticity_defect(const char* density_text, double* defect);

/* ---- read-out set search ----------------------------------------------- */

TOMOFORGE_API tf_status tf_minimum_readout_count(unsigned threads, size_t* out);
/* Full-rank sets of size k; optionally ordered by conditioning, top = 0 keeps
 * all. */
TOMOFORGE_API tf_status tf_enumerate(int k, unsigned threads, int rank_by_conditioning, size_t top,
                                     tf_set_list** out);
TOMOFORGE_API void tf_set_list_free(tf_set_list* l);
TOMOFORGE_API size_t tf_set_list_size(const tf_set_list* l);
/* ids must hold 18 ints. */
TOMOFORGE_API tf_status tf_set_list_get(const tf_set_list* l, size_t index, int* ids, size_t* count,
                                        double* min_eigenvalue);
/* diff_reference: append a membership diff against the 72-entry reference
 * table of five-read-out sets. */
TOMOFORGE_API tf_status tf_set_list_format(const tf_set_list* l, tf_format format, int diff_reference, char** out);

#ifdef __cplusplus
}
#endif

#endif /* TOMOFORGE_TOMOFORGE_H_ */
