/* Copyright 2026 The FairAudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the fairness-auditing engine. All functions return a
 * status code; on failure fa_last_error() describes what went wrong for
 * the calling thread. Strings returned through char** are heap-allocated
 * and must be released with fa_string_free(). Rich results come back as
 * JSON or CSV text so the surface stays ABI-stable.
 */

#ifndef FAIRAUDIT_H_
#define FAIRAUDIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FA_API __declspec(dllexport)
#else
#define FA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fa_status {
  FA_OK = 0,
  FA_ERR_INVALID_INPUT = 1,
  FA_ERR_PARSE = 2,
  FA_ERR_EMPTY_VERSION_SPACE = 3,
  FA_ERR_NON_REALIZABLE_ORACLE = 4,
  FA_ERR_INFEASIBLE = 5,
  FA_ERR_NO_QUERY_NEEDED = 6,
  FA_ERR_NO_CROSSING = 7,
  FA_ERR_NOT_PSD = 8,
  FA_ERR_SIZE_LIMIT = 9,
  FA_ERR_DEGENERATE_CLASS = 10,
  FA_ERR_FEASIBILITY_TIMEOUT = 11,
  FA_ERR_IO = 12,
  FA_ERR_TRANSPORT = 13,
  FA_ERR_RUNTIME = 14
} fa_status;

/* Opaque handle to a loaded hypothesis class (domain + labelings). */
typedef struct fa_class fa_class;

FA_API const char* fa_version(void);

/* Message describing this thread's most recent failure; never NULL. */
FA_API const char* fa_last_error(void);

FA_API void fa_string_free(char* s);

/* ---- hypothesis classes ------------------------------------------------ */

FA_API fa_status fa_class_load(const char* path, fa_class** out);
FA_API fa_status fa_class_parse(const char* json_text, fa_class** out);

/* Generator spec, e.g. {"kind":"shattered","n":4} or
 * {"kind":"random","m":8,"k":16,"seed":1} or
 * {"kind":"threshold","csv":"data.csv","group_column":"g",
 *  "feature_columns":["x"],"k":32,"seed":1}. */
FA_API fa_status fa_class_generate(const char* generator_json, fa_class** out);

FA_API void fa_class_free(fa_class* cls);
FA_API fa_status fa_class_info(const fa_class* cls, size_t* num_hypotheses,
                               size_t* domain_size, double* pi1);
FA_API fa_status fa_class_save(const fa_class* cls, const char* path);

/* Labels of one hypothesis; `labels` must hold domain_size entries. */
FA_API fa_status fa_class_hypothesis(const fa_class* cls, size_t index,
                                     int8_t* labels);

/* Demographic parity of one hypothesis. */
FA_API fa_status fa_class_mu(const fa_class* cls, size_t index, double* mu);

/* ---- audits ------------------------------------------------------------ */

/* method: "iid" | "cal" | "minimax" | "oracle".
 * budget < 0 means unbounded. cal_mode: "checked" (default when NULL) or
 * "sampled". The audited model is cls[target]; the result JSON carries the
 * estimate, query count, per-round trace, transcript, the induced
 * version-space diameter and the error against the true value. */
FA_API fa_status fa_audit(const fa_class* cls, const char* method,
                          size_t target, double eps, double delta, long budget,
                          uint64_t seed, const char* cal_mode,
                          char** result_json);

/* Same audit against a remote model server (POST /query, GET /meta). The
 * true value is unknown here, so the result omits it. */
FA_API fa_status fa_audit_remote(const fa_class* cls, const char* method,
                                 const char* url, double eps, double delta,
                                 long budget, uint64_t seed,
                                 const char* cal_mode, char** result_json);

/* ---- minimax value and teaching dimension ------------------------------ */

/* cache_dir: directory for the persisted memo cache, or NULL to skip
 * persistence (the FAIRAUDIT_CACHE_DIR environment variable is the usual
 * source). */
FA_API fa_status fa_cost(const fa_class* cls, double eps,
                         const char* cache_dir, int* cost_out);

FA_API fa_status fa_xtd(const fa_class* cls, double eps, int* xtd_out);

/* mode: "exact" | "greedy" | "online". reference holds domain_size labels
 * (+1/-1). delta and seed only matter for the online mode. */
FA_API fa_status fa_specifying_set(const fa_class* cls, double eps,
                                   const int8_t* reference, const char* mode,
                                   double delta, uint64_t seed,
                                   char** result_json);

/* ---- evaluators --------------------------------------------------------- */

/* Exact mu-diameter of the version space induced by a labeled transcript. */
FA_API fa_status fa_mp_diameter(const fa_class* cls, const int* ids,
                                const int8_t* labels, size_t n, double* out);

/* ---- Gaussian linear auditing ------------------------------------------ */

/* n_random > 0: that many random models at dimension d (model ignored);
 * n_random == 0: a single trial of the model (a, b). Emits one CSV row per
 * trial: d,eps,seed,gamma_true,gamma_hat,abs_err,queries,branch. */
FA_API fa_status fa_gaussian_trials(size_t d, double eps, uint64_t seed,
                                    long n_random, const double* a, double b,
                                    char** csv_out);

/* Two-group audit of model (a, b) under Gaussian subpopulations given as
 * {"m0":[...],"m1":[...],"s0":[[...]],"s1":[[...]]}; NULL selects the
 * canonical pair m0 = 0, m1 = e1, identity covariances. paper_sign flips
 * the reported orientation to group0 - group1. */
FA_API fa_status fa_gaussian_two_group(size_t d, double eps, const double* a,
                                       double b, const char* pops_json,
                                       int paper_sign, char** result_json);

/* ---- experiments -------------------------------------------------------- */

/* Runs the full (method, budget, repeat) grid described by the config JSON;
 * returns the per-run CSV and the per-(method,budget) confidence-interval
 * summary CSV. If the config names an "out" path the files are written
 * there as well. */
FA_API fa_status fa_experiment_run(const char* config_json, char** runs_csv,
                                   char** summary_csv);

/* ---- model server ------------------------------------------------------- */

/* Serve cls[target] over HTTP until the process dies; blocks. */
FA_API fa_status fa_serve(const fa_class* cls, size_t target, const char* host,
                          int port);

#ifdef __cplusplus
}
#endif

#endif /* FAIRAUDIT_H_ */
