// Copyright 2026 The Scrapbook Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCRAPBOOK_SCRAPBOOK_H_
#define SCRAPBOOK_SCRAPBOOK_H_

/* C interface to the scrapbook dataset generator and evaluator.
 *
 * Functions return an sb_status. On failure sb_last_error() describes the
 * problem for the calling thread. Strings handed out through `char**`
 * parameters are owned by the caller and released with sb_free(). */

#include <stdint.h>

#if defined(_WIN32)
#define SB_API __declspec(dllexport)
#elif defined(SCRAPBOOK_BUILDING_LIBRARY)
#define SB_API __attribute__((visibility("default")))
#else
#define SB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_VALIDATION_FAILED = 1, /* dataset or config violates an invariant */
  SB_ERR_USAGE = 2,         /* bad arguments, malformed documents */
  SB_ERR_IO = 3,
  SB_ERR_INTERNAL = 4
} sb_status;

typedef struct sb_dataset sb_dataset;

SB_API const char* sb_version(void);
SB_API const char* sb_last_error(void);
SB_API void sb_free(char* p);

/* Parses and validates a generation config. On success `normalized` (may be
 * NULL) receives the config with every field spelled out. Violated
 * invariants yield SB_VALIDATION_FAILED with one problem per line in
 * sb_last_error(). */
SB_API sb_status sb_config_validate_json(const char* config_json, char** normalized);

/* Generates a dataset into `out_dir`. `runlog` (may be NULL) receives the
 * run log JSON. `jobs` <= 0 means one worker. */
SB_API sb_status sb_generate(const char* config_json, const char* out_dir, int jobs, char** runlog);

SB_API sb_status sb_dataset_open(const char* dataset_dir, sb_dataset** out);
SB_API void sb_dataset_close(sb_dataset* d);
SB_API sb_status sb_dataset_counts(const sb_dataset* d, int64_t* images, int64_t* questions);

/* Re-verifies geometry and answer keys. `report` (may be NULL) receives a
 * JSON document with the violations and the answer-key census. Returns
 * SB_VALIDATION_FAILED when any violation is found. */
SB_API sb_status sb_dataset_check(const sb_dataset* d, int jobs, char** report);

/* Scores `responses_path` (JSON lines) and writes the report files into
 * `out_dir`. `options_json` may be NULL or hold "filters", "approaches",
 * "jobs" and "verdicts" (also write verdicts.jsonl). `summary` (may be NULL) receives the plain-text summary table. */
SB_API sb_status sb_dataset_evaluate(const sb_dataset* d, const char* responses_path, const char* out_dir,
                                     const char* options_json, char** summary);

/* Extracts object cutouts from COCO instance annotations into `out_dir`.
 * `classes_csv` may be NULL or empty for every supported class. */
SB_API sb_status sb_build_bank(const char* annotations_path, const char* images_dir, const char* out_dir,
                               const char* classes_csv, int jobs, char** summary);

#ifdef __cplusplus
}
#endif

#endif /* SCRAPBOOK_SCRAPBOOK_H_ */
