#ifndef PIBUNDLE_H
#define PIBUNDLE_H

#include <stdint.h>

#if defined(_WIN32)
#define PIB_API __declspec(dllexport)
#else
#define PIB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* status codes; the first four double as CLI exit codes */
typedef enum {
  PIB_OK = 0,
  PIB_CHECK_FAILED = 1,   /* a property check failed */
  PIB_INVALID_INPUT = 2,  /* bad config, spec or argument */
  PIB_UNDECIDED = 3,      /* resource limit; report still produced */
  PIB_NULL_HANDLE = 4,
  PIB_INTERNAL = 5
} pib_status;

typedef struct pib_job pib_job;

PIB_API const char* pib_version(void);

PIB_API pib_job* pib_job_new(void);
PIB_API void pib_job_free(pib_job* job);

/* TOML or JSON config file; later pib_job_set calls override its fields */
PIB_API pib_status pib_job_load_config(pib_job* job, const char* path);

/* keys: group, module, prime, j, method, degree_bound, samples, ext_cap, seed, jobs, out.
   group and module take a shorthand such as "heisenberg(3)" or "radical(2)", a path to a
   .json/.toml file, or inline JSON. */
PIB_API pib_status pib_job_set(pib_job* job, const char* key, const char* value);

/* commands: lattice, theta, jordan, cjt, bundle, springer, verify.
   Returns the exit status of the run; the report is available afterwards. */
PIB_API pib_status pib_job_run(pib_job* job, const char* command);

/* JSON report of the last run (owned by the job, valid until the next run or free) */
PIB_API const char* pib_job_report(const pib_job* job);
/* pretty-printed with the given indent */
PIB_API const char* pib_job_report_pretty(pib_job* job, int indent);

/* message for the last non-OK status, or "" */
PIB_API const char* pib_job_last_error(const pib_job* job);

/* output path from the config or --out, or "" */
PIB_API const char* pib_job_out_path(const pib_job* job);

#ifdef __cplusplus
}
#endif

#endif
