#ifndef QBM_H
#define QBM_H

/* C interface to the weighted q-Bernoulli library.
 *
 * Every call that can fail returns a qbm_status and records a message on the
 * context, readable with qbm_last_error until the next failing call on that
 * context. Strings returned through char** are owned by the caller and must be
 * released with qbm_string_free. A context may be used from one thread at a
 * time; separate contexts may be used concurrently. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QBM_API __declspec(dllexport)
#else
#define QBM_API __attribute__((visibility("default")))
#endif

typedef enum {
  QBM_OK = 0,
  QBM_INVALID_ARGUMENT = 1,
  QBM_DIVISION_BY_ZERO = 2,
  QBM_POLE_AT_ONE = 3,
  QBM_PRECISION_LOSS = 4,
  QBM_NOT_PADIC_INTEGER = 5,
  QBM_NOT_INVERTIBLE = 6,
  QBM_DEGENERATE_EQUATION = 7,
  QBM_CONFIG = 8,
  QBM_INTERNAL = 99
} qbm_status;

typedef struct qbm_context qbm_context;
/* An element of Q(zeta_m)(q). */
typedef struct qbm_value qbm_value;

QBM_API qbm_context* qbm_context_new(void);
QBM_API void qbm_context_free(qbm_context* ctx);
QBM_API const char* qbm_last_error(const qbm_context* ctx);
QBM_API const char* qbm_status_name(qbm_status status);
QBM_API const char* qbm_version(void);

QBM_API void qbm_string_free(char* s);
QBM_API void qbm_value_free(qbm_value* v);

/* family: "xi", "carlitz", "extended" (param = h) or "weighted" (param = alpha). */
QBM_API qbm_status qbm_qbernoulli(qbm_context* ctx, const char* family, long param, long n, qbm_value** out);
/* [x]_{q^c}. */
QBM_API qbm_status qbm_qnumber(qbm_context* ctx, long x, long c, qbm_value** out);
/* Weighted polynomial at a nonnegative integer x. */
QBM_API qbm_status qbm_weighted_poly(qbm_context* ctx, long alpha, long n, long x, qbm_value** out);
/* Generalized number of the character with modulus d and canonical index j. */
QBM_API qbm_status qbm_generalized(qbm_context* ctx, long d, long j, long alpha, long n, qbm_value** out);

/* op is one of '+', '-', '*', '/'. */
QBM_API qbm_status qbm_value_arith(qbm_context* ctx, const qbm_value* a, const qbm_value* b, char op,
                                   qbm_value** out);
QBM_API int qbm_value_is_zero(const qbm_value* v);
QBM_API int qbm_value_equal(const qbm_value* a, const qbm_value* b);
QBM_API qbm_status qbm_value_string(qbm_context* ctx, const qbm_value* v, char** out);
/* The q -> 1 limit; QBM_POLE_AT_ONE when it does not exist. */
QBM_API qbm_status qbm_value_limit(qbm_context* ctx, const qbm_value* v, char** out);
/* Value at the base point q (an expression such as "1+p" or "7/4") in Q_p
 * to absolute precision prec, as a JSON document. */
QBM_API qbm_status qbm_value_padic(qbm_context* ctx, const qbm_value* v, long p, const char* q, long prec, char** out);

/* Runs a table, verify or integrate command described by a JSON config and
 * returns the report. exit_code is 0 when every check passes and 1 when a
 * violation was found; configuration problems return QBM_CONFIG. */
QBM_API qbm_status qbm_run(qbm_context* ctx, const char* config_json, char** report, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* QBM_H */
