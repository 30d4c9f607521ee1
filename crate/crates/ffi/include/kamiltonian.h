#ifndef KAMILTONIAN_H
#define KAMILTONIAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KamFormat {
  KAM_FORMAT_TEXT = 0,
  KAM_FORMAT_LATEX = 1,
  KAM_FORMAT_JSON = 2,
} KamFormat;

/**
 * Result of every fallible call.
 */
typedef enum KamStatus {
  KAM_STATUS_OK = 0,
  KAM_STATUS_NULL_ARGUMENT = 1,
  KAM_STATUS_INVALID_UTF8 = 2,
  KAM_STATUS_PARSE_ERROR = 3,
  KAM_STATUS_ENGINE_ERROR = 4,
  KAM_STATUS_ORDER_LIMIT = 5,
  KAM_STATUS_INVALID_ARGUMENT = 6,
  KAM_STATUS_PANIC = 7,
} KamStatus;

typedef enum KamTarget {
  KAM_TARGET_K = 0,
  KAM_TARGET_S = 1,
} KamTarget;

/**
 * An expansion result: `K^(0..N)` and `S^(1..N+1)`.
 */
typedef struct KamExpansion KamExpansion;

/**
 * A parsed model file.
 */
typedef struct KamModel KamModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *kam_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *kam_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void kam_string_free(char *s);

/**
 * Parses a model definition. On a parse error the message carries the
 * line and column.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KamStatus kam_model_parse(const char *src, struct KamModel **out);

/**
 * Number of Hermiticity warnings raised while parsing.
 *
 * # Safety
 * `model` must be a live handle or null.
 */
size_t kam_model_warning_count(const struct KamModel *model);

/**
 * # Safety
 * `model` must come from [`kam_model_parse`] and not have been freed.
 */
void kam_model_free(struct KamModel *model);

/**
 * Runs the expansion to `order`. `gauge` is `"van-vleck"` or
 * `"floquet-magnus"` (null means the model's gauge, else van Vleck); `t0`
 * is an optional rational fraction of the period.
 *
 * # Safety
 * `model` must be a live handle, string arguments NUL-terminated or null,
 * and `out` a valid pointer.
 */
enum KamStatus kam_expand(const struct KamModel *model,
                          uint32_t order,
                          const char *gauge,
                          const char *t0,
                          struct KamExpansion **out);

/**
 * Reads an expansion back from its JSON form.
 *
 * # Safety
 * `json` must be NUL-terminated and `out` a valid pointer.
 */
enum KamStatus kam_expansion_from_json(const char *json, struct KamExpansion **out);

/**
 * Expansion order N of a result.
 *
 * # Safety
 * `x` must be a live handle or null (which yields 0).
 */
uint32_t kam_expansion_order(const struct KamExpansion *x);

/**
 * Renders the whole result.
 *
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum KamStatus kam_expansion_render(const struct KamExpansion *x,
                                    enum KamFormat format,
                                    char **out);

/**
 * Renders `K^(n)` alone.
 *
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum KamStatus kam_expansion_render_k(const struct KamExpansion *x,
                                      uint32_t n,
                                      enum KamFormat format,
                                      char **out);

/**
 * # Safety
 * `x` must come from this library and not have been freed.
 */
void kam_expansion_free(struct KamExpansion *x);

/**
 * Closed-form van Vleck expansion of order `order` for `K` or `S/(iħ)`,
 * rendered as text or LaTeX, one order per line.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum KamStatus kam_closed_form(uint32_t order,
                               enum KamTarget target,
                               enum KamFormat format,
                               char **out);

/**
 * Number of grid paths contributing to `K^(n)_[k]`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum KamStatus kam_diagram_path_count(uint32_t n, uint32_t k, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KAMILTONIAN_H */
