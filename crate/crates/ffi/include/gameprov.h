#ifndef GAMEPROV_H
#define GAMEPROV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GpStatus {
  GP_STATUS_OK = 0,
  GP_STATUS_INVALID_ARGUMENT = 1,
  GP_STATUS_PARSE = 2,
  GP_STATUS_SEMANTIC = 3,
  GP_STATUS_NO_CONVERGENCE = 4,
  GP_STATUS_OUT_OF_RANGE = 5,
  GP_STATUS_PANIC = 6,
} GpStatus;

typedef enum GpMode {
  GP_MODE_ACYCLIC = 0,
  GP_MODE_LFP = 1,
  GP_MODE_GFP = 2,
} GpMode;

/**
 * A parsed game together with both players' basic valuations.
 */
typedef struct GpGame GpGame;

/**
 * A semiring selected by name, e.g. `"sorpinf"` or `"series:4"`.
 */
typedef struct GpSemiring GpSemiring;

/**
 * Values of a game valuation, one per position.
 */
typedef struct GpValuation GpValuation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *gp_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void gp_string_free(char *s);

/**
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum GpStatus gp_semiring_new(const char *name, struct GpSemiring **out);

/**
 * # Safety
 * `sr` must be null or a handle from [`gp_semiring_new`], not yet freed.
 */
void gp_semiring_free(struct GpSemiring *sr);

/**
 * Canonical name of the semiring.
 *
 * # Safety
 * `sr` must be a live handle; `out` must be writable.
 */
enum GpStatus gp_semiring_name(const struct GpSemiring *sr, char **out);

/**
 * Parses `value` and writes its canonical form.
 *
 * # Safety
 * `sr` must be a live handle; `value` a nul-terminated string; `out` writable.
 */
enum GpStatus gp_value_normalize(const struct GpSemiring *sr, const char *value, char **out);

/**
 * # Safety
 * As for [`gp_value_normalize`], with two operands.
 */
enum GpStatus gp_value_add(const struct GpSemiring *sr, const char *a, const char *b, char **out);

/**
 * # Safety
 * As for [`gp_value_normalize`], with two operands.
 */
enum GpStatus gp_value_mul(const struct GpSemiring *sr, const char *a, const char *b, char **out);

/**
 * Parses a game description whose values live in `sr`.
 *
 * # Safety
 * `sr` must be a live handle; `source` a nul-terminated string; `out` writable.
 */
enum GpStatus gp_game_parse(const struct GpSemiring *sr, const char *source, struct GpGame **out);

/**
 * # Safety
 * `g` must be null or a handle from [`gp_game_parse`], not yet freed.
 */
void gp_game_free(struct GpGame *g);

/**
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
enum GpStatus gp_game_len(const struct GpGame *g, size_t *out);

/**
 * Index of the position called `name`.
 *
 * # Safety
 * `g` must be a live handle; `name` a nul-terminated string; `out` writable.
 */
enum GpStatus gp_game_position(const struct GpGame *g, const char *name, size_t *out);

/**
 * Game valuation for `player` (0 or 1).
 *
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
enum GpStatus gp_game_evaluate(const struct GpGame *g,
                               uint8_t player_index,
                               enum GpMode mode,
                               struct GpValuation **out);

/**
 * # Safety
 * `v` must be null or a handle from [`gp_game_evaluate`], not yet freed.
 */
void gp_valuation_free(struct GpValuation *v);

/**
 * Formatted value at `position`.
 *
 * # Safety
 * `v` must be a live handle; `out` writable.
 */
enum GpStatus gp_valuation_get(const struct GpValuation *v, size_t position, char **out);

/**
 * Value of a sentence under an interpretation, through the evaluation game
 * or, with `direct` set, by direct fixed-point evaluation.
 *
 * # Safety
 * `sr` must be a live handle; strings nul-terminated; `out` writable.
 */
enum GpStatus gp_formula_evaluate(const struct GpSemiring *sr,
                                  const char *formula,
                                  const char *interpretation,
                                  bool direct,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAMEPROV_H */
