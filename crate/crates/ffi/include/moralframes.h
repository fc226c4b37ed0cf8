/* C interface for the moralframes library. Generated by cbindgen. */

#ifndef MORALFRAMES_H
#define MORALFRAMES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum mf_status {
  MF_STATUS_OK = 0,
  MF_STATUS_IO = 1,
  MF_STATUS_PARSE = 2,
  MF_STATUS_DATA = 3,
  MF_STATUS_ARGUMENT = 4,
  MF_STATUS_NULL_POINTER = 5,
  MF_STATUS_UTF8 = 6,
  MF_STATUS_PANIC = 7,
} mf_status;

/**
 * Opaque frame-axis-set handle.
 */
typedef struct mf_axes mf_axes;

/**
 * Opaque embedding store handle.
 */
typedef struct mf_embeddings mf_embeddings;

/**
 * Opaque moral lexicon handle.
 */
typedef struct mf_lexicon mf_lexicon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mf_version(void);

/**
 * Message for the most recent error on this thread. Valid until the next
 * failing call on the same thread; never NULL.
 */
const char *mf_last_error_message(void);

/**
 * Loads a whitespace-separated embedding text file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum mf_status mf_embeddings_load(const char *path, struct mf_embeddings **out);

/**
 * # Safety
 * `store` must be NULL or a pointer from `mf_embeddings_load`, not yet freed.
 */
void mf_embeddings_free(struct mf_embeddings *store);

/**
 * Embedding dimensionality, or 0 for NULL.
 *
 * # Safety
 * `store` must be NULL or a live handle.
 */
size_t mf_embeddings_dim(const struct mf_embeddings *store);

/**
 * Vocabulary size, or 0 for NULL.
 *
 * # Safety
 * `store` must be NULL or a live handle.
 */
size_t mf_embeddings_len(const struct mf_embeddings *store);

/**
 * Whether `token` (exact match, case-sensitive) is in the vocabulary.
 *
 * # Safety
 * `store` must be NULL or a live handle; `token` NUL-terminated or NULL.
 */
bool mf_embeddings_contains(const struct mf_embeddings *store, const char *token);

/**
 * Cosine similarity of two `len`-dimensional vectors into `out`.
 *
 * # Safety
 * `a` and `b` must point to `len` doubles; `out` must be valid.
 */
enum mf_status mf_cosine(const double *a, const double *b, size_t len, double *out);

/**
 * Loads the lexicon interchange TSV.
 *
 * # Safety
 * `path` must be NUL-terminated; `out` must be valid.
 */
enum mf_status mf_lexicon_load(const char *path, struct mf_lexicon **out);

/**
 * # Safety
 * `lexicon` must be NULL or a pointer from `mf_lexicon_load`, not yet freed.
 */
void mf_lexicon_free(struct mf_lexicon *lexicon);

/**
 * Total number of (cell, word) assignments, or 0 for NULL.
 *
 * # Safety
 * `lexicon` must be NULL or a live handle.
 */
size_t mf_lexicon_len(const struct mf_lexicon *lexicon);

/**
 * Builds the five frame axes from pole centroids.
 *
 * # Safety
 * All handles must be live; `out` must be valid.
 */
enum mf_status mf_axes_build(const struct mf_lexicon *lexicon,
                             const struct mf_embeddings *store,
                             struct mf_axes **out);

/**
 * Loads an axis-set JSON written by `mf_axes_save_json` or the CLI.
 *
 * # Safety
 * `path` must be NUL-terminated; `out` must be valid.
 */
enum mf_status mf_axes_load_json(const char *path, struct mf_axes **out);

/**
 * Writes the axis set as JSON (atomic replace).
 *
 * # Safety
 * `axes` must be a live handle; `path` NUL-terminated.
 */
enum mf_status mf_axes_save_json(const struct mf_axes *axes, const char *path);

/**
 * # Safety
 * `axes` must be NULL or a pointer from an `mf_axes_*` constructor.
 */
void mf_axes_free(struct mf_axes *axes);

/**
 * Axis-set dimensionality, or 0 for NULL.
 *
 * # Safety
 * `axes` must be NULL or a live handle.
 */
size_t mf_axes_dim(const struct mf_axes *axes);

/**
 * Normalizes and tokenizes `text`, then scores it against the five axes.
 *
 * `bias_out` and `intensity_out` must hold 5 doubles each, filled in
 * canonical foundation order (care, fairness, loyalty, authority,
 * sanctity). `baseline` is either a pointer to the 5 per-foundation corpus
 * baseline biases, or NULL, in which case intensity is the variance of the
 * contributions around the document's own bias. Fails with `MF_STATUS_DATA` when
 * no token is embedded.
 *
 * # Safety
 * Handles must be live; `text` NUL-terminated; out-pointers valid;
 * `baseline` NULL or 5 doubles.
 */
enum mf_status mf_score_text(const struct mf_axes *axes,
                             const struct mf_embeddings *store,
                             const char *text,
                             const double *baseline,
                             double *bias_out,
                             double *intensity_out,
                             size_t *n_scored_tokens_out);

/**
 * Normalizes `raw` (NFC, lowercase, URL/sigil/punctuation handling,
 * whitespace collapse) and returns a newly allocated string. NULL on
 * invalid input. Free with [`mf_string_free`].
 *
 * # Safety
 * `raw` must be NULL or NUL-terminated.
 */
char *mf_normalize_text(const char *raw);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer returned by `mf_normalize_text`.
 */
void mf_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MORALFRAMES_H */
