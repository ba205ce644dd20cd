#ifndef DISPERSABLE_H
#define DISPERSABLE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum DspStatus {
  DSP_STATUS_OK = 0,
  DSP_STATUS_NULL_POINTER = 1,
  DSP_STATUS_INVALID_UTF8 = 2,
  DSP_STATUS_PARSE_ERROR = 3,
  DSP_STATUS_INVALID_INPUT = 4,
  DSP_STATUS_VERIFICATION_FAILED = 5,
  DSP_STATUS_UNKNOWN = 6,
  DSP_STATUS_NOT_FOUND = 7,
  DSP_STATUS_INTERNAL = 8,
} DspStatus;

// Opaque book embedding handle.
typedef struct DspEmbedding DspEmbedding;

// Opaque graph handle.
typedef struct DspGraph DspGraph;

// Parses the `n m` / `u v` graph text format.
//
// # Safety
// `src` must be a NUL-terminated string and `out` a valid pointer.
enum DspStatus dsp_graph_from_text(const char *src, struct DspGraph **out);

// Builds a named graph; `params` may be null when `param_count` is 0.
//
// # Safety
// `name` must be NUL-terminated, `params` must point to `param_count`
// values, `out` must be valid.
enum DspStatus dsp_graph_from_name(const char *name,
                                   const size_t *params,
                                   size_t param_count,
                                   struct DspGraph **out);

// # Safety
// `g` must come from this library or be null.
void dsp_graph_free(struct DspGraph *g);

// # Safety
// `g` must be a valid graph handle or null (returns 0).
size_t dsp_graph_vertex_count(const struct DspGraph *g);

// # Safety
// `g` must be a valid graph handle or null (returns 0).
size_t dsp_graph_edge_count(const struct DspGraph *g);

// # Safety
// `g` must be a valid graph handle or null (returns 0).
size_t dsp_graph_max_degree(const struct DspGraph *g);

// Parses the embedding text format against `g`.
//
// # Safety
// Pointers must be valid; `src` NUL-terminated.
enum DspStatus dsp_embedding_from_text(const struct DspGraph *g,
                                       const char *src,
                                       struct DspEmbedding **out);

// # Safety
// Pointers must be valid; the string is released with `dsp_string_free`.
enum DspStatus dsp_embedding_to_text(const struct DspGraph *g,
                                     const struct DspEmbedding *emb,
                                     char **out);

// # Safety
// `emb` must be a valid handle or null (returns 0).
size_t dsp_embedding_page_count(const struct DspEmbedding *emb);

// # Safety
// `emb` must come from this library or be null.
void dsp_embedding_free(struct DspEmbedding *emb);

// # Safety
// `s` must come from this library or be null.
void dsp_string_free(char *s);

// `Ok` when the embedding is valid, `VerificationFailed` when not.
//
// # Safety
// Pointers must be valid handles.
enum DspStatus dsp_verify(const struct DspGraph *g,
                          const struct DspEmbedding *emb,
                          bool dispersable);

// Least page count in `[lower, upper]` using the internal solver.
// `budget_seconds <= 0` means unlimited. Returns `NotFound` when the whole
// range is infeasible and `Unknown` when the budget ran out.
//
// # Safety
// `g`, `pages_out` and `witness_out` must be valid.
enum DspStatus dsp_decide(const struct DspGraph *g,
                          size_t lower,
                          size_t upper,
                          bool dispersable,
                          double budget_seconds,
                          size_t *pages_out,
                          struct DspEmbedding **witness_out);

// Three-page dispersable layout from a rotation system in text form.
//
// # Safety
// Pointers must be valid; `rotation` NUL-terminated.
enum DspStatus dsp_barnette(const struct DspGraph *g,
                            const char *rotation,
                            struct DspEmbedding **out);

// SVG chord diagram; release with `dsp_string_free`.
//
// # Safety
// Pointers must be valid handles.
enum DspStatus dsp_render_svg(const struct DspGraph *g, const struct DspEmbedding *emb, char **out);

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *dsp_last_error_message(void);

#endif  /* DISPERSABLE_H */
