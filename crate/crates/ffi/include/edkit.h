#ifndef EDKIT_H
#define EDKIT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call.
 */
typedef enum EdStatus {
  ED_STATUS_OK = 0,
  ED_STATUS_NULL_POINTER = 1,
  ED_STATUS_INVALID_ARGUMENT = 2,
  ED_STATUS_CAPACITY = 3,
  ED_STATUS_NOT_PERMUTATION = 4,
  ED_STATUS_INVALID_SCRIPT = 5,
  ED_STATUS_INSUFFICIENT_DIMENSION = 6,
  ED_STATUS_ESTIMATOR = 7,
  ED_STATUS_GENERATION_FAILED = 8,
  ED_STATUS_PARSE = 9,
  ED_STATUS_OUT_OF_RANGE = 10,
  ED_STATUS_PANIC = 11,
} EdStatus;

typedef enum EdOpKind {
  ED_OP_KIND_INSERT = 0,
  ED_OP_KIND_DELETE = 1,
  ED_OP_KIND_SUBSTITUTE = 2,
} EdOpKind;

/**
 * Opaque block string.
 */
typedef struct EdBlocks EdBlocks;

/**
 * Opaque edit script.
 */
typedef struct EdScript EdScript;

/**
 * Opaque sparse Ulam embedding.
 */
typedef struct EdUlam EdUlam;

typedef struct EdAlignStats {
  size_t levels;
  uint64_t estimator_calls;
} EdAlignStats;

/**
 * One edit. `pos` is 1-based; `symbol` is 0 for deletions.
 */
typedef struct EdOp {
  enum EdOpKind kind;
  size_t pos;
  uint32_t symbol;
} EdOp;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *ed_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ed_version(void);

enum EdStatus ed_edit_distance(const uint32_t *a,
                               size_t a_len,
                               const uint32_t *b,
                               size_t b_len,
                               size_t *distance);

/**
 * Sets `*within` to whether the distance is at most `k`, and `*distance`
 * to the distance when it is.
 */
enum EdStatus ed_banded_distance(const uint32_t *a,
                                 size_t a_len,
                                 const uint32_t *b,
                                 size_t b_len,
                                 size_t k,
                                 bool *within,
                                 size_t *distance);

/**
 * Minimum-length script from `a` to `b`.
 */
enum EdStatus ed_optimal_alignment(const uint32_t *a,
                                   size_t a_len,
                                   const uint32_t *b,
                                   size_t b_len,
                                   struct EdScript **script);

/**
 * Recursive aligner. `band` of 0 queries exact distances; otherwise the
 * estimator answers `max(|a|, |b|)` beyond `band`. `stats` may be null.
 */
enum EdStatus ed_align(const uint32_t *a,
                       size_t a_len,
                       const uint32_t *b,
                       size_t b_len,
                       size_t m,
                       size_t band,
                       uint64_t seed,
                       struct EdScript **script,
                       struct EdAlignStats *stats);

size_t ed_script_len(const struct EdScript *script);

enum EdStatus ed_script_get(const struct EdScript *script, size_t index, struct EdOp *op);

/**
 * Applies `script` to `a`. Writes the result length to `*out_len`; when
 * `capacity` is too small nothing is copied and `OutOfRange` is returned.
 */
enum EdStatus ed_script_apply(const struct EdScript *script,
                              const uint32_t *a,
                              size_t a_len,
                              uint32_t *buf,
                              size_t capacity,
                              size_t *out_len);

void ed_script_free(struct EdScript *script);

/**
 * Embeds a permutation. `m` of 0 picks the least valid level count.
 */
enum EdStatus ed_ulam_embed(const uint32_t *perm,
                            size_t len,
                            double eps,
                            uint64_t seed,
                            uint32_t m,
                            struct EdUlam **embedding);

uint64_t ed_ulam_dimension(const struct EdUlam *embedding);

size_t ed_ulam_nonzeros(const struct EdUlam *embedding);

enum EdStatus ed_ulam_hamming(const struct EdUlam *a, const struct EdUlam *b, size_t *distance);

/**
 * Edit script between the permutations behind two embeddings.
 */
enum EdStatus ed_ulam_decode(const struct EdUlam *a,
                             const struct EdUlam *b,
                             struct EdScript **script);

void ed_ulam_free(struct EdUlam *embedding);

/**
 * Cuts a string into blocks. `permutation` selects the map for inputs
 * without repeated letters.
 */
enum EdStatus ed_dimred(const uint32_t *codes,
                        size_t len,
                        size_t c,
                        uint64_t seed,
                        bool permutation,
                        struct EdBlocks **blocks);

size_t ed_blocks_count(const struct EdBlocks *blocks);

/**
 * 0-based start and length of block `index`.
 */
enum EdStatus ed_blocks_get(const struct EdBlocks *blocks,
                            size_t index,
                            size_t *start,
                            size_t *len);

/**
 * Edit distance between block sequences, blocks compared by content.
 */
enum EdStatus ed_block_distance(const struct EdBlocks *a,
                                const struct EdBlocks *b,
                                size_t *distance);

void ed_blocks_free(struct EdBlocks *blocks);

enum EdStatus ed_min_period(const uint32_t *codes, size_t len, size_t *period);

/**
 * 1-based offset of the lexicographically least rotation.
 */
enum EdStatus ed_smallest_rotation(const uint32_t *codes, size_t len, size_t *offset);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EDKIT_H */
