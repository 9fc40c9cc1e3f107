#ifndef POLAR_GRASSMANN_H
#define POLAR_GRASSMANN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum PgStatus {
  PG_STATUS_OK = 0,
  PG_STATUS_NULL_POINTER = 1,
  PG_STATUS_INVALID_ARGUMENT = 2,
  PG_STATUS_OUT_OF_RANGE = 3,
  PG_STATUS_BUFFER_TOO_SMALL = 4,
  PG_STATUS_BUDGET_EXCEEDED = 5,
  PG_STATUS_NOT_TOTALLY_SINGULAR = 6,
  PG_STATUS_UNAVAILABLE = 7,
  PG_STATUS_PANICKED = 99,
} PgStatus;

// A built code P(n, k, q).
typedef struct PgCode PgCode;

// Enumerator and local codec for the line code P(n, 2, q).
typedef struct PgLineCodec PgLineCodec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `cap - 1` bytes) and returns its full length. With a null
// `buf` or zero `cap` only the length is returned.
//
// # Safety
// `buf` must be null or point to `cap` writable bytes.
uintptr_t pg_last_error_message(char *buf, uintptr_t cap);

// Builds P(n, k, q) into `*out`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle pointer.
enum PgStatus pg_code_build(uint32_t n, uint32_t k, uint32_t q, struct PgCode **out);

// Releases a code handle. Null is ignored.
//
// # Safety
// `code` must be null or a handle from [`pg_code_build`] not yet freed.
void pg_code_free(struct PgCode *code);

// Code length N, or 0 for a null handle.
//
// # Safety
// `code` must be null or a live handle.
uint64_t pg_code_length(const struct PgCode *code);

// Code dimension K, or 0 for a null handle.
//
// # Safety
// `code` must be null or a live handle.
uint64_t pg_code_dimension(const struct PgCode *code);

// Message length `C(2n+1, k)`, or 0 for a null handle.
//
// # Safety
// `code` must be null or a live handle.
uint64_t pg_code_message_len(const struct PgCode *code);

// Writes the generator matrix row-major into `out` and its shape into
// `rows`/`cols` (written even when the buffer is too small).
//
// # Safety
// `code` must be a live handle; `rows` and `cols` valid pointers; `out`
// null or `cap` writable bytes.
enum PgStatus pg_code_generator(const struct PgCode *code,
                                uint8_t *out,
                                uintptr_t cap,
                                uintptr_t *rows,
                                uintptr_t *cols);

// Encodes `msg` (length [`pg_code_message_len`]) into `out` (length N).
//
// # Safety
// `code` must be a live handle; `msg` must hold `msg_len` bytes; `out` null
// or `cap` writable bytes.
enum PgStatus pg_code_encode(const struct PgCode *code,
                             const uint8_t *msg,
                             uintptr_t msg_len,
                             uint8_t *out,
                             uintptr_t cap);

// Exact minimum distance by exhaustive enumeration of at most `budget` steps.
//
// # Safety
// `code` must be a live handle and `out` a valid pointer.
enum PgStatus pg_code_min_distance(const struct PgCode *code, uint64_t budget, uint64_t *out);

// Creates the line codec for P(n, 2, q) into `*out`.
//
// # Safety
// `out` must be a valid pointer.
enum PgStatus pg_codec_new(uint32_t n, uint32_t q, struct PgLineCodec **out);

// Releases a codec handle. Null is ignored.
//
// # Safety
// `codec` must be null or a handle from [`pg_codec_new`] not yet freed.
void pg_codec_free(struct PgLineCodec *codec);

// Number of lines N, or 0 for a null handle.
//
// # Safety
// `codec` must be null or a live handle.
uint64_t pg_codec_length(const struct PgLineCodec *codec);

// Message length `C(2n+1, 2)`, or 0 for a null handle.
//
// # Safety
// `codec` must be null or a live handle.
uint64_t pg_codec_message_len(const struct PgLineCodec *codec);

// Writes the RREF basis of the line at `index` row-major into `out`
// (two rows of `2n+1` entries).
//
// # Safety
// `codec` must be a live handle; `out` null or `cap` writable bytes.
enum PgStatus pg_codec_unrank(const struct PgLineCodec *codec,
                              uint64_t index,
                              uint8_t *out,
                              uintptr_t cap);

// Position of the line spanned by two rows of `2n+1` entries given
// row-major in `rows`.
//
// # Safety
// `codec` must be a live handle; `rows` must hold `len` bytes; `out` valid.
enum PgStatus pg_codec_rank(const struct PgLineCodec *codec,
                            const uint8_t *rows,
                            uintptr_t len,
                            uint64_t *out);

// Position-local encoding of `msg` into `out` (length N).
//
// # Safety
// `codec` must be a live handle; `msg` must hold `msg_len` bytes; `out`
// null or `cap` writable bytes.
enum PgStatus pg_codec_encode(const struct PgLineCodec *codec,
                              const uint8_t *msg,
                              uintptr_t msg_len,
                              uint8_t *out,
                              uintptr_t cap);

// Corrects `received` (length N) into `out` by plane votes. The numbers of
// changed and tied positions go to `changed` and `ties` when non-null; tied
// positions keep their received value.
//
// # Safety
// `codec` must be a live handle; `received` must hold `len` bytes; `out`
// null or `cap` writable bytes; `changed`/`ties` null or valid.
enum PgStatus pg_codec_decode(const struct PgLineCodec *codec,
                              const uint8_t *received,
                              uintptr_t len,
                              uint8_t *out,
                              uintptr_t cap,
                              uint64_t *changed,
                              uint64_t *ties);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLAR_GRASSMANN_H */
