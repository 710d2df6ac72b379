#ifndef FAULTDIAG_H
#define FAULTDIAG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call.
 */
typedef enum FdStatus {
  FD_STATUS_OK = 0,
  FD_STATUS_NULL_ARGUMENT = 1,
  FD_STATUS_INVALID_UTF8 = 2,
  FD_STATUS_FAULT = 3,
  FD_STATUS_ARITY = 4,
  FD_STATUS_RANGE = 5,
  FD_STATUS_PRECONDITION = 6,
  FD_STATUS_RESOURCE = 7,
  FD_STATUS_STRUCTURE = 8,
  FD_STATUS_NETWORK = 9,
  FD_STATUS_PARSE = 10,
  /**
   * The output buffer is too small; the required length was written.
   */
  FD_STATUS_BUFFER_TOO_SMALL = 11,
  FD_STATUS_PANIC = 12,
} FdStatus;

typedef enum FdVariant {
  FD_VARIANT_Q1 = 0,
  FD_VARIANT_Q2 = 1,
} FdVariant;

typedef struct FdFault FdFault;

typedef struct FdNetwork FdNetwork;

typedef struct FdProblem FdProblem;

typedef struct FdTree FdTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on this thread.
 */
const char *fd_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *fd_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void fd_string_free(char *s);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum FdStatus fd_network_parse(const char *json, struct FdNetwork **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum FdStatus fd_network_gen_s1(size_t n, struct FdNetwork **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum FdStatus fd_network_gen_s2(size_t n, struct FdNetwork **out);

/**
 * Ladder network for the symmetric function whose value on inputs with
 * `k` ones is `spectrum[k]`; `len` is `n + 1`.
 *
 * # Safety
 * `spectrum` must point to `len` bytes; `out` must be writable.
 */
enum FdStatus fd_network_gen_shannon(const uint8_t *spectrum, size_t len, struct FdNetwork **out);

/**
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum FdStatus fd_network_to_json(const struct FdNetwork *net, char **out);

/**
 * Number of input variables, or 0 for a null handle.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t fd_network_arity(const struct FdNetwork *net);

/**
 * # Safety
 * `net` must be null or a live handle.
 */
size_t fd_network_edge_count(const struct FdNetwork *net);

/**
 * # Safety
 * `net` must be null or a handle not yet freed.
 */
void fd_network_free(struct FdNetwork *net);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum FdStatus fd_fault_parse(const char *json, struct FdFault **out);

/**
 * # Safety
 * `fault` must be a live handle; `out` must be writable.
 */
enum FdStatus fd_fault_to_json(const struct FdFault *fault, char **out);

/**
 * # Safety
 * `fault` must be null or a handle not yet freed.
 */
void fd_fault_free(struct FdFault *fault);

/**
 * Value of the network under `fault` (null for none) at `input`.
 *
 * # Safety
 * `net` must be a live handle, `fault` null or live, `input` must point to
 * `len` bytes and `out` must be writable.
 */
enum FdStatus fd_evaluate(const struct FdNetwork *net,
                          const struct FdFault *fault,
                          const uint8_t *input,
                          size_t len,
                          bool *out);

/**
 * Writes the `2^m` table values (byte `i` for the input with index `i`,
 * bit `j` of `i` being the `j`-th variable) into `buf`. `*len` is set to
 * `2^m` in every case; a short buffer yields `FD_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `net` must be live, `fault` null or live, `buf` must hold `cap` bytes
 * and `len` must be writable.
 */
enum FdStatus fd_truth_table(const struct FdNetwork *net,
                             const struct FdFault *fault,
                             uint8_t *buf,
                             size_t cap,
                             size_t *len);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum FdStatus fd_problem_parse(const char *json, struct FdProblem **out);

/**
 * # Safety
 * `problem` must be null or a handle not yet freed.
 */
void fd_problem_free(struct FdProblem *problem);

/**
 * Builds a tree solving the problem: minimum depth if `exact`, greedy
 * otherwise.
 *
 * # Safety
 * `problem` must be live; `out` must be writable.
 */
enum FdStatus fd_tree_build(const struct FdProblem *problem, bool exact, struct FdTree **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum FdStatus fd_tree_parse(const char *json, struct FdTree **out);

/**
 * # Safety
 * `tree` and `problem` must be live; `out` must be writable.
 */
enum FdStatus fd_tree_verify(const struct FdTree *tree, const struct FdProblem *problem, bool *out);

/**
 * Depth of the tree, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or live.
 */
size_t fd_tree_depth(const struct FdTree *tree);

/**
 * # Safety
 * `tree` must be live; `out` must be writable.
 */
enum FdStatus fd_tree_to_json(const struct FdTree *tree, char **out);

/**
 * # Safety
 * `tree` must be null or a handle not yet freed.
 */
void fd_tree_free(struct FdTree *tree);

/**
 * Decides whether the graph (`{"n": .., "edges": [[i, j], ..]}`) has a
 * vertex cover of at most `m` vertices, through the diagnosis reduction.
 *
 * # Safety
 * `graph_json` must be a NUL-terminated string; `out` must be writable.
 */
enum FdStatus fd_vc_decide(const char *graph_json, size_t m, enum FdVariant variant, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FAULTDIAG_H */
