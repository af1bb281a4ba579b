#ifndef AFSOLVE_H
#define AFSOLVE_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum AfsStatus {
  AFS_STATUS_OK = 0,
  AFS_STATUS_NULL_POINTER = 1,
  AFS_STATUS_INVALID_UTF8 = 2,
  AFS_STATUS_PARSE = 3,
  AFS_STATUS_UNKNOWN_ARGUMENT = 4,
  AFS_STATUS_INDEX_OUT_OF_RANGE = 5,
  AFS_STATUS_BUDGET_EXCEEDED = 6,
  AFS_STATUS_INVALID_VALUE = 7,
  AFS_STATUS_BUFFER_TOO_SMALL = 8,
  AFS_STATUS_PANIC = 9,
  AFS_STATUS_INTERNAL = 10,
} AfsStatus;

typedef enum AfsSemantics {
  AFS_SEMANTICS_CONFLICT_FREE = 0,
  AFS_SEMANTICS_ADMISSIBLE = 1,
  AFS_SEMANTICS_STABLE = 2,
  AFS_SEMANTICS_PREFERRED = 3,
  AFS_SEMANTICS_SEMI_STABLE = 4,
  AFS_SEMANTICS_STAGE = 5,
} AfsSemantics;

// Opaque handle to the extensions of one framework under one semantics.
typedef struct AfsExtensions AfsExtensions;

// Opaque framework handle.
typedef struct AfsFramework AfsFramework;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until
// the next call into the library from the same thread.
const char *afs_last_error(void);

// Library version as a static string.
const char *afs_version(void);

// Parses apx text. With `lenient`, attack endpoints that were never
// declared become arguments.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum AfsStatus afs_framework_parse_apx(const char *text, bool lenient, struct AfsFramework **out);

// Parses trivial graph format text.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum AfsStatus afs_framework_parse_tgf(const char *text, struct AfsFramework **out);

// Builds a framework from `num_args` arguments and `num_attacks` attacks
// `attackers[i] -> targets[i]`. `names` may be null, giving `a0`, `a1`, ...
//
// # Safety
// Non-null arrays must hold at least the stated number of elements.
enum AfsStatus afs_framework_from_arrays(size_t num_args,
                                         const char *const *names,
                                         const size_t *attackers,
                                         const size_t *targets,
                                         size_t num_attacks,
                                         struct AfsFramework **out);

// # Safety
// `af` must be null or a handle not yet freed.
void afs_framework_free(struct AfsFramework *af);

// # Safety
// `af` must be null or a live handle.
size_t afs_framework_num_args(const struct AfsFramework *af);

// # Safety
// `af` must be null or a live handle.
size_t afs_framework_num_attacks(const struct AfsFramework *af);

// Copies the name of argument `index` into a new string.
//
// # Safety
// `af` must be a live handle and `out` a valid pointer.
enum AfsStatus afs_framework_arg_name(const struct AfsFramework *af, size_t index, char **out);

// # Safety
// `af` must be a live handle, `name` a NUL-terminated string and `out` a
// valid pointer.
enum AfsStatus afs_framework_index_of(const struct AfsFramework *af, const char *name, size_t *out);

// Enumerates all extensions. A `budget` of 0 selects the default node
// budget.
//
// # Safety
// `af` must be a live handle and `out` a valid pointer.
enum AfsStatus afs_enumerate(const struct AfsFramework *af,
                             enum AfsSemantics semantics,
                             uint64_t budget_nodes,
                             struct AfsExtensions **out);

// Credulous (`skeptical == false`) or skeptical acceptance of `name`.
//
// # Safety
// `af` must be a live handle, `name` a NUL-terminated string and `out` a
// valid pointer.
enum AfsStatus afs_query(const struct AfsFramework *af,
                         enum AfsSemantics semantics,
                         const char *name,
                         bool skeptical,
                         uint64_t budget_nodes,
                         bool *out);

// # Safety
// `exts` must be null or a handle not yet freed.
void afs_extensions_free(struct AfsExtensions *exts);

// # Safety
// `exts` must be null or a live handle.
size_t afs_extensions_count(const struct AfsExtensions *exts);

// Number of arguments in extension `i`.
//
// # Safety
// `exts` must be a live handle and `out` a valid pointer.
enum AfsStatus afs_extension_len(const struct AfsExtensions *exts, size_t i, size_t *out);

// Writes the ascending argument indices of extension `i` into `buf`,
// which holds `cap` elements. `out_len` receives the member count even
// when the buffer is too small.
//
// # Safety
// `exts` must be a live handle, `buf` must hold `cap` elements (it may be
// null when `cap` is 0) and `out_len` must be a valid pointer.
enum AfsStatus afs_extension_members(const struct AfsExtensions *exts,
                                     size_t i,
                                     size_t *buf,
                                     size_t cap,
                                     size_t *out_len);

// Renders `exts` with argument names from `af`: one `[a,b]` line per
// extension, or a single `[[a,b],[c]]` line when `single` is set.
//
// # Safety
// Both handles must be live, `exts` must come from `af`, and `out` must be
// a valid pointer.
enum AfsStatus afs_extensions_format(const struct AfsFramework *af,
                                     const struct AfsExtensions *exts,
                                     bool single,
                                     char **out);

// Rule text of the named encoding (`cf`, `adm`, `pref2`, `stage2`, ...).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum AfsStatus afs_emit_encoding(const char *name, char **out);

// The framework as `arg`/`att` facts.
//
// # Safety
// `af` must be a live handle and `out` a valid pointer.
enum AfsStatus afs_emit_facts(const struct AfsFramework *af, char **out);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void afs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFSOLVE_H */
