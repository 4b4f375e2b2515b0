#ifndef LST20_H
#define LST20_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define LST20_FORMAT_COLUMNAR 0

#define LST20_FORMAT_INLINE 1

#define LST20_SUBJECT_SHIFT_HEURISTIC 0

#define LST20_SUBJECT_SHIFT_ALWAYS 1

#define LST20_SUBJECT_SHIFT_NEVER 2

/**
 * Result of every fallible call.
 */
typedef enum Lst20Status {
  LST20_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  LST20_STATUS_NULL_ARG = 1,
  /**
   * An input string was not valid UTF-8.
   */
  LST20_STATUS_INVALID_UTF8 = 2,
  /**
   * The corpus text is malformed.
   */
  LST20_STATUS_PARSE_ERROR = 3,
  /**
   * The document cannot be written in the requested form.
   */
  LST20_STATUS_WRITE_ERROR = 4,
  /**
   * A lexicon or frame file is malformed.
   */
  LST20_STATUS_CONFIG_ERROR = 5,
  /**
   * A numeric or enumerated argument is out of range.
   */
  LST20_STATUS_INVALID_ARGUMENT = 6,
  /**
   * A panic was caught at the boundary. The library state is intact.
   */
  LST20_STATUS_PANIC = 7,
} Lst20Status;

/**
 * A parsed document. Opaque.
 */
typedef struct Lst20Document Lst20Document;

/**
 * A marker lexicon for segmentation. Opaque.
 */
typedef struct Lst20Lexicon Lst20Lexicon;

typedef struct Lst20SegmentOptions {
  /**
   * One of the `LST20_SUBJECT_SHIFT_*` constants.
   */
  uint32_t subject_shift;
  /**
   * Keep the clause column and only regroup sentences.
   */
  bool gold_clauses;
  /**
   * Apply split rules before merge rules.
   */
  bool split_first;
  /**
   * Comma-separated rule names to turn off, or NULL.
   */
  const char *disabled_rules;
} Lst20SegmentOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a
 * success. Valid until the next call into this library on the same thread.
 */
const char *lst20_last_error(void);

/**
 * Library version as a static string.
 */
const char *lst20_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` is NULL or a string from this library not yet freed.
 */
void lst20_string_free(char *s);

/**
 * Parses `text` strictly. `id` names the document; for columnar input it
 * may be NULL, in which case `"document"` is used.
 *
 * # Safety
 * `text` and `id` are NULL or NUL-terminated; `out` is writable.
 */
enum Lst20Status lst20_document_read(const char *text,
                                     uint32_t format,
                                     const char *id,
                                     struct Lst20Document **out);

/**
 * # Safety
 * `doc` is NULL or a handle from this library not yet freed.
 */
void lst20_document_free(struct Lst20Document *doc);

/**
 * Number of sentences; 0 for NULL.
 *
 * # Safety
 * `doc` is NULL or a live handle.
 */
size_t lst20_document_sentence_count(const struct Lst20Document *doc);

/**
 * Number of tokens, spaces included; 0 for NULL.
 *
 * # Safety
 * `doc` is NULL or a live handle.
 */
size_t lst20_document_token_count(const struct Lst20Document *doc);

/**
 * Serializes the document. `layers` (2, 3 or 4) only affects inline output.
 *
 * # Safety
 * `doc` is a live handle; `out` is writable.
 */
enum Lst20Status lst20_document_write(const struct Lst20Document *doc,
                                      uint32_t format,
                                      uint8_t layers,
                                      char **out);

/**
 * Lints the document. Each out-pointer may be NULL to skip that result.
 * `json_out` receives the issue array.
 *
 * # Safety
 * `doc` is a live handle; non-NULL out-pointers are writable.
 */
enum Lst20Status lst20_document_lint(const struct Lst20Document *doc,
                                     bool excerpt,
                                     size_t *errors_out,
                                     size_t *warnings_out,
                                     char **json_out);

/**
 * Counts and histograms for the document as a JSON object.
 *
 * # Safety
 * `doc` is a live handle; `out` is writable.
 */
enum Lst20Status lst20_document_stats_json(const struct Lst20Document *doc,
                                           bool include_spaces,
                                           char **out);

/**
 * Loads a lexicon file on top of the built-in lists. NULL `text` yields
 * the built-in lexicon.
 *
 * # Safety
 * `text` is NULL or NUL-terminated; `out` is writable.
 */
enum Lst20Status lst20_lexicon_load(const char *text, struct Lst20Lexicon **out);

/**
 * # Safety
 * `lex` is NULL or a handle from this library not yet freed.
 */
void lst20_lexicon_free(struct Lst20Lexicon *lex);

/**
 * Re-segments `doc` into a new handle. `lex` and `opts` may be NULL for
 * defaults.
 *
 * # Safety
 * `doc` is a live handle; `lex` is NULL or live; `opts` is NULL or points
 * to a valid struct; `out` is writable.
 */
enum Lst20Status lst20_document_segment(const struct Lst20Document *doc,
                                        const struct Lst20Lexicon *lex,
                                        const struct Lst20SegmentOptions *opts,
                                        struct Lst20Document **out);

/**
 * The active frame table as `id: spec` lines. `overrides` is NULL or a
 * frame file applied over the built-in table.
 *
 * # Safety
 * `overrides` is NULL or NUL-terminated; `out` is writable.
 */
enum Lst20Status lst20_frames_dump(const char *overrides, char **out);

/**
 * Frame ids matched by position `candidate` of a white-space separated
 * POS tag sequence, as a JSON array.
 *
 * # Safety
 * `tags` and `overrides` are NULL or NUL-terminated; `out` is writable.
 */
enum Lst20Status lst20_frames_classify(const char *tags,
                                       size_t candidate,
                                       const char *overrides,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LST20_H */
