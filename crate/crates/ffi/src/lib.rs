//! C ABI over the `lst20` toolkit.
//!
//! Every fallible function returns an [`Lst20Status`] and writes results
//! through out-pointers. On failure the message is available from
//! [`lst20_last_error`] on the same thread. Strings handed out by this
//! library are NUL-terminated UTF-8 and must be released with
//! [`lst20_string_free`]; handles with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lst20::format::{read_document, write_document, Corpus, Document, FileFormat, Layers, ParseMode};
use lst20::frames::FrameSet;
use lst20::schema::PosTag;
use lst20::segment::{
    load_marker_lexicon, segment_document, ClauseSource, MarkerLexicon, Rule, RulePrecedence, SegmenterConfig,
    SubjectShift,
};
use lst20::stats::{CountOptions, StatsReport};
use lst20::validate::{lint_document_with, LintOptions};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lst20Status {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArg = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The corpus text is malformed.
    ParseError = 3,
    /// The document cannot be written in the requested form.
    WriteError = 4,
    /// A lexicon or frame file is malformed.
    ConfigError = 5,
    /// A numeric or enumerated argument is out of range.
    InvalidArgument = 6,
    /// A panic was caught at the boundary. The library state is intact.
    Panic = 7,
}

pub const LST20_FORMAT_COLUMNAR: u32 = 0;
pub const LST20_FORMAT_INLINE: u32 = 1;

pub const LST20_SUBJECT_SHIFT_HEURISTIC: u32 = 0;
pub const LST20_SUBJECT_SHIFT_ALWAYS: u32 = 1;
pub const LST20_SUBJECT_SHIFT_NEVER: u32 = 2;

/// A parsed document. Opaque.
pub struct Lst20Document(Document);

/// A marker lexicon for segmentation. Opaque.
pub struct Lst20Lexicon(MarkerLexicon);

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct Lst20SegmentOptions {
    /// One of the `LST20_SUBJECT_SHIFT_*` constants.
    pub subject_shift: u32,
    /// Keep the clause column and only regroup sentences.
    pub gold_clauses: bool,
    /// Apply split rules before merge rules.
    pub split_first: bool,
    /// Comma-separated rule names to turn off, or NULL.
    pub disabled_rules: *const c_char,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(Lst20Status, String);

type FfiResult<T> = Result<T, Failure>;

fn set_last_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', "\\0")).expect("NULs replaced"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> Lst20Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            Lst20Status::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(Some(message));
            status
        }
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            set_last_error(Some(format!("internal panic: {what}")));
            Lst20Status::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(Lst20Status::NullArg, format!("`{name}` is NULL"))
}

/// # Safety
/// `p` is NULL or a NUL-terminated string valid for `'a`.
unsafe fn opt_str<'a>(p: *const c_char, name: &str) -> FfiResult<Option<&'a str>> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|e| Failure(Lst20Status::InvalidUtf8, format!("`{name}`: {e}")))
}

/// # Safety
/// As [`opt_str`].
unsafe fn req_str<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    opt_str(p, name)?.ok_or_else(|| null(name))
}

/// # Safety
/// `p` is NULL or points to a live `T`.
unsafe fn req_ref<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(name))
}

fn check_out<T>(p: *mut T, name: &str) -> FfiResult<()> {
    if p.is_null() {
        Err(null(name))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(Lst20Status::WriteError, "output contains a NUL byte".to_owned()))
}

fn format_arg(format: u32) -> FfiResult<FileFormat> {
    match format {
        LST20_FORMAT_COLUMNAR => Ok(FileFormat::Columnar),
        LST20_FORMAT_INLINE => Ok(FileFormat::Inline),
        n => Err(Failure(Lst20Status::InvalidArgument, format!("unknown format {n}"))),
    }
}

/// Message of the last failed call on this thread, or NULL after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn lst20_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lst20_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` is NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lst20_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` strictly. `id` names the document; for columnar input it
/// may be NULL, in which case `"document"` is used.
///
/// # Safety
/// `text` and `id` are NULL or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lst20_document_read(
    text: *const c_char,
    format: u32,
    id: *const c_char,
    out: *mut *mut Lst20Document,
) -> Lst20Status {
    guard(|| {
        check_out(out, "out")?;
        let text = req_str(text, "text")?;
        let id = opt_str(id, "id")?.unwrap_or("document");
        let doc = read_document(format_arg(format)?, text, id, ParseMode::Strict)
            .map_err(|e| Failure(Lst20Status::ParseError, e.to_string()))?
            .value;
        *out = Box::into_raw(Box::new(Lst20Document(doc)));
        Ok(())
    })
}

/// # Safety
/// `doc` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lst20_document_free(doc: *mut Lst20Document) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Number of sentences; 0 for NULL.
///
/// # Safety
/// `doc` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lst20_document_sentence_count(doc: *const Lst20Document) -> usize {
    doc.as_ref().map_or(0, |d| d.0.sentences.len())
}

/// Number of tokens, spaces included; 0 for NULL.
///
/// # Safety
/// `doc` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lst20_document_token_count(doc: *const Lst20Document) -> usize {
    doc.as_ref().map_or(0, |d| d.0.tokens().count())
}

/// Serializes the document. `layers` (2, 3 or 4) only affects inline output.
///
/// # Safety
/// `doc` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lst20_document_write(
    doc: *const Lst20Document,
    format: u32,
    layers: u8,
    out: *mut *mut c_char,
) -> Lst20Status {
    guard(|| {
        check_out(out, "out")?;
        let doc = req_ref(doc, "doc")?;
        let layers = Layers::try_from(layers).map_err(|e| Failure(Lst20Status::InvalidArgument, e.to_string()))?;
        let text = write_document(format_arg(format)?, &doc.0, layers)
            .map_err(|e| Failure(Lst20Status::WriteError, e.to_string()))?;
        *out = c_string(text)?;
        Ok(())
    })
}

/// Lints the document. Each out-pointer may be NULL to skip that result.
/// `json_out` receives the issue array.
///
/// # Safety
/// `doc` is a live handle; non-NULL out-pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn lst20_document_lint(
    doc: *const Lst20Document,
    excerpt: bool,
    errors_out: *mut usize,
    warnings_out: *mut usize,
    json_out: *mut *mut c_char,
) -> Lst20Status {
    guard(|| {
        let doc = req_ref(doc, "doc")?;
        let report = lint_document_with(&doc.0, LintOptions { excerpt });
        if !json_out.is_null() {
            *json_out = c_string(serde_json::to_string(report.issues()).expect("issues serialize"))?;
        }
        if !errors_out.is_null() {
            *errors_out = report.errors();
        }
        if !warnings_out.is_null() {
            *warnings_out = report.warnings();
        }
        Ok(())
    })
}

/// Counts and histograms for the document as a JSON object.
///
/// # Safety
/// `doc` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lst20_document_stats_json(
    doc: *const Lst20Document,
    include_spaces: bool,
    out: *mut *mut c_char,
) -> Lst20Status {
    guard(|| {
        check_out(out, "out")?;
        let doc = req_ref(doc, "doc")?;
        let corpus = Corpus::new(vec![doc.0.clone()]);
        let report = StatsReport::compute(&corpus, CountOptions { include_spaces });
        *out = c_string(serde_json::to_string(&report).expect("report serializes"))?;
        Ok(())
    })
}

/// Loads a lexicon file on top of the built-in lists. NULL `text` yields
/// the built-in lexicon.
///
/// # Safety
/// `text` is NULL or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lst20_lexicon_load(text: *const c_char, out: *mut *mut Lst20Lexicon) -> Lst20Status {
    guard(|| {
        check_out(out, "out")?;
        let lex = match opt_str(text, "text")? {
            None => MarkerLexicon::default(),
            Some(t) => load_marker_lexicon(t).map_err(|e| Failure(Lst20Status::ConfigError, e.to_string()))?,
        };
        *out = Box::into_raw(Box::new(Lst20Lexicon(lex)));
        Ok(())
    })
}

/// # Safety
/// `lex` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lst20_lexicon_free(lex: *mut Lst20Lexicon) {
    if !lex.is_null() {
        drop(Box::from_raw(lex));
    }
}

unsafe fn segmenter_config(opts: Option<&Lst20SegmentOptions>) -> FfiResult<SegmenterConfig> {
    let mut cfg = SegmenterConfig::default();
    let Some(opts) = opts else {
        return Ok(cfg);
    };
    let bad = |m: String| Failure(Lst20Status::InvalidArgument, m);
    cfg.subject_shift = match opts.subject_shift {
        LST20_SUBJECT_SHIFT_HEURISTIC => SubjectShift::Heuristic,
        LST20_SUBJECT_SHIFT_ALWAYS => SubjectShift::Always,
        LST20_SUBJECT_SHIFT_NEVER => SubjectShift::Never,
        n => return Err(bad(format!("unknown subject shift {n}"))),
    };
    if opts.gold_clauses {
        cfg.clause_source = ClauseSource::Gold;
    }
    if opts.split_first {
        cfg.precedence = RulePrecedence::SplitFirst;
    }
    if let Some(list) = opt_str(opts.disabled_rules, "disabled_rules")? {
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let rule: Rule = name.parse().map_err(|e| bad(format!("{e}")))?;
            cfg.disable(rule).map_err(|e| bad(e.to_string()))?;
        }
    }
    Ok(cfg)
}

/// Re-segments `doc` into a new handle. `lex` and `opts` may be NULL for
/// defaults.
///
/// # Safety
/// `doc` is a live handle; `lex` is NULL or live; `opts` is NULL or points
/// to a valid struct; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lst20_document_segment(
    doc: *const Lst20Document,
    lex: *const Lst20Lexicon,
    opts: *const Lst20SegmentOptions,
    out: *mut *mut Lst20Document,
) -> Lst20Status {
    guard(|| {
        check_out(out, "out")?;
        let doc = req_ref(doc, "doc")?;
        let cfg = segmenter_config(opts.as_ref())?;
        let default_lex;
        let lex = match lex.as_ref() {
            Some(l) => &l.0,
            None => {
                default_lex = MarkerLexicon::default();
                &default_lex
            }
        };
        *out = Box::into_raw(Box::new(Lst20Document(segment_document(&doc.0, lex, &cfg))));
        Ok(())
    })
}

unsafe fn frame_set(overrides: *const c_char) -> FfiResult<FrameSet> {
    match opt_str(overrides, "overrides")? {
        None => Ok(FrameSet::builtin()),
        Some(t) => FrameSet::with_overrides(t).map_err(|e| Failure(Lst20Status::ConfigError, e.to_string())),
    }
}

/// The active frame table as `id: spec` lines. `overrides` is NULL or a
/// frame file applied over the built-in table.
///
/// # Safety
/// `overrides` is NULL or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lst20_frames_dump(overrides: *const c_char, out: *mut *mut c_char) -> Lst20Status {
    guard(|| {
        check_out(out, "out")?;
        *out = c_string(frame_set(overrides)?.dump())?;
        Ok(())
    })
}

/// Frame ids matched by position `candidate` of a white-space separated
/// POS tag sequence, as a JSON array.
///
/// # Safety
/// `tags` and `overrides` are NULL or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lst20_frames_classify(
    tags: *const c_char,
    candidate: usize,
    overrides: *const c_char,
    out: *mut *mut c_char,
) -> Lst20Status {
    guard(|| {
        check_out(out, "out")?;
        let seq = req_str(tags, "tags")?
            .split_whitespace()
            .map(|t| {
                t.parse::<PosTag>()
                    .map_err(|_| Failure(Lst20Status::InvalidArgument, format!("unknown POS tag `{t}`")))
            })
            .collect::<FfiResult<Vec<_>>>()?;
        if candidate >= seq.len() {
            return Err(Failure(
                Lst20Status::InvalidArgument,
                format!("candidate {candidate} outside a sequence of {}", seq.len()),
            ));
        }
        let ids = frame_set(overrides)?.classify_instance(&seq, candidate);
        *out = c_string(serde_json::to_string(&ids).expect("ids serialize"))?;
        Ok(())
    })
}
