//! Command-line front end. `main` only forwards to [`run`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use walkdir::WalkDir;

use crate::format::{convert, read_document, Corpus, Document, FileFormat, Layers, ParseMode};
use crate::frames::{ContentClass, FrameSet};
use crate::schema::PosTag;
use crate::segment::{
    emit_sentence_markers, load_marker_lexicon, segment_document, ClauseSource, MarkerLexicon, Rule, SegmenterConfig,
    SubjectShift,
};
use crate::stats::{load_manifest, CountOptions, StatsReport};
use crate::validate::{lint_document_with, LintIssue, LintOptions, LintReport};

pub const EXIT_OK: i32 = 0;
/// Lint errors found or a conversion failed.
pub const EXIT_FAILURE: i32 = 1;
/// Usage, IO or configuration error.
pub const EXIT_USAGE: i32 = 2;

const COLUMNAR_EXTENSIONS: &[&str] = &["txt", "tsv", "conll", "col"];
const INLINE_EXTENSIONS: &[&str] = &["inline"];

#[derive(Debug, Parser)]
#[command(
    name = "lst20",
    version,
    about = "Validate, convert, segment and count LST20-style annotated corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lint files or directories and report label and token issues.
    Validate(ValidateArgs),
    /// Convert one file between the columnar and inline formats.
    Convert(ConvertArgs),
    /// Re-segment a file into clauses and sentences.
    Segment(SegmentArgs),
    /// Corpus counts and tag, entity and genre histograms.
    Stats(StatsArgs),
    /// Distributional POS test frames.
    #[command(subcommand)]
    Frames(FramesCommand),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input format; by default inferred from the extension (`.inline` is
    /// inline, anything else columnar).
    #[arg(long, value_name = "FORMAT")]
    from: Option<FileFormat>,
    /// Files or directories. Directories are walked in name order and only
    /// files with a known extension are read.
    #[arg(required = true, value_name = "PATH")]
    paths: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Stop at the first malformed line instead of skipping it.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    json: bool,
    /// Treat each file as a cut-out window: spans open at its very start or
    /// end are warnings.
    #[arg(long)]
    excerpt: bool,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long, value_name = "FORMAT")]
    from: FileFormat,
    #[arg(long, value_name = "FORMAT")]
    to: FileFormat,
    /// Layers in inline output: 2 (word/POS), 3 (+NE) or 4 (+clause).
    #[arg(long, default_value_t = 4)]
    layers: u8,
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Input file, or `-` for standard input.
    #[arg(value_name = "PATH")]
    input: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShiftArg {
    Always,
    Never,
    Heuristic,
}

#[derive(Debug, Args)]
struct SegmentArgs {
    #[arg(long, value_name = "FORMAT")]
    from: Option<FileFormat>,
    /// Output format; defaults to the input format.
    #[arg(long, value_name = "FORMAT")]
    to: Option<FileFormat>,
    #[arg(long, default_value_t = 4)]
    layers: u8,
    #[arg(long, value_name = "PATH")]
    lexicon: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ShiftArg::Heuristic)]
    subject_shift: ShiftArg,
    /// Keep the clause column as given and only regroup sentences.
    #[arg(long)]
    gold_clauses: bool,
    /// Turn off a rule (R2, R3, S2 to S7). Repeatable.
    #[arg(long, value_name = "RULE")]
    disable: Vec<String>,
    /// Apply split rules (S2, S7) before merge rules (S4 to S6).
    #[arg(long)]
    split_first: bool,
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(value_name = "PATH")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Lines of `<document-id>\t<genre>`; ids are file names or stems.
    #[arg(long, value_name = "PATH")]
    manifest: Option<PathBuf>,
    /// Count white-space tokens as words.
    #[arg(long)]
    include_spaces: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum FramesCommand {
    /// Print the frame set as `id: spec` lines.
    Dump {
        #[arg(long, value_name = "PATH")]
        frames: Option<PathBuf>,
    },
    /// Classify words by the frames their attestations pass.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "PATH")]
        frames: Option<PathBuf>,
        /// Only this surface form; by default every NN, VV, AJ and AV word.
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// A failure that ends the command with a given exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    Text,
    Json,
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn summary(errors: usize, warnings: usize) -> String {
    format!("{}, {}", plural(errors, "error"), plural(warnings, "warning"))
}

fn issue_line(out: &mut String, file: Option<&str>, issue: &LintIssue) {
    if let Some(file) = file {
        let _ = write!(out, "{file}: ");
    }
    let _ = writeln!(
        out,
        "sentence {}, token {}: {} {} [{}] {}",
        issue.sentence, issue.token, issue.severity, issue.code, issue.layer, issue.message
    );
}

/// Text: one line per issue (0-based sentence and token indices) and a
/// closing summary line. JSON: an array of issue objects.
pub fn format_report(report: &LintReport, file: Option<&str>, mode: ReportMode) -> String {
    match mode {
        ReportMode::Json => serde_json::to_string_pretty(report.issues()).expect("issues serialize") + "\n",
        ReportMode::Text => {
            let mut out = String::new();
            for issue in report.issues() {
                issue_line(&mut out, file, issue);
            }
            out.push_str(&summary(report.errors(), report.warnings()));
            out.push('\n');
            out
        }
    }
}

fn infer_format(path: &Path, explicit: Option<FileFormat>) -> FileFormat {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if INLINE_EXTENSIONS.contains(&ext) => FileFormat::Inline,
        _ => FileFormat::Columnar,
    })
}

fn wanted_in_directory(path: &Path, explicit: Option<FileFormat>) -> bool {
    let Some(ext) = path.extension().and_then(|e| e.to_str()) else {
        return false;
    };
    match explicit {
        Some(FileFormat::Columnar) => COLUMNAR_EXTENSIONS.contains(&ext),
        Some(FileFormat::Inline) => INLINE_EXTENSIONS.contains(&ext),
        None => COLUMNAR_EXTENSIONS.contains(&ext) || INLINE_EXTENSIONS.contains(&ext),
    }
}

/// Expands inputs to files. Directory contents come in name order;
/// explicit file arguments keep their command-line order.
fn collect_files(input: &InputArgs) -> Result<Vec<PathBuf>, Failure> {
    let mut files = Vec::new();
    for path in &input.paths {
        if path.is_dir() {
            for entry in WalkDir::new(path).sort_by_file_name() {
                let entry = entry.map_err(|e| usage(format!("{}: {e}", path.display())))?;
                if entry.file_type().is_file() && wanted_in_directory(entry.path(), input.from) {
                    files.push(entry.into_path());
                }
            }
        } else if path.is_file() {
            files.push(path.clone());
        } else {
            return Err(usage(format!("{}: no such file or directory", path.display())));
        }
    }
    Ok(files)
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn doc_id(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .filter(|s| !s.is_empty())
        .unwrap_or("document")
        .to_owned()
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn write_output(output: Option<&Path>, inputs: &[&Path], text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => {
            if inputs.iter().any(|i| same_file(i, path)) {
                return Err(usage(format!(
                    "{}: refusing to overwrite an input file",
                    path.display()
                )));
            }
            std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("standard output: {e}"))),
    }
}

fn parse_layers(n: u8) -> Result<Layers, Failure> {
    Layers::try_from(n).map_err(|e| usage(e.to_string()))
}

struct FileReport {
    file: String,
    report: LintReport,
}

#[derive(Serialize)]
struct FileIssues<'a> {
    file: &'a str,
    issues: &'a [LintIssue],
}

fn cmd_validate(args: &ValidateArgs, stdout: &mut dyn Write) -> CmdResult {
    let files = collect_files(&args.input)?;
    let mode = if args.strict {
        ParseMode::Strict
    } else {
        ParseMode::Permissive
    };
    let options = LintOptions { excerpt: args.excerpt };
    let reports: Vec<FileReport> = files
        .par_iter()
        .map(|path| {
            let text = read_text(path)?;
            let format = infer_format(path, args.input.from);
            let report = match read_document(format, &text, &doc_id(path), mode) {
                Ok(parsed) => {
                    let lint = lint_document_with(&parsed.value, options);
                    let mut issues: Vec<LintIssue> = parsed.errors.iter().map(LintIssue::from_format_error).collect();
                    issues.extend(lint.issues().iter().cloned());
                    LintReport::new(issues)
                }
                Err(err) => LintReport::new(vec![LintIssue::from_format_error(&err)]),
            };
            Ok(FileReport {
                file: path.display().to_string(),
                report,
            })
        })
        .collect::<Result<_, Failure>>()?;

    let errors: usize = reports.iter().map(|r| r.report.errors()).sum();
    let warnings: usize = reports.iter().map(|r| r.report.warnings()).sum();
    let single = args.input.paths.len() == 1 && args.input.paths[0].is_file();
    let out = if args.json {
        if single {
            format_report(&reports[0].report, None, ReportMode::Json)
        } else {
            let wrapped: Vec<FileIssues> = reports
                .iter()
                .map(|r| FileIssues {
                    file: &r.file,
                    issues: r.report.issues(),
                })
                .collect();
            serde_json::to_string_pretty(&wrapped).expect("issues serialize") + "\n"
        }
    } else {
        let mut out = String::new();
        for r in &reports {
            for issue in r.report.issues() {
                issue_line(&mut out, Some(&r.file), issue);
            }
        }
        out.push_str(&summary(errors, warnings));
        out.push('\n');
        out
    };
    write_output(None, &[], &out, stdout)?;
    Ok(if errors > 0 { EXIT_FAILURE } else { EXIT_OK })
}

fn cmd_convert(args: &ConvertArgs, stdout: &mut dyn Write) -> CmdResult {
    let layers = parse_layers(args.layers)?;
    let text = read_text(&args.input)?;
    let out = convert(args.from, args.to, &text, layers)
        .map_err(|e| failure(format!("{}: {e} [{}]", args.input.display(), e.code())))?;
    write_output(args.output.as_deref(), &[&args.input], &out, stdout)?;
    Ok(EXIT_OK)
}

fn load_lexicon(path: Option<&Path>) -> Result<MarkerLexicon, Failure> {
    match path {
        None => Ok(MarkerLexicon::default()),
        Some(path) => load_marker_lexicon(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display()))),
    }
}

fn cmd_segment(args: &SegmentArgs, stdout: &mut dyn Write) -> CmdResult {
    let layers = parse_layers(args.layers)?;
    let lex = load_lexicon(args.lexicon.as_deref())?;
    let mut cfg = SegmenterConfig::default();
    cfg.subject_shift = match args.subject_shift {
        ShiftArg::Always => SubjectShift::Always,
        ShiftArg::Never => SubjectShift::Never,
        ShiftArg::Heuristic => SubjectShift::Heuristic,
    };
    if args.gold_clauses {
        cfg.clause_source = ClauseSource::Gold;
    }
    if args.split_first {
        cfg.precedence = crate::segment::RulePrecedence::SplitFirst;
    }
    for name in &args.disable {
        let rule: Rule = name
            .parse()
            .map_err(|e: crate::segment::ConfigError| usage(e.message))?;
        cfg.disable(rule).map_err(|e| usage(e.message))?;
    }

    let from = infer_format(&args.input, args.from);
    let text = read_text(&args.input)?;
    let doc = read_document(from, &text, &doc_id(&args.input), ParseMode::Strict)
        .map_err(|e| failure(format!("{}: {e} [{}]", args.input.display(), e.code())))?
        .value;
    let segmented = segment_document(&doc, &lex, &cfg);
    let out = emit_sentence_markers(&segmented.sentences, args.to.unwrap_or(from), layers)
        .map_err(|e| failure(format!("{}: {e} [{}]", args.input.display(), e.code())))?;
    write_output(args.output.as_deref(), &[&args.input], &out, stdout)?;
    Ok(EXIT_OK)
}

/// Reads every input strictly; the first unreadable file aborts.
fn read_corpus(input: &InputArgs) -> Result<Vec<(PathBuf, Document)>, Failure> {
    let files = collect_files(input)?;
    files
        .par_iter()
        .map(|path| {
            let text = read_text(path)?;
            let format = infer_format(path, input.from);
            read_document(format, &text, &doc_id(path), ParseMode::Strict)
                .map(|p| (path.clone(), p.value))
                .map_err(|e| failure(format!("{}: {e} [{}]", path.display(), e.code())))
        })
        .collect()
}

fn cmd_stats(args: &StatsArgs, stdout: &mut dyn Write) -> CmdResult {
    let files = read_corpus(&args.input)?;
    let manifest = match &args.manifest {
        Some(path) => load_manifest(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => BTreeMap::new(),
    };
    let mut corpus = Corpus::new(Vec::with_capacity(files.len()));
    for (path, mut doc) in files {
        // Manifest keys may be full file names or document ids (stems).
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
        if let Some(genre) = manifest.get(name).or_else(|| manifest.get(&doc.id)) {
            doc.genre = Some(genre.clone());
        }
        corpus.documents.push(doc);
    }

    let report = StatsReport::compute(
        &corpus,
        CountOptions {
            include_spaces: args.include_spaces,
        },
    );
    let out = if args.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        report.to_text()
    };
    write_output(None, &[], &out, stdout)?;
    Ok(EXIT_OK)
}

fn load_frames(path: Option<&Path>) -> Result<FrameSet, Failure> {
    match path {
        None => Ok(FrameSet::builtin()),
        Some(path) => {
            FrameSet::with_overrides(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
    }
}

#[derive(Debug, Serialize)]
struct WordFrames {
    word: String,
    tags: Vec<String>,
    attestations: usize,
    frames: Vec<String>,
    classes: Vec<String>,
}

fn cmd_frames(cmd: &FramesCommand, stdout: &mut dyn Write) -> CmdResult {
    match cmd {
        FramesCommand::Dump { frames } => {
            let set = load_frames(frames.as_deref())?;
            write_output(None, &[], &set.dump(), stdout)?;
            Ok(EXIT_OK)
        }
        FramesCommand::Check {
            input,
            frames,
            word,
            json,
        } => {
            let set = load_frames(frames.as_deref())?;
            let corpus = read_corpus(input)?;
            // surface -> (tags seen, attestations)
            type Attested = (std::collections::BTreeSet<PosTag>, Vec<(Vec<PosTag>, usize)>);
            let mut by_word: BTreeMap<String, Attested> = BTreeMap::new();
            for (_, doc) in &corpus {
                for sentence in &doc.sentences {
                    let words: Vec<_> = sentence.tokens.iter().filter(|t| !t.is_space).collect();
                    let seq: Vec<PosTag> = words.iter().map(|t| t.pos).collect();
                    for (i, t) in words.iter().enumerate() {
                        let wanted = match word {
                            Some(w) => &t.surface == w,
                            None => matches!(t.pos, PosTag::NN | PosTag::VV | PosTag::AJ | PosTag::AV),
                        };
                        if wanted {
                            let entry = by_word.entry(t.surface.clone()).or_default();
                            entry.0.insert(t.pos);
                            entry.1.push((seq.clone(), i));
                        }
                    }
                }
            }
            let rows: Vec<WordFrames> = by_word
                .into_iter()
                .map(|(word, (tags, att))| {
                    let frames: std::collections::BTreeSet<String> =
                        att.iter().flat_map(|(s, c)| set.classify_instance(s, *c)).collect();
                    WordFrames {
                        word,
                        tags: tags.iter().map(|t| t.to_string()).collect(),
                        attestations: att.len(),
                        frames: frames.into_iter().collect(),
                        classes: set.classify_lexeme(&att).iter().map(ContentClass::to_string).collect(),
                    }
                })
                .collect();
            let out = if *json {
                serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
            } else {
                let mut out = String::new();
                for r in &rows {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}",
                        r.word,
                        r.tags.join(","),
                        r.attestations,
                        if r.frames.is_empty() {
                            "-".to_owned()
                        } else {
                            r.frames.join(",")
                        },
                        if r.classes.is_empty() {
                            "-".to_owned()
                        } else {
                            r.classes.join(",")
                        },
                    );
                }
                out
            };
            write_output(None, &[], &out, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Data goes to `stdout`, diagnostics to `stderr`; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::Validate(a) => cmd_validate(a, stdout),
        Command::Convert(a) => cmd_convert(a, stdout),
        Command::Segment(a) => cmd_segment(a, stdout),
        Command::Stats(a) => cmd_stats(a, stdout),
        Command::Frames(c) => cmd_frames(c, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "lst20: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::Severity;

    #[test]
    fn empty_report_text() {
        assert_eq!(
            format_report(&LintReport::default(), None, ReportMode::Text),
            "0 errors, 0 warnings\n"
        );
    }

    #[test]
    fn one_error_json() {
        let issue = LintIssue::from_format_error(&crate::format::FormatError::EmptyId);
        let report = LintReport::new(vec![issue]);
        let json: serde_json::Value = serde_json::from_str(&format_report(&report, None, ReportMode::Json)).unwrap();
        let arr = json.as_array().unwrap();
        assert_eq!(arr.len(), 1);
        assert_eq!(arr[0]["severity"], "error");
        assert_eq!(arr[0]["code"], "FORMAT_EMPTY_ID");
        assert_eq!(arr[0]["layer"], "FORMAT");
        assert_eq!(report.count(Severity::Error), 1);
        assert!(format_report(&report, Some("x.txt"), ReportMode::Text).ends_with("1 error, 0 warnings\n"));
    }

    #[test]
    fn format_inference() {
        assert_eq!(infer_format(Path::new("a.inline"), None), FileFormat::Inline);
        assert_eq!(infer_format(Path::new("a.txt"), None), FileFormat::Columnar);
        assert_eq!(
            infer_format(Path::new("a.inline"), Some(FileFormat::Columnar)),
            FileFormat::Columnar
        );
        assert!(!wanted_in_directory(Path::new("a.json"), None));
        assert!(wanted_in_directory(Path::new("a.txt"), Some(FileFormat::Columnar)));
        assert!(!wanted_in_directory(Path::new("a.txt"), Some(FileFormat::Inline)));
    }

    #[test]
    fn no_arguments_is_usage_error() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["lst20", "validate"], &mut out, &mut err), EXIT_USAGE);
        assert!(String::from_utf8(err).unwrap().contains("Usage"));
    }
}
