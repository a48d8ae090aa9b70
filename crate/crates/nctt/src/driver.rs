//! Checking files: imports, the prelude, and diagnostics.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use nctt_core::{check_def, fuel, pretty, Ctx, Span};

use crate::ast::Decl;
use crate::elab::{elaborate, Globals};
use crate::parser::parse_file;

/// Files of the bundled prelude, used when no prelude directory is on disk.
const EMBEDDED: &[(&str, &str)] = &[
    ("prelude.nctt", include_str!("../prelude/prelude.nctt")),
    ("base.nctt", include_str!("../prelude/base.nctt")),
    ("paths.nctt", include_str!("../prelude/paths.nctt")),
    ("univalence.nctt", include_str!("../prelude/univalence.nctt")),
];

const EMBEDDED_ROOT: &str = "<prelude>";

/// A located error, ready to be printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: String,
    pub line: usize,
    pub col: usize,
    pub code: String,
    pub message: String,
    pub expected: Option<String>,
    pub got: Option<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: error[{}]: {}", self.file, self.line, self.col, self.code, self.message)?;
        match (&self.expected, &self.got) {
            (Some(e), Some(g)) => write!(f, "\n  expected: {e}; got: {g}"),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Check(Box<Diagnostic>),
}

impl Error {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Check(_) => 1,
        }
    }
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_col(src: &str, offset: u32) -> (usize, usize) {
    let mut offset = (offset as usize).min(src.len());
    while !src.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub no_prelude: bool,
    pub max_steps: Option<u64>,
}

/// Definitions in scope, plus the modules they came from.
#[derive(Clone, Default)]
pub struct Session {
    globals: Globals,
    /// Loaded modules and their number of definitions.
    modules: HashMap<PathBuf, usize>,
    loading: HashSet<PathBuf>,
    max_steps: Option<u64>,
}

/// Where the prelude lives: `NCTT_PRELUDE`, then the source tree, then the bundled copy.
pub fn prelude_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("NCTT_PRELUDE") {
        return PathBuf::from(dir);
    }
    let tree = Path::new(env!("CARGO_MANIFEST_DIR")).join("prelude");
    if tree.join("prelude.nctt").is_file() {
        return tree;
    }
    PathBuf::from(EMBEDDED_ROOT)
}

fn read(path: &Path) -> Result<String, Error> {
    if let Ok(rest) = path.strip_prefix(EMBEDDED_ROOT) {
        let name = rest.to_string_lossy();
        return EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, s)| s.to_string()).ok_or_else(|| Error::Io {
            path: path.display().to_string(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "not part of the prelude"),
        });
    }
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn canonical(path: &Path) -> PathBuf {
    if path.starts_with(EMBEDDED_ROOT) {
        return path.to_path_buf();
    }
    std::fs::canonicalize(path).unwrap_or_else(|_| path.to_path_buf())
}

impl Session {
    pub fn new(opts: &Options) -> Result<Session, Error> {
        let mut s = Session { max_steps: opts.max_steps, ..Session::default() };
        if !opts.no_prelude {
            s.load(&prelude_dir().join("prelude.nctt"))?;
        }
        Ok(s)
    }

    pub fn globals(&self) -> &Globals {
        &self.globals
    }

    /// Loads a file and its imports, returning its number of definitions.
    /// A file that is already loaded is not checked again.
    pub fn load(&mut self, path: &Path) -> Result<usize, Error> {
        let key = canonical(path);
        if let Some(&n) = self.modules.get(&key) {
            return Ok(n);
        }
        let src = read(path)?;
        self.loading.insert(key.clone());
        let r = self.load_source(path, &src);
        self.loading.remove(&key);
        let n = r?;
        self.modules.insert(key, n);
        Ok(n)
    }

    /// Checks `src` as the contents of `path`; imports resolve relative to it.
    pub fn load_source(&mut self, path: &Path, src: &str) -> Result<usize, Error> {
        let file = path.display().to_string();
        let diag = |span: Span, code: &str, message: String| {
            let (line, col) = line_col(src, span.start);
            Error::Check(Box::new(Diagnostic {
                file: file.clone(),
                line,
                col,
                code: code.into(),
                message,
                expected: None,
                got: None,
            }))
        };
        let decls = parse_file(src).map_err(|e| diag(e.span(), e.code(), e.to_string()))?;
        let dir = path.parent().unwrap_or(Path::new(""));
        let mut defs = 0;
        for d in decls {
            match d {
                Decl::Import { path: rel, span } => {
                    let target = dir.join(&rel);
                    if self.loading.contains(&canonical(&target)) {
                        return Err(diag(span, "ImportCycle", format!("import cycle through {rel:?}")));
                    }
                    match self.load(&target) {
                        Err(Error::Io { source, .. }) => {
                            return Err(diag(span, "ImportError", format!("cannot import {rel:?}: {source}")))
                        }
                        r => r?,
                    };
                }
                Decl::Def { name, name_span, ty, body } => {
                    if self.globals.contains_key(&name) {
                        return Err(diag(name_span, "DuplicateName", format!("`{name}` is already defined")));
                    }
                    let ty = elaborate(&self.globals, &ty).map_err(|e| diag(e.span, e.code(), e.to_string()))?;
                    let body = elaborate(&self.globals, &body).map_err(|e| diag(e.span, e.code(), e.to_string()))?;
                    if let Some(n) = self.max_steps {
                        fuel::set_limit(Some(n));
                    }
                    let checked = panic::catch_unwind(AssertUnwindSafe(|| check_def(&name, &ty, &body)));
                    let def = match checked {
                        Ok(Ok(def)) => def,
                        Ok(Err(e)) => {
                            let (line, col) = line_col(src, e.span.unwrap_or(name_span).start);
                            return Err(Error::Check(Box::new(Diagnostic {
                                file,
                                line,
                                col,
                                code: e.kind.code().into(),
                                message: e.message,
                                expected: e.expected,
                                got: e.got,
                            })));
                        }
                        Err(payload) => {
                            let msg = panic_message(&payload);
                            let (code, message) = if msg == fuel::EXHAUSTED {
                                ("StepLimit", format!("checking `{name}` exceeded the evaluation step limit"))
                            } else {
                                ("InternalError", format!("internal error while checking `{name}`: {msg}"))
                            };
                            return Err(diag(name_span, code, message));
                        }
                    };
                    self.globals.insert(name, Arc::new(def));
                    defs += 1;
                }
            }
        }
        Ok(defs)
    }

    /// The normal form of a definition, printed in surface syntax.
    pub fn normalize(&self, name: &str) -> Option<String> {
        let def = self.globals.get(name)?;
        let nf = Ctx::new().quote(&def.value, &def.ty);
        Some(pretty::print(&nf, &[], &[]))
    }
}

fn panic_message(payload: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_col_counts_characters() {
        let src = "ab\nλx\n";
        assert_eq!(line_col(src, 0), (1, 1));
        assert_eq!(line_col(src, 3), (2, 1));
        assert_eq!(line_col(src, 5), (2, 2));
    }

    #[test]
    fn diagnostics_print_on_two_lines() {
        let d = Diagnostic {
            file: "a.nctt".into(),
            line: 3,
            col: 7,
            code: "TypeMismatch".into(),
            message: "type mismatch".into(),
            expected: Some("Bool".into()),
            got: Some("Unit".into()),
        };
        assert_eq!(d.to_string(), "a.nctt:3:7: error[TypeMismatch]: type mismatch\n  expected: Bool; got: Unit");
    }

    #[test]
    fn duplicate_definitions_are_rejected() {
        let mut s = Session::default();
        let err = s.load_source(Path::new("t.nctt"), "def a : Bool = true\ndef a : Bool = false\n").unwrap_err();
        let Error::Check(d) = err else { panic!() };
        assert_eq!((d.code.as_str(), d.line, d.col), ("DuplicateName", 2, 5));
    }

    #[test]
    fn embedded_prelude_is_complete() {
        let mut s = Session::default();
        let n = s.load(&Path::new(EMBEDDED_ROOT).join("prelude.nctt")).unwrap();
        assert_eq!(n, 0);
        assert!(s.globals().contains_key("ua"));
    }
}
