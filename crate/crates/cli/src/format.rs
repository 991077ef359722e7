//! Text formats for fields, codes, linear codes, witnesses and QC specs.
//!
//! Every format is line based. Blank lines and anything after `#` are
//! ignored. See FORMAT.md for the grammar.

use std::fmt::Write as _;

use addlin_core::addcode::{AdditiveCode, LinearCodeExt};
use addlin_core::equiv::Witness;
use addlin_core::field::{ExtElem, FieldSpec, Fq};
use addlin_core::linalg::GfMatrix;
use addlin_core::qc::{PolyModXn, QcSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type Parsed<T> = std::result::Result<T, ParseError>;

/// A whitespace-separated token with its 1-based position.
#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column: 1,
            message: message.into(),
        }
    }
}

fn tokenize(line: &str, number: usize) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices().chain([(content.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &content[s..i],
                    line: number,
                    column: content[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// Non-empty lines of a document, already split into tokens.
struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let mut last_line = 0;
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| {
                last_line = i + 1;
                Line {
                    number: i + 1,
                    tokens: tokenize(l, i + 1),
                }
            })
            .filter(|l| !l.tokens.is_empty())
            .collect();
        Cursor {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn next(&mut self, what: &str) -> Parsed<&Line<'a>> {
        let line = self.lines.get(self.pos).ok_or_else(|| ParseError {
            line: self.last_line + 1,
            column: 1,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn finish(&self) -> Parsed<()> {
        match self.peek() {
            Some(l) => Err(l.error("unexpected trailing content")),
            None => Ok(()),
        }
    }
}

/// Parses `key=value` tokens on one line, in the given order. Keys listed in
/// `optional` may be omitted.
fn assignments<'a>(
    line: &Line<'a>,
    required: &[&str],
    optional: &[&str],
) -> Parsed<Vec<Option<(Token<'a>, &'a str)>>> {
    let mut out = vec![None; required.len() + optional.len()];
    for tok in &line.tokens {
        let (key, value) = tok
            .text
            .split_once('=')
            .ok_or_else(|| tok.error(format!("expected key=value, found `{}`", tok.text)))?;
        let slot = required
            .iter()
            .chain(optional)
            .position(|k| *k == key)
            .ok_or_else(|| tok.error(format!("unknown key `{key}`")))?;
        if out[slot].is_some() {
            return Err(tok.error(format!("duplicate key `{key}`")));
        }
        out[slot] = Some((*tok, value));
    }
    for (i, key) in required.iter().enumerate() {
        if out[i].is_none() {
            return Err(line.error(format!("missing `{key}=`")));
        }
    }
    Ok(out)
}

fn int(tok: Token<'_>, value: &str) -> Parsed<usize> {
    value
        .parse()
        .map_err(|_| tok.error(format!("expected a non-negative integer, found `{value}`")))
}

fn required_int(slot: &Option<(Token<'_>, &str)>) -> Parsed<usize> {
    let (tok, value) = slot.expect("required keys are present");
    int(tok, value)
}

fn field_header(cur: &mut Cursor<'_>) -> Parsed<FieldSpec> {
    let line = cur.next("field header `q=.. c0=.. c1=..`")?;
    let a = assignments(line, &["q", "c0", "c1"], &["modulus"])?;
    let q = required_int(&a[0])?;
    let c0 = required_int(&a[1])?;
    let c1 = required_int(&a[2])?;
    let q_tok = a[0].unwrap().0;
    let small = |v: usize, slot: &Option<(Token<'_>, &str)>| {
        u8::try_from(v).map_err(|_| slot.unwrap().0.error(format!("{v} is not an element of F_{q}")))
    };
    let spec = FieldSpec::new(q, small(c0, &a[1])?, small(c1, &a[2])?)
        .map_err(|e| q_tok.error(e.to_string()))?;
    if let Some((tok, value)) = a[3] {
        let m = int(tok, value)?;
        if m != spec.base().modulus_code() {
            return Err(tok.error(format!(
                "unsupported modulus {m}; F_{q} uses {}",
                spec.base().modulus_code()
            )));
        }
    }
    Ok(spec)
}

fn base_row(line: &Line<'_>, spec: &FieldSpec, len: usize) -> Parsed<Vec<Fq>> {
    if line.tokens.len() != len {
        return Err(line.error(format!("expected {len} entries, found {}", line.tokens.len())));
    }
    line.tokens
        .iter()
        .map(|t| {
            let v = int(*t, t.text)?;
            spec.base().check(v).map_err(|e| t.error(e.to_string()))
        })
        .collect()
}

fn base_matrix(cur: &mut Cursor<'_>, spec: &FieldSpec, rows: usize, cols: usize) -> Parsed<GfMatrix> {
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let line = cur.next(&format!("matrix row {} of {rows}", r + 1))?;
        data.extend(base_row(line, spec, cols)?);
    }
    Ok(GfMatrix::from_vec(spec.base(), rows, cols, data))
}

/// `0`, `1`, `w`, `w<j>` for `ω^j`, or `a:b` for `a + bω`.
pub fn parse_ext(spec: &FieldSpec, text: &str) -> Result<ExtElem, String> {
    let base = |s: &str| -> Result<Fq, String> {
        let v: usize = s.parse().map_err(|_| format!("bad coordinate `{s}`"))?;
        spec.base().check(v).map_err(|e| e.to_string())
    };
    match text {
        "0" => Ok(ExtElem::ZERO),
        "1" => Ok(ExtElem::ONE),
        "w" => Ok(spec.omega_pow(1)),
        _ => {
            if let Some(exp) = text.strip_prefix('w') {
                let j: usize = exp.parse().map_err(|_| format!("bad power of ω `{text}`"))?;
                Ok(spec.omega_pow(j))
            } else if let Some((a, b)) = text.split_once(':') {
                Ok(ExtElem::new(base(a)?, base(b)?))
            } else {
                Err(format!("expected 0, 1, w, w<j> or a:b, found `{text}`"))
            }
        }
    }
}

pub fn format_ext(spec: &FieldSpec, z: ExtElem) -> String {
    if z.is_zero() {
        return "0".into();
    }
    match spec.omega_log(z) {
        Some(0) => "1".into(),
        Some(1) => "w".into(),
        Some(j) => format!("w{j}"),
        None => format!("{}:{}", z.a, z.b),
    }
}

fn ext_matrix(cur: &mut Cursor<'_>, spec: &FieldSpec, rows: usize, n: usize) -> Parsed<Vec<Vec<ExtElem>>> {
    (0..rows)
        .map(|r| {
            let line = cur.next(&format!("row {} of {rows}", r + 1))?;
            if line.tokens.len() != n {
                return Err(line.error(format!("expected {n} entries, found {}", line.tokens.len())));
            }
            line.tokens
                .iter()
                .map(|t| parse_ext(spec, t.text).map_err(|m| t.error(m)))
                .collect()
        })
        .collect()
}

fn dims(cur: &mut Cursor<'_>, second: &str) -> Parsed<(usize, usize, usize)> {
    let line = cur.next(&format!("dimensions `n=.. {second}=..`"))?;
    let a = assignments(line, &["n", second], &[])?;
    Ok((required_int(&a[0])?, required_int(&a[1])?, line.number))
}

/// A parsed code file before rank validation.
#[derive(Clone, Debug)]
pub struct CodeFile {
    pub spec: FieldSpec,
    pub generator: GfMatrix,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Code(#[from] addlin_core::Error),
}

impl CodeFile {
    pub fn parse(text: &str) -> Parsed<CodeFile> {
        let mut cur = Cursor::new(text);
        let spec = field_header(&mut cur)?;
        let (n, k, _) = dims(&mut cur, "k")?;
        let generator = base_matrix(&mut cur, &spec, k, 2 * n)?;
        cur.finish()?;
        Ok(CodeFile { spec, generator })
    }

    /// Rejects dependent rows unless `allow_rank_deficient`, in which case
    /// they are reduced away.
    pub fn into_code(self, allow_rank_deficient: bool) -> Result<AdditiveCode, addlin_core::Error> {
        if allow_rank_deficient {
            AdditiveCode::new(self.spec, self.generator)
        } else {
            AdditiveCode::from_full_rank(self.spec, self.generator)
        }
    }
}

pub fn parse_code(text: &str, allow_rank_deficient: bool) -> Result<AdditiveCode, LoadError> {
    Ok(CodeFile::parse(text)?.into_code(allow_rank_deficient)?)
}

fn write_header(out: &mut String, spec: &FieldSpec) {
    let base = spec.base();
    write!(out, "q={} c0={} c1={}", spec.q(), spec.c0(), spec.c1()).unwrap();
    if base.degree() > 1 {
        write!(out, " modulus={}", base.modulus_code()).unwrap();
    }
    out.push('\n');
}

fn write_rows(out: &mut String, m: &GfMatrix) {
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

fn write_ext_rows(out: &mut String, spec: &FieldSpec, rows: &[Vec<ExtElem>]) {
    for row in rows {
        let line: Vec<String> = row.iter().map(|&z| format_ext(spec, z)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub fn write_code(code: &AdditiveCode, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            writeln!(out, "# {l}").unwrap();
        }
    }
    write_header(&mut out, code.spec());
    writeln!(out, "n={} k={}", code.n(), code.k()).unwrap();
    write_rows(&mut out, code.generator());
    out
}

pub fn parse_linear(text: &str) -> Result<LinearCodeExt, LoadError> {
    let mut cur = Cursor::new(text);
    let spec = field_header(&mut cur)?;
    let (n, m, _) = dims(&mut cur, "m")?;
    let rows = ext_matrix(&mut cur, &spec, m, n)?;
    cur.finish()?;
    Ok(LinearCodeExt::new(spec, n, rows)?)
}

pub fn write_linear(code: &LinearCodeExt) -> String {
    let mut out = String::new();
    write_header(&mut out, code.spec());
    writeln!(out, "n={} m={}", code.n(), code.dim()).unwrap();
    write_ext_rows(&mut out, code.spec(), code.rows());
    out
}

/// A witness as read from disk. `R` and the linear code are optional; when
/// absent they are derived from the blocks.
#[derive(Clone, Debug)]
pub struct WitnessFile {
    pub spec: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub r: Option<GfMatrix>,
    pub a_blocks: Vec<GfMatrix>,
    pub linear: Option<LinearCodeExt>,
}

impl WitnessFile {
    pub fn parse(text: &str) -> Result<WitnessFile, LoadError> {
        let mut cur = Cursor::new(text);
        let spec = field_header(&mut cur)?;
        let (n, k, _) = dims(&mut cur, "k")?;
        let section = |cur: &Cursor<'_>, name: &str| {
            cur.peek()
                .is_some_and(|l| l.tokens.first().is_some_and(|t| t.text == name))
        };

        let mut r = None;
        if section(&cur, "R") {
            let line = cur.next("R")?;
            if line.tokens.len() != 1 {
                return Err(ParseError::from(line.tokens[1].error("unexpected token after `R`")).into());
            }
            r = Some(base_matrix(&mut cur, &spec, k, k)?);
        }

        let line = cur.next("section `A`")?;
        if line.tokens.len() != 1 || line.tokens[0].text != "A" {
            return Err(ParseError::from(line.tokens[0].error("expected section `A`")).into());
        }
        let mut a_blocks = Vec::with_capacity(n);
        for i in 0..n {
            let line = cur.next(&format!("block A_{}", i + 1))?;
            let entries = base_row(line, &spec, 4)?;
            a_blocks.push(GfMatrix::from_vec(spec.base(), 2, 2, entries));
        }

        let mut linear = None;
        if section(&cur, "linear") {
            let line = cur.next("linear")?;
            let rest = Line {
                number: line.number,
                tokens: line.tokens[1..].to_vec(),
            };
            let a = assignments(&rest, &["m"], &[])?;
            let m = required_int(&a[0])?;
            let rows = ext_matrix(&mut cur, &spec, m, n)?;
            linear = Some(LinearCodeExt::new(spec, n, rows)?);
        }
        cur.finish()?;
        Ok(WitnessFile {
            spec,
            n,
            k,
            r,
            a_blocks,
            linear,
        })
    }

    /// Fills in missing parts from `code` and returns the full witness.
    pub fn complete(self, code: &AdditiveCode) -> Result<Witness, addlin_core::Error> {
        if self.spec != *code.spec() || self.n != code.n() || self.k != code.k() {
            return Err(addlin_core::Error::InvalidWitness(format!(
                "witness is for n={} k={} over a different field or size than the code (n={} k={})",
                self.n,
                self.k,
                code.n(),
                code.k()
            )));
        }
        let derived = match (&self.r, &self.linear) {
            (Some(_), Some(_)) => None,
            _ => Some(Witness::from_blocks(code, self.a_blocks.clone())?),
        };
        let r = self
            .r
            .unwrap_or_else(|| derived.as_ref().expect("derived").r.clone());
        let linear_generator = self
            .linear
            .unwrap_or_else(|| derived.as_ref().expect("derived").linear_generator.clone());
        Ok(Witness {
            r,
            a_blocks: self.a_blocks,
            linear_generator,
        })
    }
}

pub fn write_witness(code: &AdditiveCode, w: &Witness) -> String {
    let spec = code.spec();
    let mut out = String::new();
    write_header(&mut out, spec);
    writeln!(out, "n={} k={}", code.n(), code.k()).unwrap();
    out.push_str("R\n");
    write_rows(&mut out, &w.r);
    out.push_str("A\n");
    for a in &w.a_blocks {
        let line: Vec<String> = a.data().iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    writeln!(out, "linear m={}", w.linear_generator.dim()).unwrap();
    write_ext_rows(&mut out, spec, w.linear_generator.rows());
    out
}

fn exponents(tok: Token<'_>, value: &str, n: usize) -> Parsed<Vec<usize>> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut seen = vec![false; n];
    value
        .split(',')
        .map(|e| {
            let v = int(tok, e.trim())?;
            if v >= n {
                return Err(tok.error(format!("exponent {v} is not below n = {n}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(tok.error(format!("exponent {v} listed twice")));
            }
            Ok(v)
        })
        .collect()
}

/// `n=`, `g=`, `f0=`, `f1=` lines; exponents are comma separated.
pub fn parse_qc_spec(text: &str) -> Parsed<QcSpec> {
    let mut cur = Cursor::new(text);
    let line = cur.next("`n=`")?;
    let a = assignments(line, &["n"], &[])?;
    let n = required_int(&a[0])?;
    if n == 0 {
        return Err(line.error("n must be positive"));
    }
    let mut polys = Vec::new();
    for key in ["g", "f0", "f1"] {
        let line = cur.next(&format!("`{key}=`"))?;
        // exponent lists may contain spaces after commas
        let joined: String = line.tokens.iter().map(|t| t.text).collect();
        let first = line.tokens[0];
        let (k, v) = joined
            .split_once('=')
            .ok_or_else(|| first.error(format!("expected `{key}=`")))?;
        if k != key {
            return Err(first.error(format!("expected `{key}=`, found `{k}=`")));
        }
        polys.push(PolyModXn::from_exponents(n, &exponents(first, v, n)?));
    }
    cur.finish()?;
    let f1 = polys.pop().unwrap();
    let f0 = polys.pop().unwrap();
    let g = polys.pop().unwrap();
    Ok(QcSpec { n, g, f0, f1 })
}

pub fn write_qc_spec(spec: &QcSpec) -> String {
    let list = |p: &PolyModXn| {
        p.exponents()
            .iter()
            .rev()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "n={}\ng={}\nf0={}\nf1={}\n",
        spec.n,
        list(&spec.g),
        list(&spec.f0),
        list(&spec.f1)
    )
}
