//! Line-oriented text formats for complexes, cochains, bundles, contact
//! labels, coverings and Engel classes.
//!
//! Blank lines and lines starting with `#` are ignored. References to other
//! files are resolved against the directory of the referencing file; the
//! writers emit `builtin:*` names or absolute paths.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::bundles::{CircleBundle, ContactLabel};
use crate::complex::{Cochain, SimplicialComplex};
use crate::coverings::FiberwiseCovering;
use crate::engel::EngelClass;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub file: String,
    /// 1-based line number, 0 when the problem concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.file, self.message)
        } else {
            write!(f, "{}:{}: {}", self.file, self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

type LineResult<T> = Result<T, (usize, String)>;

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    None
                } else {
                    Some((i + 1, t.split_whitespace().collect()))
                }
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(0, |(l, _)| *l)
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned();
        self.pos += 1;
        item
    }

    /// Next line, which must be `key <value...>`; returns the values.
    fn keyed(&mut self, key: &str) -> LineResult<(usize, Vec<&'a str>)> {
        match self.next() {
            Some((line, tokens)) if tokens[0] == key => Ok((line, tokens[1..].to_vec())),
            Some((line, tokens)) => Err((line, format!("expected `{key}`, found `{}`", tokens[0]))),
            None => Err((self.last_line(), format!("missing `{key}` line"))),
        }
    }

    fn single(&mut self, key: &str) -> LineResult<(usize, &'a str)> {
        let (line, values) = self.keyed(key)?;
        match values.as_slice() {
            [v] => Ok((line, v)),
            _ => Err((line, format!("`{key}` takes exactly one value"))),
        }
    }

    fn finish(&self) -> LineResult<()> {
        match self.peek() {
            Some((line, tokens)) => Err((*line, format!("unexpected `{}`", tokens[0]))),
            None => Ok(()),
        }
    }
}

fn parse_num<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> LineResult<T> {
    token.parse().map_err(|_| (line, format!("invalid {what} `{token}`")))
}

fn invariant(line: usize, e: Error) -> (usize, String) {
    (line, e.to_string())
}

/// Parses the `dim` / `simplex` format.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex, (usize, String)> {
    let mut lines = Lines::new(text);
    let (line, dim) = lines.single("dim")?;
    let dim: usize = parse_num(dim, line, "dimension")?;
    let mut top = Vec::new();
    let mut first = line;
    while let Some((line, tokens)) = lines.next() {
        if tokens[0] != "simplex" {
            return Err((line, format!("expected `simplex`, found `{}`", tokens[0])));
        }
        if top.is_empty() {
            first = line;
        }
        let s = tokens[1..].iter().map(|t| parse_num(t, line, "vertex id")).collect::<LineResult<Vec<usize>>>()?;
        if s.len() != dim + 1 {
            return Err((line, format!("simplex has {} vertices, expected {}", s.len(), dim + 1)));
        }
        top.push(s);
    }
    SimplicialComplex::from_top_simplices(dim, &top).map_err(|e| invariant(first, e))
}

pub fn write_complex(x: &SimplicialComplex) -> String {
    let mut out = format!("dim {}\n", x.dim());
    for s in x.simplices(x.dim()) {
        out.push_str("simplex");
        for v in s {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

fn is_int(token: &str) -> bool {
    let t = token.strip_prefix('-').unwrap_or(token);
    !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
}

/// `degree k` followed by `v0 .. vk value` lines, up to the first non-numeric line.
fn parse_cochain_block(lines: &mut Lines<'_>, complex: &SimplicialComplex, expect: Option<usize>) -> LineResult<(usize, Cochain)> {
    let (header, k) = lines.single("degree")?;
    let k: usize = parse_num(k, header, "degree")?;
    if let Some(e) = expect {
        if k != e {
            return Err((header, format!("expected a degree-{e} cochain, found degree {k}")));
        }
    }
    if k > complex.dim() {
        return Err((header, format!("degree {k} exceeds the complex dimension {}", complex.dim())));
    }
    let mut values = vec![BigInt::from(0); complex.count(k)];
    let mut seen = vec![false; complex.count(k)];
    while let Some((line, tokens)) = lines.peek().cloned() {
        if !is_int(tokens[0]) {
            break;
        }
        lines.next();
        if tokens.len() != k + 2 {
            return Err((line, format!("expected {} vertex ids and a value", k + 1)));
        }
        let simplex = tokens[..=k].iter().map(|t| parse_num(t, line, "vertex id")).collect::<LineResult<Vec<usize>>>()?;
        let value: BigInt = parse_num(tokens[k + 1], line, "value")?;
        let idx = complex.index_of(&simplex).ok_or_else(|| (line, format!("simplex {simplex:?} is not in the complex")))?;
        if seen[idx] {
            return Err((line, format!("simplex {simplex:?} listed twice")));
        }
        seen[idx] = true;
        values[idx] = value;
    }
    Cochain::from_values(complex, k, values).map(|c| (header, c)).map_err(|e| invariant(header, e))
}

pub fn parse_cochain(text: &str, complex: &SimplicialComplex) -> Result<Cochain, (usize, String)> {
    let mut lines = Lines::new(text);
    let (_, c) = parse_cochain_block(&mut lines, complex, None)?;
    lines.finish()?;
    Ok(c)
}

pub fn write_cochain(z: &Cochain) -> String {
    let mut out = format!("degree {}\n", z.degree());
    for (s, v) in z.support() {
        for x in s {
            out.push_str(&format!("{x} "));
        }
        out.push_str(&format!("{v}\n"));
    }
    out
}

pub fn write_bundle(complex_ref: &str, b: &CircleBundle) -> String {
    format!("complex {complex_ref}\n{}", write_cochain(b.euler_cocycle()))
}

pub fn write_label(complex_ref: &str, xi: &ContactLabel) -> String {
    format!("name {}\ncomplex {complex_ref}\n{}", xi.name(), write_cochain(xi.euler_cocycle()))
}

pub fn write_covering(source_ref: &str, target_ref: &str, phi: &FiberwiseCovering) -> String {
    format!(
        "source {source_ref}\ntarget {target_ref}\nsheets {}\n{}",
        phi.sheets(),
        write_cochain(phi.twist_cochain())
    )
}

pub fn write_engel(bundle_ref: &str, contact_ref: &str, d: &EngelClass) -> String {
    let mut out = format!(
        "bundle {bundle_ref}\ncontact {contact_ref}\ntw {}\n{}",
        d.tw(),
        write_cochain(d.covering().twist_cochain())
    );
    if let Some(w) = d.witness() {
        out.push_str("oriented-witness\n");
        out.push_str(&write_cochain(w.half_covering().twist_cochain()));
    }
    out
}

#[derive(Clone, Debug)]
pub struct LoadedCovering {
    pub covering: FiberwiseCovering,
    pub source_ref: String,
    pub target_ref: String,
}

#[derive(Clone, Debug)]
pub struct LoadedEngel {
    pub class: EngelClass,
    pub bundle_ref: String,
    pub contact_ref: String,
}

/// Reads files and resolves references, caching every object by canonical reference.
#[derive(Default)]
pub struct Loader {
    complexes: HashMap<String, SimplicialComplex>,
    bundles: HashMap<String, CircleBundle>,
    labels: HashMap<String, ContactLabel>,
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn resolve(reference: &str, relative_to: Option<&Path>) -> PathBuf {
    let p = Path::new(reference);
    match relative_to.and_then(Path::parent) {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p.to_path_buf(),
    }
}

impl Loader {
    pub fn new() -> Self {
        Self::default()
    }

    fn read(path: &Path) -> Result<(String, String), FormatError> {
        let canonical = fs::canonicalize(path)
            .map_err(|e| FormatError { file: display(path), line: 0, message: e.to_string() })?;
        let text = fs::read_to_string(&canonical)
            .map_err(|e| FormatError { file: display(path), line: 0, message: e.to_string() })?;
        Ok((display(&canonical), text))
    }

    fn wrap<T>(file: &str, r: LineResult<T>) -> Result<T, FormatError> {
        r.map_err(|(line, message)| FormatError { file: file.to_string(), line, message })
    }

    /// A complex from `builtin:t3`, `builtin:rp3` or a path. Returns it with its canonical reference.
    pub fn complex(&mut self, reference: &str, relative_to: Option<&Path>) -> Result<(SimplicialComplex, String), FormatError> {
        let builtin: Option<fn() -> SimplicialComplex> = match reference {
            "builtin:t3" => Some(SimplicialComplex::torus3),
            "builtin:rp3" => Some(SimplicialComplex::projective3),
            r if r.starts_with("builtin:") => {
                let file = relative_to.map_or_else(|| reference.to_string(), display);
                return Err(FormatError { file, line: 0, message: format!("unknown built-in complex `{r}`") });
            }
            _ => None,
        };
        if let Some(make) = builtin {
            return Ok((make(), reference.to_string()));
        }
        let path = resolve(reference, relative_to);
        let (key, text) = Self::read(&path)?;
        if let Some(x) = self.complexes.get(&key) {
            return Ok((x.clone(), key));
        }
        let x = Self::wrap(&key, parse_complex(&text))?.with_name(&key);
        self.complexes.insert(key.clone(), x.clone());
        Ok((x, key))
    }

    /// A cochain file on a given complex.
    pub fn cochain(&mut self, path: &Path, complex: &SimplicialComplex) -> Result<Cochain, FormatError> {
        let (key, text) = Self::read(path)?;
        Self::wrap(&key, parse_cochain(&text, complex))
    }

    pub fn bundle(&mut self, path: &Path) -> Result<(CircleBundle, String), FormatError> {
        let (key, text) = Self::read(path)?;
        if let Some(b) = self.bundles.get(&key) {
            return Ok((b.clone(), key));
        }
        let mut lines = Lines::new(&text);
        let (line, cref) = Self::wrap(&key, lines.single("complex"))?;
        let (complex, _) = self.complex(cref, Some(Path::new(&key))).map_err(|mut e| {
            if e.line == 0 {
                e.message = format!("{} (referenced from {key}:{line})", e.message);
            }
            e
        })?;
        let (header, cocycle) = match lines.peek() {
            Some((l, t)) if t[0] == "euler" => {
                let l = *l;
                let (_, p) = Self::wrap(&key, lines.single("euler"))?;
                let z = self.cochain(&resolve(p, Some(Path::new(&key))), &complex)?;
                (l, z)
            }
            _ => Self::wrap(&key, parse_cochain_block(&mut lines, &complex, Some(2)))?,
        };
        Self::wrap(&key, lines.finish())?;
        let b = Self::wrap(&key, CircleBundle::new(cocycle).map_err(|e| invariant(header, e)))?;
        self.bundles.insert(key.clone(), b.clone());
        Ok((b, key))
    }

    pub fn label(&mut self, path: &Path) -> Result<(ContactLabel, String), FormatError> {
        let (key, text) = Self::read(path)?;
        if let Some(l) = self.labels.get(&key) {
            return Ok((l.clone(), key));
        }
        let mut lines = Lines::new(&text);
        let (_, name) = Self::wrap(&key, lines.single("name"))?;
        let (_, cref) = Self::wrap(&key, lines.single("complex"))?;
        let (complex, _) = self.complex(cref, Some(Path::new(&key)))?;
        let label = match lines.peek() {
            Some((_, t)) if t[0] == "degree" => {
                let (header, z) = Self::wrap(&key, parse_cochain_block(&mut lines, &complex, Some(2)))?;
                Self::wrap(&key, ContactLabel::new(name, z).map_err(|e| invariant(header, e)))?
            }
            _ => {
                let h2 = Self::wrap(&key, complex.cohomology(2).map_err(|e| invariant(0, e)))?;
                let mut free = Vec::new();
                let mut torsion = Vec::new();
                let mut first = lines.last_line();
                while let Some((line, tokens)) = lines.next() {
                    first = first.min(line);
                    let parse = |ts: &[&str]| ts.iter().map(|t| parse_num::<BigInt>(t, line, "coordinate")).collect::<LineResult<Vec<_>>>();
                    match tokens[0] {
                        "free" => free = Self::wrap(&key, parse(&tokens[1..]))?,
                        "torsion" => torsion = Self::wrap(&key, parse(&tokens[1..]))?,
                        other => return Err(FormatError { file: key, line, message: format!("unexpected `{other}`") }),
                    }
                }
                let class = Self::wrap(&key, h2.class(free, torsion).map_err(|e| invariant(first, e)))?;
                Self::wrap(&key, ContactLabel::from_class(name, &class).map_err(|e| invariant(first, e)))?
            }
        };
        Self::wrap(&key, lines.finish())?;
        self.labels.insert(key.clone(), label.clone());
        Ok((label, key))
    }

    pub fn covering(&mut self, path: &Path) -> Result<LoadedCovering, FormatError> {
        let (key, text) = Self::read(path)?;
        let mut lines = Lines::new(&text);
        let here = Some(Path::new(&key));
        let (_, sref) = Self::wrap(&key, lines.single("source"))?;
        let (source, source_ref) = self.bundle(&resolve(sref, here))?;
        let (_, tref) = Self::wrap(&key, lines.single("target"))?;
        let (target, target_ref) = self.bundle(&resolve(tref, here))?;
        let (line, n) = Self::wrap(&key, lines.single("sheets"))?;
        let n: i64 = Self::wrap(&key, parse_num(n, line, "sheet count"))?;
        let (header, c) = Self::wrap(&key, parse_cochain_block(&mut lines, source.base(), Some(1)))?;
        Self::wrap(&key, lines.finish())?;
        let covering = Self::wrap(&key, FiberwiseCovering::new(source, target, n, c).map_err(|e| invariant(header, e)))?;
        Ok(LoadedCovering { covering, source_ref, target_ref })
    }

    pub fn engel(&mut self, path: &Path) -> Result<LoadedEngel, FormatError> {
        let (key, text) = Self::read(path)?;
        let mut lines = Lines::new(&text);
        let here = Some(Path::new(&key));
        let (_, bref) = Self::wrap(&key, lines.single("bundle"))?;
        let (bundle, bundle_ref) = self.bundle(&resolve(bref, here))?;
        let (_, cref) = Self::wrap(&key, lines.single("contact"))?;
        let (contact, contact_ref) = self.label(&resolve(cref, here))?;
        let (line, tw) = Self::wrap(&key, lines.single("tw"))?;
        let tw: i64 = Self::wrap(&key, parse_num(tw, line, "twisting number"))?;
        let (header, c) = Self::wrap(&key, parse_cochain_block(&mut lines, bundle.base(), Some(1)))?;
        let mut class = Self::wrap(&key, EngelClass::new(bundle, contact, tw, c).map_err(|e| invariant(header, e)))?;
        if let Some((wline, t)) = lines.peek().cloned() {
            if t.len() != 1 || t[0] != "oriented-witness" {
                return Err(FormatError { file: key, line: wline, message: format!("unexpected `{}`", t[0]) });
            }
            lines.next();
            let (header, h) = Self::wrap(&key, parse_cochain_block(&mut lines, class.base(), Some(1)))?;
            class = Self::wrap(&key, class.with_witness(h).map_err(|e| invariant(header, e)))?;
        }
        Self::wrap(&key, lines.finish())?;
        Ok(LoadedEngel { class, bundle_ref, contact_ref })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let x = SimplicialComplex::projective3();
        let text = write_complex(&x);
        let y = parse_complex(&text).unwrap();
        assert_eq!(write_complex(&y), text);
        assert_eq!(y.simplices(1), x.simplices(1));
    }

    #[test]
    fn complex_errors_name_lines() {
        assert_eq!(parse_complex("# c\ndim 2\nsimplex 0 1\n").unwrap_err().0, 3);
        assert_eq!(parse_complex("dim x\n").unwrap_err().0, 1);
        assert_eq!(parse_complex("dim 1\nsimplex 0 0\n").unwrap_err().0, 2);
    }

    #[test]
    fn cochain_round_trip_and_errors() {
        let t3 = SimplicialComplex::torus3();
        let z = crate::complex::seam_cocycle(1).scale_i64(-7);
        let text = write_cochain(&z);
        assert_eq!(parse_cochain(&text, &t3).unwrap(), z);
        assert_eq!(parse_cochain("degree 1\n0 1 2\n1 0 3\n", &t3).unwrap_err().0, 3);
        assert_eq!(parse_cochain("degree 1\n0 40 2\n", &t3).unwrap_err().0, 2);
        assert_eq!(parse_cochain("degree 1\n0 1 x\n", &t3).unwrap_err().0, 2);
        assert_eq!(parse_cochain("degree 4\n", &t3).unwrap_err().0, 1);
    }
}
