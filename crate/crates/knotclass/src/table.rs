//! Line-oriented table files.
//!
//! ```text
//! B  budget_n  budget_nodes  n_max
//! C  notation  n  fingerprint          one per class, in id order
//! M  m0,m1,...                          member count per class
//! S  id  diagram  factor;factor         one per composite class
//! U  a,b                                one per unresolved pair
//! L  l0,l1,...                          lower bounds
//! T  c0,c1,...                          counts
//! ```
//!
//! Fields are tab-separated, lines end in LF, and nothing trails.

use std::fmt::Write as _;
use std::path::Path;
use std::{fs, io};

use knotclass_core::pipeline::ConnectedSum;
use knotclass_core::{ClassificationReport, Fingerprint, KnotClass, Notation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn to_table_string(rep: &ClassificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "B\t{}\t{}\t{}", rep.budget_n, rep.budget_nodes, rep.n_max).unwrap();
    for c in &rep.classes {
        writeln!(s, "C\t{}\t{}\t{}", c.representative, c.crossings, c.fingerprint).unwrap();
    }
    let members: Vec<usize> = rep.classes.iter().map(|c| c.members).collect();
    writeln!(s, "M\t{}", join(&members)).unwrap();
    for c in &rep.classes {
        if let Some(sum) = &c.connected_sum {
            let factors: Vec<String> = sum.factors.iter().map(ToString::to_string).collect();
            writeln!(s, "S\t{}\t{}\t{}", c.id, sum.diagram, factors.join(";")).unwrap();
        }
    }
    for (a, b) in &rep.unresolved {
        writeln!(s, "U\t{a},{b}").unwrap();
    }
    writeln!(s, "L\t{}", join(&rep.lower_bounds)).unwrap();
    writeln!(s, "T\t{}", join(&rep.counts)).unwrap();
    s
}

pub fn save_table(rep: &ClassificationReport, path: &Path) -> Result<(), TableError> {
    fs::write(path, to_table_string(rep))?;
    Ok(())
}

pub fn load_table(path: &Path) -> Result<ClassificationReport, TableError> {
    parse_table(&fs::read_to_string(path)?)
}

struct Parser {
    line: usize,
}

impl Parser {
    fn err(&self, message: impl Into<String>) -> TableError {
        TableError::Malformed { line: self.line, message: message.into() }
    }

    fn num<T: std::str::FromStr>(&self, s: &str) -> Result<T, TableError> {
        s.parse().map_err(|_| self.err(format!("bad number {s:?}")))
    }

    fn list<T: std::str::FromStr>(&self, s: &str) -> Result<Vec<T>, TableError> {
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|x| self.num(x)).collect()
    }

    fn notation(&self, s: &str) -> Result<Notation, TableError> {
        s.parse().map_err(|e| self.err(format!("bad notation {s:?}: {e}")))
    }
}

pub fn parse_table(text: &str) -> Result<ClassificationReport, TableError> {
    let mut p = Parser { line: 0 };
    let mut budgets: Option<(usize, usize, usize)> = None;
    let mut classes: Vec<KnotClass> = Vec::new();
    let mut members: Option<Vec<usize>> = None;
    let mut sums: Vec<(usize, ConnectedSum)> = Vec::new();
    let mut unresolved = Vec::new();
    let mut lower: Option<Vec<u64>> = None;
    let mut counts: Option<Vec<u64>> = None;

    if !text.is_empty() && !text.ends_with('\n') {
        p.line = text.lines().count();
        return Err(p.err("missing final newline"));
    }
    for (k, line) in text.lines().enumerate() {
        p.line = k + 1;
        if counts.is_some() {
            return Err(p.err("record after the counts row"));
        }
        if line.ends_with(char::is_whitespace) || line.contains('\r') {
            return Err(p.err("trailing whitespace"));
        }
        let f: Vec<&str> = line.split('\t').collect();
        match (f[0], f.len()) {
            ("B", 4) if budgets.is_none() && classes.is_empty() => {
                budgets = Some((p.num(f[1])?, p.num(f[2])?, p.num(f[3])?));
            }
            ("C", 4) if budgets.is_some() && members.is_none() => {
                let representative = p.notation(f[1])?;
                let crossings: usize = p.num(f[2])?;
                if crossings != representative.crossings() {
                    return Err(p.err("crossing count disagrees with notation"));
                }
                let fingerprint: Fingerprint =
                    f[3].parse().map_err(|e| p.err(format!("bad fingerprint: {e}")))?;
                classes.push(KnotClass {
                    id: classes.len(),
                    representative,
                    crossings,
                    fingerprint,
                    members: 0,
                    connected_sum: None,
                });
            }
            ("M", 2) if members.is_none() && budgets.is_some() => {
                let m: Vec<usize> = p.list(f[1])?;
                if m.len() != classes.len() {
                    return Err(p.err("member row length differs from class count"));
                }
                members = Some(m);
            }
            ("S", 4) if members.is_some() && unresolved.is_empty() && lower.is_none() => {
                let id: usize = p.num(f[1])?;
                if id >= classes.len() || sums.last().is_some_and(|&(last, _)| last >= id) {
                    return Err(p.err(format!("bad class id {id}")));
                }
                let diagram = p.notation(f[2])?;
                let factors = f[3].split(';').map(|x| p.notation(x)).collect::<Result<Vec<_>, _>>()?;
                sums.push((id, ConnectedSum { diagram, factors }));
            }
            ("U", 2) if members.is_some() && lower.is_none() => {
                let pair: Vec<usize> = p.list(f[1])?;
                match pair[..] {
                    [a, b] if a < b && b < classes.len() => unresolved.push((a, b)),
                    _ => return Err(p.err("bad unresolved pair")),
                }
            }
            ("L", 2) if members.is_some() && lower.is_none() => lower = Some(p.list(f[1])?),
            ("T", 2) if lower.is_some() => counts = Some(p.list(f[1])?),
            _ => return Err(p.err(format!("unexpected record {:?}", f[0]))),
        }
    }
    p.line += 1;
    let Some(counts) = counts else { return Err(p.err("missing counts row")) };
    let (budget_n, budget_nodes, n_max) = budgets.expect("checked before counts");
    let lower_bounds = lower.expect("checked before counts");
    if counts.len() != n_max + 1 || lower_bounds.len() != n_max + 1 {
        return Err(p.err("row lengths disagree with n_max"));
    }
    for (c, m) in classes.iter_mut().zip(members.expect("checked before counts")) {
        c.members = m;
    }
    for (id, sum) in sums {
        classes[id].connected_sum = Some(sum);
    }
    Ok(ClassificationReport { n_max, classes, counts, lower_bounds, unresolved, budget_n, budget_nodes })
}
