use std::fmt::Write as _;

use super::ProblemInstance;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parses the line-oriented instance format: a header `n T`, then `n` lines `x_i t_i`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_instance<S: Real>(text: &str) -> Result<ProblemInstance<S>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(no, l)| (no + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    // errors about missing lines point at the end of the input
    let last_line = text.lines().count().max(1);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: last_line,
        msg: "missing header".into(),
    })?;
    let mut fields = header.split_whitespace();
    let n: usize = parse_field(fields.next(), hline, "n")?;
    let budget: S = parse_field(fields.next(), hline, "T")?;
    expect_end(fields.next(), hline)?;

    let mut marks = Vec::with_capacity(n);
    let mut times = Vec::with_capacity(n);
    for (line, body) in lines.by_ref().take(n) {
        let mut fields = body.split_whitespace();
        let x: u8 = parse_field(fields.next(), line, "x")?;
        if x > 1 {
            return Err(Error::Parse {
                line,
                msg: format!("mark must be 0 or 1, got {x}"),
            });
        }
        let t: S = parse_field(fields.next(), line, "t")?;
        expect_end(fields.next(), line)?;
        marks.push(x == 1);
        times.push(t);
    }
    if marks.len() != n {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("expected {n} item lines, found {}", marks.len()),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            msg: "trailing content after item lines".into(),
        });
    }
    ProblemInstance::new(marks, times, budget)
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    let raw = field.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing field {what}"),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad value {raw:?} for {what}"),
    })
}

fn expect_end(field: Option<&str>, line: usize) -> Result<()> {
    match field {
        None => Ok(()),
        Some(extra) => Err(Error::Parse {
            line,
            msg: format!("unexpected field {extra:?}"),
        }),
    }
}

/// Writes an instance in the format read by [`parse_instance`].
pub fn format_instance<S: Real>(inst: &ProblemInstance<S>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", inst.n(), inst.budget());
    for (&x, &t) in inst.marks().iter().zip(inst.times()) {
        let _ = writeln!(out, "{} {}", u8::from(x), t);
    }
    out
}
