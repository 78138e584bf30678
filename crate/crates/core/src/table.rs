//! TSV tables of bound values with columns `n`, `bound-name`, `value`,
//! `vacuous`, `validity`. Output is a pure function of the table kind.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bounds::{merkurjev_lower, pfister3_lower_bound, rost_table, spin_lower, spin_upper, BoundReport};
use crate::error::{Error, Result};

pub const HEADER: &str = "n\tbound-name\tvalue\tvacuous\tvalidity";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Exact values of `ed(Spin_n)`, `3 <= n <= 14`.
    Rost,
    /// Lower and upper spin bounds for `15 <= n <= 40`.
    Spin,
    /// Pfister-number lower bound for even `2 <= n <= 64`.
    Pfister,
    All,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rost" => Ok(TableKind::Rost),
            "spin" => Ok(TableKind::Spin),
            "pfister" => Ok(TableKind::Pfister),
            "all" => Ok(TableKind::All),
            _ => Err(Error::parse("table", format!("unknown table {s:?} (rost|spin|pfister|all)"))),
        }
    }
}

fn row(out: &mut String, r: &BoundReport) {
    writeln!(out, "{}\t{}\t{}\t{}\t{}", r.n, r.name, r.value, r.vacuous, r.validity).unwrap();
}

fn body(kind: TableKind, out: &mut String) -> Result<()> {
    match kind {
        TableKind::Rost => {
            for n in 3..=14 {
                writeln!(out, "{n}\trost_table\t{}\tfalse\t3 <= n <= 14", rost_table(n)?).unwrap();
            }
        }
        TableKind::Spin => {
            for n in 15..=40 {
                row(out, &spin_lower(n)?);
                if n % 4 == 0 {
                    row(out, &merkurjev_lower(n)?);
                }
                row(out, &spin_upper(n)?);
            }
        }
        TableKind::Pfister => {
            for n in (2..=64).step_by(2) {
                row(out, &pfister3_lower_bound(n)?);
            }
        }
        TableKind::All => {
            for k in [TableKind::Rost, TableKind::Spin, TableKind::Pfister] {
                body(k, out)?;
            }
        }
    }
    Ok(())
}

pub fn render_table(kind: TableKind) -> Result<String> {
    let mut out = String::from(HEADER);
    out.push('\n');
    body(kind, &mut out)?;
    Ok(out)
}
