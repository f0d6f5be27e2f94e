//! Low-degree tables, loaded from the text files under `data/tables`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::expr::{parse_product, Affine, Condition, DegreeExpr, NRange};
use crate::arith::pow_big;
use crate::error::{Error, Result};
use crate::groups::Classical;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableFamily {
    Linear,
    Unitary,
    Symplectic,
    OddOrthogonal,
    /// Both signs share one list.
    EvenOrthogonal,
}

impl TableFamily {
    pub fn of(kind: Classical) -> TableFamily {
        match kind {
            Classical::Linear => TableFamily::Linear,
            Classical::Unitary => TableFamily::Unitary,
            Classical::Symplectic => TableFamily::Symplectic,
            Classical::OddOrthogonal => TableFamily::OddOrthogonal,
            Classical::OrthogonalPlus | Classical::OrthogonalMinus => TableFamily::EvenOrthogonal,
        }
    }

    fn parse(t: &str) -> Result<TableFamily> {
        Ok(match t {
            "linear" => TableFamily::Linear,
            "unitary" => TableFamily::Unitary,
            "symplectic" => TableFamily::Symplectic,
            "odd-orthogonal" => TableFamily::OddOrthogonal,
            "even-orthogonal" => TableFamily::EvenOrthogonal,
            _ => return Err(Error::data(format!("unknown table family {t:?}"))),
        })
    }
}

impl fmt::Display for TableFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableFamily::Linear => "linear",
            TableFamily::Unitary => "unitary",
            TableFamily::Symplectic => "symplectic",
            TableFamily::OddOrthogonal => "odd-orthogonal",
            TableFamily::EvenOrthogonal => "even-orthogonal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(p: u64) -> Parity {
        if p == 2 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Allowed shapes for the `p`-part of a table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PPartShape {
    One,
    Q,
    QSquared,
    /// `q/2`, only meaningful for `p = 2`.
    HalfQ,
    AnyPowerOfQ,
}

impl PPartShape {
    fn parse(t: &str) -> Result<PPartShape> {
        Ok(match t {
            "1" => PPartShape::One,
            "q" => PPartShape::Q,
            "q^2" => PPartShape::QSquared,
            "q/2" => PPartShape::HalfQ,
            "q^k" => PPartShape::AnyPowerOfQ,
            _ => return Err(Error::data(format!("unknown p-part shape {t:?}"))),
        })
    }

    /// Whether `p^exp` has this shape for `q = p^a`.
    pub fn matches(&self, p: u64, a: u32, exp: i64) -> bool {
        let a = a as i64;
        match self {
            PPartShape::One => exp == 0,
            PPartShape::Q => exp == a,
            PPartShape::QSquared => exp == 2 * a,
            PPartShape::HalfQ => p == 2 && exp == a - 1,
            PPartShape::AnyPowerOfQ => exp >= 0 && exp % a == 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub n_range: NRange,
    pub expr: DegreeExpr,
    /// The data line as written, for reports.
    pub source: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub id: u32,
    pub family: TableFamily,
    pub parity: Option<Parity>,
    /// Entries lie below `q^cutoff`.
    pub cutoff: Affine,
    pub claimed_p_parts: Vec<PPartShape>,
    pub entries: Vec<TableEntry>,
}

impl DegreeTable {
    pub fn parse(text: &str, name: &str) -> Result<DegreeTable> {
        let err = |line: usize, msg: String| Error::data(format!("{name}:{line}: {msg}"));
        let mut id = None;
        let mut family = None;
        let mut parity = None;
        let mut cutoff = None;
        let mut pparts = Vec::new();
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(d) = body.strip_prefix('@') {
                let (key, val) = d.split_once(char::is_whitespace).unwrap_or((d, ""));
                let val = val.trim();
                match key {
                    "table" => {
                        id = Some(
                            val.parse()
                                .map_err(|_| err(line, format!("bad table id {val:?}")))?,
                        )
                    }
                    "family" => {
                        family =
                            Some(TableFamily::parse(val).map_err(|e| err(line, e.to_string()))?)
                    }
                    "parity" => {
                        parity = Some(match val {
                            "odd" => Parity::Odd,
                            "even" => Parity::Even,
                            _ => return Err(err(line, format!("bad parity {val:?}"))),
                        })
                    }
                    "cutoff" => {
                        cutoff = Some(parse_cutoff(val).map_err(|e| err(line, e.to_string()))?)
                    }
                    "pparts" => {
                        for t in val.split_whitespace() {
                            pparts
                                .push(PPartShape::parse(t).map_err(|e| err(line, e.to_string()))?);
                        }
                    }
                    _ => return Err(err(line, format!("unknown directive @{key}"))),
                }
                continue;
            }
            let cols: Vec<&str> = body.split('|').map(str::trim).collect();
            if cols.len() != 8 {
                return Err(err(
                    line,
                    format!("expected 8 columns, found {}", cols.len()),
                ));
            }
            let fam = TableFamily::parse(cols[0]).map_err(|e| err(line, e.to_string()))?;
            if Some(fam) != family {
                return Err(err(
                    line,
                    format!("entry family {fam} does not match the table"),
                ));
            }
            let n_range = NRange::parse(cols[1]).map_err(|e| err(line, e.to_string()))?;
            let mut conditions = match cols[2] {
                "any" => vec![],
                "odd" => vec![Condition::QOdd],
                "even" => vec![Condition::QEven],
                other => return Err(err(line, format!("bad parity column {other:?}"))),
            };
            let (sn, sd) = parse_scalar(cols[3]).map_err(|e| err(line, e.to_string()))?;
            let k = match cols[4] {
                "1" => 0,
                "q" => 1,
                t => t
                    .strip_prefix("q^")
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| err(line, format!("bad q-power {t:?}")))?,
            };
            let (k1, mut numer, mut denom) =
                parse_product(cols[5]).map_err(|e| err(line, e.to_string()))?;
            let (k2, n2, d2) = parse_product(cols[6]).map_err(|e| err(line, e.to_string()))?;
            if k2 > k + k1 {
                return Err(err(line, "denominator carries a power of q".into()));
            }
            numer.extend(d2);
            denom.extend(n2);
            if cols[7] != "-" {
                for c in split_top_level(cols[7]) {
                    conditions.push(Condition::parse(c).map_err(|e| err(line, e.to_string()))?);
                }
            }
            let expr = DegreeExpr::new(k + k1 - k2, numer, denom)
                .with_scalar(sn, sd)
                .with_conditions(conditions);
            entries.push(TableEntry {
                n_range,
                expr,
                source: cols[5..7].join(" / "),
                line,
            });
        }
        let id = id.ok_or_else(|| Error::data(format!("{name}: missing @table")))?;
        let family = family.ok_or_else(|| Error::data(format!("{name}: missing @family")))?;
        let cutoff = cutoff.ok_or_else(|| Error::data(format!("{name}: missing @cutoff")))?;
        if pparts.is_empty() {
            return Err(Error::data(format!("{name}: missing @pparts")));
        }
        Ok(DegreeTable {
            id,
            family,
            parity,
            cutoff,
            claimed_p_parts: pparts,
            entries,
        })
    }

    fn serves(&self, family: TableFamily, p: u64) -> bool {
        self.family == family && self.parity.is_none_or(|x| x == Parity::of(p))
    }

    pub fn cutoff_exponent(&self, n: u32) -> i64 {
        self.cutoff.at(n)
    }

    /// Whether `p^exp` is one of the claimed shapes.
    pub fn p_part_allowed(&self, p: u64, a: u32, exp: i64) -> bool {
        self.claimed_p_parts.iter().any(|s| s.matches(p, a, exp))
    }
}

/// Splits on commas outside parentheses.
fn split_top_level(t: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&t[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&t[start..]);
    out
}

fn parse_scalar(t: &str) -> Result<(u64, u64)> {
    let bad = || Error::data(format!("bad scalar {t:?}"));
    match t.split_once('/') {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        )),
        None => Ok((t.parse().map_err(|_| bad())?, 1)),
    }
}

fn parse_cutoff(t: &str) -> Result<Affine> {
    let bad = || Error::data(format!("bad cutoff {t:?}"));
    let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, offset) = match t.find(['+', '-']) {
        Some(i) => (&t[..i], t[i..].parse::<i64>().map_err(|_| bad())?),
        None => (t.as_str(), 0),
    };
    let coef = match head.strip_suffix('n') {
        Some("") => 1,
        Some(c) => c.parse().map_err(|_| bad())?,
        None => return Err(bad()),
    };
    Ok(Affine { coef, offset })
}

/// The applicable entries of one table at a given `(n, q)`.
#[derive(Clone, Debug)]
pub struct TableRow<'a> {
    pub table: &'a DegreeTable,
    pub n: u32,
    pub p: u64,
    pub a: u32,
    pub entries: Vec<&'a TableEntry>,
}

impl TableRow<'_> {
    pub fn values(&self) -> Result<BTreeSet<BigUint>> {
        self.entries
            .iter()
            .map(|e| e.expr.eval(self.n, self.p, self.a))
            .collect()
    }

    pub fn cutoff(&self) -> BigUint {
        let k = self.table.cutoff_exponent(self.n);
        pow_big(self.p, (k as u64) * self.a as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTables {
    pub tables: Vec<DegreeTable>,
}

const BUILTIN: [(&str, &str); 6] = [
    (
        "table1_linear.txt",
        include_str!("../../data/tables/table1_linear.txt"),
    ),
    (
        "table2_unitary.txt",
        include_str!("../../data/tables/table2_unitary.txt"),
    ),
    (
        "table3_symplectic_odd.txt",
        include_str!("../../data/tables/table3_symplectic_odd.txt"),
    ),
    (
        "table4_symplectic_even.txt",
        include_str!("../../data/tables/table4_symplectic_even.txt"),
    ),
    (
        "table5_odd_orthogonal.txt",
        include_str!("../../data/tables/table5_odd_orthogonal.txt"),
    ),
    (
        "table6_even_orthogonal.txt",
        include_str!("../../data/tables/table6_even_orthogonal.txt"),
    ),
];

impl DegreeTables {
    pub fn builtin() -> &'static DegreeTables {
        static TABLES: OnceLock<DegreeTables> = OnceLock::new();
        TABLES.get_or_init(|| {
            let tables = BUILTIN
                .iter()
                .map(|(name, text)| {
                    DegreeTable::parse(text, name).expect("bundled table data parses")
                })
                .collect();
            DegreeTables { tables }
        })
    }

    /// Loads every `*.txt` file in `dir`.
    pub fn load_dir(dir: &Path) -> Result<DegreeTables> {
        let read = |p: &Path| {
            std::fs::read_to_string(p).map_err(|e| Error::data(format!("{}: {e}", p.display())))
        };
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| Error::data(format!("{}: {e}", dir.display())))?
            .filter_map(|d| d.ok().map(|d| d.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        paths.sort();
        if paths.is_empty() {
            return Err(Error::data(format!("no table files in {}", dir.display())));
        }
        let tables = paths
            .iter()
            .map(|p| DegreeTable::parse(&read(p)?, &p.display().to_string()))
            .collect::<Result<Vec<_>>>()?;
        Ok(DegreeTables { tables })
    }

    pub fn by_id(&self, id: u32) -> Option<&DegreeTable> {
        self.tables.iter().find(|t| t.id == id)
    }

    /// The table for `kind` at the parity of `p`.
    pub fn table_for(&self, kind: Classical, p: u64) -> Result<&DegreeTable> {
        let fam = TableFamily::of(kind);
        self.tables
            .iter()
            .find(|t| t.serves(fam, p))
            .ok_or_else(|| Error::NoTableRow(format!("no table for {fam} with p = {p}")))
    }

    /// Entries applicable at `(n, p^a)`. A request outside every row is an
    /// explicit error rather than an empty list.
    pub fn low_degree_table(
        &self,
        kind: Classical,
        n: u32,
        p: u64,
        a: u32,
    ) -> Result<TableRow<'_>> {
        let table = self.table_for(kind, p)?;
        let entries: Vec<_> = table
            .entries
            .iter()
            .filter(|e| e.n_range.contains(n) && e.expr.applies(n, p, a))
            .collect();
        if entries.is_empty() {
            return Err(Error::NoTableRow(format!(
                "table {} has no row for {} n = {n}, q = {p}^{a}",
                table.id, table.family
            )));
        }
        Ok(TableRow {
            table,
            n,
            p,
            a,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(kind: Classical, n: u32, p: u64, a: u32) -> Vec<u64> {
        let row = DegreeTables::builtin()
            .low_degree_table(kind, n, p, a)
            .unwrap();
        row.values()
            .unwrap()
            .into_iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn builtin_tables_load() {
        let t = DegreeTables::builtin();
        assert_eq!(t.tables.len(), 6);
        for id in 1..=6 {
            assert!(t.by_id(id).is_some());
        }
    }

    #[test]
    fn linear_rank_two_at_five() {
        assert_eq!(values(Classical::Linear, 2, 5, 1), vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn unitary_first_entry() {
        let row = DegreeTables::builtin()
            .low_degree_table(Classical::Unitary, 10, 2, 1)
            .unwrap();
        assert_eq!(
            row.entries[0].expr.eval(10, 2, 1).unwrap(),
            BigUint::from(342u32)
        );
    }

    #[test]
    fn symplectic_odd_rank_four() {
        let v = values(Classical::Symplectic, 4, 3, 1);
        assert!(v.contains(&40) && v.contains(&41));
    }

    #[test]
    fn coverage_gaps_are_errors() {
        let t = DegreeTables::builtin();
        assert!(matches!(
            t.low_degree_table(Classical::Unitary, 9, 2, 1),
            Err(Error::NoTableRow(_))
        ));
        assert!(matches!(
            t.low_degree_table(Classical::Symplectic, 3, 2, 1),
            Err(Error::NoTableRow(_))
        ));
        assert!(matches!(
            t.low_degree_table(Classical::Symplectic, 4, 2, 1),
            Err(Error::NoTableRow(_))
        ));
        assert!(matches!(
            t.low_degree_table(Classical::OrthogonalPlus, 5, 2, 1),
            Err(Error::NoTableRow(_))
        ));
        assert!(t.low_degree_table(Classical::Symplectic, 3, 2, 2).is_ok());
        assert!(t
            .low_degree_table(Classical::OrthogonalMinus, 6, 2, 1)
            .is_ok());
    }

    #[test]
    fn malformed_lines_are_rejected() {
        let head = "@table 9\n@family linear\n@cutoff n\n@pparts 1 q\n";
        assert!(
            DegreeTable::parse(&format!("{head}linear | 2 | any | 1 | 1 | (q+1)\n"), "t").is_err()
        );
        assert!(DegreeTable::parse(
            &format!("{head}unitary | 2 | any | 1 | 1 | (q+1) | - | -\n"),
            "t"
        )
        .is_err());
        assert!(DegreeTable::parse(
            &format!("{head}linear | 2 | any | 1 | 1 | (q^3+q+1) | - | -\n"),
            "t"
        )
        .is_err());
        assert!(DegreeTable::parse("@family linear\n", "t").is_err());
        assert_eq!(
            parse_cutoff("2n-2").unwrap(),
            Affine {
                coef: 2,
                offset: -2
            }
        );
    }
}
