//! Exact coefficient tables: recurrence data, connection matrices, structure constants.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::hahn::{self, HahnCase};
use crate::jacobi::{self, build_l, JacobiParams};
use crate::qalg::{self, presets, Fit, Presentation};
use crate::tridiag::{self, finite, TridiagParams};
use crate::wilson::WilsonParams;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Index(usize),
    Text(String),
    Value(Rational),
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Index(i) => s.serialize_u64(*i as u64),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Value(r) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("num", &r.numer().to_string())?;
                m.serialize_entry("den", &r.denom().to_string())?;
                m.end()
            }
        }
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Index(i) => i.to_string(),
            Cell::Text(t) => t.clone(),
            Cell::Value(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub kind: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Header plus one line per row; rationals always as `p/q`.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Which family a recurrence table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceFamily {
    Jacobi,
    Wilson,
    Hahn,
}

impl FromStr for RecurrenceFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jacobi" => Ok(RecurrenceFamily::Jacobi),
            "wilson" => Ok(RecurrenceFamily::Wilson),
            "hahn" => Ok(RecurrenceFamily::Hahn),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}; expected jacobi, wilson or hahn"))),
        }
    }
}

/// Explicit parameters for a table; absent ones read as zero and are recorded as such.
#[derive(Debug, Clone, Default)]
pub struct TableParams {
    pub values: BTreeMap<String, Rational>,
    pub nmax: Option<usize>,
    pub n: Option<usize>,
}

impl TableParams {
    fn get(&self, key: &str, used: &mut BTreeMap<String, String>) -> Rational {
        let v = self.values.get(key).cloned().unwrap_or_else(Rational::zero);
        used.insert(key.to_string(), v.to_string());
        v
    }

    fn big_n(&self, used: &mut BTreeMap<String, String>) -> usize {
        let n = self.n.unwrap_or(0);
        used.insert("N".into(), n.to_string());
        n
    }

    fn jacobi(&self, used: &mut BTreeMap<String, String>) -> JacobiParams {
        JacobiParams::new(self.get("alpha", used), self.get("beta", used))
    }
}

fn values(row: impl IntoIterator<Item = Rational>) -> impl Iterator<Item = Cell> {
    row.into_iter().map(Cell::Value)
}

/// `n, b_n, u_n` (Jacobi), `n, A_n, C_n` (Wilson) or `n, B_n, U_n` (Hahn) for `n = 0 .. nmax`.
pub fn recurrence_table(family: RecurrenceFamily, p: &TableParams) -> Result<Table> {
    let mut used = BTreeMap::new();
    let (columns, data): (&[&str], Vec<[Rational; 2]>) = match family {
        RecurrenceFamily::Jacobi => {
            let jp = p.jacobi(&mut used);
            let nmax = p.nmax.unwrap_or(0);
            let rows = (0..=nmax)
                .map(|n| Ok([jacobi::recurrence_b(&jp, n)?, jacobi::recurrence_u(&jp, n)?]))
                .collect::<Result<_>>()?;
            (&["n", "b", "u"], rows)
        }
        RecurrenceFamily::Wilson => {
            let w = WilsonParams::new(p.get("a1", &mut used), p.get("a2", &mut used), p.get("a3", &mut used), p.get("a4", &mut used));
            let nmax = p.nmax.unwrap_or(0);
            let rows = (0..=nmax).map(|n| Ok([w.a_coeff(n)?, w.c_coeff(n)?])).collect::<Result<_>>()?;
            (&["n", "A", "C"], rows)
        }
        RecurrenceFamily::Hahn => {
            let hc = HahnCase::new(p.jacobi(&mut used), p.get("tau0", &mut used), p.big_n(&mut used));
            let (b, u) = hahn::recurrence(&hc, p.nmax.unwrap_or(hc.n + 1))?;
            (&["n", "B", "U"], b.into_iter().zip(u).map(|(b, u)| [b, u]).collect())
        }
    };
    if let Some(nmax) = p.nmax {
        used.insert("nmax".into(), nmax.to_string());
    }
    let rows = data.into_iter().enumerate().map(|(n, r)| std::iter::once(Cell::Index(n)).chain(values(r)).collect()).collect();
    Ok(Table {
        kind: "recurrence".into(),
        parameters: used,
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows,
    })
}

/// `R_nk` of the finite reduction at `nu2 = N + 1`, one row per entry, with the dual eigenvalue of row `n`.
pub fn connection_table(p: &TableParams) -> Result<Table> {
    let mut used = BTreeMap::new();
    let jp = p.jacobi(&mut used);
    let nu1 = p.get("nu1", &mut used);
    let tau0 = p.get("tau0", &mut used);
    let n = p.big_n(&mut used);
    let r = finite::finite_reduction(&jp, &nu1, &tau0, n)?;
    let mut rows = Vec::new();
    for (i, (row, lam)) in r.entries.iter().zip(&r.dual_eigenvalues).enumerate() {
        for (k, v) in row.iter().enumerate() {
            rows.push(vec![Cell::Index(i), Cell::Index(k), Cell::Value(v.clone()), Cell::Value(lam.clone())]);
        }
    }
    Ok(Table {
        kind: "connection".into(),
        parameters: used,
        columns: ["n", "k", "R", "dual_eigenvalue"].iter().map(|c| c.to_string()).collect(),
        rows,
    })
}

/// The realization `(K1, K2)` of a preset at explicit parameters.
pub struct Realization {
    pub presentation: Presentation,
    pub k1: DiffOp,
    pub k2: DiffOp,
    /// Structure constants in displayed closed form.
    pub displayed: Vec<Rational>,
    /// Parameters read, including defaulted ones.
    pub used: BTreeMap<String, String>,
}

pub fn realization(preset: &str, p: &TableParams) -> Result<Realization> {
    let pres = presets::by_name(preset)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown preset {preset:?}; expected jacobi, racah-wilson or hahn")))?;
    let mut used = BTreeMap::new();
    let jp = p.jacobi(&mut used);
    let l = build_l(&jp);
    let (k2, values) = match preset {
        "jacobi" => (DiffOp::x(), presets::jacobi_constants(&jp)),
        "racah-wilson" => {
            let tp = TridiagParams::new(p.get("tau0", &mut used), p.get("tau2", &mut used), p.get("tau3", &mut used));
            (tridiag::build_m(&jp, &tp), presets::racah_wilson_constants(&jp, &tp))
        }
        _ => {
            let hc = HahnCase::new(jp.clone(), p.get("tau0", &mut used), p.big_n(&mut used));
            (hc.m(), presets::hahn_constants(&jp, &hc.tau0, &hc.tau3()))
        }
    };
    Ok(Realization { presentation: pres, k1: l, k2, displayed: values, used })
}

/// Fitted and displayed structure constants, one row per constant.
pub fn constants_table(preset: &str, p: &TableParams) -> Result<Table> {
    let Realization { presentation: pres, k1, k2, displayed, used } = realization(preset, p)?;
    let fitted = match qalg::fit_constants(&k1, &k2, &pres)? {
        Fit::Unique(m) => pres.ordered(&m)?,
        other => return Err(Error::Consistency(format!("constants are not determined: {other:?}"))),
    };
    let rows = pres
        .constants
        .iter()
        .zip(fitted.into_iter().zip(displayed))
        .map(|(name, (f, d))| vec![Cell::Text(name.clone()), Cell::Value(f), Cell::Value(d)])
        .collect();
    let mut parameters = used;
    parameters.insert("preset".into(), preset.to_string());
    Ok(Table {
        kind: "constants".into(),
        parameters,
        columns: ["constant", "fitted", "displayed"].iter().map(|c| c.to_string()).collect(),
        rows,
    })
}

/// The fit alone: `fixed` constants from a unique or particular solution, `free` ones set to zero.
pub fn fit_table(preset: &str, p: &TableParams) -> Result<Table> {
    let Realization { presentation: pres, k1, k2, used, .. } = realization(preset, p)?;
    let (values, free) = match qalg::fit_constants(&k1, &k2, &pres)? {
        Fit::Unique(m) => (m, Vec::new()),
        Fit::Underdetermined { particular, free } => (particular, free),
        Fit::Inconsistent { relation, order, exponent } => {
            return Err(Error::Consistency(format!(
                "no constants satisfy relation {relation} (coefficient of x^{exponent} D^{order})"
            )))
        }
    };
    let rows = pres
        .constants
        .iter()
        .map(|c| {
            let status = if free.contains(c) { "free" } else { "fixed" };
            vec![Cell::Text(c.clone()), Cell::Value(values[c].clone()), Cell::Text(status.into())]
        })
        .collect();
    let mut parameters = used;
    parameters.insert("preset".into(), preset.to_string());
    Ok(Table {
        kind: "fit".into(),
        parameters,
        columns: ["constant", "value", "status"].iter().map(|c| c.to_string()).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn params(pairs: &[(&str, Rational)], nmax: Option<usize>, n: Option<usize>) -> TableParams {
        TableParams { values: pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(), nmax, n }
    }

    #[test]
    fn jacobi_recurrence_rows() {
        let t = recurrence_table(RecurrenceFamily::Jacobi, &params(&[], Some(3), None)).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.rows[1], vec![Cell::Index(1), Cell::Value(q(1, 2)), Cell::Value(q(1, 12))]);
        let csv = t.to_csv();
        assert!(csv.starts_with("n,b,u\n0,1/2,0/1\n1,1/2,1/12\n"), "{csv}");
        let empty = recurrence_table(RecurrenceFamily::Jacobi, &params(&[], Some(0), None)).unwrap();
        assert_eq!(empty.to_csv().lines().count(), 2);
    }

    #[test]
    fn connection_at_n_zero() {
        let t = connection_table(&params(&[("nu1", q(1, 3))], None, Some(0))).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0][2], Cell::Value(Rational::one()));
    }

    #[test]
    fn constants_match_fit() {
        let p = params(&[("alpha", q(1, 3)), ("beta", q(-2, 5)), ("tau0", q(3, 7)), ("tau2", q(2, 3)), ("tau3", q(-5, 4))], None, None);
        let t = constants_table("racah-wilson", &p).unwrap();
        assert_eq!(t.rows.len(), 7);
        assert!(t.rows.iter().all(|r| r[1] == r[2]));
        let json = serde_json::to_value(&t.rows[0][1]).unwrap();
        assert_eq!(json, serde_json::json!({"num": "-2", "den": "1"}));
        let fit = fit_table("hahn", &params(&[], None, Some(2))).unwrap();
        assert!(fit.rows.iter().all(|r| r[2] == Cell::Text("fixed".into())));
        assert!(constants_table("su2", &p).is_err());
    }
}
