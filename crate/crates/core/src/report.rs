//! Constant tables and the group summary, each row checked against its
//! closed form in Q(Φ).

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::matrix::{inflation_factor_sq, tile_count, Seed, GROUPS};
use crate::phi::PhiNum;

type Phi = PhiNum<num_rational::BigRational>;

/// Bumped whenever the text or JSON layout changes.
pub const REPORT_FORMAT: &str = "heptile-report/1";

const TRIG_TOL: f64 = 1e-9;
const DELTA_TOL: f64 = 5e-4;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Table {
    Areas,
    AreaRatios,
    Diagonals,
}

/// A Φ-expression that is either exact in the field or the square root
/// of a field element.
#[derive(Clone, PartialEq, Debug)]
pub enum PhiForm {
    Exact(Phi),
    Sqrt(Phi),
}

impl PhiForm {
    pub fn value(&self) -> f64 {
        match self {
            PhiForm::Exact(x) => x.embed(),
            PhiForm::Sqrt(x) => x.embed::<f64>().sqrt(),
        }
    }

    /// The exact square of the value.
    pub fn squared(&self) -> Phi {
        match self {
            PhiForm::Exact(x) => x.square(),
            PhiForm::Sqrt(x) => x.clone(),
        }
    }

    pub fn reduced(&self) -> String {
        match self {
            PhiForm::Exact(x) => x.to_string(),
            PhiForm::Sqrt(x) => format!("sqrt({x})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantRow {
    pub table: Table,
    pub name: &'static str,
    pub trig_form: &'static str,
    pub trig_value: f64,
    /// The expression as printed in the published table.
    pub phi_text: &'static str,
    #[serde(rename = "phi_form", serialize_with = "ser_form")]
    pub phi_form: PhiForm,
    pub phi_value: f64,
    pub printed: &'static str,
}

fn ser_form<S: serde::Serializer>(f: &PhiForm, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.reduced())
}

impl ConstantRow {
    pub fn agrees(&self) -> bool {
        (self.trig_value - self.phi_value).abs() < TRIG_TOL
    }

    pub fn matches_print(&self) -> bool {
        format!("{:.3}", self.trig_value) == self.printed
    }

    pub fn passed(&self) -> bool {
        self.agrees() && self.matches_print()
    }
}

fn p(a: i64, b: i64, c: i64) -> Phi {
    Phi::int(a, b, c)
}

fn div(a: &Phi, b: &Phi) -> Phi {
    a.checked_div(b).expect("nonzero denominator")
}

pub fn constants_tables() -> Vec<ConstantRow> {
    use std::f64::consts::PI;
    let phi = p(0, 1, 0);
    let phi_plus_2 = p(2, 1, 0);
    let phi_sq = phi.square();
    let two_phi_sq_m2 = p(-2, 0, 2);
    let phi_sq_m1 = p(-1, 0, 1);

    let mut rows = Vec::new();
    let mut push = |table, name, trig_form, trig_value: f64, phi_text, phi_form: PhiForm, printed| {
        let phi_value = phi_form.value();
        rows.push(ConstantRow { table, name, trig_form, trig_value, phi_text, phi_form, phi_value, printed });
    };

    let area_a = PhiForm::Sqrt(div(&phi_plus_2, &two_phi_sq_m2.square()));
    let area_b = PhiForm::Sqrt(div(&(&phi_sq * &phi_plus_2), &two_phi_sq_m2.square()));
    let area_c = PhiForm::Sqrt(div(&phi_plus_2, &p(4, 0, 0)));
    push(Table::Areas, "A", "sin(pi/7)", (PI / 7.0).sin(), "(PHI+2)^(1/2)/(2PHI^2-2)", area_a, "0.434");
    push(Table::Areas, "B", "sin(2pi/7)", (2.0 * PI / 7.0).sin(), "PHI(PHI+2)^(1/2)/(2PHI^2-2)", area_b, "0.782");
    push(Table::Areas, "C", "sin(3pi/7)", (3.0 * PI / 7.0).sin(), "(PHI+2)^(1/2)/2", area_c, "0.975");

    let ratio = |k: f64| (k * PI / 7.0).sin();
    push(
        Table::AreaRatios,
        "B/A",
        "sin(2pi/7)/sin(pi/7)",
        ratio(2.0) / ratio(1.0),
        "PHI",
        PhiForm::Exact(phi.clone()),
        "1.802",
    );
    push(
        Table::AreaRatios,
        "C/B",
        "sin(3pi/7)/sin(2pi/7)",
        ratio(3.0) / ratio(2.0),
        "PHI^2-2",
        PhiForm::Exact(p(-2, 0, 1)),
        "1.247",
    );
    push(
        Table::AreaRatios,
        "C/A",
        "sin(3pi/7)/sin(pi/7)",
        ratio(3.0) / ratio(1.0),
        "PHI^2-1",
        PhiForm::Exact(phi_sq_m1.clone()),
        "2.247",
    );

    let short_a = &phi * &p(-3, 0, 1);
    let short_b = PhiForm::Sqrt(div(&phi_plus_2, &phi_sq_m1.square()));
    let long_c = PhiForm::Sqrt(div(&(&phi_sq * &phi_plus_2), &phi_sq_m1.square()));
    push(
        Table::Diagonals,
        "gamma",
        "2sin(pi/14)",
        2.0 * (PI / 14.0).sin(),
        "PHI(PHI^2-3)",
        PhiForm::Exact(short_a),
        "0.445",
    );
    push(
        Table::Diagonals,
        "Gamma",
        "2cos(pi/14)",
        2.0 * (PI / 14.0).cos(),
        "(PHI+2)^(1/2)",
        PhiForm::Sqrt(phi_plus_2),
        "1.950",
    );
    push(Table::Diagonals, "phi", "2sin(pi/7)", 2.0 * (PI / 7.0).sin(), "(PHI+2)^(1/2)/(PHI^2-1)", short_b, "0.868");
    push(Table::Diagonals, "Phi", "2cos(pi/7)", 2.0 * (PI / 7.0).cos(), "PHI", PhiForm::Exact(phi), "1.802");
    push(
        Table::Diagonals,
        "psi",
        "2sin(3pi/14)",
        2.0 * (3.0 * PI / 14.0).sin(),
        "PHI^2-2",
        PhiForm::Exact(p(-2, 0, 1)),
        "1.247",
    );
    push(
        Table::Diagonals,
        "Psi",
        "2cos(3pi/14)",
        2.0 * (3.0 * PI / 14.0).cos(),
        "PHI(PHI+2)^(1/2)/(PHI^2-1)",
        long_c,
        "1.564",
    );
    rows
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryRow {
    pub group: char,
    /// `None` for the symbolic general-formula row.
    pub seed: Option<[i64; 3]>,
    pub delta_text: &'static str,
    #[serde(skip)]
    pub delta_form: Option<PhiForm>,
    pub delta_printed: &'static str,
    pub delta_value: Option<f64>,
    pub tiles_printed: &'static str,
    pub tile_count: Option<i64>,
    /// δ² of the closed form equals the seed's δ² exactly.
    pub exact_ok: bool,
    pub value_ok: bool,
    pub tiles_ok: bool,
}

impl SummaryRow {
    pub fn passed(&self) -> bool {
        self.exact_ok && self.value_ok && self.tiles_ok
    }
}

struct Printed {
    text: &'static str,
    form: PhiForm,
    delta: &'static str,
    tiles: &'static str,
}

fn printed_rows() -> [Printed; 12] {
    let e = |a, b, c| PhiForm::Exact(p(a, b, c));
    let s = |a, b, c| PhiForm::Sqrt(p(a, b, c));
    let phi = p(0, 1, 0);
    [
        Printed { text: "1", form: e(1, 0, 0), delta: "1", tiles: "3" },
        Printed { text: "PHI^(1/2)", form: s(0, 1, 0), delta: "1.342", tiles: "5" },
        Printed { text: "(PHI^2-1)^(1/2)", form: s(-1, 0, 1), delta: "1.499", tiles: "6" },
        Printed { text: "PHI", form: e(0, 1, 0), delta: "1.802", tiles: "9" },
        Printed { text: "(PHI+2)^(1/2)", form: s(2, 1, 0), delta: "1.950", tiles: "11" },
        Printed { text: "2", form: e(2, 0, 0), delta: "2", tiles: "12" },
        Printed { text: "PHI+1", form: e(1, 1, 0), delta: "2.802", tiles: "22" },
        Printed { text: "PHI+2", form: e(2, 1, 0), delta: "3.802", tiles: "41" },
        Printed { text: "PHI(PHI+1)", form: PhiForm::Exact(&phi * &p(1, 1, 0)), delta: "5.049", tiles: "70" },
        Printed { text: "PHI(PHI+2)", form: PhiForm::Exact(&phi * &p(2, 1, 0)), delta: "6.851", tiles: "129" },
        // Corrected from the first edition's misprint.
        Printed {
            text: "PHI^2(PHI+1)",
            form: PhiForm::Exact(&phi.square() * &p(1, 1, 0)),
            delta: "9.098",
            tiles: "227",
        },
        Printed {
            text: "PHI^3+2PHI^2-1",
            form: PhiForm::Exact(&(&phi.pow(3) + &p(0, 0, 2)) - &p(1, 0, 0)),
            delta: "11.345",
            tiles: "353",
        },
    ]
}

/// Returns true when the general formula reproduces δ² and the tile count
/// for every listed seed.
fn general_formula_holds() -> bool {
    GROUPS.iter().all(|g| {
        let Seed { a, b, c } = g.seed;
        let formula = p(a - c, b, c);
        inflation_factor_sq(g.seed).map(|d| d == formula).unwrap_or(false)
            && tile_count(g.seed) == 3 * a + 5 * b + 6 * c
    })
}

pub fn summary_table() -> Result<Vec<SummaryRow>> {
    let mut rows = Vec::new();
    for (g, pr) in GROUPS.iter().zip(printed_rows()) {
        let d2 = inflation_factor_sq(g.seed)?;
        let value = d2.embed::<f64>().sqrt();
        let printed: f64 = pr.delta.parse().expect("printed value");
        let count = tile_count(g.seed);
        rows.push(SummaryRow {
            group: g.letter,
            seed: Some([g.seed.a, g.seed.b, g.seed.c]),
            delta_text: pr.text,
            exact_ok: pr.form.squared() == d2,
            value_ok: (value - printed).abs() < DELTA_TOL && (pr.form.value() - printed).abs() < DELTA_TOL,
            delta_form: Some(pr.form),
            delta_printed: pr.delta,
            delta_value: Some(value),
            tiles_ok: count.to_string() == pr.tiles,
            tile_count: Some(count),
            tiles_printed: pr.tiles,
        });
    }
    let general = general_formula_holds();
    rows.push(SummaryRow {
        group: 'M',
        seed: None,
        delta_text: "(a-c+b*PHI+c*PHI^2)^(1/2)",
        delta_form: None,
        delta_printed: "",
        delta_value: None,
        tiles_printed: "3a+5b+6c",
        tile_count: None,
        exact_ok: general,
        value_ok: true,
        tiles_ok: general,
    });
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct TablesReport {
    pub format: &'static str,
    pub constants: Vec<ConstantRow>,
    pub summary: Vec<SummaryRow>,
    pub passed: bool,
}

impl TablesReport {
    pub fn build() -> Result<Self> {
        let constants = constants_tables();
        let summary = summary_table()?;
        let passed = constants.iter().all(ConstantRow::passed) && summary.iter().all(SummaryRow::passed);
        Ok(TablesReport { format: REPORT_FORMAT, constants, summary, passed })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_text(&self) -> String {
        let ok = |b: bool| if b { "ok" } else { "FAIL" };
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.format);
        for (table, title) in
            [(Table::Areas, "Areas"), (Table::AreaRatios, "Area ratios"), (Table::Diagonals, "Diagonals")]
        {
            let _ = writeln!(out, "\n{title}");
            let _ = writeln!(
                out,
                "{:<6} {:<22} {:>6}  {:<28} {:>13}  check",
                "name", "trig", "value", "phi form", "|diff|"
            );
            for r in self.constants.iter().filter(|r| r.table == table) {
                let _ = writeln!(
                    out,
                    "{:<6} {:<22} {:>6}  {:<28} {:>13.3e}  {}",
                    r.name,
                    r.trig_form,
                    format!("{:.3}", r.trig_value),
                    r.phi_text,
                    (r.trig_value - r.phi_value).abs(),
                    ok(r.passed())
                );
            }
        }
        let _ = writeln!(out, "\nSummary");
        let _ = writeln!(out, "{:<5} {:<10} {:<26} {:>7} {:>9}  check", "group", "a,b,c", "delta", "value", "tiles");
        for r in &self.summary {
            let seed = r.seed.map(|[a, b, c]| format!("{a},{b},{c}")).unwrap_or_else(|| "a,b,c".into());
            let value = r.delta_value.map(|v| format!("{v:.3}")).unwrap_or_default();
            let tiles = r.tile_count.map(|n| n.to_string()).unwrap_or_else(|| r.tiles_printed.to_string());
            let _ = writeln!(
                out,
                "{:<5} {:<10} {:<26} {:>7} {:>9}  {}",
                r.group,
                seed,
                r.delta_text,
                value,
                tiles,
                ok(r.passed())
            );
        }
        let _ = writeln!(out, "\noverall: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_constant_rows_pass() {
        let rows = constants_tables();
        assert_eq!(rows.len(), 12);
        for r in &rows {
            assert!(r.passed(), "{} {} vs {}", r.name, r.trig_value, r.phi_value);
        }
    }

    #[test]
    fn spot_values() {
        let rows = constants_tables();
        let get = |n: &str| rows.iter().find(|r| r.name == n).unwrap();
        assert_eq!(get("A").printed, "0.434");
        assert_eq!(get("C/B").printed, "1.247");
        assert_eq!(get("gamma").phi_form, PhiForm::Exact(p(-1, -1, 1)));
    }

    #[test]
    fn summary_rows_pass() {
        let rows = summary_table().unwrap();
        assert_eq!(rows.len(), 13);
        for r in &rows {
            assert!(r.passed(), "row {}", r.group);
        }
        let e = &rows[4];
        assert_eq!((e.group, e.tile_count, e.delta_printed), ('E', Some(11), "1.950"));
    }

    #[test]
    fn perturbed_closed_form_fails_exactly() {
        // Dropping one factor of Φ from row K must be caught exactly.
        let k = PhiForm::Exact(&p(0, 0, 1) * &p(1, 1, 0));
        let seed = inflation_factor_sq(Seed::new(9, 16, 20).unwrap()).unwrap();
        assert_eq!(k.squared(), seed);
        let off = PhiForm::Exact(&p(0, 1, 0) * &p(1, 1, 0));
        assert_ne!(off.squared(), seed);
    }

    #[test]
    fn text_is_stable() {
        let a = TablesReport::build().unwrap();
        let b = TablesReport::build().unwrap();
        assert!(a.passed);
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }
}
