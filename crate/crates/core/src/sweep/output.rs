//! CSV records and plot data files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::stability::{Degeneracy, StabilityRecord};

use super::svg;

pub const CSV_HEADER: &str = "m1,m2,zeta4,s0,t_period,k11,a,b,c,d,e,eig2,res_left_eig,res_sparsity,res_symplectic,gamma_drift,a2_drift,stable_2df,spectral_4df,linear_4df,degenerate_cause,status";
pub const CSV_NAME: &str = "sweep.csv";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Structural residuals above the classification gate.
    Unreliable,
    Failed(String),
}

impl Status {
    fn render(&self) -> String {
        match self {
            Status::Ok => "ok".into(),
            Status::Unreliable => "unreliable".into(),
            // Keep the row parseable.
            Status::Failed(why) => format!("failed: {}", why.replace([',', '\n', '\r'], ";")),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "ok" => Ok(Status::Ok),
            "unreliable" => Ok(Status::Unreliable),
            _ => s
                .strip_prefix("failed: ")
                .map(|w| Status::Failed(w.to_string()))
                .ok_or_else(|| Error::Parse(format!("unknown status {s:?}"))),
        }
    }
}

/// One CSV row. Failed points carry NaN numbers and false flags.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub m1: f64,
    pub m2: f64,
    pub zeta4: f64,
    pub s0: f64,
    pub t_period: f64,
    pub k11: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub eig2: f64,
    pub res_left_eig: f64,
    pub res_sparsity: f64,
    pub res_symplectic: f64,
    pub gamma_drift: f64,
    pub a2_drift: f64,
    pub stable_2df: bool,
    pub spectral_4df: bool,
    pub linear_4df: bool,
    pub degenerate: Degeneracy,
    pub status: Status,
}

impl SweepRow {
    pub fn from_record(r: &StabilityRecord) -> Self {
        let c = &r.classification;
        Self {
            m1: r.m1,
            m2: r.m2,
            zeta4: r.zeta4,
            s0: r.s0,
            t_period: r.t_period,
            k11: r.entries.k11,
            a: r.entries.a,
            b: r.entries.b,
            c: r.entries.c,
            d: r.entries.d,
            e: r.entries.e,
            eig2: c.eig2,
            res_left_eig: r.report.left_eig(),
            res_sparsity: r.report.sparsity,
            res_symplectic: r.report.symplectic,
            gamma_drift: r.gamma_drift,
            a2_drift: r.a2_drift,
            stable_2df: c.stable_2df,
            spectral_4df: c.spectral_4df,
            linear_4df: c.linear_4df,
            degenerate: c.degenerate.clone(),
            status: if c.reliable { Status::Ok } else { Status::Unreliable },
        }
    }

    pub fn failed(m1: f64, why: String) -> Self {
        let nan = f64::NAN;
        Self {
            m1,
            m2: 3.0 - 2.0 * m1,
            zeta4: nan,
            s0: nan,
            t_period: nan,
            k11: nan,
            a: nan,
            b: nan,
            c: nan,
            d: nan,
            e: nan,
            eig2: nan,
            res_left_eig: nan,
            res_sparsity: nan,
            res_symplectic: nan,
            gamma_drift: nan,
            a2_drift: nan,
            stable_2df: false,
            spectral_4df: false,
            linear_4df: false,
            degenerate: Degeneracy::default(),
            status: Status::Failed(why),
        }
    }

    pub fn is_converged(&self) -> bool {
        !matches!(self.status, Status::Failed(_))
    }

    fn floats(&self) -> [f64; 17] {
        [
            self.m1,
            self.m2,
            self.zeta4,
            self.s0,
            self.t_period,
            self.k11,
            self.a,
            self.b,
            self.c,
            self.d,
            self.e,
            self.eig2,
            self.res_left_eig,
            self.res_sparsity,
            self.res_symplectic,
            self.gamma_drift,
            self.a2_drift,
        ]
    }

    pub fn to_csv_line(&self) -> String {
        let mut line = String::new();
        for x in self.floats() {
            write!(line, "{x:.16e},").unwrap();
        }
        write!(
            line,
            "{},{},{},{},{}",
            self.stable_2df,
            self.spectral_4df,
            self.linear_4df,
            self.degenerate,
            self.status.render()
        )
        .unwrap();
        line
    }

    pub fn parse_csv_line(line: &str) -> Result<Self> {
        let cols: Vec<&str> = line.splitn(22, ',').collect();
        if cols.len() != 22 {
            return Err(Error::Parse(format!("expected 22 columns, got {}: {line:?}", cols.len())));
        }
        let f = |i: usize| -> Result<f64> {
            cols[i]
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("column {i}: not a number: {:?}", cols[i])))
        };
        let b = |i: usize| -> Result<bool> {
            cols[i]
                .parse::<bool>()
                .map_err(|_| Error::Parse(format!("column {i}: not a boolean: {:?}", cols[i])))
        };
        Ok(Self {
            m1: f(0)?,
            m2: f(1)?,
            zeta4: f(2)?,
            s0: f(3)?,
            t_period: f(4)?,
            k11: f(5)?,
            a: f(6)?,
            b: f(7)?,
            c: f(8)?,
            d: f(9)?,
            e: f(10)?,
            eig2: f(11)?,
            res_left_eig: f(12)?,
            res_sparsity: f(13)?,
            res_symplectic: f(14)?,
            gamma_drift: f(15)?,
            a2_drift: f(16)?,
            stable_2df: b(17)?,
            spectral_4df: b(18)?,
            linear_4df: b(19)?,
            degenerate: Degeneracy::parse(cols[20])?,
            status: Status::parse(cols[21])?,
        })
    }
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(400 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv_line());
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CSV_HEADER => {}
        Some(h) => return Err(Error::Parse(format!("unexpected CSV header {h:?}"))),
        None => return Err(Error::Parse("empty CSV".into())),
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| SweepRow::parse_csv_line(l.trim_end()))
        .collect()
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    parse_csv(&fs::read_to_string(path)?)
}

/// A named series `m1 ↦ y` for plots.
pub struct Series {
    pub name: &'static str,
    pub points: Vec<(f64, f64)>,
}

fn series(rows: &[SweepRow], name: &'static str, get: impl Fn(&SweepRow) -> f64) -> Series {
    Series {
        name,
        points: rows
            .iter()
            .filter(|r| r.is_converged())
            .map(|r| (r.m1, get(r)))
            .filter(|(_, y)| y.is_finite())
            .collect(),
    }
}

/// Figure name, y-label and the series drawn in it.
pub fn figures(rows: &[SweepRow]) -> Vec<(&'static str, &'static str, Vec<Series>)> {
    vec![
        ("zeta4", "Q4(0)", vec![series(rows, "zeta4", |r| r.zeta4)]),
        ("k11", "k11", vec![series(rows, "k11", |r| r.k11)]),
        ("e", "e", vec![series(rows, "e", |r| r.e)]),
        ("eig2", "a + d + 1", vec![series(rows, "eig2", |r| r.eig2)]),
        (
            "e_eig2",
            "e and a + d + 1",
            vec![series(rows, "e", |r| r.e), series(rows, "eig2", |r| r.eig2)],
        ),
    ]
}

/// Two-column text data; several series are separated by two blank lines.
pub fn plot_data(series: &[Series]) -> String {
    let mut out = String::new();
    for (k, s) in series.iter().enumerate() {
        if k > 0 {
            out.push_str("\n\n");
        }
        writeln!(out, "# m1 {}", s.name).unwrap();
        for (x, y) in &s.points {
            writeln!(out, "{x:.16e} {y:.16e}").unwrap();
        }
    }
    out
}

/// Write `<name>.dat` and `<name>.svg` for every figure into `dir`.
pub fn write_plots(rows: &[SweepRow], dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, ylabel, series) in figures(rows) {
        let dat = dir.join(format!("{name}.dat"));
        fs::write(&dat, plot_data(&series))?;
        let svg_path = dir.join(format!("{name}.svg"));
        fs::write(&svg_path, svg::line_plot(name, "m1", ylabel, &series))?;
        written.push(dat);
        written.push(svg_path);
    }
    Ok(written)
}

/// CSV plus plot files under `dir`.
pub fn emit_outputs(rows: &[SweepRow], dir: &Path) -> Result<Vec<PathBuf>> {
    if rows.is_empty() {
        return Err(Error::InvalidParameter("no records to write".into()));
    }
    fs::create_dir_all(dir)?;
    let csv = dir.join(CSV_NAME);
    fs::write(&csv, to_csv(rows))?;
    let mut written = vec![csv];
    written.extend(write_plots(rows, &dir.join("plots"))?);
    Ok(written)
}
