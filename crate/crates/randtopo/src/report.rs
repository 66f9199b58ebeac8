//! Report envelopes, JSON with 17 significant digits, and per-command CSV
//! tables of plot series.

use std::io::{self, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use randtopo_core::homology::Signature;
use serde::{Serialize, Serializer};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::experiments::{
    ArnoldReport, ConvergenceReport, CouplingReport, IgsReport, PositivityReport, SweepReport,
    UniversalityReport,
};
use crate::stats::Estimate;
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "randtopo-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
}

#[derive(Debug, Serialize)]
pub struct Report<'a, C: Serialize, R: Serialize> {
    pub schema_version: &'static str,
    pub command: &'a str,
    pub generated_at_unix: u64,
    pub seed: u64,
    pub config: &'a C,
    pub status: Status,
    pub results: &'a R,
}

impl<'a, C: Serialize, R: Serialize> Report<'a, C, R> {
    pub fn new(command: &'a str, seed: u64, config: &'a C, status: Status, results: &'a R) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            generated_at_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            seed,
            config,
            status,
            results,
        }
    }
}

/// Exponent form with 17 significant digits, enough to round-trip every
/// `f64`. Non-finite values become empty strings.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

/// Pretty printer whose floats carry 17 significant digits. Non-finite
/// values never reach it; serde_json writes them as `null`.
struct Digits17(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(
            fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl Formatter for Digits17 {
    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );

    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut out, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(out)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn signature_labels<S: Serializer>(
    sigs: &[Signature],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(sigs.iter().map(|g| g.to_string()))
}

/// A CSV table with a fixed header.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &'static [&'static str]) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner()
            .map_err(|e| Error::Csv(e.into_error().into()))
    }
}

fn est(e: &Estimate) -> [String; 2] {
    [fmt_f64(e.mean), fmt_f64(e.se)]
}

pub fn measure_table(r: &ConvergenceReport) -> Table {
    let mut t = Table::new(&["R", "signature", "count", "ratio", "density", "density_se"]);
    for row in &r.rows {
        let [m, se] = est(&row.density_all);
        t.push(vec![
            fmt_f64(row.radius),
            "all".into(),
            row.contained_components.to_string(),
            fmt_f64(1.0),
            m,
            se,
        ]);
        for s in &row.signatures {
            let [m, se] = est(&s.density);
            t.push(vec![
                fmt_f64(row.radius),
                s.signature.clone(),
                s.count.to_string(),
                fmt_f64(s.ratio),
                m,
                se,
            ]);
        }
    }
    t
}

pub fn igs_table(r: &IgsReport) -> Table {
    let mut t = Table::new(&[
        "trial",
        "signature",
        "lower",
        "lower_se",
        "middle",
        "upper",
        "upper_se",
        "pass",
    ]);
    for inst in &r.instances {
        for e in &inst.entries {
            let [l, lse] = est(&e.lower);
            let [u, use_] = est(&e.upper);
            t.push(vec![
                inst.trial.to_string(),
                e.signature.clone(),
                l,
                lse,
                e.middle.to_string(),
                u,
                use_,
                e.pass.to_string(),
            ]);
        }
    }
    t
}

pub fn universality_table(r: &UniversalityReport) -> Table {
    let mut t = Table::new(&["n", "space", "signature", "count", "mass", "tv_reference"]);
    for m in &r.reference_measure {
        t.push(vec![
            String::new(),
            "euclidean".into(),
            m.signature.clone(),
            m.count.to_string(),
            fmt_f64(m.mass),
            String::new(),
        ]);
    }
    for row in &r.rows {
        for s in &row.spaces {
            let tv = s.tv_reference.map(fmt_f64).unwrap_or_default();
            for m in &s.measure {
                t.push(vec![
                    row.n.to_string(),
                    s.space.to_string(),
                    m.signature.clone(),
                    m.count.to_string(),
                    fmt_f64(m.mass),
                    tv.clone(),
                ]);
            }
        }
    }
    t
}

pub fn coupling_table(r: &CouplingReport) -> Table {
    let mut t = Table::new(&[
        "n",
        "points_in_r",
        "points_in_r_se",
        "expected_points",
        "distinct_vectors",
        "tv",
    ]);
    for row in &r.rows {
        let [m, se] = est(&row.points_in_r);
        t.push(vec![
            row.n.to_string(),
            m,
            se,
            fmt_f64(row.expected_points),
            row.distinct_vectors.to_string(),
            fmt_f64(row.tv),
        ]);
    }
    t
}

pub fn positivity_table(r: &PositivityReport) -> Table {
    let mut t = Table::new(&["signature", "count", "frequency"]);
    for x in &r.targets {
        t.push(vec![
            x.signature.clone(),
            x.count.to_string(),
            fmt_f64(x.frequency),
        ]);
    }
    t
}

pub fn arnold_table(r: &ArnoldReport) -> Table {
    let mut t = Table::new(&["quantity", "signature", "estimate", "se"]);
    for (k, b) in r.betti.iter().enumerate() {
        let [m, se] = est(b);
        t.push(vec![format!("beta{k}"), String::new(), m, se]);
    }
    for s in &r.beta0_by_signature {
        let [m, se] = est(&s.density);
        t.push(vec!["beta0".into(), s.signature.clone(), m, se]);
    }
    t
}

pub fn sweep_table(r: &SweepReport) -> Table {
    let mut t = Table::new(&[
        "alpha",
        "largest_fraction",
        "largest_fraction_se",
        "oversize_frequency",
        "signature",
        "ratio",
    ]);
    for row in &r.rows {
        let [m, se] = est(&row.largest_fraction);
        for s in &row.estimate.signatures {
            t.push(vec![
                fmt_f64(row.alpha),
                m.clone(),
                se.clone(),
                fmt_f64(row.oversize_frequency),
                s.signature.clone(),
                fmt_f64(s.ratio),
            ]);
        }
    }
    t
}
