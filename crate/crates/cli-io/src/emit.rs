use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Shortest decimal of `x` rounded to 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    r.to_string()
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            let open = || -> io::Result<File> {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                File::create(p)
            };
            let f =
                open().map_err(|e| CliError::Run(format!("cannot write {}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(io::stdout().lock()),
    })
}

/// CSV with a fixed header; no rows gives a header-only file.
pub fn write_csv<I>(path: Option<&Path>, header: &[&str], rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(sink(path)?);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub const BP_HEADER: [&str; 11] = [
    "epoch", "tau", "cx", "cy", "ax", "ay", "psi_c", "theta_c", "psi_a", "theta_a", "beta",
];

pub fn bp_rows(traj: &bp_core::Trajectory) -> impl Iterator<Item = Vec<String>> + '_ {
    traj.records.iter().map(|r| {
        let s = &r.state;
        let v = &r.ratios;
        let mut row = vec![r.epoch.to_string(), fmt_num(r.tau)];
        row.extend([s.cx, s.cy, s.ax, s.ay].map(|c| c.to_string()));
        row.extend([v.psi_c, v.theta_c, v.psi_a, v.theta_a, v.beta].map(fmt_num));
        row
    })
}
