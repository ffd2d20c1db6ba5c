//! CSV writers for step histories and scatter profiles.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::Result;
use crate::timeloop::StepRecord;
use crate::verification::norms::ProfilePoint;

pub const HISTORY_HEADER: &str = "t,dt,E_tot,S_tot,min_rho,min_p,gcl,n_troubled";
pub const PROFILE_HEADER: &str = "coordinate,rho,u,p,S,eps";

pub fn write_history(w: &mut impl Write, history: &[StepRecord]) -> Result<()> {
    writeln!(w, "{HISTORY_HEADER}")?;
    for r in history {
        writeln!(
            w,
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{}",
            r.t, r.dt, r.total_energy, r.total_entropy, r.min_density, r.min_pressure, r.gcl, r.n_troubled
        )?;
    }
    Ok(())
}

pub fn write_profile(w: &mut impl Write, profile: &[ProfilePoint]) -> Result<()> {
    writeln!(w, "{PROFILE_HEADER}")?;
    for q in profile {
        writeln!(
            w,
            "{:e},{:e},{:e},{:e},{:e},{:e}",
            q.coord, q.rho, q.u, q.p, q.entropy, q.eps
        )?;
    }
    Ok(())
}

fn to_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

pub fn write_history_file(path: &Path, history: &[StepRecord]) -> Result<()> {
    to_file(path, |w| write_history(w, history))
}

pub fn write_profile_file(path: &Path, profile: &[ProfilePoint]) -> Result<()> {
    to_file(path, |w| write_profile(w, profile))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn history_rows() {
        let r = StepRecord {
            t: 0.5,
            dt: 0.25,
            total_energy: 2.0,
            total_entropy: 0.0,
            min_density: 1.0,
            min_pressure: 0.5,
            gcl: 0.0,
            n_troubled: 3,
        };
        let mut buf = Vec::new();
        write_history(&mut buf, &[r, r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], HISTORY_HEADER);
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "5e-1,2.5e-1,2e0,0e0,1e0,5e-1,0e0,3");
    }

    #[test]
    fn profile_rows() {
        let q = ProfilePoint {
            coord: -0.25,
            rho: 1.0,
            u: 0.0,
            p: 1.0,
            entropy: 0.0,
            eps: 2.5,
        };
        let mut buf = Vec::new();
        write_profile(&mut buf, &[q]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            format!("{PROFILE_HEADER}\n-2.5e-1,1e0,0e0,1e0,0e0,2.5e0\n")
        );
    }
}
