//! Commutator bound audit over a fixture or a stored snapshot.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use nslog::field::{commutator_audit, read_nsl1, Grid};
use nslog::solver::make_cross_shear;

use crate::config::{AuditField, RunConfig};
use crate::manifest::RunRecorder;

use super::{num_err, CmdError};

pub fn run(cfg: &RunConfig, rec: &mut RunRecorder) -> Result<(), CmdError> {
    let ab = &cfg.audit;
    let ladder = cfg.ladder.params().map_err(num_err)?;
    let mut out = String::from("n,lhs,z,rhs_f1,rhs_f2,fitted_constant\n");
    match ab.field {
        AuditField::CrossShear => {
            // base grid and one refinement, so stability is visible directly
            for n in [ab.n, ab.n * 2] {
                let grid = Grid::cube(n).map_err(num_err)?;
                let field = make_cross_shear(grid, ab.amp).map_err(num_err)?;
                let audit =
                    commutator_audit(&field, ab.s, ab.sigma, &ladder).map_err(num_err)?;
                let _ = writeln!(
                    out,
                    "{n},{},{},{},{},{}",
                    audit.lhs, audit.z, audit.rhs_f1_term, audit.rhs_f2_term,
                    audit.fitted_constant
                );
            }
        }
        AuditField::File => {
            let path = Path::new(&ab.path);
            rec.note_input(path)?;
            let field = {
                let mut reader = BufReader::new(File::open(path)?);
                read_nsl1(&mut reader)?
            };
            let n = field.grid().dims()[0];
            let audit = commutator_audit(&field, ab.s, ab.sigma, &ladder).map_err(num_err)?;
            let _ = writeln!(
                out,
                "{n},{},{},{},{},{}",
                audit.lhs, audit.z, audit.rhs_f1_term, audit.rhs_f2_term, audit.fitted_constant
            );
        }
    }
    rec.write_output("audit.csv", out.as_bytes())?;
    rec.stage_ok("commutator_audit");
    Ok(())
}
