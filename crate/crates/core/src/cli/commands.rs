//! Command implementations; each returns an [`Output`] for the writers.

use serde_json::{json, Map, Value};

use super::output::{Output, Table};
use super::{BasisArg, Cli, Command, CoordsArg, MethodArg, PhysicalArgs, Suite};
use crate::bases::coords::{CoordSystem, SpherePoint};
use crate::bases::params::{degeneracy, energy, OscillatorParams};
use crate::bases::qn::{CylindricalQN, SphericalQN};
use crate::bases::wave::{wavefunction, BasisState};
use crate::elliptic::elliptic_wavefunction;
use crate::elliptic::solve::{
    cylindrical_recurrence_residual, match_solutions, solve_cylindrical_form, solve_spherical_form,
    spherical_recurrence_residual, EllipticParams, EllipticSolution,
};
use crate::error::{Error, Result};
use crate::interbasis::{w_block, InterbasisBlock, Method};
use crate::verify::{self, Lcg, SuiteOptions};

impl PhysicalArgs {
    /// Builds the parameters and echoes how ν was obtained.
    pub fn resolve(&self) -> Result<(OscillatorParams, Map<String, Value>)> {
        let r = self.r.unwrap_or(1.0);
        let mass = self.mass.unwrap_or(1.0);
        let hbar = self.hbar.unwrap_or(1.0);
        let (p, source) = match (self.nu, self.omega) {
            (Some(_), Some(_)) => return Err(Error::Usage("give either --nu or --omega, not both".into())),
            (None, None) => return Err(Error::Usage("one of --nu or --omega is required".into())),
            (Some(nu), None) => (OscillatorParams::with_nu(nu, r, mass, hbar)?, "given"),
            (None, Some(omega)) => (OscillatorParams::new(r, mass, omega, hbar)?, "nu_of"),
        };
        let mut m = Map::new();
        m.insert("nu".into(), json!(p.nu()));
        m.insert("nu_source".into(), json!(source));
        m.insert("R".into(), json!(p.r()));
        m.insert("mass".into(), json!(p.mass()));
        m.insert("omega".into(), json!(p.omega()));
        m.insert("hbar".into(), json!(p.hbar()));
        Ok((p, m))
    }
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::F43 => Method::F43,
        MethodArg::Racah => Method::Racah,
        MethodArg::Quadrature => Method::Quadrature,
    }
}

fn check_block(n: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > n {
        return Err(Error::Usage(format!("|m| = {} exceeds N = {n}", m.unsigned_abs())));
    }
    Ok(())
}

/// Runs the parsed command. The flag is set when verification checks failed.
pub fn execute(cli: &Cli) -> Result<(Output, bool)> {
    match &cli.command {
        Command::Spectrum { n, physical } => Ok((spectrum(n.clone(), physical)?, false)),
        Command::Interbasis { n, m, method: meth, physical } => Ok((interbasis(*n, *m, *meth, physical)?, false)),
        Command::Elliptic { n, m, a, physical } => Ok((elliptic(*n, *m, *a, physical)?, false)),
        Command::Verify { suite, perturb_energy } => run_verify(*suite, *perturb_energy, cli.timings),
        Command::Wavefunction { .. } => Ok((wavefunction_cmd(&cli.command)?, false)),
    }
}

fn spectrum(levels: std::ops::RangeInclusive<u32>, physical: &PhysicalArgs) -> Result<Output> {
    let (p, mut params) = physical.resolve()?;
    params.insert("N_min".into(), json!(levels.start()));
    params.insert("N_max".into(), json!(levels.end()));
    let mut table = Table::new(["N", "E", "degeneracy"]);
    for n in levels {
        table.push(vec![json!(n), json!(energy(n, &p)), json!(degeneracy(n))]);
    }
    let data = serde_json::to_value(&table).expect("table serializes");
    Ok(Output { command: "spectrum".into(), parameters: params, data, table })
}

fn block_table(w: &InterbasisBlock) -> Table {
    let cols = std::iter::once("l".to_string()).chain(w.n3_index.iter().map(|k| format!("n3={k}")));
    let mut table = Table::new(cols);
    for (i, &l) in w.l_index.iter().enumerate() {
        let mut row = vec![json!(l)];
        row.extend((0..w.n3_index.len()).map(|j| json!(w.entries[(i, j)])));
        table.push(row);
    }
    table
}

fn interbasis(n: u32, m: i32, meth: MethodArg, physical: &PhysicalArgs) -> Result<Output> {
    check_block(n, m)?;
    let (p, mut params) = physical.resolve()?;
    let meth = method(meth);
    params.insert("N".into(), json!(n));
    params.insert("m".into(), json!(m));
    params.insert("method".into(), serde_json::to_value(meth).expect("method serializes"));
    let w = w_block(n, m, p.nu(), meth)?;
    let table = block_table(&w);
    let mut data = serde_json::to_value(&table).expect("table serializes");
    data["l_index"] = json!(w.l_index);
    data["n3_index"] = json!(w.n3_index);
    data["metadata"] = json!({"dim": w.dim(), "unitarity_defect": w.unitarity_defect()});
    Ok(Output { command: "interbasis".into(), parameters: params, data, table })
}

/// Matched eigenpairs, both spectra and the block used for matching.
type Solved = (Vec<EllipticSolution>, Vec<f64>, Vec<f64>, InterbasisBlock);

fn solve_both(n: u32, m: i32, nu: f64, ep: &EllipticParams) -> Result<Solved> {
    let sph = solve_spherical_form(n, m, nu, ep)?;
    let cyl = solve_cylindrical_form(n, m, nu, ep)?;
    let w = w_block(n, m, nu, Method::F43)?;
    let ls = sph.iter().map(|s| s.lambda_q).collect();
    let cs = cyl.iter().map(|s| s.lambda_q).collect();
    Ok((match_solutions(&sph, &cyl, &w)?, ls, cs, w))
}

fn elliptic(n: u32, m: i32, a: f64, physical: &PhysicalArgs) -> Result<Output> {
    check_block(n, m)?;
    let (p, mut params) = physical.resolve()?;
    let ep = EllipticParams::from_a(a, p.r())?;
    params.insert("N".into(), json!(n));
    params.insert("m".into(), json!(m));
    params.insert("a".into(), json!(a));
    params.insert("k".into(), json!(ep.k()));
    params.insert("system".into(), json!(if ep.is_oblate() { "oblate" } else { "prolate" }));
    let nu = p.nu();
    let (sols, sph, cyl, w) = solve_both(n, m, nu, &ep)?;
    let mismatch = sph.iter().zip(&cyl).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let wt = w.entries.transpose();
    let mut transform: f64 = 0.0;

    let mut cols = vec!["q".to_string(), "lambda_q".into(), "residual_spherical".into(), "residual_cylindrical".into()];
    cols.extend(w.l_index.iter().map(|l| format!("T[l={l}]")));
    cols.extend(w.n3_index.iter().map(|k| format!("U[n3={k}]")));
    let mut table = Table::new(cols);
    let mut records = Vec::new();
    for s in &sols {
        let pred = &wt * nalgebra::DVector::from_column_slice(&s.t);
        transform = s.u.iter().zip(pred.iter()).fold(transform, |acc, (u, v)| acc.max((u - v).abs()));
        let rs = if a == 0.0 { Value::Null } else { json!(spherical_recurrence_residual(n, m, nu, &ep, s)?) };
        let rc = json!(cylindrical_recurrence_residual(n, m, nu, &ep, s)?);
        let mut row = vec![json!(s.q), json!(s.lambda_q), rs.clone(), rc.clone()];
        row.extend(s.t.iter().map(|x| json!(x)));
        row.extend(s.u.iter().map(|x| json!(x)));
        table.push(row);
        records.push(json!({
            "q": s.q,
            "lambda_q": s.lambda_q,
            "T": s.t,
            "U": s.u,
            "residual_spherical": rs,
            "residual_cylindrical": rc,
        }));
    }
    let data = json!({
        "solutions": records,
        "l_index": w.l_index,
        "n3_index": w.n3_index,
        "metadata": {
            "spectrum_spherical": sph,
            "spectrum_cylindrical": cyl,
            "spectra_mismatch": mismatch,
            "transform_defect": transform,
        },
    });
    Ok(Output { command: "elliptic".into(), parameters: params, data, table })
}

fn run_verify(suite: Suite, perturb: f64, timings: bool) -> Result<(Output, bool)> {
    let s = match suite {
        Suite::All => verify::Suite::All,
        Suite::Bases => verify::Suite::Bases,
        Suite::Interbasis => verify::Suite::Interbasis,
        Suite::Elliptic => verify::Suite::Elliptic,
        Suite::Limits => verify::Suite::Limits,
    };
    let reports = verify::run_suite(s, &SuiteOptions { perturb_energy: perturb })?;
    let all_passed = reports.iter().all(|r| r.passed);
    let mut cols = vec!["check_name", "passed", "max_error", "tolerance", "parameters"];
    if timings {
        cols.push("runtime_ms");
    }
    let mut table = Table::new(cols);
    let mut list = Vec::new();
    for r in &reports {
        let mut v = serde_json::to_value(r).expect("report serializes");
        if !timings {
            v.as_object_mut().expect("report is an object").remove("runtime_ms");
        }
        let mut row = vec![
            json!(r.check_name),
            json!(r.passed),
            json!(r.max_error),
            json!(r.tolerance),
            Value::Object(r.parameters.clone()),
        ];
        if timings {
            row.push(json!(r.runtime_ms));
        }
        table.push(row);
        list.push(v);
    }
    let suite_name = serde_json::to_value(clap::ValueEnum::to_possible_value(&suite).map(|p| p.get_name().to_string()))
        .expect("name serializes");
    let mut params = Map::new();
    params.insert("suite".into(), suite_name);
    if perturb != 0.0 {
        params.insert("perturb_energy".into(), json!(perturb));
    }
    let data = json!({
        "reports": list,
        "all_passed": all_passed,
        "passed": reports.iter().filter(|r| r.passed).count(),
        "total": reports.len(),
    });
    Ok((Output { command: "verify".into(), parameters: params, data, table }, !all_passed))
}

fn to_point(coords: CoordsArg, v: &[f64]) -> Result<SpherePoint> {
    let need = if coords == CoordsArg::Ambient { 4 } else { 3 };
    if v.len() != need {
        return Err(Error::Usage(format!("a {coords:?} point needs {need} components, got {}", v.len())));
    }
    let p = match coords {
        CoordsArg::Spherical => SpherePoint::Spherical { chi: v[0], theta: v[1], phi: v[2] },
        CoordsArg::Cylindrical => SpherePoint::Cylindrical { alpha: v[0], phi1: v[1], phi2: v[2] },
        CoordsArg::Ambient => SpherePoint::from_ambient([v[0], v[1], v[2], v[3]], CoordSystem::Ambient)?,
    };
    p.validate()?;
    Ok(p)
}

fn point_cells(p: &SpherePoint) -> Vec<Value> {
    match *p {
        SpherePoint::Spherical { chi, theta, phi } => {
            vec![json!("spherical"), json!(chi), json!(theta), json!(phi), Value::Null]
        }
        SpherePoint::Cylindrical { alpha, phi1, phi2 } => {
            vec![json!("cylindrical"), json!(alpha), json!(phi1), json!(phi2), Value::Null]
        }
        SpherePoint::Ambient { q } => vec![json!("ambient"), json!(q[0]), json!(q[1]), json!(q[2]), json!(q[3])],
        SpherePoint::Elliptic { mu, nu, phi, k } => vec![json!("elliptic"), json!(mu), json!(nu), json!(phi), json!(k)],
    }
}

fn wavefunction_cmd(cmd: &Command) -> Result<Output> {
    let Command::Wavefunction { basis, n, l, m, n3, q, a, coords, points, random, seed, physical } = cmd else {
        unreachable!("dispatched on the variant")
    };
    let (n, m) = (*n, *m);
    check_block(n, m)?;
    let (p, mut params) = physical.resolve()?;
    params.insert("N".into(), json!(n));
    params.insert("m".into(), json!(m));
    params.insert("basis".into(), json!(format!("{basis:?}").to_lowercase()));

    let mut pts = points.iter().map(|v| to_point(*coords, v)).collect::<Result<Vec<_>>>()?;
    let mut rng = Lcg::new(*seed);
    pts.extend((0..*random).map(|_| rng.hemisphere_point()));
    if pts.is_empty() {
        return Err(Error::Usage("no points: pass --point or --random".into()));
    }
    if *random > 0 {
        params.insert("random".into(), json!(random));
        params.insert("seed".into(), json!(seed));
    }

    type Evaluator = Box<dyn Fn(&SpherePoint) -> Result<num_complex::Complex64>>;
    let eval: Evaluator = match basis {
        BasisArg::Spherical => {
            let l = l.ok_or_else(|| Error::Usage("--l is required for the spherical basis".into()))?;
            params.insert("l".into(), json!(l));
            let s = BasisState::Spherical(SphericalQN::new(n, l, m)?);
            Box::new(move |pt| wavefunction(&s, &p, pt))
        }
        BasisArg::Cylindrical => {
            let k = n3.ok_or_else(|| Error::Usage("--n3 is required for the cylindrical basis".into()))?;
            params.insert("n3".into(), json!(k));
            let s = BasisState::Cylindrical(CylindricalQN::new(n, m, k)?);
            Box::new(move |pt| wavefunction(&s, &p, pt))
        }
        BasisArg::Elliptic => {
            let a = a.ok_or_else(|| Error::Usage("--a is required for the elliptic basis".into()))?;
            let qi = q.ok_or_else(|| Error::Usage("--q is required for the elliptic basis".into()))?;
            let ep = EllipticParams::from_a(a, p.r())?;
            let (sols, ..) = solve_both(n, m, p.nu(), &ep)?;
            let sol = sols
                .into_iter()
                .nth(qi)
                .ok_or_else(|| Error::Usage(format!("q = {qi} out of range for this block")))?;
            params.insert("a".into(), json!(a));
            params.insert("q".into(), json!(qi));
            params.insert("lambda_q".into(), json!(sol.lambda_q));
            Box::new(move |pt| elliptic_wavefunction(&sol, n, m, &p, pt))
        }
    };

    let mut table = Table::new(["coords", "x1", "x2", "x3", "x4", "re", "im"]);
    for pt in &pts {
        let psi = eval(pt)?;
        let mut row = point_cells(pt);
        row.push(json!(psi.re));
        row.push(json!(psi.im));
        table.push(row);
    }
    let data = serde_json::to_value(&table).expect("table serializes");
    Ok(Output { command: "wavefunction".into(), parameters: params, data, table })
}

#[cfg(test)]
mod tests {
    use super::super::run;

    fn run_json(args: &[&str]) -> (i32, serde_json::Value) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("osc-sphere").chain(args.iter().copied()), &mut out, &mut err);
        let v = serde_json::from_slice(&out).unwrap_or(serde_json::Value::Null);
        (code, v)
    }

    #[test]
    fn spectrum_rows() {
        let (code, v) = run_json(&["spectrum", "--N", "0..2", "--nu", "0", "--R", "1"]);
        assert_eq!(code, 0);
        let rows = v["data"]["rows"].as_array().unwrap();
        let e: Vec<f64> = rows.iter().map(|r| r[1].as_f64().unwrap()).collect();
        assert_eq!(e, vec![1.5, 4.0, 7.5]);
        let d: Vec<u64> = rows.iter().map(|r| r[2].as_u64().unwrap()).collect();
        assert_eq!(d, vec![1, 3, 6]);
        assert_eq!(v["schema_version"], "1");
    }

    #[test]
    fn physical_constants_echo_nu() {
        let (code, v) = run_json(&["spectrum", "--N", "1", "--omega", "2", "--R", "3"]);
        assert_eq!(code, 0);
        assert_eq!(v["parameters"]["nu_source"], "nu_of");
        assert!(v["parameters"]["nu"].as_f64().unwrap() > 17.0);
    }

    #[test]
    fn interbasis_and_elliptic_examples() {
        let (code, v) = run_json(&["interbasis", "--N", "2", "--m", "0", "--nu", "1", "--method", "f43"]);
        assert_eq!(code, 0);
        assert!(v["data"]["metadata"]["unitarity_defect"].as_f64().unwrap() < 1e-10);
        assert_eq!(v["data"]["rows"].as_array().unwrap().len(), 2);

        let (code, v) = run_json(&["elliptic", "--N", "2", "--m", "2", "--nu", "1", "--a", "1", "--R", "1"]);
        assert_eq!(code, 0);
        let sols = v["data"]["solutions"].as_array().unwrap();
        assert_eq!(sols.len(), 1);
        assert!((sols[0]["lambda_q"].as_f64().unwrap() - 2.0).abs() < 1e-12);

        let (_, v) = run_json(&["elliptic", "--N", "4", "--m", "0", "--nu", "1", "--a", "0"]);
        let l: Vec<f64> =
            v["data"]["solutions"].as_array().unwrap().iter().map(|s| s["lambda_q"].as_f64().unwrap()).collect();
        assert_eq!(l, vec![0.0, 6.0, 20.0]);
    }

    #[test]
    fn wavefunction_points() {
        let (code, v) = run_json(&[
            "wavefunction",
            "--basis",
            "spherical",
            "--N",
            "2",
            "--l",
            "2",
            "--m",
            "-1",
            "--nu",
            "1",
            "--point",
            "0.3,1.0,2.0",
            "--random",
            "3",
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["data"]["rows"].as_array().unwrap().len(), 4);
        let (code, _) = run_json(&[
            "wavefunction",
            "--basis",
            "elliptic",
            "--N",
            "3",
            "--m",
            "1",
            "--q",
            "1",
            "--a",
            "0.5",
            "--nu",
            "2",
            "--random",
            "5",
        ]);
        assert_eq!(code, 0);
        let (code, _) =
            run_json(&["wavefunction", "--basis", "cylindrical", "--N", "2", "--m", "0", "--nu", "1", "--random", "2"]);
        assert_eq!(code, 2);
    }
}
